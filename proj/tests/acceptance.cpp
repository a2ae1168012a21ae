// Acceptance suite: twelve numbered end-to-end checks, one [PASS]/[FAIL]
// line each, printed with the measured quantities and runtimes.  The process
// exit code is the number of failed criteria, so CTest reports any miss.
//
// Checks 8 and 9 evaluate the interleaved-schedule concentration legs at
// eps = 0.1 with delta = 0.01; the first ring's own width keeps roughly ten
// percent of the mass in the flat background at beta_1, so those legs report
// their measured values honestly rather than a softened bound (see the
// concentration tests for the eps threshold where every leg clears 0.99).

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "spinring/grid.hpp"
#include "spinring/potential.hpp"
#include "spinring/rng.hpp"
#include "spinring/thermo.hpp"
#include "spinring/transfer.hpp"
#include "spinring/vanenter.hpp"
#include "spinring/zerotemp.hpp"

namespace fs = std::filesystem;
using namespace spinring;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// ---- criterion 1: eigenvalue against the power-series oracle --------------

// independent oracle: sum_k (beta^2/4)^k / (k!)^2, summed to convergence
double series_oracle(double beta) {
  const double q = 0.25 * beta * beta;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 80; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k));
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

Outcome criterion_1() {
  const auto t0 = Clock::now();
  const TwoSitePotential pot = TwoSitePotential::cosine_xy(0.0, 0.0);
  const CircleGrid grid(256);
  double worst = 0.0;
  for (double beta : {1.0, 2.0}) {
    const SpectralSolution sol = solve_spectral(pot, grid, beta);
    const double oracle = series_oracle(beta);
    worst = std::max(worst, std::fabs(sol.lambda() - oracle) / oracle);
  }
  const double dt = seconds_since(t0);
  return {worst < 1e-9 && dt < 1.0,
          "max rel err " + fmt(worst) + ", " + fmt(dt) + " s"};
}

// ---- criterion 2/3: kernel laws and the pressure identity -----------------

std::vector<TwoSitePotential> registered_cases() {
  const CircleGrid grid(256);
  std::vector<TwoSitePotential> pots;
  pots.push_back(TwoSitePotential::cosine_xy(0.0, 0.0));
  pots.push_back(TwoSitePotential::cosine_xy(0.7, 0.3));
  pots.push_back(TwoSitePotential::symmetric_u(CircleFunction{"cos", {}, {}}));
  pots.push_back(TwoSitePotential::tabulated(
      TwoSitePotential::cosine_xy(0.2, 0.1).tabulate(grid)));
  pots.push_back(TwoSitePotential::step_vanenter(0.3));
  return pots;
}

Outcome criterion_2() {
  const auto t0 = Clock::now();
  const CircleGrid grid(256);
  double worst_row = 0.0, worst_stat = 0.0;
  for (const TwoSitePotential& pot : registered_cases()) {
    for (double beta : {0.5, 1.0, 2.0}) {
      const SpectralSolution sol = solve_spectral(pot, grid, beta);
      for (int i = 0; i < grid.size(); ++i) {
        const std::vector<double> row = sol.kernel_row(i);
        double acc = 0.0;
        for (double v : row) acc += v;
        worst_row = std::max(worst_row, std::fabs(acc / grid.size() - 1.0));
      }
      // stationarity: integrating theta against the kernel returns theta
      for (int j = 0; j < grid.size(); ++j) {
        double acc = 0.0;
        for (int i = 0; i < grid.size(); ++i) {
          acc += sol.theta()[static_cast<size_t>(i)] * sol.kernel_entry(i, j);
        }
        worst_stat = std::max(
            worst_stat,
            std::fabs(acc / grid.size() - sol.theta()[static_cast<size_t>(j)]));
      }
    }
  }
  const double dt = seconds_since(t0);
  return {worst_row < 1e-9 && worst_stat < 1e-9 && dt < 5.0,
          "row-sum err " + fmt(worst_row) + ", stationarity err " +
              fmt(worst_stat) + ", " + fmt(dt) + " s"};
}

Outcome criterion_3() {
  const CircleGrid grid(256);
  double worst = 0.0;
  for (const TwoSitePotential& pot : registered_cases()) {
    for (double beta : {0.5, 1.0, 2.0}) {
      const SpectralSolution sol = solve_spectral(pot, grid, beta);
      worst = std::max(worst, pressure(sol).residual);
    }
  }
  return {worst < 1e-8, "max |log lambda - energy - entropy| = " + fmt(worst)};
}

// ---- criterion 4: zero-temperature limit of the scaled eigenvalue ---------

Outcome criterion_4() {
  const CircleGrid grid(256);
  bool ok = true;
  std::string detail;
  for (double gamma : {0.0, 0.5}) {
    const TwoSitePotential pot = TwoSitePotential::cosine_xy(0.0, gamma);
    const double m = max_ergodic_average(pot, grid).m;
    double prev = 1e300, last = 0.0;
    for (double beta : {12.5, 25.0, 50.0, 100.0}) {
      const SpectralSolution sol = solve_spectral(pot, grid, beta);
      const double gap = std::fabs(sol.log_lambda() / beta - m);
      if (!(gap < prev)) ok = false;
      prev = gap;
      last = gap;
    }
    if (!(last < 0.05)) ok = false;
    if (!detail.empty()) detail += "; ";
    detail += "gamma=" + fmt(gamma) + " final gap " + fmt(last);
  }
  return {ok, detail};
}

// ---- criterion 5: LP dual equals the max-mean-cycle value -----------------

Outcome criterion_5() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    SplitMix64 rng(seed);
    DenseMatrix table(64, 64);
    for (double& v : table.data) v = 2.0 * rng.next_double() - 1.0;
    const double karp = max_ergodic_average(table).m;
    const double dual = dual_value(table);
    worst = std::max(worst, std::fabs(karp - dual));
  }
  const double dt = seconds_since(t0);
  return {worst < 1e-9 && dt < 30.0,
          "max |karp - dual| = " + fmt(worst) + ", " + fmt(dt) + " s"};
}

// ---- criterion 6: discounted subactions calibrate analytic potentials -----

Outcome criterion_6() {
  const CircleGrid grid(64);
  double worst_residual = 0.0, worst_defect = -1e300;
  for (const TwoSitePotential& pot :
       {TwoSitePotential::cosine_xy(0.0, 0.0), TwoSitePotential::cosine_xy(0.7, 0.3),
        TwoSitePotential::symmetric_u(CircleFunction{"cos", {}, {}}),
        TwoSitePotential::symmetric_u(CircleFunction{"cos2t", {}, {}})}) {
    const DenseMatrix a = pot.tabulate(grid);
    const Subaction sub = calibrated_subaction(a, SubactionMethod::Discounted);
    worst_residual = std::max(worst_residual, sub.residual);
    // subaction inequality at every grid pair: A + u(x) - u(y) <= m
    for (int i = 0; i < grid.size(); ++i) {
      for (int j = 0; j < grid.size(); ++j) {
        const double defect = a.at(i, j) + sub.u[static_cast<size_t>(i)] -
                              sub.u[static_cast<size_t>(j)] - sub.m_value;
        worst_defect = std::max(worst_defect, defect);
      }
    }
  }
  return {worst_residual < 1e-6 && worst_defect < 1e-6,
          "max residual " + fmt(worst_residual) + ", max inequality defect " +
              fmt(worst_defect)};
}

// ---- criterion 7: closed-form ring mass against the operator route --------

Outcome criterion_7() {
  const double eps = 0.3;
  const TwoSitePotential pot = TwoSitePotential::step_vanenter(eps);
  const CircleGrid grid(4096);
  const RingTable rings = build_rings(eps, 8);
  // ring 1 in the increment coordinate: distance from pi below eps^3/2
  // (its interior boundary at eps^27/2 is far below the grid resolution,
  //  and the deeper odd rings it encloses carry < 1e-15 of the mass)
  const double hw1 = 0.5 * std::pow(eps, 3.0);
  const std::vector<std::pair<double, double>> band{{kPi - hw1, kPi + hw1}};
  double worst = 0.0;
  std::string detail;
  for (double beta : {0.25, 0.5}) {
    const double closed = std::exp(ring_log_mass(rings, beta, 1));
    const SpectralSolution sol = solve_spectral(pot, grid, beta);
    const double operator_route = difference_band_mass(sol, band);
    worst = std::max(worst, std::fabs(closed - operator_route));
    if (!detail.empty()) detail += "; ";
    detail += "beta=" + fmt(beta) + ": closed " + fmt(closed) + " vs operator " +
              fmt(operator_route);
  }
  return {worst < 1e-4, detail + " (max diff " + fmt(worst) + ")"};
}

// ---- criterion 8: concentration of ring j at beta_j ------------------------

Outcome criterion_8() {
  const auto t0 = Clock::now();
  const RingTable rings = build_rings(0.1, 8);
  bool ok = true;
  std::string detail;
  for (int j = 1; j <= 6; ++j) {
    const double mass =
        std::exp(ring_log_mass(rings, beta_schedule(rings, j), j));
    if (!(mass > 0.99)) ok = false;
    if (!detail.empty()) detail += " ";
    detail += "m" + std::to_string(j) + "=" + fmt(mass);
  }
  const double dt = seconds_since(t0);
  if (dt >= 1.0) ok = false;
  return {ok, detail + ", " + fmt(dt) + " s"};
}

// ---- criterion 9: oscillating band masses along the schedule ---------------

Outcome criterion_9() {
  const RingTable rings = build_rings(0.1, 8);
  const Certificate cert = nonselection_demo(rings, 6, 0.25 * kPi, 0.01);
  bool ok = true;
  std::string detail;
  double min_even_f = 1.0, max_odd_f = 0.0;
  for (int j = 1; j <= 6; ++j) {
    const double f = cert.ferro_masses[static_cast<size_t>(j - 1)];
    const double af = cert.antiferro_masses[static_cast<size_t>(j - 1)];
    const double leg = (j % 2 == 0) ? f : af;
    if (!(leg > 0.99)) ok = false;
    if (j % 2 == 0) {
      min_even_f = std::min(min_even_f, f);
    } else {
      max_odd_f = std::max(max_odd_f, f);
    }
    if (!detail.empty()) detail += " ";
    detail += (j % 2 == 0 ? "F(b" : "AF(b") + std::to_string(j) + ")=" + fmt(leg);
  }
  const double width = min_even_f - max_odd_f;
  if (!(width >= 0.98)) ok = false;
  return {ok, detail + ", oscillation width " + fmt(width)};
}

// ---- criterion 10: boundary independence of finite-volume expectations ----

Outcome criterion_10() {
  const TwoSitePotential pot = TwoSitePotential::cosine_xy(0.0, 0.5);
  const CircleGrid grid(256);
  const SpectralSolution sol = solve_spectral(pot, grid, 1.0);
  const NormalizedPotential np = normalize_potential(sol);
  std::vector<double> f(static_cast<size_t>(grid.size()));
  for (int k = 0; k < grid.size(); ++k) f[static_cast<size_t>(k)] = std::cos(grid.node(k));
  const double e0 = finite_volume_expectation(sol, np, f, 30, 0.0);
  const double e1 = finite_volume_expectation(sol, np, f, 30, 2.5);
  const double diff = std::fabs(e0 - e1);
  return {diff < 1e-6, "boundary 0.0 vs 2.5 at n=30: |diff| = " + fmt(diff)};
}

// ---- criterion 11: fitted correlation decay rate matches the gap ratio ----

Outcome criterion_11() {
  const TwoSitePotential pot = TwoSitePotential::cosine_xy(0.0, 0.0);
  const CircleGrid grid(256);
  const SpectralSolution sol = solve_spectral(pot, grid, 1.0);
  std::vector<double> f(static_cast<size_t>(grid.size()));
  for (int k = 0; k < grid.size(); ++k) f[static_cast<size_t>(k)] = std::cos(grid.node(k));
  // least-squares slope of log |C_n| over n = 1..20
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const int n_max = 20;
  for (int n = 1; n <= n_max; ++n) {
    const double c = correlation(sol, f, f, n);
    const double y = std::log(std::fabs(c));
    sx += n;
    sy += y;
    sxx += static_cast<double>(n) * n;
    sxy += n * y;
  }
  const double slope = (n_max * sxy - sx * sy) / (n_max * sxx - sx * sx);
  const double rate = std::exp(slope);
  const double diff = std::fabs(rate - sol.gap_ratio());
  return {diff < 1e-3, "fitted rate " + fmt(rate) + " vs gap ratio " +
                           fmt(sol.gap_ratio()) + " (|diff| " + fmt(diff) + ")"};
}

// ---- criterion 12: byte-identical CLI reruns -------------------------------

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(SPINRING_CLI_PATH) + " " + args + " > /dev/null 2> /dev/null";
  const int rc = std::system(cmd.c_str());
  if (rc == -1 || !WIFEXITED(rc)) return -1;
  return WEXITSTATUS(rc);
}

std::optional<std::string> read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome criterion_12() {
  const fs::path root = "acceptance_runs";
  fs::remove_all(root);
  fs::create_directories(root);

  const std::vector<std::pair<std::string, std::string>> runs = {
      {"spectrum",
       R"({"potential":{"kind":"cosine_xy","alpha":0.0,"gamma":0.5},"beta_sweep":[0.5,1.0],"grid_n":64,"workers":2})"},
      {"markov",
       R"({"potential":{"kind":"symmetric_u","name":"zero"},"beta":1.0,"grid_n":64,"cylinder":[[0.0,3.141592653589793]]})"},
      {"sample",
       R"({"potential":{"kind":"cosine_xy","alpha":0.0,"gamma":0.0},"beta":1.0,"grid_n":64,"n_steps":300,"seed":11})"},
      {"pressure",
       R"({"potential":{"kind":"cosine_xy","alpha":0.0,"gamma":0.5},"beta_sweep":[0.5,1.0],"grid_n":64})"},
      {"subaction",
       R"({"potential":{"kind":"cosine_xy","alpha":0.0,"gamma":0.5},"grid_n":32,"method":"lp_dual"})"},
      {"zerotemp",
       R"({"potential":{"kind":"cosine_xy","alpha":0.0,"gamma":0.5},"grid_n":32,"beta_sweep":[12.5,25.0,50.0]})"},
      {"ldp",
       R"({"potential":{"kind":"cosine_xy","alpha":0.0,"gamma":0.0},"beta_sweep":[10.0,20.0],"grid_n":64,"box":[2.841592653589793,3.441592653589793]})"},
      {"dlr",
       R"({"potential":{"kind":"cosine_xy","alpha":0.0,"gamma":0.5},"beta":1.0,"grid_n":64,"volume_n":8,"boundaries":[0.0,2.5]})"},
      {"vanenter", R"({"epsilon":0.02,"delta":0.01,"j_max":6})"},
  };

  bool ok = true;
  std::string detail;
  int files_compared = 0;
  for (const auto& [cmd, cfg] : runs) {
    const fs::path cfg_path = root / (cmd + ".json");
    std::ofstream(cfg_path) << cfg << "\n";
    const fs::path a = root / (cmd + "_a");
    const fs::path b = root / (cmd + "_b");
    const int rc_a =
        run_cli(cmd + " --config " + cfg_path.string() + " --out " + a.string());
    const int rc_b =
        run_cli(cmd + " --config " + cfg_path.string() + " --out " + b.string());
    if (rc_a != 0 || rc_b != 0) {
      ok = false;
      detail += cmd + ": exit " + std::to_string(rc_a) + "/" + std::to_string(rc_b) + " ";
      continue;
    }
    size_t count_a = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
      if (!entry.is_regular_file()) continue;
      ++count_a;
      const auto bytes_a = read_file(entry.path());
      const auto bytes_b = read_file(b / entry.path().filename());
      ++files_compared;
      if (!bytes_a || !bytes_b || *bytes_a != *bytes_b) {
        ok = false;
        detail += cmd + "/" + entry.path().filename().string() + " differs ";
      }
    }
    size_t count_b = 0;
    for (const auto& entry : fs::directory_iterator(b)) {
      count_b += entry.is_regular_file() ? 1 : 0;
    }
    if (count_a == 0 || count_a != count_b) {
      ok = false;
      detail += cmd + ": file count mismatch ";
    }
  }
  if (detail.empty()) {
    detail = std::to_string(files_compared) + " files byte-identical across reruns";
  }
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"eigenvalue matches the power-series oracle", criterion_1},
      {"kernel rows are stochastic and theta is stationary", criterion_2},
      {"pressure identity log lambda = energy + entropy", criterion_3},
      {"scaled log-eigenvalue approaches the maximizing value", criterion_4},
      {"LP dual value equals the max-mean-cycle value", criterion_5},
      {"discounted subactions calibrate analytic potentials", criterion_6},
      {"closed-form ring mass matches the operator route", criterion_7},
      {"ring j concentrates at beta_j (eps 0.1, delta 0.01)", criterion_8},
      {"band masses oscillate along the interleaved schedule", criterion_9},
      {"finite-volume expectations forget the boundary", criterion_10},
      {"correlation decay rate matches the spectral gap ratio", criterion_11},
      {"CLI reruns are byte-identical", criterion_12},
  };

  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    if (!out.pass) ++failures;
    std::printf("[%s] criterion %zu: %s (%s)\n", out.pass ? "PASS" : "FAIL",
                i + 1, criteria[i].first.c_str(), out.detail.c_str());
    std::fflush(stdout);
  }
  if (failures > 0) {
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  } else {
    std::printf("all %zu criteria passed\n", criteria.size());
  }
  return failures;
}
