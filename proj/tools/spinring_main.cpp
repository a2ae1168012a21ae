// Command-line driver: JSON-configured runs of the spectral, thermodynamic,
// zero-temperature, and ring-analysis pipelines, with deterministic CSV/JSON
// outputs.  Exit codes: 0 success, 1 numerical-check failure, 2 config error.

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "spinring/grid.hpp"
#include "spinring/io.hpp"
#include "spinring/potential.hpp"
#include "spinring/thermo.hpp"
#include "spinring/transfer.hpp"
#include "spinring/vanenter.hpp"
#include "spinring/zerotemp.hpp"

namespace {

using nlohmann::json;
using namespace spinring;

// Thrown for invalid configuration; mapped to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a numerical check fails; mapped to exit code 1.
struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunContext {
  json config;
  std::string config_hash;  // 0x + 16 hex digits of the canonical dump
  std::filesystem::path out_dir;
  uint64_t seed = 1;
  int grid_n = 256;
};

std::string hash_string(const json& config) {
  std::ostringstream os;
  os << "0x" << std::hex;
  const uint64_t h = fnv1a(config.dump());
  for (int shift = 60; shift >= 0; shift -= 4) {
    os << "0123456789abcdef"[(h >> shift) & 0xf];
  }
  return os.str();
}

RunContext make_context(const std::string& config_path, const std::string& out_override,
                        std::optional<uint64_t> seed_override) {
  std::ifstream in(config_path);
  if (!in) throw ConfigError("cannot open config file: " + config_path);
  RunContext ctx;
  try {
    ctx.config = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!ctx.config.is_object()) throw ConfigError("config root must be a JSON object");
  ctx.config_hash = hash_string(ctx.config);

  if (ctx.config.contains("grid_n")) {
    if (!ctx.config["grid_n"].is_number_integer()) {
      throw ConfigError("field grid_n: must be an integer");
    }
    ctx.grid_n = ctx.config["grid_n"].get<int>();
    const bool power_of_two = ctx.grid_n > 0 && (ctx.grid_n & (ctx.grid_n - 1)) == 0;
    if (!power_of_two || ctx.grid_n < 32 || ctx.grid_n > 4096) {
      throw ConfigError("field grid_n: must be a power of two in [32, 4096]");
    }
  }
  ctx.seed = ctx.config.value("seed", uint64_t{1});
  if (seed_override) ctx.seed = *seed_override;

  std::string out = ctx.config.value("output_dir", std::string("."));
  if (!out_override.empty()) out = out_override;
  ctx.out_dir = out;
  std::error_code ec;
  std::filesystem::create_directories(ctx.out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory: " + out);
  return ctx;
}

TwoSitePotential potential_from(const RunContext& ctx) {
  if (!ctx.config.contains("potential")) {
    throw ConfigError("field potential: missing registry object");
  }
  try {
    return TwoSitePotential::from_json(ctx.config["potential"]);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("field potential: ") + e.what());
  }
}

std::vector<double> betas_from(const RunContext& ctx) {
  const bool has_one = ctx.config.contains("beta");
  const bool has_sweep = ctx.config.contains("beta_sweep");
  if (has_one == has_sweep) {
    throw ConfigError("need exactly one of beta / beta_sweep");
  }
  std::vector<double> betas;
  try {
    if (has_one) {
      betas.push_back(ctx.config["beta"].get<double>());
    } else {
      betas = ctx.config["beta_sweep"].get<std::vector<double>>();
    }
  } catch (const std::exception& e) {
    throw ConfigError(std::string("field beta/beta_sweep: ") + e.what());
  }
  if (betas.empty()) throw ConfigError("field beta_sweep: empty");
  for (double b : betas) {
    if (!std::isfinite(b)) throw ConfigError("field beta: must be finite");
  }
  return betas;
}

// ---------------------------------------------------------------------------
// Output plumbing
// ---------------------------------------------------------------------------

std::string meta_header(const RunContext& ctx, const std::string& command) {
  std::ostringstream os;
  os << "# generated-by: spinring " << command << "\n"
     << "# config-hash: " << ctx.config_hash << "\n"
     << "# grid-n: " << ctx.grid_n << "\n"
     << "# seed: " << ctx.seed << "\n"
     << "# conventions: angles=[0,2pi) measure=normalized-lebesgue"
        " psi-normalization=unit-nu-integral levels=nats\n";
  return os.str();
}

json meta_json(const RunContext& ctx, const std::string& command) {
  return json{{"generated-by", "spinring " + command},
              {"config-hash", ctx.config_hash},
              {"grid-n", ctx.grid_n},
              {"seed", ctx.seed},
              {"conventions",
               "angles=[0,2pi) measure=normalized-lebesgue"
               " psi-normalization=unit-nu-integral levels=nats"}};
}

void write_text(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write output file: " + path.string());
  out << body;
}

void write_json(const std::filesystem::path& path, const json& value) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write output file: " + path.string());
  out << value.dump(2) << "\n";
}

// Run fn(i) for i in [0, count) on a bounded worker pool ("workers" config
// field, default 1); results are indexed, so assembly order is fixed.
void run_indexed(int count, int workers, const std::function<void(int)>& fn) {
  workers = std::max(1, std::min({workers, 8, count}));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmd_spectrum(const RunContext& ctx) {
  const TwoSitePotential pot = potential_from(ctx);
  const std::vector<double> betas = betas_from(ctx);
  const CircleGrid grid(ctx.grid_n);
  const int workers = ctx.config.value("workers", 1);

  std::vector<std::string> spectral_rows(betas.size());
  std::vector<std::string> eigfun_rows(betas.size());
  run_indexed(static_cast<int>(betas.size()), workers, [&](int i) {
    const double beta = betas[static_cast<size_t>(i)];
    const SpectralSolution sol = solve_spectral(pot, grid, beta);
    {
      std::ostringstream os;
      os << format_g17(beta) << ',' << format_g17(sol.lambda()) << ','
         << format_g17(sol.log_lambda()) << ',' << format_g17(sol.gap_ratio()) << "\n";
      spectral_rows[static_cast<size_t>(i)] = os.str();
    }
    std::ostringstream os;
    for (int k = 0; k < grid.size(); ++k) {
      os << format_g17(beta) << ',' << format_g17(grid.node(k)) << ','
         << format_g17(sol.psi()[static_cast<size_t>(k)]) << ','
         << format_g17(sol.psi_bar()[static_cast<size_t>(k)]) << ','
         << format_g17(sol.theta()[static_cast<size_t>(k)]) << "\n";
    }
    eigfun_rows[static_cast<size_t>(i)] = os.str();
  });

  std::ostringstream spectral;
  spectral << meta_header(ctx, "spectrum") << "beta,lambda,log_lambda,gap_ratio\n";
  for (const auto& row : spectral_rows) spectral << row;
  write_text(ctx.out_dir / "spectral.csv", spectral.str());

  std::ostringstream eigfun;
  eigfun << meta_header(ctx, "spectrum") << "beta,angle,psi,psi_bar,theta\n";
  for (const auto& row : eigfun_rows) eigfun << row;
  write_text(ctx.out_dir / "eigfun.csv", eigfun.str());
  return 0;
}

int cmd_markov(const RunContext& ctx) {
  const TwoSitePotential pot = potential_from(ctx);
  const std::vector<double> betas = betas_from(ctx);
  if (betas.size() != 1) throw ConfigError("markov: needs a single beta");
  if (!ctx.config.contains("cylinder")) {
    throw ConfigError("field cylinder: missing list of [a,b) boxes");
  }
  std::vector<std::pair<double, double>> boxes;
  try {
    for (const auto& box : ctx.config["cylinder"]) {
      boxes.emplace_back(box.at(0).get<double>(), box.at(1).get<double>());
    }
  } catch (const std::exception& e) {
    throw ConfigError(std::string("field cylinder: ") + e.what());
  }
  const CircleGrid grid(ctx.grid_n);
  const SpectralSolution sol = solve_spectral(pot, grid, betas[0]);
  double probability = 0.0;
  try {
    probability = cylinder_measure(sol, boxes);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("field cylinder: ") + e.what());
  }
  json out{{"_meta", meta_json(ctx, "markov")},
           {"beta", betas[0]},
           {"cylinder", ctx.config["cylinder"]},
           {"probability", probability}};
  write_json(ctx.out_dir / "measure.json", out);
  return 0;
}

int cmd_sample(const RunContext& ctx) {
  const TwoSitePotential pot = potential_from(ctx);
  const std::vector<double> betas = betas_from(ctx);
  if (betas.size() != 1) throw ConfigError("sample: needs a single beta");
  const int n_steps = ctx.config.value("n_steps", 1000);
  if (n_steps < 0) throw ConfigError("field n_steps: must be >= 0");
  const CircleGrid grid(ctx.grid_n);
  const SpectralSolution sol = solve_spectral(pot, grid, betas[0]);
  const ChainSample chain = sample_chain(sol, n_steps, ctx.seed);
  std::ostringstream os;
  os << meta_header(ctx, "sample") << "step,angle\n";
  for (size_t k = 0; k < chain.states.size(); ++k) {
    os << k << ',' << format_g17(chain.states[k]) << "\n";
  }
  write_text(ctx.out_dir / "chain.csv", os.str());
  return 0;
}

int cmd_pressure(const RunContext& ctx) {
  const TwoSitePotential pot = potential_from(ctx);
  const std::vector<double> betas = betas_from(ctx);
  const CircleGrid grid(ctx.grid_n);
  const int workers = ctx.config.value("workers", 1);
  std::vector<std::string> rows(betas.size());
  run_indexed(static_cast<int>(betas.size()), workers, [&](int i) {
    const double beta = betas[static_cast<size_t>(i)];
    const SpectralSolution sol = solve_spectral(pot, grid, beta);
    const PressureDecomposition p = pressure(sol);
    const NormalizedPotential np = normalize_potential(sol);
    const double h = entropy_h(sol, np);
    std::ostringstream os;
    os << format_g17(beta) << ',' << format_g17(p.log_lambda) << ','
       << format_g17(p.energy) << ',' << format_g17(p.entropy) << ','
       << format_g17(p.residual) << ',' << format_g17(h) << ','
       << format_g17(h / beta) << "\n";
    rows[static_cast<size_t>(i)] = os.str();
  });
  std::ostringstream os;
  os << meta_header(ctx, "pressure")
     << "beta,log_lambda,energy,entropy,residual,h,h_over_beta\n";
  for (const auto& row : rows) os << row;
  write_text(ctx.out_dir / "pressure.csv", os.str());
  return 0;
}

int cmd_subaction(const RunContext& ctx) {
  const TwoSitePotential pot = potential_from(ctx);
  const CircleGrid grid(ctx.grid_n);
  const std::string method_name = ctx.config.value("method", std::string("lp_dual"));
  SubactionMethod method;
  if (method_name == "lp_dual") {
    method = SubactionMethod::LpDual;
  } else if (method_name == "discounted") {
    method = SubactionMethod::Discounted;
  } else {
    throw ConfigError("field method: must be lp_dual or discounted");
  }
  const DenseMatrix a = pot.tabulate(grid);
  const Subaction sub = calibrated_subaction(a, method);
  const MaxMeanCycle cycle = max_ergodic_average(a);

  std::ostringstream os;
  os << meta_header(ctx, "subaction") << "angle,u_value\n";
  for (int k = 0; k < grid.size(); ++k) {
    os << format_g17(grid.node(k)) << ',' << format_g17(sub.u[static_cast<size_t>(k)])
       << "\n";
  }
  write_text(ctx.out_dir / "subaction.csv", os.str());

  json report{{"_meta", meta_json(ctx, "subaction")},
              {"m_value", sub.m_value},
              {"residual", sub.residual},
              {"method", method_name},
              {"diagnostics",
               json{{"karp_m", cycle.m},
                    {"karp_cycle_mean", cycle.cycle_mean},
                    {"karp_cycle_length", cycle.cycle.size()}}}};
  write_json(ctx.out_dir / "report.json", report);
  return 0;
}

int cmd_zerotemp(const RunContext& ctx) {
  const TwoSitePotential pot = potential_from(ctx);
  const CircleGrid grid(ctx.grid_n);
  const DenseMatrix a = pot.tabulate(grid);
  const MaxMeanCycle karp = max_ergodic_average(a);
  const double m_lp = dual_value(a);
  const double disagreement = std::fabs(karp.m - m_lp);

  const Subaction sub = calibrated_subaction(a, SubactionMethod::LpDual);
  std::ostringstream os;
  os << meta_header(ctx, "zerotemp") << "angle,u_value\n";
  for (int k = 0; k < grid.size(); ++k) {
    os << format_g17(grid.node(k)) << ',' << format_g17(sub.u[static_cast<size_t>(k)])
       << "\n";
  }
  write_text(ctx.out_dir / "subaction.csv", os.str());

  std::vector<double> betas = ctx.config.value(
      "beta_sweep", std::vector<double>{12.5, 25.0, 50.0, 100.0});
  const EigenvalueLimitResult lim = eigenvalue_limit(pot, grid, betas);
  std::ostringstream sweep;
  sweep << meta_header(ctx, "zerotemp") << "beta,log_lambda_over_beta,gap_to_m\n";
  for (const auto& row : lim.rows) {
    sweep << format_g17(row.beta) << ',' << format_g17(row.log_lambda_over_beta) << ','
          << format_g17(row.gap_to_m) << "\n";
  }
  write_text(ctx.out_dir / "eigenvalue_limit.csv", sweep.str());

  json report{{"_meta", meta_json(ctx, "zerotemp")},
              {"m_value", karp.m},
              {"m_lp_dual", m_lp},
              {"method_disagreement", disagreement},
              {"residual", sub.residual},
              {"method", "lp_dual"},
              {"diagnostics",
               json{{"karp_cycle_mean", karp.cycle_mean},
                    {"karp_cycle_length", karp.cycle.size()},
                    {"m_extrapolated", lim.m_extrapolated}}}};
  write_json(ctx.out_dir / "report.json", report);

  if (disagreement > 1e-6) {
    throw CheckFailure("zerotemp: max-mean-cycle and LP dual disagree by " +
                       format_g17(disagreement));
  }
  return 0;
}

int cmd_ldp(const RunContext& ctx) {
  const TwoSitePotential pot = potential_from(ctx);
  const std::vector<double> betas = betas_from(ctx);
  const CircleGrid grid(ctx.grid_n);
  double box_lo = kPi - 0.3, box_hi = kPi + 0.3;
  if (ctx.config.contains("box")) {
    try {
      box_lo = ctx.config["box"].at(0).get<double>();
      box_hi = ctx.config["box"].at(1).get<double>();
    } catch (const std::exception& e) {
      throw ConfigError(std::string("field box: ") + e.what());
    }
  }

  const DenseMatrix a = pot.tabulate(grid);
  const Subaction sub = calibrated_subaction(a, SubactionMethod::LpDual);
  // inf of the one-step rate over grid pairs inside the box.
  double inf_rate = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.size(); ++i) {
    if (grid.node(i) < box_lo || grid.node(i) >= box_hi) continue;
    for (int j = 0; j < grid.size(); ++j) {
      if (grid.node(j) < box_lo || grid.node(j) >= box_hi) continue;
      const double step = sub.u[static_cast<size_t>(j)] - sub.u[static_cast<size_t>(i)] -
                          (a.at(i, j) - sub.m_value);
      inf_rate = std::min(inf_rate, step);
    }
  }

  std::ostringstream os;
  os << meta_header(ctx, "ldp") << "beta,log_measure,slope\n";
  double last_slope = 0.0;
  for (double beta : betas) {
    const SpectralSolution sol = solve_spectral(pot, grid, beta);
    const double mass = cylinder_measure(sol, {{box_lo, box_hi}, {box_lo, box_hi}});
    const double log_mass = std::log(mass);
    last_slope = log_mass / beta;
    os << format_g17(beta) << ',' << format_g17(log_mass) << ','
       << format_g17(last_slope) << "\n";
  }
  write_text(ctx.out_dir / "ldp.csv", os.str());

  json report{{"_meta", meta_json(ctx, "ldp")},
              {"box", json::array({box_lo, box_hi})},
              {"inf_rate", inf_rate},
              {"slope_at_max_beta", last_slope},
              {"m_value", sub.m_value}};
  if (ctx.config.contains("prefix")) {
    std::vector<double> prefix;
    try {
      prefix = ctx.config["prefix"].get<std::vector<double>>();
    } catch (const std::exception& e) {
      throw ConfigError(std::string("field prefix: ") + e.what());
    }
    report["prefix_rate"] = rate_function(sub, pot, grid, prefix);
  }
  write_json(ctx.out_dir / "ldp.json", report);
  return 0;
}

int cmd_dlr(const RunContext& ctx) {
  const TwoSitePotential pot = potential_from(ctx);
  const std::vector<double> betas = betas_from(ctx);
  if (betas.size() != 1) throw ConfigError("dlr: needs a single beta");
  const int volume_n = ctx.config.value("volume_n", 30);
  if (volume_n < 1) throw ConfigError("field volume_n: must be >= 1");
  CircleFunction obs;
  obs.name = "cos";
  if (ctx.config.contains("observable")) {
    try {
      obs.name = ctx.config["observable"].at("name").get<std::string>();
      if (ctx.config["observable"].contains("cos_coeffs")) {
        obs.cos_coeffs = ctx.config["observable"]["cos_coeffs"].get<std::vector<double>>();
      }
      if (ctx.config["observable"].contains("sin_coeffs")) {
        obs.sin_coeffs = ctx.config["observable"]["sin_coeffs"].get<std::vector<double>>();
      }
    } catch (const std::exception& e) {
      throw ConfigError(std::string("field observable: ") + e.what());
    }
  }
  std::vector<double> boundaries;
  if (ctx.config.contains("boundaries")) {
    try {
      boundaries = ctx.config["boundaries"].get<std::vector<double>>();
    } catch (const std::exception& e) {
      throw ConfigError(std::string("field boundaries: ") + e.what());
    }
  }

  const CircleGrid grid(ctx.grid_n);
  const SpectralSolution sol = solve_spectral(pot, grid, betas[0]);
  const NormalizedPotential np = normalize_potential(sol);
  std::vector<double> f(static_cast<size_t>(grid.size()));
  double f_sup = 0.0;
  try {
    for (int k = 0; k < grid.size(); ++k) {
      f[static_cast<size_t>(k)] = obs(grid.node(k));
      f_sup = std::max(f_sup, std::fabs(f[static_cast<size_t>(k)]));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("field observable: ") + e.what());
  }

  double stationary = 0.0;
  for (int k = 0; k < grid.size(); ++k) {
    stationary += f[static_cast<size_t>(k)] * sol.theta()[static_cast<size_t>(k)];
  }
  stationary /= grid.size();

  std::ostringstream os;
  os << meta_header(ctx, "dlr");
  os << "# gap-ratio: " << format_g17(sol.gap_ratio()) << "\n";
  os << "# boundary-independence-bound: "
     << format_g17(10.0 * std::pow(sol.gap_ratio(), volume_n) * f_sup) << "\n";
  os << "kind,boundary_angle,volume_n,expectation\n";
  for (double b : boundaries) {
    const double value = finite_volume_expectation(sol, np, f, volume_n, b);
    os << "fixed," << format_g17(b) << ',' << volume_n << ',' << format_g17(value)
       << "\n";
  }
  const double free_value = finite_volume_expectation(sol, np, f, volume_n, std::nullopt);
  os << "free,," << volume_n << ',' << format_g17(free_value) << "\n";
  os << "stationary,," << volume_n << ',' << format_g17(stationary) << "\n";
  write_text(ctx.out_dir / "dlr.csv", os.str());
  return 0;
}

int cmd_vanenter(const RunContext& ctx) {
  if (!ctx.config.contains("epsilon") || !ctx.config.contains("delta") ||
      !ctx.config.contains("j_max")) {
    throw ConfigError("vanenter: needs epsilon, delta, j_max");
  }
  double epsilon = 0.0, delta = 0.0, kappa = 0.25 * kPi;
  int j_max = 0;
  try {
    epsilon = ctx.config["epsilon"].get<double>();
    delta = ctx.config["delta"].get<double>();
    j_max = ctx.config["j_max"].get<int>();
    kappa = ctx.config.value("kappa", kappa);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("vanenter fields: ") + e.what());
  }
  const int max_ring = ctx.config.value("max_ring", std::min(40, std::max(j_max + 2, 8)));

  RingTable table;
  Certificate cert;
  try {
    table = build_rings(epsilon, max_ring);
    cert = nonselection_demo(table, j_max, kappa, delta);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  std::ostringstream rings_csv;
  rings_csv << meta_header(ctx, "vanenter") << "j,c_j,log_width\n";
  for (const Ring& r : table.rings) {
    rings_csv << r.j << ',' << format_g17(r.level) << ',' << format_g17(r.log_width)
              << "\n";
  }
  write_text(ctx.out_dir / "rings.csv", rings_csv.str());

  std::ostringstream masses_csv;
  masses_csv << meta_header(ctx, "vanenter") << "beta,j,log_mass\n";
  for (int j = 1; j <= j_max; ++j) {
    const double beta = beta_schedule(table, j);
    for (int k = 0; k <= table.max_ring; ++k) {
      masses_csv << format_g17(beta) << ',' << k << ','
                 << format_g17(ring_log_mass(table, beta, k)) << "\n";
    }
  }
  write_text(ctx.out_dir / "masses.csv", masses_csv.str());

  std::ostringstream schedule_csv;
  schedule_csv << meta_header(ctx, "vanenter") << "j,beta_j,concentration,pass\n";
  for (int j = 1; j <= j_max; ++j) {
    const ConcentrationReport rep = concentration_check(table, j, delta);
    schedule_csv << j << ',' << format_g17(rep.beta_j) << ','
                 << format_g17(1.0 - rep.off_mass) << ',' << (rep.pass ? 1 : 0) << "\n";
  }
  write_text(ctx.out_dir / "schedule.csv", schedule_csv.str());

  json cert_json{{"_meta", meta_json(ctx, "vanenter")},
                 {"epsilon", cert.epsilon},
                 {"delta", cert.delta},
                 {"j_max", cert.j_max},
                 {"kappa", cert.kappa},
                 {"ferro_masses", cert.ferro_masses},
                 {"antiferro_masses", cert.antiferro_masses},
                 {"max_tail_bound", cert.max_tail_bound},
                 {"verdict", cert.verdict}};
  write_json(ctx.out_dir / "certificate.json", cert_json);

  if (cert.max_tail_bound >= 1e-15) {
    throw CheckFailure("vanenter: truncation tail bound " +
                       format_g17(cert.max_tail_bound) +
                       " exceeds 1e-15; increase max_ring");
  }
  if (cert.verdict != "no-selection-demonstrated") {
    throw CheckFailure("vanenter: certificate verdict is " + cert.verdict);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transfer-operator thermodynamics on the circle"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  std::optional<uint64_t> seed_override;

  const std::vector<std::string> names = {"spectrum", "markov", "sample",
                                          "pressure", "subaction", "zerotemp",
                                          "ldp", "dlr", "vanenter"};
  for (const std::string& name : names) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--out", out_override, "output directory (overrides config)");
    sub->add_option("--seed", seed_override, "RNG seed (overrides config)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const RunContext ctx = make_context(config_path, out_override, seed_override);
    if (command == "spectrum") return cmd_spectrum(ctx);
    if (command == "markov") return cmd_markov(ctx);
    if (command == "sample") return cmd_sample(ctx);
    if (command == "pressure") return cmd_pressure(ctx);
    if (command == "subaction") return cmd_subaction(ctx);
    if (command == "zerotemp") return cmd_zerotemp(ctx);
    if (command == "ldp") return cmd_ldp(ctx);
    if (command == "dlr") return cmd_dlr(ctx);
    if (command == "vanenter") return cmd_vanenter(ctx);
    std::cerr << "unknown subcommand: " << command << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const CheckFailure& e) {
    std::cerr << "check failure: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
}
