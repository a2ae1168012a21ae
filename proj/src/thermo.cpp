#include "spinring/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spinring/fourier.hpp"
#include "spinring/rng.hpp"

namespace spinring {

namespace {

double overlap_1d(double lo, double hi, double a, double b) {
  return std::max(0.0, std::min(hi, b) - std::max(lo, a));
}

// Length of cell_j ∩ [a, b) where cell_j = [x_j - h/2, x_j + h/2) on the
// circle and [a, b) is an arc with 0 <= a < b <= a + 2pi, b <= 4pi.
double cell_overlap(const CircleGrid& grid, int j, double a, double b) {
  const double h = grid.spacing();
  const double lo = grid.node(j) - 0.5 * h;
  const double hi = grid.node(j) + 0.5 * h;
  double len = 0.0;
  for (int shift = -1; shift <= 2; ++shift) {
    len += overlap_1d(lo + shift * kTwoPi, hi + shift * kTwoPi, a, b);
  }
  return len;
}

void validate_box(const CircleGrid& grid, double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw std::invalid_argument("cylinder_measure: box needs a < b");
  }
  if (a < 0.0 || b > kTwoPi) {
    throw std::invalid_argument("cylinder_measure: box must lie within [0, 2pi]");
  }
  if (b - a < grid.spacing()) {
    throw std::invalid_argument("cylinder_measure: box narrower than the grid spacing; rerun on a finer grid");
  }
}

}  // namespace

double cylinder_measure(const SpectralSolution& solution,
                        const std::vector<std::pair<double, double>>& boxes) {
  if (boxes.empty()) throw std::invalid_argument("cylinder_measure: no boxes");
  const CircleGrid& grid = solution.grid();
  const int n = grid.size();
  for (const auto& [a, b] : boxes) validate_box(grid, a, b);

  const bool spectral = solution.potential().is_analytic();
  const int k = static_cast<int>(boxes.size()) - 1;

  std::vector<double> g(static_cast<size_t>(n), 1.0);
  std::vector<double> integrand(static_cast<size_t>(n));
  for (int t = k; t >= 1; --t) {
    const auto [a, b] = boxes[static_cast<size_t>(t)];
    std::vector<double> next(static_cast<size_t>(n));
    if (spectral) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          integrand[static_cast<size_t>(j)] = solution.kernel_entry(i, j) * g[static_cast<size_t>(j)];
        }
        next[static_cast<size_t>(i)] = box_integral(integrand, a, b);
      }
    } else {
      std::vector<double> w(static_cast<size_t>(n));
      for (int j = 0; j < n; ++j) w[static_cast<size_t>(j)] = cell_overlap(grid, j, a, b) / kTwoPi;
      for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
          acc += solution.kernel_entry(i, j) * g[static_cast<size_t>(j)] * w[static_cast<size_t>(j)];
        }
        next[static_cast<size_t>(i)] = acc;
      }
    }
    g.swap(next);
  }

  const auto [a0, b0] = boxes.front();
  if (spectral) {
    for (int i = 0; i < n; ++i) {
      integrand[static_cast<size_t>(i)] = solution.theta()[static_cast<size_t>(i)] * g[static_cast<size_t>(i)];
    }
    return box_integral(integrand, a0, b0);
  }
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    acc += solution.theta()[static_cast<size_t>(i)] * g[static_cast<size_t>(i)] *
           cell_overlap(grid, i, a0, b0) / kTwoPi;
  }
  return acc;
}

double difference_band_mass(const SpectralSolution& solution,
                            const std::vector<std::pair<double, double>>& arcs) {
  if (arcs.empty()) throw std::invalid_argument("difference_band_mass: no arcs");
  const CircleGrid& grid = solution.grid();
  const int n = grid.size();
  for (const auto& [lo, hi] : arcs) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi) || hi - lo > kTwoPi) {
      throw std::invalid_argument("difference_band_mass: arc needs lo < hi <= lo + 2pi");
    }
  }
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double xi = grid.node(i);
    double mass_i = 0.0;
    for (const auto& [lo, hi] : arcs) {
      // x_i - y in [lo, hi)  <=>  y in (x_i - hi, x_i - lo]; up to the
      // measure-null boundary this is the arc of length hi - lo starting at
      // x_i - hi.
      const double ya = wrap_angle(xi - hi);
      const double yb = ya + (hi - lo);
      for (int j = 0; j < n; ++j) {
        const double ov = cell_overlap(grid, j, ya, yb);
        if (ov > 0.0) mass_i += solution.kernel_entry(i, j) * ov / kTwoPi;
      }
    }
    total += solution.theta()[static_cast<size_t>(i)] * mass_i;
  }
  return total / n;
}

ChainSample sample_chain(const SpectralSolution& solution, int n_steps, uint64_t seed) {
  if (n_steps < 0) throw std::invalid_argument("sample_chain: n_steps must be >= 0");
  const CircleGrid& grid = solution.grid();
  const int n = grid.size();
  SplitMix64 rng(seed);

  auto draw = [&](const std::vector<double>& cdf) {
    const double u = rng.next_double();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const auto idx = std::distance(cdf.begin(), it);
    return std::min(static_cast<int>(idx), n - 1);
  };

  // Initial state from theta; each CDF is normalized by its own total so the
  // final entry is exactly one.
  std::vector<double> cdf(static_cast<size_t>(n));
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    acc += solution.theta()[static_cast<size_t>(i)];
    cdf[static_cast<size_t>(i)] = acc;
  }
  for (double& c : cdf) c /= acc;

  // Kernel-row CDFs, built lazily for visited rows.
  std::vector<std::vector<double>> row_cdf(static_cast<size_t>(n));
  auto row_for = [&](int i) -> const std::vector<double>& {
    auto& r = row_cdf[static_cast<size_t>(i)];
    if (r.empty()) {
      r = solution.kernel_row(i);
      double s = 0.0;
      for (int j = 0; j < n; ++j) {
        s += r[static_cast<size_t>(j)];
        r[static_cast<size_t>(j)] = s;
      }
      for (double& c : r) c /= s;
    }
    return r;
  };

  ChainSample sample;
  sample.seed = seed;
  sample.states.reserve(static_cast<size_t>(n_steps) + 1);
  int state = draw(cdf);
  sample.states.push_back(grid.node(state));
  for (int k = 0; k < n_steps; ++k) {
    state = draw(row_for(state));
    sample.states.push_back(grid.node(state));
  }
  return sample;
}

double penalized_entropy(const SpectralSolution& solution) {
  const int n = solution.grid().size();
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const std::vector<double> row = solution.kernel_row(i);
    double row_acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const double kij = row[static_cast<size_t>(j)];
      if (kij > 0.0) row_acc += kij * std::log(kij);
    }
    s -= solution.theta()[static_cast<size_t>(i)] * row_acc / n;
  }
  return s / n;
}

PressureDecomposition pressure(const SpectralSolution& solution) {
  const CircleGrid& grid = solution.grid();
  const int n = grid.size();
  const DenseMatrix a = solution.potential().tabulate(grid);
  PressureDecomposition out;
  out.log_lambda = solution.log_lambda();
  double energy = 0.0;
  for (int i = 0; i < n; ++i) {
    double row_acc = 0.0;
    for (int j = 0; j < n; ++j) {
      row_acc += a.at(i, j) * solution.kernel_entry(i, j);
    }
    energy += solution.theta()[static_cast<size_t>(i)] * row_acc;
  }
  out.energy = solution.beta() * energy / static_cast<double>(n) / static_cast<double>(n);
  out.entropy = penalized_entropy(solution);
  out.residual = std::fabs(out.log_lambda - out.energy - out.entropy);
  return out;
}

double entropy_h(const SpectralSolution& solution, const NormalizedPotential& normalized) {
  const int n = solution.grid().size();
  double h = 0.0;
  for (int i = 0; i < n; ++i) {
    double row_acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const double abar = normalized.abar.at(i, j);
      if (abar < 0.0) row_acc += abar * solution.kernel_entry(i, j);
    }
    h -= solution.theta()[static_cast<size_t>(i)] * row_acc;
  }
  return h / static_cast<double>(n) / static_cast<double>(n);
}

std::vector<EntropyRateRow> entropy_rate_check(const TwoSitePotential& potential,
                                               const CircleGrid& grid,
                                               const std::vector<double>& betas) {
  if (!potential.is_continuous()) {
    throw std::invalid_argument(
        "entropy_rate_check: discontinuous step potential; use the log-domain "
        "ring analysis (vanenter) for its large-beta behavior");
  }
  std::vector<EntropyRateRow> rows;
  rows.reserve(betas.size());
  for (double beta : betas) {
    if (!(beta > 0.0)) {
      throw std::invalid_argument("entropy_rate_check: betas must be positive");
    }
    const SpectralSolution sol = solve_spectral(potential, grid, beta);
    const NormalizedPotential np = normalize_potential(sol);
    EntropyRateRow row;
    row.beta = beta;
    row.h = entropy_h(sol, np);
    row.h_over_beta = row.h / beta;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace spinring
