#include "spinring/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "spinring/fourier.hpp"
#include "spinring/kernels.hpp"

namespace spinring {

namespace {

constexpr double kExpArgLimit = 700.0;  // exp overflows near 709.78

using ApplyFn = std::function<void(const double*, double*)>;

// Power iteration from the constant function against an abstract positive
// operator.  The iterate is renormalized to unit integral every sweep, so
// the integral of the image is itself the eigenvalue estimate.
PowerIterationResult power_iterate_apply(const ApplyFn& apply, int n, double tol,
                                         int max_iterations) {
  PowerIterationResult res;
  std::vector<double> f(static_cast<size_t>(n), 1.0);
  std::vector<double> g(static_cast<size_t>(n), 0.0);
  for (int it = 1; it <= max_iterations; ++it) {
    apply(f.data(), g.data());
    const double lambda = grid_integral(g);
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
      throw std::runtime_error("power_iteration: eigenvalue estimate not positive");
    }
    double resid = 0.0;
    for (int i = 0; i < n; ++i) {
      resid = std::max(resid, std::fabs(g[static_cast<size_t>(i)] -
                                        lambda * f[static_cast<size_t>(i)]));
    }
    resid /= lambda;
    for (int i = 0; i < n; ++i) f[static_cast<size_t>(i)] = g[static_cast<size_t>(i)] / lambda;
    if (resid <= tol) {
      res.lambda = lambda;
      res.eigenfun = f;
      res.residual = resid;
      res.iterations = it;
      return res;
    }
    res.residual = resid;
    res.iterations = it;
  }
  std::ostringstream msg;
  msg << "power_iteration: no convergence after " << max_iterations
      << " sweeps, residual " << res.residual;
  throw std::runtime_error(msg.str());
}

}  // namespace

OperatorMatrix build_operator(const TwoSitePotential& potential, const CircleGrid& grid,
                              double beta, Direction direction) {
  const double scale = std::fabs(beta) * potential.max_abs_on_grid(grid);
  if (scale > kExpArgLimit) {
    throw std::domain_error(
        "build_operator: beta * max|A| exceeds the exp range; use the "
        "log-domain ring analysis (vanenter) for this regime");
  }
  const int n = grid.size();
  const DenseMatrix a = potential.tabulate(grid);
  OperatorMatrix op;
  op.beta = beta;
  op.direction = direction;
  op.matrix = DenseMatrix(n, n);
  kernels::exp_table(a, beta, grid.weight(), op.matrix);
  if (direction == Direction::Adjoint) {
    for (int r = 0; r < n; ++r) {
      for (int c = r + 1; c < n; ++c) {
        std::swap(op.matrix.at(r, c), op.matrix.at(c, r));
      }
    }
  }
  return op;
}

PowerIterationResult power_iteration(const OperatorMatrix& op, double tol,
                                     int max_iterations) {
  const DenseMatrix& m = op.matrix;
  return power_iterate_apply(
      [&m](const double* x, double* y) { kernels::matvec(m, x, y); }, m.rows, tol,
      max_iterations);
}

SpectralSolution::SpectralSolution(const TwoSitePotential& potential,
                                   const CircleGrid& grid, double beta, double tol,
                                   int max_iterations)
    : potential_(potential), grid_(grid), beta_(beta) {
  op_ = build_operator(potential, grid, beta, Direction::Forward);
  const DenseMatrix& m = op_.matrix;
  const int n = grid.size();

  PowerIterationResult fwd = power_iterate_apply(
      [&m](const double* x, double* y) { kernels::matvec(m, x, y); }, n, tol,
      max_iterations);
  PowerIterationResult adj = power_iterate_apply(
      [&m](const double* x, double* y) { kernels::matvec_transpose(m, x, y); }, n, tol,
      max_iterations);

  lambda_ = fwd.lambda;
  lambda_adjoint_ = adj.lambda;
  residual_ = std::max(fwd.residual, adj.residual);
  psi_ = std::move(fwd.eigenfun);
  psi_bar_ = std::move(adj.eigenfun);

  for (int i = 0; i < n; ++i) {
    if (!(psi_[static_cast<size_t>(i)] > 0.0) || !(psi_bar_[static_cast<size_t>(i)] > 0.0)) {
      throw std::runtime_error("solve_spectral: eigenfunction lost positivity");
    }
  }

  theta_.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    theta_[static_cast<size_t>(i)] =
        psi_[static_cast<size_t>(i)] * psi_bar_[static_cast<size_t>(i)];
  }
  pi_beta_ = grid_integral(theta_);
  for (double& t : theta_) t /= pi_beta_;
}

double SpectralSolution::gap_ratio() const {
  if (gap_ready_) return gap_ratio_;
  const DenseMatrix& m = op_.matrix;
  const int n = grid_.size();

  if (potential_.is_translation_invariant()) {
    // The kernel matrix is circulant, so its eigenvalues are the DFT of one
    // row profile; the ratio needs no iteration and no normalization.
    std::vector<double> profile(static_cast<size_t>(n));
    for (int c = 0; c < n; ++c) profile[static_cast<size_t>(c)] = m.at(0, c);
    const std::vector<std::complex<double>> modes = dft_forward(profile);
    const double lead = std::abs(modes[0]);
    double second = 0.0;
    for (size_t k = 1; k < modes.size(); ++k) {
      second = std::max(second, std::abs(modes[k]));
    }
    gap_ratio_ = second / lead;
    gap_ready_ = true;
    return gap_ratio_;
  }

  // Second eigenvalue magnitude by one deflated power iteration: project the
  // iterate off the leading right eigenvector (against the left one) and
  // track the Rayleigh-style ratio until it settles.
  const double denom = [&] {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      acc += psi_bar_[static_cast<size_t>(i)] * psi_[static_cast<size_t>(i)];
    }
    return acc / n;
  }();
  auto deflate = [&](std::vector<double>& v) {
    double coef = 0.0;
    for (int i = 0; i < n; ++i) coef += psi_bar_[static_cast<size_t>(i)] * v[static_cast<size_t>(i)];
    coef = coef / n / denom;
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] -= coef * psi_[static_cast<size_t>(i)];
  };

  std::vector<double> g(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<size_t>(i)] = std::cos(grid_.node(i));
  deflate(g);
  double gnorm = 0.0;
  for (double v : g) gnorm = std::max(gnorm, std::fabs(v));
  if (gnorm < 1e-14) {
    // cos lies in the leading eigendirection (it cannot for a positive
    // kernel, but stay defensive): fall back to a localized bump.
    for (int i = 0; i < n; ++i) g[static_cast<size_t>(i)] = (i == 0) ? 1.0 : 0.0;
    deflate(g);
    gnorm = 0.0;
    for (double v : g) gnorm = std::max(gnorm, std::fabs(v));
  }
  for (double& v : g) v /= gnorm;

  std::vector<double> h(static_cast<size_t>(n));
  double mu_prev = 0.0;
  gap_ratio_ = 0.0;
  const int gap_max_iter = 30000;
  for (int it = 0; it < gap_max_iter; ++it) {
    kernels::matvec(m, g.data(), h.data());
    deflate(h);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i) {
      num += h[static_cast<size_t>(i)] * g[static_cast<size_t>(i)];
      den += g[static_cast<size_t>(i)] * g[static_cast<size_t>(i)];
    }
    const double mu = num / den;
    double hnorm = 0.0;
    for (double v : h) hnorm = std::max(hnorm, std::fabs(v));
    if (hnorm < 1e-300) {
      gap_ratio_ = 0.0;  // deflated operator is (numerically) zero
      break;
    }
    for (int i = 0; i < n; ++i) g[static_cast<size_t>(i)] = h[static_cast<size_t>(i)] / hnorm;
    gap_ratio_ = std::fabs(mu) / lambda_;
    if (it > 0 && std::fabs(mu - mu_prev) <= 1e-12 * lambda_) break;
    mu_prev = mu;
  }
  gap_ready_ = true;
  return gap_ratio_;
}

std::vector<double> SpectralSolution::psi_rescaled_rho() const {
  std::vector<double> out = psi_;
  for (double& v : out) v /= pi_beta_;
  return out;
}

double SpectralSolution::kernel_entry(int i, int j) const {
  const int n = grid_.size();
  return n * op_.matrix.at(j, i) * psi_bar_[static_cast<size_t>(j)] /
         (psi_bar_[static_cast<size_t>(i)] * lambda_);
}

std::vector<double> SpectralSolution::kernel_row(int i) const {
  const int n = grid_.size();
  std::vector<double> row(static_cast<size_t>(n));
  const double inv = n / (psi_bar_[static_cast<size_t>(i)] * lambda_);
  for (int j = 0; j < n; ++j) {
    row[static_cast<size_t>(j)] = op_.matrix.at(j, i) * psi_bar_[static_cast<size_t>(j)] * inv;
  }
  return row;
}

std::vector<double> SpectralSolution::apply_kernel(const std::vector<double>& f) const {
  const int n = grid_.size();
  std::vector<double> weighted(static_cast<size_t>(n)), out(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    weighted[static_cast<size_t>(j)] = psi_bar_[static_cast<size_t>(j)] * f[static_cast<size_t>(j)];
  }
  kernels::matvec_transpose(op_.matrix, weighted.data(), out.data());
  for (int i = 0; i < n; ++i) {
    out[static_cast<size_t>(i)] /= psi_bar_[static_cast<size_t>(i)] * lambda_;
  }
  return out;
}

SpectralSolution solve_spectral(const TwoSitePotential& potential, const CircleGrid& grid,
                                double beta, double tol, int max_iterations) {
  return SpectralSolution(potential, grid, beta, tol, max_iterations);
}

NormalizedPotential normalize_potential(const SpectralSolution& solution) {
  const CircleGrid& grid = solution.grid();
  const int n = grid.size();
  const DenseMatrix a = solution.potential().tabulate(grid);
  NormalizedPotential np;
  np.log_lambda = solution.log_lambda();
  np.abar = DenseMatrix(n, n);
  std::vector<double> log_psi(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) log_psi[static_cast<size_t>(i)] = std::log(solution.psi()[static_cast<size_t>(i)]);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      np.abar.at(i, j) = solution.beta() * a.at(i, j) + log_psi[static_cast<size_t>(i)] -
                         log_psi[static_cast<size_t>(j)] - np.log_lambda;
    }
  }
  return np;
}

std::vector<double> discounted_log_eigenfunction(const TwoSitePotential& potential,
                                                 const CircleGrid& grid, double beta,
                                                 double s, double tol) {
  if (!(s > 0.0 && s < 1.0)) {
    throw std::invalid_argument("discounted_log_eigenfunction: s must lie in (0,1)");
  }
  const double scale = std::fabs(beta) * potential.max_abs_on_grid(grid);
  if (scale > kExpArgLimit) {
    throw std::domain_error(
        "discounted_log_eigenfunction: beta * max|A| exceeds the exp range");
  }
  const int n = grid.size();
  const DenseMatrix a = potential.tabulate(grid);
  const double log_n = std::log(static_cast<double>(n));
  std::vector<double> u(static_cast<size_t>(n), 0.0), next(static_cast<size_t>(n), 0.0);
  std::vector<double> vals(static_cast<size_t>(n));
  // The map is a contraction with modulus s, so the residual shrinks by s
  // each sweep; bound the sweep count accordingly (plus slack).
  const int max_sweeps =
      200 + static_cast<int>(std::ceil(std::log(tol * (1.0 - s) / (scale + 1.0)) / std::log(s)));
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    for (int y = 0; y < n; ++y) {
      double vmax = -std::numeric_limits<double>::infinity();
      for (int x = 0; x < n; ++x) {
        vals[static_cast<size_t>(x)] = beta * a.at(x, y) + s * u[static_cast<size_t>(x)];
        vmax = std::max(vmax, vals[static_cast<size_t>(x)]);
      }
      double acc = 0.0;
      for (int x = 0; x < n; ++x) acc += std::exp(vals[static_cast<size_t>(x)] - vmax);
      next[static_cast<size_t>(y)] = vmax + std::log(acc) - log_n;
    }
    double diff = 0.0;
    for (int y = 0; y < n; ++y) {
      diff = std::max(diff, std::fabs(next[static_cast<size_t>(y)] - u[static_cast<size_t>(y)]));
    }
    u.swap(next);
    if (diff <= tol) return u;
  }
  throw std::runtime_error("discounted_log_eigenfunction: no convergence");
}

double correlation(const SpectralSolution& solution, const std::vector<double>& v,
                   const std::vector<double>& w, int n) {
  if (n < 0) throw std::invalid_argument("correlation: lag must be nonnegative");
  const int size = solution.grid().size();
  if (static_cast<int>(v.size()) != size || static_cast<int>(w.size()) != size) {
    throw std::invalid_argument("correlation: observable size mismatch");
  }
  double mean_w = 0.0;
  for (int i = 0; i < size; ++i) mean_w += w[static_cast<size_t>(i)] * solution.theta()[static_cast<size_t>(i)];
  mean_w /= size;
  std::vector<double> f(static_cast<size_t>(size));
  for (int i = 0; i < size; ++i) f[static_cast<size_t>(i)] = w[static_cast<size_t>(i)] - mean_w;
  for (int k = 0; k < n; ++k) f = solution.apply_kernel(f);
  double acc = 0.0;
  for (int i = 0; i < size; ++i) {
    acc += v[static_cast<size_t>(i)] * f[static_cast<size_t>(i)] * solution.theta()[static_cast<size_t>(i)];
  }
  return acc / size;
}

double finite_volume_expectation(const SpectralSolution& solution,
                                 const NormalizedPotential& normalized,
                                 const std::vector<double>& f, int n,
                                 std::optional<double> boundary) {
  if (n < 1) throw std::invalid_argument("finite_volume_expectation: need n >= 1");
  const int size = solution.grid().size();
  if (static_cast<int>(f.size()) != size) {
    throw std::invalid_argument("finite_volume_expectation: observable size mismatch");
  }
  // Dense one-step matrix W.at(y, x) = e^{Abar(x,y)} / size; rows of the
  // stochastic family integrate to one in x by the calibration identity.
  DenseMatrix w(size, size);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      w.at(y, x) = std::exp(normalized.abar.at(x, y)) / size;
    }
  }
  std::vector<double> g = f, h(static_cast<size_t>(size));
  for (int k = 0; k < n; ++k) {
    kernels::matvec(w, g.data(), h.data());
    g.swap(h);
  }
  if (boundary.has_value()) {
    return g[static_cast<size_t>(solution.grid().nearest_node(*boundary))];
  }
  return grid_integral(g);
}

}  // namespace spinring
