#ifndef SPINRING_TRANSFER_HPP
#define SPINRING_TRANSFER_HPP

#include <cmath>
#include <optional>
#include <vector>

#include "spinring/grid.hpp"
#include "spinring/potential.hpp"

namespace spinring {

// Orientation of the integral operator built from A:
//   Forward  (L f)(y)    = ∫ e^{beta A(x,y)} f(x) dnu(x)   (integrate 1st arg)
//   Adjoint  (Lbar f)(x) = ∫ e^{beta A(x,y)} f(y) dnu(y)   (integrate 2nd arg)
enum class Direction { Forward, Adjoint };

// Dense quadrature discretization of the operator.  For the forward
// orientation, matrix.at(r, c) = exp(beta A(x_c, x_r)) / n, so a plain
// matvec applies L and a transposed matvec applies Lbar.
struct OperatorMatrix {
  DenseMatrix matrix;
  double beta = 0.0;
  Direction direction = Direction::Forward;
};

// Throws std::domain_error when beta * max|A| would overflow exp (the
// caller is pointed at the log-domain ring analysis instead).
OperatorMatrix build_operator(const TwoSitePotential& potential,
                              const CircleGrid& grid, double beta,
                              Direction direction);

struct PowerIterationResult {
  double lambda = 0.0;             // leading eigenvalue estimate
  std::vector<double> eigenfun;    // positive, normalized to unit integral
  double residual = 0.0;           // sup |M f - lambda f| / lambda at exit
  int iterations = 0;
};

// Power iteration from the constant function, renormalized to unit integral
// each sweep.  Throws std::runtime_error if the residual has not reached
// `tol` within `max_iterations` sweeps (the message carries the residual).
PowerIterationResult power_iteration(const OperatorMatrix& op, double tol = 1e-12,
                                     int max_iterations = 100000);

// Leading eigendata of the forward/adjoint pair on one grid.
//
// Normalization: psi and psi_bar each have unit integral against nu; the
// alternative normalization ∫ psi drho = 1 (rho = psi_bar nu / ∫psi_bar dnu)
// is exposed via psi_rescaled_rho().  theta = psi psi_bar / pi_beta with
// pi_beta = ∫ psi psi_bar dnu, so ∫ theta dnu = 1.
class SpectralSolution {
 public:
  SpectralSolution(const TwoSitePotential& potential, const CircleGrid& grid,
                   double beta, double tol, int max_iterations);

  const CircleGrid& grid() const { return grid_; }
  const TwoSitePotential& potential() const { return potential_; }
  double beta() const { return beta_; }
  double lambda() const { return lambda_; }
  // Leading eigenvalue of the adjoint iteration; agrees with lambda() up to
  // iteration tolerance and is exposed so that agreement can be audited.
  double lambda_adjoint() const { return lambda_adjoint_; }
  double log_lambda() const { return std::log(lambda_); }
  // |second eigenvalue| / lambda.  Translation-invariant kernels are
  // circulant, so the whole spectrum is the DFT of one kernel row and the
  // ratio is exact; otherwise one deflated power iteration estimates it.
  // Computed on first call and cached (not synchronized: finish the first
  // call before sharing a solution across threads).
  double gap_ratio() const;
  double pi_beta() const { return pi_beta_; }
  double residual() const { return residual_; }

  const std::vector<double>& psi() const { return psi_; }
  const std::vector<double>& psi_bar() const { return psi_bar_; }
  const std::vector<double>& theta() const { return theta_; }
  std::vector<double> psi_rescaled_rho() const;

  // Forward operator matrix (matvec applies L, transposed matvec Lbar).
  const DenseMatrix& forward_matrix() const { return op_.matrix; }

  // Normalized transition kernel K(x_i, y_j) = e^{beta A(x_i,y_j)} psi_bar_j
  // / (psi_bar_i lambda); each row integrates to 1 against nu in y.
  double kernel_entry(int i, int j) const;
  std::vector<double> kernel_row(int i) const;
  // (K f)(x_i) = ∫ K(x_i, y) f(y) dnu(y) for a grid function f.
  std::vector<double> apply_kernel(const std::vector<double>& f) const;

 private:
  TwoSitePotential potential_;
  CircleGrid grid_;
  double beta_;
  OperatorMatrix op_;
  double lambda_ = 0.0;
  double lambda_adjoint_ = 0.0;
  mutable double gap_ratio_ = 0.0;
  mutable bool gap_ready_ = false;
  double pi_beta_ = 0.0;
  double residual_ = 0.0;
  std::vector<double> psi_, psi_bar_, theta_;
};

SpectralSolution solve_spectral(const TwoSitePotential& potential,
                                const CircleGrid& grid, double beta,
                                double tol = 1e-12, int max_iterations = 100000);

// Normalized (calibrated) potential
//   Abar(x,y) = beta A(x,y) + log psi(x) - log psi(y) - log lambda,
// which satisfies ∫ e^{Abar(x,y)} dnu(x) = 1 for every y.
struct NormalizedPotential {
  DenseMatrix abar;        // abar.at(i, j) = Abar(x_i, x_j)
  double log_lambda = 0.0;
};

NormalizedPotential normalize_potential(const SpectralSolution& solution);

// Fixed point of the discounted log-eigenfunction equation
//   u(y) = log ∫ exp(beta A(x,y) + s u(x)) dnu(x),  0 < s < 1,
// found by fixed-point iteration (a sup-norm contraction with modulus s).
// Iterates until sup |T u - u| <= tol.
std::vector<double> discounted_log_eigenfunction(const TwoSitePotential& potential,
                                                 const CircleGrid& grid, double beta,
                                                 double s, double tol = 1e-10);

// Pair correlation at lag n under the stationary chain:
//   C_n = ∫ v (K^n w~) theta dnu  with  w~ = w - ∫ w theta dnu.
double correlation(const SpectralSolution& solution, const std::vector<double>& v,
                   const std::vector<double>& w, int n);

// Finite-volume conditional expectation of f at the origin with the
// boundary condition n sites away:
//   E_n(f | b) = (Lbar_A^n f)(b)   with the normalized potential Abar,
// where Lbar_A g(y) = ∫ e^{Abar(x,y)} g(x) dnu(x).  A concrete boundary
// angle is snapped to the nearest grid node; an empty boundary averages
// over it (free boundary).  As n grows this approaches ∫ f theta dnu.
double finite_volume_expectation(const SpectralSolution& solution,
                                 const NormalizedPotential& normalized,
                                 const std::vector<double>& f, int n,
                                 std::optional<double> boundary);

}  // namespace spinring

#endif  // SPINRING_TRANSFER_HPP
