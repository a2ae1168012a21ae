#ifndef SPINRING_ZEROTEMP_HPP
#define SPINRING_ZEROTEMP_HPP

#include <string>
#include <vector>

#include "spinring/grid.hpp"
#include "spinring/potential.hpp"

namespace spinring {

// ---------------------------------------------------------------------------
// Maximal ergodic average m(A) = max over cycles of the cycle-mean of A on
// the complete digraph over grid nodes (edge a -> y carries weight A(a, y)).
// ---------------------------------------------------------------------------
struct MaxMeanCycle {
  double m = 0.0;
  std::vector<int> cycle;   // node indices of one optimal cycle, in order
  double cycle_mean = 0.0;  // mean of A along `cycle` (diagnostic)
};

// Karp's dynamic program, O(n^3) time, with a witness cycle read back from
// the parent pointers of an optimal walk.
MaxMeanCycle max_ergodic_average(const DenseMatrix& a_table);
MaxMeanCycle max_ergodic_average(const TwoSitePotential& potential, const CircleGrid& grid);

// Independent route to the same number: the linear program
//   minimize t  s.t.  A(a,y) + f(a) - f(y) <= t  for all (a,y),
// solved by bisection on t with Bellman–Ford feasibility of the difference
// constraints (negative cycle <=> infeasible).
double dual_value(const DenseMatrix& a_table, double tol = 1e-11);

// Fixed point of the discounted Bellman operator
//   u(y) = max_a [ A(a,y) + lambda u(a) ],  0 < lambda < 1,
// computed exactly (up to rounding) by Howard policy iteration: each policy
// is evaluated by resolving its successor graph's cycles in closed form.
std::vector<double> discounted_subaction(const DenseMatrix& a_table, double lambda);

enum class SubactionMethod { Discounted, LpDual };

// Calibrated subaction: u with max u = 0 and
//   u(y) = max_a [ A(a,y) - m + u(a) ]   (residual = sup-norm defect).
//
// LpDual route: m from the LP dual, u from the (max,+) path closure of
// B = A - m restricted to critical nodes (exact fixed point).
// Discounted route: Richardson extrapolation of discounted fixed points
// along the lambda schedule {0.9, 0.99, 0.999}; if the defect exceeds
// `tol` the schedule is extended (0.9999, ...) and the result polished by
// shifted Lax–Oleinik sweeps until the defect settles.
struct Subaction {
  std::vector<double> u;
  double m_value = 0.0;
  double residual = 0.0;
  std::string method;
};

Subaction calibrated_subaction(const DenseMatrix& a_table, SubactionMethod method,
                               double tol = 1e-6);

// Zero-temperature limit of the eigenfunctions: V_beta = (log psi_beta -
// max log psi_beta) / beta along a beta sweep, reported with successive
// sup-norm changes and the one-sided subaction defect of the final V:
//   violation = max over grid pairs of [ A(a,y) + V(a) - V(y) ] - m.
struct EigenLimitRow {
  double beta = 0.0;
  double sup_change = 0.0;  // sup |V_beta - V_previous| (0 for the first row)
};

struct EigenLimitResult {
  std::vector<double> V;  // at the final (largest) beta, max-normalized
  std::vector<EigenLimitRow> rows;
  double m_reference = 0.0;
  double one_sided_violation = 0.0;
};

EigenLimitResult eigen_limit_V(const TwoSitePotential& potential, const CircleGrid& grid,
                               std::vector<double> betas);

// Ground-state convergence of the pressure: rows of (1/beta) log lambda_beta
// and its gap to m, plus an extrapolated estimate of m from the model
//   (1/beta) log lambda = m - a log(beta)/beta - b/beta.
struct EigenvalueLimitRow {
  double beta = 0.0;
  double log_lambda_over_beta = 0.0;
  double gap_to_m = 0.0;
};

struct EigenvalueLimitResult {
  std::vector<EigenvalueLimitRow> rows;
  double m_reference = 0.0;
  double m_extrapolated = 0.0;
};

EigenvalueLimitResult eigenvalue_limit(const TwoSitePotential& potential,
                                       const CircleGrid& grid, std::vector<double> betas);

// Large-deviation rate of a finite prefix (x_0, ..., x_k) against a
// calibrated subaction u:
//   I = sum_i [ u(x_{i+1}) - u(x_i) - (A(x_i, x_{i+1}) - m) ] >= 0.
// Prefix angles are snapped to the nearest grid node (u lives on the grid).
double rate_function(const Subaction& subaction, const TwoSitePotential& potential,
                     const CircleGrid& grid, const std::vector<double>& prefix);

// Sign audit of the mixed second difference of A over a node window
// (defaults to the full torus):
//   D_ij = [A_{i+1,j+1} - A_{i+1,j-1} - A_{i-1,j+1} + A_{i-1,j-1}] / (4 h^2).
// `holds` requires a uniform strict sign.  Step potentials are rejected
// (no classical mixed partial).
struct TwistReport {
  double min_value = 0.0;  // smallest D_ij over the window
  double max_value = 0.0;  // largest
  bool sign_change = false;
  bool holds = false;
};

TwistReport twist_check(const TwoSitePotential& potential, const CircleGrid& grid);
TwistReport twist_check(const TwoSitePotential& potential, const CircleGrid& grid,
                        int i_lo, int i_hi, int j_lo, int j_hi);

// Support audit of the zero-temperature measure: tight edges of a calibrated
// subaction (|A(a,y) + u(a) - u(y) - m| <= edge_tol), pruned to their
// recurrent core; `single_valued` asks every surviving first coordinate to
// admit exactly one second coordinate.  Run at the given grid and at double
// resolution to guard against grid artifacts.
struct GraphSupportGridReport {
  int grid_n = 0;
  int support_nodes = 0;
  int max_out_degree = 0;
  bool single_valued = false;
};

struct GraphSupportReport {
  GraphSupportGridReport coarse;
  GraphSupportGridReport fine;
  bool holds = false;  // single-valued at both resolutions
};

GraphSupportReport graph_support_check(const TwoSitePotential& potential,
                                       const CircleGrid& grid, double edge_tol = 1e-8);

}  // namespace spinring

#endif  // SPINRING_ZEROTEMP_HPP
