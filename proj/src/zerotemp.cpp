#include "spinring/zerotemp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "spinring/kernels.hpp"
#include "spinring/transfer.hpp"

namespace spinring {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double max_abs_entry(const DenseMatrix& a) {
  double m = 0.0;
  for (double v : a.data) m = std::max(m, std::fabs(v));
  return m;
}

// T_m(u)(y) = max_a [ A(a,y) - m + u(a) ]; returns sup |T_m(u) - u|.
double subaction_defect(const DenseMatrix& a, double m, const std::vector<double>& u) {
  const int n = a.rows;
  double defect = 0.0;
  for (int y = 0; y < n; ++y) {
    double best = kNegInf;
    for (int x = 0; x < n; ++x) {
      best = std::max(best, a.at(x, y) - m + u[static_cast<size_t>(x)]);
    }
    defect = std::max(defect, std::fabs(best - u[static_cast<size_t>(y)]));
  }
  return defect;
}

void max_normalize(std::vector<double>& u) {
  double m = kNegInf;
  for (double v : u) m = std::max(m, v);
  for (double& v : u) v -= m;
}

// Bellman–Ford feasibility of the difference constraints with edge costs
// c(u,v) = t - A(u,v): feasible iff the complete digraph has no negative
// cycle.  Jacobi sweeps from the all-zero super-source stabilize within n-1
// rounds exactly when no negative cycle exists.
bool shift_is_feasible(const DenseMatrix& a, double t) {
  const int n = a.rows;
  DenseMatrix cost(n, n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) cost.at(u, v) = t - a.at(u, v);
  }
  std::vector<double> dist(static_cast<size_t>(n), 0.0), next(static_cast<size_t>(n), 0.0);
  for (int sweep = 0; sweep <= n; ++sweep) {
    const double drop = kernels::bellman_step(cost, dist.data(), next.data());
    dist.swap(next);
    if (drop == 0.0) return true;
  }
  return false;
}

struct HowardEvaluation {
  std::vector<double> u;
};

// Exact evaluation of a stationary policy pi (successor map y -> a) for
// u(y) = A(pi(y), y) + lambda u(pi(y)): resolve each cycle of the successor
// graph in closed form, then back-substitute along the trees.
HowardEvaluation evaluate_policy(const DenseMatrix& a, double lambda,
                                 const std::vector<int>& pi) {
  const int n = a.rows;
  HowardEvaluation ev;
  ev.u.assign(static_cast<size_t>(n), 0.0);
  // color: 0 unvisited, 1 on current walk, 2 resolved
  std::vector<int> color(static_cast<size_t>(n), 0);
  std::vector<int> walk;
  for (int start = 0; start < n; ++start) {
    if (color[static_cast<size_t>(start)] == 2) continue;
    walk.clear();
    int v = start;
    while (color[static_cast<size_t>(v)] == 0) {
      color[static_cast<size_t>(v)] = 1;
      walk.push_back(v);
      v = pi[static_cast<size_t>(v)];
    }
    if (color[static_cast<size_t>(v)] == 1) {
      // Found a new cycle starting at v; collect it from the walk tail.
      const auto cycle_begin =
          std::find(walk.begin(), walk.end(), v) - walk.begin();
      const int len = static_cast<int>(walk.size()) - static_cast<int>(cycle_begin);
      // u(c0) = sum_{t<len} lambda^t A(c_{t+1}, c_t) / (1 - lambda^len)
      double s = 0.0, pw = 1.0;
      for (int t = 0; t < len; ++t) {
        const int ct = walk[static_cast<size_t>(cycle_begin + t)];
        const int cn = walk[static_cast<size_t>(cycle_begin + (t + 1) % len)];
        s += pw * a.at(cn, ct);
        pw *= lambda;
      }
      const int c0 = walk[static_cast<size_t>(cycle_begin)];
      ev.u[static_cast<size_t>(c0)] = s / (1.0 - pw);
      color[static_cast<size_t>(c0)] = 2;
      // Backward around the cycle: u(c_t) = A(c_{t+1}, c_t) + lambda u(c_{t+1}).
      for (int t = len - 1; t >= 1; --t) {
        const int ct = walk[static_cast<size_t>(cycle_begin + t)];
        const int cn = walk[static_cast<size_t>(cycle_begin + (t + 1) % len)];
        ev.u[static_cast<size_t>(ct)] = a.at(cn, ct) + lambda * ev.u[static_cast<size_t>(cn)];
        color[static_cast<size_t>(ct)] = 2;
      }
    }
    // Resolve the tree part of the walk back to front.
    for (auto it = walk.rbegin(); it != walk.rend(); ++it) {
      if (color[static_cast<size_t>(*it)] == 2) continue;
      const int succ = pi[static_cast<size_t>(*it)];
      ev.u[static_cast<size_t>(*it)] =
          a.at(succ, *it) + lambda * ev.u[static_cast<size_t>(succ)];
      color[static_cast<size_t>(*it)] = 2;
    }
  }
  return ev;
}

// Divided-difference (Newton) evaluation at x = 0 of the polynomial through
// (x_i, f_i) — the Richardson limit for the Laurent data.
double extrapolate_to_zero(std::vector<double> xs, std::vector<double> fs) {
  const size_t k = xs.size();
  for (size_t level = 1; level < k; ++level) {
    for (size_t i = k - 1; i >= level; --i) {
      fs[i] = (fs[i] - fs[i - 1]) / (xs[i] - xs[i - level]);
      if (i == level) break;
    }
  }
  // Horner at x = 0 over the Newton form.
  double acc = fs[k - 1];
  for (size_t i = k - 1; i > 0; --i) {
    acc = fs[i - 1] + (0.0 - xs[i - 1]) * acc;
  }
  return acc;
}

}  // namespace

MaxMeanCycle max_ergodic_average(const DenseMatrix& a_table) {
  const int n = a_table.rows;
  if (n != a_table.cols || n < 1) {
    throw std::invalid_argument("max_ergodic_average: table must be square");
  }
  // D[k][v] = best total weight of a k-edge walk ending at v (any start).
  std::vector<std::vector<double>> d(static_cast<size_t>(n) + 1,
                                     std::vector<double>(static_cast<size_t>(n), 0.0));
  std::vector<std::vector<int>> parent(static_cast<size_t>(n) + 1,
                                       std::vector<int>(static_cast<size_t>(n), -1));
  for (int k = 1; k <= n; ++k) {
    kernels::walk_step(a_table, d[static_cast<size_t>(k - 1)].data(),
                       d[static_cast<size_t>(k)].data(),
                       parent[static_cast<size_t>(k)].data());
  }
  // m = max_v min_{0<=k<n} (D[n][v] - D[k][v]) / (n - k)   (Karp).
  MaxMeanCycle result;
  result.m = kNegInf;
  int best_v = 0;
  for (int v = 0; v < n; ++v) {
    double inner = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
      inner = std::min(inner, (d[static_cast<size_t>(n)][static_cast<size_t>(v)] -
                               d[static_cast<size_t>(k)][static_cast<size_t>(v)]) /
                                  static_cast<double>(n - k));
    }
    if (inner > result.m) {
      result.m = inner;
      best_v = v;
    }
  }
  // Witness: the parent walk of length n ending at best_v contains a cycle,
  // and on an optimal walk any such cycle attains the optimum mean.
  std::vector<int> nodes(static_cast<size_t>(n) + 1);
  nodes[static_cast<size_t>(n)] = best_v;
  for (int k = n; k >= 1; --k) {
    nodes[static_cast<size_t>(k - 1)] =
        parent[static_cast<size_t>(k)][static_cast<size_t>(nodes[static_cast<size_t>(k)])];
  }
  std::vector<int> seen_at(static_cast<size_t>(n), -1);
  int cycle_from = -1, cycle_to = -1;
  for (int k = 0; k <= n; ++k) {
    const int node = nodes[static_cast<size_t>(k)];
    if (seen_at[static_cast<size_t>(node)] >= 0) {
      cycle_from = seen_at[static_cast<size_t>(node)];
      cycle_to = k;
      break;
    }
    seen_at[static_cast<size_t>(node)] = k;
  }
  for (int k = cycle_from; k < cycle_to; ++k) {
    result.cycle.push_back(nodes[static_cast<size_t>(k)]);
  }
  double total = 0.0;
  const int len = static_cast<int>(result.cycle.size());
  for (int t = 0; t < len; ++t) {
    total += a_table.at(result.cycle[static_cast<size_t>(t)],
                        result.cycle[static_cast<size_t>((t + 1) % len)]);
  }
  result.cycle_mean = total / len;
  return result;
}

MaxMeanCycle max_ergodic_average(const TwoSitePotential& potential, const CircleGrid& grid) {
  return max_ergodic_average(potential.tabulate(grid));
}

double dual_value(const DenseMatrix& a_table, double tol) {
  if (a_table.rows != a_table.cols || a_table.rows < 1) {
    throw std::invalid_argument("dual_value: table must be square");
  }
  double lo = *std::min_element(a_table.data.begin(), a_table.data.end());
  double hi = *std::max_element(a_table.data.begin(), a_table.data.end());
  if (lo == hi) return lo;  // constant potential: every cycle has mean lo
  const double scale = std::max({1.0, std::fabs(lo), std::fabs(hi)});
  // Invariant: t = hi is feasible (all costs nonnegative), t = lo - 1 is not.
  while (hi - lo > tol * scale) {
    const double mid = 0.5 * (lo + hi);
    if (shift_is_feasible(a_table, mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> discounted_subaction(const DenseMatrix& a_table, double lambda) {
  const int n = a_table.rows;
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw std::invalid_argument("discounted_subaction: lambda must lie in (0,1)");
  }
  // Initial greedy policy, then Howard iterations: evaluate exactly,
  // improve greedily, stop when no entry strictly improves.
  std::vector<int> pi(static_cast<size_t>(n), 0);
  for (int y = 0; y < n; ++y) {
    double best = kNegInf;
    for (int x = 0; x < n; ++x) {
      if (a_table.at(x, y) > best) {
        best = a_table.at(x, y);
        pi[static_cast<size_t>(y)] = x;
      }
    }
  }
  const int max_rounds = 10000;
  for (int round = 0; round < max_rounds; ++round) {
    const HowardEvaluation ev = evaluate_policy(a_table, lambda, pi);
    bool changed = false;
    for (int y = 0; y < n; ++y) {
      double best = a_table.at(pi[static_cast<size_t>(y)], y) +
                    lambda * ev.u[static_cast<size_t>(pi[static_cast<size_t>(y)])];
      int best_x = pi[static_cast<size_t>(y)];
      for (int x = 0; x < n; ++x) {
        const double cand = a_table.at(x, y) + lambda * ev.u[static_cast<size_t>(x)];
        if (cand > best) {
          best = cand;
          best_x = x;
        }
      }
      if (best_x != pi[static_cast<size_t>(y)]) {
        pi[static_cast<size_t>(y)] = best_x;
        changed = true;
      }
    }
    if (!changed) return ev.u;
  }
  throw std::runtime_error("discounted_subaction: policy iteration did not settle");
}

Subaction calibrated_subaction(const DenseMatrix& a_table, SubactionMethod method,
                               double tol) {
  const int n = a_table.rows;
  Subaction sub;
  if (method == SubactionMethod::LpDual) {
    sub.method = "lp_dual";
    sub.m_value = dual_value(a_table);
    // (max,+) closure of B = A - m; critical nodes carry zero-mean cycles.
    DenseMatrix b(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) b.at(i, j) = a_table.at(i, j) - sub.m_value;
    }
    kernels::maxplus_closure(b);
    const double crit_tol = 1e-9 * std::max(1.0, max_abs_entry(a_table));
    std::vector<int> critical;
    for (int v = 0; v < n; ++v) {
      if (b.at(v, v) >= -crit_tol) critical.push_back(v);
    }
    if (critical.empty()) {
      // Bisection slack left no node at exactly zero; take the best cycle.
      int best = 0;
      for (int v = 1; v < n; ++v) {
        if (b.at(v, v) > b.at(best, best)) best = v;
      }
      critical.push_back(best);
    }
    sub.u.assign(static_cast<size_t>(n), kNegInf);
    for (int c : critical) {
      sub.u[static_cast<size_t>(c)] = std::max(sub.u[static_cast<size_t>(c)], 0.0);
      for (int y = 0; y < n; ++y) {
        sub.u[static_cast<size_t>(y)] = std::max(sub.u[static_cast<size_t>(y)], b.at(c, y));
      }
    }
    max_normalize(sub.u);
    sub.residual = subaction_defect(a_table, sub.m_value, sub.u);
    return sub;
  }

  // Discounted route.
  sub.method = "discounted";
  std::vector<double> lambdas = {0.9, 0.99, 0.999};
  const std::vector<double> extensions = {0.9999, 0.99999};
  size_t used_ext = 0;
  while (true) {
    std::vector<double> xs;                 // 1 - lambda
    std::vector<std::vector<double>> us;    // max-normalized discounted fixed points
    std::vector<double> ms;                 // (1 - lambda) * mean(u_lambda)
    for (double lambda : lambdas) {
      std::vector<double> u = discounted_subaction(a_table, lambda);
      double mean = 0.0;
      for (double v : u) mean += v;
      mean /= n;
      ms.push_back((1.0 - lambda) * mean);
      max_normalize(u);
      us.push_back(std::move(u));
      xs.push_back(1.0 - lambda);
    }
    sub.m_value = extrapolate_to_zero(xs, ms);
    sub.u.assign(static_cast<size_t>(n), 0.0);
    std::vector<double> fs(xs.size());
    for (int y = 0; y < n; ++y) {
      for (size_t i = 0; i < xs.size(); ++i) fs[i] = us[i][static_cast<size_t>(y)];
      sub.u[static_cast<size_t>(y)] = extrapolate_to_zero(xs, fs);
    }
    max_normalize(sub.u);
    sub.residual = subaction_defect(a_table, sub.m_value, sub.u);
    if (sub.residual <= tol) return sub;
    if (used_ext < extensions.size()) {
      lambdas.push_back(extensions[used_ext++]);
      continue;
    }
    break;
  }

  // Shifted Lax–Oleinik polish: v <- T(v) - max T(v), folding the drift of
  // the normalizing constant back into the m estimate.  Nonexpansive, so we
  // track the best defect seen and return that iterate.
  std::vector<double> v = sub.u, w(static_cast<size_t>(n));
  double m_hat = sub.m_value;
  std::vector<double> best_v = v;
  double best_m = m_hat, best_defect = sub.residual;
  const int max_polish = 5000;
  for (int sweep = 0; sweep < max_polish; ++sweep) {
    for (int y = 0; y < n; ++y) {
      double best = kNegInf;
      for (int x = 0; x < n; ++x) {
        best = std::max(best, a_table.at(x, y) - m_hat + v[static_cast<size_t>(x)]);
      }
      w[static_cast<size_t>(y)] = best;
    }
    double drift = kNegInf;
    for (double val : w) drift = std::max(drift, val);
    m_hat += drift;
    for (int y = 0; y < n; ++y) v[static_cast<size_t>(y)] = w[static_cast<size_t>(y)] - drift;
    const double defect = subaction_defect(a_table, m_hat, v);
    if (defect < best_defect) {
      best_defect = defect;
      best_v = v;
      best_m = m_hat;
      if (defect <= tol) break;
    }
  }
  sub.u = best_v;
  max_normalize(sub.u);
  sub.m_value = best_m;
  sub.residual = best_defect;
  return sub;
}

EigenLimitResult eigen_limit_V(const TwoSitePotential& potential, const CircleGrid& grid,
                               std::vector<double> betas) {
  if (betas.empty()) throw std::invalid_argument("eigen_limit_V: empty beta sweep");
  std::sort(betas.begin(), betas.end());
  const int n = grid.size();
  EigenLimitResult result;
  std::vector<double> prev;
  for (double beta : betas) {
    if (!(beta > 0.0)) throw std::invalid_argument("eigen_limit_V: betas must be positive");
    const OperatorMatrix op = build_operator(potential, grid, beta, Direction::Forward);
    const PowerIterationResult pr = power_iteration(op);
    std::vector<double> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = std::log(pr.eigenfun[static_cast<size_t>(i)]);
    max_normalize(v);
    for (double& val : v) val /= beta;
    EigenLimitRow row;
    row.beta = beta;
    if (!prev.empty()) {
      for (int i = 0; i < n; ++i) {
        row.sup_change = std::max(row.sup_change,
                                  std::fabs(v[static_cast<size_t>(i)] - prev[static_cast<size_t>(i)]));
      }
    }
    result.rows.push_back(row);
    prev = std::move(v);
  }
  result.V = std::move(prev);

  const DenseMatrix a = potential.tabulate(grid);
  result.m_reference = max_ergodic_average(a).m;
  double viol = kNegInf;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      viol = std::max(viol, a.at(x, y) + result.V[static_cast<size_t>(x)] -
                                result.V[static_cast<size_t>(y)] - result.m_reference);
    }
  }
  result.one_sided_violation = viol;
  return result;
}

EigenvalueLimitResult eigenvalue_limit(const TwoSitePotential& potential,
                                       const CircleGrid& grid, std::vector<double> betas) {
  if (betas.size() < 3) {
    throw std::invalid_argument("eigenvalue_limit: need at least 3 betas to extrapolate");
  }
  std::sort(betas.begin(), betas.end());
  EigenvalueLimitResult result;
  result.m_reference = max_ergodic_average(potential, grid).m;
  for (double beta : betas) {
    if (!(beta > 0.0)) throw std::invalid_argument("eigenvalue_limit: betas must be positive");
    const OperatorMatrix op = build_operator(potential, grid, beta, Direction::Forward);
    const PowerIterationResult pr = power_iteration(op);
    EigenvalueLimitRow row;
    row.beta = beta;
    row.log_lambda_over_beta = std::log(pr.lambda) / beta;
    row.gap_to_m = result.m_reference - row.log_lambda_over_beta;
    result.rows.push_back(row);
  }
  // Least squares for (1/beta) log lambda = m - a log(beta)/beta - b/beta.
  double g[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  double rhs[3] = {0, 0, 0};
  for (const auto& row : result.rows) {
    const double basis[3] = {1.0, -std::log(row.beta) / row.beta, -1.0 / row.beta};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) g[i][j] += basis[i] * basis[j];
      rhs[i] += basis[i] * row.log_lambda_over_beta;
    }
  }
  // Gaussian elimination with partial pivoting on the 3x3 system.
  int perm[3] = {0, 1, 2};
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r2 = col + 1; r2 < 3; ++r2) {
      if (std::fabs(g[perm[r2]][col]) > std::fabs(g[perm[piv]][col])) piv = r2;
    }
    std::swap(perm[col], perm[piv]);
    for (int r2 = col + 1; r2 < 3; ++r2) {
      const double f = g[perm[r2]][col] / g[perm[col]][col];
      for (int c2 = col; c2 < 3; ++c2) g[perm[r2]][c2] -= f * g[perm[col]][c2];
      rhs[perm[r2]] -= f * rhs[perm[col]];
    }
  }
  double sol[3];
  for (int row = 2; row >= 0; --row) {
    double acc = rhs[perm[row]];
    for (int c2 = row + 1; c2 < 3; ++c2) acc -= g[perm[row]][c2] * sol[c2];
    sol[row] = acc / g[perm[row]][row];
  }
  result.m_extrapolated = sol[0];
  return result;
}

double rate_function(const Subaction& subaction, const TwoSitePotential& potential,
                     const CircleGrid& grid, const std::vector<double>& prefix) {
  if (prefix.size() < 2) {
    throw std::invalid_argument("rate_function: prefix needs at least two states");
  }
  double total = 0.0;
  for (size_t i = 0; i + 1 < prefix.size(); ++i) {
    const int a = grid.nearest_node(prefix[i]);
    const int b = grid.nearest_node(prefix[i + 1]);
    const double step = subaction.u[static_cast<size_t>(b)] - subaction.u[static_cast<size_t>(a)] -
                        (potential.evaluate(grid.node(a), grid.node(b)) - subaction.m_value);
    total += step;
  }
  return total;
}

TwistReport twist_check(const TwoSitePotential& potential, const CircleGrid& grid) {
  return twist_check(potential, grid, 0, grid.size() - 1, 0, grid.size() - 1);
}

TwistReport twist_check(const TwoSitePotential& potential, const CircleGrid& grid,
                        int i_lo, int i_hi, int j_lo, int j_hi) {
  if (!potential.is_continuous()) {
    throw std::invalid_argument("twist_check: step potential has no mixed partial");
  }
  const int n = grid.size();
  if (i_lo < 0 || j_lo < 0 || i_hi >= n || j_hi >= n || i_lo > i_hi || j_lo > j_hi) {
    throw std::invalid_argument("twist_check: bad node window");
  }
  const DenseMatrix a = potential.tabulate(grid);
  const double h = grid.spacing();
  const double denom = 4.0 * h * h;
  TwistReport report;
  report.min_value = std::numeric_limits<double>::infinity();
  report.max_value = -std::numeric_limits<double>::infinity();
  for (int i = i_lo; i <= i_hi; ++i) {
    const int ip = (i + 1) % n, im = (i - 1 + n) % n;
    for (int j = j_lo; j <= j_hi; ++j) {
      const int jp = (j + 1) % n, jm = (j - 1 + n) % n;
      const double d =
          (a.at(ip, jp) - a.at(ip, jm) - a.at(im, jp) + a.at(im, jm)) / denom;
      report.min_value = std::min(report.min_value, d);
      report.max_value = std::max(report.max_value, d);
    }
  }
  report.sign_change = (report.min_value < 0.0 && report.max_value > 0.0) ||
                       report.min_value == 0.0 || report.max_value == 0.0;
  report.holds = !report.sign_change;
  return report;
}

namespace {

GraphSupportGridReport graph_support_on_grid(const TwoSitePotential& potential, int n,
                                             double edge_tol) {
  const CircleGrid grid(n);
  const DenseMatrix a = potential.tabulate(grid);
  const Subaction sub = calibrated_subaction(a, SubactionMethod::LpDual);
  // Tight edges of the calibrated inequality.
  std::vector<std::vector<int>> out(static_cast<size_t>(n));
  std::vector<int> in_deg(static_cast<size_t>(n), 0), out_deg(static_cast<size_t>(n), 0);
  std::vector<bool> alive(static_cast<size_t>(n), true);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      const double defect = a.at(x, y) + sub.u[static_cast<size_t>(x)] -
                            sub.u[static_cast<size_t>(y)] - sub.m_value;
      if (std::fabs(defect) <= edge_tol) {
        out[static_cast<size_t>(x)].push_back(y);
        ++out_deg[static_cast<size_t>(x)];
        ++in_deg[static_cast<size_t>(y)];
      }
    }
  }
  // Prune to the recurrent core: repeatedly drop nodes lacking an incoming
  // or outgoing tight edge.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      if (!alive[static_cast<size_t>(v)]) continue;
      if (in_deg[static_cast<size_t>(v)] == 0 || out_deg[static_cast<size_t>(v)] == 0) {
        alive[static_cast<size_t>(v)] = false;
        changed = true;
        for (int y : out[static_cast<size_t>(v)]) {
          if (alive[static_cast<size_t>(y)]) --in_deg[static_cast<size_t>(y)];
        }
        for (int x = 0; x < n; ++x) {
          if (!alive[static_cast<size_t>(x)]) continue;
          for (int y : out[static_cast<size_t>(x)]) {
            if (y == v) --out_deg[static_cast<size_t>(x)];
          }
        }
      }
    }
  }
  GraphSupportGridReport rep;
  rep.grid_n = n;
  for (int v = 0; v < n; ++v) {
    if (!alive[static_cast<size_t>(v)]) continue;
    ++rep.support_nodes;
    int live_out = 0;
    for (int y : out[static_cast<size_t>(v)]) {
      if (alive[static_cast<size_t>(y)]) ++live_out;
    }
    rep.max_out_degree = std::max(rep.max_out_degree, live_out);
  }
  rep.single_valued = rep.support_nodes > 0 && rep.max_out_degree <= 1;
  return rep;
}

}  // namespace

GraphSupportReport graph_support_check(const TwoSitePotential& potential,
                                       const CircleGrid& grid, double edge_tol) {
  GraphSupportReport report;
  report.coarse = graph_support_on_grid(potential, grid.size(), edge_tol);
  report.fine = graph_support_on_grid(potential, 2 * grid.size(), edge_tol);
  report.holds = report.coarse.single_valued && report.fine.single_valued;
  return report;
}

}  // namespace spinring
