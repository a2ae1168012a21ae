#include "spinring/vanenter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "spinring/grid.hpp"

namespace spinring {

namespace {

constexpr double kLog3OverLog2 = 1.5849625007211561814537389439478;  // log2(3)

// 3^j exactly (j <= 40 fits comfortably in 128 bits), rounded once to double.
double pow3(int j) {
  __int128 p = 1;
  for (int i = 0; i < j; ++i) p *= 3;
  return static_cast<double>(p);
}

double log_sum_exp(const std::vector<double>& v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double acc = 0.0;
  for (double x : v) acc += std::exp(x - m);
  return m + std::log(acc);
}

// log(1 - eps^{8 * 3^j}) evaluated as log1p(-exp(8 * 3^j * log eps)).
double kappa_term(double log_eps, int j) {
  const double e = 8.0 * pow3(j) * log_eps;
  return std::log1p(-std::exp(e));
}

// theta(eps, j) = (1 - 9 x) / (1 - x) with x = eps^{8 * 3^j} = 1 - 8x/(1-x).
double theta_factor(double log_eps, int j) {
  const double x = std::exp(8.0 * pow3(j) * log_eps);
  return 1.0 - 8.0 * x / (1.0 - x);
}

}  // namespace

RingTable build_rings(double epsilon, int max_ring) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("build_rings: epsilon must lie in (0, 1)");
  }
  if (max_ring < 0 || max_ring > 40) {
    throw std::invalid_argument("build_rings: max_ring must lie in [0, 40]");
  }
  RingTable table;
  table.epsilon = epsilon;
  table.log_eps = std::log(epsilon);
  table.max_ring = max_ring;
  table.rings.resize(static_cast<size_t>(max_ring) + 1);

  // Background: whatever the carved interiors I_1 (width eps^3, around pi)
  // and I_2 (width eps^9, around 0) leave of the circle.  With max_ring < 2
  // the corresponding parity is absent and nothing is carved on that side.
  double carved = 0.0;
  if (max_ring >= 1) carved += std::exp(3.0 * table.log_eps);
  if (max_ring >= 2) carved += std::exp(9.0 * table.log_eps);
  table.rings[0].j = 0;
  table.rings[0].level = 0.0;
  table.rings[0].log_width = std::log1p(-carved / kTwoPi);

  for (int j = 1; j <= max_ring; ++j) {
    Ring& r = table.rings[static_cast<size_t>(j)];
    r.j = j;
    r.level = 0.5 - std::exp2(-(j + 1));
    r.log_width = pow3(j) * table.log_eps + kappa_term(table.log_eps, j) -
                  std::log(kTwoPi);
  }
  return table;
}

double log_partition(const RingTable& rings, double beta) {
  std::vector<double> terms;
  terms.reserve(rings.rings.size());
  for (const Ring& r : rings.rings) {
    terms.push_back(beta * r.level + r.log_width);
  }
  return log_sum_exp(terms);
}

double ring_log_mass(const RingTable& rings, double beta, int j) {
  if (j < 0 || j > rings.max_ring) {
    throw std::invalid_argument("ring_log_mass: ring index out of range");
  }
  const Ring& r = rings.rings[static_cast<size_t>(j)];
  return beta * r.level + r.log_width - log_partition(rings, beta);
}

double beta_schedule(const RingTable& rings, int j) {
  if (j < 1 || j > rings.max_ring) {
    throw std::invalid_argument("beta_schedule: need 1 <= j <= max_ring");
  }
  const double c_eps = -rings.log_eps;
  return std::pow(6.0, j) * 2.0 * c_eps * kLog3OverLog2 *
         theta_factor(rings.log_eps, j);
}

double truncation_tail_bound(const RingTable& rings, double beta) {
  const double log_tail = pow3(rings.max_ring + 1) * rings.log_eps + 0.5 * beta -
                          log_partition(rings, beta);
  return std::exp(log_tail);
}

FBetaProfile f_beta_profile(const RingTable& rings, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("f_beta_profile: beta must be positive");
  if (rings.max_ring < 1) {
    throw std::invalid_argument("f_beta_profile: table has no rings beyond background");
  }
  FBetaProfile profile;
  profile.values.reserve(static_cast<size_t>(rings.max_ring));
  const double c_eps = -rings.log_eps;
  for (int j = 1; j <= rings.max_ring; ++j) {
    const double f = -beta * std::exp2(-(j + 1)) - c_eps * pow3(j) +
                     kappa_term(rings.log_eps, j);
    profile.values.push_back(f);
  }
  profile.argmax = 1 + static_cast<int>(std::max_element(profile.values.begin(),
                                                         profile.values.end()) -
                                        profile.values.begin());
  return profile;
}

ConcentrationReport concentration_check(const RingTable& rings, int j, double delta) {
  if (j < 1 || j > rings.max_ring) {
    throw std::invalid_argument("concentration_check: need 1 <= j <= max_ring");
  }
  if (!(delta > 0.0)) {
    throw std::invalid_argument("concentration_check: delta must be positive");
  }
  ConcentrationReport report;
  report.j = j;
  report.delta = delta;
  report.beta_j = beta_schedule(rings, j);
  // Off-ring mass 1 - mass_j, summed in the log domain over k != j.
  std::vector<double> off;
  for (int k = 0; k <= rings.max_ring; ++k) {
    if (k == j) continue;
    off.push_back(beta_schedule(rings, j) * rings.rings[static_cast<size_t>(k)].level +
                  rings.rings[static_cast<size_t>(k)].log_width);
  }
  report.off_mass = std::exp(log_sum_exp(off) - log_partition(rings, report.beta_j));
  report.pass = report.off_mass < delta;
  report.empirical_epsilon_delta = empirical_epsilon_delta(delta, rings.max_ring);
  return report;
}

double empirical_epsilon_delta(double delta, int max_ring) {
  if (!(delta > 0.0)) {
    throw std::invalid_argument("empirical_epsilon_delta: delta must be positive");
  }
  if (max_ring < 1) {
    throw std::invalid_argument("empirical_epsilon_delta: need at least one ring");
  }
  auto passes_all = [&](double eps) {
    const RingTable t = build_rings(eps, max_ring);
    for (int j = 1; j <= max_ring; ++j) {
      const double beta = beta_schedule(t, j);
      std::vector<double> off;
      for (int k = 0; k <= max_ring; ++k) {
        if (k == j) continue;
        off.push_back(beta * t.rings[static_cast<size_t>(k)].level +
                      t.rings[static_cast<size_t>(k)].log_width);
      }
      if (std::exp(log_sum_exp(off) - log_partition(t, beta)) >= delta) return false;
    }
    return true;
  };
  double lo = 1e-6, hi = 0.5 - 1e-9;
  if (!passes_all(lo)) return 0.0;   // delta out of reach even at tiny eps
  if (passes_all(hi)) return hi;     // passes across the whole step domain
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (passes_all(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

double analytic_epsilon_delta(double delta) {
  if (!(delta > 0.0)) {
    throw std::invalid_argument("analytic_epsilon_delta: delta must be positive");
  }
  const double r = kLog3OverLog2;
  const double a_const = 0.5 * (r - 1.0);
  auto satisfied = [&](double eps) {
    const double c = -std::log(eps);
    // Deep-ring tail (k > 0): e^{1 - 3C(2-r)} + e^{1-6C} / (1 - e^{-3C}) < delta/2.
    const double tail = std::exp(1.0 - 3.0 * c * (2.0 - r)) +
                        std::exp(1.0 - 6.0 * c) / (-std::expm1(-3.0 * c));
    if (!(tail < 0.5 * delta)) return false;
    // theta condition at its weakest index j = 1:
    // theta(eps,1) * r - 1 > (r - 1) / 2.
    const double x = std::pow(eps, 24.0);
    const double theta1 = (1.0 - 9.0 * x) / (1.0 - x);
    if (!(theta1 * r - 1.0 > a_const)) return false;
    // Shallow-ring sum (k < 0): e^{-3AC} + e^{-6C} / (1 - e^{-3C}) < delta/2.
    const double shallow = std::exp(-3.0 * a_const * c) +
                           std::exp(-6.0 * c) / (-std::expm1(-3.0 * c));
    return shallow < 0.5 * delta;
  };
  double lo = 1e-12, hi = 0.9;
  if (!satisfied(lo)) return 0.0;
  if (satisfied(hi)) return hi;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (satisfied(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

Certificate nonselection_demo(const RingTable& rings, int j_max, double kappa,
                              double delta) {
  if (!(kappa > 0.0 && kappa < 0.5 * kPi)) {
    throw std::invalid_argument("nonselection_demo: kappa must lie in (0, pi/2)");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("nonselection_demo: delta must lie in (0, 1)");
  }
  if (j_max < 1 || j_max > rings.max_ring) {
    throw std::invalid_argument("nonselection_demo: need 1 <= j_max <= max_ring");
  }
  Certificate cert;
  cert.epsilon = rings.epsilon;
  cert.delta = delta;
  cert.j_max = j_max;
  cert.kappa = kappa;

  // Ring j lies inside its band iff its outer half-width eps^{3^j}/2 fits
  // under kappa; for kappa >= eps^3/2 every ring does and the parity sums
  // are exactly the band masses carried by the rings.
  auto ring_in_band = [&](int j) {
    return pow3(j) * rings.log_eps - std::log(2.0) <= std::log(kappa);
  };

  bool legs_pass = true;
  for (int j = 1; j <= j_max; ++j) {
    const double beta = beta_schedule(rings, j);
    const double log_z = log_partition(rings, beta);
    std::vector<double> even, odd;
    for (int k = 1; k <= rings.max_ring; ++k) {
      if (!ring_in_band(k)) continue;
      const double v = beta * rings.rings[static_cast<size_t>(k)].level +
                       rings.rings[static_cast<size_t>(k)].log_width - log_z;
      ((k % 2 == 0) ? even : odd).push_back(v);
    }
    const double f = even.empty() ? 0.0 : std::exp(log_sum_exp(even));
    const double af = odd.empty() ? 0.0 : std::exp(log_sum_exp(odd));
    cert.ferro_masses.push_back(f);
    cert.antiferro_masses.push_back(af);
    cert.max_tail_bound = std::max(cert.max_tail_bound, truncation_tail_bound(rings, beta));
    const double leg = (j % 2 == 0) ? f : af;
    if (!(leg > 1.0 - delta)) legs_pass = false;
  }

  const bool oscillation_positive = delta < 0.5;
  const bool tail_ok = cert.max_tail_bound < 1e-15;
  cert.verdict = (j_max >= 3 && legs_pass && oscillation_positive && tail_ok)
                     ? "no-selection-demonstrated"
                     : "inconclusive";
  return cert;
}

}  // namespace spinring
