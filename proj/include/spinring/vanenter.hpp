#ifndef SPINRING_VANENTER_HPP
#define SPINRING_VANENTER_HPP

#include <string>
#include <vector>

namespace spinring {

// ---------------------------------------------------------------------------
// Log-domain ring analysis of the step potential U_eps.
//
// The difference coordinate t = theta_0 - theta_1 splits the circle into
// ring j >= 1 (level c_j = 1/2 - 1/2^{j+1}, width eps^{3^j} - eps^{3^{j+2}},
// centered at 0 for even j and at pi for odd j) plus the background (level
// 0).  The pair marginal at inverse temperature beta then weights ring j by
// exp(beta c_j) * width_j / (2 pi Z(beta)), which is evaluated here entirely
// in the log domain: eps^{3^j} lives as 3^j log(eps) with 3^j held exactly
// in a 128-bit integer, and 1 - eps^{8 * 3^j} via log1p.
// ---------------------------------------------------------------------------

struct Ring {
  int j = 0;
  double level = 0.0;      // c_j (0 for the background)
  double log_width = 0.0;  // log of the ring's nu-measure (nu normalized)
};

struct RingTable {
  double epsilon = 0.0;
  double log_eps = 0.0;
  int max_ring = 0;             // J; rings[0] is the background
  std::vector<Ring> rings;      // size J + 1, indexed by j
};

// max_ring in [0, 40]; epsilon in (0, 1).  rings[0] is the background,
// whose width is what the rings leave uncovered: 1 - (eps^3 + eps^9)/2pi
// once both parities are present (J >= 2), so that the table is an exact
// partition of the circle up to the truncated tail below ring J.
RingTable build_rings(double epsilon, int max_ring);

// log Z(beta) = log-sum-exp over rings of (beta c_j + log_width_j).
double log_partition(const RingTable& rings, double beta);

// log mu_beta{ t in ring j } = beta c_j + log_width_j - log Z(beta).
double ring_log_mass(const RingTable& rings, double beta, int j);

// beta_j = 6^j * 2 C_eps * (log3/log2) * theta(eps, j) with C_eps = -log eps
// and theta(eps,j) = (1 - 9 eps^{8 3^j}) / (1 - eps^{8 3^j}).
double beta_schedule(const RingTable& rings, int j);

// Tail mass beyond ring J, bounded by exp(3^{J+1} log eps) e^{beta/2} / Z.
double truncation_tail_bound(const RingTable& rings, double beta);

// f_beta(j) = -beta / 2^{j+1} - C_eps 3^j + log(1 - eps^{8 3^j}) for
// j = 1..J: the log of the unnormalized ring mass up to a j-independent
// shift, so its argmax is the dominant ring.
struct FBetaProfile {
  std::vector<double> values;  // values[k] = f_beta(k+1), k = 0..J-1
  int argmax = 0;              // ring index j in 1..J
};

FBetaProfile f_beta_profile(const RingTable& rings, double beta);

// Off-ring mass sum_{k != j} exp(ring_log_mass(k)) at beta = beta_j; passes
// iff it stays below delta.  Also reports the largest epsilon for which the
// check passes at every j <= J (bisection sweep) and the conservative
// analytic threshold from the sufficient inequalities.
struct ConcentrationReport {
  int j = 0;
  double beta_j = 0.0;
  double off_mass = 0.0;
  double delta = 0.0;
  bool pass = false;
  double empirical_epsilon_delta = 0.0;
};

ConcentrationReport concentration_check(const RingTable& rings, int j, double delta);

// Largest epsilon for which off-ring mass < delta at every j in 1..max_ring
// (bisection over epsilon with freshly built tables).
double empirical_epsilon_delta(double delta, int max_ring);

// Largest epsilon satisfying the analytic sufficient conditions (tail,
// theta, and small-index inequalities) that guarantee off-ring mass < delta
// for every j >= 1 in the idealized partition; conservative compared to the
// empirical sweep.
double analytic_epsilon_delta(double delta);

// Oscillation certificate along the interleaved schedule beta_1 < ... <
// beta_{j_max}: F(beta) sums even-parity rings inside the band |t| <= kappa,
// AF(beta) the odd-parity rings around pi.  Verdict is
// "no-selection-demonstrated" iff every even leg has F > 1 - delta, every
// odd leg has AF > 1 - delta, delta < 1/2, j_max >= 3, and the truncation
// tail stays below 1e-15 at every scheduled beta; otherwise "inconclusive".
struct Certificate {
  double epsilon = 0.0;
  double delta = 0.0;
  int j_max = 0;
  double kappa = 0.0;
  std::vector<double> ferro_masses;      // F(beta_j), j = 1..j_max
  std::vector<double> antiferro_masses;  // AF(beta_j), j = 1..j_max
  double max_tail_bound = 0.0;
  std::string verdict;
};

Certificate nonselection_demo(const RingTable& rings, int j_max, double kappa,
                              double delta);

}  // namespace spinring

#endif  // SPINRING_VANENTER_HPP
