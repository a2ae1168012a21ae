#ifndef SPINRING_THERMO_HPP
#define SPINRING_THERMO_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "spinring/transfer.hpp"

namespace spinring {

// Measure of the cylinder event {x_t in box_t, t = 0..k} under the
// stationary pair chain (x_0 ~ theta, transitions by the kernel K).
//
// Boxes are half-open arcs [a, b) with 0 <= a < b <= 2pi, at least one grid
// spacing wide.  Quadrature: for analytic potentials the per-step arc
// integrals use the trigonometric interpolant of the integrand (spectrally
// accurate); for step and tabulated potentials, which are not smooth, node
// values are weighted by the exact overlap of each node's cell
// [x_j - h/2, x_j + h/2) with the arc.
double cylinder_measure(const SpectralSolution& solution,
                        const std::vector<std::pair<double, double>>& boxes);

// Measure of {x_0 - x_1 in S} where S is a union of arcs in the difference
// coordinate, each given as (lo, hi) with lo < hi <= lo + 2pi (interpreted
// mod 2pi, so arcs may straddle pi).  Node values of theta(x) K(x, y) are
// paired with exact cell overlaps in y.
double difference_band_mass(const SpectralSolution& solution,
                            const std::vector<std::pair<double, double>>& arcs);

struct ChainSample {
  std::vector<double> states;  // angles; states.size() == n_steps + 1
  uint64_t seed = 0;
};

// Draw x_0 from theta and n_steps transitions from the kernel rows by
// inverse-CDF sampling on the grid (SplitMix64 stream; fully determined by
// the seed).
ChainSample sample_chain(const SpectralSolution& solution, int n_steps, uint64_t seed);

// Pair entropy S[theta K] = -∫∫ theta(x) K(x,y) log K(x,y) dnu(x) dnu(y),
// the entropy of the stationary pair measure relative to product Lebesgue
// in the second coordinate.
double penalized_entropy(const SpectralSolution& solution);

// Exact-on-the-grid decomposition log lambda = energy + entropy, where
// energy = ∫ beta A dnu_beta against the stationary pair measure
// dnu_beta = theta(x) K(x,y) dnu dnu.
struct PressureDecomposition {
  double log_lambda = 0.0;
  double energy = 0.0;
  double entropy = 0.0;
  double residual = 0.0;  // |log_lambda - energy - entropy|
};

PressureDecomposition pressure(const SpectralSolution& solution);

// Nonnegative entropy functional built from the calibrated potential:
// h = -∫∫ min(0, Abar(x,y)) theta(x) K(x,y) dnu dnu, which bounds the
// pressure: log lambda <= h + ∫ beta A dnu_beta.
double entropy_h(const SpectralSolution& solution, const NormalizedPotential& normalized);

struct EntropyRateRow {
  double beta = 0.0;
  double h = 0.0;
  double h_over_beta = 0.0;
};

// h and h/beta along a beta sweep.  Rejects discontinuous (step) potentials:
// their large-beta regime belongs to the log-domain ring analysis.
std::vector<EntropyRateRow> entropy_rate_check(const TwoSitePotential& potential,
                                               const CircleGrid& grid,
                                               const std::vector<double>& betas);

}  // namespace spinring

#endif  // SPINRING_THERMO_HPP
