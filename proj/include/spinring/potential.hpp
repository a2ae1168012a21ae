#ifndef SPINRING_POTENTIAL_HPP
#define SPINRING_POTENTIAL_HPP

#include <string>
#include <vector>

#include "spinring/grid.hpp"

#include "json.hpp"

namespace spinring {

// ---------------------------------------------------------------------------
// Step potential U_eps used by the non-selection construction.
//
// Concentric rings around the two centers 0 (even levels) and pi (odd
// levels).  Ring j >= 1 is the set { t : eps^{3^{j+2}}/2 <= d < eps^{3^j}/2 }
// where d is the circular distance to the ring's center (even j -> center 0,
// odd j -> center pi), taken half-open at the outer edge so the rings
// partition the circle.  On ring j the potential takes the value
//   c_j = 1/2 - 1/2^{j+1},
// at the centers themselves U = 1/2 (the limit of c_j), and outside every
// ring U = 0 (the background).
// ---------------------------------------------------------------------------
double step_u_value(double t, double epsilon);

enum class PotentialKind { CosineXY, SymmetricU, Tabulated, StepVanEnter };

// Registered circle function for the symmetric_u kind.  Supported names:
//   "zero"   U(t) = 0
//   "cos"    U(t) = cos t
//   "cos2t"  U(t) = cos 2t
//   "fourier"  U(t) = sum_k cos_coeffs[k] cos((k+1) t) + sin_coeffs[k] sin((k+1) t)
struct CircleFunction {
  std::string name;
  std::vector<double> cos_coeffs;
  std::vector<double> sin_coeffs;
  double operator()(double t) const;
};

// Two-site interaction A(x, y) on the torus [0,2pi)^2.
class TwoSitePotential {
 public:
  // A(x,y) = cos(y - x - alpha) + gamma * cos(2x)
  static TwoSitePotential cosine_xy(double alpha, double gamma);
  // A(x,y) = U(x - y) for a registered circle function U
  static TwoSitePotential symmetric_u(CircleFunction u);
  // A interpolated bilinearly from an n-by-n table of node values,
  // table[i][j] = A(x_i, x_j) (row index = first argument).
  static TwoSitePotential tabulated(DenseMatrix table);
  static TwoSitePotential tabulated_from_csv(const std::string& path);
  // A(x,y) = U_eps(y - x) with the ring-step profile above.
  static TwoSitePotential step_vanenter(double epsilon);

  // Registry: {"kind":"cosine_xy","alpha":..,"gamma":..},
  //           {"kind":"symmetric_u","name":..[,"cos_coeffs":..,"sin_coeffs":..]},
  //           {"kind":"tabulated","path":"pot.csv"},
  //           {"kind":"step_vanenter","epsilon":..}
  static TwoSitePotential from_json(const nlohmann::json& spec);

  double evaluate(double x, double y) const;
  DenseMatrix tabulate(const CircleGrid& grid) const;

  PotentialKind kind() const { return kind_; }
  // True for kinds with a trigonometric-polynomial / analytic profile
  // (cosine_xy, symmetric_u); false for tabulated and step kinds.
  bool is_analytic() const;
  bool is_continuous() const { return kind_ != PotentialKind::StepVanEnter; }
  bool is_translation_invariant() const;
  double epsilon() const { return epsilon_; }
  std::string describe() const;

  double max_abs_on_grid(const CircleGrid& grid) const;

 private:
  TwoSitePotential() = default;

  PotentialKind kind_ = PotentialKind::CosineXY;
  double alpha_ = 0.0;
  double gamma_ = 0.0;
  double epsilon_ = 0.0;
  CircleFunction u_;
  DenseMatrix table_;
};

// Sampled Hölder data: constant = max over distinct grid pairs of
// |A(p) - A(q)| / d(p,q)^alpha with the l^1 product circle metric
// d(p,q) = d_circ(x_p,x_q) + d_circ(y_p,y_q).
struct HolderEstimate {
  double exponent = 1.0;
  double constant = 0.0;
  bool holder = true;
};

HolderEstimate holder_estimate(const TwoSitePotential& potential,
                               const CircleGrid& grid, double alpha);

}  // namespace spinring

#endif  // SPINRING_POTENTIAL_HPP
