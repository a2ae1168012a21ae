#ifndef SPINRING_GRID_HPP
#define SPINRING_GRID_HPP

#include <vector>

namespace spinring {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// Wrap an angle into the fundamental domain [0, 2*pi).
double wrap_angle(double x);

// Circular distance between two angles: min(|x-y| mod 2pi, 2pi - |x-y| mod 2pi).
double circle_distance(double x, double y);

// Uniform grid x_k = 2*pi*k/n on the circle, carrying the normalized
// Lebesgue measure nu = dx / (2*pi).  Each node has quadrature weight 1/n.
class CircleGrid {
 public:
  explicit CircleGrid(int n_points);

  int size() const { return n_; }
  double node(int k) const { return kTwoPi * static_cast<double>(k) / n_; }
  double spacing() const { return kTwoPi / n_; }
  double weight() const { return 1.0 / n_; }
  std::vector<double> nodes() const;

  // Index of the grid node nearest to the angle x (wrapped to [0, 2pi)).
  int nearest_node(double x) const;

 private:
  int n_;
};

// Quadrature of a grid function against nu: the plain node average.
double grid_integral(const std::vector<double>& f);

// Row-major dense matrix of doubles.
struct DenseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, 0.0) {}

  double& at(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
  double at(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }
  const double* row(int r) const { return data.data() + static_cast<size_t>(r) * cols; }
  double* row(int r) { return data.data() + static_cast<size_t>(r) * cols; }
};

}  // namespace spinring

#endif  // SPINRING_GRID_HPP
