#include "spinring/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace spinring {

double wrap_angle(double x) {
  double y = std::fmod(x, kTwoPi);
  if (y < 0.0) y += kTwoPi;
  // fmod can return exactly kTwoPi after the correction when x is a tiny
  // negative number; fold that case back onto zero.
  if (y >= kTwoPi) y = 0.0;
  return y;
}

double circle_distance(double x, double y) {
  double d = std::fabs(wrap_angle(x) - wrap_angle(y));
  return std::min(d, kTwoPi - d);
}

CircleGrid::CircleGrid(int n_points) : n_(n_points) {
  if (n_points < 2) throw std::invalid_argument("CircleGrid: need at least 2 nodes");
}

std::vector<double> CircleGrid::nodes() const {
  std::vector<double> xs(static_cast<size_t>(n_));
  for (int k = 0; k < n_; ++k) xs[static_cast<size_t>(k)] = node(k);
  return xs;
}

int CircleGrid::nearest_node(double x) const {
  double t = wrap_angle(x) / spacing();
  int k = static_cast<int>(std::lround(t));
  return k % n_;
}

double grid_integral(const std::vector<double>& f) {
  double acc = 0.0;
  for (double v : f) acc += v;
  return acc / static_cast<double>(f.size());
}

}  // namespace spinring
