#include "spinring/fourier.hpp"

#include <cmath>
#include <stdexcept>

#include "spinring/grid.hpp"

namespace spinring {

namespace {

bool is_power_of_two(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 Cooley–Tukey, decimation in time, in place.
void fft_in_place(std::vector<std::complex<double>>& a) {
  const size_t n = a.size();
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = -kTwoPi / static_cast<double>(len);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

}  // namespace

std::vector<std::complex<double>> dft_forward(const std::vector<double>& f) {
  const size_t n = f.size();
  if (n == 0) throw std::invalid_argument("dft_forward: empty input");
  std::vector<std::complex<double>> c(n);
  if (is_power_of_two(n)) {
    for (size_t j = 0; j < n; ++j) c[j] = f[j];
    fft_in_place(c);
  } else {
    for (size_t m = 0; m < n; ++m) {
      std::complex<double> acc(0.0, 0.0);
      for (size_t j = 0; j < n; ++j) {
        const double ang = -kTwoPi * static_cast<double>(m) * static_cast<double>(j) /
                           static_cast<double>(n);
        acc += f[j] * std::complex<double>(std::cos(ang), std::sin(ang));
      }
      c[m] = acc;
    }
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  for (auto& v : c) v *= inv_n;
  return c;
}

double trig_box_integral(const std::vector<std::complex<double>>& c, double a, double b) {
  const int n = static_cast<int>(c.size());
  if (!(b > a)) throw std::invalid_argument("trig_box_integral: need a < b");
  if (!(b - a <= kTwoPi + 1e-12)) {
    throw std::invalid_argument("trig_box_integral: arc longer than the circle");
  }
  // Mean mode integrates to the arc fraction.
  double acc = c[0].real() * (b - a);
  // Signed frequencies mu = 1 .. n/2-1 pair m and n-m: for real samples
  // c[n-m] = conj(c[m]) and the pair contributes
  //   2 Re[ c[m] (exp(i mu b) - exp(i mu a)) / (i mu) ].
  const int pair_max = (n - 1) / 2;
  for (int mu = 1; mu <= pair_max; ++mu) {
    const std::complex<double> eb(std::cos(mu * b), std::sin(mu * b));
    const std::complex<double> ea(std::cos(mu * a), std::sin(mu * a));
    const std::complex<double> term = c[static_cast<size_t>(mu)] * (eb - ea) /
                                      std::complex<double>(0.0, static_cast<double>(mu));
    acc += 2.0 * term.real();
  }
  // Nyquist mode (even n): interpolant term c[n/2] cos(n x / 2).
  if (n % 2 == 0 && n >= 2) {
    const double mu = static_cast<double>(n / 2);
    acc += c[static_cast<size_t>(n / 2)].real() * (std::sin(mu * b) - std::sin(mu * a)) / mu;
  }
  return acc / kTwoPi;
}

double box_integral(const std::vector<double>& f, double a, double b) {
  return trig_box_integral(dft_forward(f), a, b);
}

}  // namespace spinring
