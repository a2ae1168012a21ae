#ifndef SPINRING_FOURIER_HPP
#define SPINRING_FOURIER_HPP

#include <complex>
#include <vector>

namespace spinring {

// Forward discrete Fourier transform with the 1/N normalization:
// c[m] = (1/N) sum_j f[j] exp(-i m x_j),  x_j = 2 pi j / N.
// Radix-2 FFT for power-of-two N, direct O(N^2) evaluation otherwise.
std::vector<std::complex<double>> dft_forward(const std::vector<double>& f);

// Integral against normalized Lebesgue measure over the arc [a, b) of the
// real trigonometric interpolant with coefficients c (as from dft_forward,
// Nyquist mode taken as a pure cosine).  Exact for trigonometric polynomials
// of degree < N/2 sampled on the grid; spectrally accurate for analytic
// integrands, which is what lets sub-arc masses of smooth kernels meet
// tolerances far below the grid spacing.
double trig_box_integral(const std::vector<std::complex<double>>& c, double a, double b);

// Convenience: dft_forward + trig_box_integral.
double box_integral(const std::vector<double>& f, double a, double b);

}  // namespace spinring

#endif  // SPINRING_FOURIER_HPP
