#pragma once

#include <complex>
#include <vector>

namespace hsim::meyer {

inline constexpr double pi = 3.14159265358979323846;
// Support edge and flat-region edge of the window.
inline constexpr double support_edge = 4.0 * pi / 3.0;
inline constexpr double flat_edge = 2.0 * pi / 3.0;

double nu(double x);

// Fourier transform of the Meyer scaling function.
double eval_phi_hat(double xi);

// sin(xi/2)/(xi/2) with value 1 at the origin.
double sinc_half(double xi);

// ((1 - e^{-i xi}) / (i xi))^delta * phi_hat(xi), principal branch.
std::complex<double> eval_frac_scaling_hat(double delta, double xi);

// Two-scale filter taps h_n = (sqrt2/pi) int_0^{2pi/3} phi_hat(2 xi) cos(n xi) dxi
// for n = -half_width..half_width (symmetric, sums to sqrt2).
std::vector<double> lowpass_taps(int half_width);

}  // namespace hsim::meyer
