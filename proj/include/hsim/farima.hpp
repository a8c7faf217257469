#pragma once

#include <cstdint>
#include <vector>

#include "hsim/noise.hpp"

namespace hsim {

struct frac_weights {
    double delta = 0.0;
    std::vector<double> values;  // gamma_0 .. gamma_P
    std::int64_t truncation() const { return static_cast<std::int64_t>(values.size()) - 1; }
};

// gamma_p = delta Gamma(p+delta) / (Gamma(p+1) Gamma(delta+1)) by recursion.
frac_weights gamma_weights(double delta, std::int64_t P);

// Partial sum sum_{p<x} gamma_p = Gamma(x+delta)/(Gamma(x) Gamma(1+delta)),
// extended to real x >= 1.
double gamma_partial_sum(double delta, double x);

enum class convolution_method { fft, direct };

struct farima_options {
    std::int64_t truncation = 0;   // near-field length P; 0 selects max(2^J, 1e4)
    double tail_tolerance = 1e-4;  // remote-past cutoff; 0 keeps the bare truncated sum
    double tail_distance = 0.0;    // explicit remote-past cutoff distance (overrides the tolerance)
    convolution_method method = convolution_method::fft;
};

std::int64_t default_truncation(int J);

struct farima_sequence {
    int J = 0;
    double delta = 0.0;
    std::uint64_t noise_seed = 0;
    std::int64_t start_index = 0;
    std::int64_t end_index = -1;
    std::int64_t truncation = 0;
    std::int64_t burn_in = 0;
    double tail_tolerance = 0.0;
    std::vector<double> values;
};

// Z_l = sum_{p>=0} gamma_p g_{l-p} for l in [start, end]: the first P+1 terms
// exactly, the remote past through block sums of the noise pyramid.
// Values depend only on (field, delta, options, l).
farima_sequence generate_farima(const noise::gaussian_field& field, double delta, std::int64_t start,
                                std::int64_t end, const farima_options& opts = {}, int J = 0);

farima_sequence generate_farima(int J, double delta, std::int64_t start, std::int64_t end, std::uint64_t seed,
                                const farima_options& opts = {});

// E[Z^{(delta1)}_k Z^{(delta2)}_{k+lag}] from the spectral integral.
double farima_covariance(double delta1, double delta2, std::int64_t lag);

}  // namespace hsim
