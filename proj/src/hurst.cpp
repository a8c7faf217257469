#include "hsim/hurst.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "hsim/errors.hpp"

namespace hsim {

hurst_vector::hurst_vector(std::vector<double> h) : h_(std::move(h)) {
    if (h_.empty()) throw parameter_error("hurst vector: order must be at least 1");
    for (double v : h_)
        if (!std::isfinite(v) || !(v > 0.5 && v < 1.0))
            throw parameter_error("hurst vector: every h must lie in (1/2, 1), got " + std::to_string(v));
    double d = static_cast<double>(h_.size());
    double s = std::accumulate(h_.begin(), h_.end(), 0.0);
    if (!(s > d - 0.5))
        throw parameter_error("hurst vector: sum of h (" + std::to_string(s) + ") must exceed d - 1/2 (" +
                              std::to_string(d - 0.5) + ")");
}

hurst_vector hurst_vector::equal(int d, double H) {
    if (d < 1) throw parameter_error("hurst vector: order must be at least 1");
    if (!std::isfinite(H) || !(H > 0.5 && H < 1.0)) throw parameter_error("hurst vector: H must lie in (1/2, 1)");
    return hurst_vector(std::vector<double>(static_cast<std::size_t>(d), 1.0 + (H - 1.0) / d));
}

double hurst_vector::H() const {
    return std::accumulate(h_.begin(), h_.end(), 0.0) - static_cast<double>(h_.size()) + 1.0;
}

bool hurst_vector::all_equal() const {
    for (double v : h_)
        if (v != h_[0]) return false;
    return true;
}

}  // namespace hsim
