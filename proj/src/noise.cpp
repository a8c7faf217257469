#include "hsim/noise.hpp"

#include <cmath>

#include "hsim/errors.hpp"
#include "hsim/meyer.hpp"
#include "hsim/rng.hpp"

namespace hsim::noise {

namespace {

enum : std::uint64_t { stream_top = 1, stream_split = 2, stream_leaf = 3 };

constexpr int filter_half_width = 96;

// sqrt(2^e) without overflowing for large e
double sqrt_pow2(int e) {
    double r = std::ldexp(1.0, e / 2);
    return (e % 2) ? r * std::sqrt(2.0) : r;
}

}  // namespace

keyed_field::keyed_field(std::uint64_t seed, int J) : seed_(seed), J_(J) {
    if (J < 0) throw parameter_error("keyed_field: negative scale");
}

double keyed_field::innovation(std::uint64_t stream, std::int64_t a, std::int64_t b) const {
    std::uint64_t s = (stream << 32) ^ static_cast<std::uint32_t>(J_);
    return rng::normal(rng::key(seed_, s, static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b)));
}

double keyed_field::node(int level, std::int64_t index) const {
    if (level == top_level) return sqrt_pow2(top_level + base_log2) * innovation(stream_top, level, index);
    auto it = memo_.find({level, index});
    if (it != memo_.end()) return it->second;
    // Children of a parent sum S are S/2 +- sqrt(n/2) xi, n the child size.
    std::int64_t parent = index >> 1;
    double s = node(level + 1, parent);
    double left = 0.5 * s + sqrt_pow2(level + base_log2 - 1) * innovation(stream_split, level + 1, parent);
    double right = s - left;
    memo_[{level, parent * 2}] = left;
    memo_[{level, parent * 2 + 1}] = right;
    return (index & 1) ? right : left;
}

void keyed_field::block_sums(int level, std::int64_t lo, std::span<double> out) const {
    if (level < 0 || level > top_level) throw parameter_error("block_sums: level out of range");
    std::lock_guard lock(mu_);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = node(level, lo + static_cast<std::int64_t>(k));
}

void keyed_field::leaves(std::int64_t lo, std::span<double> out) const {
    if (out.empty()) return;
    const std::int64_t hi = lo + static_cast<std::int64_t>(out.size());
    std::int64_t b0 = lo >> base_log2, b1 = (hi - 1) >> base_log2;
    double e[base_block];
    for (std::int64_t b = b0; b <= b1; ++b) {
        double s;
        {
            std::lock_guard lock(mu_);
            s = node(0, b);
        }
        std::int64_t first = b * base_block;
        double mean = 0.0;
        for (int t = 0; t < base_block; ++t) {
            e[t] = innovation(stream_leaf, 0, first + t);
            mean += e[t];
        }
        mean /= base_block;
        double level = s / base_block - mean;
        std::int64_t j0 = std::max(first, lo), j1 = std::min(first + base_block, hi);
        for (std::int64_t j = j0; j < j1; ++j) out[j - lo] = e[j - first] + level;
    }
}

coarsened_field::coarsened_field(std::shared_ptr<const gaussian_field> fine) : fine_(std::move(fine)) {
    if (!fine_) throw parameter_error("coarsened_field: null fine field");
}

const std::vector<double>& coarsened_field::filter() {
    static const std::vector<double> taps = meyer::lowpass_taps(filter_half_width);
    return taps;
}

void coarsened_field::leaves(std::int64_t lo, std::span<double> out) const {
    if (out.empty()) return;
    const auto& h = filter();
    const std::int64_t K = filter_half_width;
    const std::int64_t n = static_cast<std::int64_t>(out.size());
    const std::int64_t flo = 2 * lo - K;
    std::vector<double> g(static_cast<std::size_t>(2 * (n - 1) + 2 * K + 1));
    fine_->leaves(flo, g);
    for (std::int64_t k = 0; k < n; ++k) {
        const double* src = g.data() + 2 * k;  // g[2k + t + K] = g_fine(2(lo+k) + t)
        double acc = 0.0;
        for (std::int64_t t = 0; t <= 2 * K; ++t) acc += h[t] * src[t];
        out[k] = acc;
    }
}

void coarsened_field::block_sums(int level, std::int64_t lo, std::span<double> out) const {
    fine_->block_sums(level + 1, lo, out);
    const double r = 1.0 / std::sqrt(2.0);
    for (double& v : out) v *= r;
}

void zero_field::leaves(std::int64_t, std::span<double> out) const {
    for (double& v : out) v = 0.0;
}

void zero_field::block_sums(int, std::int64_t, std::span<double> out) const {
    for (double& v : out) v = 0.0;
}

std::shared_ptr<const gaussian_field> make_field(std::uint64_t seed, int J, int J_fine) {
    if (J_fine < J) throw parameter_error("make_field: finest scale below target scale");
    if (J_fine - J > 16) throw parameter_error("make_field: at most 16 coupled scales");
    std::shared_ptr<const gaussian_field> f = std::make_shared<keyed_field>(seed, J_fine);
    for (int s = J_fine; s > J; --s) f = std::make_shared<coarsened_field>(f);
    return f;
}

}  // namespace hsim::noise
