#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace hsim {

// A partition of {0..d-1} into pairs and singletons.
struct partition {
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> singletons;
};

// All partitions of {0..d-1} with exactly m pairs (memoized, deterministic order).
const std::vector<partition>& partitions(int d, int m);
// d! / (m! 2^m (d-2m)!)
std::uint64_t partition_count(int d, int m);

// E[Z^{(delta_a)}_k Z^{(delta_b)}_{k+lag}] for coordinates a, b and |lag| <= max_lag.
class covariance_table {
public:
    covariance_table(std::vector<double> deltas, int max_lag);
    // Explicit values: entries[(a*d + b)*(2*max_lag+1) + lag + max_lag].
    covariance_table(std::vector<double> deltas, int max_lag, std::vector<double> entries);

    int order() const { return static_cast<int>(deltas_.size()); }
    int max_lag() const { return max_lag_; }
    double operator()(int a, int b, std::int64_t lag) const;

private:
    std::vector<double> deltas_;
    int max_lag_;
    std::vector<double> v_;
};

// Wick product of jointly Gaussian Z_0..Z_{d-1} sitting at indices k:
// sum_m (-1)^m sum_{partitions with m pairs} prod E[Z_a Z_b] prod Z_singletons.
double sigma_general(std::span<const double> z, std::span<const std::int64_t> k, const covariance_table& cov);

inline double sigma_d2(double z1, double z2, double c12) { return z1 * z2 - c12; }

inline double sigma_d3(double z1, double z2, double z3, double c12, double c13, double c23) {
    return z1 * z2 * z3 - c12 * z3 - c13 * z2 - c23 * z1;
}

}  // namespace hsim
