#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "hsim/simulator.hpp"

namespace hsim {

struct ensemble_summary {
    std::size_t paths = 0;
    std::vector<double> grid;
    std::vector<double> means;
    std::vector<double> variances;
    std::vector<double> covariance;  // row-major grid x grid, unbiased
    std::vector<double> std_errors;  // standard error of each covariance entry
    bool degenerate = false;         // every variance is zero

    double cov(std::size_t i, std::size_t j) const { return covariance[i * grid.size() + j]; }
    double se(std::size_t i, std::size_t j) const { return std_errors[i * grid.size() + j]; }
};

ensemble_summary empirical_covariance(std::span<const sample_path> paths, std::span<const double> grid);

// 1/2 (t^2H + s^2H - |t-s|^2H)
double fbm_covariance(double H, double t, double s);

std::vector<int> default_qv_lags();
// Fits E|X(t + q dt) - X(t)|^2 ~ (q dt)^{2H} over the knots; returns H.
double estimate_hurst_qv(const sample_path& path, std::span<const int> lags);
double estimate_hurst_qv(std::span<const double> samples, double dt, std::span<const int> lags);

struct convergence_report {
    std::vector<int> scales;
    std::vector<double> sup_differences;  // ||S_{J_{i+1}} - S_{J_i}|| on the common horizon
    double horizon = 0.0;
    double slope = 0.0;  // fitted exponent after removing J^{d/2}
};

// Paths at every scale share one Brownian input (finest keyed noise, filtered down).
convergence_report convergence_study(const simulation_config& cfg, std::span<const int> scales, std::uint64_t seed,
                                     const table_cache* cache = nullptr);

// Same with caller-supplied noise per scale (e.g. a zero stub).
using field_source = std::function<std::shared_ptr<const noise::gaussian_field>(int J)>;
convergence_report convergence_study(const simulation_config& cfg, std::span<const int> scales,
                                     const field_source& fields, std::uint64_t seed_label,
                                     const table_cache* cache = nullptr);
double convergence_slope(const simulation_config& cfg, std::span<const int> scales, std::uint64_t seed);

}  // namespace hsim
