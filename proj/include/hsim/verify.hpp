#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hsim/simulator.hpp"

namespace hsim {

struct check_result {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

// Deterministic oracle and property checks (no Monte Carlo).
std::vector<check_result> run_properties_suite();

// Ensemble checks for one configuration: covariance (d = 1) or unit variance
// at t = 1 (d >= 2, equal exponents), plus Hurst recovery.
std::vector<check_result> run_moments_suite(const simulation_config& cfg, int paths,
                                            const table_cache* cache = nullptr);

// Coupled-scale decay exponent, one-sided against H - 1/2 - slack.
std::vector<check_result> run_rate_suite(const simulation_config& cfg, const std::vector<int>& scales,
                                         std::uint64_t seed, int seeds, double slack = 0.15,
                                         const table_cache* cache = nullptr);

}  // namespace hsim
