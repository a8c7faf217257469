#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hsim/chaos.hpp"
#include "hsim/farima.hpp"
#include "hsim/hurst.hpp"
#include "hsim/noise.hpp"
#include "hsim/quadrature.hpp"

namespace hsim {

enum class process_kind { fbm, rosenblatt, hermite3, genhermite3 };

const char* to_string(process_kind k);
process_kind parse_process_kind(std::string_view s);
int process_order(process_kind k);

struct simulation_config {
    process_kind kind = process_kind::fbm;
    hurst_vector h = hurst_vector::equal(1, 0.7);
    int J = 20;
    double a = 0.75;
    double epsilon = 1e-4;
    double T = 1.0;
    std::uint64_t seed = 0;
    bool normalized = false;
    std::int64_t truncation = 0;  // 0: max(2^J, 1e4)
    double tail_tolerance = 1e-4;
    convolution_method convolution = convolution_method::fft;
    quadrature_meta quad;

    // Throws on invalid settings; returns non-fatal warnings.
    std::vector<std::string> validate() const;
    // Stable text form of everything except the seed.
    std::string canonical() const;
    std::string hash() const;
};

// Config with equal exponents for the order implied by the kind
// (genhermite3 gets equal exponents too; set h explicitly otherwise).
simulation_config make_config(process_kind kind, double H);

struct index_range {
    std::int64_t m0 = 0;
    std::int64_t mmax = -1;
    std::int64_t size() const { return mmax - m0 + 1; }
};

index_range index_bounds(int J, double a, double T);
std::int64_t diagonal_width(int J, double epsilon);

struct sample_path {
    std::vector<double> times;   // 0 followed by the knots m 2^-J + 2^-aJ
    std::vector<double> values;  // 0 followed by s_{m,J}
    std::int64_t m0 = 0;
    std::int64_t mmax = -1;
    int J = 0;
    std::string interpolation = "linear";
    std::string config_hash;
    std::uint64_t seed = 0;
    double last_time() const { return times.back(); }
};

// Unit-variance constant C of the equal-exponent process, with the power d on beta.
double normalization_constant(const hurst_vector& h);
// Multiplier from the 1/prod Gamma(h-1/2) kernel convention to unit variance.
double normalization_factor(const hurst_vector& h);

// Holds the deterministic inputs (tables, covariances) for one config so that
// many paths can be drawn cheaply. Immutable after construction.
class simulator {
public:
    explicit simulator(simulation_config cfg, const table_cache* cache = nullptr);

    const simulation_config& config() const { return cfg_; }
    index_range bounds() const { return range_; }
    std::int64_t width() const { return width_; }
    const std::vector<std::string>& table_keys() const { return table_keys_; }
    const std::vector<std::string>& warnings() const { return warnings_; }
    const std::optional<integral_table>& table() const { return table_; }

    // result[0] = s_{m0}, result[i] = s_{m0+i} - s_{m0+i-1}
    std::vector<double> increments(const noise::gaussian_field& field) const;
    std::vector<double> increments(std::uint64_t seed) const;
    sample_path path(const noise::gaussian_field& field, std::uint64_t seed_label) const;
    sample_path path(std::uint64_t seed) const;

private:
    simulation_config cfg_;
    index_range range_;
    std::int64_t width_ = 1;
    double scale_ = 1.0;
    std::vector<double> deltas_;
    std::optional<integral_table> table_;
    std::optional<covariance_table> cov_;
    std::vector<std::string> table_keys_;
    std::vector<std::string> warnings_;
};

std::vector<double> simulate_increments(const simulation_config& cfg);
sample_path build_path(const simulation_config& cfg);

// Piecewise-linear evaluation; sorted queries use one forward sweep.
std::vector<double> evaluate_path(const sample_path& path, std::span<const double> times);
double evaluate_path_at(const sample_path& path, double t);

}  // namespace hsim
