#include <doctest.h>

#include <cmath>
#include <random>

#include "hsim/errors.hpp"
#include "hsim/noise.hpp"
#include "hsim/stats.hpp"

using namespace hsim;

namespace {

// Exact fBm sample on i/n, i = 1..n, by Cholesky of the covariance matrix.
std::vector<double> fbm_cholesky(double H, int n, std::uint64_t seed) {
    std::vector<double> L(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            double s = fbm_covariance(H, (i + 1.0) / n, (j + 1.0) / n);
            for (int k = 0; k < j; ++k) s -= L[i * n + k] * L[j * n + k];
            L[i * n + j] = i == j ? std::sqrt(s) : s / L[j * n + j];
        }
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> N;
    std::vector<double> g(n), x(n + 1, 0.0);
    for (double& v : g) v = N(gen);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int k = 0; k <= i; ++k) s += L[i * n + k] * g[k];
        x[i + 1] = s;
    }
    return x;
}

}  // namespace

TEST_CASE("fbm covariance") {
    CHECK(fbm_covariance(0.7, 1.0, 1.0) == doctest::Approx(1.0));
    CHECK(fbm_covariance(0.5, 0.3, 0.8) == doctest::Approx(0.3));
    CHECK(fbm_covariance(0.8, 0.0, 0.5) == 0.0);
}

TEST_CASE("Hurst estimate of a straight line is one") {
    std::vector<double> x(1024);
    for (int i = 0; i < 1024; ++i) x[i] = i / 1024.0;
    auto lags = default_qv_lags();
    CHECK(estimate_hurst_qv(x, 1.0 / 1024, lags) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Hurst estimate on an exact fBm sample") {
    auto lags = default_qv_lags();
    double mean = 0.0;
    const int reps = 4;
    for (int r = 0; r < reps; ++r) mean += estimate_hurst_qv(fbm_cholesky(0.7, 1024, r), 1.0 / 1024, lags) / reps;
    CHECK(mean == doctest::Approx(0.7).epsilon(0.05 / 0.7));
    // exact samples carry no short-lag bias, so the finest lags can be used
    std::vector<int> fine{1, 2, 4, 8};
    for (std::uint64_t seed : {9, 10, 11}) CHECK(std::abs(estimate_hurst_qv(fbm_cholesky(0.7, 1024, seed), 1.0 / 1024, fine) - 0.7) < 0.05);
}

TEST_CASE("Hurst estimator failures") {
    std::vector<double> flat(500, 2.0);
    auto lags = default_qv_lags();
    CHECK_THROWS_AS(estimate_hurst_qv(flat, 0.01, lags), estimation_error);
    std::vector<int> one{4};
    std::vector<double> x(500);
    for (int i = 0; i < 500; ++i) x[i] = std::sin(i * 0.1);
    CHECK_THROWS_AS(estimate_hurst_qv(x, 0.01, one), estimation_error);
    std::vector<double> tiny(10, 0.0);
    CHECK_THROWS(estimate_hurst_qv(tiny, 0.1, lags));
}

TEST_CASE("ensemble summary") {
    auto c = make_config(process_kind::fbm, 0.7);
    c.J = 8;
    simulator sim(c);
    std::vector<sample_path> paths;
    for (int i = 0; i < 40; ++i) paths.push_back(sim.path(i));
    std::vector<double> grid{0.25, 0.5, 0.75};
    auto s = empirical_covariance(paths, grid);
    CHECK(s.paths == 40);
    CHECK_FALSE(s.degenerate);
    CHECK(s.cov(0, 1) == doctest::Approx(s.cov(1, 0)));
    CHECK(s.variances[2] == doctest::Approx(s.cov(2, 2)));

    std::vector<sample_path> same(5, paths[0]);
    CHECK(empirical_covariance(same, grid).degenerate);

    auto other = c;
    other.J = 9;
    paths.push_back(simulator(other).path(0));
    CHECK_THROWS_AS(empirical_covariance(paths, grid), parameter_error);
    std::vector<sample_path> single{paths[0]};
    CHECK_THROWS_AS(empirical_covariance(single, grid), parameter_error);
}

TEST_CASE("standard errors shrink like n^-1/2") {
    auto c = make_config(process_kind::fbm, 0.7);
    c.J = 7;
    simulator sim(c);
    std::vector<sample_path> paths;
    for (int i = 0; i < 400; ++i) paths.push_back(sim.path(i + 1000));
    std::vector<double> grid{0.5, paths[0].last_time()};
    std::vector<sample_path> half(paths.begin(), paths.begin() + 200);
    double r = empirical_covariance(half, grid).se(1, 1) / empirical_covariance(paths, grid).se(1, 1);
    CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(0.3));
}

TEST_CASE("convergence with zero noise has no slope") {
    auto c = make_config(process_kind::fbm, 0.8);
    std::vector<int> scales{6, 7, 8};
    auto zero = [](int) -> std::shared_ptr<const noise::gaussian_field> { return std::make_shared<noise::zero_field>(); };
    CHECK_THROWS_AS(convergence_study(c, scales, zero, 0), estimation_error);
    std::vector<int> two{6, 7};
    CHECK_THROWS_AS(convergence_slope(c, two, 0), parameter_error);
}

TEST_CASE("coupled scales converge for fbm") {
    auto c = make_config(process_kind::fbm, 0.9);
    std::vector<int> scales{8, 9, 10, 11, 12};
    double mean = 0.0;
    for (std::uint64_t s = 0; s < 4; ++s) mean += convergence_slope(c, scales, s) / 4;
    CHECK(mean > 0.25);
}
