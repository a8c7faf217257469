#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "hsim/farima.hpp"
#include "hsim/noise.hpp"

using namespace hsim;

namespace {

double closed_form_cov(double a, double b, long n) {
    if (n < 0) return closed_form_cov(b, a, -n);
    return std::tgamma(1 - a - b) * std::tgamma(n + b) / (std::tgamma(b) * std::tgamma(1 - b) * std::tgamma(n + 1 - a));
}

double gamma_ratio(double d, int p) { return std::tgamma(p + d) / (std::tgamma(p + 1.0) * std::tgamma(d)); }

}  // namespace

TEST_CASE("weights match the Gamma ratio") {
    for (double d : {-0.4, -0.1, 0.2, 0.45}) {
        auto w = gamma_weights(d, 50);
        REQUIRE(w.values.size() == 51);
        CHECK(w.values[0] == 1.0);
        for (int p = 1; p <= 50; ++p) CHECK(w.values[p] == doctest::Approx(gamma_ratio(d, p)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(gamma_weights(0.5, 10), std::invalid_argument);
    CHECK_THROWS_AS(gamma_weights(0.2, -1), std::invalid_argument);
}

TEST_CASE("partial sums of the weights") {
    for (double d : {-0.3, 0.25, 0.45}) {
        auto w = gamma_weights(d, 3000);
        double s = 0.0;
        for (int p = 0; p < 3000; ++p) {
            s += w.values[p];
            if (p == 9 || p == 299 || p == 2999)
                CHECK(gamma_partial_sum(d, p + 1.0) == doctest::Approx(s).epsilon(1e-11));
        }
    }
}

TEST_CASE("covariance matches the closed form") {
    const double ds[] = {-0.4, -0.2, 0.1, 0.3, 0.45};
    for (double a : ds)
        for (double b : ds)
            for (long n : {-7L, -1L, 0L, 1L, 3L, 16L})
                CHECK(farima_covariance(a, b, n) == doctest::Approx(closed_form_cov(a, b, n)).epsilon(1e-10));
}

TEST_CASE("covariance at delta = H/2 equals the |2 sin|^-H integral") {
    boost::math::quadrature::tanh_sinh<double> ts;
    for (double H : {0.6, 0.8, 0.9})
        for (int n : {0, 1, 5}) {
            auto f = [&](double x) { return std::cos(n * x) * std::pow(2.0 * std::sin(x / 2.0), -H); };
            double ref = ts.integrate(f, 0.0, std::numbers::pi) / std::numbers::pi;
            CHECK(farima_covariance(H / 2, H / 2, n) == doctest::Approx(ref).epsilon(1e-9));
        }
}

TEST_CASE("truncated convolution equals the hand-written sum") {
    noise::keyed_field g(7, 10);
    farima_options o;
    o.truncation = 8;
    o.tail_tolerance = 0.0;
    const double d = 0.3;
    auto w = gamma_weights(d, 8);
    std::vector<double> leaves(60 + 8);
    g.leaves(-8, leaves);
    for (auto m : {convolution_method::direct, convolution_method::fft}) {
        o.method = m;
        auto z = generate_farima(g, d, 0, 59, o, 10);
        REQUIRE(z.values.size() == 60);
        for (int l = 0; l < 60; ++l) {
            double s = 0.0;
            for (int p = 0; p <= 8; ++p) s += w.values[p] * leaves[l - p + 8];
            CHECK(z.values[l] == doctest::Approx(s).epsilon(1e-12));
        }
    }
}

TEST_CASE("fft and direct near fields agree") {
    noise::keyed_field g(11, 12);
    farima_options o;
    o.truncation = 5000;
    o.method = convolution_method::direct;
    auto a = generate_farima(g, 0.35, 100, 1400, o, 12);
    o.method = convolution_method::fft;
    auto b = generate_farima(g, 0.35, 100, 1400, o, 12);
    for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(b.values[i] == doctest::Approx(a.values[i]).epsilon(1e-10));
}

TEST_CASE("disjoint windows concatenate bit-identically") {
    noise::keyed_field g(3, 12);
    auto whole = generate_farima(g, 0.4, 0, 9999, {}, 12).values;
    std::vector<double> parts;
    for (auto [lo, hi] : {std::pair{0, 3122}, {3123, 3123}, {3124, 8190}, {8191, 9999}}) {
        auto p = generate_farima(g, 0.4, lo, hi, {}, 12).values;
        parts.insert(parts.end(), p.begin(), p.end());
    }
    REQUIRE(parts.size() == whole.size());
    for (std::size_t i = 0; i < parts.size(); ++i) REQUIRE(parts[i] == whole[i]);
}

TEST_CASE("remote past approximates the long sum") {
    // brute force: 400k exact terms; fast: 1000 exact terms plus block sums to the same depth
    const std::int64_t P = 1000, D = 400000;
    noise::keyed_field g(5, 14);
    for (double d : {0.1, 0.3, -0.3}) {
        auto w = gamma_weights(d, D);
        const std::int64_t l = 20000;
        std::vector<double> leaves(D + 1);
        g.leaves(l - D, leaves);
        double near = 0.0, far = 0.0, far_var = 0.0;
        for (std::int64_t p = 0; p <= D; ++p) {
            (p <= P ? near : far) += w.values[p] * leaves[D - p];
            if (p > P) far_var += w.values[p] * w.values[p];
        }
        farima_options o;
        o.truncation = P;
        o.tail_distance = static_cast<double>(D);
        auto z = generate_farima(g, d, l, l, o, 14).values[0];
        INFO("delta " << d << " tail " << far << " got " << z - near);
        // the block tail is a conditional expectation, so compare with the spread of the tail
        CHECK(std::abs(z - (near + far)) < 0.1 * std::sqrt(far_var));
    }
}

TEST_CASE("sample variance of the sequence") {
    const double d = 0.3;
    double s2 = 0.0;
    int n = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto z = generate_farima(10, d, 0, 2047, seed).values;
        for (double v : z) s2 += v * v, ++n;
    }
    // the windows are strongly correlated, so the tolerance is loose
    CHECK(s2 / n == doctest::Approx(closed_form_cov(d, d, 0)).epsilon(0.15));
}

TEST_CASE("argument checks") {
    CHECK_THROWS_AS(generate_farima(10, 0.6, 0, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_farima(10, 0.2, 10, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(farima_covariance(0.3, 0.3, 0) * farima_covariance(0.5, 0.1, 0), std::invalid_argument);
}
