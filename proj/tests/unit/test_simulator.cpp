#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hsim/errors.hpp"
#include "hsim/farima.hpp"
#include "hsim/simulator.hpp"

using namespace hsim;

TEST_CASE("index bounds") {
    auto r = index_bounds(20, 0.75, 1.0);
    CHECK(r.m0 == 32);
    CHECK(r.mmax == 1048544);
    r = index_bounds(0, 0.75, 3.0);
    CHECK(r.m0 == 1);
    CHECK(r.mmax == 2);
    CHECK_THROWS_AS(index_bounds(4, 0.75, 0.1), configuration_error);
}

TEST_CASE("diagonal width") {
    CHECK(diagonal_width(20, 1e-4) == 1);
    CHECK(diagonal_width(10, 0.5) == 32);
    CHECK(diagonal_width(30, 1e-9) == 1);
    CHECK_THROWS_AS(diagonal_width(10, 0.0), parameter_error);
}

TEST_CASE("config validation") {
    auto c = make_config(process_kind::genhermite3, 0.7);
    c.h = hurst_vector({0.8, 0.85, 0.9});
    c.J = 8;
    CHECK_NOTHROW(c.validate());
    c.normalized = true;
    CHECK_THROWS_AS(c.validate(), configuration_error);
    CHECK_THROWS_AS(hurst_vector({0.6, 0.6, 0.6}), std::invalid_argument);
    auto f = make_config(process_kind::fbm, 0.7);
    f.a = 1.2;
    CHECK_THROWS_AS(f.validate(), std::invalid_argument);
    CHECK(parse_process_kind("hermite3") == process_kind::hermite3);
    CHECK_THROWS_AS(parse_process_kind("levy"), std::invalid_argument);
}

TEST_CASE("config hash ignores the seed only") {
    auto a = make_config(process_kind::rosenblatt, 0.8), b = a;
    b.seed = 99;
    CHECK(a.hash() == b.hash());
    b.J = 19;
    CHECK(a.hash() != b.hash());
}

TEST_CASE("fbm increments are the scaled FARIMA sequence") {
    auto c = make_config(process_kind::fbm, 0.7);
    c.J = 10;
    simulator sim(c);
    noise::keyed_field g(4, 10);
    auto inc = sim.increments(g);
    auto r = index_bounds(10, 0.75, 1.0);
    auto z = generate_farima(g, 0.2, r.m0, r.mmax, {}, 10).values;
    REQUIRE(inc.size() == z.size());
    for (std::size_t i = 0; i < z.size(); ++i) CHECK(inc[i] == doctest::Approx(std::exp2(-7.0) * z[i]).epsilon(1e-14));
}

TEST_CASE("Rosenblatt with band width one follows the two-term recursion") {
    auto c = make_config(process_kind::rosenblatt, 0.8);
    c.J = 9;
    simulator sim(c);
    REQUIRE(sim.width() == 1);
    noise::keyed_field g(12, 9);
    auto inc = sim.increments(g);
    auto r = sim.bounds();
    auto z = generate_farima(g, 0.4, r.m0, r.mmax, {}, 9).values;
    auto V = integral_vector_d2(0.8, 1);
    const double c0 = farima_covariance(0.4, 0.4, 0), c1 = farima_covariance(0.4, 0.4, 1);
    const double scale = std::exp2(-9 * 0.8) / (2 * std::numbers::pi);
    CHECK(inc[0] == doctest::Approx(scale * (z[0] * z[0] - c0) * V.at(0)).epsilon(1e-12));
    for (std::size_t m = 1; m < z.size(); m += 37) {
        double ref = scale * ((z[m] * z[m] - c0) * V.at(0) + 2 * (z[m] * z[m - 1] - c1) * V.at(1));
        CHECK(inc[m] == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("zero noise leaves only the centering terms") {
    noise::zero_field zero;
    auto c = make_config(process_kind::rosenblatt, 0.7);
    c.J = 8;
    c.epsilon = 0.25;  // width 4
    simulator sim(c);
    REQUIRE(sim.width() == 4);
    auto inc = sim.increments(zero);
    auto V = integral_vector_d2(0.7, 4);
    const double scale = std::exp2(-8 * 0.7) / (2 * std::numbers::pi);
    auto cov = [](int i) { return farima_covariance(0.35, 0.35, i); };
    CHECK(inc[0] == doctest::Approx(-scale * cov(0) * V.at(0)).epsilon(1e-12));
    double full = -cov(0) * V.at(0);
    for (int i = 1; i <= 4; ++i) full -= 2 * cov(i) * V.at(i);
    CHECK(inc[2] == doctest::Approx(scale * (-cov(0) * V.at(0) - 2 * cov(1) * V.at(1) - 2 * cov(2) * V.at(2))).epsilon(1e-12));
    CHECK(inc[10] == doctest::Approx(scale * full).epsilon(1e-12));
    c.kind = process_kind::fbm;
    c.h = hurst_vector::equal(1, 0.7);
    for (double v : simulator(c).increments(zero)) CHECK(v == 0.0);
}

TEST_CASE("general driver with equal exponents reproduces the Hermite-3 driver") {
    auto e = make_config(process_kind::hermite3, 0.75);
    e.J = 9;
    e.epsilon = 0.3;
    auto g = e;
    g.kind = process_kind::genhermite3;
    auto pe = simulator(e).path(21), pg = simulator(g).path(21);
    REQUIRE(pe.values.size() == pg.values.size());
    double scale = 0.0;
    for (double v : pe.values) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < pe.values.size(); ++i) CHECK(std::abs(pe.values[i] - pg.values[i]) < 1e-8 * std::max(1.0, scale));
}

TEST_CASE("paths start at the origin and hit the knots") {
    auto c = make_config(process_kind::hermite3, 0.8);
    c.J = 8;
    simulator sim(c);
    auto p = sim.path(5);
    auto r = sim.bounds();
    REQUIRE(p.times.size() == static_cast<std::size_t>(r.size() + 1));
    CHECK(p.times[0] == 0.0);
    CHECK(p.values[0] == 0.0);
    CHECK(p.times[1] == std::ldexp(double(r.m0), -8) + std::exp2(-0.75 * 8));
    CHECK(evaluate_path_at(p, 0.0) == 0.0);
    CHECK(evaluate_path_at(p, p.times[17]) == p.values[17]);
    double mid = 0.5 * (p.times[30] + p.times[31]);
    CHECK(evaluate_path_at(p, mid) == doctest::Approx(0.5 * (p.values[30] + p.values[31])).epsilon(1e-14));
    CHECK_THROWS_AS(evaluate_path_at(p, p.last_time() + 1e-3), std::domain_error);
}

TEST_CASE("sweep evaluation equals binary search") {
    auto c = make_config(process_kind::fbm, 0.65);
    c.J = 9;
    auto p = simulator(c).path(8);
    std::vector<double> grid;
    for (int i = 0; i < 400; ++i) grid.push_back(p.last_time() * std::pow(i / 399.0, 1.7));
    auto v = evaluate_path(p, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(v[i] == evaluate_path_at(p, grid[i]));
}

TEST_CASE("determinism and seed sensitivity") {
    auto c = make_config(process_kind::rosenblatt, 0.7);
    c.J = 9;
    c.seed = 17;
    auto a = build_path(c), b = build_path(c);
    CHECK(a.values == b.values);
    c.seed = 18;
    CHECK(build_path(c).values != a.values);
}

TEST_CASE("normalization constant") {
    // d = 1 reduces to the usual fBm constant with beta(H - 1/2, 2 - 2H)
    for (double H : {0.6, 0.8}) {
        double C2 = H * (2 * H - 1) / std::beta(H - 0.5, 2 - 2 * H);
        CHECK(normalization_constant(hurst_vector::equal(1, H)) == doctest::Approx(std::sqrt(C2)).epsilon(1e-13));
    }
    double H = 0.7, b = std::beta(0.5 - (1 - H) / 3, (2 - 2 * H) / 3);
    CHECK(normalization_constant(hurst_vector::equal(3, H)) ==
          doctest::Approx(std::sqrt(H * (2 * H - 1) / (6 * b * b * b))).epsilon(1e-13));
    CHECK_THROWS_AS(normalization_constant(hurst_vector({0.8, 0.85, 0.9})), std::invalid_argument);
}

TEST_CASE("increments scale like 2^-H when J doubles") {
    // one-knot increments of fbm: sd ratio between J and J+1 is 2^-H
    auto c = make_config(process_kind::fbm, 0.75);
    c.J = 13;
    auto a = simulator(c).increments(1);
    c.J = 14;
    auto b = simulator(c).increments(2);
    auto sd = [](const std::vector<double>& v) {
        double s = 0.0;
        for (std::size_t i = 1; i < v.size(); ++i) s += v[i] * v[i];
        return std::sqrt(s / (v.size() - 1));
    };
    CHECK(sd(b) / sd(a) == doctest::Approx(std::exp2(-0.75)).epsilon(0.1));
}
