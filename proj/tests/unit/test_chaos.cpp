#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "hsim/chaos.hpp"
#include "hsim/farima.hpp"

using namespace hsim;

namespace {

std::uint64_t fact(int n) { return n <= 1 ? 1 : n * fact(n - 1); }

double closed_form(double a, double b, long n) {
    if (n < 0) return closed_form(b, a, -n);
    return std::tgamma(1 - a - b) * std::tgamma(n + b) / (std::tgamma(b) * std::tgamma(1 - b) * std::tgamma(n + 1 - a));
}

covariance_table table_of(const std::vector<double>& deltas, int L) {
    const int d = static_cast<int>(deltas.size());
    std::vector<double> e(static_cast<std::size_t>(d * d * (2 * L + 1)));
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int lag = -L; lag <= L; ++lag) e[(a * d + b) * (2 * L + 1) + lag + L] = closed_form(deltas[a], deltas[b], lag);
    return covariance_table(deltas, L, e);
}

}  // namespace

TEST_CASE("partition counts") {
    for (int d = 1; d <= 6; ++d) {
        std::uint64_t total = 0;
        for (int m = 0; 2 * m <= d; ++m) {
            const auto& ps = partitions(d, m);
            CHECK(ps.size() == fact(d) / (fact(m) * (1ull << m) * fact(d - 2 * m)));
            CHECK(partition_count(d, m) == ps.size());
            total += ps.size();
            for (const auto& p : ps) {
                std::set<int> seen(p.singletons.begin(), p.singletons.end());
                for (auto [a, b] : p.pairs) seen.insert(a), seen.insert(b);
                CHECK(seen.size() == static_cast<std::size_t>(d));
            }
        }
        // telephone numbers
        const std::uint64_t involutions[] = {1, 1, 2, 4, 10, 26, 76};
        CHECK(total == involutions[d]);
    }
}

TEST_CASE("general Wick product reduces to the d = 2 and d = 3 forms") {
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> U(-2.0, 2.0), D(-0.45, 0.45);
    std::uniform_int_distribution<int> K(-4, 4);
    for (int trial = 0; trial < 1000; ++trial) {
        const int W = 4;
        std::vector<double> deltas{D(gen), D(gen), D(gen)};
        auto cov = table_of(deltas, 2 * W);
        std::vector<double> z{U(gen), U(gen), U(gen)};
        std::vector<std::int64_t> k{K(gen), K(gen), K(gen)};

        std::vector<double> z2{z[0], z[1]};
        std::vector<std::int64_t> k2{k[0], k[1]};
        auto cov2 = table_of({deltas[0], deltas[1]}, 2 * W);
        double s2 = sigma_general(z2, k2, cov2);
        CHECK(s2 == doctest::Approx(sigma_d2(z[0], z[1], cov2(0, 1, k[1] - k[0]))).epsilon(1e-12));

        double s3 = sigma_general(z, k, cov);
        double ref = sigma_d3(z[0], z[1], z[2], cov(0, 1, k[1] - k[0]), cov(0, 2, k[2] - k[0]), cov(1, 2, k[2] - k[1]));
        CHECK(s3 == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("covariance table symmetry and coverage") {
    covariance_table cov({0.1, 0.3}, 5);
    for (int lag = -5; lag <= 5; ++lag) {
        CHECK(cov(0, 1, lag) == doctest::Approx(cov(1, 0, -lag)).epsilon(1e-14));
        CHECK(cov(0, 1, lag) == doctest::Approx(farima_covariance(0.1, 0.3, lag)).epsilon(1e-14));
        CHECK(cov(1, 1, lag) == doctest::Approx(cov(1, 1, -lag)).epsilon(1e-14));
    }
    CHECK_THROWS(cov(0, 1, 6));
}

TEST_CASE("Wick product with explicit covariances") {
    // d = 4, all covariances 1/2: z^4 term minus 6 pairs times z^2 plus 3 double pairings
    const int d = 4;
    std::vector<double> entries(d * d, 0.5);
    covariance_table cov(std::vector<double>(d, 0.0), 0, entries);
    std::vector<double> z(d, 1.5);
    std::vector<std::int64_t> k(d, 0);
    double ref = std::pow(1.5, 4) - 6 * 0.5 * 1.5 * 1.5 + 3 * 0.25;
    CHECK(sigma_general(z, k, cov) == doctest::Approx(ref).epsilon(1e-14));
}
