#include "hsim/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hsim/chaos.hpp"
#include "hsim/errors.hpp"
#include "hsim/farima.hpp"
#include "hsim/meyer.hpp"
#include "hsim/quadrature.hpp"
#include "hsim/rng.hpp"
#include "hsim/stats.hpp"

namespace hsim {

namespace {

check_result upper(std::string name, double measured, double tol, std::string detail = {}) {
    return {std::move(name), measured <= tol, measured, tol, std::move(detail)};
}

double closed_form_covariance(double a, double b, std::int64_t n) {
    if (n < 0) {
        std::swap(a, b);
        n = -n;
    }
    double ln = std::lgamma(n + b) - std::lgamma(n + 1.0 - a);
    return std::tgamma(1.0 - a - b) / (std::tgamma(b) * std::tgamma(1.0 - b)) * std::exp(ln);
}

}  // namespace

std::vector<check_result> run_properties_suite() {
    std::vector<check_result> out;

    double worst = 0.0;
    for (double d : {-0.4, -0.1, 0.2, 0.45}) {
        auto w = gamma_weights(d, 50);
        for (int p = 0; p <= 50; ++p) {
            // Gamma(p+d)/(Gamma(p+1) Gamma(d)); Gamma(p+d) > 0 for p >= 1
            double ref = p == 0 ? 1.0 : std::exp(std::lgamma(p + d) - std::lgamma(p + 1.0)) / std::tgamma(d);
            worst = std::max(worst, std::fabs(w.values[p] - ref) / std::fabs(ref));
        }
    }
    out.push_back(upper("gamma weights vs Gamma ratio (rel)", worst, 1e-12));

    worst = 0.0;
    for (auto [a, b] : {std::pair{0.35, 0.35}, {0.1, 0.3}, {-0.3, 0.4}, {0.45, 0.2}})
        for (std::int64_t n : {-7, -1, 0, 1, 2, 16})
            worst = std::max(worst, std::fabs(farima_covariance(a, b, n) - closed_form_covariance(a, b, n)));
    out.push_back(upper("FARIMA covariance vs closed form", worst, 1e-10));

    worst = 0.0;
    {
        covariance_table cov({0.3, 0.35, 0.4}, 4);
        for (int i = 0; i < 200; ++i) {
            double z[3];
            std::int64_t k[3];
            for (int l = 0; l < 3; ++l) {
                z[l] = rng::normal(rng::key(11, 1, i, l));
                k[l] = static_cast<std::int64_t>(rng::uniform(rng::key(11, 2, i, l)) * 5);
            }
            double g3 = sigma_general(z, k, cov);
            double e3 = sigma_d3(z[0], z[1], z[2], cov(0, 1, k[1] - k[0]), cov(0, 2, k[2] - k[0]),
                                 cov(1, 2, k[2] - k[1]));
            worst = std::max(worst, std::fabs(g3 - e3));
        }
    }
    out.push_back(upper("Wick general vs explicit d=3", worst, 1e-12));

    worst = 0.0;
    for (int d = 1; d <= 6; ++d)
        for (int m = 0; 2 * m <= d; ++m)
            worst = std::max(worst, std::fabs(static_cast<double>(partitions(d, m).size()) -
                                              static_cast<double>(partition_count(d, m))));
    out.push_back(upper("partition counts d<=6", worst, 0.0));

    worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        double xi = 2.0 * meyer::pi * i / 10000.0;
        double s = 0.0;
        for (int k = -2; k <= 2; ++k) {
            double v = meyer::eval_phi_hat(xi + 2.0 * meyer::pi * k);
            s += v * v;
        }
        worst = std::max(worst, std::fabs(s - 1.0));
    }
    out.push_back(upper("phi_hat partition of unity", worst, 1e-12));

    auto pl = integral_vector_d2_exponent(0.0, 0);
    out.push_back(upper("quadrature Plancherel |int phi_hat^2 - 2pi|", std::fabs(pl.values[0] - 2.0 * meyer::pi), 1e-9));

    auto t1 = integral_vector_d2(0.7, 8), t2 = integral_vector_d2(0.7, 8, t1.meta.refined());
    worst = 0.0;
    for (int k = 0; k <= 8; ++k) worst = std::max(worst, std::fabs(t1.at(k) - t2.at(k)));
    out.push_back(upper("d=2 table refinement (H=0.7)", worst, 1e-9));

    auto r = index_bounds(20, 0.75, 1.0);
    double miss = std::fabs(static_cast<double>(r.m0 - 32)) + std::fabs(static_cast<double>(r.mmax - 1048544));
    out.push_back(upper("index bounds J=20 a=0.75 T=1 vs (32, 1048544)", miss, 0.0,
                        "m0=" + std::to_string(r.m0) + " mmax=" + std::to_string(r.mmax)));
    return out;
}

std::vector<check_result> run_moments_suite(const simulation_config& cfg_in, int paths, const table_cache* cache) {
    if (paths < 20) throw parameter_error("moments suite needs at least 20 paths");
    simulation_config cfg = cfg_in;
    const bool equal = cfg.h.all_equal();
    if (equal) cfg.normalized = true;
    simulator sim(cfg, cache);
    std::vector<sample_path> ens;
    ens.reserve(static_cast<std::size_t>(paths));
    for (int i = 0; i < paths; ++i) ens.push_back(sim.path(rng::path_seed(cfg.seed, static_cast<std::uint64_t>(i))));

    std::vector<check_result> out;
    const double H = cfg.h.H();
    const double tend = std::min(1.0, ens[0].last_time());
    if (equal && cfg.h.order() == 1) {
        std::vector<double> grid;
        for (int i = 1; i <= 16; ++i) grid.push_back(tend * i / 16.0);
        auto s = empirical_covariance(ens, grid);
        double worst = 0.0;
        for (std::size_t a = 0; a < grid.size(); ++a)
            for (std::size_t b = a; b < grid.size(); ++b)
                worst = std::max(worst, std::fabs(s.cov(a, b) - fbm_covariance(H, grid[a], grid[b])) / s.se(a, b));
        out.push_back(upper("covariance on 16-point grid (max |err|/SE)", worst, 4.0));
    } else if (equal) {
        std::vector<double> grid{tend};
        auto s = empirical_covariance(ens, grid);
        double z = std::fabs(s.cov(0, 0) - std::pow(tend, 2 * H)) / s.se(0, 0);
        std::ostringstream os;
        os << "variance " << s.cov(0, 0) << " target " << std::pow(tend, 2 * H) << " SE " << s.se(0, 0);
        out.push_back(upper("normalized variance (|err|/SE)", z, 4.0, os.str()));
    }
    double mean = 0.0;
    auto lags = default_qv_lags();
    for (const auto& p : ens) mean += estimate_hurst_qv(p, lags);
    mean /= static_cast<double>(ens.size());
    std::ostringstream os;
    os << "mean estimate " << mean << " target " << H;
    out.push_back(upper("Hurst recovery |mean - H|", std::fabs(mean - H), 0.05, os.str()));
    return out;
}

std::vector<check_result> run_rate_suite(const simulation_config& cfg, const std::vector<int>& scales,
                                         std::uint64_t seed, int seeds, double slack, const table_cache* cache) {
    if (seeds < 1) throw parameter_error("rate suite needs at least one seed");
    double mean = 0.0;
    std::ostringstream os;
    for (int s = 0; s < seeds; ++s) {
        auto r = convergence_study(cfg, scales, rng::path_seed(seed, static_cast<std::uint64_t>(s)), cache);
        mean += r.slope;
        os << (s ? " " : "slopes ") << r.slope;
    }
    mean /= seeds;
    const double target = cfg.h.H() - 0.5 - slack;
    return {{"decay exponent >= H - 1/2 - " + std::to_string(slack), mean >= target, mean, target, os.str()}};
}

}  // namespace hsim
