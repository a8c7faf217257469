#include "hsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hsim/errors.hpp"

namespace hsim {

namespace {

// least-squares slope of y on x
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0)) throw estimation_error("regression: abscissae are all equal");
    return sxy / sxx;
}

}  // namespace

ensemble_summary empirical_covariance(std::span<const sample_path> paths, std::span<const double> grid) {
    if (paths.size() < 2) throw parameter_error("empirical_covariance: need at least 2 paths");
    if (grid.empty()) throw parameter_error("empirical_covariance: empty grid");
    for (const auto& p : paths)
        if (p.config_hash != paths[0].config_hash)
            throw parameter_error("empirical_covariance: paths come from different configurations");
    const std::size_t n = paths.size(), g = grid.size();
    std::vector<double> X(n * g);
    for (std::size_t i = 0; i < n; ++i) {
        auto v = evaluate_path(paths[i], grid);
        std::copy(v.begin(), v.end(), X.begin() + static_cast<std::ptrdiff_t>(i * g));
    }
    ensemble_summary s;
    s.paths = n;
    s.grid.assign(grid.begin(), grid.end());
    s.means.assign(g, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < g; ++a) s.means[a] += X[i * g + a];
    for (double& m : s.means) m /= static_cast<double>(n);
    // a constant column must give exactly zero spread, not rounding noise
    for (std::size_t a = 0; a < g; ++a) {
        bool constant = true;
        for (std::size_t i = 1; i < n && constant; ++i) constant = X[i * g + a] == X[a];
        if (constant) s.means[a] = X[a];
    }
    s.covariance.assign(g * g, 0.0);
    s.std_errors.assign(g * g, 0.0);
    std::vector<double> prod(n);
    for (std::size_t a = 0; a < g; ++a)
        for (std::size_t b = a; b < g; ++b) {
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                prod[i] = (X[i * g + a] - s.means[a]) * (X[i * g + b] - s.means[b]);
                sum += prod[i];
            }
            double c = sum / static_cast<double>(n - 1);
            double mp = sum / static_cast<double>(n), vp = 0.0;
            for (double p : prod) vp += (p - mp) * (p - mp);
            vp /= static_cast<double>(n - 1);
            double se = std::sqrt(vp / static_cast<double>(n));
            s.covariance[a * g + b] = s.covariance[b * g + a] = c;
            s.std_errors[a * g + b] = s.std_errors[b * g + a] = se;
        }
    s.variances.resize(g);
    s.degenerate = true;
    for (std::size_t a = 0; a < g; ++a) {
        s.variances[a] = s.covariance[a * g + a];
        if (s.variances[a] != 0.0) s.degenerate = false;
    }
    return s;
}

double fbm_covariance(double H, double t, double s) {
    return 0.5 * (std::pow(t, 2 * H) + std::pow(s, 2 * H) - std::pow(std::fabs(t - s), 2 * H));
}

std::vector<int> default_qv_lags() { return {4, 8, 16, 32}; }

double estimate_hurst_qv(std::span<const double> x, double dt, std::span<const int> lags) {
    std::set<int> distinct(lags.begin(), lags.end());
    if (distinct.size() < 2) throw estimation_error("estimate_hurst_qv: need at least 2 distinct lags");
    if (*distinct.begin() < 1) throw parameter_error("estimate_hurst_qv: lags must be positive");
    if (!(dt > 0)) throw parameter_error("estimate_hurst_qv: dt must be positive");
    const int qmax = *distinct.rbegin();
    if (x.size() < static_cast<std::size_t>(qmax) + 2) throw estimation_error("estimate_hurst_qv: too few samples");
    std::vector<double> lx, ly;
    for (int q : distinct) {
        double acc = 0.0;
        const std::size_t m = x.size() - static_cast<std::size_t>(q);
        for (std::size_t i = 0; i < m; ++i) {
            double d = x[i + q] - x[i];
            acc += d * d;
        }
        acc /= static_cast<double>(m);
        if (!(acc > 0) || !std::isfinite(acc)) throw estimation_error("estimate_hurst_qv: zero or invalid quadratic variation");
        lx.push_back(std::log(q * dt));
        ly.push_back(std::log(acc));
    }
    return 0.5 * ls_slope(lx, ly);
}

double estimate_hurst_qv(const sample_path& path, std::span<const int> lags) {
    if (path.values.size() < 3) throw estimation_error("estimate_hurst_qv: too few knots");
    std::span<const double> knots(path.values.data() + 1, path.values.size() - 1);
    return estimate_hurst_qv(knots, std::ldexp(1.0, -path.J), lags);
}

convergence_report convergence_study(const simulation_config& cfg, std::span<const int> scales, std::uint64_t seed,
                                     const table_cache* cache) {
    if (scales.empty()) throw parameter_error("convergence_slope: need at least 3 distinct scales");
    int Jfine = *std::max_element(scales.begin(), scales.end());
    return convergence_study(
        cfg, scales, [&](int j) { return noise::make_field(seed, j, Jfine); }, seed, cache);
}

convergence_report convergence_study(const simulation_config& cfg, std::span<const int> scales,
                                     const field_source& fields, std::uint64_t seed,
                                     const table_cache* cache) {
    std::vector<int> J(scales.begin(), scales.end());
    std::sort(J.begin(), J.end());
    J.erase(std::unique(J.begin(), J.end()), J.end());
    if (J.size() < 3) throw parameter_error("convergence_slope: need at least 3 distinct scales");
    std::vector<sample_path> paths;
    for (int j : J) {
        simulation_config c = cfg;
        c.J = j;
        simulator sim(c, cache);
        auto field = fields(j);
        paths.push_back(sim.path(*field, seed));
    }
    convergence_report r;
    r.scales = J;
    r.horizon = paths[0].last_time();
    for (const auto& p : paths) r.horizon = std::min(r.horizon, p.last_time());
    for (std::size_t i = 0; i + 1 < paths.size(); ++i) {
        // the sup of a difference of piecewise-linear functions is attained at a knot
        std::vector<double> t;
        for (const auto* p : {&paths[i], &paths[i + 1]})
            for (double x : p->times)
                if (x <= r.horizon) t.push_back(x);
        t.push_back(r.horizon);
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        auto a = evaluate_path(paths[i], t), b = evaluate_path(paths[i + 1], t);
        double sup = 0.0;
        for (std::size_t q = 0; q < t.size(); ++q) sup = std::max(sup, std::fabs(a[q] - b[q]));
        r.sup_differences.push_back(sup);
    }
    const double d = cfg.h.order();
    std::vector<double> x, y;
    for (std::size_t i = 0; i < r.sup_differences.size(); ++i) {
        if (!(r.sup_differences[i] > 0) || !std::isfinite(r.sup_differences[i]))
            throw estimation_error("convergence_slope: successive paths coincide; slope undefined");
        x.push_back(J[i]);
        y.push_back(std::log2(r.sup_differences[i]) - 0.5 * d * std::log2(static_cast<double>(J[i])));
    }
    r.slope = -ls_slope(x, y);
    return r;
}

double convergence_slope(const simulation_config& cfg, std::span<const int> scales, std::uint64_t seed) {
    if (scales.empty()) throw parameter_error("convergence_slope: need at least 3 distinct scales");
    return convergence_study(cfg, scales, seed).slope;
}

}  // namespace hsim
