#include "hsim/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "hsim/digest.hpp"
#include "hsim/errors.hpp"

namespace hsim {

namespace {

constexpr double two_pi = 6.283185307179586476925286766559;

}  // namespace

const char* to_string(process_kind k) {
    switch (k) {
        case process_kind::fbm: return "fbm";
        case process_kind::rosenblatt: return "rosenblatt";
        case process_kind::hermite3: return "hermite3";
        case process_kind::genhermite3: return "genhermite3";
    }
    return "?";
}

process_kind parse_process_kind(std::string_view s) {
    if (s == "fbm") return process_kind::fbm;
    if (s == "rosenblatt") return process_kind::rosenblatt;
    if (s == "hermite3") return process_kind::hermite3;
    if (s == "genhermite3") return process_kind::genhermite3;
    throw parameter_error("unknown process kind '" + std::string(s) + "'");
}

int process_order(process_kind k) {
    switch (k) {
        case process_kind::fbm: return 1;
        case process_kind::rosenblatt: return 2;
        default: return 3;
    }
}

simulation_config make_config(process_kind kind, double H) {
    simulation_config c;
    c.kind = kind;
    c.h = hurst_vector::equal(process_order(kind), H);
    if (kind == process_kind::genhermite3) c.J = 15;
    return c;
}

std::vector<std::string> simulation_config::validate() const {
    std::vector<std::string> warn;
    if (h.order() != process_order(kind))
        throw configuration_error(std::string("process ") + to_string(kind) + " needs " +
                                  std::to_string(process_order(kind)) + " Hurst exponents, got " +
                                  std::to_string(h.order()));
    if ((kind == process_kind::rosenblatt || kind == process_kind::hermite3) && !h.all_equal())
        throw configuration_error(std::string(to_string(kind)) + " requires equal exponents; use genhermite3");
    if (J < 0 || J > 30) throw configuration_error("J must lie in [0, 30]");
    if (!(a > 0.5 && a < 1.0)) throw configuration_error("a must lie in (1/2, 1)");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw configuration_error("epsilon must be positive");
    if (!(T > 0.0) || !std::isfinite(T)) throw configuration_error("T must be positive");
    if (!(T > std::pow(2.0, 1.0 - J * a))) throw configuration_error("horizon too small for scale: need T > 2^(1-Ja)");
    if (normalized && !h.all_equal())
        throw configuration_error("normalization is only defined for equal exponents");
    if (truncation < 0) throw configuration_error("truncation must be non-negative");
    if (!(tail_tolerance >= 0.0 && tail_tolerance < 1.0)) throw configuration_error("tail tolerance must lie in [0, 1)");
    double H = h.H();
    if (!(a > 1.0 - 1.0 / (2.0 * H)))
        warn.push_back("a <= 1 - 1/(2H): the interpolated path is not covered by the uniform convergence guarantee");
    index_bounds(J, a, T);
    return warn;
}

std::string simulation_config::canonical() const {
    std::ostringstream os;
    os << "kind=" << to_string(kind) << ";h=";
    for (int l = 0; l < h.order(); ++l) os << (l ? "," : "") << hex_double(h[l]);
    os << ";J=" << J << ";a=" << hex_double(a) << ";epsilon=" << hex_double(epsilon) << ";T=" << hex_double(T)
       << ";normalized=" << normalized << ";truncation=" << truncation << ";tail=" << hex_double(tail_tolerance)
       << ";conv=" << (convolution == convolution_method::fft ? "fft" : "direct") << ";order=" << quad.order
       << ";panels=" << quad.panels;
    return os.str();
}

std::string simulation_config::hash() const { return hex64(fnv1a64(canonical())); }

index_range index_bounds(int J, double a, double T) {
    if (J < 0 || J > 40) throw parameter_error("index_bounds: J out of range");
    double c = std::pow(2.0, J * (1.0 - a));
    index_range r;
    r.m0 = static_cast<std::int64_t>(std::floor(c - 1.0)) + 1;
    r.mmax = static_cast<std::int64_t>(std::floor(std::ldexp(T, J) - c));
    if (r.mmax < r.m0) throw configuration_error("horizon too small for scale: index set I_J(T) is empty");
    return r;
}

std::int64_t diagonal_width(int J, double epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw parameter_error("diagonal_width: epsilon must be positive");
    double e = epsilon * J;
    if (e > 40.0) throw parameter_error("diagonal_width: 2^(epsilon J) too large");
    return static_cast<std::int64_t>(std::floor(std::exp2(e)));
}

double normalization_constant(const hurst_vector& h) {
    if (!h.all_equal()) throw configuration_error("normalization constant needs equal exponents");
    const double H = h.H();
    const double d = h.order();
    const double b = std::beta(0.5 - (1.0 - H) / d, (2.0 - 2.0 * H) / d);
    return std::sqrt(H * (2.0 * H - 1.0) / (std::tgamma(d + 1.0) * std::pow(b, d)));
}

double normalization_factor(const hurst_vector& h) {
    double f = normalization_constant(h);
    for (int l = 0; l < h.order(); ++l) f *= std::tgamma(h.delta(l));
    return f;
}

simulator::simulator(simulation_config cfg, const table_cache* cache) : cfg_(std::move(cfg)) {
    warnings_ = cfg_.validate();
    range_ = index_bounds(cfg_.J, cfg_.a, cfg_.T);
    width_ = std::min<std::int64_t>(diagonal_width(cfg_.J, cfg_.epsilon), range_.mmax - range_.m0);
    const int d = cfg_.h.order();
    for (int l = 0; l < d; ++l) deltas_.push_back(cfg_.h.delta(l));
    scale_ = std::exp2(-cfg_.J * cfg_.h.H()) * std::pow(two_pi, -(d - 1));
    if (cfg_.normalized) scale_ *= normalization_factor(cfg_.h);

    const int kmax = static_cast<int>(width_);
    switch (cfg_.kind) {
        case process_kind::fbm: break;
        case process_kind::rosenblatt:
            table_ = get_table(table_kind::d2, {cfg_.h.H()}, kmax, cfg_.quad, cache);
            break;
        case process_kind::hermite3:
            table_ = get_table(table_kind::d3, {cfg_.h.H()}, kmax, cfg_.quad, cache);
            break;
        case process_kind::genhermite3:
            table_ = get_table(table_kind::gen3, {cfg_.h[0], cfg_.h[1], cfg_.h[2]}, kmax, cfg_.quad, cache);
            break;
    }
    if (table_) table_keys_.push_back(table_->cache_key());
    if (d >= 2) cov_.emplace(deltas_, kmax);
}

std::vector<double> simulator::increments(const noise::gaussian_field& field) const {
    const std::int64_t n = range_.size();
    const int W = static_cast<int>(width_);
    farima_options fo;
    fo.truncation = cfg_.truncation;
    fo.tail_tolerance = cfg_.tail_tolerance;
    fo.method = cfg_.convolution;

    // one FARIMA sequence per distinct exponent, all from the same noise
    std::vector<std::vector<double>> Z(deltas_.size());
    for (std::size_t l = 0; l < deltas_.size(); ++l) {
        std::size_t same = l;
        for (std::size_t q = 0; q < l; ++q)
            if (deltas_[q] == deltas_[l]) {
                same = q;
                break;
            }
        if (same != l)
            Z[l] = Z[same];
        else
            Z[l] = generate_farima(field, deltas_[l], range_.m0, range_.mmax, fo, cfg_.J).values;
    }

    std::vector<double> inc(static_cast<std::size_t>(n), 0.0);
    switch (cfg_.kind) {
        case process_kind::fbm:
            for (std::int64_t i = 0; i < n; ++i) inc[i] = Z[0][i];
            break;

        case process_kind::rosenblatt: {
            const auto& z = Z[0];
            std::vector<double> c(W + 1), V(W + 1);
            for (int i = 0; i <= W; ++i) {
                c[i] = (*cov_)(0, 0, i);
                V[i] = table_->at(i);
            }
            for (std::int64_t t = 0; t < n; ++t) {
                const int nb = static_cast<int>(std::min<std::int64_t>(W, t));
                double part = sigma_d2(z[t], z[t], c[0]) * V[0];
                for (int i = 1; i <= nb; ++i) part += 2.0 * sigma_d2(z[t], z[t - i], c[i]) * V[i];
                inc[t] = part;
            }
            break;
        }

        case process_kind::hermite3: {
            const auto& z = Z[0];
            std::vector<double> c(W + 1);
            for (int i = 0; i <= W; ++i) c[i] = (*cov_)(0, 0, i);
            const int w1 = W + 1;
            std::vector<double> M(static_cast<std::size_t>(w1) * w1);
            for (int k = 0; k <= W; ++k)
                for (int l = 0; k + l <= W; ++l) M[k * w1 + l] = table_->at(k, l);
            for (std::int64_t t = 0; t < n; ++t) {
                const int nb = static_cast<int>(std::min<std::int64_t>(W, t));
                const double zm = z[t];
                double part = sigma_d3(zm, zm, zm, c[0], c[0], c[0]) * M[0];
                for (int i = 1; i <= nb; ++i) {
                    const double zi = z[t - i];
                    part += 3.0 * sigma_d3(zm, zm, zi, c[0], c[i], c[i]) * M[i];
                    part += 3.0 * sigma_d3(zm, zi, zi, c[i], c[i], c[0]) * M[i];
                    for (int j = i + 1; j <= nb; ++j)
                        part += 6.0 * sigma_d3(zm, zi, z[t - j], c[i], c[j], c[j - i]) * M[i * w1 + (j - i)];
                }
                inc[t] = part;
            }
            break;
        }

        case process_kind::genhermite3: {
            // c[a][b][lag + W] = E[Z^a_k Z^b_{k+lag}]
            const int span = 2 * W + 1;
            std::vector<double> c(9 * static_cast<std::size_t>(span));
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    for (int lag = -W; lag <= W; ++lag) c[(a * 3 + b) * span + lag + W] = (*cov_)(a, b, lag);
            std::vector<double> M(static_cast<std::size_t>(span) * span);
            for (int k = -W; k <= W; ++k)
                for (int l = -W; l <= W; ++l) M[(k + W) * span + (l + W)] = table_->at(k, l);
            auto cv = [&](int a, int b, std::int64_t lag) { return c[(a * 3 + b) * span + lag + W]; };
            for (std::int64_t t = 0; t < n; ++t) {
                const int nb = static_cast<int>(std::min<std::int64_t>(W, t));
                double part = 0.0;
                // every ordered arrangement of each multiset {t, t-i, t-j}, 0 <= i <= j <= nb
                for (int i = 0; i <= nb; ++i)
                    for (int j = i; j <= nb; ++j) {
                        std::array<std::int64_t, 3> k{t - j, t - i, t};
                        do {
                            double s = sigma_d3(Z[0][k[0]], Z[1][k[1]], Z[2][k[2]], cv(0, 1, k[1] - k[0]),
                                                cv(0, 2, k[2] - k[0]), cv(1, 2, k[2] - k[1]));
                            part += s * M[(k[1] - k[0] + W) * span + (k[2] - k[1] + W)];
                        } while (std::next_permutation(k.begin(), k.end()));
                    }
                inc[t] = part;
            }
            break;
        }
    }
    for (double& v : inc) v *= scale_;
    return inc;
}

std::vector<double> simulator::increments(std::uint64_t seed) const {
    noise::keyed_field field(seed, cfg_.J);
    return increments(field);
}

sample_path simulator::path(const noise::gaussian_field& field, std::uint64_t seed_label) const {
    auto inc = increments(field);
    sample_path p;
    p.m0 = range_.m0;
    p.mmax = range_.mmax;
    p.J = cfg_.J;
    p.config_hash = cfg_.hash();
    p.seed = seed_label;
    const std::size_t n = inc.size();
    p.times.resize(n + 1);
    p.values.resize(n + 1);
    p.times[0] = 0.0;
    p.values[0] = 0.0;
    const double offset = std::exp2(-cfg_.a * cfg_.J);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s += inc[i];
        p.times[i + 1] = std::ldexp(static_cast<double>(range_.m0 + static_cast<std::int64_t>(i)), -cfg_.J) + offset;
        p.values[i + 1] = s;
    }
    return p;
}

sample_path simulator::path(std::uint64_t seed) const {
    noise::keyed_field field(seed, cfg_.J);
    return path(field, seed);
}

std::vector<double> simulate_increments(const simulation_config& cfg) {
    return simulator(cfg).increments(cfg.seed);
}

sample_path build_path(const simulation_config& cfg) { return simulator(cfg).path(cfg.seed); }

double evaluate_path_at(const sample_path& path, double t) {
    const auto& x = path.times;
    if (x.size() < 2) throw parameter_error("evaluate_path: path has no knots");
    if (!(t >= 0.0 && t <= x.back())) throw domain_error("evaluate_path: time outside [0, last knot]");
    auto it = std::upper_bound(x.begin(), x.end(), t);
    std::size_t i = it == x.end() ? x.size() - 1 : static_cast<std::size_t>(it - x.begin());
    if (i == 0) i = 1;
    const double x0 = x[i - 1], x1 = x[i];
    if (t == x1) return path.values[i];
    const double u = (t - x0) / (x1 - x0);
    return path.values[i - 1] + u * (path.values[i] - path.values[i - 1]);
}

std::vector<double> evaluate_path(const sample_path& path, std::span<const double> times) {
    std::vector<double> out(times.size());
    if (!std::is_sorted(times.begin(), times.end())) {
        for (std::size_t q = 0; q < times.size(); ++q) out[q] = evaluate_path_at(path, times[q]);
        return out;
    }
    const auto& x = path.times;
    if (x.size() < 2) throw parameter_error("evaluate_path: path has no knots");
    std::size_t i = 1;
    for (std::size_t q = 0; q < times.size(); ++q) {
        const double t = times[q];
        if (!(t >= 0.0 && t <= x.back())) throw domain_error("evaluate_path: time outside [0, last knot]");
        while (i + 1 < x.size() && x[i] < t) ++i;
        if (t == x[i]) {
            out[q] = path.values[i];
            continue;
        }
        const double u = (t - x[i - 1]) / (x[i] - x[i - 1]);
        out[q] = path.values[i - 1] + u * (path.values[i] - path.values[i - 1]);
    }
    return out;
}

}  // namespace hsim
