#include "hsim/farima.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstring>
#include <memory>
#include <mutex>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "hsim/errors.hpp"

namespace hsim {

namespace {

constexpr double pi = 3.14159265358979323846;
constexpr std::int64_t index_limit = std::int64_t{1} << 60;
constexpr int spread_ratio = 8;  // remote blocks sit at least this many block lengths away
constexpr int level_cap = 1000;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

void check_delta(double delta, const char* who) {
    if (!std::isfinite(delta) || !(std::fabs(delta) < 0.5))
        throw parameter_error(std::string(who) + ": delta must lie in (-1/2, 1/2)");
}

// log Gamma(x+delta) - log Gamma(x)
double log_gamma_ratio(double delta, double x) {
    if (x < 256.0) return std::lgamma(x + delta) - std::lgamma(x);
    // Bernoulli-polynomial expansion of log Gamma(x+a) - log Gamma(x)
    double d = delta, d2 = d * d, d3 = d2 * d, d4 = d2 * d2, d5 = d4 * d;
    double c1 = (d2 - d) / 2.0;
    double c2 = -(d3 - 1.5 * d2 + 0.5 * d) / 6.0;
    double c3 = (d4 - 2.0 * d3 + d2) / 12.0;
    double c4 = -(d5 - 2.5 * d4 + (5.0 / 3.0) * d3 - d / 6.0) / 20.0;
    double y = 1.0 / x;
    return d * std::log(x) + y * (c1 + y * (c2 + y * (c3 + y * c4)));
}

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// Overlap-save convolution with a fixed kernel on a chunk grid anchored at 0.
class chunk_convolver {
public:
    chunk_convolver(const std::vector<double>& kernel, std::int64_t P)
        : P_(P), N_(static_cast<std::int64_t>(std::bit_ceil(static_cast<std::uint64_t>(std::max<std::int64_t>(2 * (P + 1), 4096))))) {
        C_ = N_ - P_;
        nc_ = N_ / 2 + 1;
        in_ = fftw_alloc_real(N_);
        out_ = fftw_alloc_real(N_);
        spec_ = fftw_alloc_complex(nc_);
        kspec_ = fftw_alloc_complex(nc_);
        {
            std::lock_guard lock(planner_mutex());
            fwd_ = fftw_plan_dft_r2c_1d(static_cast<int>(N_), in_, spec_, FFTW_ESTIMATE);
            inv_ = fftw_plan_dft_c2r_1d(static_cast<int>(N_), spec_, out_, FFTW_ESTIMATE);
        }
        std::fill(in_, in_ + N_, 0.0);
        for (std::int64_t p = 0; p <= P_; ++p) in_[p] = kernel[p];
        fftw_execute(fwd_);
        std::memcpy(kspec_, spec_, sizeof(fftw_complex) * static_cast<std::size_t>(nc_));
    }
    ~chunk_convolver() {
        {
            std::lock_guard lock(planner_mutex());
            fftw_destroy_plan(fwd_);
            fftw_destroy_plan(inv_);
        }
        fftw_free(in_);
        fftw_free(out_);
        fftw_free(spec_);
        fftw_free(kspec_);
    }
    chunk_convolver(const chunk_convolver&) = delete;
    chunk_convolver& operator=(const chunk_convolver&) = delete;

    std::int64_t chunk() const { return C_; }

    // x holds g_{cC-P} .. g_{cC+C-1}; y receives the C outputs for l = cC .. cC+C-1
    void run(const double* x, double* y) {
        std::copy(x, x + N_, in_);
        fftw_execute(fwd_);
        auto* s = reinterpret_cast<std::complex<double>*>(spec_);
        auto* k = reinterpret_cast<const std::complex<double>*>(kspec_);
        for (std::int64_t i = 0; i < nc_; ++i) s[i] *= k[i];
        fftw_execute(inv_);
        const double scale = 1.0 / static_cast<double>(N_);
        for (std::int64_t t = 0; t < C_; ++t) y[t] = out_[P_ + t] * scale;
    }

private:
    std::int64_t P_, N_, C_ = 0, nc_ = 0;
    double* in_ = nullptr;
    double* out_ = nullptr;
    fftw_complex* spec_ = nullptr;
    fftw_complex* kspec_ = nullptr;
    fftw_plan fwd_ = nullptr;
    fftw_plan inv_ = nullptr;
};

// Level chain of the remote past for output index l: the level-L region is
// the block range [2 U_{L+1}, U_L) with U_0 the level-0 block holding l-P.
struct level_walk {
    std::int64_t U;  // current U_L
    int L = 0;
    std::int64_t next() const { return floor_div(U - spread_ratio, 2); }
};

}  // namespace

frac_weights gamma_weights(double delta, std::int64_t P) {
    check_delta(delta, "gamma_weights");
    if (P < 0) throw parameter_error("gamma_weights: negative truncation");
    frac_weights w;
    w.delta = delta;
    w.values.resize(static_cast<std::size_t>(P) + 1);
    w.values[0] = 1.0;
    for (std::int64_t p = 1; p <= P; ++p)
        w.values[p] = w.values[p - 1] * ((static_cast<double>(p) - 1.0 + delta) / static_cast<double>(p));
    return w;
}

double gamma_partial_sum(double delta, double x) {
    check_delta(delta, "gamma_partial_sum");
    if (!(x >= 1.0)) throw parameter_error("gamma_partial_sum: x must be >= 1");
    return std::exp(log_gamma_ratio(delta, x)) / std::tgamma(1.0 + delta);
}

std::int64_t default_truncation(int J) {
    if (J < 0 || J > 40) throw parameter_error("default_truncation: scale out of range");
    return std::max<std::int64_t>(std::int64_t{1} << J, 10000);
}

farima_sequence generate_farima(const noise::gaussian_field& field, double delta, std::int64_t start,
                                std::int64_t end, const farima_options& opts, int J) {
    check_delta(delta, "generate_farima");
    if (end < start) throw parameter_error("generate_farima: empty window");
    if (start <= -index_limit || end >= index_limit) throw parameter_error("generate_farima: window index overflow");
    const std::int64_t P = opts.truncation > 0 ? opts.truncation : default_truncation(J);
    if (P >= index_limit / 4) throw parameter_error("generate_farima: truncation too large");
    if (opts.tail_tolerance < 0 || opts.tail_tolerance >= 1 || opts.tail_distance < 0)
        throw parameter_error("generate_farima: bad remote-past controls");

    constexpr std::int64_t B = noise::base_block;
    const bool remote = delta != 0.0 && (opts.tail_distance > 0 || opts.tail_tolerance > 0);
    const auto gw = gamma_weights(delta, P + B);

    const std::int64_t M = end - start + 1;
    farima_sequence seq;
    seq.J = J;
    seq.delta = delta;
    seq.start_index = start;
    seq.end_index = end;
    seq.truncation = P;
    seq.tail_tolerance = remote ? opts.tail_tolerance : 0.0;
    seq.values.assign(static_cast<std::size_t>(M), 0.0);
    if (const auto* kf = dynamic_cast<const noise::keyed_field*>(&field)) seq.noise_seed = kf->seed();

    // leaves needed by the near field and the partial level-0 block
    std::unique_ptr<chunk_convolver> conv;
    std::int64_t near_lo, near_hi;  // [lo, hi)
    if (opts.method == convolution_method::fft) {
        conv = std::make_unique<chunk_convolver>(gw.values, P);
        const std::int64_t C = conv->chunk();
        near_lo = floor_div(start, C) * C - P;
        near_hi = (floor_div(end, C) + 1) * C;
    } else {
        near_lo = start - P;
        near_hi = end + 1;
    }
    const std::int64_t leaf_lo = remote ? std::min(near_lo, floor_div(start - P, B) * B) : near_lo;
    std::vector<double> g(static_cast<std::size_t>(near_hi - leaf_lo));
    field.leaves(leaf_lo, g);
    seq.burn_in = start - leaf_lo;
    auto leaf = [&](std::int64_t j) { return g[static_cast<std::size_t>(j - leaf_lo)]; };

    if (conv) {
        const std::int64_t C = conv->chunk();
        std::vector<double> y(static_cast<std::size_t>(C));
        for (std::int64_t c = floor_div(start, C); c <= floor_div(end, C); ++c) {
            conv->run(&g[static_cast<std::size_t>(c * C - P - leaf_lo)], y.data());
            std::int64_t l0 = std::max(start, c * C), l1 = std::min(end, c * C + C - 1);
            for (std::int64_t l = l0; l <= l1; ++l) seq.values[l - start] = y[l - c * C];
        }
    } else {
        for (std::int64_t l = start; l <= end; ++l) {
            double acc = 0.0;
            for (std::int64_t p = 0; p <= P; ++p) acc += gw.values[p] * leaf(l - p);
            seq.values[l - start] = acc;
        }
    }
    if (!remote) return seq;

    // Remote past. Cutoff distance D from the requested relative tolerance on
    // the large-scale variance, (P/D)^{1-2 delta} ~ tol.
    double log2D;
    if (opts.tail_distance > 0)
        log2D = std::log2(opts.tail_distance);
    else
        log2D = std::log2(static_cast<double>(P)) - std::log2(opts.tail_tolerance) / (1.0 - 2.0 * delta);
    const int max_level = std::min(level_cap, field.max_level());

    auto within = [&](std::int64_t l, const level_walk& w) {
        if (w.L > max_level) return false;
        double d = static_cast<double>(l) - std::ldexp(static_cast<double>(w.U), w.L + noise::base_log2);
        return std::log2(d) < log2D;
    };

    // pass 1: block ranges per level
    std::vector<std::int64_t> lo_idx, hi_idx;
    for (std::int64_t l = start; l <= end; ++l) {
        level_walk w{floor_div(l - P, B)};
        while (within(l, w)) {
            std::int64_t a = 2 * w.next(), b = w.U;  // blocks [a, b)
            if (static_cast<std::size_t>(w.L) >= lo_idx.size()) {
                lo_idx.push_back(a);
                hi_idx.push_back(b);
            } else {
                lo_idx[w.L] = std::min(lo_idx[w.L], a);
                hi_idx[w.L] = std::max(hi_idx[w.L], b);
            }
            w.U = w.next();
            ++w.L;
        }
    }
    std::vector<std::vector<double>> sums(lo_idx.size());
    for (std::size_t L = 0; L < lo_idx.size(); ++L) {
        sums[L].resize(static_cast<std::size_t>(hi_idx[L] - lo_idx[L]));
        field.block_sums(static_cast<int>(L), lo_idx[L], sums[L]);
    }

    const double c_norm = 1.0 / std::tgamma(1.0 + delta);
    auto G = [&](double x) { return std::exp(log_gamma_ratio(delta, x)) * c_norm; };

    // pass 2: partial level-0 block, then whole blocks level by level
    for (std::int64_t l = start; l <= end; ++l) {
        level_walk w{floor_div(l - P, B)};
        double acc = 0.0;
        for (std::int64_t j = w.U * B; j < l - P; ++j) acc += gw.values[l - j] * leaf(j);
        double g_prev = G(static_cast<double>(l - w.U * B) + 1.0);
        while (within(l, w)) {
            const double size = std::ldexp(1.0, w.L + noise::base_log2);
            const double inv_size = 1.0 / size;
            const std::int64_t a = 2 * w.next();
            const auto& S = sums[w.L];
            const std::int64_t off = lo_idx[w.L];
            for (std::int64_t i = w.U - 1; i >= a; --i) {
                double x = static_cast<double>(l) - static_cast<double>(i) * size + 1.0;
                double gi = G(x);
                acc += (gi - g_prev) * inv_size * S[static_cast<std::size_t>(i - off)];
                g_prev = gi;
            }
            w.U = w.next();
            ++w.L;
        }
        seq.values[l - start] += acc;
    }
    return seq;
}

farima_sequence generate_farima(int J, double delta, std::int64_t start, std::int64_t end, std::uint64_t seed,
                                const farima_options& opts) {
    noise::keyed_field field(seed, J);
    return generate_farima(field, delta, start, end, opts, J);
}

double farima_covariance(double delta1, double delta2, std::int64_t lag) {
    check_delta(delta1, "farima_covariance");
    check_delta(delta2, "farima_covariance");
    using rule = boost::math::quadrature::gauss<double, 32>;
    // (1 - e^{-i xi}) = 2 sin(xi/2) e^{i(pi - xi)/2}; the integrand on (0, 2pi) is
    // conjugate-symmetric about pi, so the value is (1/pi) Re int_0^pi.
    const double alpha = delta1 + delta2;
    const double beta = delta1 - delta2;
    const double n = static_cast<double>(lag);
    auto f = [&](double xi) {
        return std::pow(2.0 * std::sin(0.5 * xi), -alpha) * std::cos(n * xi + 0.5 * beta * (pi - xi));
    };
    constexpr int levels = 60;
    double total = 0.0;
    for (int k = 0; k < levels; ++k) {
        double b = std::ldexp(pi, -k), a = 0.5 * b;
        int sub = 1 + static_cast<int>(std::fabs(n) * (b - a) / 4.0);
        double w = (b - a) / sub;
        for (int s = 0; s < sub; ++s) total += rule::integrate(f, a + s * w, a + (s + 1) * w);
    }
    // [0, eps]: integrand ~ xi^{-alpha} cos(beta pi / 2)
    double eps = std::ldexp(pi, -levels);
    total += std::cos(0.5 * beta * pi) * std::pow(eps, 1.0 - alpha) / (1.0 - alpha);
    return total / pi;
}

}  // namespace hsim
