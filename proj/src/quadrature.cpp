#include "hsim/quadrature.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <json.hpp>

#include "hsim/digest.hpp"
#include "hsim/errors.hpp"
#include "hsim/meyer.hpp"

namespace hsim {

namespace {

using cplx = std::complex<double>;
constexpr int cache_version = 1;

template <int N>
void reference_rule(std::vector<double>& x, std::vector<double>& w) {
    using rule = boost::math::quadrature::gauss<double, N>;
    const auto& a = rule::abscissa();
    const auto& b = rule::weights();
    x.clear();
    w.clear();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) {
            x.push_back(0.0);
            w.push_back(b[i]);
        } else {
            x.push_back(-a[i]);
            w.push_back(b[i]);
            x.push_back(a[i]);
            w.push_back(b[i]);
        }
    }
}

void check_meta(const quadrature_meta& m) {
    if (m.order != 16 && m.order != 32 && m.order != 64)
        throw parameter_error("quadrature: order must be 16, 32 or 64");
    if (m.panels < 1 || m.panels > (1 << 14)) throw parameter_error("quadrature: panel count out of range");
}

void check_H(double H) {
    if (!std::isfinite(H) || !(H > 0.5 && H < 1.0)) throw parameter_error("quadrature: H must lie in (1/2, 1)");
}

void check_kmax(int kmax) {
    if (kmax < 0 || kmax > 4096) throw parameter_error("quadrature: kmax out of range");
}

// Positive on the open support, so real powers are well defined there.
double sinc_pow(double x, double e) {
    double s = meyer::sinc_half(x);
    return s > 0.0 ? std::pow(s, e) : 0.0;
}

// T(k, l) = sum_{a,b} w_a w_b F(x_a, x_b) e^{i x_a (k + c1)} e^{i x_b (l + c2)},
// accumulated one xi row at a time (two one-dimensional transforms).
std::vector<cplx> double_integral(const double e[3], double c1, double c2, int k0, int k1, int l0, int l1,
                                  const quadrature_meta& meta) {
    std::vector<double> x, w;
    composite_rule(-meyer::support_edge, meyer::support_edge, meta, x, w);
    const std::size_t n = x.size();
    const int nk = k1 - k0 + 1, nl = l1 - l0 + 1;

    std::vector<double> A(n), B(n);
    for (std::size_t a = 0; a < n; ++a) {
        double p = meyer::eval_phi_hat(x[a]);
        A[a] = w[a] * p * sinc_pow(x[a], e[0]);
        B[a] = w[a] * p * sinc_pow(x[a], e[2]);
    }
    std::vector<cplx> E(n * nl);
    for (std::size_t b = 0; b < n; ++b)
        for (int l = 0; l < nl; ++l) E[b * nl + l] = std::polar(1.0, x[b] * (l0 + l + c2));

    std::vector<cplx> G(n * nl, cplx{});
    std::vector<double> row(n);
    for (std::size_t a = 0; a < n; ++a) {
        if (A[a] == 0.0) continue;
        for (std::size_t b = 0; b < n; ++b) {
            double u = x[a] - x[b];
            double f = B[b] == 0.0 ? 0.0 : meyer::eval_phi_hat(u);
            row[b] = f == 0.0 ? 0.0 : A[a] * B[b] * f * sinc_pow(u, e[1]);
        }
        cplx* g = &G[a * nl];
        for (std::size_t b = 0; b < n; ++b) {
            if (row[b] == 0.0) continue;
            const cplx* eb = &E[b * nl];
            for (int l = 0; l < nl; ++l) g[l] += row[b] * eb[l];
        }
    }
    std::vector<cplx> T(static_cast<std::size_t>(nk) * nl, cplx{});
    for (std::size_t a = 0; a < n; ++a) {
        if (A[a] == 0.0) continue;
        const cplx* g = &G[a * nl];
        for (int k = 0; k < nk; ++k) {
            cplx ph = std::polar(1.0, x[a] * (k0 + k + c1));
            for (int l = 0; l < nl; ++l) T[static_cast<std::size_t>(k) * nl + l] += ph * g[l];
        }
    }
    return T;
}

integral_table finish(table_kind kind, int kmax, std::vector<double> params, const quadrature_meta& meta,
                      const std::vector<cplx>& T) {
    integral_table t;
    t.kind = kind;
    t.kmax = kmax;
    t.params = std::move(params);
    t.meta = meta;
    t.values.reserve(T.size());
    double scale = 0.0;
    for (const auto& z : T) {
        t.values.push_back(z.real());
        t.max_imag = std::max(t.max_imag, std::fabs(z.imag()));
        scale = std::max(scale, std::fabs(z.real()));
    }
    // The integrands are conjugate symmetric; a sizeable imaginary part means a bug.
    if (t.max_imag > 1e-8 * std::max(1.0, scale))
        throw internal_error("integral table: imaginary part " + std::to_string(t.max_imag) + " not negligible");
    return t;
}

}  // namespace

const char* to_string(table_kind k) {
    switch (k) {
        case table_kind::d2: return "d2";
        case table_kind::d3: return "d3";
        case table_kind::gen3: return "gen3";
    }
    return "?";
}

void composite_rule(double lo, double hi, const quadrature_meta& meta, std::vector<double>& x, std::vector<double>& w) {
    check_meta(meta);
    std::vector<double> rx, rw;
    if (meta.order == 16) reference_rule<16>(rx, rw);
    else if (meta.order == 32) reference_rule<32>(rx, rw);
    else reference_rule<64>(rx, rw);
    x.clear();
    w.clear();
    x.reserve(rx.size() * meta.panels);
    w.reserve(rx.size() * meta.panels);
    const double h = (hi - lo) / meta.panels;
    for (int p = 0; p < meta.panels; ++p) {
        double c = lo + (p + 0.5) * h;
        for (std::size_t i = 0; i < rx.size(); ++i) {
            x.push_back(c + 0.5 * h * rx[i]);
            w.push_back(0.5 * h * rw[i]);
        }
    }
}

double integral_table::at(int k) const {
    if (kind != table_kind::d2) throw internal_error("integral table: 1D access on a 2D table");
    int a = std::abs(k);
    if (a > kmax) throw internal_error("integral table: lag " + std::to_string(k) + " outside table");
    return values[static_cast<std::size_t>(a)];
}

double integral_table::at(int k, int l) const {
    if (kind == table_kind::d2) throw internal_error("integral table: 2D access on a 1D table");
    if (kind == table_kind::d3) {
        if (k <= 0 && l <= 0) {
            k = -k;
            l = -l;
        }
        if (k < 0 || l < 0 || k > kmax || l > kmax)
            throw internal_error("integral table: offset outside equal-h table");
        return values[static_cast<std::size_t>(k) * (kmax + 1) + l];
    }
    if (std::abs(k) > kmax || std::abs(l) > kmax) throw internal_error("integral table: offset outside table");
    return values[static_cast<std::size_t>(k + kmax) * (2 * kmax + 1) + (l + kmax)];
}

std::string integral_table::cache_key() const {
    std::ostringstream os;
    os << "v" << cache_version << ";kind=" << to_string(kind) << ";kmax=" << kmax << ";order=" << meta.order
       << ";panels=" << meta.panels << ";params=";
    for (std::size_t i = 0; i < params.size(); ++i) os << (i ? "," : "") << hex_double(params[i]);
    return os.str();
}

integral_table integral_vector_d2_exponent(double exponent, int kmax, const quadrature_meta& meta) {
    check_kmax(kmax);
    std::vector<double> x, w;
    composite_rule(-meyer::support_edge, meyer::support_edge, meta, x, w);
    std::vector<double> f(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double p = meyer::eval_phi_hat(x[i]);
        f[i] = w[i] * p * p * sinc_pow(x[i], exponent);
    }
    std::vector<cplx> T(static_cast<std::size_t>(kmax) + 1);
    for (int k = 0; k <= kmax; ++k) {
        cplx acc{};
        for (std::size_t i = 0; i < x.size(); ++i) acc += f[i] * std::polar(1.0, k * x[i]);
        T[k] = acc;
    }
    return finish(table_kind::d2, kmax, {exponent}, meta, T);
}

integral_table integral_vector_d2(double H, int kmax, const quadrature_meta& meta) {
    check_H(H);
    return integral_vector_d2_exponent(H, kmax, meta);
}

integral_table integral_matrix_d3(double H, int kmax, const quadrature_meta& meta) {
    check_H(H);
    check_kmax(kmax);
    check_meta(meta);
    double d = (2.0 * H + 1.0) / 6.0;
    double e[3] = {d, d, d};
    auto T = double_integral(e, 0.0, 0.0, 0, kmax, 0, kmax, meta);
    return finish(table_kind::d3, kmax, {H}, meta, T);
}

integral_table integral_matrix_gen3(const hurst_vector& h, int kmax, const quadrature_meta& meta) {
    if (h.order() != 3) throw parameter_error("integral_matrix_gen3: order must be 3");
    check_kmax(kmax);
    check_meta(meta);
    double e[3] = {h.delta(0), h.delta(1), h.delta(2)};
    double c1 = 0.5 * (h[1] - h[0]), c2 = 0.5 * (h[2] - h[1]);
    auto T = double_integral(e, c1, c2, -kmax, kmax, -kmax, kmax, meta);
    return finish(table_kind::gen3, kmax, {h[0], h[1], h[2]}, meta, T);
}

table_cache::table_cache(std::filesystem::path dir) : dir_(std::move(dir)) {
    if (dir_.empty()) throw parameter_error("table_cache: empty directory");
}

std::optional<std::filesystem::path> table_cache::env_dir() {
    const char* v = std::getenv("HERMITE_SIM_CACHE");
    if (v && *v) return std::filesystem::path(v);
    return std::nullopt;
}

std::filesystem::path table_cache::file_for(const std::string& key) const {
    return dir_ / ("table-" + hex64(fnv1a64(key)) + ".json");
}

std::optional<integral_table> table_cache::load(const std::string& key) const {
    std::ifstream in(file_for(key));
    if (!in) return std::nullopt;
    try {
        auto j = nlohmann::json::parse(in);
        if (j.at("format") != "hermite-sim-table" || j.at("key") != key) return std::nullopt;
        integral_table t;
        std::string kind = j.at("kind");
        t.kind = kind == "d2" ? table_kind::d2 : kind == "d3" ? table_kind::d3 : table_kind::gen3;
        t.kmax = j.at("kmax");
        t.params = j.at("params").get<std::vector<double>>();
        t.meta.order = j.at("order");
        t.meta.panels = j.at("panels");
        t.values = j.at("values").get<std::vector<double>>();
        t.max_imag = j.at("max_imag");
        if (t.cache_key() != key) return std::nullopt;
        return t;
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;  // unreadable entry: recompute
    }
}

void table_cache::store(const integral_table& t) const {
    std::filesystem::create_directories(dir_);
    nlohmann::json j;
    j["format"] = "hermite-sim-table";
    j["version"] = cache_version;
    j["key"] = t.cache_key();
    j["kind"] = to_string(t.kind);
    j["kmax"] = t.kmax;
    j["params"] = t.params;
    j["order"] = t.meta.order;
    j["panels"] = t.meta.panels;
    j["values"] = t.values;
    j["max_imag"] = t.max_imag;
    auto path = file_for(t.cache_key());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw parameter_error("table_cache: cannot write " + tmp.string());
        out << j.dump() << '\n';
    }
    std::filesystem::rename(tmp, path);
}

integral_table get_table(table_kind kind, const std::vector<double>& params, int kmax, const quadrature_meta& meta,
                         const table_cache* cache) {
    integral_table proto;
    proto.kind = kind;
    proto.kmax = kmax;
    proto.params = params;
    proto.meta = meta;
    const std::string key = proto.cache_key();
    if (cache)
        if (auto t = cache->load(key)) return *t;
    integral_table t;
    switch (kind) {
        case table_kind::d2: t = integral_vector_d2(params.at(0), kmax, meta); break;
        case table_kind::d3: t = integral_matrix_d3(params.at(0), kmax, meta); break;
        case table_kind::gen3:
            t = integral_matrix_gen3(hurst_vector({params.at(0), params.at(1), params.at(2)}), kmax, meta);
            break;
    }
    if (cache) cache->store(t);
    return t;
}

}  // namespace hsim
