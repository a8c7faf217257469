#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hsim/errors.hpp"
#include "hsim/farima.hpp"
#include "hsim/meyer.hpp"
#include "hsim/quadrature.hpp"
#include "hsim/simulator.hpp"
#include "hsim/stats.hpp"

namespace py = pybind11;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

hsim::simulation_config make(const std::string& process, double hurst, std::optional<std::vector<double>> h, int J,
                             double a, double epsilon, double T, std::uint64_t seed, bool normalized,
                             std::int64_t truncation, double tail_tolerance) {
    auto kind = hsim::parse_process_kind(process);
    hsim::simulation_config c = hsim::make_config(kind, hurst);
    if (h) c.h = hsim::hurst_vector(*h);
    c.J = J >= 0 ? J : (kind == hsim::process_kind::genhermite3 ? 15 : 20);
    c.a = a;
    c.epsilon = epsilon;
    c.T = T;
    c.seed = seed;
    c.normalized = normalized;
    c.truncation = truncation;
    c.tail_tolerance = tail_tolerance;
    return c;
}

py::dict path_dict(const hsim::sample_path& p) {
    py::dict d;
    d["t"] = to_array(p.times);
    d["value"] = to_array(p.values);
    d["m0"] = p.m0;
    d["mmax"] = p.mmax;
    d["J"] = p.J;
    d["seed"] = p.seed;
    d["config_hash"] = p.config_hash;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Wavelet-based synthesis of Hermite and generalized Hermite processes";
    m.attr("__version__") = HSIM_VERSION;

    py::register_exception<hsim::parameter_error>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<hsim::configuration_error>(m, "ConfigurationError", PyExc_ValueError);
    py::register_exception<hsim::estimation_error>(m, "EstimationError", PyExc_RuntimeError);

    m.def("phi_hat", [](py::array_t<double> xi) { return py::vectorize(hsim::meyer::eval_phi_hat)(xi); },
          py::arg("xi"));
    m.def("frac_scaling_hat", py::vectorize(hsim::meyer::eval_frac_scaling_hat), py::arg("delta"), py::arg("xi"));

    m.def("gamma_weights", [](double delta, std::int64_t P) { return to_array(hsim::gamma_weights(delta, P).values); },
          py::arg("delta"), py::arg("P"));
    m.def("farima_covariance", &hsim::farima_covariance, py::arg("delta1"), py::arg("delta2"), py::arg("lag"));
    m.def(
        "farima",
        [](int J, double delta, std::int64_t start, std::int64_t end, std::uint64_t seed, std::int64_t truncation,
           double tail_tolerance) {
            hsim::farima_options o;
            o.truncation = truncation;
            o.tail_tolerance = tail_tolerance;
            py::gil_scoped_release nogil;
            auto s = hsim::generate_farima(J, delta, start, end, seed, o);
            py::gil_scoped_acquire gil;
            return to_array(s.values);
        },
        py::arg("J"), py::arg("delta"), py::arg("start"), py::arg("end"), py::arg("seed") = 0,
        py::arg("truncation") = 0, py::arg("tail_tolerance") = 1e-4);

    m.def("integral_vector", [](double H, int kmax) { return to_array(hsim::integral_vector_d2(H, kmax).values); },
          py::arg("H"), py::arg("kmax"));
    m.def(
        "integral_matrix",
        [](std::vector<double> h, int kmax) {
            auto t = h.size() == 1 ? hsim::integral_matrix_d3(h[0], kmax)
                                   : hsim::integral_matrix_gen3(hsim::hurst_vector(h), kmax);
            auto n = static_cast<py::ssize_t>(t.kind == hsim::table_kind::d3 ? kmax + 1 : 2 * kmax + 1);
            py::array_t<double> out({n, n});
            std::copy(t.values.begin(), t.values.end(), out.mutable_data());
            return out;
        },
        py::arg("h"), py::arg("kmax"),
        "[H] gives the 0..kmax table, [h1,h2,h3] the -kmax..kmax table");

    m.def("index_bounds", [](int J, double a, double T) {
        auto r = hsim::index_bounds(J, a, T);
        return py::make_tuple(r.m0, r.mmax);
    }, py::arg("J"), py::arg("a"), py::arg("T"));
    m.def("diagonal_width", &hsim::diagonal_width, py::arg("J"), py::arg("epsilon"));
    m.def("normalization_constant", [](std::vector<double> h) {
        return hsim::normalization_constant(hsim::hurst_vector(std::move(h)));
    }, py::arg("h"));

    m.def(
        "simulate",
        [](const std::string& process, double hurst, std::optional<std::vector<double>> h, int J, double a,
           double epsilon, double T, std::uint64_t seed, bool normalized, int paths, std::int64_t truncation,
           double tail_tolerance) {
            auto cfg = make(process, hurst, h, J, a, epsilon, T, seed, normalized, truncation, tail_tolerance);
            std::vector<hsim::sample_path> out;
            {
                py::gil_scoped_release nogil;
                hsim::simulator sim(cfg);
                for (int i = 0; i < paths; ++i) out.push_back(sim.path(seed + static_cast<std::uint64_t>(i)));
            }
            py::list l;
            for (const auto& p : out) l.append(path_dict(p));
            return l;
        },
        py::arg("process") = "fbm", py::arg("hurst") = 0.7, py::arg("h") = py::none(), py::arg("J") = -1,
        py::arg("a") = 0.75, py::arg("epsilon") = 1e-4, py::arg("T") = 1.0, py::arg("seed") = 0,
        py::arg("normalized") = false, py::arg("paths") = 1, py::arg("truncation") = 0,
        py::arg("tail_tolerance") = 1e-4,
        "List of dicts with knot times 't' (starting at 0) and 'value'; path i uses seed + i");

    m.def(
        "estimate_hurst",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> x, double dt, std::vector<int> lags) {
            if (lags.empty()) lags = hsim::default_qv_lags();
            return hsim::estimate_hurst_qv(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())), dt,
                                           lags);
        },
        py::arg("samples"), py::arg("dt"), py::arg("lags") = std::vector<int>{});
}
