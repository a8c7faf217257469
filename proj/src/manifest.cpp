#include "hsim/manifest.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include "hsim/digest.hpp"
#include "hsim/errors.hpp"

namespace hsim {

using nlohmann::json;

json to_json(const simulation_config& c) {
    json j;
    j["process"] = to_string(c.kind);
    j["h"] = std::vector<double>(c.h.h().begin(), c.h.h().end());
    j["H"] = c.h.H();
    j["J"] = c.J;
    j["a"] = c.a;
    j["epsilon"] = c.epsilon;
    j["T"] = c.T;
    j["seed"] = c.seed;
    j["normalized"] = c.normalized;
    j["truncation"] = c.truncation;
    j["tail_tolerance"] = c.tail_tolerance;
    j["convolution"] = c.convolution == convolution_method::fft ? "fft" : "direct";
    j["quadrature"] = {{"order", c.quad.order}, {"panels", c.quad.panels}};
    return j;
}

simulation_config config_from_json(const json& j) {
    try {
        simulation_config c;
        c.kind = parse_process_kind(j.at("process").get<std::string>());
        c.h = hurst_vector(j.at("h").get<std::vector<double>>());
        c.J = j.at("J");
        c.a = j.at("a");
        c.epsilon = j.at("epsilon");
        c.T = j.at("T");
        c.seed = j.at("seed");
        c.normalized = j.at("normalized");
        c.truncation = j.at("truncation");
        c.tail_tolerance = j.at("tail_tolerance");
        std::string conv = j.at("convolution");
        if (conv != "fft" && conv != "direct") throw parameter_error("manifest: unknown convolution " + conv);
        c.convolution = conv == "fft" ? convolution_method::fft : convolution_method::direct;
        c.quad.order = j.at("quadrature").at("order");
        c.quad.panels = j.at("quadrature").at("panels");
        return c;
    } catch (const json::exception& e) {
        throw parameter_error(std::string("manifest: malformed config: ") + e.what());
    }
}

json to_json(const run_manifest& m) {
    json j;
    j["tool"] = "hermite-sim";
    j["tool_version"] = m.tool_version;
    j["config"] = to_json(m.request.config);
    j["config_hash"] = m.config_hash;
    j["paths"] = m.request.paths;
    j["format"] = m.request.format;
    j["grid"] = m.request.grid;
    j["seed_scheme"] = seed_scheme;
    j["path_seeds"] = m.path_seeds;
    j["table_cache_keys"] = m.table_keys;
    j["wall_clock_seconds"] = m.wall_clock_seconds;
    json outs = json::array();
    for (const auto& o : m.outputs) outs.push_back({{"file", o.file}, {"fnv1a64", o.digest}});
    j["outputs"] = outs;
    return j;
}

run_manifest manifest_from_json(const json& j) {
    run_manifest m;
    m.request.config = config_from_json(j.at("config"));
    try {
        m.request.paths = j.at("paths");
        m.request.format = j.at("format");
        m.request.grid = j.value("grid", 0);
        m.tool_version = j.value("tool_version", "");
        m.config_hash = j.value("config_hash", "");
        m.path_seeds = j.value("path_seeds", std::vector<std::uint64_t>{});
        m.table_keys = j.value("table_cache_keys", std::vector<std::string>{});
        m.wall_clock_seconds = j.value("wall_clock_seconds", 0.0);
        for (const auto& o : j.value("outputs", json::array()))
            m.outputs.push_back({o.at("file").get<std::string>(), o.at("fnv1a64").get<std::string>()});
    } catch (const json::exception& e) {
        throw parameter_error(std::string("manifest: malformed: ") + e.what());
    }
    return m;
}

run_manifest read_manifest(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw parameter_error("cannot open manifest " + file.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw parameter_error("manifest " + file.string() + " is not valid JSON: " + e.what());
    }
    return manifest_from_json(j);
}

void write_manifest(const run_manifest& m, const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw parameter_error("cannot write manifest " + file.string());
    out << to_json(m).dump(2) << '\n';
}

std::string file_digest(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw parameter_error("cannot read " + file.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return hex64(fnv1a64(bytes));
}

}  // namespace hsim
