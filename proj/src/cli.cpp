#include "hsim/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hsim/digest.hpp"
#include "hsim/errors.hpp"
#include "hsim/rng.hpp"
#include "hsim/verify.hpp"

namespace hsim::cli {

namespace fs = std::filesystem;

namespace {

std::string number17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_atomically(const fs::path& file, const std::string& bytes) {
    fs::path tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw parameter_error("cannot write " + tmp.string());
        out << bytes;
        if (!out) throw parameter_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, file);
}

std::string render(const sample_path& p, const run_request& req) {
    std::vector<double> t = p.times, v = p.values;
    if (req.grid > 0) {
        t.resize(static_cast<std::size_t>(req.grid));
        for (int i = 0; i < req.grid; ++i)
            t[i] = req.grid == 1 ? 0.0 : p.last_time() * static_cast<double>(i) / (req.grid - 1);
        t.back() = req.grid == 1 ? 0.0 : p.last_time();
        v = evaluate_path(p, t);
    }
    std::string s;
    if (req.format == "csv") {
        s = "t,value\n";
        for (std::size_t i = 0; i < t.size(); ++i) s += number17(t[i]) + "," + number17(v[i]) + "\n";
    } else {
        nlohmann::json j;
        j["config_hash"] = p.config_hash;
        j["seed"] = p.seed;
        j["J"] = p.J;
        j["m0"] = p.m0;
        j["mmax"] = p.mmax;
        j["interpolation"] = p.interpolation;
        j["t"] = t;
        j["value"] = v;
        s = j.dump() + "\n";
    }
    return s;
}

struct common_flags {
    std::string process = "fbm";
    double hurst = 0.7;
    std::vector<double> h;
    int J = -1;
    double a = 0.75;
    double epsilon = -1.0;
    double T = 1.0;
    std::uint64_t seed = 0;
    int paths = -1;
    bool normalized = false;
    std::string cache;
    std::int64_t truncation = 0;
    double tail_tolerance = 1e-4;
    std::string convolution = "fft";
};

void add_common(CLI::App* app, common_flags& f) {
    app->add_option("--process", f.process, "Process kind")
        ->check(CLI::IsMember({"fbm", "rosenblatt", "hermite3", "genhermite3"}));
    app->add_option("--hurst", f.hurst, "Self-similarity index H in (1/2,1) (equal exponents)");
    app->add_option("--h", f.h, "Exponents h1,h2,h3 (genhermite3)")->delimiter(',');
    app->add_option("-J", f.J, "Scale J");
    app->add_option("-a", f.a, "Offset exponent a in (1/2,1)");
    app->add_option("--epsilon", f.epsilon, "Band exponent: tuples with spread <= 2^(epsilon J) are kept");
    app->add_option("-T", f.T, "Horizon");
    app->add_option("--seed", f.seed, "Master seed");
    app->add_option("--paths", f.paths, "Number of paths");
    app->add_flag("--normalized", f.normalized, "Scale to unit variance at t=1 (equal exponents only)");
    app->add_option("--cache", f.cache, "Integral-table cache directory")->envname("HERMITE_SIM_CACHE");
    app->add_option("--truncation", f.truncation, "FARIMA near-field length P (0: max(2^J, 1e4))");
    app->add_option("--tail-tolerance", f.tail_tolerance, "FARIMA remote-past tolerance (0: bare truncation)");
    app->add_option("--convolution", f.convolution, "FARIMA near-field convolution")
        ->check(CLI::IsMember({"fft", "direct"}));
}

simulation_config build_config(const common_flags& f, double default_epsilon) {
    simulation_config c;
    c.kind = parse_process_kind(f.process);
    if (!f.h.empty()) {
        if (c.kind != process_kind::genhermite3 && static_cast<int>(f.h.size()) != process_order(c.kind))
            throw configuration_error("--h needs " + std::to_string(process_order(c.kind)) + " values for " + f.process);
        c.h = hurst_vector(f.h);
    } else {
        c.h = hurst_vector::equal(process_order(c.kind), f.hurst);
    }
    c.J = f.J >= 0 ? f.J : (c.kind == process_kind::genhermite3 ? 15 : 20);
    c.a = f.a;
    c.epsilon = f.epsilon > 0 ? f.epsilon : default_epsilon;
    c.T = f.T;
    c.seed = f.seed;
    c.normalized = f.normalized;
    c.truncation = f.truncation;
    c.tail_tolerance = f.tail_tolerance;
    c.convolution = f.convolution == "direct" ? convolution_method::direct : convolution_method::fft;
    return c;
}

std::unique_ptr<table_cache> open_cache(const std::string& dir) {
    if (dir.empty()) return nullptr;
    return std::make_unique<table_cache>(dir);
}

void print_checks(const std::vector<check_result>& checks, bool& all, std::ostream& out) {
    for (const auto& c : checks) {
        all = all && c.pass;
        out << (c.pass ? "PASS " : "FAIL ") << c.name << ": measured " << c.measured << ", bound " << c.tolerance;
        if (!c.detail.empty()) out << " (" << c.detail << ")";
        out << "\n";
    }
}

}  // namespace

run_manifest generate(const run_request& req, const fs::path& out_dir, const table_cache* cache) {
    if (req.paths < 1) throw parameter_error("--paths must be at least 1");
    if (req.format != "csv" && req.format != "json") throw parameter_error("--format must be csv or json");
    if (req.grid < 0) throw parameter_error("--grid must be non-negative");
    auto t0 = std::chrono::steady_clock::now();
    simulator sim(req.config, cache);
    fs::create_directories(out_dir);
    run_manifest m;
    m.request = req;
    m.tool_version = HSIM_VERSION;
    m.config_hash = req.config.hash();
    m.table_keys = sim.table_keys();
    for (int i = 0; i < req.paths; ++i) {
        std::uint64_t s = rng::path_seed(req.config.seed, static_cast<std::uint64_t>(i));
        m.path_seeds.push_back(s);
        auto p = sim.path(s);
        char name[64];
        std::snprintf(name, sizeof name, "path_%04d.%s", i, req.format.c_str());
        auto bytes = render(p, req);
        write_atomically(out_dir / name, bytes);
        m.outputs.push_back({name, hex64(fnv1a64(bytes))});
    }
    m.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(m, out_dir / "manifest.json");
    return m;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Wavelet-based synthesis of Hermite and generalized Hermite process paths", "hermite-sim"};
    // "-h" would clash with the "--h" exponent option
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    app.set_version_flag("--version", HSIM_VERSION);

    common_flags gf;
    std::string format = "csv", out_dir = ".", manifest;
    int grid = 0;
    auto* gen = app.add_subcommand("generate", "Generate sample paths");
    add_common(gen, gf);
    gen->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    gen->add_option("--out", out_dir, "Output directory");
    gen->add_option("--grid", grid, "Evaluate on this many uniform points instead of the knots");
    gen->add_option("--manifest", manifest, "Re-run the configuration recorded in a manifest");

    common_flags vf;
    std::string suite = "moments";
    std::vector<int> scales;
    int seeds = 1;
    auto* ver = app.add_subcommand("verify", "Run verification checks; exit code 0 iff all pass");
    add_common(ver, vf);
    ver->add_option("--suite", suite, "properties | moments | rate")
        ->check(CLI::IsMember({"properties", "moments", "rate"}));
    ver->add_option("--scales", scales, "Scales for the rate suite (default 8..14)")->delimiter(',');
    ver->add_option("--seeds", seeds, "Independent seeds averaged by the rate suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::Success&) {
        out << HSIM_VERSION << "\n";
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return exit_usage;
    }

    try {
        if (gen->parsed()) {
            auto cache = open_cache(gf.cache);
            run_request req;
            std::optional<run_manifest> prior;
            if (!manifest.empty()) {
                prior = read_manifest(manifest);
                req = prior->request;
            } else {
                req.config = build_config(gf, 1e-4);
                req.paths = gf.paths > 0 ? gf.paths : 1;
                req.format = format;
                req.grid = grid;
            }
            for (const auto& w : req.config.validate()) err << "warning: " << w << "\n";
            auto m = generate(req, out_dir, cache.get());
            out << "wrote " << m.outputs.size() << " path(s) and manifest.json to " << out_dir << "\n";
            if (prior) {
                bool same = prior->outputs.size() == m.outputs.size();
                for (std::size_t i = 0; same && i < m.outputs.size(); ++i)
                    same = prior->outputs[i].file == m.outputs[i].file && prior->outputs[i].digest == m.outputs[i].digest;
                out << (same ? "reproduced: output digests match the manifest\n"
                             : "MISMATCH: output digests differ from the manifest\n");
                return same ? exit_ok : exit_failure;
            }
            return exit_ok;
        }

        auto cache = open_cache(vf.cache);
        bool all = true;
        if (suite == "properties") {
            print_checks(run_properties_suite(), all, out);
        } else if (suite == "moments") {
            auto cfg = build_config(vf, 0.5);
            if (vf.J < 0) cfg.J = 12;
            int paths = vf.paths > 0 ? vf.paths : 200;
            if (paths < 20) {
                err << "error: the moments suite needs --paths >= 20\n";
                return exit_usage;
            }
            print_checks(run_moments_suite(cfg, paths, cache.get()), all, out);
        } else {
            auto cfg = build_config(vf, 0.5);
            if (scales.empty()) scales = {8, 9, 10, 11, 12, 13, 14};
            if (scales.size() < 3) {
                err << "error: the rate suite needs at least 3 scales\n";
                return exit_usage;
            }
            print_checks(run_rate_suite(cfg, scales, vf.seed, seeds, 0.15, cache.get()), all, out);
        }
        out << (all ? "all checks passed\n" : "some checks FAILED\n");
        return all ? exit_ok : exit_failure;
    } catch (const configuration_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const parameter_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_failure;
    }
}

}  // namespace hsim::cli
