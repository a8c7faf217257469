#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "hsim/simulator.hpp"

namespace hsim {

// Everything needed to regenerate the output files of a `generate` run.
struct run_request {
    simulation_config config;
    int paths = 1;
    std::string format = "csv";  // csv | json
    int grid = 0;                // 0: knot resolution, else uniform grid points on [0, last knot]
};

struct output_record {
    std::string file;
    std::string digest;  // fnv1a64 of the file bytes
};

struct run_manifest {
    run_request request;
    std::string tool_version;
    std::string config_hash;
    std::vector<std::uint64_t> path_seeds;
    std::vector<std::string> table_keys;
    double wall_clock_seconds = 0.0;
    std::vector<output_record> outputs;
};

nlohmann::json to_json(const simulation_config& c);
simulation_config config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const run_manifest& m);
run_manifest manifest_from_json(const nlohmann::json& j);

run_manifest read_manifest(const std::filesystem::path& file);
void write_manifest(const run_manifest& m, const std::filesystem::path& file);

std::string file_digest(const std::filesystem::path& file);
inline constexpr const char* seed_scheme = "seed_i = splitmix64(master ^ splitmix64(i + 1))";

}  // namespace hsim
