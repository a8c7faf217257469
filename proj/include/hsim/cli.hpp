#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "hsim/manifest.hpp"
#include "hsim/quadrature.hpp"

namespace hsim::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_usage = 2;

// Writes one file per path plus manifest.json into out_dir.
run_manifest generate(const run_request& req, const std::filesystem::path& out_dir, const table_cache* cache = nullptr);

// Full command line: `generate ...` or `verify ...`. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hsim::cli
