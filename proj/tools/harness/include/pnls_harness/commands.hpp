#pragma once

#include "pnls_harness/config.hpp"
#include "pnls_harness/manifest.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace pnls::harness {

inline constexpr int exit_ok = 0;
inline constexpr int exit_validation = 1;
inline constexpr int exit_schema = 2;

struct RunOptions {
    std::string config_path;
    std::optional<std::filesystem::path> out;  // overrides [output] dir
    int threads = 1;
    std::optional<std::uint64_t> seed_override;
};

const char* code_version();

// Runs one experiment command and writes runs/<run_id>/ with CSVs and manifest.json.
// Returns exit_ok, exit_validation or exit_schema. Nothing is written on a schema error.
int run(Command command, const RunOptions& options, std::ostream& log);

// Collects every runs/*/manifest.json under `runs_dir` into report.csv.
int report(const std::filesystem::path& runs_dir, std::ostream& log);

}  // namespace pnls::harness
