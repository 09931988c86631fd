#pragma once

#include <json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pnls::harness {

std::string sha256_hex(const std::string& data);
std::string utc_timestamp();
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

struct Check {
    std::string status;  // pass | fail | info
    double value = 0.0;
    std::optional<double> bound;
    std::string relation;
};

class Validation {
public:
    bool at_most(const std::string& name, double value, double bound);
    bool at_least(const std::string& name, double value, double bound);
    bool greater(const std::string& name, double value, double bound);
    void info(const std::string& name, double value);
    void fail(const std::string& name, const std::string& why);

    bool all_pass() const;
    std::vector<std::string> failures() const;
    const std::map<std::string, Check>& checks() const noexcept { return checks_; }
    nlohmann::json to_json() const;

private:
    bool record(const std::string& name, double value, double bound, const char* relation, bool ok);
    std::map<std::string, Check> checks_;
    std::map<std::string, std::string> reasons_;
};

struct RunManifest {
    std::string run_id;
    std::string command;
    std::string code_version;
    nlohmann::json config;
    std::string started;
    std::string finished;
    std::vector<std::string> outputs;
    Validation validation;

    nlohmann::json to_json() const;
};

// Content hash of the canonical config and the code version. The output directory is not part of it.
std::string make_run_id(const std::string& command, const nlohmann::json& config, const std::string& code_version);

}  // namespace pnls::harness
