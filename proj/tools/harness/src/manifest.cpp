#include "pnls_harness/manifest.hpp"

#include <openssl/evp.h>

#include <pnls/errors.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>

namespace pnls::harness {

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error("sha256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out << text;
        if (!out.flush()) throw Error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

bool Validation::record(const std::string& name, double value, double bound, const char* relation, bool ok) {
    checks_[name] = Check{std::isfinite(value) && ok ? "pass" : "fail", value, bound, relation};
    return checks_[name].status == "pass";
}

bool Validation::at_most(const std::string& name, double value, double bound) {
    return record(name, value, bound, "<=", value <= bound);
}
bool Validation::at_least(const std::string& name, double value, double bound) {
    return record(name, value, bound, ">=", value >= bound);
}
bool Validation::greater(const std::string& name, double value, double bound) {
    return record(name, value, bound, ">", value > bound);
}
void Validation::info(const std::string& name, double value) { checks_[name] = Check{"info", value, std::nullopt, ""}; }

void Validation::fail(const std::string& name, const std::string& why) {
    checks_[name] = Check{"fail", 0.0, std::nullopt, ""};
    reasons_[name] = why;
}

bool Validation::all_pass() const {
    for (const auto& [name, c] : checks_)
        if (c.status == "fail") return false;
    return true;
}

std::vector<std::string> Validation::failures() const {
    std::vector<std::string> out;
    for (const auto& [name, c] : checks_)
        if (c.status == "fail") out.push_back(name);
    return out;
}

nlohmann::json Validation::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [name, c] : checks_) {
        nlohmann::json e{{"status", c.status}};
        if (std::isfinite(c.value)) e["value"] = c.value;
        else e["value"] = nullptr;
        if (c.bound) {
            e["bound"] = *c.bound;
            e["relation"] = c.relation;
        }
        if (const auto it = reasons_.find(name); it != reasons_.end()) e["reason"] = it->second;
        j[name] = e;
    }
    return j;
}

nlohmann::json RunManifest::to_json() const {
    return {{"run_id", run_id},   {"command", command},   {"code_version", code_version},
            {"config", config},   {"started", started},   {"finished", finished},
            {"outputs", outputs}, {"validation", validation.to_json()}};
}

std::string make_run_id(const std::string& command, const nlohmann::json& config, const std::string& code_version) {
    auto c = config;
    if (c.contains("output")) c["output"].erase("dir");
    return sha256_hex(command + "\n" + c.dump() + "\n" + code_version);
}

}  // namespace pnls::harness
