#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace ppe {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kToolVersion = "pipe 0.1.0";

/// One evaluated claim. Asserted claims gate the exit status; recorded
/// claims are informational verdicts that are reported but never gate.
struct ClaimResult {
    std::string claim;
    bool asserted = true;
    bool pass = false;
    std::string measured;
};

struct ReportEntry {
    std::string id;
    std::string claim;
    std::string verdict;  // "pass", "fail", or "info"
    std::string measured;

    bool operator==(const ReportEntry&) const = default;
};

struct Report {
    int schema_version = kReportSchemaVersion;
    std::string tool = kToolVersion;
    uint64_t seed = 0;
    std::vector<ReportEntry> entries;

    void add(const std::string& id, const ClaimResult& r) {
        entries.push_back({id, r.claim, r.asserted ? (r.pass ? "pass" : "fail") : "info",
                           r.measured});
    }

    bool all_pass() const {
        for (const auto& e : entries)
            if (e.verdict == "fail") return false;
        return true;
    }

    bool operator==(const Report&) const = default;
};

enum class ReportFormat { json, tsv };

inline std::string emit(const Report& r, ReportFormat format) {
    if (format == ReportFormat::json) {
        nlohmann::json j;
        j["schema_version"] = r.schema_version;
        j["tool"] = r.tool;
        j["seed"] = r.seed;
        j["entries"] = nlohmann::json::array();
        for (const auto& e : r.entries)
            j["entries"].push_back({{"id", e.id},
                                    {"claim", e.claim},
                                    {"verdict", e.verdict},
                                    {"measured", e.measured}});
        return j.dump(2) + "\n";
    }
    std::string out = "id\tclaim\tverdict\tmeasured\n";
    for (const auto& e : r.entries)
        out += e.id + "\t" + e.claim + "\t" + e.verdict + "\t" + e.measured + "\n";
    return out;
}

inline Report parse_report_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Report r;
    r.schema_version = j.at("schema_version").get<int>();
    r.tool = j.at("tool").get<std::string>();
    r.seed = j.at("seed").get<uint64_t>();
    for (const auto& e : j.at("entries"))
        r.entries.push_back({e.at("id").get<std::string>(), e.at("claim").get<std::string>(),
                             e.at("verdict").get<std::string>(),
                             e.at("measured").get<std::string>()});
    return r;
}

}  // namespace ppe
