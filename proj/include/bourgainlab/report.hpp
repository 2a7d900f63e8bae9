#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace bourgainlab {

struct RunResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;

    bool operator==(const RunResult& o) const {
        return name == o.name && passed == o.passed && detail == o.detail;
    }
};

// Empirical-constant ledger: one observed quantity per row.
struct LedgerRow {
    std::string name;
    std::string value;
    std::string context;

    bool operator==(const LedgerRow& o) const = default;
};

struct Report {
    std::string command;
    std::string group;
    std::string generator;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> config;  // echoed key/value pairs
    std::vector<RunResult> results;
    std::vector<LedgerRow> ledger;
    double wall_seconds = 0.0;

    bool all_passed() const;
    bool operator==(const Report& o) const {
        return command == o.command && group == o.group && generator == o.generator &&
               seed == o.seed && config == o.config && results == o.results && ledger == o.ledger;
    }
};

// Stable field order; timing fields are emitted only when include_timing.
std::string report_to_json(const Report& r, bool include_timing = true);
Report report_from_json(const std::string& text);

// CSV covers only the ledger: header plus one line per row.
std::string ledger_to_csv(const Report& r);

// IO failures carry the path in the error text.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace bourgainlab
