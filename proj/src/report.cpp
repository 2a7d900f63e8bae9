#include "bourgainlab/report.hpp"

#include <fstream>

#include "bourgainlab/common.hpp"
#include "json.hpp"

namespace bourgainlab {

using json = nlohmann::ordered_json;

bool Report::all_passed() const {
    for (const auto& r : results)
        if (!r.passed) return false;
    return true;
}

std::string report_to_json(const Report& r, bool include_timing) {
    json j;
    j["command"] = r.command;
    j["group"] = r.group;
    j["generator"] = r.generator;
    j["seed"] = r.seed;
    json cfg = json::object();
    for (const auto& [k, v] : r.config) cfg[k] = v;
    j["config"] = cfg;
    j["results"] = json::array();
    for (const auto& res : r.results) {
        json e;
        e["name"] = res.name;
        e["passed"] = res.passed;
        e["detail"] = res.detail;
        if (include_timing) e["seconds"] = res.seconds;
        j["results"].push_back(e);
    }
    j["ledger"] = json::array();
    for (const auto& row : r.ledger)
        j["ledger"].push_back(json{{"name", row.name}, {"value", row.value},
                                   {"context", row.context}});
    j["all_passed"] = r.all_passed();
    if (include_timing) j["wall_seconds"] = r.wall_seconds;
    return j.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
    json j = json::parse(text);
    Report r;
    r.command = j.at("command").get<std::string>();
    r.group = j.at("group").get<std::string>();
    r.generator = j.at("generator").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& [k, v] : j.at("config").items())
        r.config.emplace_back(k, v.get<std::string>());
    for (const auto& e : j.at("results")) {
        RunResult res;
        res.name = e.at("name").get<std::string>();
        res.passed = e.at("passed").get<bool>();
        res.detail = e.at("detail").get<std::string>();
        if (e.contains("seconds")) res.seconds = e.at("seconds").get<double>();
        r.results.push_back(res);
    }
    for (const auto& e : j.at("ledger"))
        r.ledger.push_back(LedgerRow{e.at("name").get<std::string>(),
                                     e.at("value").get<std::string>(),
                                     e.at("context").get<std::string>()});
    if (j.contains("wall_seconds")) r.wall_seconds = j.at("wall_seconds").get<double>();
    return r;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

}  // namespace

std::string ledger_to_csv(const Report& r) {
    std::string out = "name,value,context\n";
    for (const auto& row : r.ledger)
        out += csv_escape(row.name) + "," + csv_escape(row.value) + "," +
               csv_escape(row.context) + "\n";
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw contract_error("cannot open for writing: " + path);
    f << content;
    f.flush();
    if (!f) throw contract_error("write failed: " + path);
}

}  // namespace bourgainlab
