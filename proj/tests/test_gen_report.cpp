#include "doctest.h"

#include "bourgainlab/gen.hpp"
#include "bourgainlab/report.hpp"
#include "bourgainlab/roth.hpp"

#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

using namespace bourgainlab;

TEST_CASE("interval and coset generators") {
    GroupSpec g = parse_group_spec("Z100");
    CHECK(gen_set(g, "interval(10)", 1).members() ==
          std::vector<std::int64_t>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});

    GroupSpec z8 = parse_group_spec("Z8");
    CHECK(gen_set(z8, "coset(2)", 1).members() == std::vector<std::int64_t>{1, 3, 5, 7});
}

TEST_CASE("random generator is seed-determined") {
    GroupSpec g = parse_group_spec("Z1009");
    GroupSet a = gen_set(g, "random(0.4)", 42);
    GroupSet b = gen_set(g, "random(0.4)", 42);
    CHECK(a == b);
    CHECK(!(a == gen_set(g, "random(0.4)", 43)));
    // Keep probability 0.4 concentrates around 404 members.
    CHECK(a.size() > 300);
    CHECK(a.size() < 510);
}

TEST_CASE("union of intervals") {
    GroupSpec g = parse_group_spec("Z1009");
    GroupSet a = gen_set(g, "union_intervals(3,20)", 42);
    CHECK(!a.empty());
    CHECK(a.size() <= 60);
    CHECK(a == gen_set(g, "union_intervals(3,20)", 42));
}

TEST_CASE("digit-restricted generator") {
    GroupSpec g = parse_group_spec("Z1009");
    GroupSet a = gen_set(g, "behrend_like(3)", 42);
    CHECK(!a.empty());
    CHECK(a == gen_set(g, "behrend_like(3)", 42));
}

TEST_CASE("greedy progression-free generator") {
    GroupSpec g = parse_group_spec("Z101");
    GroupSet a = gen_set(g, "greedy_apfree(101)", 42);
    CHECK(a.size() >= 3);
    ThreeAPCount c = count_threeaps(a, CountMode::brute);
    CHECK(c.total == c.trivial);
}

TEST_CASE("generator spec errors") {
    GroupSpec g = parse_group_spec("Z100");
    CHECK_THROWS(gen_set(g, "mystery(3)", 1));
    CHECK_THROWS(gen_set(g, "interval", 1));
    CHECK_THROWS(gen_set(g, "interval(0)", 1));
    CHECK_THROWS(gen_set(g, "random(1.5)", 1));
}

TEST_CASE("empty report serializes and parses") {
    Report r;
    r.command = "verify";
    r.group = "Z101";
    r.seed = 42;
    r.config.emplace_back("suite", "all");
    std::string text = report_to_json(r);
    nlohmann::json j = nlohmann::json::parse(text);
    CHECK(j.at("command") == "verify");
    CHECK(j.at("results").empty());
    CHECK(j.at("ledger").empty());
    CHECK(report_from_json(text) == r);
    CHECK(r.all_passed());
}

TEST_CASE("report round trip ignores timing") {
    Report r;
    r.command = "threeaps";
    r.group = "Z101";
    r.generator = "interval(10)";
    r.seed = 7;
    r.results.push_back({"counts_agree", true, "total=25", 0.25});
    r.results.push_back({"certificate", false, "missing", 0.5});
    r.ledger.push_back({"brute_total", "25", "Z101"});
    r.wall_seconds = 3.5;

    Report back = report_from_json(report_to_json(r, true));
    CHECK(back == r);
    CHECK(!back.all_passed());

    // Timing-free form is identical for identical payloads.
    CHECK(report_to_json(r, false) == report_to_json(back, false));
}

TEST_CASE("ledger csv") {
    Report r;
    r.ledger.push_back({"alpha", "1/2", "Z101"});
    r.ledger.push_back({"lambda_star", "3/4", "bohr, two frequencies"});
    r.ledger.push_back({"note", "say \"hi\"", "quoting"});
    std::string csv = ledger_to_csv(r);
    CHECK(csv == "name,value,context\n"
                 "alpha,1/2,Z101\n"
                 "lambda_star,3/4,\"bohr, two frequencies\"\n"
                 "note,\"say \"\"hi\"\"\",quoting\n");

    Report empty;
    CHECK(ledger_to_csv(empty) == "name,value,context\n");
}

TEST_CASE("text file io") {
    std::string path = "gen_report_io_test.tmp";
    write_text_file(path, "payload\n");
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "payload");
    in.close();
    std::remove(path.c_str());

    try {
        write_text_file("no_such_dir_xyz/file.txt", "x");
        CHECK(false);
    } catch (const contract_error& e) {
        CHECK(std::string(e.what()).find("no_such_dir_xyz") != std::string::npos);
    }
}
