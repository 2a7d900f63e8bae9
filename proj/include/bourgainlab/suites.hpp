#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bourgainlab/report.hpp"

namespace bourgainlab {

/**
 * The acceptance battery: twelve property checks with exact oracles.
 * Each criterion is self-contained and deterministic given the seed.
 * Suites group criteria:
 *   harmonic {1}  systems {3,4,5}  spectrum {6}  roth {2,7,8}
 *   longaps {9,10,11}  all {1..12}
 * Corpus loops inside a criterion honor BOURGAINLAB_THREADS.
 */

struct CriterionResult {
    int index = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

CriterionResult run_criterion(int index, std::uint64_t seed);

// Indices for a suite name; throws on unknown names.
std::vector<int> suite_criteria(const std::string& suite);

// Runs the suite's criteria and assembles a report (results + ledger rows).
Report run_suite(const std::string& suite, std::uint64_t seed);

// Worker count: BOURGAINLAB_THREADS if set, else hardware concurrency.
int worker_count();

}  // namespace bourgainlab
