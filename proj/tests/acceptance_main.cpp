#include "bourgainlab/suites.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

int main(int argc, char** argv) {
    std::uint64_t seed = 42;
    if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);

    bool all = true;
    for (int idx = 1; idx <= 12; ++idx) {
        bourgainlab::CriterionResult r = bourgainlab::run_criterion(idx, seed);
        std::printf("%s criterion %2d: %s - %s (%.2fs)\n", r.passed ? "PASS" : "FAIL", r.index,
                    r.name.c_str(), r.detail.c_str(), r.seconds);
        std::fflush(stdout);
        all = all && r.passed;
    }
    std::printf("%s\n", all ? "acceptance: all criteria passed" : "acceptance: FAILURES PRESENT");
    return all ? 0 : 1;
}
