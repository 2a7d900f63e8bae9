#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bourgainlab {

// Contract violation by the caller (bad arguments, mismatched groups, ...).
struct contract_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A proof-backed assertion failed at runtime. This is loud on purpose:
// it means either an implementation bug or a constant that does not
// survive at this scale.
struct critical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A randomized search exhausted its retry budget.
struct search_error : std::runtime_error {
    double best_achieved;
    search_error(const std::string& msg, double best)
        : std::runtime_error(msg), best_achieved(best) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw contract_error(msg);
}

inline void ensure(bool cond, const std::string& msg) {
    if (!cond) throw critical_error(msg);
}

// splitmix64 stream. Self-contained so that draws are identical across
// standard libraries; std::uniform_int_distribution is not portable.
class DetRng {
  public:
    explicit DetRng(std::uint64_t seed) : s_(seed) {}

    std::uint64_t next() {
        s_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = s_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t s_;
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    DetRng r(seed ^ (salt * 0x9e3779b97f4a7c15ull));
    return r.next();
}

}  // namespace bourgainlab
