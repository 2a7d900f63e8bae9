#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bourgainlab/certificates.hpp"
#include "bourgainlab/group.hpp"
#include "bourgainlab/systems.hpp"

namespace bourgainlab {

enum class CountMode { brute, fourier };

struct ThreeAPCount {
    std::int64_t total = 0;    // #{(x,y,z) in A^3 : x + z = 2y}
    std::int64_t trivial = 0;  // |A|, the x = y = z triples
    double normalized = 0.0;   // <1_A * 1_A, 1_{2A}>_{L2}
};

// brute enumerates pairs against the doubling fibers exactly; fourier
// evaluates the inner product via the transform and rounds. The two totals
// agree whenever y -> 2y is injective on A (odd-order groups always).
ThreeAPCount count_threeaps(const GroupSet& a, CountMode mode);

// First nontrivial triple in lexicographic (x, z, y) order.
std::optional<ThreeAPCertificate> find_nontrivial_threeap(const GroupSet& a);

// Some d in A-A with 2d = 0, d != 0; yields the degenerate progression
// (x, x+d, x).
std::optional<std::int64_t> order2_scan(const GroupSet& a);

// {a + a' : a, a' in A, a != a'}
GroupSet restricted_sumset(const GroupSet& a);

struct EqChainValues {
    std::int64_t lhs_count = 0;  // <1_A * 1_A, 1_{2A}> |G|^2 as an integer
    std::int64_t rhs_count = 0;  // <1_{A-x} * 1_{2x-2A}, 1_{x-A}> |G|^2
    double lhs = 0.0;
    double rhs = 0.0;
};

// Both sides of the counting identity used by the increment step, computed
// with exact integer correlations.
EqChainValues eq_chain_identity(const GroupSet& a, std::int64_t x);

struct IncrementWitness {
    std::int64_t x = 0;
    Rational new_density{0};  // |(A - x) cap T| / |T|, exact
    Rational threshold{0};    // (1 + kappa/8) alpha
    double energy = 0.0;      // sum over Delta of |fhat_A|^2
};

/**
 * L2 density increment: with f_A = 1_A - alpha 1_B, if the spectral energy
 * of f_A on Delta reaches kappa alpha^2 b, some translate of T sees A with
 * density (1 + kappa/8) alpha. The conclusion is asserted with exact
 * rational arithmetic whenever the hypothesis fires; a quiet spectrum
 * returns nullopt.
 *
 * Preconditions checked: A subset of B, T subset of realize(rho) with
 * rho <= c_step kappa alpha / d_eff, and annihilation_check(Delta, T, 1/2).
 */
std::optional<IncrementWitness> l2_increment_step(const GroupSet& a,
                                                  const BourgainSystem& system,
                                                  const std::vector<std::int64_t>& delta,
                                                  const GroupSet& t, const Rational& kappa,
                                                  const Rational& rho, const Tunables& tun = {});

struct TwoScaleOutcome {
    enum class Kind { increment_first, increment_second, centers };
    Kind kind = Kind::centers;
    std::int64_t x = -1;
    Rational value{0};  // achieved convolution density at x, exact
};

// Exact scan of 1_A * mu_{B'} and 1_A * mu_{B''}: either one exceeds
// (1 + theta/2) alpha somewhere, or a common center has both at least
// (1 - theta) alpha. Neither branch available is a critical error.
TwoScaleOutcome two_scale_select(const GroupSet& a, const GroupSet& bprime,
                                 const GroupSet& bsecond, const Rational& alpha,
                                 const Rational& theta);

struct DriverConfig {
    Rational kappa{1, 4};
    int step_cap = 64;
    Tunables tun;
};

struct DriverStep {
    int step = 0;
    Rational alpha{0};
    std::int64_t b_size = 0;
    std::string branch;  // "certificate", "order2", "increment", "exhausted"
    std::int64_t witness = -1;
    std::int64_t total_aps = 0;
    std::int64_t trivial_aps = 0;
};

struct DriverOutcome {
    bool found = false;
    ThreeAPCertificate certificate;  // in the coordinates of the input A
    ThreeAPCount count_at_emit;
    bool exhausted = false;
    std::string reason;
    std::vector<DriverStep> trace;
    std::string trace_json;
};

/**
 * Executable density-increment iteration. Counts 3APs brutally at each
 * level; emits the first nontrivial certificate, mapped back through the
 * cumulative translate and re-verified against the input set. Otherwise
 * builds annihilators for the sub-scale copy and its -2 image, runs the L2
 * step, and passes to (A - x) cap T. Density must grow by (1 + 2^-16) per
 * increment. Exhaustion (step cap, quiet spectrum, or structure collapse)
 * is a report, not an error.
 */
DriverOutcome density_increment_driver(const GroupSet& a, const BourgainSystem& system,
                                       const DriverConfig& cfg = {});

}  // namespace bourgainlab
