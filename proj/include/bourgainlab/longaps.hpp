#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bourgainlab/bogolyubov.hpp"
#include "bourgainlab/certificates.hpp"
#include "bourgainlab/group.hpp"
#include "bourgainlab/harmonic.hpp"
#include "bourgainlab/rational.hpp"
#include "bourgainlab/systems.hpp"

namespace bourgainlab {

// mu_G(A+A)^{1/p} <= K^{1/2} ||1_A * mu_A||_{p/2}^{1/2} <= K ||1_A * mu_A||_p.
struct LpChainReport {
    std::int64_t p = 0;
    Rational doubling;      // K
    double lhs = 0.0;       // mu_G(A+A)^{1/p}
    double mid = 0.0;       // K^{1/2} ||1_A * mu_A||_{p/2}^{1/2}
    double rhs = 0.0;       // K ||1_A * mu_A||_p
    bool holds = false;
};

LpChainReport lp_chain_check(const GroupSet& a, std::int64_t p);

// X subseteq T with ||f - f * lambda_X^{(ell)}||_p <= theta ||f||_{p/2}^{1/2}
// re-verified exactly for f = 1_A * mu_S and lambda_X = mu_X * mu_{-X}.
struct SmoothingWitness {
    GroupSet x;
    std::int64_t ell = 0;
    std::int64_t p = 0;
    double theta = 0.0;
    double achieved = 0.0;     // ||f - f * lambda_X^{(ell)}||_p
    double bound = 0.0;        // theta ||f||_{p/2}^{1/2}
    Rational density;          // |X| / |T|
    double size_target = 0.0;  // (2L)^{-p ell^2 / theta^2} |T|, logged only
    int rounds = 0;
};

// Randomized fiber search over sampled fingerprints; k doubles per round.
// Throws search_error carrying the best achieved error on exhaustion.
SmoothingWitness croot_sisask_search(const GroupSet& a, const GroupSet& s, const GroupSet& t,
                                     std::int64_t p, std::int64_t ell, double theta,
                                     const Tunables& tun = {});

// System whose level-1 set consists of verified 1/2-almost-periods of
// 1_A * mu_A in L^p.  Every x is checked exactly by integer p-th powers.
struct AlmostPeriodResult {
    BourgainSystem system;
    SmoothingWitness witness;
    bool verified = false;
    int shrinks = 0;              // halving steps taken on the annihilator route
    Rational growth_lambda;       // dilation of the containment system that verified
    std::int64_t period_count = 0;  // |realize(system, 1)|
    std::string trace;
};

// b's level-1 set must lie inside 2A - 2A.
AlmostPeriodResult almost_period_system(const GroupSet& a, const BourgainSystem& b,
                                        std::int64_t p, const Tunables& tun = {});

// First x in enumeration order with x + T inside Supp(f).  Requires
// ||f - tau_t f||_p <= 1/2 ||f||_p for all t in T and |T| < 2^p.
std::int64_t packing_translate(const DenseFunction& f, const GroupSet& t, std::int64_t p);

struct ExtractionResult {
    StructureCertificate certificate;  // relative to realize(b, 1)
    double eta = 0.0;                  // 2 |B|^{-1/(2h)}
    std::int64_t n = 0;                // floor(eta^{-1/2})
    std::int64_t h = 0;
    std::int64_t t_size = 0;
    bool window_ok = false;  // (4|T|)^{4h} >= |B| and |T|^{2h} <= |B|, exact
};

// Requires h >= effective dimension and |realize(b,1)| >= 2^{6h}.
ExtractionResult extract_ap_or_subgroup(const BourgainSystem& b, std::int64_t h);

struct LongStructureResult {
    StructureCertificate certificate;  // container is A + A
    bool verified = false;
    std::int64_t p = 0;
    std::int64_t h = 0;
    std::int64_t length = 0;  // |T|
    Rational doubling;        // K
    bool chain_held = false;  // p K log(pK) (log K)^3 <= log|A| at c = 1
    std::string trace_json;
};

LongStructureResult find_long_structure(const GroupSet& a, const Tunables& tun = {});

}  // namespace bourgainlab
