#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bourgainlab/group.hpp"
#include "bourgainlab/harmonic.hpp"
#include "bourgainlab/rational.hpp"
#include "bourgainlab/systems.hpp"

namespace bourgainlab {

// Dense-case stand-in for the containment form of Bogolyubov-Ruzsa: a Bohr
// system whose level-1 set provably sits inside 2A - 2A.  Dimension bound is
// |spectrum| <= 4 / alpha^2, not polylog in the doubling.
struct ContainmentResult {
    BourgainSystem system;               // Bohr(spectrum, 1/4)
    bool verified = false;               // exhaustive membership recheck
    double threshold = 0.0;              // spectrum cut sqrt(alpha)/2
    std::vector<std::int64_t> spectrum;  // frequencies defining the Bohr set
    double margin = 0.0;                 // positivity slack (3/4) alpha^4
};

// verified is re-established by integer quadruple counts before return.
ContainmentResult bogolyubov_containment(const GroupSet& a);

// Correlation form: a structured set M with ||1_A * mu_M||_inf recorded
// against the 1/(2K) target.
struct CorrelationResult {
    GroupSet structure;        // M, the realized level-1 set
    std::int64_t translate;    // argmax x of 1_A * mu_M
    Rational value;            // exact |A cap (x - M)| / |M|
    Rational target;           // 1 / (2K)
    bool meets = false;
};

// K must equal doubling_constant(A).
CorrelationResult correlation_locate(const GroupSet& a, const Rational& k);

struct PluenneckeReport {
    std::int64_t sumset_size = 0;    // |A + A|
    std::int64_t iterated_size = 0;  // |3A - 2A|
    Rational doubling;               // K = |A+A| / |A|
    bool holds = false;              // |3A-2A| * |A|^4 <= |A+A|^5 exactly
};

PluenneckeReport pluennecke_chain_check(const GroupSet& a);

struct HolderYoungReport {
    double inner = 0.0;   // <1_A * mu_V * mu_{A+A} * mu, mu_A>
    double middle = 0.0;  // ||1_A * mu_V * mu_{A+A} * mu||_inf * ||mu_A||_1
    double outer = 0.0;   // ||1_A * mu_V||_inf
    bool holds = false;   // inner <= middle <= outer to 1e-9
};

// v must be a subgroup; mu any probability measure.
HolderYoungReport holder_young_chain(const GroupSet& a, const GroupSet& v, const Measure& mu);

std::string containment_to_json(const ContainmentResult& r, const GroupSpec& g);
std::string correlation_to_json(const CorrelationResult& r);

}  // namespace bourgainlab
