#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "bourgainlab/harmonic.hpp"
#include "bourgainlab/systems.hpp"

namespace bourgainlab {

struct AnnihilationQuery {
    std::vector<std::int64_t> characters;
    double nu = 1.0;  // in (0, 2]
};

struct AnnihilationCheck {
    bool passed = false;
    double worst_gap = 0.0;  // max |1 - gamma(t)| over characters x T
    std::int64_t worst_char = -1;
    std::int64_t worst_elt = -1;
};

AnnihilationCheck annihilation_check(const GroupSpec& g,
                                     const std::vector<std::int64_t>& characters,
                                     const GroupSet& t, double nu);

/**
 * One-sided dissociation test. The integral D(omega) = int prod_j
 * (1 + Re[omega_j gamma_j]) dmu is maximized over unit-modulus omega by
 * coordinate ascent (D is affine in each omega_j) from a phase-grid start
 * and seeded random restarts. D > e^theta certifies non-dissociation and
 * the witness is re-evaluated before being returned; a low maximum proves
 * nothing, which is all downstream code relies on.
 */
struct DissociationProbe {
    std::vector<std::int64_t> lambda;  // candidate characters, duplicates allowed
    Measure mu;
    double theta = 1.0;  // in (0, 1]
    int phase_grid = 16;  // q >= 8
    int restarts = 8;
    std::uint64_t seed = 42;
};

struct ProbeOutcome {
    bool certified_not_dissociated = false;
    std::vector<std::complex<double>> witness;  // set when certified
    double max_found = 0.0;
};

ProbeOutcome dissociation_probe(const DissociationProbe& probe);

struct GreedyDissociated {
    std::vector<std::int64_t> lambda;  // subset of the input, input order
    std::int64_t m = 1;                // max(|lambda|, 1)
};

GreedyDissociated greedy_dissociated(const GroupSpec& g, const std::vector<std::int64_t>& delta,
                                     const Measure& mu, double theta, const Tunables& tun = {});

struct ChangReport {
    double ratio = 0.0;  // m eta^2 / ell(tau)
    double budget = 16.0;
    bool within = false;
};

// Empirical budget m <= budget * eta^-2 * ell(tau). A violation flags the
// budget constant, never the underlying lemma.
ChangReport chang_report(double eta, double tau, std::int64_t m, const Tunables& tun = {});

struct ControlledSystem {
    BourgainSystem system;
    std::int64_t m = 1;
    double c_ctl = 4.0;
};

// Checks declared dimension <= m and density >= exp(-c_ctl m log m) on the
// realized level-1 set.
ControlledSystem make_controlled(const BourgainSystem& s, std::int64_t m, double c_ctl);

struct AnnihilatorResult {
    BourgainSystem annihilator;  // regular, post-verified
    ControlledSystem controlled;  // the Bohr-side factor
    std::int64_t m = 1;
    std::vector<std::int64_t> spectrum;     // Spec_eta(mu_X)
    std::vector<std::int64_t> dissociated;  // greedy Lambda
    ChangReport chang;
    int retries = 0;
    double c_ann = 0.0;     // final value after halvings
    double margin = 0.0;    // nu - worst gap
    Rational lambda_star{1};
    std::string trace;      // JSON: sizes, retries, margins
};

/**
 * Builds a regular system annihilating Spec_eta(mu_X) at tolerance nu:
 * intersect(dilate(base, c nu / d^2 m), dilate(Bohr(Lambda, c/m), nu)) with
 * d the probed effective dimension of base and m from greedy_dissociated.
 * The definition-level annihilation check must pass on the realized unit
 * set; on failure c is halved and the construction retried.
 */
AnnihilatorResult build_annihilator(const BourgainSystem& base, const GroupSet& x, double eta,
                                    double nu, const Tunables& tun = {});

}  // namespace bourgainlab
