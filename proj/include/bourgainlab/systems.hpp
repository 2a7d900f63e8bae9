#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "bourgainlab/group.hpp"
#include "bourgainlab/rational.hpp"

namespace bourgainlab {

// Fixed structural constants for the regularity and averaging estimates.
struct SystemConstants {
    static constexpr std::int64_t C0 = 32;  // regularity window and slope
    static constexpr std::int64_t C1 = 64;  // averaging deviation slope
};

// l(x) = log(e/x); >= 1 on (0,1].
double ell(double x);

// Tunable small constants. Everything a proof leaves as "c" or "C" lives
// here so that reports can echo the values actually used.
struct Tunables {
    double c_ann = 1.0 / 8.0;       // annihilator radius seed, halved on retry
    int ann_retries = 20;
    double c_step = 1.0 / 64.0;     // scale bound for the L2 increment step
    double c_two_scale = 1.0 / 64.0;
    Rational kappa{1, 4};           // energy threshold constant
    Rational theta_increment{1, 32768};
    double chang_budget = 16.0;
    double c_ctl = 4.0;             // controlled-system density constant
    int reg_rho_points = 41;
    int reg_lambda_points = 64;
    int probe_phase_grid = 16;      // dissociation probe phase grid (>= 8)
    int probe_restarts = 8;
    int cs_rounds = 16;
    int ap_shrink_steps = 10;
    int driver_step_cap = 64;
    std::uint64_t seed = 42;
};

struct Endomorphism {
    std::int64_t scalar = 1;
    // Optional integer matrix: y_i = sum_j m[i][j] x_j mod m_i. Empty = scalar.
    std::vector<std::vector<std::int64_t>> matrix;

    bool is_matrix() const { return !matrix.empty(); }
    std::int64_t apply(const GroupSpec& g, std::int64_t x) const;
    // Well-definedness: m[i][j] * m_j = 0 mod m_i for all i, j.
    void validate(const GroupSpec& g) const;
};

/**
 * Lazily realized Bourgain system. A system is an immutable expression tree
 * (Bohr set / coset progression leaf, dilation, intersection, homomorphic
 * image); realize(rho) materializes the level set B_rho and memoizes it by
 * the exact rational radius. Realization is safe for concurrent readers.
 *
 * The declared dimension is a budget, not an inferred quantity: Bohr systems
 * declare 6|Gamma|, coset progressions 3d, intersections 2*sum(d_i), and
 * dilations/images inherit. verify_axioms checks covering witnesses against
 * the budget; probe_effective_dimension reports the smallest budget the
 * witnesses actually fit.
 */
class BourgainSystem {
  public:
    enum class Backend { bohr, cprog, dilate, intersect, image };

    BourgainSystem() = default;

    static BourgainSystem bohr(const GroupSpec& g, std::vector<std::int64_t> freqs,
                               const Rational& delta);
    static BourgainSystem coset_progression(const GroupSpec& g, std::vector<Rational> lengths,
                                            std::vector<std::int64_t> generators,
                                            GroupSet subgroup);
    // Whole group as a zero-dimensional system (Bohr with no frequencies).
    static BourgainSystem whole_group(const GroupSpec& g);
    // A subgroup as a degenerate coset progression with no axes.
    static BourgainSystem subgroup(GroupSet h);

    bool valid() const { return node_ != nullptr; }
    const GroupSpec& spec() const;
    Backend backend() const;
    std::int64_t declared_dimension() const;
    GroupSet realize(const Rational& rho) const;
    GroupSet realize_unit() const { return realize(Rational(1)); }

    // Same realization, different verified budget. Callers must have checked
    // the budget (probe_effective_dimension / verify_axioms) first.
    BourgainSystem with_declared_dimension(std::int64_t d) const;

    std::string describe() const;
    std::string to_json() const;
    static BourgainSystem from_json(const GroupSpec& g, const std::string& text);

    struct Node;
    const std::shared_ptr<const Node>& node() const { return node_; }

  private:
    std::shared_ptr<const Node> node_;
    std::int64_t declared_override_ = -1;

    explicit BourgainSystem(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    friend BourgainSystem dilate_system(const BourgainSystem&, const Rational&);
    friend BourgainSystem intersect_systems(const std::vector<BourgainSystem>&);
    friend BourgainSystem image_system(const BourgainSystem&, const Endomorphism&);
};

// lambda in (0,1]. Realization density |B_lambda| >= (lambda/2)^d |B_1| is
// asserted exactly at construction.
BourgainSystem dilate_system(const BourgainSystem& s, const Rational& lambda);

// Declared dimension 2*sum(d_i); realized density >= 4^{-sum d_i} prod(b_i)
// asserted exactly; the covering axiom is re-witnessed at rho in {1/2, 1}.
BourgainSystem intersect_systems(const std::vector<BourgainSystem>& systems);

BourgainSystem image_system(const BourgainSystem& s, const Endomorphism& phi);

struct AxiomViolation {
    std::string axiom;
    Rational rho;
    Rational rho2;
    std::string detail;
};

struct AxiomReport {
    std::vector<AxiomViolation> violations;
    bool passed() const { return violations.empty(); }
};

// Exhaustive membership checks of the five system axioms over the radius
// grid (zero membership, symmetry, nesting, additive closure for all pairs,
// 2^budget covering at each rho).
AxiomReport verify_axioms(const BourgainSystem& s, const std::vector<Rational>& radii,
                          std::int64_t budget_d);

// Witness X with B_{2rho} subset of X + B_rho. Structural construction per
// backend where available, greedy Ruzsa fallback; the containment is always
// re-checked before returning.
GroupSet covering_witness(const BourgainSystem& s, const Rational& rho);

// Smallest d' such that |covering_witness| <= 2^d' at each sampled radius.
std::int64_t probe_effective_dimension(const BourgainSystem& s,
                                       const std::vector<Rational>& radii = {Rational(1, 2),
                                                                             Rational(1)});

struct RegularityResult {
    bool regular_at_one = false;
    Rational lambda_star{1};
    BourgainSystem regular_system;  // dilate by lambda_star
    std::int64_t grid_checked = 0;
};

// Regularity: (1 - C0|rho|d)|B| <= |B_{1+rho}| <= (1 + C0|rho|d)|B| for all
// |rho| <= 1/(C0 d) on the grid, checked with exact integer arithmetic.
// Scans a geometric lambda grid in [1/2, 1] from 1 downward and returns the
// first (largest) regular dilate; throws search_error on exhaustion.
bool regularity_check(const BourgainSystem& s, std::int64_t d, int grid_points);
// Same grid with an explicit slope; exposes the forced-failure path (a
// corrupted C0 must fail on generic systems).
bool regularity_check_at(const BourgainSystem& s, std::int64_t d, int grid_points,
                         std::int64_t c0);
RegularityResult regularity_scan(const BourgainSystem& s, std::int64_t d,
                                 const Tunables& tun = {});

struct AveragingResult {
    double deviation = 0.0;
    double bound = 0.0;
    bool within = false;
};

// ||mu_B * mu - mu_B||_1 <= C1 rho d for mu supported in B_rho.
AveragingResult averaging_check(const BourgainSystem& s, const struct Measure& mu,
                                const Rational& rho, std::int64_t d);

}  // namespace bourgainlab
