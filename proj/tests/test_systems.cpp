#include "doctest.h"

#include "bourgainlab/harmonic.hpp"
#include "bourgainlab/systems.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace bourgainlab;

namespace {

std::vector<std::int64_t> sorted_members(const GroupSet& s) { return s.members(); }

bool same_realization(const BourgainSystem& a, const BourgainSystem& b,
                      const std::vector<Rational>& radii) {
    for (const Rational& r : radii)
        if (!(a.realize(r) == b.realize(r))) return false;
    return true;
}

}  // namespace

TEST_CASE("bohr level sets are exact torus-norm cuts") {
    GroupSpec g = parse_group_spec("Z100");
    BourgainSystem s = BourgainSystem::bohr(g, {1}, Rational(1, 20));
    // ||x/100|| <= 1/20 picks out |x| <= 5.
    CHECK(sorted_members(s.realize_unit()) ==
          std::vector<std::int64_t>{0, 1, 2, 3, 4, 5, 95, 96, 97, 98, 99});
    CHECK(s.realize(Rational(1, 5)).members() == std::vector<std::int64_t>{0, 1, 99});
    CHECK_THROWS(s.realize(Rational(0)));
    CHECK_THROWS(s.realize(Rational(-1, 2)));
    CHECK(s.declared_dimension() == 6);
    CHECK(s.backend() == BourgainSystem::Backend::bohr);

    BourgainSystem two = BourgainSystem::bohr(g, {1, 10}, Rational(1, 10));
    for (std::int64_t x : two.realize_unit().members()) {
        CHECK(character_torus_norm(g, 1, x) <= Rational(1, 10));
        CHECK(character_torus_norm(g, 10, x) <= Rational(1, 10));
    }
    CHECK(two.declared_dimension() == 12);
}

TEST_CASE("coset progression level sets") {
    GroupSpec g = parse_group_spec("Z10");
    BourgainSystem s = BourgainSystem::coset_progression(
        g, {Rational(2)}, {1}, subgroup_generated(g, {}));
    CHECK(sorted_members(s.realize_unit()) == std::vector<std::int64_t>{0, 1, 2, 8, 9});
    CHECK(s.realize(Rational(1, 2)).members() == std::vector<std::int64_t>{0, 1, 9});
    CHECK(s.declared_dimension() == 3);

    GroupSpec h = parse_group_spec("Z16xZ9");
    BourgainSystem p = BourgainSystem::coset_progression(
        h, {Rational(4)}, {h.index_of({1, 0})}, subgroup_generated(h, {h.index_of({0, 3})}));
    GroupSet unit = p.realize_unit();
    // H + {c*(1,0) : |c| <= 4}: 3 subgroup elements times 9 multiples.
    CHECK(unit.size() == 27);
    CHECK(unit.contains(h.index_of({4, 3})));
    CHECK(!unit.contains(h.index_of({5, 0})));
}

TEST_CASE("whole group and subgroup systems") {
    GroupSpec g = parse_group_spec("Z12");
    BourgainSystem whole = BourgainSystem::whole_group(g);
    CHECK(whole.realize_unit().size() == 12);
    CHECK(whole.realize(Rational(1, 100)).size() == 12);
    CHECK(whole.declared_dimension() == 0);

    GroupSet h = subgroup_generated(g, {4});
    BourgainSystem sub = BourgainSystem::subgroup(h);
    CHECK(sub.realize_unit() == h);
    CHECK(sub.realize(Rational(1, 7)) == h);
    CHECK(sub.declared_dimension() == 0);
}

TEST_CASE("dilation composes with realization") {
    GroupSpec g = parse_group_spec("Z100");
    BourgainSystem base = BourgainSystem::bohr(g, {1}, Rational(1, 10));
    BourgainSystem half = dilate_system(base, Rational(1, 2));
    for (const Rational& rho : {Rational(1), Rational(1, 2), Rational(1, 3), Rational(2)})
        CHECK(half.realize(rho) == base.realize(rho * Rational(1, 2)));
    CHECK(half.declared_dimension() == base.declared_dimension());
    CHECK_THROWS(dilate_system(base, Rational(0)));
    CHECK_THROWS(dilate_system(base, Rational(3, 2)));
}

TEST_CASE("intersection realizes level-wise") {
    GroupSpec g = parse_group_spec("Z100");
    BourgainSystem a = BourgainSystem::bohr(g, {1}, Rational(1, 10));
    BourgainSystem b = BourgainSystem::coset_progression(
        g, {Rational(7)}, {2}, subgroup_generated(g, {}));
    BourgainSystem both = intersect_systems({a, b});
    for (const Rational& rho : {Rational(1), Rational(1, 2), Rational(1, 4)})
        CHECK(both.realize(rho) == set_intersect(a.realize(rho), b.realize(rho)));
    CHECK(both.declared_dimension() == 2 * (a.declared_dimension() + b.declared_dimension()));
    CHECK_THROWS(intersect_systems({}));
}

TEST_CASE("homomorphic images") {
    GroupSpec g = parse_group_spec("Z100");
    BourgainSystem base = BourgainSystem::bohr(g, {1}, Rational(1, 10));
    Endomorphism neg;
    neg.scalar = -1;
    BourgainSystem img = image_system(base, neg);
    for (const Rational& rho : {Rational(1), Rational(1, 2)})
        CHECK(img.realize(rho) == negate_set(base.realize(rho)));
    CHECK(img.declared_dimension() == base.declared_dimension());

    Endomorphism dbl;
    dbl.scalar = 2;
    CHECK(image_system(base, dbl).realize_unit() == dilate_set(2, base.realize_unit()));
}

TEST_CASE("matrix endomorphisms validate well-definedness") {
    GroupSpec g = parse_group_spec("Z4xZ8");
    Endomorphism ok;
    ok.matrix = {{1, 1}, {2, 1}};  // Z8 -> Z4 entry unconstrained, Z4 -> Z8 needs even
    ok.validate(g);
    std::int64_t x = g.index_of({3, 5});
    CHECK(ok.apply(g, x) == g.index_of({(3 + 5) % 4, (2 * 3 + 5) % 8}));

    Endomorphism bad;
    bad.matrix = {{1, 1}, {1, 1}};
    CHECK_THROWS(bad.validate(g));
}

TEST_CASE("axioms hold on representative systems") {
    std::vector<Rational> radii = {Rational(1, 4), Rational(1, 2), Rational(1), Rational(2)};

    GroupSpec g = parse_group_spec("Z100");
    BourgainSystem bohr = BourgainSystem::bohr(g, {1}, Rational(1, 10));
    CHECK(verify_axioms(bohr, radii, bohr.declared_dimension()).passed());

    BourgainSystem prog = BourgainSystem::coset_progression(
        g, {Rational(4)}, {3}, subgroup_generated(g, {50}));
    CHECK(verify_axioms(prog, radii, prog.declared_dimension()).passed());

    BourgainSystem mix = intersect_systems({bohr, dilate_system(prog, Rational(1, 2))});
    CHECK(verify_axioms(mix, radii, mix.declared_dimension()).passed());

    // An impossible budget must surface as a covering violation.
    AxiomReport starved = verify_axioms(bohr, {Rational(1)}, 0);
    CHECK(!starved.passed());
    bool covering = false;
    for (const auto& v : starved.violations) covering = covering || v.axiom.find("cover") != std::string::npos;
    CHECK(covering);
}

TEST_CASE("covering witnesses really cover") {
    GroupSpec g = parse_group_spec("Z1009");
    BourgainSystem s = BourgainSystem::bohr(g, {1, 90}, Rational(1, 8));
    for (const Rational& rho : {Rational(1, 2), Rational(1)}) {
        GroupSet x = covering_witness(s, rho);
        GroupSet covered = set_arith(x, s.realize(rho), SetOp::sum);
        CHECK(is_subset(s.realize(rho * Rational(2)), covered));
        CHECK(double(x.size()) <= std::pow(2.0, double(s.declared_dimension())) + 0.5);
    }
}

TEST_CASE("effective dimension probe") {
    GroupSpec g = parse_group_spec("Z64");
    CHECK(probe_effective_dimension(BourgainSystem::whole_group(g)) == 0);
    CHECK(probe_effective_dimension(BourgainSystem::subgroup(subgroup_generated(g, {8}))) == 0);

    BourgainSystem bohr = BourgainSystem::bohr(parse_group_spec("Z1009"), {1}, Rational(1, 4));
    std::int64_t d = probe_effective_dimension(bohr);
    CHECK(d >= 1);
    CHECK(d <= bohr.declared_dimension());

    BourgainSystem trimmed = bohr.with_declared_dimension(d);
    CHECK(trimmed.declared_dimension() == d);
    CHECK(trimmed.realize_unit() == bohr.realize_unit());
}

TEST_CASE("regularity scan finds a dilate in the upper half interval") {
    GroupSpec g = parse_group_spec("Z1009");
    BourgainSystem s = BourgainSystem::bohr(g, {1}, Rational(1, 4));
    Tunables tun;
    RegularityResult res = regularity_scan(s, 1, tun);
    CHECK(res.lambda_star >= Rational(1, 2));
    CHECK(res.lambda_star <= Rational(1));
    CHECK(res.grid_checked > 0);
    CHECK(res.regular_system.realize_unit() == s.realize(res.lambda_star));
    if (res.regular_at_one) CHECK(res.lambda_star == Rational(1));

    CHECK(regularity_check(s, 1, tun.reg_rho_points));
}

TEST_CASE("a unit regularity slope is too strict for bohr sets") {
    // With slope 1 the allowed deviation equals the linear growth itself, so
    // integer rounding must break at least one grid point.
    GroupSpec g = parse_group_spec("Z1009");
    BourgainSystem s = BourgainSystem::bohr(g, {1}, Rational(1, 4));
    CHECK(!regularity_check_at(s, 1, 41, 1));
    CHECK(regularity_check_at(s, 1, 41, SystemConstants::C0));
}

TEST_CASE("averaging over a small dilate barely moves the measure") {
    GroupSpec g = parse_group_spec("Z1009");
    BourgainSystem s = BourgainSystem::bohr(g, {1}, Rational(1, 4));
    Rational rho(1, 640);
    AveragingResult res = averaging_check(s, uniform_measure(s.realize(rho)), rho, 1);
    CHECK(res.within);
    CHECK(res.deviation <= res.bound);
    CHECK(res.bound == doctest::Approx(64.0 / 640.0));

    // B_{1/128} = {-1, 0, 1}, so a point mass at 1 is admissible there.
    AveragingResult pm = averaging_check(s, point_mass(g, 1), Rational(1, 128), 1);
    CHECK(pm.within);
    CHECK(pm.deviation > 0.0);

    // Support outside the level set is a contract violation.
    CHECK_THROWS(averaging_check(s, point_mass(g, 1), Rational(1, 320), 1));
}

TEST_CASE("log helper") {
    CHECK(ell(1.0) == doctest::Approx(1.0));
    CHECK(ell(0.5) == doctest::Approx(1.0 + std::log(2.0)));
    CHECK(ell(std::exp(1.0)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("system json round trip") {
    GroupSpec g = parse_group_spec("Z100");
    BourgainSystem bohr = BourgainSystem::bohr(g, {1, 10}, Rational(1, 8));
    BourgainSystem prog = BourgainSystem::coset_progression(
        g, {Rational(3)}, {7}, subgroup_generated(g, {20}));
    BourgainSystem tree = intersect_systems({dilate_system(bohr, Rational(2, 3)), prog});

    std::vector<Rational> radii = {Rational(1, 3), Rational(1, 2), Rational(1), Rational(2)};
    for (const BourgainSystem* s : {&bohr, &prog, &tree}) {
        BourgainSystem back = BourgainSystem::from_json(g, s->to_json());
        CHECK(same_realization(*s, back, radii));
        CHECK(back.declared_dimension() == s->declared_dimension());
        CHECK(!s->describe().empty());
    }
}
