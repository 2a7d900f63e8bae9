#include "doctest.h"

#include "bourgainlab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace bourgainlab;

TEST_CASE("annihilation check at an exact boundary") {
    GroupSpec g = parse_group_spec("Z8");
    GroupSet t = GroupSet::from_indices(g, {0, 1});
    // Worst gap: |1 - e(1/8)| = 2 sin(pi/8).
    double gap = 2.0 * std::sin(std::numbers::pi / 8.0);

    AnnihilationCheck pass = annihilation_check(g, {1}, t, 0.8);
    CHECK(pass.passed);
    CHECK(pass.worst_gap == doctest::Approx(gap).epsilon(1e-12));

    AnnihilationCheck fail = annihilation_check(g, {1}, t, 0.7);
    CHECK(!fail.passed);
    CHECK(fail.worst_char == 1);
    CHECK(fail.worst_elt == 1);

    CHECK_THROWS(annihilation_check(g, {1}, t, 0.0));
    CHECK_THROWS(annihilation_check(g, {8}, t, 0.5));
}

TEST_CASE("subgroup characters annihilate their subgroup exactly") {
    GroupSpec g = parse_group_spec("Z8");
    GroupSet h = subgroup_generated(g, {2});
    AnnihilationCheck chk = annihilation_check(g, {0, 4}, h, 1e-9);
    CHECK(chk.passed);
    CHECK(chk.worst_gap == doctest::Approx(0.0));
}

TEST_CASE("dissociation probe certifies a duplicated character") {
    GroupSpec g = parse_group_spec("Z8");
    DissociationProbe p;
    p.lambda = {1, 1};
    p.mu = uniform_measure(GroupSet::full(g));
    p.theta = 0.2;
    // Riesz product over the uniform measure: D = 1 + Re(w1 conj(w2)) / 2,
    // maximized at 3/2 > e^0.2.
    ProbeOutcome out = dissociation_probe(p);
    CHECK(out.certified_not_dissociated);
    CHECK(out.max_found > std::exp(0.2));
    CHECK(out.max_found <= 1.5 + 1e-9);
    CHECK(out.witness.size() == 2);

    // A single nonzero character over the uniform measure has D = 1.
    p.lambda = {1};
    out = dissociation_probe(p);
    CHECK(!out.certified_not_dissociated);
    CHECK(out.max_found == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("greedy dissociated drops the additive relation") {
    GroupSpec g = parse_group_spec("Z8");
    Measure mu = uniform_measure(GroupSet::full(g));
    // 1 + 3 - 4 = 0, so 4 must be rejected once 1 and 3 are kept: the triple
    // product term pushes D to 1 + 1/4 > e^0.2.
    GreedyDissociated out = greedy_dissociated(g, {1, 3, 4}, mu, 0.2);
    CHECK(out.lambda == std::vector<std::int64_t>{1, 3});
    CHECK(out.m == 2);

    GreedyDissociated empty = greedy_dissociated(g, {}, mu, 0.2);
    CHECK(empty.lambda.empty());
    CHECK(empty.m == 1);

    // The zero character is never dissociated.
    GreedyDissociated zero = greedy_dissociated(g, {0}, mu, 0.2);
    CHECK(zero.lambda.empty());
}

TEST_CASE("chang budget report") {
    ChangReport r = chang_report(0.5, 0.5, 4);
    CHECK(r.ratio == doctest::Approx(1.0 / (1.0 + std::log(2.0))).epsilon(1e-12));
    CHECK(r.budget == doctest::Approx(16.0));
    CHECK(r.within);

    ChangReport blown = chang_report(1.0, 1.0, 1000);
    CHECK(blown.ratio == doctest::Approx(1000.0));
    CHECK(!blown.within);

    CHECK_THROWS(chang_report(0.0, 0.5, 4));
    CHECK_THROWS(chang_report(0.5, 0.5, 0));
}

TEST_CASE("controlled systems enforce dimension and density") {
    GroupSpec g = parse_group_spec("Z8");
    ControlledSystem ctl = make_controlled(BourgainSystem::whole_group(g), 1, 4.0);
    CHECK(ctl.m == 1);

    BourgainSystem bohr = BourgainSystem::bohr(g, {1}, Rational(1, 4));  // declared 6
    CHECK_THROWS(make_controlled(bohr, 2, 4.0));

    // Density floor: a singleton-thin system at large c_ctl * m log m still
    // passes, but a tiny floor violation must throw. Subgroup {0} in Z8 has
    // density 1/8; with m = 2, c_ctl = 4 the floor is e^{-8 ln 2} = 2^-8.
    BourgainSystem point = BourgainSystem::subgroup(subgroup_generated(g, {}));
    CHECK(make_controlled(point, 2, 4.0).m == 2);
    CHECK_THROWS(make_controlled(point, 2, 0.1));
}

TEST_CASE("annihilator construction on a subgroup spectrum") {
    GroupSpec g = parse_group_spec("Z8");
    GroupSet x = subgroup_generated(g, {2});
    AnnihilatorResult res =
        build_annihilator(BourgainSystem::whole_group(g), x, 0.5, 0.5);

    // mu_X has transform 1 on the annihilator of X and 0 elsewhere. The
    // dissociation probe runs against the base measure (uniform on G), where
    // {0, 4} stays below the e^theta cut, so both survive the greedy pass.
    CHECK(res.spectrum == std::vector<std::int64_t>{0, 4});
    CHECK(res.m == 2);
    CHECK(res.chang.within);
    CHECK(res.margin >= 0.0);
    CHECK(res.c_ann > 0.0);
    CHECK(res.retries >= 0);
    CHECK(!res.trace.empty());
    CHECK(res.lambda_star >= Rational(1, 2));

    GroupSet unit = res.annihilator.realize_unit();
    CHECK(!unit.empty());
    AnnihilationCheck chk = annihilation_check(g, res.spectrum, unit, 0.5);
    CHECK(chk.passed);
    // gamma_4 = parity, so annihilating it at nu = 1/2 forces even elements.
    for (std::int64_t e : unit.members()) CHECK(e % 2 == 0);

    CHECK_THROWS(build_annihilator(BourgainSystem::whole_group(g), x, 0.0, 0.5));
    CHECK_THROWS(build_annihilator(BourgainSystem::whole_group(g), x, 0.5, 2.5));
}

TEST_CASE("annihilator respects a structured base") {
    GroupSpec g = parse_group_spec("Z64");
    GroupSet x = subgroup_generated(g, {4});
    BourgainSystem base = BourgainSystem::subgroup(subgroup_generated(g, {2}));
    AnnihilatorResult res = build_annihilator(base, x, 0.5, 0.5);
    CHECK(is_subset(res.annihilator.realize_unit(), base.realize_unit()));
    AnnihilationCheck chk =
        annihilation_check(g, res.spectrum, res.annihilator.realize_unit(), 0.5);
    CHECK(chk.passed);
}
