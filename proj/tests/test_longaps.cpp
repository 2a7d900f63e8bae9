#include "doctest.h"

#include "bourgainlab/gen.hpp"
#include "bourgainlab/longaps.hpp"

#include <cmath>
#include <vector>

using namespace bourgainlab;

namespace {

GroupSet interval_set(const GroupSpec& g, std::int64_t m) {
    GroupSet a(g);
    for (std::int64_t x = 0; x < m; ++x) a.insert(x);
    return a;
}

}  // namespace

TEST_CASE("lp chain is an equality chain on subgroups") {
    GroupSpec g = parse_group_spec("Z32");
    GroupSet h = subgroup_generated(g, {2});
    for (std::int64_t p : {2, 4, 8}) {
        CAPTURE(p);
        LpChainReport r = lp_chain_check(h, p);
        CHECK(r.holds);
        CHECK(r.doubling == Rational(1));
        double expect = std::pow(0.5, 1.0 / double(p));
        CHECK(r.lhs == doctest::Approx(expect).epsilon(1e-9));
        CHECK(r.mid == doctest::Approx(expect).epsilon(1e-9));
        CHECK(r.rhs == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("lp chain on an interval") {
    GroupSpec g = parse_group_spec("Z100");
    LpChainReport r = lp_chain_check(interval_set(g, 10), 4);
    CHECK(r.holds);
    CHECK(r.doubling == Rational(19, 10));
    CHECK(r.lhs <= r.mid + 1e-9);
    CHECK(r.mid <= r.rhs + 1e-9);
    CHECK_THROWS(lp_chain_check(interval_set(g, 10), 3));
}

TEST_CASE("translate smoothing on a subgroup is exact") {
    GroupSpec g = parse_group_spec("Z128");
    GroupSet h = subgroup_generated(g, {2});
    SmoothingWitness w = croot_sisask_search(h, h, GroupSet::full(g), 4, 2, 1.0);
    CHECK(!w.x.empty());
    CHECK(is_subset(w.x, GroupSet::full(g)));
    CHECK(w.achieved <= w.bound * (1.0 + 1e-9) + 1e-15);
    CHECK(w.p == 4);
    CHECK(w.ell == 2);
    CHECK(w.density > Rational(0));
}

TEST_CASE("translate smoothing exhausts on an impossible tolerance") {
    GroupSpec g = parse_group_spec("Z101");
    GroupSet a = interval_set(g, 10);
    CHECK_THROWS_AS(croot_sisask_search(a, a, GroupSet::full(g), 2, 1, 1e-3), search_error);
    // theta beyond K^{-1/2} is a contract violation, not an exhausted search.
    CHECK_THROWS_AS(croot_sisask_search(a, a, GroupSet::full(g), 2, 1, 0.9), contract_error);
    CHECK_THROWS_AS(croot_sisask_search(a, a, GroupSet::full(g), 3, 1, 0.5), contract_error);
}

TEST_CASE("almost periods of a subgroup convolution") {
    GroupSpec g = parse_group_spec("Z64");
    GroupSet a = subgroup_generated(g, {4});
    ContainmentResult c = bogolyubov_containment(a);
    REQUIRE(c.verified);
    AlmostPeriodResult r = almost_period_system(a, c.system, 4);
    CHECK(r.verified);
    CHECK(r.period_count >= 1);
    CHECK(r.period_count == r.system.realize_unit().size());
    GroupSet aa = set_arith(a, a, SetOp::sum);
    CHECK(is_subset(r.system.realize_unit(), set_arith(aa, aa, SetOp::difference)));
    CHECK(!r.trace.empty());
}

TEST_CASE("packing translate") {
    GroupSpec g = parse_group_spec("Z100");
    DenseFunction ones(g);
    for (auto& v : ones.values) v = 1.0;
    CHECK(packing_translate(ones, GroupSet::from_indices(g, {0, 1, 2, 3}), 4) == 0);

    GroupSet a = interval_set(g, 20);
    DenseFunction f = convolve(indicator(a), uniform_measure(a));
    GroupSet t = GroupSet::from_indices(g, {0, 1, 2, 98, 99});
    // Supp f = {0..38}; the window {x-2..x+2} first fits at x = 2.
    CHECK(packing_translate(f, t, 8) == 2);

    GroupSpec z64 = parse_group_spec("Z64");
    GroupSet h = subgroup_generated(z64, {8});
    std::int64_t x = packing_translate(indicator(h), h, 4);
    CHECK(h.contains(x));

    // |T| must stay below 2^p.
    CHECK_THROWS(packing_translate(ones, GroupSet::from_indices(g, {0, 1, 2, 3}), 2));
    // A point mass moves too much under any shift.
    CHECK_THROWS(packing_translate(indicator(GroupSet::singleton(g, 0)),
                                   GroupSet::from_indices(g, {0, 1}), 4));
}

TEST_CASE("structure extraction windows") {
    GroupSpec z1009 = parse_group_spec("Z1009");
    ExtractionResult whole = extract_ap_or_subgroup(BourgainSystem::whole_group(z1009), 1);
    CHECK(whole.certificate.kind == StructureCertificate::Kind::proper_ap);
    CHECK(whole.t_size == 3);  // floor((2/sqrt(1009))^{-1/2})
    CHECK(whole.n == 3);
    CHECK(whole.window_ok);
    CHECK(verify_structure(whole.certificate, GroupSet::full(z1009)));

    GroupSpec z256 = parse_group_spec("Z256");
    BourgainSystem half = BourgainSystem::subgroup(subgroup_generated(z256, {2}));
    ExtractionResult sub = extract_ap_or_subgroup(half, 1);
    CHECK(sub.certificate.kind == StructureCertificate::Kind::proper_ap);
    CHECK(sub.t_size == 2);
    CHECK(sub.window_ok);
    CHECK(verify_structure(sub.certificate, half.realize_unit()));

    // Exponent 2 leaves no room for a length-3 progression; a subgroup comes
    // back instead.
    GroupSpec cube = parse_group_spec("Z2^9");
    ExtractionResult coset = extract_ap_or_subgroup(BourgainSystem::whole_group(cube), 1);
    CHECK(coset.certificate.kind == StructureCertificate::Kind::subgroup_coset);
    CHECK(coset.t_size == 4);
    CHECK(coset.window_ok);
    CHECK(verify_structure(coset.certificate, GroupSet::full(cube)));

    // The level set must hold at least 2^{6h} points.
    GroupSpec z64 = parse_group_spec("Z64");
    BourgainSystem tiny = BourgainSystem::subgroup(subgroup_generated(z64, {16}));
    CHECK_THROWS_AS(extract_ap_or_subgroup(tiny, 1), contract_error);
}

TEST_CASE("long structure inside the sumset of an interval") {
    GroupSpec g = parse_group_spec("Z1009");
    GroupSet a = interval_set(g, 20);
    LongStructureResult r = find_long_structure(a);
    CHECK(r.verified);
    CHECK(r.certificate.kind == StructureCertificate::Kind::proper_ap);
    CHECK(r.length >= 4);
    CHECK(r.doubling == Rational(39, 20));
    CHECK(!r.trace_json.empty());
    CHECK(verify_structure(r.certificate, set_arith(a, a, SetOp::sum)));
}

TEST_CASE("long structure survives an exhausted smoothing search") {
    // Three sparse intervals: the fiber search finds no smoothing witness,
    // so the period system must come from the exact growth route.
    GroupSpec g = parse_group_spec("Z4001");
    GroupSet a = gen_set(g, "union_intervals(3,20)", 42);
    LongStructureResult r = find_long_structure(a);
    CHECK(r.verified);
    CHECK(r.length >= 2);
    CHECK(verify_structure(r.certificate, set_arith(a, a, SetOp::sum)));
}

TEST_CASE("long structure collapses to a coset for coset input") {
    GroupSpec g = parse_group_spec("Z256");
    GroupSet a = gen_set(g, "coset(4)", 42);
    LongStructureResult r = find_long_structure(a);
    CHECK(r.verified);
    CHECK(r.certificate.kind == StructureCertificate::Kind::subgroup_coset);
    CHECK(verify_structure(r.certificate, set_arith(a, a, SetOp::sum)));
}
