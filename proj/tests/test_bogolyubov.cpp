#include "doctest.h"

#include "bourgainlab/bogolyubov.hpp"
#include "bourgainlab/gen.hpp"

#include "json.hpp"

#include <cmath>
#include <vector>

using namespace bourgainlab;

namespace {

GroupSet two_a_minus_two_a(const GroupSet& a) {
    GroupSet aa = set_arith(a, a, SetOp::sum);
    return set_arith(aa, aa, SetOp::difference);
}

}  // namespace

TEST_CASE("containment for a subgroup is the subgroup itself") {
    GroupSpec g = parse_group_spec("Z16");
    GroupSet a = subgroup_generated(g, {2});
    ContainmentResult r = bogolyubov_containment(a);
    CHECK(r.verified);
    CHECK(r.threshold == doctest::Approx(std::sqrt(0.5) / 2.0));
    CHECK(r.margin > 0.0);
    GroupSet unit = r.system.realize_unit();
    CHECK(is_subset(unit, two_a_minus_two_a(a)));
    // 2A - 2A = A for a subgroup, and the Bohr set of its annihilator
    // recovers all of A.
    CHECK(unit == a);
}

TEST_CASE("containment verified externally on a random dense set") {
    GroupSpec g = parse_group_spec("Z64");
    GroupSet a = gen_set(g, "random(0.5)", 7);
    REQUIRE(a.size() >= 16);
    ContainmentResult r = bogolyubov_containment(a);
    CHECK(r.verified);
    CHECK(!r.spectrum.empty());
    CHECK(double(r.spectrum.size()) <=
          4.0 / std::pow(double(a.size()) / 64.0, 2.0) + 0.5);
    CHECK(is_subset(r.system.realize_unit(), two_a_minus_two_a(a)));
}

TEST_CASE("correlation locate meets the half-doubling target") {
    GroupSpec g = parse_group_spec("Z100");
    GroupSet a = GroupSet::from_indices(g, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    Rational k = doubling_constant(a);
    REQUIRE(k == Rational(19, 10));
    CorrelationResult r = correlation_locate(a, k);
    CHECK(r.target == Rational(5, 19));
    CHECK(r.meets);
    CHECK(r.value >= r.target);
    // The recorded value is the exact correlation at the recorded translate.
    std::int64_t hits = 0;
    for (std::int64_t m : r.structure.members())
        hits += a.contains(g.sub(r.translate, m)) ? 1 : 0;
    CHECK(r.value == Rational(hits, r.structure.size()));

    CHECK_THROWS(correlation_locate(a, Rational(2)));
}

TEST_CASE("pluennecke chain on an interval") {
    GroupSpec g = parse_group_spec("Z100");
    GroupSet a = GroupSet::from_indices(g, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    PluenneckeReport r = pluennecke_chain_check(a);
    CHECK(r.sumset_size == 19);
    CHECK(r.iterated_size == 46);
    CHECK(r.doubling == Rational(19, 10));
    CHECK(r.holds);
}

TEST_CASE("pluennecke chain is tight on a subgroup") {
    GroupSpec g = parse_group_spec("Z16");
    PluenneckeReport r = pluennecke_chain_check(subgroup_generated(g, {4}));
    CHECK(r.sumset_size == 4);
    CHECK(r.iterated_size == 4);
    CHECK(r.doubling == Rational(1));
    CHECK(r.holds);
}

TEST_CASE("holder-young chain") {
    GroupSpec g = parse_group_spec("Z8");
    GroupSet full = GroupSet::full(g);
    HolderYoungReport flat = holder_young_chain(full, full, uniform_measure(full));
    CHECK(flat.holds);
    CHECK(flat.inner == doctest::Approx(1.0));
    CHECK(flat.middle == doctest::Approx(1.0));
    CHECK(flat.outer == doctest::Approx(1.0));

    GroupSet a = GroupSet::from_indices(g, {0, 1});
    GroupSet v = subgroup_generated(g, {2});
    HolderYoungReport r = holder_young_chain(a, v, point_mass(g, 0));
    CHECK(r.holds);
    CHECK(r.inner <= r.middle + 1e-9);
    CHECK(r.middle <= r.outer + 1e-9);

    CHECK_THROWS(holder_young_chain(a, GroupSet::from_indices(g, {1, 2}),
                                    point_mass(g, 0)));
}

TEST_CASE("surrogate results say so in their serialization") {
    GroupSpec g = parse_group_spec("Z16");
    GroupSet a = subgroup_generated(g, {2});
    ContainmentResult c = bogolyubov_containment(a);
    nlohmann::json cj = nlohmann::json::parse(containment_to_json(c, g));
    CHECK(cj.at("surrogate").get<bool>());
    CHECK(cj.at("verified").get<bool>());
    CHECK(cj.at("dimension").get<std::size_t>() == c.spectrum.size());

    CorrelationResult corr = correlation_locate(a, Rational(1));
    nlohmann::json rj = nlohmann::json::parse(correlation_to_json(corr));
    CHECK(rj.at("surrogate").get<bool>());
    CHECK(rj.at("meets").get<bool>());
}
