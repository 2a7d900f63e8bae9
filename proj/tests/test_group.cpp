#include "doctest.h"

#include "bourgainlab/group.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>
#include <vector>

using namespace bourgainlab;

TEST_CASE("group spec parsing") {
    GroupSpec z7 = parse_group_spec("Z7");
    CHECK(z7.moduli == std::vector<std::int64_t>{7});
    CHECK(z7.order == 7);
    CHECK(z7.exponent == 7);

    GroupSpec z34 = parse_group_spec("Z3^4");
    CHECK(z34.moduli == std::vector<std::int64_t>{3, 3, 3, 3});
    CHECK(z34.order == 81);
    CHECK(z34.exponent == 3);

    GroupSpec mix = parse_group_spec("Z4xZ8");
    CHECK(mix.moduli == std::vector<std::int64_t>{4, 8});
    CHECK(mix.order == 32);
    CHECK(mix.exponent == 8);
    CHECK(mix.phase_weights == std::vector<std::int64_t>{2, 1});
    CHECK(mix.str() == "Z4xZ8");
    CHECK(parse_group_spec("Z3^4").str() == "Z3^4");

    CHECK_THROWS(parse_group_spec(""));
    CHECK_THROWS(parse_group_spec("7"));
    CHECK_THROWS(parse_group_spec("Zx"));
    CHECK_THROWS(parse_group_spec("Z4x"));
}

TEST_CASE("coordinate indexing is a little-endian bijection") {
    GroupSpec g = parse_group_spec("Z4xZ8");
    CHECK(g.coords_of(11) == std::vector<std::int64_t>{3, 2});
    CHECK(g.index_of({3, 2}) == 11);
    for (std::int64_t x = 0; x < g.order; ++x) {
        auto c = g.coords_of(x);
        REQUIRE(c.size() == 2);
        CHECK(x == c[0] + 4 * c[1]);
        CHECK(g.index_of(c) == x);
    }
}

TEST_CASE("group operations") {
    GroupSpec g = parse_group_spec("Z4xZ8");
    std::int64_t a = g.index_of({3, 5});
    std::int64_t b = g.index_of({2, 6});
    CHECK(g.add(a, b) == g.index_of({1, 3}));
    CHECK(g.neg(a) == g.index_of({1, 3}));
    CHECK(g.sub(a, b) == g.index_of({1, 7}));
    CHECK(g.add(a, g.neg(a)) == 0);
    CHECK(g.scale(3, a) == g.index_of({1, 7}));
    CHECK(g.scale(-1, a) == g.neg(a));
    CHECK(g.scale(0, a) == 0);
    CHECK(g.scale(8, a) == g.index_of({0, 0}));
}

TEST_CASE("element order") {
    GroupSpec g = parse_group_spec("Z2xZ3");
    CHECK(element_order(g, 0) == 1);
    CHECK(element_order(g, g.index_of({1, 0})) == 2);
    CHECK(element_order(g, g.index_of({0, 1})) == 3);
    CHECK(element_order(g, g.index_of({1, 1})) == 6);

    GroupSpec z12 = parse_group_spec("Z12");
    CHECK(element_order(z12, 4) == 3);
    CHECK(element_order(z12, 5) == 12);
}

TEST_CASE("characters: phase numerator and torus norm") {
    GroupSpec z5 = parse_group_spec("Z5");
    CHECK(z5.phase_numerator(1, 2) == 2);
    CHECK(z5.phase_numerator(2, 4) == 3);
    CHECK(z5.phase_numerator(0, 3) == 0);

    GroupSpec g = parse_group_spec("Z4xZ8");
    // chi at (1,1) on (2,3): 1*2*(8/4) + 1*3*(8/8) = 7 mod 8.
    CHECK(g.phase_numerator(g.index_of({1, 1}), g.index_of({2, 3})) == 7);

    GroupSpec z8 = parse_group_spec("Z8");
    CHECK(character_torus_norm(z8, 1, 3) == Rational(3, 8));
    CHECK(character_torus_norm(z8, 1, 5) == Rational(3, 8));
    CHECK(character_torus_norm(z8, 1, 4) == Rational(1, 2));
    CHECK(character_torus_norm(z8, 1, 0) == Rational(0));
    CHECK(character_gap(z8, 1, 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(character_gap(z8, 1, 0) == doctest::Approx(0.0));

    // Pairing symmetry: the phase is bilinear in (char, elt).
    for (std::int64_t j = 0; j < g.order; ++j)
        for (std::int64_t x = 0; x < g.order; ++x)
            CHECK(g.phase_numerator(j, x) == g.phase_numerator(x, j));
}

TEST_CASE("element strings") {
    CHECK(element_str(parse_group_spec("Z10"), 7) == "7");
    GroupSpec g = parse_group_spec("Z4xZ8");
    CHECK(element_str(g, g.index_of({2, 3})) == "(2,3)");
}

TEST_CASE("group set basics") {
    GroupSpec g = parse_group_spec("Z8");
    GroupSet a(g);
    CHECK(a.empty());
    a.insert(1);
    a.insert(2);
    a.insert(3);
    a.insert(3);
    CHECK(a.size() == 3);
    CHECK(a.contains(2));
    CHECK(!a.contains(5));
    a.erase(2);
    a.erase(2);
    CHECK(a.size() == 2);
    CHECK(a.members() == std::vector<std::int64_t>{1, 3});

    CHECK(GroupSet::full(g).size() == 8);
    CHECK(GroupSet::singleton(g, 5).members() == std::vector<std::int64_t>{5});
    CHECK(GroupSet::from_indices(g, {4, 2, 4}).members() == std::vector<std::int64_t>{2, 4});
}

TEST_CASE("group set algebra") {
    GroupSpec g = parse_group_spec("Z8");
    GroupSet a = GroupSet::from_indices(g, {1, 2, 3});
    GroupSet b = GroupSet::from_indices(g, {2, 3, 5});
    CHECK(set_union(a, b).members() == std::vector<std::int64_t>{1, 2, 3, 5});
    CHECK(set_intersect(a, b).members() == std::vector<std::int64_t>{2, 3});
    CHECK(set_minus(a, b).members() == std::vector<std::int64_t>{1});
    CHECK(is_subset(set_intersect(a, b), a));
    CHECK(!is_subset(a, b));
    CHECK(translate_set(a, 6).members() == std::vector<std::int64_t>{0, 1, 7});
    CHECK(negate_set(a).members() == std::vector<std::int64_t>{5, 6, 7});
    CHECK(dilate_set(2, a).members() == std::vector<std::int64_t>{2, 4, 6});
}

TEST_CASE("sumsets match pair enumeration") {
    GroupSpec g = parse_group_spec("Z4xZ8");
    GroupSet a = GroupSet::from_indices(g, {0, 1, 5, 9, 17, 31});
    GroupSet b = GroupSet::from_indices(g, {2, 3, 11, 30});

    for (SetOp op : {SetOp::sum, SetOp::difference}) {
        std::set<std::int64_t> expect;
        for (std::int64_t x : a.members())
            for (std::int64_t y : b.members())
                expect.insert(op == SetOp::sum ? g.add(x, y) : g.sub(x, y));
        auto got = set_arith(a, b, op).members();
        CHECK(got == std::vector<std::int64_t>(expect.begin(), expect.end()));
    }
}

TEST_CASE("subgroups") {
    GroupSpec z8 = parse_group_spec("Z8");
    CHECK(subgroup_generated(z8, {2}).members() == std::vector<std::int64_t>{0, 2, 4, 6});
    CHECK(subgroup_generated(z8, {}).members() == std::vector<std::int64_t>{0});
    CHECK(is_subgroup(subgroup_generated(z8, {2})));
    CHECK(!is_subgroup(GroupSet::from_indices(z8, {0, 1, 2})));
    CHECK(!is_subgroup(GroupSet::from_indices(z8, {1, 3})));

    GroupSpec z12 = parse_group_spec("Z12");
    CHECK(subgroup_generated(z12, {8}).members() == std::vector<std::int64_t>{0, 4, 8});

    GroupSpec g = parse_group_spec("Z2xZ3");
    CHECK(subgroup_generated(g, {g.index_of({1, 0}), g.index_of({0, 1})}).size() == 6);
}

TEST_CASE("ruzsa cover guarantee") {
    GroupSpec g = parse_group_spec("Z100");
    GroupSet s = GroupSet::from_indices(g, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    GroupSet b = GroupSet::from_indices(g, {0, 1});
    GroupSet x = ruzsa_cover(s, b);

    GroupSet cover = set_arith(x, set_arith(b, b, SetOp::difference), SetOp::sum);
    CHECK(is_subset(s, cover));
    std::int64_t sb = set_arith(s, b, SetOp::sum).size();
    CHECK(x.size() * b.size() <= sb);

    // Translates x+B over x in X are pairwise disjoint.
    std::int64_t covered = set_arith(x, b, SetOp::sum).size();
    CHECK(covered == x.size() * b.size());
}

TEST_CASE("doubling constant") {
    GroupSpec g = parse_group_spec("Z100");
    GroupSet a = GroupSet::from_indices(g, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    CHECK(doubling_constant(a) == Rational(19, 10));

    GroupSet h = subgroup_generated(parse_group_spec("Z8"), {2});
    CHECK(doubling_constant(h) == Rational(1));
}
