#include "doctest.h"

#include "bourgainlab/rational.hpp"

#include <cstdint>

using namespace bourgainlab;

TEST_CASE("rational normalization") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, 4) == Rational(-1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(6, 3).num == 2);
    CHECK(Rational(6, 3).den == 1);
    CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("rational arithmetic") {
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
    CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
    CHECK(Rational(1, 2) / Rational(3, 4) == Rational(2, 3));
    CHECK(-Rational(1, 2) == Rational(-1, 2));
    CHECK_THROWS(Rational(1, 2) / Rational(0));

    // Intermediates that overflow int64 but reduce back down.
    Rational big(INT64_MAX / 3, 1);
    CHECK(big * Rational(3, INT64_MAX / 3) == Rational(3));
}

TEST_CASE("rational ordering") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(2, 4) <= Rational(1, 2));
    CHECK(Rational(1, 2) >= Rational(1, 2));
    CHECK(Rational(7, 5) > Rational(4, 3));
    CHECK(rational_min(Rational(1, 3), Rational(1, 4)) == Rational(1, 4));
    CHECK(rational_max(Rational(1, 3), Rational(1, 4)) == Rational(1, 3));
    CHECK(rational_abs(Rational(-3, 7)) == Rational(3, 7));
}

TEST_CASE("rational floor") {
    CHECK(rational_floor(Rational(7, 2)) == 3);
    CHECK(rational_floor(Rational(-7, 2)) == -4);
    CHECK(rational_floor(Rational(6, 2)) == 3);
    CHECK(rational_floor(Rational(0)) == 0);
    CHECK(floor_div(-1, 3) == -1);
    CHECK(floor_div(1, 3) == 0);
}

TEST_CASE("rational parse and str round trip") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-3/4") == Rational(-3, 4));
    CHECK(parse_rational("5") == Rational(5));
    CHECK(parse_rational(Rational(22, 7).str()) == Rational(22, 7));
    CHECK(Rational(4).str() == "4");
    CHECK(Rational(1, 2).str() == "1/2");
    CHECK(Rational(-1, 2).str() == "-1/2");
}

TEST_CASE("rational from double") {
    CHECK(rational_from_double(0.5) == Rational(1, 2));
    CHECK(rational_from_double(0.25) == Rational(1, 4));
    CHECK(rational_from_double(-0.75) == Rational(-3, 4));
    CHECK(rational_from_double(3.0) == Rational(3));
    CHECK(rational_from_double(0.0) == Rational(0));

    // 1/3 is not a dyadic double; recover it within 1e-12.
    Rational third = rational_from_double(1.0 / 3.0);
    CHECK(std::abs(third.value() - 1.0 / 3.0) < 1e-12);

    // Bounded denominator approximation of pi.
    Rational pi = rational_from_double(3.14159265358979, 1000);
    CHECK(pi.den <= 1000);
    CHECK(std::abs(pi.value() - 3.14159265358979) < 1e-5);
}

TEST_CASE("rational value") {
    CHECK(Rational(1, 2).value() == doctest::Approx(0.5));
    CHECK(Rational(-7, 4).value() == doctest::Approx(-1.75));
}
