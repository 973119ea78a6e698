#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "sdkim/angle.hpp"
#include "sdkim/model.hpp"

using namespace sdkim;

TEST_CASE("parse_angle accepts pi-fraction grammar") {
    CHECK(parse_angle("pi") == doctest::Approx(pi).epsilon(1e-15));
    CHECK(parse_angle("-pi/2") == doctest::Approx(-pi / 2).epsilon(1e-15));
    CHECK(parse_angle("2pi/3") == doctest::Approx(2 * pi / 3).epsilon(1e-15));
    CHECK(parse_angle("3*pi/4") == doctest::Approx(3 * pi / 4).epsilon(1e-15));
    CHECK(parse_angle("pi/14") == doctest::Approx(pi / 14).epsilon(1e-15));
    CHECK(parse_angle("0") == 0.0);
    CHECK(parse_angle("0.5") == 0.5);
    CHECK(parse_angle("-1.25") == -1.25);
    CHECK(parse_angle("1/2") == 0.5);
}

TEST_CASE("parse_angle rejects malformed input") {
    CHECK_THROWS_AS(parse_angle(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("pie"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("pi/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("pi/3x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("1/2/3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("--pi"), std::invalid_argument);
}

TEST_CASE("format_angle recovers exact pi fractions") {
    CHECK(format_angle(pi / 3) == "pi/3");
    CHECK(format_angle(-pi / 14) == "-pi/14");
    CHECK(format_angle(pi) == "pi");
    CHECK(format_angle(2 * pi / 7) == "2pi/7");
    CHECK(format_angle(pi / 4) == "pi/4");
    CHECK(format_angle(0.0) == "0");
}

TEST_CASE("format/parse round-trips bit-exactly") {
    for (double x : {pi / 3, -pi / 14, 3 * pi / 8, 0.0, 0.123456789, -2.5,
                     1.0471975511965979}) {
        CAPTURE(x);
        CHECK(parse_angle(format_angle(x)) == x);
    }
}
