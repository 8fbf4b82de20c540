#include <catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace rvt;

TEST_CASE("parse accepts fractions, integers and exact decimals") {
    CHECK(parse_rational("2/5") == R(2, 5));
    CHECK(parse_rational(" 4/10 ") == R(2, 5));
    CHECK(parse_rational("0.4") == R(2, 5));
    CHECK(parse_rational("-1.25") == R(-5, 4));
    CHECK(parse_rational("-0.5") == R(-1, 2));
    CHECK(parse_rational("7") == R(7));
    CHECK(parse_rational(".5") == R(1, 2));
}

TEST_CASE("parse rejects junk") {
    for (const char* s : {"", "a", "1/0", "1/", "/3", "1.", "1e3", "0.1.2", "99999999999999999999"}) {
        INFO(s);
        CHECK_THROWS_AS(parse_rational(s), Error);
    }
    try {
        parse_rational("x");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ParseError);
    }
}

TEST_CASE("canonical form always carries a denominator") {
    CHECK(to_string(R(3)) == "3/1");
    CHECK(to_string(R(-6, 4)) == "-3/2");
    CHECK(to_display(R(3)) == "3");
    CHECK(to_display(R(1, 3)) == "1/3");
}

TEST_CASE("floor and ceil round toward the right side for negatives") {
    CHECK(realityvote::floor(R(-1, 2)) == -1);
    CHECK(realityvote::ceil(R(-1, 2)) == 0);
    CHECK(realityvote::floor(R(7, 2)) == 3);
    CHECK(realityvote::ceil(R(7, 2)) == 4);
    CHECK(realityvote::ceil(R(4)) == 4);
}
