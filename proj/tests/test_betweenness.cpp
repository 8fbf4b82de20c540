#include <catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace rvt;

TEST_CASE("label domains: the pair itself") {
    auto d = DomainSpec::categorical({"r", "a", "b"}, "r");
    auto b = between(d, Label{0}, Label{2});
    CHECK(b.contains(Label{0}));
    CHECK(b.contains(Label{2}));
    CHECK_FALSE(b.contains(Label{1}));
}

TEST_CASE("hypercube: agreeing coordinates are fixed") {
    auto d = DomainSpec::hypercube({0, 0, 0});
    auto b = between(d, Point{0, 0, 0}, Point{1, 1, 0});
    CHECK(b.members().size() == 4);
    CHECK(b.contains(Point{1, 0, 0}));
    CHECK_FALSE(b.contains(Point{0, 0, 1}));
    // union of two boxes is not a box
    auto u = between_union(d, Point{0, 0, 0}, {Point{1, 0, 0}, Point{0, 1, 0}});
    CHECK(u.members().size() == 3);
    CHECK_FALSE(u.contains(Point{1, 1, 0}));
}

TEST_CASE("line: closed segment, either orientation") {
    auto d = DomainSpec::interval(R(4));
    auto b = between(d, R(4), R(1));
    CHECK(b.contains(R(1)));
    CHECK(b.contains(R(5, 2)));
    CHECK_FALSE(b.contains(R(5)));
    auto u = between_union(d, R(4), {R(1), R(7)});
    CHECK(u.contains(R(6)));
}

TEST_CASE("errors") {
    auto d = DomainSpec::binary();
    CHECK_THROWS_AS(between_union(d, Label{0}, {}), Error);
    CHECK_THROWS_AS(between(d, Label{0}, Point{1}), Error);
}
