#include <catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace rvt;

static Profile line15() { return load_profile(sample("line15.json")); }

TEST_CASE("weighted median uses the lower formula") {
    CHECK(weighted_median({{R(9), R(5)}}) == R(9));
    CHECK(weighted_median({{R(3), R(1)}, {R(1), R(1)}, {R(2), R(1)}}) == R(2));
    CHECK(weighted_median({{R(0), R(1)}, {R(10), R(1)}}) == R(0));
    CHECK_THROWS_AS(weighted_median({}), Error);
}

TEST_CASE("delegation on the 15-voter line") {
    Profile v = line15();
    auto w = delegate(v, R(1, 4));
    CHECK(w.q == R(3));
    // voters: 0,1 active at 5,13; 2..8 passives at 2,7,11,12,12,16,17; 9..11 sybils at 8,15,15
    auto pos = [&](std::size_t i) { return w.entities[w.assignment[i]].position; };
    CHECK(w.entities[w.assignment[2]].is_status_quo());
    CHECK(pos(3) == R(8));
    CHECK(pos(4) == R(13));
    CHECK(pos(5) == R(13));
    CHECK(pos(6) == R(13));
    CHECK(pos(7) == R(15));
    CHECK(pos(8) == R(15));
    CHECK(w.total() == R(12) + R(3));
    CHECK(md_proxy(v, R(1, 4)) == R(13));
    CHECK(apply(Mechanism::of(BaseRule::MD, 0, R(1, 4), Participation::Proxy), v) == Alternative{R(13)});
}

TEST_CASE("r with a unit base weight moves the 15-voter line outcome") {
    DelegationOptions opt{true, true};
    CHECK(md_proxy(line15(), R(1, 4), opt) == R(8));
}

TEST_CASE("delegation ties go toward r") {
    // passive at 6 is 2 from r=4 and 2 from the active voter at 8
    Profile v = line(R(4), ints({8}), ints({6}), {});
    auto w = delegate(v, R(0));
    CHECK(w.entities[w.assignment[1]].is_status_quo());
    // equidistant actives on both sides of x: the one nearer r wins
    Profile u = line(R(0), ints({4, 8}), ints({6}), {});
    auto wu = delegate(u, R(0));
    CHECK(wu.entities[wu.assignment[2]].position == R(4));
}

TEST_CASE("passive at an active voter's position follows it") {
    Profile v = line(R(0), ints({5}), ints({5, 5}), {});
    auto w = delegate(v, R(0));
    CHECK(w.entities[0].weight == R(3));
    CHECK(md_proxy(v, R(0)) == R(5));
}

TEST_CASE("all active reduces to the median with q") {
    Profile v = line(R(4), ints({2, 5, 7, 11, 12, 12, 13, 16, 17}), {}, ints({8, 15, 15}));
    CHECK(md_proxy(v, R(1, 4)) == std::get<Rational>(apply(Mechanism::of(BaseRule::MD, 0, R(1, 4)), v)));
}

TEST_CASE("proxy mode needs positions") {
    Profile v = build_profile(DomainSpec::interval(R(0)),
                              {{VoterClass::HonestActive, Ballot{R(1)}}, {VoterClass::HonestPassive, std::nullopt}});
    CHECK_THROWS_AS(delegate(v, R(0)), Error);
    CHECK_THROWS_AS(delegate(binary(1, 0), R(0)), Error);
}

TEST_CASE("delegation matches a scan over every proxy") {
    std::mt19937_64 g(5);
    for (int t = 0; t < 3000; ++t) {
        std::vector<Voter> vs;
        std::size_t n = 1 + g() % 20;
        for (std::size_t i = 0; i < n; ++i)
            vs.push_back({i == 0 ? VoterClass::HonestActive : static_cast<VoterClass>(g() % 3),
                          Ballot{R(static_cast<std::int64_t>(g() % 9) - 4)}});
        Profile v = build_profile(DomainSpec::interval(R(static_cast<std::int64_t>(g() % 9) - 4)), std::move(vs));
        auto w = delegate(v, R(1, 4));
        // entities as built before any follower is attached
        std::vector<ProxyEntity> es;
        for (const auto& e : w.entities) es.push_back({e.position, R(0), e.voter, 0});
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (is_active(v.voters()[i].cls)) continue;
            const Rational& x = std::get<Rational>(*v.voters()[i].ballot);
            CHECK(w.assignment[i] == detail::nearest_entity(es, x, v.domain().status_quo_position()));
        }
    }
}
