#include <algorithm>
#include <random>

#include <catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace rvt;

static const Mechanism kMJ = Mechanism::of(BaseRule::MJ);
static Mechanism mj_plus(Rational tau = 0) { return Mechanism::of(BaseRule::MJ, 0, tau, Participation::ActiveOnly); }
static Mechanism smj_plus(Rational t) { return Mechanism::of(BaseRule::SMJ, t, 0, Participation::ActiveOnly); }

static bool has(const OutcomeRange& o, const Alternative& a) { return o.contains(a); }

TEST_CASE("outcome range basics") {
    Profile h = binary(2, 1);
    auto o = outcome_range(kMJ, h, R(1, 3));
    CHECK(o.reachable.size() == 2);
    auto z = outcome_range(kMJ, h, R(0));
    REQUIRE(z.reachable.size() == 1);
    CHECK(z.reachable[0] == kR);
}

TEST_CASE("outcome range of the 0.4 supermajority on an all-r population") {
    Profile v = binary(1, 0, 2, 0, 2, 0);
    CHECK(has(outcome_range(smj_plus(R(2, 5)), v, R(19, 3)), kP));
    CHECK_FALSE(has(outcome_range(smj_plus(R(2, 5)), v, R(18, 3)), kP));
}

TEST_CASE("outcome range is monotone in gamma") {
    std::mt19937_64 g(5);
    for (int t = 0; t < 40; ++t) {
        Profile v = binary(1 + g() % 3, g() % 3, g() % 2, g() % 2, g() % 3, g() % 3);
        Mechanism m = Mechanism::of(BaseRule::MJ, 0, R(static_cast<std::int64_t>(g() % 3), 4),
                                    g() % 2 ? Participation::Full : Participation::ActiveOnly);
        auto o0 = outcome_range(m, v, R(0));
        REQUIRE(o0.reachable.size() == 1);
        CHECK(o0.reachable[0] == apply(m, v));
        std::vector<Alternative> prev = o0.reachable;
        for (int k = 1; k <= 4; ++k) {
            auto o = outcome_range(m, v, R(k, 2));
            for (auto& a : prev) CHECK(has(o, a));
            prev = o.reachable;
        }
    }
}

TEST_CASE("outcome range refuses oversized enumerations") {
    CHECK_THROWS_AS(outcome_range(kMJ, binary(30, 30), R(1), 1000), Error);
}

TEST_CASE("safety on the five-voter population") {
    Profile v = load_profile(sample("five_voter.json"));
    CHECK(is_safe(mj_plus(), kMJ, v, R(2, 3)));
    CHECK_FALSE(is_safe(mj_plus(), kMJ, v, R(1, 3)));
    CHECK(is_safe(mj_plus(R(2, 3)), kMJ, v, R(0)));
    Profile hidden = build_profile(DomainSpec::binary(),
                                   {{VoterClass::HonestActive, Label{0}}, {VoterClass::HonestPassive, std::nullopt},
                                    {VoterClass::Sybil, Label{1}}, {VoterClass::Sybil, Label{1}}});
    CHECK_THROWS_AS(is_safe(mj_plus(), kMJ, hidden, R(0)), Error);
}

// Oracle: majority flips once k new p voters replace k r voters with
// hp + k > hr - k.
static std::int64_t mj_budget(std::int64_t hr, std::int64_t hp) { return hr < hp ? 0 : (hr - hp) / 2 + 1; }

TEST_CASE("instance min alpha matches the majority replacement count") {
    std::mt19937_64 g(9);
    for (int t = 0; t < 300; ++t) {
        std::int64_t ar = g() % 5, ap = g() % 5, pr = g() % 4, pp = g() % 4, sr = g() % 4, sp = g() % 6;
        if (ar + ap == 0) ar = 1;
        Profile v = binary(ar, ap, pr, pp, sr, sp);
        Mechanism m = mj_plus(R(static_cast<std::int64_t>(g() % 3), 4));
        auto a = instance_min_alpha(m, kMJ, v, 100);
        REQUIRE(a);
        std::int64_t h = ar + ap + pr + pp;
        Rational want = apply(m, v) == kR ? R(0) : R(mj_budget(ar + pr, ap + pp), h);
        CHECK(*a == want);
    }
}

TEST_CASE("line search agrees with exhaustive enumeration") {
    std::mt19937_64 g(21);
    const Mechanism md = Mechanism::of(BaseRule::MD);
    for (int t = 0; t < 60; ++t) {
        std::vector<Rational> hs;
        std::size_t n = 1 + g() % 4;
        for (std::size_t i = 0; i < n; ++i) hs.push_back(R(static_cast<std::int64_t>(g() % 9)));
        Rational r(static_cast<std::int64_t>(g() % 9));
        Profile h = line(r, hs, {}, {});
        Rational target(static_cast<std::int64_t>(g() % 9));
        Goal goal = Goal::covering(h.domain(), Alternative{target});
        auto k = min_budget(md, h, goal, 6);
        std::optional<std::int64_t> brute;
        for (std::int64_t b = 0; b <= 6 && !brute; ++b) {
            auto o = outcome_range(md, h, R(b, static_cast<std::int64_t>(n)));
            bool hit = o.unbounded_above && !(target < r) || o.unbounded_below && target < r;
            for (auto& y : o.reachable) hit = hit || goal.met(y);
            if (hit) brute = b;
        }
        INFO(dump_profile(h) << " target " << to_string(target));
        CHECK(k == brute);
    }
}

TEST_CASE("liveness examples") {
    auto d = DomainSpec::binary();
    Shape partial = Shape::of(5, R(2, 5), R(2, 5));
    CHECK(is_live(mj_plus(), partial, d, kP, R(3)));
    CHECK_FALSE(is_live(mj_plus(), partial, d, kP, R(2)));
    CHECK(is_live(smj_plus(R(2, 5)), partial, d, kP, R(19)));
    CHECK_FALSE(is_live(smj_plus(R(2, 5)), partial, d, kP, R(18)));
    Shape full = Shape::of(5, R(2, 5), R(0));
    CHECK(is_live(kMJ, full, d, kP, R(1)));
    CHECK_FALSE(is_live(kMJ, full, d, kP, R(2, 3)));
    CHECK(min_live_beta(Mechanism::of(BaseRule::SMJ, R(2, 5)), full, d, kP) == R(19, 3));
    CHECK_THROWS_AS(Shape::of(5, R(1, 3), R(0)), Error);
}

TEST_CASE("min alpha examples") {
    auto d = DomainSpec::binary();
    CHECK(min_alpha(kMJ, kMJ, Shape::of(5, R(2, 5), R(0)), d) == R(1, 3));
    CHECK(min_alpha(mj_plus(R(4, 5)), kMJ, Shape::of(5, R(2, 5), R(2, 5)), d) == R(1, 3));
    CHECK(min_alpha(kMJ, kMJ, Shape::of(4, R(0), R(0)), d) == R(0));
    CHECK(min_alpha(mj_plus(), kMJ, Shape::of(5, R(2, 5), R(2, 5)), d) == R(2, 3));
}

TEST_CASE("tightness witness, safety") {
    auto w = tightness_witness(WitnessKind::SafetyTightness, {R(1, 5), R(1, 5), R(0), R(1, 10)});
    REQUIRE(w.v);
    CHECK(apply(mj_plus(), *w.v) == kP);
    CHECK_FALSE(is_safe(mj_plus(), kMJ, *w.v, R(1, 10)));
    CHECK(replay(w));
    CHECK(w.params.at("epsilon") == R(3, 20));
    CHECK_THROWS_AS(tightness_witness(WitnessKind::SafetyTightness, {R(1, 5), R(1, 5), R(0), R(1, 4)}), Error);
}

TEST_CASE("tightness witness, arbitrary lower bound") {
    auto w = tightness_witness(WitnessKind::ArbitraryLowerBound, {R(1, 4), R(3, 20)});
    REQUIRE(w.v);
    REQUIRE(w.v_bar);
    auto m = mj_plus();
    CHECK(visible_electorate(m, *w.v).entries.size() == visible_electorate(m, *w.v_bar).entries.size());
    std::int64_t hr = 0, hp = 0;
    for (const Voter& x : w.v_bar->voters())
        if (is_honest(x.cls)) (std::get<Label>(*x.ballot).index ? hp : hr)++;
    CHECK(hr >= hp);
    CHECK(replay(w));
    CHECK_THROWS_AS(tightness_witness(WitnessKind::ArbitraryLowerBound, {R(1, 10), R(1, 10)}), Error);
}

TEST_CASE("tightness witness, random lower bound") {
    auto w = tightness_witness(WitnessKind::RandomLowerBound, {R(1, 4), R(3, 10)});
    REQUIRE(w.nv_bar);
    CHECK(w.nv_bar->honest_r >= w.nv_bar->honest_p);
    CHECK(replay(w));
}

TEST_CASE("nonatomic evaluation") {
    CHECK(nonatomic_eval(NonatomicProfile::make(R(1, 2), R(1, 2), R(0), R(0), R(1, 3)), R(0)) == kR);
    // sigma = 3/10 on p, honest gap just above / below 2 * 3/20 of V
    auto near = [](Rational gap) {
        Rational h = R(7, 10);
        return NonatomicProfile::make((h + gap) / 2, (h - gap) / 2, R(0), R(3, 10), R(1));
    };
    CHECK(nonatomic_eval(near(R(3, 10) + R(1, 100)), R(0)) == kR);
    CHECK(nonatomic_eval(near(R(3, 10) - R(1, 100)), R(0)) == kP);
    CHECK(nonatomic_eval(NonatomicProfile::make(R(0), R(1), R(0), R(0), R(1, 2)), R(1, 2)) == kP);
}

TEST_CASE("median reduction hand instance") {
    Profile v = line(R(4), ints({4, 4, 12}), {}, ints({20, 20}));
    auto md_plus = Mechanism::of(BaseRule::MD, 0, 0, Participation::ActiveOnly);
    CHECK(apply(md_plus, v) == Alternative{R(12)});
    CHECK_FALSE(is_safe(md_plus, Mechanism::of(BaseRule::MD), v, R(0)));
    CHECK(reduction_check(v, R(0), R(0)));
    CHECK(reduction_check(line(R(4), ints({4, 4}), {}, {}), R(0), R(0)));
}
