#include <cmath>

#include <catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace rvt;

static Profile half_and_half(std::int64_t h, std::int64_t s) { return binary(h / 2, h - h / 2, 0, 0, 0, s); }

TEST_CASE("random engine is reproducible and in range") {
    auto a = trial_engine(1, 2), b = trial_engine(1, 2), c = trial_engine(1, 3);
    CHECK(a() == b());
    CHECK(trial_engine(1, 2)() != c());
    auto g = trial_engine(9, 0);
    for (int i = 0; i < 1000; ++i) CHECK(bounded(g, 7) < 7);
    auto idx = sample_without_replacement(g, 10, 10);
    std::sort(idx.begin(), idx.end());
    for (std::size_t i = 0; i < 10; ++i) CHECK(idx[i] == i);
}

TEST_CASE("hoeffding diagnostic") {
    Profile t = binary(200, 200, 0, 0, 0, 0);
    auto s = hoeffding_diagnostic(t, 100, R(1, 10), 500, 17);
    CHECK(s.bound_value == Catch::Approx(std::exp(-2.0)));
    CHECK(s.passes());
    CHECK(hoeffding_diagnostic(t, 100, R(1, 10), 500, 17).violation_count == s.violation_count);
    // excess beyond 1 - psi is impossible
    CHECK(hoeffding_diagnostic(t, 50, R(1, 2), 200, 3).violation_count == 0);
    // full sample: count is exactly psi n+
    CHECK(hoeffding_diagnostic(t, 400, R(1, 100), 20, 3).violation_count == 0);
}

TEST_CASE("safety whp with everyone active is deterministic") {
    Profile t = binary(5, 3, 0, 0, 0, 3);
    Experiment e{t, Mechanism::of(BaseRule::MJ, 0, 0, Participation::ActiveOnly), Mechanism::of(BaseRule::MJ), R(1, 100),
                 30, 4, 8};
    auto s = run_safety_whp(e);
    CHECK((s.violation_count == 0 || s.violation_count == 30));
    CHECK(s.violation_count == 30);  // 3 sybils + 3 p beat 5 r, honest majority is r
    Experiment bad = e;
    bad.n_plus = 9;
    CHECK_THROWS_AS(run_safety_whp(bad), Error);
    bad = e;
    bad.alpha_prime = R(0);
    CHECK_THROWS_AS(run_safety_whp(bad), Error);
}

TEST_CASE("safety whp decays above the random threshold") {
    // sigma = 1/5, mu = 1/5, honest split evenly, sybils on p; tau above sigma/(1-mu)
    Profile t = half_and_half(320, 80);
    Rational tau = R(1, 4) + R(1, 10);
    Experiment e{t, Mechanism::of(BaseRule::MJ, 0, tau, Participation::ActiveOnly), Mechanism::of(BaseRule::MJ),
                 R(1, 1000), 200, 8, 240};
    auto s = run_safety_whp(e);
    CHECK(s.empirical_rate <= R(1, 50));
}

TEST_CASE("proxy whp with everyone active and tau >= sigma never violates") {
    Profile t = line(R(0), ints({1, 2, 3, 5, 8, 13, 21, 34}), {}, ints({40, 40}));
    Experiment e{t, Mechanism::of(BaseRule::MD, 0, R(1, 5), Participation::Proxy), Mechanism::of(BaseRule::MD), R(1),
                 20, 2, 8};
    auto s = run_proxy_whp(e, R(1, 20));
    CHECK(s.violation_count == 0);
    CHECK(s.bound_value == Catch::Approx(std::pow(0.95, 8)));
}

TEST_CASE("proxy whp alpha prime") {
    CHECK(proxy_alpha_prime(R(1, 20), R(1, 5), R(1, 5)) == R(1, 20));
    CHECK(proxy_alpha_prime(R(1, 20), R(1, 5), R(0)) == R(1, 20) + R(1, 8));
}

TEST_CASE("safety whp near the flip point violates about half the time") {
    // n = 400: 80 sybils on p, 200 of 320 honest active. p wins iff more
    // than 60 active honest voters are on p; 98 honest p voters put the
    // expected count just above that, while the honest majority is r by 124.
    Profile t = binary(222, 98, 0, 0, 0, 80);
    Experiment e{t, Mechanism::of(BaseRule::MJ, 0, 0, Participation::ActiveOnly), Mechanism::of(BaseRule::MJ), R(1, 100),
                 400, 21, 200};
    auto s = run_safety_whp(e);
    CHECK(s.empirical_rate >= R(45, 100));
    CHECK(s.empirical_rate < R(1));
}
