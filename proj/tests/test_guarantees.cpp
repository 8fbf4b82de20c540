#include <catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace rvt;

TEST_CASE("safety thresholds") {
    CHECK(safety_threshold(Setting::ArbitraryBinary, R(2, 5), R(0), R(0)) == R(1, 3));
    CHECK(safety_threshold(Setting::ArbitraryBinary, R(2, 5), R(2, 5), R(0)) == R(2, 3));
    CHECK(safety_threshold(Setting::ArbitraryBinary, R(0), R(0), R(0)) == R(0));
    CHECK(safety_threshold(Setting::RandomNonatomic, R(3, 10), R(0), R(0)) == R(3, 20));
    CHECK(safety_threshold(Setting::ArbitraryBinary, R(2, 5), R(2, 5), R(4, 5)) == R(4, 15));
    CHECK(safety_threshold(Setting::MultiAltSMJ, R(2, 5), R(0), R(2, 5)) == R(0));
    CHECK(safety_threshold(Setting::ProxyInterval, R(1, 5), R(0), R(1, 5)) == R(0));
}

TEST_CASE("liveness thresholds") {
    CHECK(liveness_threshold(Setting::ArbitraryBinary, R(0), R(0), R(0)) == R(1, 2));
    CHECK(liveness_threshold(Setting::ArbitraryBinary, R(2, 5), R(2, 5), R(0)) == R(3, 2));
    CHECK(liveness_threshold(Setting::ProxyInterval, R(1, 5), R(0), R(1, 5)) == R(3, 4));
}

TEST_CASE("feasibility windows") {
    auto a = feasibility(Setting::ArbitraryBinary, R(3, 20), R(1, 5));
    REQUIRE(a.feasible_tau);
    CHECK(a.feasible_tau->lo == R(7, 16));
    CHECK(a.feasible_tau->hi == R(5, 8));
    CHECK_FALSE(feasibility(Setting::ArbitraryBinary, R(1, 5), R(1, 5)).feasible_tau);
    CHECK(feasibility(Setting::ArbitraryBinary, R(1, 5), R(1, 5)).impossibility);
    auto r = feasibility(Setting::RandomNonatomic, R(1, 5), R(3, 10));
    REQUIRE(r.feasible_tau);
    CHECK(r.feasible_tau->lo == R(2, 7));
    CHECK(r.feasible_tau->hi == R(3, 7));
}

TEST_CASE("required tau") {
    CHECK(required_tau(Setting::ArbitraryBinary, R(1, 5), R(1, 5), R(0)) == R(1, 2));
    CHECK(required_tau(Setting::RandomNonatomic, R(1, 5), R(3, 10), R(0)) == R(2, 7));
    CHECK(required_tau(Setting::ArbitraryBinary, R(0), R(0), R(0)) == R(0));
}

TEST_CASE("required tau inverts the safety threshold") {
    for (Setting s : {Setting::ArbitraryBinary, Setting::RandomNonatomic, Setting::MultiAltSMJ, Setting::ProxyInterval})
        for (int si = 0; si < 5; ++si)
            for (int mi = 0; mi < 5; ++mi)
                for (int ai = 0; ai < 5; ++ai) {
                    Rational sigma(si, 10), mu(mi, 10), alpha(ai, 20);
                    Rational t = required_tau(s, sigma, mu, alpha);
                    Rational back = safety_threshold(s, sigma, mu, t);
                    INFO(setting_name(s) << " " << to_string(sigma) << " " << to_string(mu) << " " << to_string(alpha));
                    CHECK(back <= alpha);
                    if (t > 0) CHECK(back == alpha);
                }
}

// Feasibility must flip exactly on the lines 3s + 2m = 1 and 3s + m = 1.
TEST_CASE("feasibility region") {
    for (int si = 0; si <= 20; ++si)
        for (int mi = 0; mi <= 20; ++mi) {
            Rational sigma(si, 20), mu(mi, 20);
            if (sigma + mu >= 1) {
                CHECK_THROWS_AS(feasibility(Setting::ArbitraryBinary, sigma, mu), Error);
                continue;
            }
            CHECK(feasibility(Setting::ArbitraryBinary, sigma, mu).feasible_tau.has_value() == (3 * sigma + 2 * mu < 1));
            CHECK(feasibility(Setting::RandomNonatomic, sigma, mu).feasible_tau.has_value() == (3 * sigma + mu < 1));
        }
}

TEST_CASE("settings round-trip by name") {
    for (Setting s : {Setting::ArbitraryBinary, Setting::RandomNonatomic, Setting::RandomFinite, Setting::MultiAltSMJ,
                      Setting::ProxyInterval})
        CHECK(parse_setting(setting_name(s)) == s);
    CHECK_FALSE(parse_setting("nope"));
    CHECK(report(Setting::RandomFinite, R(1, 5), R(0), R(0)).alpha_is_whp);
    CHECK_THROWS_AS(report(Setting::ArbitraryBinary, R(-1, 5), R(0), R(0)), Error);
}
