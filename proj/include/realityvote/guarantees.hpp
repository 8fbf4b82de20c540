#pragma once

// Closed-form safety and liveness thresholds of the reality-enforcing
// mechanisms, the tau window giving 0-safety and 1-liveness together, and
// the inverse map alpha -> minimal tau. Continuous (nonatomic) values only;
// finite-population granularity is the verifier's business.

#include <optional>
#include <string>

#include "realityvote/error.hpp"
#include "realityvote/rational.hpp"

namespace realityvote {

enum class Setting { ArbitraryBinary, RandomNonatomic, RandomFinite, MultiAltSMJ, ProxyInterval };

inline const char* setting_name(Setting s) {
    switch (s) {
        case Setting::ArbitraryBinary: return "arbitrary";
        case Setting::RandomNonatomic: return "random";
        case Setting::RandomFinite: return "random-finite";
        case Setting::MultiAltSMJ: return "multialt-smj";
        case Setting::ProxyInterval: return "proxy";
    }
    return "?";
}

inline std::optional<Setting> parse_setting(const std::string& s) {
    for (Setting x : {Setting::ArbitraryBinary, Setting::RandomNonatomic, Setting::RandomFinite, Setting::MultiAltSMJ,
                      Setting::ProxyInterval})
        if (s == setting_name(x)) return x;
    return std::nullopt;
}

/// [lo, hi)
struct TauInterval {
    Rational lo;
    Rational hi;
    bool contains(const Rational& t) const { return lo <= t && t < hi; }
};

struct GuaranteeReport {
    Setting setting;
    Rational sigma, mu, tau;
    Rational alpha_star;  ///< minimal alpha for safety, clamped at 0
    Rational beta_star;   ///< liveness holds for every beta strictly above
    bool alpha_is_whp = false;
    std::optional<TauInterval> feasible_tau;
    bool impossibility = false;
};

namespace detail {

inline void check_params(const Rational& sigma, const Rational& mu, const Rational& tau) {
    if (sigma < 0 || mu < 0 || tau < 0) throw Error(Errc::DegenerateParams, "sigma, mu and tau must be nonnegative");
    if (sigma + mu >= 1) throw Error(Errc::DegenerateParams, "need sigma + mu < 1");
}

}  // namespace detail

inline Rational safety_threshold(Setting s, const Rational& sigma, const Rational& mu, const Rational& tau) {
    detail::check_params(sigma, mu, tau);
    const Rational one(1);
    Rational t;
    switch (s) {
        case Setting::ArbitraryBinary:
            t = (one + sigma - (one + tau) * (one - mu)) / (2 * (one - sigma));
            break;
        case Setting::RandomNonatomic:
        case Setting::RandomFinite:
            t = (sigma - tau * (one - mu)) * (one - sigma) / (2 * (one - mu - sigma));
            break;
        case Setting::MultiAltSMJ:
            t = (one + sigma - (one + 2 * tau) * (one - mu)) / (2 * (one - sigma));
            break;
        case Setting::ProxyInterval:
            t = (sigma - tau) / (2 * (one - sigma));
            break;
    }
    return rmax(t, Rational(0));
}

inline Rational liveness_threshold(Setting s, const Rational& sigma, const Rational& mu, const Rational& tau) {
    detail::check_params(sigma, mu, tau);
    const Rational one(1);
    switch (s) {
        case Setting::ArbitraryBinary:
        case Setting::RandomNonatomic:
        case Setting::RandomFinite: return (one - mu) * (one + tau) / (2 * (one - sigma - mu));
        case Setting::MultiAltSMJ: return (one - mu) * (one + 2 * tau) / (2 * (one - sigma - mu));
        case Setting::ProxyInterval: return (one + tau) / (2 * (one - sigma));
    }
    return one;
}

/// Smallest tau whose safety threshold is at most alpha_target.
inline Rational required_tau(Setting s, const Rational& sigma, const Rational& mu, const Rational& alpha_target) {
    detail::check_params(sigma, mu, Rational(0));
    if (alpha_target < 0) throw Error(Errc::DegenerateParams, "alpha must be nonnegative");
    const Rational one(1);
    const Rational& a = alpha_target;
    Rational t;
    switch (s) {
        case Setting::ArbitraryBinary:
            t = (one + sigma - 2 * a * (one - sigma)) / (one - mu) - one;
            break;
        case Setting::RandomNonatomic:
        case Setting::RandomFinite:
            t = (sigma - 2 * a * (one - mu - sigma) / (one - sigma)) / (one - mu);
            break;
        case Setting::MultiAltSMJ:
            t = ((one + sigma - 2 * a * (one - sigma)) / (one - mu) - one) / 2;
            break;
        case Setting::ProxyInterval:
            t = sigma - 2 * a * (one - sigma);
            break;
    }
    return rmax(t, Rational(0));
}

/// Supremum (exclusive) of the taus that keep the mechanism 1-live.
inline Rational liveness_tau_bound(Setting s, const Rational& sigma, const Rational& mu) {
    detail::check_params(sigma, mu, Rational(0));
    const Rational one(1);
    switch (s) {
        case Setting::ArbitraryBinary:
        case Setting::RandomNonatomic:
        case Setting::RandomFinite: return 2 * (one - sigma - mu) / (one - mu) - one;
        case Setting::MultiAltSMJ: return (2 * (one - sigma - mu) / (one - mu) - one) / 2;
        case Setting::ProxyInterval: return one - 2 * sigma;
    }
    return one;
}

inline GuaranteeReport report(Setting s, const Rational& sigma, const Rational& mu, const Rational& tau) {
    GuaranteeReport g{s, sigma, mu, tau};
    g.alpha_star = safety_threshold(s, sigma, mu, tau);
    g.beta_star = liveness_threshold(s, sigma, mu, tau);
    g.alpha_is_whp = s == Setting::RandomFinite || s == Setting::ProxyInterval;
    Rational lo = required_tau(s, sigma, mu, Rational(0));
    Rational hi = liveness_tau_bound(s, sigma, mu);
    if (lo < hi) g.feasible_tau = TauInterval{lo, hi};
    g.impossibility = !g.feasible_tau;
    return g;
}

/// Report at the smallest tau that gives 0-safety.
inline GuaranteeReport feasibility(Setting s, const Rational& sigma, const Rational& mu) {
    return report(s, sigma, mu, required_tau(s, sigma, mu, Rational(0)));
}

}  // namespace realityvote
