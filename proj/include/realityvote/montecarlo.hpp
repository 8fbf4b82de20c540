#pragma once

// Random-participation experiments. Each trial activates a uniform sample of
// n+ honest voters (without replacement) from a template in which every
// honest voter has a ballot, then checks a property. Trials draw from their
// own engine, so the counts do not depend on trial order.

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "realityvote/error.hpp"
#include "realityvote/population.hpp"
#include "realityvote/proxy.hpp"
#include "realityvote/random.hpp"
#include "realityvote/rational.hpp"
#include "realityvote/rules.hpp"
#include "realityvote/verifier.hpp"

namespace realityvote {

struct Experiment {
    Profile templ;  ///< honest voters with ballots, plus sybils
    Mechanism mechanism;
    Mechanism base;
    Rational alpha_prime;
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    std::size_t n_plus = 1;

    void validate() const {
        if (trials < 1) throw Error(Errc::InvalidArgument, "need at least one trial");
        if (n_plus > templ.honest_count()) throw Error(Errc::SampleTooLarge, "n+ exceeds the honest population");
        if (n_plus == 0) throw Error(Errc::NoActiveHonest, "n+ must be positive");
        if (!(alpha_prime > 0)) throw Error(Errc::InvalidArgument, "alpha' must be positive");
    }
};

struct TrialStats {
    std::int64_t violation_count = 0;
    std::int64_t trials = 0;
    Rational empirical_rate{0};
    double bound_value = 0;
    double standard_error = 0;
    std::int64_t event_count = 0;  ///< proxy runs: trials where Y_c held

    /// rate <= bound + 3 s.e.
    bool passes() const { return to_double(empirical_rate) <= bound_value + 3 * standard_error; }
};

namespace detail {

inline TrialStats finish(std::int64_t bad, std::int64_t trials, double bound) {
    TrialStats s;
    s.violation_count = bad;
    s.trials = trials;
    s.empirical_rate = Rational(bad, trials);
    double p = to_double(s.empirical_rate);
    s.standard_error = std::sqrt(p * (1 - p) / static_cast<double>(trials));
    s.bound_value = bound;
    return s;
}

}  // namespace detail

/// Fraction of trials in which the mechanism on the sampled population is
/// not alpha'-safe. No analytic comparator here, so bound_value is 0.
inline TrialStats run_safety_whp(const Experiment& exp) {
    exp.validate();
    if (exp.templ.domain().kind() != DomainKind::Binary) throw Error(Errc::InvalidDomain, "binary template expected");
    std::int64_t bad = 0;
    for (std::size_t t = 0; t < exp.trials; ++t) {
        auto g = trial_engine(exp.seed, t);
        Profile p = sample_active(exp.templ, exp.n_plus, g);
        if (!is_safe(exp.mechanism, exp.base, p, exp.alpha_prime)) ++bad;
    }
    return detail::finish(bad, static_cast<std::int64_t>(exp.trials), 0.0);
}

/// alpha' used by the proxy experiment for slack c.
inline Rational proxy_alpha_prime(const Rational& c, const Rational& sigma, const Rational& tau) {
    return c + rmax(Rational(0), (sigma - tau) / (2 * (Rational(1) - sigma)));
}

/// Proxy median on a sampled active set. A violation is an outcome outside
/// B(r; MD-range_{alpha'}(H)); the comparator is (1 - c)^{n+}.
/// exp.alpha_prime is ignored; it is derived from c.
inline TrialStats run_proxy_whp(const Experiment& exp, const Rational& c) {
    if (exp.templ.domain().kind() != DomainKind::Interval) throw Error(Errc::InvalidDomain, "interval template expected");
    if (!(c > 0 && c < 1)) throw Error(Errc::InvalidArgument, "c must lie in (0, 1)");
    const Rational tau = exp.mechanism.re_tau;
    Experiment e = exp;
    e.alpha_prime = proxy_alpha_prime(c, exp.templ.sigma(), tau);
    e.validate();
    const Mechanism proxy = Mechanism::of(BaseRule::MD, 0, tau, Participation::Proxy);
    const Mechanism md = Mechanism::of(BaseRule::MD);
    std::int64_t bad = 0, y = 0;
    for (std::size_t t = 0; t < e.trials; ++t) {
        ProxyTrial tr = sample_and_run(e.templ, e.n_plus, tau, e.seed, t);
        if (!is_safe(proxy, md, tr.profile, e.alpha_prime)) ++bad;
        if (tr.analysis.Y(c)) ++y;
    }
    auto s = detail::finish(bad, static_cast<std::int64_t>(e.trials),
                            std::pow(1 - to_double(c), static_cast<double>(e.n_plus)));
    s.event_count = y;
    return s;
}

/// How often the sampled active p count reaches (psi + eps) n+, where psi is
/// the template's honest p fraction; compared with exp(-2 eps^2 n+).
inline TrialStats hoeffding_diagnostic(const Profile& templ, std::size_t n_plus, const Rational& epsilon,
                                       std::size_t trials, std::uint64_t seed) {
    if (templ.domain().kind() != DomainKind::Binary) throw Error(Errc::InvalidDomain, "binary template expected");
    if (trials < 1) throw Error(Errc::InvalidArgument, "need at least one trial");
    std::int64_t hp = 0;
    for (const Voter& v : templ.voters())
        if (is_honest(v.cls) && v.ballot && std::get<Label>(*v.ballot).index == 1) ++hp;
    const Rational psi(hp, static_cast<std::int64_t>(templ.honest_count()));
    const Rational cut = (psi + epsilon) * static_cast<std::int64_t>(n_plus);
    std::int64_t bad = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        auto g = trial_engine(seed, t);
        Profile p = sample_active(templ, n_plus, g);
        std::int64_t np = 0;
        for (const Voter& v : p.voters())
            if (v.cls == VoterClass::HonestActive && std::get<Label>(*v.ballot).index == 1) ++np;
        if (cut <= Rational(np)) ++bad;
    }
    double eps = to_double(epsilon);
    return detail::finish(bad, static_cast<std::int64_t>(trials), std::exp(-2 * eps * eps * static_cast<double>(n_plus)));
}

}  // namespace realityvote
