#pragma once

// Proxy-median analysis quantities (honest median h*, closest active voter,
// the all-active outcome h-hat, passive counts J) and random sampling of the
// active set.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "realityvote/delegation.hpp"
#include "realityvote/error.hpp"
#include "realityvote/population.hpp"
#include "realityvote/random.hpp"
#include "realityvote/rational.hpp"
#include "realityvote/rules.hpp"

namespace realityvote {

/// Mirror every position around r.
inline Profile reflect(const Profile& profile) {
    if (profile.domain().kind() != DomainKind::Interval) throw Error(Errc::MechanismMismatch, "reflection needs an interval profile");
    const Rational r = profile.domain().status_quo_position();
    std::vector<Voter> vs(profile.voters().begin(), profile.voters().end());
    for (auto& v : vs)
        if (v.ballot) v.ballot = Ballot{2 * r - std::get<Rational>(*v.ballot)};
    return build_profile(profile.domain(), std::move(vs));
}

/// Entity (active voter or r) nearest to x under the delegation tie rule.
inline ProxyEntity nearest_proxy(const Profile& profile, const Rational& re_tau, const Rational& x,
                                 DelegationOptions opt = {}) {
    auto w = delegate(profile, re_tau, opt);
    return w.entities[detail::nearest_entity(w.entities, x, profile.domain().status_quo_position())];
}

/// Plain median (lower-median formula, unit weights) of every voter plus q at r.
inline Rational population_median(const Profile& profile, const Rational& re_tau) {
    std::vector<WeightedPoint> pts;
    for (const Voter& v : profile.voters()) {
        if (!v.ballot) throw Error(Errc::MissingPrivateBallots, "every position must be known");
        pts.push_back({std::get<Rational>(*v.ballot), Rational(1)});
    }
    Rational q = re_tau * static_cast<std::int64_t>(profile.size());
    if (q > 0) pts.push_back({profile.domain().status_quo_position(), q});
    return weighted_median(std::move(pts));
}

struct ProxyAnalysis {
    bool reflected = false;  ///< positions were mirrored so that h* >= r
    Rational r;
    Rational sigma;
    Rational tau;
    std::size_t n = 0;
    std::size_t honest = 0;

    Rational z;       ///< proxy outcome
    Rational h_star;  ///< honest median
    std::size_t i_star = 0;
    Rational s_i_star;
    Rational d_star;
    Rational h_hat;  ///< outcome if every voter were active
    std::optional<Rational> h_hat_over;   ///< closest active honest position >= h_hat
    std::optional<Rational> h_hat_under;  ///< closest active honest position <= h_hat
    std::vector<Rational> passive_positions;  ///< sorted, normalized orientation

    /// Signed number of passive honest voters in (s, s'] (or -(s', s]).
    std::int64_t J(const Rational& s, const Rational& t) const {
        if (t < s) return -J(t, s);
        std::int64_t c = 0;
        for (const auto& x : passive_positions)
            if (s < x && x <= t) ++c;
        return c;
    }

    /// J(h_hat, over h_hat); an absent upper proxy counts every passive above.
    std::int64_t J_hat() const {
        if (h_hat_over) return J(h_hat, *h_hat_over);
        std::int64_t c = 0;
        for (const auto& x : passive_positions)
            if (h_hat < x) ++c;
        return c;
    }

    bool Y(const Rational& c) const {
        std::int64_t j = J_hat() < 0 ? -J_hat() : J_hat();
        return Rational(j) <= c * static_cast<std::int64_t>(honest);
    }

    /// z in [r, h* + d*]; only claimed when tau >= sigma.
    std::optional<bool> z_within_hd() const {
        if (tau < sigma) return std::nullopt;
        return r <= z && z <= h_star + d_star;
    }

    /// z in [r, over h_hat].
    bool z_within_over() const { return r <= z && (!h_hat_over || z <= *h_hat_over); }

    /// h_hat = r or J(h*, h_hat) <= (sigma - tau)/2 |V|.
    bool j_bound() const {
        if (h_hat == r) return true;
        return Rational(J(h_star, h_hat)) <= (sigma - tau) / 2 * static_cast<std::int64_t>(n);
    }
};

inline ProxyAnalysis analyze(const Profile& input, const Rational& re_tau, DelegationOptions opt = {}) {
    if (input.domain().kind() != DomainKind::Interval) throw Error(Errc::MechanismMismatch, "analysis needs an interval profile");
    if (!input.has_private_ballots()) throw Error(Errc::MissingPrivateBallots, "analysis needs every passive position");
    ProxyAnalysis a;
    a.r = input.domain().status_quo_position();
    a.sigma = input.sigma();
    a.tau = re_tau;
    a.n = input.size();
    a.honest = input.honest_count();

    const Mechanism md = Mechanism::of(BaseRule::MD);
    Rational h = std::get<Rational>(apply(md, honest_population(input)));
    a.reflected = h < a.r;
    const Profile profile = a.reflected ? reflect(input) : input;
    a.h_star = a.reflected ? 2 * a.r - h : h;

    a.z = md_proxy(profile, re_tau, opt);

    // closest active voter (honest or sybil) to h*
    std::vector<ProxyEntity> actives;
    auto voters = profile.voters();
    for (std::size_t i = 0; i < voters.size(); ++i)
        if (is_active(voters[i].cls)) actives.push_back({std::get<Rational>(*voters[i].ballot), Rational(1), i, 0});
    std::size_t k = detail::nearest_entity(actives, a.h_star, a.r);
    a.i_star = actives[k].voter;
    a.s_i_star = actives[k].position;
    a.d_star = abs(a.s_i_star - a.h_star);

    Mechanism all_active = Mechanism::of(BaseRule::MD, 0, re_tau, Participation::Full);
    a.h_hat = std::get<Rational>(apply(all_active, profile));

    for (const Voter& v : voters) {
        const Rational& x = std::get<Rational>(*v.ballot);
        if (v.cls == VoterClass::HonestPassive) a.passive_positions.push_back(x);
        if (v.cls != VoterClass::HonestActive) continue;
        if (a.h_hat <= x && (!a.h_hat_over || x < *a.h_hat_over)) a.h_hat_over = x;
        if (x <= a.h_hat && (!a.h_hat_under || *a.h_hat_under < x)) a.h_hat_under = x;
    }
    std::sort(a.passive_positions.begin(), a.passive_positions.end());
    return a;
}

struct ProxyTrial {
    Profile profile;  ///< the sampled population
    Rational z;       ///< proxy outcome, original orientation
    ProxyAnalysis analysis;
};

/// Activates n_plus honest voters chosen uniformly without replacement; the
/// remaining honest voters become passive and delegate.
inline Profile sample_active(const Profile& templ, std::size_t n_plus, std::mt19937_64& g) {
    if (n_plus > templ.honest_count()) throw Error(Errc::SampleTooLarge, "cannot activate more voters than there are honest ones");
    if (n_plus == 0) throw Error(Errc::NoActiveHonest, "at least one honest voter must be active");
    std::vector<std::size_t> honest;
    auto vs = templ.voters();
    for (std::size_t i = 0; i < vs.size(); ++i)
        if (is_honest(vs[i].cls)) {
            if (!vs[i].ballot) throw Error(Errc::MissingPrivateBallots, "template needs every honest ballot");
            honest.push_back(i);
        }
    std::vector<Voter> out(vs.begin(), vs.end());
    for (auto i : honest) out[i].cls = VoterClass::HonestPassive;
    for (auto j : sample_without_replacement(g, honest.size(), n_plus)) out[honest[j]].cls = VoterClass::HonestActive;
    return build_profile(templ.domain(), std::move(out));
}

inline ProxyTrial sample_and_run(const Profile& templ, std::size_t n_plus, const Rational& re_tau, std::uint64_t seed,
                                 std::uint64_t trial = 0, DelegationOptions opt = {}) {
    auto g = trial_engine(seed, trial);
    Profile p = sample_active(templ, n_plus, g);
    Rational z = md_proxy(p, re_tau, opt);
    ProxyAnalysis a = analyze(p, re_tau, opt);
    return ProxyTrial{std::move(p), z, std::move(a)};
}

}  // namespace realityvote
