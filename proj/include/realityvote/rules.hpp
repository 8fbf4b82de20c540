#pragma once

// Base voting rules, the reality-enforcing wrapper (virtual mass q at r) and
// the participation modes. Every rule breaks ties toward the status quo.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "realityvote/delegation.hpp"
#include "realityvote/error.hpp"
#include "realityvote/population.hpp"
#include "realityvote/rational.hpp"

namespace realityvote {

enum class BaseRule { MJ, PL, SMJ, CC, SCC, IMJ, MD, SOM };
enum class Participation { Full, ActiveOnly, Proxy };

inline const char* base_rule_name(BaseRule b) {
    switch (b) {
        case BaseRule::MJ: return "mj";
        case BaseRule::PL: return "pl";
        case BaseRule::SMJ: return "smj";
        case BaseRule::CC: return "cc";
        case BaseRule::SCC: return "scc";
        case BaseRule::IMJ: return "imj";
        case BaseRule::MD: return "md";
        case BaseRule::SOM: return "som";
    }
    return "?";
}

inline const char* participation_name(Participation p) {
    switch (p) {
        case Participation::Full: return "full";
        case Participation::ActiveOnly: return "active";
        case Participation::Proxy: return "proxy";
    }
    return "?";
}

inline bool base_has_tau(BaseRule b) { return b == BaseRule::SMJ || b == BaseRule::SCC || b == BaseRule::SOM; }

struct Mechanism {
    BaseRule base = BaseRule::MJ;
    Rational base_tau{0};  ///< parameter of SMJ / SCC / SOM
    Rational re_tau{0};    ///< virtual status-quo mass per visible voter; 0 = no wrapper
    Participation participation = Participation::Full;
    bool r_unit_weight = false;  ///< proxy mode only: r starts with weight 1 like an active voter

    static Mechanism of(BaseRule b, Rational base_tau = 0, Rational re_tau = 0,
                        Participation part = Participation::Full) {
        Mechanism m{b, base_tau, re_tau, part};
        m.validate();
        return m;
    }

    Mechanism active() const {
        Mechanism m = *this;
        m.participation = Participation::ActiveOnly;
        return m;
    }

    /// The same rule evaluated without the wrapper and with full participation.
    Mechanism bare() const { return Mechanism{base, base_tau, Rational(0), Participation::Full}; }

    void validate() const {
        if (base_tau < 0 || re_tau < 0) throw Error(Errc::InvalidArgument, "tau parameters must be nonnegative");
        if (base == BaseRule::SOM && base_tau >= 1) throw Error(Errc::InvalidArgument, "SOM needs tau < 1");
        if (!base_has_tau(base) && base_tau != 0)
            throw Error(Errc::InvalidArgument, std::string(base_rule_name(base)) + " takes no parameter");
        if (participation == Participation::Proxy && base != BaseRule::MD)
            throw Error(Errc::MechanismMismatch, "proxy participation is defined for the median only");
    }

    /// Spec string understood by the CLI, e.g. "smj:2/5 re:0/1 mode:active".
    std::string spec() const {
        std::string s = base_rule_name(base);
        if (base_has_tau(base)) s += ":" + to_string(base_tau);
        if (re_tau != 0) s += " re:" + to_string(re_tau);
        s += std::string(" mode:") + participation_name(participation);
        return s;
    }

    friend bool operator==(const Mechanism&, const Mechanism&) = default;
};

inline bool compatible(BaseRule b, DomainKind k) {
    switch (b) {
        case BaseRule::MJ: return k == DomainKind::Binary;
        case BaseRule::SMJ:
        case BaseRule::PL: return k == DomainKind::Binary || k == DomainKind::Categorical;
        case BaseRule::CC:
        case BaseRule::SCC: return k == DomainKind::Categorical;
        case BaseRule::IMJ: return k == DomainKind::Hypercube;
        case BaseRule::MD:
        case BaseRule::SOM: return k == DomainKind::Interval;
    }
    return false;
}

struct WeightedBallot {
    Ballot ballot;
    Rational weight;
};

/// What a base rule reads: the visible ballots with multiplicities plus the
/// virtual status-quo mass q.
struct Electorate {
    std::vector<WeightedBallot> entries;
    Rational q{0};

    Rational cast() const {
        Rational t(0);
        for (const auto& e : entries) t += e.weight;
        return t;
    }
};

/// Cast mass per distinct ballot plus q; what the CLI prints.
struct Tally {
    std::vector<std::pair<Ballot, Rational>> cast;
    Rational q{0};
    std::int64_t visible = 0;
};

namespace detail {

inline std::vector<Rational> label_mass(const DomainSpec& d, const Electorate& e) {
    std::vector<Rational> mass(d.alternative_count(), Rational(0));
    for (const auto& wb : e.entries) {
        auto* l = std::get_if<Label>(&wb.ballot);
        if (!l) throw Error(Errc::MechanismMismatch, "rule needs single-choice ballots");
        mass[l->index] += wb.weight;
    }
    return mass;
}

// Lower and upper median of weighted positions; see median() for the tie rule.
inline std::pair<Rational, Rational> median_bounds(std::vector<WeightedPoint> pts) {
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return less(a.position, b.position); });
    Rational total(0);
    for (const auto& p : pts) total += p.weight;
    if (!(total > 0)) throw Error(Errc::EmptyElectorate, "median of an empty electorate");
    Rational half = total / 2;
    Rational prefix(0);
    std::optional<Rational> lo;
    for (const auto& p : pts) {
        prefix += p.weight;
        if (prefix >= half && p.weight > 0) {
            lo = p.position;
            break;
        }
    }
    Rational suffix(0);
    std::optional<Rational> hi;
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
        suffix += it->weight;
        if (suffix >= half && it->weight > 0) {
            hi = it->position;
            break;
        }
    }
    return {*lo, *hi};
}

inline Rational clamp_to(const Rational& r, const Rational& lo, const Rational& hi) {
    if (r < lo) return lo;
    if (hi < r) return hi;
    return r;
}

inline std::vector<WeightedPoint> positions(const Electorate& e, const Rational& r) {
    std::vector<WeightedPoint> pts;
    pts.reserve(e.entries.size() + 1);
    for (const auto& wb : e.entries) {
        auto* x = std::get_if<Rational>(&wb.ballot);
        if (!x) throw Error(Errc::MechanismMismatch, "median needs interval ballots");
        if (wb.weight > 0) pts.push_back({*x, wb.weight});
    }
    if (e.q > 0) pts.push_back({r, e.q});
    return pts;
}

inline Rational median_of(const std::vector<WeightedPoint>& pts, const Rational& r) {
    auto [lo, hi] = median_bounds(pts);
    return clamp_to(r, lo, hi);
}

}  // namespace detail

/// p iff mass(p) > mass(r) + q.
inline Alternative majority(const DomainSpec& d, const Electorate& e) {
    if (d.kind() != DomainKind::Binary) throw Error(Errc::MechanismMismatch, "majority needs a binary domain");
    auto mass = detail::label_mass(d, e);
    std::size_t r = d.status_quo_index(), p = 1 - r;
    return mass[p] > mass[r] + e.q ? Label{p} : Label{r};
}

/// The alternative p != r holding strictly more than (1/2 + tau) of all
/// votes (q included), else r.
inline Alternative supermajority(const Rational& tau, const DomainSpec& d, const Electorate& e) {
    if (d.kind() != DomainKind::Binary && d.kind() != DomainKind::Categorical)
        throw Error(Errc::MechanismMismatch, "supermajority needs a label domain");
    auto mass = detail::label_mass(d, e);
    Rational total = e.cast() + e.q;
    Rational bar = (Rational(1, 2) + tau) * total;
    for (std::size_t a = 0; a < mass.size(); ++a)
        if (a != d.status_quo_index() && mass[a] > bar) return Label{a};
    return Label{d.status_quo_index()};
}

inline Alternative plurality(const DomainSpec& d, const Electorate& e) {
    if (d.kind() != DomainKind::Binary && d.kind() != DomainKind::Categorical)
        throw Error(Errc::MechanismMismatch, "plurality needs a label domain");
    auto mass = detail::label_mass(d, e);
    std::size_t r = d.status_quo_index();
    mass[r] += e.q;
    std::size_t best = r;
    for (std::size_t a = 0; a < mass.size(); ++a)
        if (mass[a] > mass[best]) best = a;  // strict: r and earlier labels keep ties
    return Label{best};
}

/// The unique alternative that beats every other one pairwise by strictly
/// more than (1/2 + tau) of the votes in that contest, else r. q sides with r
/// in contests involving r and abstains otherwise.
inline Alternative condorcet_conservative(const Rational& tau, const DomainSpec& d, const Electorate& e) {
    if (d.kind() != DomainKind::Categorical) throw Error(Errc::MechanismMismatch, "Condorcet rules need a categorical domain");
    const std::size_t m = d.alternative_count();
    const std::size_t r = d.status_quo_index();
    std::vector<std::vector<Rational>> pref(m, std::vector<Rational>(m, Rational(0)));
    Rational cast(0);
    std::vector<std::size_t> rank(m);
    for (const auto& wb : e.entries) {
        auto* rk = std::get_if<Ranking>(&wb.ballot);
        if (!rk) throw Error(Errc::NonRankingBallot, "Condorcet rules need ranking ballots");
        for (std::size_t i = 0; i < m; ++i) rank[rk->order[i]] = i;
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
                if (a != b && rank[a] < rank[b]) pref[a][b] += wb.weight;
        cast += wb.weight;
    }
    for (std::size_t a = 0; a < m; ++a) {
        bool wins = true;
        for (std::size_t b = 0; b < m && wins; ++b) {
            if (a == b) continue;
            bool with_r = a == r || b == r;
            Rational total = cast + (with_r ? e.q : Rational(0));
            Rational support = pref[a][b] + (a == r ? e.q : Rational(0));
            wins = support > (Rational(1, 2) + tau) * total;
        }
        if (wins) return Label{a};
    }
    return Label{r};
}

/// Coordinatewise majority; q sits on r's coordinate and ties keep r's value.
inline Alternative issuewise_majority(const DomainSpec& d, const Electorate& e) {
    if (d.kind() != DomainKind::Hypercube) throw Error(Errc::MechanismMismatch, "issuewise majority needs a hypercube");
    const Point& r = d.status_quo_point();
    std::vector<Rational> ones(r.size(), Rational(0)), zeros(r.size(), Rational(0));
    for (const auto& wb : e.entries) {
        auto* p = std::get_if<Point>(&wb.ballot);
        if (!p) throw Error(Errc::MechanismMismatch, "issuewise majority needs hypercube ballots");
        for (std::size_t i = 0; i < r.size(); ++i) ((*p)[i] ? ones : zeros)[i] += wb.weight;
    }
    Point out(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        Rational o = ones[i] + (r[i] ? e.q : Rational(0));
        Rational z = zeros[i] + (r[i] ? Rational(0) : e.q);
        out[i] = o > z ? 1 : (z > o ? 0 : r[i]);
    }
    return out;
}

/// Weighted median of the cast positions plus q at r. When the mass splits
/// exactly in half between two positions the status quo is pulled into that
/// gap, which is what one extra vote at r does.
inline Rational median(const DomainSpec& d, const Electorate& e) {
    if (d.kind() != DomainKind::Interval) throw Error(Errc::MechanismMismatch, "median needs an interval domain");
    const Rational& r = d.status_quo_position();
    return detail::median_of(detail::positions(e, r), r);
}

/// Median after deleting the tau share of mass farthest out on the median's
/// side of r (splitting one voter if needed); r if the median crosses r.
inline Rational suppress_outer_median(const Rational& tau, const DomainSpec& d, const Electorate& e) {
    if (d.kind() != DomainKind::Interval) throw Error(Errc::MechanismMismatch, "SOM needs an interval domain");
    if (tau < 0 || tau >= 1) throw Error(Errc::InvalidArgument, "SOM needs tau in [0, 1)");
    const Rational& r = d.status_quo_position();
    auto pts = detail::positions(e, r);
    Rational m = detail::median_of(pts, r);
    if (m == r) return r;
    Rational total(0);
    for (const auto& p : pts) total += p.weight;
    Rational drop = tau * total;
    bool up = r < m;
    std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
        return up ? b.position < a.position : a.position < b.position;
    });
    for (auto& p : pts) {
        if (!(drop > 0)) break;
        Rational take = rmin(drop, p.weight);
        p.weight -= take;
        drop -= take;
    }
    std::erase_if(pts, [](const auto& p) { return !(p.weight > 0); });
    Rational m2 = detail::median_of(pts, r);
    return (up ? r < m2 : m2 < r) ? m2 : r;
}

inline Alternative evaluate_base(const Mechanism& m, const DomainSpec& d, const Electorate& e) {
    if (!compatible(m.base, d.kind()))
        throw Error(Errc::MechanismMismatch, std::string(base_rule_name(m.base)) + " is not defined on a " +
                                                 domain_kind_name(d.kind()) + " domain");
    switch (m.base) {
        case BaseRule::MJ: return majority(d, e);
        case BaseRule::SMJ: return supermajority(m.base_tau, d, e);
        case BaseRule::PL: return plurality(d, e);
        case BaseRule::CC: return condorcet_conservative(Rational(0), d, e);
        case BaseRule::SCC: return condorcet_conservative(m.base_tau, d, e);
        case BaseRule::IMJ: return issuewise_majority(d, e);
        case BaseRule::MD: return median(d, e);
        case BaseRule::SOM: return suppress_outer_median(m.base_tau, d, e);
    }
    return d.status_quo();
}

/// Ballots visible to the mechanism, grouped by ballot, plus q. Not defined
/// for proxy mode, which weighs voters by delegation instead.
inline Electorate visible_electorate(const Mechanism& m, const Profile& profile) {
    if (m.participation == Participation::Proxy)
        throw Error(Errc::MechanismMismatch, "proxy mode has no plain electorate");
    std::map<Ballot, std::int64_t> groups;
    std::int64_t visible = 0;
    for (const Voter& v : profile.voters()) {
        if (m.participation == Participation::ActiveOnly && !is_active(v.cls)) continue;
        if (!v.ballot) throw Error(Errc::MissingPrivateBallots, "full participation reads every ballot");
        ++groups[*v.ballot];
        ++visible;
    }
    Electorate e;
    for (auto& [b, c] : groups) e.entries.push_back({b, Rational(c)});
    e.q = m.re_tau * visible;
    return e;
}

struct Evaluation {
    Alternative outcome;
    Tally tally;
};

inline Evaluation evaluate(const Mechanism& m, const Profile& profile) {
    m.validate();
    const DomainSpec& d = profile.domain();
    if (!compatible(m.base, d.kind()))
        throw Error(Errc::MechanismMismatch, std::string(base_rule_name(m.base)) + " is not defined on a " +
                                                 domain_kind_name(d.kind()) + " domain");
    Evaluation ev{d.status_quo(), {}};
    if (m.participation == Participation::Proxy) {
        auto w = delegate(profile, m.re_tau, DelegationOptions{m.r_unit_weight, true});
        ev.outcome = weighted_median(w.points());
        std::map<Rational, Rational> by_pos;
        for (const auto& en : w.entities) {
            Rational cast = en.is_status_quo() ? en.weight - w.q : en.weight;
            if (cast > 0) by_pos[en.position] += cast;
        }
        for (auto& [pos, mass] : by_pos) ev.tally.cast.push_back({Ballot{pos}, mass});
        ev.tally.q = w.q;
        ev.tally.visible = static_cast<std::int64_t>(profile.size());
        return ev;
    }
    Electorate e = visible_electorate(m, profile);
    ev.outcome = evaluate_base(m, d, e);
    for (const auto& wb : e.entries) {
        ev.tally.cast.push_back({wb.ballot, wb.weight});
        ev.tally.visible += wb.weight.numerator();
    }
    ev.tally.q = e.q;
    return ev;
}

inline Alternative apply(const Mechanism& m, const Profile& profile) { return evaluate(m, profile).outcome; }

}  // namespace realityvote
