#pragma once

// Ground truth by exhaustion: outcome ranges, safety and liveness checks,
// worst-case searches over small populations, and the explicit adversarial
// profiles from the tightness and lower-bound arguments.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "realityvote/betweenness.hpp"
#include "realityvote/error.hpp"
#include "realityvote/population.hpp"
#include "realityvote/proxy.hpp"
#include "realityvote/rational.hpp"
#include "realityvote/rules.hpp"

namespace realityvote {

inline constexpr std::size_t kDefaultEvalCap = 2'000'000;

namespace detail {

struct Group {
    VoterClass cls;
    std::optional<Ballot> ballot;
    std::int64_t count;
};

inline std::vector<Group> group_voters(const Profile& p) {
    std::map<std::pair<int, std::optional<Ballot>>, std::int64_t> m;
    for (const Voter& v : p.voters()) ++m[{static_cast<int>(v.cls), v.ballot}];
    std::vector<Group> out;
    for (auto& [k, c] : m) out.push_back({static_cast<VoterClass>(k.first), k.second, c});
    return out;
}

inline Profile groups_to_profile(const DomainSpec& d, const std::vector<Group>& groups) {
    std::vector<Voter> vs;
    for (const auto& g : groups)
        for (std::int64_t i = 0; i < g.count; ++i) vs.push_back({g.cls, g.ballot});
    return build_profile(d, std::move(vs));
}

inline Alternative evaluate_groups(const Mechanism& m, const DomainSpec& d, const std::vector<Group>& groups) {
    if (m.participation == Participation::Proxy) return apply(m, groups_to_profile(d, groups));
    // rules only sum masses, so groups sharing a ballot need not be merged
    Electorate e;
    e.entries.reserve(groups.size());
    std::int64_t visible = 0;
    for (const auto& g : groups) {
        if (g.count == 0) continue;
        if (m.participation == Participation::ActiveOnly && !is_active(g.cls)) continue;
        if (!g.ballot) throw Error(Errc::MissingPrivateBallots, "full participation reads every ballot");
        e.entries.push_back({*g.ballot, Rational(g.count)});
        visible += g.count;
    }
    e.q = m.re_tau * visible;
    return evaluate_base(m, d, e);
}

// Calls f for every vector x with 0 <= x[i] <= caps[i] and sum(x) <= budget.
inline bool for_each_bounded(const std::vector<std::int64_t>& caps, std::int64_t budget,
                             const std::function<bool(const std::vector<std::int64_t>&)>& f) {
    std::vector<std::int64_t> x(caps.size(), 0);
    std::function<bool(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) -> bool {
        if (i == caps.size()) return f(x);
        for (std::int64_t v = 0; v <= std::min(caps[i], left); ++v) {
            x[i] = v;
            if (rec(i + 1, left - v)) return true;
        }
        x[i] = 0;
        return false;
    };
    return rec(0, budget);
}

// Calls f for every way of writing total as an ordered sum of parts
// nonnegative integers; stops early when f returns true.
inline bool for_each_composition(std::int64_t total, std::size_t parts,
                                 const std::function<bool(const std::vector<std::int64_t>&)>& f) {
    if (parts == 0) return total == 0 ? f({}) : false;
    std::vector<std::int64_t> x(parts, 0);
    std::function<bool(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) -> bool {
        if (i + 1 == parts) {
            x[i] = left;
            return f(x);
        }
        for (std::int64_t v = 0; v <= left; ++v) {
            x[i] = v;
            if (rec(i + 1, left - v)) return true;
        }
        return false;
    };
    return rec(0, total);
}

inline std::vector<Ballot> all_rankings(std::size_t m) {
    if (m > 6) throw Error(Errc::BudgetExceeded, "too many alternatives to enumerate rankings");
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<Ballot> out;
    do out.push_back(Ranking{perm});
    while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

inline Ranking ranking_with_top(std::size_t m, std::size_t top) {
    Ranking r;
    r.order.push_back(top);
    for (std::size_t i = 0; i < m; ++i)
        if (i != top) r.order.push_back(i);
    return r;
}

inline bool ballot_supports(const Ballot& b, const Ballot& target) {
    if (auto* rk = std::get_if<Ranking>(&b)) return rk->order.front() == std::get<Ranking>(target).order.front();
    return b == target;
}

}  // namespace detail

/// Every ballot a voter may cast. Interval domains take the candidate
/// positions from `positions` plus r and one sentinel beyond each end.
inline std::vector<Ballot> ballot_universe(const DomainSpec& d, bool rankings = false,
                                           const std::vector<Rational>& positions = {}) {
    std::vector<Ballot> out;
    switch (d.kind()) {
        case DomainKind::Binary:
        case DomainKind::Categorical:
            if (rankings) return detail::all_rankings(d.alternative_count());
            for (std::size_t i = 0; i < d.alternative_count(); ++i) out.push_back(Label{i});
            break;
        case DomainKind::Hypercube: {
            if (d.dimension() > 12) throw Error(Errc::BudgetExceeded, "hypercube too large to enumerate");
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d.dimension()); ++mask) {
                Point p(d.dimension());
                for (std::size_t i = 0; i < p.size(); ++i) p[i] = (mask >> (p.size() - 1 - i)) & 1;
                out.push_back(p);
            }
            break;
        }
        case DomainKind::Interval: {
            std::set<Rational> s(positions.begin(), positions.end());
            s.insert(d.status_quo_position());
            Rational lo = *s.begin() - 1, hi = *s.rbegin() + 1;
            out.push_back(lo);
            for (const auto& x : s) out.push_back(x);
            out.push_back(hi);
            break;
        }
    }
    return out;
}

inline std::vector<Rational> positions_of(const Profile& p) {
    std::vector<Rational> out;
    for (const Voter& v : p.voters())
        if (v.ballot) out.push_back(std::get<Rational>(*v.ballot));
    return out;
}

struct OutcomeRange {
    Rational gamma;
    std::int64_t budget = 0;  ///< floor(gamma * |H|) honest voters may be new
    std::vector<Alternative> reachable;
    bool unbounded_below = false;  ///< interval: a sentinel below every voter was reached
    bool unbounded_above = false;

    bool contains(const Alternative& a) const {
        if (std::find(reachable.begin(), reachable.end(), a) != reachable.end()) return true;
        if (auto* x = std::get_if<Rational>(&a)) {
            for (const auto& y : reachable) {
                const Rational& v = std::get<Rational>(y);
                if (unbounded_above && v <= *x) return true;
                if (unbounded_below && *x <= v) return true;
            }
        }
        return false;
    }
};

/// R-bar_gamma: outcomes of R(H' + S) over every honest set H' with
/// |H'| >= |H| and |H' \ H| <= floor(gamma |H|). New voters are active and
/// may cast any ballot; kept voters keep theirs.
inline OutcomeRange outcome_range(const Mechanism& m, const Profile& profile, const Rational& gamma,
                                  std::size_t cap = kDefaultEvalCap) {
    if (gamma < 0) throw Error(Errc::InvalidArgument, "gamma must be nonnegative");
    const DomainSpec& d = profile.domain();
    OutcomeRange out;
    out.gamma = gamma;
    out.budget = floor(gamma * static_cast<std::int64_t>(profile.honest_count()));
    auto groups = detail::group_voters(profile);
    std::vector<std::size_t> honest_idx;
    std::vector<std::int64_t> caps;
    for (std::size_t i = 0; i < groups.size(); ++i)
        if (is_honest(groups[i].cls)) {
            honest_idx.push_back(i);
            caps.push_back(groups[i].count);
        }
    auto universe = ballot_universe(d, profile.uses_rankings(),
                                    d.kind() == DomainKind::Interval ? positions_of(profile) : std::vector<Rational>{});
    std::optional<Rational> lo_sentinel, hi_sentinel;
    if (d.kind() == DomainKind::Interval) {
        lo_sentinel = std::get<Rational>(universe.front());
        hi_sentinel = std::get<Rational>(universe.back());
    }
    std::set<Alternative> seen;
    std::size_t evals = 0;
    const std::int64_t k = out.budget;
    detail::for_each_bounded(caps, k, [&](const std::vector<std::int64_t>& removed) {
        std::int64_t dsum = std::accumulate(removed.begin(), removed.end(), std::int64_t{0});
        auto base = groups;
        for (std::size_t j = 0; j < honest_idx.size(); ++j) base[honest_idx[j]].count -= removed[j];
        for (std::int64_t A = dsum; A <= k; ++A) {
            detail::for_each_composition(A, universe.size(), [&](const std::vector<std::int64_t>& add) {
                if (++evals > cap) throw Error(Errc::BudgetExceeded, "outcome range enumeration exceeds the cap");
                auto g = base;
                for (std::size_t u = 0; u < universe.size(); ++u)
                    if (add[u]) g.push_back({VoterClass::HonestActive, universe[u], add[u]});
                Alternative o = detail::evaluate_groups(m, d, g);
                if (lo_sentinel && std::get<Rational>(o) == *lo_sentinel) out.unbounded_below = true;
                else if (hi_sentinel && std::get<Rational>(o) == *hi_sentinel) out.unbounded_above = true;
                else seen.insert(o);
                return false;
            });
        }
        return false;
    });
    out.reachable.assign(seen.begin(), seen.end());
    return out;
}

/// Which outcomes count when searching for a cheap modification.
struct Goal {
    enum class Kind { Exact, Agree, AtLeast, AtMost };
    Kind kind;
    Alternative ref;
    Alternative status_quo;

    bool met(const Alternative& y) const {
        switch (kind) {
            case Kind::Exact: return y == ref;
            case Kind::Agree: {
                const Point& o = std::get<Point>(ref);
                const Point& r = std::get<Point>(status_quo);
                const Point& p = std::get<Point>(y);
                for (std::size_t i = 0; i < o.size(); ++i)
                    if (o[i] != r[i] && p[i] != o[i]) return false;
                return true;
            }
            case Kind::AtLeast: return std::get<Rational>(ref) <= std::get<Rational>(y);
            case Kind::AtMost: return std::get<Rational>(y) <= std::get<Rational>(ref);
        }
        return false;
    }

    /// Outcomes y with o in B(r, y).
    static Goal covering(const DomainSpec& d, const Alternative& o) {
        switch (d.kind()) {
            case DomainKind::Hypercube: return {Kind::Agree, o, d.status_quo()};
            case DomainKind::Interval:
                return {std::get<Rational>(o) < d.status_quo_position() ? Kind::AtMost : Kind::AtLeast, o, d.status_quo()};
            default: return {Kind::Exact, o, d.status_quo()};
        }
    }

    static Goal reach(const DomainSpec& d, const Alternative& target) { return {Kind::Exact, target, d.status_quo()}; }
};

/// Smallest number of new honest voters (|H' \ H|) that makes the outcome
/// meet the goal, searching up to kmax. New voters all cast the ballot that
/// best serves the goal; every removal pattern is tried.
inline std::optional<std::int64_t> min_budget(const Mechanism& m, const Profile& profile, const Goal& goal,
                                              std::int64_t kmax, std::size_t cap = kDefaultEvalCap) {
    const DomainSpec& d = profile.domain();
    auto groups = detail::group_voters(profile);
    std::size_t evals = 0;
    auto eval = [&](const std::vector<detail::Group>& g) {
        if (++evals > cap) throw Error(Errc::BudgetExceeded, "budget search exceeds the cap");
        return goal.met(detail::evaluate_groups(m, d, g));
    };
    auto removable = [&](const detail::Group& g) {
        if (!is_honest(g.cls) || !g.ballot) return false;
        return !(m.participation == Participation::ActiveOnly && g.cls == VoterClass::HonestPassive);
    };

    if (d.kind() != DomainKind::Interval) {
        Ballot fresh = goal.kind == Goal::Kind::Agree ? Ballot{std::get<Point>(goal.ref)} : Ballot{};
        if (goal.kind == Goal::Kind::Exact) {
            if (auto* l = std::get_if<Label>(&goal.ref))
                fresh = profile.uses_rankings() ? Ballot{detail::ranking_with_top(d.alternative_count(), l->index)}
                                                : Ballot{*l};
            else
                fresh = std::get<Point>(goal.ref);
        }
        std::vector<std::size_t> idx;
        std::vector<std::int64_t> caps;
        for (std::size_t i = 0; i < groups.size(); ++i)
            if (removable(groups[i]) && !detail::ballot_supports(*groups[i].ballot, fresh)) {
                idx.push_back(i);
                caps.push_back(groups[i].count);
            }
        for (std::int64_t A = 0; A <= kmax; ++A) {
            bool hit = detail::for_each_bounded(caps, A, [&](const std::vector<std::int64_t>& removed) {
                auto g = groups;
                for (std::size_t j = 0; j < idx.size(); ++j) g[idx[j]].count -= removed[j];
                if (A) g.push_back({VoterClass::HonestActive, fresh, A});
                return eval(g);
            });
            if (hit) return A;
        }
        return std::nullopt;
    }

    // Line: drop the honest voters farthest on the wrong side, place the new
    // ones at the target (or beyond everything for one-sided goals).
    std::vector<Rational> pos = positions_of(profile);
    pos.push_back(d.status_quo_position());
    pos.push_back(std::get<Rational>(goal.ref));
    Rational lo = *std::min_element(pos.begin(), pos.end()) - 1;
    Rational hi = *std::max_element(pos.begin(), pos.end()) + 1;
    Rational fresh = goal.kind == Goal::Kind::AtLeast ? hi : goal.kind == Goal::Kind::AtMost ? lo : std::get<Rational>(goal.ref);
    std::vector<std::size_t> order;  // removable groups, ascending position
    for (std::size_t i = 0; i < groups.size(); ++i)
        if (removable(groups[i])) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) {
        return std::get<Rational>(*groups[a].ballot) < std::get<Rational>(*groups[b].ballot);
    });
    std::int64_t total = 0;
    for (auto i : order) total += groups[i].count;
    auto strip = [&](std::vector<detail::Group>& g, std::int64_t below, std::int64_t above) {
        for (auto it = order.begin(); it != order.end() && below > 0; ++it) {
            std::int64_t t = std::min(below, g[*it].count);
            g[*it].count -= t;
            below -= t;
        }
        for (auto it = order.rbegin(); it != order.rend() && above > 0; ++it) {
            std::int64_t t = std::min(above, g[*it].count);
            g[*it].count -= t;
            above -= t;
        }
    };
    const bool up = goal.kind == Goal::Kind::AtLeast, down = goal.kind == Goal::Kind::AtMost;
    for (std::int64_t A = 0; A <= kmax; ++A) {
        const std::int64_t most = std::min(A, total);
        for (std::int64_t i = 0; i <= most; ++i) {
            for (std::int64_t j = 0; i + j <= most; ++j) {
                if ((up || down) && j) break;
                auto g = groups;
                if (up) strip(g, i, 0);
                else if (down) strip(g, 0, i);
                else strip(g, i, j);
                if (A) g.push_back({VoterClass::HonestActive, Ballot{fresh}, A});
                if (eval(g)) return A;
            }
        }
    }
    return std::nullopt;
}

/// Lowest and highest outcome reachable with k new honest voters on the line;
/// nullopt marks an unbounded side.
inline std::pair<std::optional<Rational>, std::optional<Rational>> interval_reach(const Mechanism& m,
                                                                                  const Profile& profile,
                                                                                  std::int64_t k) {
    const DomainSpec& d = profile.domain();
    if (d.kind() != DomainKind::Interval) throw Error(Errc::MechanismMismatch, "interval_reach needs a line");
    auto groups = detail::group_voters(profile);
    std::vector<Rational> pos = positions_of(profile);
    pos.push_back(d.status_quo_position());
    Rational lo = *std::min_element(pos.begin(), pos.end()) - 1;
    Rational hi = *std::max_element(pos.begin(), pos.end()) + 1;
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < groups.size(); ++i)
        if (is_honest(groups[i].cls) && groups[i].ballot &&
            !(m.participation == Participation::ActiveOnly && groups[i].cls == VoterClass::HonestPassive))
            order.push_back(i);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) {
        return std::get<Rational>(*groups[a].ballot) < std::get<Rational>(*groups[b].ballot);
    });
    std::int64_t total = 0;
    for (auto i : order) total += groups[i].count;
    std::optional<Rational> best_lo, best_hi;
    bool unb_lo = false, unb_hi = false;
    for (int side = 0; side < 2; ++side) {
        for (std::int64_t j = 0; j <= k; ++j) {
            for (std::int64_t i = 0; i <= std::min(j, total); ++i) {
                auto g = groups;
                std::int64_t left = i;
                if (side == 0) {
                    for (auto it = order.begin(); it != order.end() && left > 0; ++it) {
                        std::int64_t t = std::min(left, g[*it].count);
                        g[*it].count -= t;
                        left -= t;
                    }
                } else {
                    for (auto it = order.rbegin(); it != order.rend() && left > 0; ++it) {
                        std::int64_t t = std::min(left, g[*it].count);
                        g[*it].count -= t;
                        left -= t;
                    }
                }
                if (j) g.push_back({VoterClass::HonestActive, Ballot{side == 0 ? hi : lo}, j});
                Rational o = std::get<Rational>(detail::evaluate_groups(m, d, g));
                if (side == 0) {
                    if (o == hi) unb_hi = true;
                    else if (!best_hi || *best_hi < o) best_hi = o;
                } else {
                    if (o == lo) unb_lo = true;
                    else if (!best_lo || o < *best_lo) best_lo = o;
                }
            }
        }
    }
    return {unb_lo ? std::nullopt : best_lo, unb_hi ? std::nullopt : best_hi};
}

/// Is the mechanism's outcome between r and something the base rule could
/// produce on all honest voters after an alpha-fraction modification?
inline bool is_safe(const Mechanism& m, const Mechanism& base, const Profile& profile, const Rational& alpha) {
    if (alpha < 0) throw Error(Errc::InvalidArgument, "alpha must be nonnegative");
    Alternative o = apply(m, profile);
    const DomainSpec& d = profile.domain();
    if (o == d.status_quo()) return true;
    Profile honest = honest_population(profile);
    std::int64_t k = floor(alpha * static_cast<std::int64_t>(honest.size()));
    return min_budget(base, honest, Goal::covering(d, o), k).has_value();
}

/// Minimal alpha (a multiple of 1/|H|) for which this very profile is safe.
inline std::optional<Rational> instance_min_alpha(const Mechanism& m, const Mechanism& base, const Profile& profile,
                                                  std::int64_t kmax) {
    Alternative o = apply(m, profile);
    const DomainSpec& d = profile.domain();
    if (o == d.status_quo()) return Rational(0);
    Profile honest = honest_population(profile);
    auto k = min_budget(base, honest, Goal::covering(d, o), kmax);
    if (!k) return std::nullopt;
    return Rational(*k, static_cast<std::int64_t>(honest.size()));
}

/// Voter counts of a population: n voters, of which `sybils` sybils and
/// `passives` passive honest voters.
struct Shape {
    std::int64_t n = 0;
    std::int64_t sybils = 0;
    std::int64_t passives = 0;

    std::int64_t honest() const { return n - sybils; }
    std::int64_t active_honest() const { return n - sybils - passives; }

    static Shape of(std::int64_t n, const Rational& sigma, const Rational& mu) {
        if (n <= 0) throw Error(Errc::UnrealizableShape, "population must be nonempty");
        Rational s = sigma * n, m = mu * n;
        if (s.denominator() != 1 || m.denominator() != 1 || s < 0 || m < 0)
            throw Error(Errc::UnrealizableShape, "sigma*n and mu*n must be nonnegative integers");
        Shape sh{n, s.numerator(), m.numerator()};
        if (sh.active_honest() <= 0) throw Error(Errc::UnrealizableShape, "need at least one active honest voter");
        return sh;
    }
};

namespace detail {

inline std::vector<Voter> expand(VoterClass cls, const std::vector<Ballot>& universe, const std::vector<std::int64_t>& c) {
    std::vector<Voter> out;
    for (std::size_t u = 0; u < universe.size(); ++u)
        for (std::int64_t i = 0; i < c[u]; ++i) out.push_back({cls, universe[u]});
    return out;
}

}  // namespace detail

/// Worst case over every profile of the shape (ballots of active, passive and
/// sybil voters all enumerated) of the instance minimum alpha.
inline Rational min_alpha(const Mechanism& m, const Mechanism& base, const Shape& shape, const DomainSpec& d,
                          bool rankings = false, std::int64_t kmax = -1, std::size_t profile_cap = 200'000) {
    auto universe = ballot_universe(d, rankings);
    if (kmax < 0) kmax = 4 * shape.n + 64;
    Rational worst(0);
    std::size_t count = 0;
    const std::size_t u = universe.size();
    detail::for_each_composition(shape.active_honest(), u, [&](const std::vector<std::int64_t>& ca) {
        return detail::for_each_composition(shape.passives, u, [&](const std::vector<std::int64_t>& cp) {
            return detail::for_each_composition(shape.sybils, u, [&](const std::vector<std::int64_t>& cs) {
                if (++count > profile_cap) throw Error(Errc::BudgetExceeded, "too many profiles to enumerate");
                auto vs = detail::expand(VoterClass::HonestActive, universe, ca);
                auto vp = detail::expand(VoterClass::HonestPassive, universe, cp);
                auto vy = detail::expand(VoterClass::Sybil, universe, cs);
                vs.insert(vs.end(), vp.begin(), vp.end());
                vs.insert(vs.end(), vy.begin(), vy.end());
                Profile p = build_profile(d, std::move(vs));
                auto a = instance_min_alpha(m, base, p, kmax);
                if (!a) throw Error(Errc::BudgetExceeded, "no safe budget within the search limit");
                worst = rmax(worst, *a);
                return false;
            });
        });
    });
    return worst;
}

/// The profile liveness is judged on: V+ for active-only mechanisms, V
/// otherwise. Its honest part is the budget base.
inline Profile liveness_view(const Mechanism& m, const Profile& v) {
    return m.participation == Participation::ActiveOnly ? active_population(v) : v;
}

/// Budget (in new honest voters) that reaches `target` from every worst-case
/// profile of the shape: honest voters all on r, sybils anywhere. nullopt if
/// some sybil placement blocks the target within kmax.
inline std::optional<std::int64_t> min_live_budget(const Mechanism& m, const Shape& shape, const DomainSpec& d,
                                                   const Alternative& target, bool rankings = false,
                                                   std::int64_t kmax = -1) {
    if (kmax < 0) kmax = 64 * shape.n + 64;
    std::vector<Ballot> universe;
    Ballot r_ballot;
    if (d.kind() == DomainKind::Interval) {
        universe = ballot_universe(d, false, {std::get<Rational>(target)});
        r_ballot = d.status_quo_position();
    } else {
        universe = ballot_universe(d, rankings);
        if (rankings) r_ballot = detail::ranking_with_top(d.alternative_count(), d.status_quo_index());
        else if (d.kind() == DomainKind::Hypercube) r_ballot = d.status_quo_point();
        else r_ballot = Label{d.status_quo_index()};
    }
    std::optional<std::int64_t> worst = 0;
    detail::for_each_composition(shape.sybils, universe.size(), [&](const std::vector<std::int64_t>& cs) {
        std::vector<Voter> vs;
        for (std::int64_t i = 0; i < shape.active_honest(); ++i) vs.push_back({VoterClass::HonestActive, r_ballot});
        for (std::int64_t i = 0; i < shape.passives; ++i) vs.push_back({VoterClass::HonestPassive, r_ballot});
        auto sy = detail::expand(VoterClass::Sybil, universe, cs);
        vs.insert(vs.end(), sy.begin(), sy.end());
        Profile view = liveness_view(m, build_profile(d, std::move(vs)));
        auto k = min_budget(m, view, Goal::reach(d, target), kmax);
        if (!k) {
            worst.reset();
            return true;
        }
        worst = std::max(*worst, *k);
        return false;
    });
    return worst;
}

inline std::int64_t liveness_base_count(const Mechanism& m, const Shape& shape) {
    return m.participation == Participation::ActiveOnly ? shape.active_honest() : shape.honest();
}

/// Smallest beta (a multiple of 1/|H|, or of 1/|H+| for active-only rules)
/// making the target reachable; nullopt if none within the search limit.
inline std::optional<Rational> min_live_beta(const Mechanism& m, const Shape& shape, const DomainSpec& d,
                                             const Alternative& target, bool rankings = false, std::int64_t kmax = -1) {
    auto k = min_live_budget(m, shape, d, target, rankings, kmax);
    if (!k) return std::nullopt;
    return Rational(*k, liveness_base_count(m, shape));
}

inline bool is_live(const Mechanism& m, const Shape& shape, const DomainSpec& d, const Alternative& target,
                    const Rational& beta, bool rankings = false) {
    std::int64_t budget = floor(beta * liveness_base_count(m, shape));
    auto k = min_live_budget(m, shape, d, target, rankings, budget);
    return k.has_value();
}

/// Majority on a continuum binary population: p iff the active p mass beats
/// the active r mass plus tau times the active mass.
inline Alternative nonatomic_eval(const NonatomicProfile& v, const Rational& tau) {
    Rational vp = v.sybil_p + v.active_honest_p();
    Rational vr = v.sybil_r + v.active_honest_r() + tau * (Rational(1) - v.mu());
    return vp > vr ? Label{1} : Label{0};
}

/// If tau-RE-MD+ breaks alpha-safety w.r.t. MD on this line profile, the
/// binary projection onto (a, z) must break alpha-safety of tau-RE-MJ+ w.r.t.
/// MJ, where z is the outcome and a the nearer end of the honest range.
inline bool reduction_check(const Profile& input, const Rational& tau, const Rational& alpha) {
    const Mechanism md_plus = Mechanism::of(BaseRule::MD, 0, tau, Participation::ActiveOnly);
    const Mechanism md = Mechanism::of(BaseRule::MD);
    const Rational r = input.domain().status_quo_position();
    Rational z0 = std::get<Rational>(apply(md_plus, input));
    if (z0 == r || is_safe(md_plus, md, input, alpha)) return true;
    const Profile profile = z0 < r ? reflect(input) : input;
    Rational z = std::get<Rational>(apply(md_plus, profile));
    Profile honest = honest_population(profile);
    std::int64_t k = floor(alpha * static_cast<std::int64_t>(honest.size()));
    auto [lo, hi] = interval_reach(md, honest, k);
    if (!hi) return true;  // range unbounded above, so the outcome could not have been unsafe
    Rational a = rmax(r, *hi);
    if (!(a < z)) return true;
    Profile proj = project_to_pair(profile, a, z);
    const Mechanism mj_plus = Mechanism::of(BaseRule::MJ, 0, tau, Participation::ActiveOnly);
    const Mechanism mj = Mechanism::of(BaseRule::MJ);
    if (apply(mj_plus, proj) != Alternative{Label{1}}) return false;
    return !is_safe(mj_plus, mj, proj, alpha);
}

enum class WitnessKind { SafetyTightness, ArbitraryLowerBound, RandomLowerBound };

struct AdversarialWitness {
    WitnessKind kind;
    std::string violated;
    std::optional<Profile> v;
    std::optional<Profile> v_bar;
    std::optional<NonatomicProfile> nv;
    std::optional<NonatomicProfile> nv_bar;
    std::map<std::string, Rational> params;
};

struct WitnessParams {
    Rational sigma;
    Rational mu;
    Rational tau{0};
    Rational alpha{0};
    std::int64_t n = 0;  ///< finite constructions: 0 picks the smallest realizing size
};

namespace detail {

inline std::int64_t lcm_den(std::initializer_list<Rational> xs) {
    std::int64_t l = 1;
    for (const auto& x : xs) l = std::lcm(l, x.denominator());
    return l;
}

inline Profile binary_profile(std::int64_t hr_active, std::int64_t hp_active, std::int64_t hr_passive,
                              std::int64_t hp_passive, std::int64_t sr, std::int64_t sp) {
    std::vector<Voter> vs;
    auto add = [&](VoterClass c, std::size_t lab, std::int64_t k) {
        for (std::int64_t i = 0; i < k; ++i) vs.push_back({c, Ballot{Label{lab}}});
    };
    add(VoterClass::HonestActive, 0, hr_active);
    add(VoterClass::HonestActive, 1, hp_active);
    add(VoterClass::HonestPassive, 0, hr_passive);
    add(VoterClass::HonestPassive, 1, hp_passive);
    add(VoterClass::Sybil, 0, sr);
    add(VoterClass::Sybil, 1, sp);
    return build_profile(DomainSpec::binary(), std::move(vs));
}

}  // namespace detail

inline AdversarialWitness tightness_witness(WitnessKind kind, const WitnessParams& wp) {
    const Rational one(1);
    const Rational &sigma = wp.sigma, &mu = wp.mu, &tau = wp.tau, &alpha = wp.alpha;
    if (sigma < 0 || mu < 0 || sigma + mu >= 1) throw Error(Errc::DegenerateParams, "need sigma, mu >= 0 and sigma + mu < 1");
    AdversarialWitness w{kind, "", {}, {}, {}, {}, {}};
    w.params = {{"sigma", sigma}, {"mu", mu}};
    switch (kind) {
        case WitnessKind::SafetyTightness: {
            Rational t = (one + sigma - (one + tau) * (one - mu)) / (2 * (one - sigma));
            if (!(alpha < t)) throw Error(Errc::RegimeMismatch, "alpha is not below the safety threshold");
            Rational eps = t - alpha;
            Rational eps1 = eps * (one - sigma) / 2;
            Rational hp = ((one + tau) * (one - mu) - 2 * sigma) / 2 + eps1;
            Rational hplus = one - sigma - mu;
            if (hp > hplus) throw Error(Errc::RegimeMismatch, "construction needs more active honest voters than exist");
            if (hp < 0) {
                if (alpha >= Rational(1, 2)) throw Error(Errc::RegimeMismatch, "alpha >= 1/2 leaves no violation");
                hp = 0;
            }
            std::int64_t n = wp.n ? wp.n : detail::lcm_den({sigma, mu, hp});
            Rational S = sigma * n, M = mu * n, HP = hp * n;
            if (S.denominator() != 1 || M.denominator() != 1 || HP.denominator() != 1)
                throw Error(Errc::UnrealizableShape, "n does not realize the construction with whole voters");
            std::int64_t a = n - S.numerator() - M.numerator();
            w.v = detail::binary_profile(a - HP.numerator(), HP.numerator(), M.numerator(), 0, 0, S.numerator());
            w.violated = "safety";
            w.params.insert({{"tau", tau}, {"alpha", alpha}, {"epsilon", eps}, {"epsilon_prime", eps1}, {"h_plus_p", hp},
                             {"n", Rational(n)}});
            return w;
        }
        case WitnessKind::ArbitraryLowerBound: {
            if (3 * sigma + 2 * mu < 1) throw Error(Errc::RegimeMismatch, "needs 3 sigma + 2 mu >= 1");
            std::int64_t n = wp.n ? wp.n : detail::lcm_den({sigma, mu});
            Rational S = sigma * n, M = mu * n;
            if (S.denominator() != 1 || M.denominator() != 1)
                throw Error(Errc::UnrealizableShape, "n does not realize sigma and mu with whole voters");
            std::int64_t s = S.numerator(), m = M.numerator(), a = n - s - m;
            // V: every active honest voter on p, sybils and passives on r.
            w.v = detail::binary_profile(0, a, m, 0, s, 0);
            std::int64_t sp = std::min(a, s);
            w.v_bar = detail::binary_profile(sp, a - sp, m, 0, s - sp, sp);
            w.violated = "0-safety vs 1-liveness";
            w.params.insert({{"n", Rational(n)}, {"h_plus_p", Rational(a, n)}, {"s_bar_p", Rational(sp, n)},
                             {"h_bar_plus_p", Rational(a - sp, n)}});
            return w;
        }
        case WitnessKind::RandomLowerBound: {
            if (3 * sigma + mu < 1) throw Error(Errc::RegimeMismatch, "needs 3 sigma + mu >= 1");
            Rational h = one - sigma;
            Rational phi = (one - sigma - mu) / (one - sigma);
            Rational hp = h;  // every honest voter on p, sybils on r
            Rational hplus_p = phi * hp;
            Rational sp = rmin(hplus_p, sigma);
            Rational hbar_p = hp - sp / phi;
            w.nv = NonatomicProfile::make(h - hp, hp, sigma, Rational(0), phi);
            w.nv_bar = NonatomicProfile::make(h - hbar_p, hbar_p, sigma - sp, sp, phi);
            w.violated = "0-safety vs 1-liveness";
            w.params.insert({{"phi", phi}, {"h_p", hp}, {"s_bar_p", sp}, {"h_bar_p", hbar_p}});
            return w;
        }
    }
    return w;
}

/// Re-runs the witness through the rules and reports whether the claimed
/// violation really occurs.
inline bool replay(const AdversarialWitness& w, const std::vector<Rational>& taus = {Rational(0), Rational(1, 4),
                                                                                       Rational(1, 2), Rational(1)}) {
    const Mechanism mj = Mechanism::of(BaseRule::MJ);
    const Alternative r = Label{0}, p = Label{1};
    switch (w.kind) {
        case WitnessKind::SafetyTightness: {
            Mechanism m = Mechanism::of(BaseRule::MJ, 0, w.params.at("tau"), Participation::ActiveOnly);
            return apply(m, *w.v) == p && !is_safe(m, mj, *w.v, w.params.at("alpha"));
        }
        case WitnessKind::ArbitraryLowerBound: {
            const Profile &v = *w.v, &vb = *w.v_bar;
            if (v.sybil_count() != vb.sybil_count() || v.passive_count() != vb.passive_count()) return false;
            for (const auto& t : taus) {
                Mechanism m = Mechanism::of(BaseRule::MJ, 0, t, Participation::ActiveOnly);
                auto e1 = visible_electorate(m, v), e2 = visible_electorate(m, vb);
                if (e1.q != e2.q || e1.entries.size() != e2.entries.size()) return false;
                for (std::size_t i = 0; i < e1.entries.size(); ++i)
                    if (!(e1.entries[i].ballot == e2.entries[i].ballot) || e1.entries[i].weight != e2.entries[i].weight)
                        return false;
                if (apply(m, v) != apply(m, vb)) return false;
            }
            // V is the all-r profile with exactly |H+| honest voters moved to p.
            Profile base = detail::binary_profile(v.active_honest_count(), 0, v.passive_count(), 0, v.sybil_count(), 0);
            Mechanism plus = mj.active();
            auto k = min_budget(plus, active_population(base), Goal::reach(base.domain(), p),
                                static_cast<std::int64_t>(v.active_honest_count()));
            (void)k;
            // Honest voters of V-bar weakly prefer r, so only r is 0-safe there.
            return apply(mj, honest_population(vb)) == r;
        }
        case WitnessKind::RandomLowerBound: {
            const auto &a = *w.nv, &b = *w.nv_bar;
            if (a.sybil_p + a.active_honest_p() != b.sybil_p + b.active_honest_p()) return false;
            if (a.sybil_r + a.active_honest_r() != b.sybil_r + b.active_honest_r()) return false;
            if (a.mu() != b.mu() || a.sigma() != b.sigma()) return false;
            for (const auto& t : taus)
                if (nonatomic_eval(a, t) != nonatomic_eval(b, t)) return false;
            return b.honest_r >= b.honest_p;
        }
    }
    return false;
}

}  // namespace realityvote
