#pragma once

// Nearest-active delegation on the line and the follower-weighted median.
// Kept free of the rules layer so that rules can dispatch proxy mode here.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "realityvote/error.hpp"
#include "realityvote/population.hpp"
#include "realityvote/rational.hpp"

namespace realityvote {

struct WeightedPoint {
    Rational position;
    Rational weight;
};

/// min{ u_i : sum_{j<=i} w_j >= sum_{j>i} w_j } over entries sorted by position.
inline Rational weighted_median(std::vector<WeightedPoint> entries) {
    if (entries.empty()) throw Error(Errc::EmptyEntries, "weighted median of nothing");
    Rational total(0);
    for (const auto& e : entries) {
        if (e.weight < 0) throw Error(Errc::InvalidArgument, "negative weight");
        total += e.weight;
    }
    if (!(total > 0)) throw Error(Errc::EmptyEntries, "total weight must be positive");
    std::stable_sort(entries.begin(), entries.end(),
                     [](const WeightedPoint& a, const WeightedPoint& b) { return less(a.position, b.position); });
    Rational prefix(0);
    for (const auto& e : entries) {
        prefix += e.weight;
        if (prefix >= total - prefix) return e.position;
    }
    return entries.back().position;  // unreachable: the last prefix is the total
}

inline constexpr std::size_t kStatusQuoEntity = std::numeric_limits<std::size_t>::max();

struct ProxyEntity {
    Rational position;
    Rational weight;
    std::size_t voter = kStatusQuoEntity;  ///< index into the profile, or the status quo
    std::size_t followers = 0;

    bool is_status_quo() const { return voter == kStatusQuoEntity; }
};

struct DelegationOptions {
    bool r_unit_weight = false;  ///< give r the same base weight 1 as an active voter
    bool r_is_proxy = true;
};

struct DelegationWeights {
    std::vector<ProxyEntity> entities;  ///< active voters in profile order, then r (if a proxy)
    std::vector<std::size_t> assignment;  ///< per voter: entity index carrying its weight
    Rational q;

    Rational total() const {
        Rational t(0);
        for (const auto& e : entities) t += e.weight;
        return t;
    }

    std::vector<WeightedPoint> points() const {
        std::vector<WeightedPoint> out;
        out.reserve(entities.size());
        for (const auto& e : entities) out.push_back({e.position, e.weight});
        return out;
    }
};

namespace detail {

// Index of the entity a voter at x follows: nearest first, then the one
// closer to r, then r itself, then the lowest index.
inline std::size_t nearest_entity(const std::vector<ProxyEntity>& es, const Rational& x, const Rational& r) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < es.size(); ++i) {
        const auto& a = es[i];
        const auto& b = es[best];
        Rational da = abs(a.position - x), db = abs(b.position - x);
        if (da != db) {
            if (da < db) best = i;
            continue;
        }
        Rational ra = abs(a.position - r), rb = abs(b.position - r);
        if (ra != rb) {
            if (ra < rb) best = i;
            continue;
        }
        if (a.is_status_quo() && !b.is_status_quo()) best = i;
    }
    return best;
}

}  // namespace detail

inline DelegationWeights delegate(const Profile& profile, const Rational& re_tau, DelegationOptions opt = {}) {
    if (profile.domain().kind() != DomainKind::Interval)
        throw Error(Errc::MechanismMismatch, "delegation is defined on the interval domain only");
    if (re_tau < 0) throw Error(Errc::InvalidArgument, "tau must be nonnegative");
    const Rational r = profile.domain().status_quo_position();
    DelegationWeights out;
    out.q = re_tau * static_cast<std::int64_t>(profile.size());
    auto voters = profile.voters();
    out.assignment.assign(voters.size(), 0);
    for (std::size_t i = 0; i < voters.size(); ++i) {
        if (!is_active(voters[i].cls)) continue;
        out.assignment[i] = out.entities.size();
        out.entities.push_back({std::get<Rational>(*voters[i].ballot), Rational(1), i, 0});
    }
    if (opt.r_is_proxy) out.entities.push_back({r, out.q + (opt.r_unit_weight ? 1 : 0), kStatusQuoEntity, 0});
    if (out.entities.empty()) throw Error(Errc::NoProxyAvailable, "no active voter and r is not a proxy");
    // Entities by position; the nearest ones sit at the closest position on
    // either side of x, so only those are handed to the tie rule.
    std::vector<std::size_t> by_pos(out.entities.size());
    std::iota(by_pos.begin(), by_pos.end(), std::size_t{0});
    std::stable_sort(by_pos.begin(), by_pos.end(),
                     [&](auto a, auto b) { return less(out.entities[a].position, out.entities[b].position); });
    std::vector<ProxyEntity> cand;
    std::vector<std::size_t> cand_idx;
    for (std::size_t i = 0; i < voters.size(); ++i) {
        if (is_active(voters[i].cls)) continue;
        if (!voters[i].ballot) throw Error(Errc::MissingPrivateBallots, "passive voter without a position cannot delegate");
        const Rational& x = std::get<Rational>(*voters[i].ballot);
        auto hi = std::lower_bound(by_pos.begin(), by_pos.end(), x,
                                   [&](std::size_t e, const Rational& v) { return less(out.entities[e].position, v); });
        cand_idx.clear();
        if (hi != by_pos.end())
            for (auto it = hi; it != by_pos.end() && out.entities[*it].position == out.entities[*hi].position; ++it)
                cand_idx.push_back(*it);
        if (hi != by_pos.begin() && (hi == by_pos.end() || out.entities[*hi].position != x)) {
            const Rational& p = out.entities[*std::prev(hi)].position;
            for (auto it = std::prev(hi);; --it) {
                if (out.entities[*it].position != p) break;
                cand_idx.push_back(*it);
                if (it == by_pos.begin()) break;
            }
        }
        std::sort(cand_idx.begin(), cand_idx.end());
        cand.clear();
        for (auto c : cand_idx) cand.push_back(out.entities[c]);
        std::size_t e = cand_idx[detail::nearest_entity(cand, x, r)];
        out.assignment[i] = e;
        out.entities[e].weight += 1;
        ++out.entities[e].followers;
    }
    return out;
}

/// Proxy median: weighted median over the active voters and r, each carrying
/// its followers; r also carries the virtual mass tau*|V|.
inline Rational md_proxy(const Profile& profile, const Rational& re_tau, DelegationOptions opt = {}) {
    return weighted_median(delegate(profile, re_tau, opt).points());
}

}  // namespace realityvote
