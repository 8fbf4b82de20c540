#pragma once

// Voter populations: the domain of alternatives, voter classes, ballots and
// the derived fractions (sybils sigma, passives mu, active honest h+, honest
// participation phi) that every other module reads.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "realityvote/error.hpp"
#include "realityvote/rational.hpp"

namespace realityvote {

enum class DomainKind { Binary, Categorical, Hypercube, Interval };

inline const char* domain_kind_name(DomainKind k) {
    switch (k) {
        case DomainKind::Binary: return "binary";
        case DomainKind::Categorical: return "categorical";
        case DomainKind::Hypercube: return "hypercube";
        case DomainKind::Interval: return "interval";
    }
    return "?";
}

/// Index into the domain's label list (binary and categorical domains).
struct Label {
    std::size_t index = 0;
    friend auto operator<=>(const Label&, const Label&) = default;
};

/// Total order over categorical alternatives, most preferred first.
struct Ranking {
    std::vector<std::size_t> order;
    friend auto operator<=>(const Ranking&, const Ranking&) = default;
};

using Point = std::vector<std::uint8_t>;

using Alternative = std::variant<Label, Point, Rational>;
using Ballot = std::variant<Label, Ranking, Point, Rational>;

class DomainSpec {
public:
    static DomainSpec binary(std::string r = "r", std::string p = "p") {
        if (r == p) throw Error(Errc::InvalidDomain, "binary alternatives must differ");
        DomainSpec d(DomainKind::Binary);
        d.labels_ = {std::move(r), std::move(p)};
        return d;
    }

    static DomainSpec categorical(std::vector<std::string> alternatives, const std::string& status_quo) {
        if (alternatives.size() < 2) throw Error(Errc::InvalidDomain, "categorical domain needs at least 2 alternatives");
        for (std::size_t i = 0; i < alternatives.size(); ++i)
            for (std::size_t j = i + 1; j < alternatives.size(); ++j)
                if (alternatives[i] == alternatives[j])
                    throw Error(Errc::InvalidDomain, "duplicate alternative '" + alternatives[i] + "'");
        auto it = std::find(alternatives.begin(), alternatives.end(), status_quo);
        if (it == alternatives.end()) throw Error(Errc::InvalidDomain, "status quo '" + status_quo + "' is not an alternative");
        DomainSpec d(DomainKind::Categorical);
        d.status_quo_ = static_cast<std::size_t>(it - alternatives.begin());
        d.labels_ = std::move(alternatives);
        return d;
    }

    static DomainSpec hypercube(Point status_quo) {
        if (status_quo.empty()) throw Error(Errc::InvalidDomain, "hypercube dimension must be positive");
        for (auto b : status_quo)
            if (b > 1) throw Error(Errc::InvalidDomain, "hypercube coordinates must be 0 or 1");
        DomainSpec d(DomainKind::Hypercube);
        d.point_ = std::move(status_quo);
        return d;
    }

    static DomainSpec interval(Rational status_quo) {
        DomainSpec d(DomainKind::Interval);
        d.position_ = status_quo;
        return d;
    }

    DomainKind kind() const { return kind_; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t status_quo_index() const { return status_quo_; }
    const Point& status_quo_point() const { return point_; }
    const Rational& status_quo_position() const { return position_; }
    std::size_t dimension() const { return point_.size(); }

    /// Number of alternatives in a finite label domain.
    std::size_t alternative_count() const { return labels_.size(); }

    Alternative status_quo() const {
        switch (kind_) {
            case DomainKind::Binary:
            case DomainKind::Categorical: return Label{status_quo_};
            case DomainKind::Hypercube: return point_;
            case DomainKind::Interval: return position_;
        }
        return Label{0};
    }

    std::optional<std::size_t> find_label(const std::string& name) const {
        auto it = std::find(labels_.begin(), labels_.end(), name);
        if (it == labels_.end()) return std::nullopt;
        return static_cast<std::size_t>(it - labels_.begin());
    }

    bool is_valid(const Alternative& a) const {
        switch (kind_) {
            case DomainKind::Binary:
            case DomainKind::Categorical: {
                auto* l = std::get_if<Label>(&a);
                return l && l->index < labels_.size();
            }
            case DomainKind::Hypercube: {
                auto* p = std::get_if<Point>(&a);
                return p && p->size() == point_.size() &&
                       std::all_of(p->begin(), p->end(), [](auto b) { return b <= 1; });
            }
            case DomainKind::Interval: return std::holds_alternative<Rational>(a);
        }
        return false;
    }

    std::string format(const Alternative& a) const {
        if (auto* l = std::get_if<Label>(&a)) return l->index < labels_.size() ? labels_[l->index] : "?";
        if (auto* p = std::get_if<Point>(&a)) {
            std::string s;
            for (auto b : *p) s.push_back(b ? '1' : '0');
            return s;
        }
        return to_display(std::get<Rational>(a));
    }

    friend bool operator==(const DomainSpec&, const DomainSpec&) = default;

private:
    explicit DomainSpec(DomainKind k) : kind_(k) {}

    DomainKind kind_;
    std::vector<std::string> labels_;
    std::size_t status_quo_ = 0;
    Point point_;
    Rational position_{0};
};

enum class VoterClass { HonestActive, HonestPassive, Sybil };

inline const char* voter_class_name(VoterClass c) {
    switch (c) {
        case VoterClass::HonestActive: return "honest_active";
        case VoterClass::HonestPassive: return "honest_passive";
        case VoterClass::Sybil: return "sybil";
    }
    return "?";
}

inline bool is_honest(VoterClass c) { return c != VoterClass::Sybil; }
inline bool is_active(VoterClass c) { return c != VoterClass::HonestPassive; }

struct Voter {
    VoterClass cls;
    std::optional<Ballot> ballot;
    friend bool operator==(const Voter&, const Voter&) = default;
};

namespace detail {

enum class BallotShape { Choice, Ranking, Point, Position };

inline BallotShape shape_of(const Ballot& b) {
    switch (b.index()) {
        case 0: return BallotShape::Choice;
        case 1: return BallotShape::Ranking;
        case 2: return BallotShape::Point;
        default: return BallotShape::Position;
    }
}

inline void check_ballot(const DomainSpec& d, const Ballot& b) {
    switch (d.kind()) {
        case DomainKind::Binary:
        case DomainKind::Categorical: {
            if (auto* l = std::get_if<Label>(&b)) {
                if (l->index >= d.alternative_count()) throw Error(Errc::InvalidBallot, "choice out of range");
                return;
            }
            if (auto* r = std::get_if<Ranking>(&b)) {
                if (d.kind() != DomainKind::Categorical)
                    throw Error(Errc::MixedBallotKind, "rankings are only allowed in categorical domains");
                std::vector<std::size_t> sorted = r->order;
                std::sort(sorted.begin(), sorted.end());
                bool perm = sorted.size() == d.alternative_count();
                for (std::size_t i = 0; perm && i < sorted.size(); ++i) perm = sorted[i] == i;
                if (!perm) throw Error(Errc::InvalidBallot, "ranking must order every alternative exactly once");
                return;
            }
            throw Error(Errc::MixedBallotKind, std::string("ballot does not match ") + domain_kind_name(d.kind()) + " domain");
        }
        case DomainKind::Hypercube: {
            auto* p = std::get_if<Point>(&b);
            if (!p) throw Error(Errc::MixedBallotKind, "ballot does not match hypercube domain");
            if (!d.is_valid(*p)) throw Error(Errc::InvalidBallot, "hypercube point has wrong dimension or non-binary coordinate");
            return;
        }
        case DomainKind::Interval:
            if (!std::holds_alternative<Rational>(b)) throw Error(Errc::MixedBallotKind, "ballot does not match interval domain");
            return;
    }
}

}  // namespace detail

/// Immutable validated population. Built only through build_profile.
class Profile {
public:
    const DomainSpec& domain() const { return domain_; }
    std::span<const Voter> voters() const { return voters_; }

    std::size_t size() const { return voters_.size(); }
    std::size_t sybil_count() const { return sybils_; }
    std::size_t passive_count() const { return passives_; }
    std::size_t active_honest_count() const { return voters_.size() - sybils_ - passives_; }
    std::size_t honest_count() const { return voters_.size() - sybils_; }
    std::size_t active_count() const { return voters_.size() - passives_; }

    Rational sigma() const { return Rational(static_cast<std::int64_t>(sybils_), static_cast<std::int64_t>(size())); }
    Rational mu() const { return Rational(static_cast<std::int64_t>(passives_), static_cast<std::int64_t>(size())); }
    Rational h_plus() const { return Rational(1) - sigma() - mu(); }
    Rational phi() const {
        return Rational(static_cast<std::int64_t>(active_honest_count()), static_cast<std::int64_t>(honest_count()));
    }

    /// True when every passive voter carries a private ballot.
    bool has_private_ballots() const {
        return std::all_of(voters_.begin(), voters_.end(), [](const Voter& v) { return v.ballot.has_value(); });
    }

    /// Ballot kind shared by all ballots of the profile (Label vs Ranking matters).
    bool uses_rankings() const { return rankings_; }

    friend bool operator==(const Profile&, const Profile&) = default;

private:
    friend Profile build_profile(DomainSpec, std::vector<Voter>);
    Profile(DomainSpec d, std::vector<Voter> v) : domain_(std::move(d)), voters_(std::move(v)) {}

    DomainSpec domain_;
    std::vector<Voter> voters_;
    std::size_t sybils_ = 0;
    std::size_t passives_ = 0;
    bool rankings_ = false;
};

inline Profile build_profile(DomainSpec domain, std::vector<Voter> entries) {
    Profile p(std::move(domain), std::move(entries));
    std::optional<detail::BallotShape> shape;
    std::size_t active_honest = 0;
    for (const Voter& v : p.voters_) {
        switch (v.cls) {
            case VoterClass::Sybil:
                ++p.sybils_;
                if (!v.ballot) throw Error(Errc::SybilWithoutBallot, "every sybil must carry a ballot");
                break;
            case VoterClass::HonestPassive: ++p.passives_; break;
            case VoterClass::HonestActive:
                ++active_honest;
                if (!v.ballot) throw Error(Errc::InvalidBallot, "active honest voter without a ballot");
                break;
        }
        if (!v.ballot) continue;
        detail::check_ballot(p.domain_, *v.ballot);
        auto s = detail::shape_of(*v.ballot);
        if (shape && *shape != s) throw Error(Errc::MixedBallotKind, "profile mixes ballot kinds");
        shape = s;
    }
    if (active_honest == 0) throw Error(Errc::NoActiveHonest, "profile needs at least one active honest voter");
    p.rankings_ = shape == detail::BallotShape::Ranking;
    return p;
}

/// Copy of `profile` with every honest voter made active: the population the
/// base rule is evaluated on when measuring safety against all of H.
inline Profile honest_population(const Profile& profile) {
    std::vector<Voter> out;
    out.reserve(profile.honest_count());
    for (const Voter& v : profile.voters()) {
        if (!is_honest(v.cls)) continue;
        if (!v.ballot) throw Error(Errc::MissingPrivateBallots, "passive voter has no private ballot");
        out.push_back({VoterClass::HonestActive, v.ballot});
    }
    return build_profile(profile.domain(), std::move(out));
}

/// V+ = H+ and S: the population an active-only rule actually sees.
inline Profile active_population(const Profile& profile) {
    std::vector<Voter> out;
    for (const Voter& v : profile.voters())
        if (is_active(v.cls)) out.push_back(v);
    return build_profile(profile.domain(), std::move(out));
}

/// Binary projection of an interval profile onto {x, y} with x < y: every
/// ballot moves to the closer point, exact ties go to x, and x becomes the
/// status quo of the returned binary profile.
inline Profile project_to_pair(const Profile& profile, const Rational& x, const Rational& y) {
    if (profile.domain().kind() != DomainKind::Interval)
        throw Error(Errc::MixedBallotKind, "projection needs an interval profile");
    if (!(x < y)) throw Error(Errc::InvalidArgument, "projection pair must satisfy x < y");
    std::string xs = to_display(x), ys = to_display(y);
    DomainSpec binary = DomainSpec::binary(xs, ys);
    std::vector<Voter> out;
    out.reserve(profile.size());
    for (const Voter& v : profile.voters()) {
        if (!v.ballot) {
            out.push_back({v.cls, std::nullopt});
            continue;
        }
        const Rational& s = std::get<Rational>(*v.ballot);
        bool to_y = abs(s - y) < abs(s - x);
        out.push_back({v.cls, Ballot{Label{to_y ? 1u : 0u}}});
    }
    return build_profile(std::move(binary), std::move(out));
}

/// Continuum limit of a binary population: masses instead of counts.
struct NonatomicProfile {
    Rational honest_r;
    Rational honest_p;
    Rational sybil_r;
    Rational sybil_p;
    Rational phi{1};  ///< participating share of every honest mass

    static NonatomicProfile make(Rational hr, Rational hp, Rational sr, Rational sp, Rational phi) {
        NonatomicProfile n{hr, hp, sr, sp, phi};
        if (hr < 0 || hp < 0 || sr < 0 || sp < 0) throw Error(Errc::InvalidArgument, "masses must be nonnegative");
        if (hr + hp + sr + sp != 1) throw Error(Errc::InvalidArgument, "masses must sum to 1");
        if (!(phi > 0) || phi > 1) throw Error(Errc::InvalidArgument, "participation must lie in (0, 1]");
        if (!(hr + hp > 0)) throw Error(Errc::NoActiveHonest, "nonatomic profile needs honest mass");
        return n;
    }

    Rational sigma() const { return sybil_r + sybil_p; }
    Rational honest() const { return honest_r + honest_p; }
    Rational mu() const { return (Rational(1) - phi) * honest(); }
    Rational active_honest_r() const { return phi * honest_r; }
    Rational active_honest_p() const { return phi * honest_p; }
};

}  // namespace realityvote
