#pragma once

// Between-sets B(x, y) and their unions B(x; Y) for the three concrete
// geometries: unordered labels, the hypercube box, and the line.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "realityvote/error.hpp"
#include "realityvote/population.hpp"
#include "realityvote/rational.hpp"

namespace realityvote {

/// Box in {0,1}^d: coordinate i is fixed to fixed[i] unless free[i].
struct Box {
    Point fixed;
    std::vector<bool> free;

    bool contains(const Point& p) const {
        if (p.size() != fixed.size()) return false;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (!free[i] && p[i] != fixed[i]) return false;
        return true;
    }

    std::vector<Point> points() const {
        std::vector<std::size_t> open;
        for (std::size_t i = 0; i < free.size(); ++i)
            if (free[i]) open.push_back(i);
        std::vector<Point> out;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << open.size()); ++mask) {
            Point p = fixed;
            for (std::size_t j = 0; j < open.size(); ++j) p[open[j]] = (mask >> j) & 1;
            out.push_back(std::move(p));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    friend bool operator==(const Box&, const Box&) = default;
};

/// Closed interval; a missing end means unbounded on that side.
struct Segment {
    std::optional<Rational> lo;
    std::optional<Rational> hi;

    bool contains(const Rational& x) const { return (!lo || *lo <= x) && (!hi || x <= *hi); }
    friend bool operator==(const Segment&, const Segment&) = default;
};

/// B(x, y) or a union of them. Label domains keep an explicit set, the
/// hypercube keeps the list of boxes (a union of boxes need not be a box),
/// the line keeps the hull.
class BetweenRegion {
public:
    DomainKind kind() const { return kind_; }
    const std::set<std::size_t>& labels() const { return labels_; }
    const std::vector<Box>& boxes() const { return boxes_; }
    const Segment& segment() const { return segment_; }

    bool contains(const Alternative& a) const {
        switch (kind_) {
            case DomainKind::Binary:
            case DomainKind::Categorical: {
                auto* l = std::get_if<Label>(&a);
                return l && labels_.count(l->index);
            }
            case DomainKind::Hypercube: {
                auto* p = std::get_if<Point>(&a);
                return p && std::any_of(boxes_.begin(), boxes_.end(), [&](const Box& b) { return b.contains(*p); });
            }
            case DomainKind::Interval: {
                auto* x = std::get_if<Rational>(&a);
                return x && segment_.contains(*x);
            }
        }
        return false;
    }

    /// Explicit member list for finite domains (hypercube boxes expanded).
    std::vector<Alternative> members() const {
        std::vector<Alternative> out;
        if (kind_ == DomainKind::Hypercube) {
            std::set<Point> pts;
            for (const Box& b : boxes_)
                for (auto& p : b.points()) pts.insert(p);
            for (auto& p : pts) out.push_back(p);
        } else if (kind_ != DomainKind::Interval) {
            for (auto l : labels_) out.push_back(Label{l});
        }
        return out;
    }

    void merge(const BetweenRegion& o) {
        if (o.kind_ != kind_) throw Error(Errc::InvalidDomain, "cannot merge regions of different domains");
        labels_.insert(o.labels_.begin(), o.labels_.end());
        for (const Box& b : o.boxes_)
            if (std::find(boxes_.begin(), boxes_.end(), b) == boxes_.end()) boxes_.push_back(b);
        if (kind_ == DomainKind::Interval) {
            segment_.lo = (segment_.lo && o.segment_.lo) ? std::optional(rmin(*segment_.lo, *o.segment_.lo)) : std::nullopt;
            segment_.hi = (segment_.hi && o.segment_.hi) ? std::optional(rmax(*segment_.hi, *o.segment_.hi)) : std::nullopt;
        }
    }

    static BetweenRegion segment_region(Segment s) {
        if (s.lo && s.hi && *s.hi < *s.lo) std::swap(s.lo, s.hi);
        BetweenRegion r(DomainKind::Interval);
        r.segment_ = s;
        return r;
    }

private:
    friend BetweenRegion between(const DomainSpec&, const Alternative&, const Alternative&);
    explicit BetweenRegion(DomainKind k) : kind_(k) {}

    DomainKind kind_;
    std::set<std::size_t> labels_;
    std::vector<Box> boxes_;
    Segment segment_;
};

inline BetweenRegion between(const DomainSpec& d, const Alternative& x, const Alternative& y) {
    if (!d.is_valid(x) || !d.is_valid(y)) throw Error(Errc::InvalidArgument, "alternative does not belong to the domain");
    BetweenRegion out(d.kind());
    switch (d.kind()) {
        case DomainKind::Binary:
        case DomainKind::Categorical:
            out.labels_ = {std::get<Label>(x).index, std::get<Label>(y).index};
            break;
        case DomainKind::Hypercube: {
            const Point& a = std::get<Point>(x);
            const Point& b = std::get<Point>(y);
            Box box{a, std::vector<bool>(a.size())};
            for (std::size_t i = 0; i < a.size(); ++i) box.free[i] = a[i] != b[i];
            out.boxes_.push_back(std::move(box));
            break;
        }
        case DomainKind::Interval: {
            const Rational& a = std::get<Rational>(x);
            const Rational& b = std::get<Rational>(y);
            out.segment_ = {rmin(a, b), rmax(a, b)};
            break;
        }
    }
    return out;
}

inline BetweenRegion between_union(const DomainSpec& d, const Alternative& x, const std::vector<Alternative>& ys) {
    if (ys.empty()) throw Error(Errc::EmptyTargetSet, "between_union needs at least one target");
    BetweenRegion out = between(d, x, ys.front());
    for (std::size_t i = 1; i < ys.size(); ++i) out.merge(between(d, x, ys[i]));
    return out;
}

inline bool contains(const BetweenRegion& region, const Alternative& a) { return region.contains(a); }

}  // namespace realityvote
