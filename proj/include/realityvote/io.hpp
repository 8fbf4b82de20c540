#pragma once

// Profile files (JSON). Rationals travel as "p/q" strings. dump_profile is
// canonical: sorted keys, compact, so parse -> dump is a fixed point.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "realityvote/error.hpp"
#include "realityvote/population.hpp"
#include "realityvote/rational.hpp"

namespace realityvote {

inline constexpr const char* kProfileFormat = "realityvote-profile/1";

namespace detail {

using nlohmann::json;

[[noreturn]] inline void bad_field(const std::string& field, const std::string& why) {
    throw Error(Errc::ParseError, "field '" + field + "': " + why);
}

inline Rational json_rational(const json& j, const std::string& field) {
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const Error& e) {
            bad_field(field, e.what());
        }
    }
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    bad_field(field, "expected a rational string like \"2/5\"");
}

inline std::size_t json_label(const DomainSpec& d, const json& j, const std::string& field) {
    if (!j.is_string()) bad_field(field, "expected an alternative name");
    auto i = d.find_label(j.get<std::string>());
    if (!i) bad_field(field, "unknown alternative '" + j.get<std::string>() + "'");
    return *i;
}

inline Point json_point(const json& j, const std::string& field) {
    if (!j.is_array()) bad_field(field, "expected an array of 0/1");
    Point p;
    for (const auto& x : j) {
        if (!x.is_number_integer() || (x.get<int>() != 0 && x.get<int>() != 1)) bad_field(field, "coordinates must be 0 or 1");
        p.push_back(static_cast<std::uint8_t>(x.get<int>()));
    }
    return p;
}

inline DomainSpec json_domain(const json& j) {
    if (!j.is_object()) bad_field("domain", "expected an object");
    if (!j.contains("kind") || !j["kind"].is_string()) bad_field("domain.kind", "missing");
    if (!j.contains("r")) bad_field("domain.r", "missing");
    const std::string kind = j["kind"].get<std::string>();
    try {
        if (kind == "binary" || kind == "categorical") {
            if (!j.contains("alternatives") || !j["alternatives"].is_array()) bad_field("domain.alternatives", "missing");
            std::vector<std::string> alts;
            for (const auto& a : j["alternatives"]) {
                if (!a.is_string()) bad_field("domain.alternatives", "names must be strings");
                alts.push_back(a.get<std::string>());
            }
            if (!j["r"].is_string()) bad_field("domain.r", "expected an alternative name");
            std::string r = j["r"].get<std::string>();
            if (kind == "categorical") return DomainSpec::categorical(alts, r);
            if (alts.size() != 2) bad_field("domain.alternatives", "binary domain has exactly two alternatives");
            if (alts[0] == r) return DomainSpec::binary(alts[0], alts[1]);
            if (alts[1] == r) return DomainSpec::binary(alts[1], alts[0]);
            bad_field("domain.r", "status quo is not an alternative");
        }
        if (kind == "hypercube") return DomainSpec::hypercube(json_point(j["r"], "domain.r"));
        if (kind == "interval") return DomainSpec::interval(json_rational(j["r"], "domain.r"));
    } catch (const Error& e) {
        if (e.code() == Errc::ParseError) throw;
        bad_field("domain", e.what());
    }
    bad_field("domain.kind", "unknown kind '" + kind + "'");
}

inline Ballot json_ballot(const DomainSpec& d, const json& j, const std::string& field) {
    switch (d.kind()) {
        case DomainKind::Binary:
        case DomainKind::Categorical:
            if (j.is_array()) {
                Ranking r;
                for (const auto& x : j) r.order.push_back(json_label(d, x, field));
                return r;
            }
            return Label{json_label(d, j, field)};
        case DomainKind::Hypercube: return json_point(j, field);
        case DomainKind::Interval: return json_rational(j, field);
    }
    bad_field(field, "unsupported domain");
}

inline json ballot_json(const DomainSpec& d, const Ballot& b) {
    if (auto* l = std::get_if<Label>(&b)) return d.labels()[l->index];
    if (auto* r = std::get_if<Ranking>(&b)) {
        json a = json::array();
        for (auto i : r->order) a.push_back(d.labels()[i]);
        return a;
    }
    if (auto* p = std::get_if<Point>(&b)) {
        json a = json::array();
        for (auto x : *p) a.push_back(static_cast<int>(x));
        return a;
    }
    return to_string(std::get<Rational>(b));
}

}  // namespace detail

inline Profile parse_profile(const std::string& text) {
    using detail::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::ParseError, std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) detail::bad_field("<root>", "expected an object");
    if (j.contains("format") && j["format"] != kProfileFormat)
        detail::bad_field("format", "unsupported version");
    if (!j.contains("domain")) detail::bad_field("domain", "missing");
    DomainSpec d = detail::json_domain(j["domain"]);
    if (!j.contains("voters") || !j["voters"].is_array()) detail::bad_field("voters", "missing");
    if (j["voters"].empty()) detail::bad_field("voters", "empty");
    std::vector<Voter> vs;
    std::size_t i = 0;
    for (const auto& v : j["voters"]) {
        const std::string f = "voters[" + std::to_string(i++) + "]";
        if (!v.is_object() || !v.contains("class") || !v["class"].is_string()) detail::bad_field(f + ".class", "missing");
        std::string c = v["class"].get<std::string>();
        VoterClass cls;
        if (c == "honest_active") cls = VoterClass::HonestActive;
        else if (c == "honest_passive") cls = VoterClass::HonestPassive;
        else if (c == "sybil") cls = VoterClass::Sybil;
        else detail::bad_field(f + ".class", "unknown class '" + c + "'");
        std::optional<Ballot> b;
        if (v.contains("ballot") && !v["ballot"].is_null()) b = detail::json_ballot(d, v["ballot"], f + ".ballot");
        vs.push_back({cls, std::move(b)});
    }
    return build_profile(std::move(d), std::move(vs));
}

inline Profile load_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::ParseError, "cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_profile(ss.str());
}

inline std::string dump_profile(const Profile& p) {
    using detail::json;
    const DomainSpec& d = p.domain();
    json dom;
    dom["kind"] = domain_kind_name(d.kind());
    switch (d.kind()) {
        case DomainKind::Binary:
        case DomainKind::Categorical:
            dom["alternatives"] = d.labels();
            dom["r"] = d.labels()[d.status_quo_index()];
            break;
        case DomainKind::Hypercube: dom["r"] = detail::ballot_json(d, d.status_quo_point()); break;
        case DomainKind::Interval: dom["r"] = to_string(d.status_quo_position()); break;
    }
    json voters = json::array();
    for (const Voter& v : p.voters()) {
        json o;
        o["class"] = voter_class_name(v.cls);
        if (v.ballot) o["ballot"] = detail::ballot_json(d, *v.ballot);
        voters.push_back(std::move(o));
    }
    json root;
    root["format"] = kProfileFormat;
    root["domain"] = std::move(dom);
    root["voters"] = std::move(voters);
    return root.dump();
}

}  // namespace realityvote
