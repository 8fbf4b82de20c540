#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "realityvote.hpp"

namespace rvt {

using namespace realityvote;

inline Rational R(std::int64_t p, std::int64_t q = 1) { return Rational(p, q); }

// Binary profile from counts: active r/p, passive r/p, sybil r/p.
inline Profile binary(std::int64_t ar, std::int64_t ap, std::int64_t pr = 0, std::int64_t pp = 0, std::int64_t sr = 0,
                      std::int64_t sp = 0) {
    std::vector<Voter> vs;
    auto add = [&](VoterClass c, std::size_t l, std::int64_t k) {
        for (std::int64_t i = 0; i < k; ++i) vs.push_back({c, Ballot{Label{l}}});
    };
    add(VoterClass::HonestActive, 0, ar);
    add(VoterClass::HonestActive, 1, ap);
    add(VoterClass::HonestPassive, 0, pr);
    add(VoterClass::HonestPassive, 1, pp);
    add(VoterClass::Sybil, 0, sr);
    add(VoterClass::Sybil, 1, sp);
    return build_profile(DomainSpec::binary(), std::move(vs));
}

inline Profile line(const Rational& r, const std::vector<Rational>& active, const std::vector<Rational>& passive,
                    const std::vector<Rational>& sybil) {
    std::vector<Voter> vs;
    for (auto& x : active) vs.push_back({VoterClass::HonestActive, Ballot{x}});
    for (auto& x : passive) vs.push_back({VoterClass::HonestPassive, Ballot{x}});
    for (auto& x : sybil) vs.push_back({VoterClass::Sybil, Ballot{x}});
    return build_profile(DomainSpec::interval(r), std::move(vs));
}

inline std::vector<Rational> ints(std::initializer_list<int> xs) {
    std::vector<Rational> out;
    for (int x : xs) out.push_back(Rational(x));
    return out;
}

inline const Alternative kR = Label{0};
inline const Alternative kP = Label{1};

inline std::string sample(const std::string& name) { return std::string(REALITYVOTE_SAMPLES) + "/" + name; }

}  // namespace rvt
