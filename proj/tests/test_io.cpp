#include <fstream>
#include <sstream>

#include <catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace rvt;

static std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TEST_CASE("sample files are canonical") {
    for (const char* f : {"five_voter.json", "line15.json", "cube60.json"}) {
        std::string text = slurp(sample(f));
        while (!text.empty() && text.back() == '\n') text.pop_back();
        CHECK(dump_profile(parse_profile(text)) == text);
    }
}

TEST_CASE("round trip across domains") {
    auto c = DomainSpec::categorical({"r", "a", "b"}, "a");
    Profile p = build_profile(c, {{VoterClass::HonestActive, Ranking{{2, 0, 1}}}, {VoterClass::HonestPassive, std::nullopt}});
    std::string s = dump_profile(p);
    CHECK(parse_profile(s) == p);
    CHECK(dump_profile(parse_profile(s)) == s);
    Profile l = line(R(1, 3), {R(-5, 2)}, {}, {R(7)});
    CHECK(parse_profile(dump_profile(l)) == l);
    CHECK(dump_profile(l).find("\"-5/2\"") != std::string::npos);
}

TEST_CASE("binary status quo may be listed second") {
    Profile p = parse_profile(R"({"domain":{"kind":"binary","alternatives":["yes","no"],"r":"no"},
        "voters":[{"class":"honest_active","ballot":"yes"}]})");
    CHECK(p.domain().status_quo_index() == 0);
    CHECK(p.domain().labels()[0] == "no");
    CHECK(apply(Mechanism::of(BaseRule::MJ), p) == kP);
}

static std::string error_of(const std::string& text) {
    try {
        parse_profile(text);
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

TEST_CASE("errors name the field") {
    CHECK(error_of("{").find("malformed JSON") != std::string::npos);
    CHECK(error_of(R"({"voters":[]})").find("'domain'") != std::string::npos);
    CHECK(error_of(R"({"domain":{"kind":"interval","r":"0/1"},"voters":[]})").find("'voters'") != std::string::npos);
    CHECK(error_of(R"({"domain":{"kind":"interval","r":0.5},"voters":[{"class":"sybil","ballot":"1"}]})")
              .find("domain.r") != std::string::npos);
    CHECK(error_of(R"({"domain":{"kind":"interval","r":"0"},"voters":[{"class":"ghost","ballot":"1"}]})")
              .find("voters[0].class") != std::string::npos);
    CHECK(error_of(R"({"domain":{"kind":"binary","alternatives":["r","p"],"r":"r"},"voters":[{"class":"honest_active","ballot":"q"}]})")
              .find("voters[0].ballot") != std::string::npos);
    CHECK(error_of(R"({"domain":{"kind":"cube","r":"0"},"voters":[{"class":"sybil","ballot":"1"}]})")
              .find("domain.kind") != std::string::npos);
}
