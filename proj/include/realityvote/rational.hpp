#pragma once

// Exact rational arithmetic used for every tally, fraction and threshold.
// Backed by boost::rational over 64-bit integers; the helpers below add
// parsing, canonical "p/q" printing and integer rounding.

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

#include "realityvote/error.hpp"

// Under C++20 rewritten comparisons, boost's (integer, rational) operator==
// picks itself as the reversed candidate and recurses forever. Exact-match
// non-template overloads take precedence.
namespace boost {
#define REALITYVOTE_RATIONAL_EQ(I)                                                                                     \
    inline constexpr bool operator==(const rational<std::int64_t>& a, I b) { return a == rational<std::int64_t>(b); } \
    inline constexpr bool operator==(I b, const rational<std::int64_t>& a) { return a == rational<std::int64_t>(b); }
REALITYVOTE_RATIONAL_EQ(int)
REALITYVOTE_RATIONAL_EQ(long)
REALITYVOTE_RATIONAL_EQ(long long)
#undef REALITYVOTE_RATIONAL_EQ
}  // namespace boost

namespace realityvote {

using Rational = boost::rational<std::int64_t>;

inline std::int64_t floor(const Rational& x) {
    std::int64_t q = x.numerator() / x.denominator();
    if (x.numerator() < 0 && q * x.denominator() != x.numerator()) --q;
    return q;
}

inline std::int64_t ceil(const Rational& x) {
    std::int64_t q = x.numerator() / x.denominator();
    if (x.numerator() > 0 && q * x.denominator() != x.numerator()) ++q;
    return q;
}

inline double to_double(const Rational& x) {
    return static_cast<double>(x.numerator()) / static_cast<double>(x.denominator());
}

inline Rational abs(const Rational& x) { return x < 0 ? -x : x; }

/// a < b, skipping boost's general comparison when the denominators agree.
inline bool less(const Rational& a, const Rational& b) {
    return a.denominator() == b.denominator() ? a.numerator() < b.numerator() : a < b;
}

inline Rational rmin(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational rmax(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Canonical interchange form: always "p/q", with q > 0 and gcd(p, q) = 1.
inline std::string to_string(const Rational& x) {
    return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

/// Short human form: "p" for integers, "p/q" otherwise.
inline std::string to_display(const Rational& x) {
    if (x.denominator() == 1) return std::to_string(x.numerator());
    return to_string(x);
}

namespace detail {

inline std::int64_t parse_int(std::string_view s, std::string_view whole) {
    if (s.empty()) throw Error(Errc::ParseError, "malformed rational '" + std::string(whole) + "'");
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw Error(Errc::ParseError, "malformed rational '" + std::string(whole) + "'");
    std::int64_t v = 0;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c < '0' || c > '9') throw Error(Errc::ParseError, "malformed rational '" + std::string(whole) + "'");
        if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, c - '0', &v))
            throw Error(Errc::ParseError, "rational out of range '" + std::string(whole) + "'");
    }
    return neg ? -v : v;
}

}  // namespace detail

/// Accepts "p/q", "p" and finite decimals such as "0.4" or "-1.25"; decimals
/// are converted exactly (0.4 == 2/5).
inline Rational parse_rational(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    };
    std::string_view s = trim(text);
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::int64_t num = detail::parse_int(trim(s.substr(0, slash)), text);
        std::int64_t den = detail::parse_int(trim(s.substr(slash + 1)), text);
        if (den == 0) throw Error(Errc::ParseError, "zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot);
        std::string_view fp = s.substr(dot + 1);
        bool neg = !ip.empty() && ip[0] == '-';
        if (fp.empty() || fp.size() > 17) throw Error(Errc::ParseError, "malformed rational '" + std::string(text) + "'");
        std::int64_t whole = (ip.empty() || ip == "-" || ip == "+") ? 0 : detail::parse_int(ip, text);
        std::int64_t frac = detail::parse_int(fp, text);
        if (frac < 0) throw Error(Errc::ParseError, "malformed rational '" + std::string(text) + "'");
        std::int64_t scale = 1;
        for (std::size_t k = 0; k < fp.size(); ++k) scale *= 10;
        Rational r = Rational(whole) + Rational(frac, scale) * (neg ? -1 : 1);
        return r;
    }
    return Rational(detail::parse_int(s, text));
}

}  // namespace realityvote
