#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

#include "cmrep/errors.hpp"

namespace cmrep {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

namespace detail {

// Decimal digits (optionally signed) to an integer; a leading zero must not
// select GMP's octal parsing.
inline Integer decimal_integer(std::string digits) {
    bool negative = !digits.empty() && digits.front() == '-';
    if (negative) digits.erase(0, 1);
    auto nz = digits.find_first_not_of('0');
    digits = nz == std::string::npos ? "0" : digits.substr(nz);
    Integer v(digits);
    return negative ? Integer(-v) : v;
}

}  // namespace detail

/// Parses "p/q", "p" or a decimal literal such as "-0.25" into an exact rational.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto first = s.find_first_not_of(" \t");
    auto last = s.find_last_not_of(" \t");
    if (first == std::string::npos) throw ValidationError("empty rational literal");
    s = s.substr(first, last - first + 1);
    if (s.front() == '+') s.erase(0, 1);

    auto dot = s.find('.');
    if (dot != std::string::npos) {
        if (s.find('/') != std::string::npos) throw ValidationError("bad rational literal '" + s + "'");
        bool negative = !s.empty() && s.front() == '-';
        std::string body = negative ? s.substr(1) : s;
        dot = body.find('.');
        std::string digits = body.substr(0, dot) + body.substr(dot + 1);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw ValidationError("bad rational literal '" + s + "'");
        std::string denom = "1" + std::string(body.size() - dot - 1, '0');
        Rational r{detail::decimal_integer(digits), detail::decimal_integer(denom)};
        return negative ? Rational(-r) : r;
    }

    auto valid = [](const std::string& part) {
        std::size_t start = (!part.empty() && part.front() == '-') ? 1 : 0;
        return part.size() > start && part.find_first_not_of("0123456789", start) == std::string::npos;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid(num) || !valid(den) || den.front() == '-')
        throw ValidationError("bad rational literal '" + s + "'");
    Integer d = detail::decimal_integer(den);
    if (d == 0) throw ValidationError("zero denominator in '" + s + "'");
    return Rational(detail::decimal_integer(num), d);
}

inline std::string to_string(const Rational& r) { return r.str(); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// r^e for a nonnegative integer exponent; 0^0 = 1.
inline Rational pow_nonneg(const Rational& r, unsigned e) {
    Rational out = 1;
    Rational base = r;
    while (e) {
        if (e & 1u) out *= base;
        base *= base;
        e >>= 1u;
    }
    return out;
}

}  // namespace cmrep
