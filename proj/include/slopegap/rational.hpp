#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace slopegap {

/// Exact rational number. All section geometry is carried out in this type.
using Rational = mpq_class;

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

/// Accepts "p", "p/q" and finite decimals such as "2.5".
Rational parse_rational(std::string_view text);

long double to_long_double(const Rational& q);

Rational floor(const Rational& q);
std::int64_t floor_int(const Rational& q);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    Rational q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    q.canonicalize();
    return q;
}

}  // namespace slopegap
