#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace fisherce {

using Rational = mpq_class;

/// Parses "3", "-3", "9/20", "0.45", ".5" or "1e-6" into an exact rational.
/// Throws InvalidInput on anything else.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q" in lowest terms, or "p" when q == 1.
std::string to_string(const Rational& q);

mpz_class floor(const Rational& q);

/// num/den in lowest terms. GMP arithmetic assumes canonical operands, so every
/// computed fraction goes through here.
inline Rational ratio(const mpz_class& num, const mpz_class& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

} // namespace fisherce
