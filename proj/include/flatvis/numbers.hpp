// Exact arbitrary-precision integers and rationals (GMP-backed).
#pragma once

#include <gmpxx.h>
#include <string>

namespace flatvis {

using BigInt = mpz_class;    // grid coordinate, unbounded magnitude
using Rational = mpq_class;  // exact fraction; GMP keeps it canonical

inline Rational make_rational(const BigInt &num, const BigInt &den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational to_rational(const BigInt &v) { return Rational(v); }

// Exact floor of a rational.
inline BigInt rat_floor(const Rational &x) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

// floor(x) + 1; the smallest integer strictly greater than x.
inline BigInt floor_plus_one(const Rational &x) { return rat_floor(x) + 1; }

inline bool is_integral(const Rational &x) { return x.get_den() == 1; }

inline std::string to_string(const BigInt &v) { return v.get_str(); }
inline std::string to_string(const Rational &v) { return v.get_str(); }

// Parses a decimal integer string; throws std::invalid_argument on junk.
inline BigInt parse_bigint(const std::string &s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    BigInt v;
    if (mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0)
        throw std::invalid_argument("bad integer literal: " + s);
    return v;
}

} // namespace flatvis
