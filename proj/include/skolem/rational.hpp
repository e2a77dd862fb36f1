#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace skolem {

using Integer = mpz_class;
using Rational = mpq_class;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accepts "p/q", integers, and decimal/scientific literals ("0.25", "-1e-3").
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

Integer floor_q(const Rational& q);
Integer ceil_q(const Rational& q);
Rational abs_q(const Rational& q);
Rational pow_q(const Rational& q, unsigned long e);
Rational pow2_q(long e);  // 2^e for any sign of e
Integer lcm_z(const Integer& a, const Integer& b);
Integer gcd_z(const Integer& a, const Integer& b);
int sign_q(const Rational& q);

// Exact value of a finite MPFR number.
Rational rational_from_mpfr(const mpfr_t x);

// Small rational r with |r - x| <= tol, preferring short denominators (used for display
// of sample points and for picking nice rational cut points, never for decisions).
Rational simplest_between(const Rational& lo, const Rational& hi);

}  // namespace skolem
