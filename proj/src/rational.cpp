#include "skolem/rational.hpp"

#include <cctype>

namespace skolem {

Rational parse_rational(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  if (text.empty()) throw ParseError("empty rational literal");

  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Integer num, den;
    if (num.set_str(text.substr(0, slash), 10) != 0 || den.set_str(text.substr(slash + 1), 10) != 0)
      throw ParseError("malformed rational literal '" + raw + "'");
    if (den == 0) throw ParseError("zero denominator in '" + raw + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  std::string mant = text;
  long exp10 = 0;
  auto epos = text.find_first_of("eE");
  if (epos != std::string::npos) {
    mant = text.substr(0, epos);
    try {
      std::size_t used = 0;
      exp10 = std::stol(text.substr(epos + 1), &used);
      if (used != text.size() - epos - 1) throw ParseError("bad exponent");
    } catch (const std::exception&) {
      throw ParseError("malformed exponent in '" + raw + "'");
    }
  }
  bool neg = false;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    neg = mant[0] == '-';
    mant = mant.substr(1);
  }
  auto dot = mant.find('.');
  std::string digits = mant;
  if (dot != std::string::npos) {
    digits = mant.substr(0, dot) + mant.substr(dot + 1);
    exp10 -= static_cast<long>(mant.size() - dot - 1);
  }
  if (digits.empty()) throw ParseError("malformed number '" + raw + "'");
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("malformed number '" + raw + "'");
  Integer n(digits, 10);
  if (neg) n = -n;
  Integer p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  Rational q = exp10 >= 0 ? Rational(n * p10) : Rational(n, p10);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

Integer floor_q(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_q(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational abs_q(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Rational pow_q(const Rational& q, unsigned long e) {
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), q.get_den_mpz_t(), e);
  return Rational(n, d);
}

Rational pow2_q(long e) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  return e >= 0 ? Rational(p) : Rational(Integer(1), p);
}

Integer lcm_z(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer gcd_z(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

int sign_q(const Rational& q) { return sgn(q); }

Rational rational_from_mpfr(const mpfr_t x) {
  if (!mpfr_number_p(x)) throw std::domain_error("non-finite MPFR value has no rational form");
  if (mpfr_zero_p(x)) return Rational(0);
  Integer m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  Rational q(m);
  q *= pow2_q(e);
  q.canonicalize();
  return q;
}

Rational simplest_between(const Rational& lo_in, const Rational& hi_in) {
  Rational lo = lo_in, hi = hi_in;
  if (lo > hi) std::swap(lo, hi);
  if (lo <= 0 && hi >= 0) return Rational(0);
  if (hi < 0) return -simplest_between(-hi, -lo);
  // Continued-fraction walk for 0 < lo <= hi.
  std::vector<Integer> cf;
  Rational a = lo, b = hi;
  for (int guard = 0; guard < 4096; ++guard) {
    Integer fa = floor_q(a);
    if (Rational(fa) == a) {
      cf.push_back(fa);
      break;
    }
    if (Rational(fa + 1) <= b) {
      cf.push_back(fa + 1);
      break;
    }
    cf.push_back(fa);
    Rational na = 1 / (b - fa), nb = 1 / (a - fa);
    a = na;
    b = nb;
  }
  Rational r(cf.back());
  for (auto it = cf.rbegin() + 1; it != cf.rend(); ++it) r = Rational(*it) + 1 / r;
  r.canonicalize();
  return r;
}

}  // namespace skolem
