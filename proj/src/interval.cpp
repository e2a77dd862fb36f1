#include "skolem/interval.hpp"

#include <algorithm>
#include <sstream>

namespace skolem {

namespace {

mpfr_prec_t pmax(const Interval& a, const Interval& b) { return std::max(a.prec(), b.prec()); }

void set_whole(Interval& r) {
  mpfr_set_inf(r.lo_mut(), -1);
  mpfr_set_inf(r.hi_mut(), 1);
}

}  // namespace

Interval::Interval(mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Rational& q, mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(long v, mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_si(lo_, v, MPFR_RNDD);
  mpfr_set_si(hi_, v, MPFR_RNDU);
}

Interval::Interval(const Interval& o) {
  mpfr_init2(lo_, o.prec());
  mpfr_init2(hi_, o.prec());
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept {
  mpfr_init2(lo_, MPFR_PREC_MIN);
  mpfr_init2(hi_, MPFR_PREC_MIN);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(const Interval& o) {
  if (this != &o) {
    mpfr_set_prec(lo_, o.prec());
    mpfr_set_prec(hi_, o.prec());
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::from_bounds(const Rational& lo, const Rational& hi, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::whole(mpfr_prec_t prec) {
  Interval r(prec);
  set_whole(r);
  return r;
}

Interval Interval::pi(mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

Rational Interval::lower() const { return rational_from_mpfr(lo_); }
Rational Interval::upper() const { return rational_from_mpfr(hi_); }
Rational Interval::mid() const { return (lower() + upper()) / 2; }
Rational Interval::width() const { return upper() - lower(); }
double Interval::lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
double Interval::mid_d() const { return 0.5 * (lo_d() + hi_d()); }

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

bool Interval::contains(const Rational& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool Interval::positive() const { return mpfr_sgn(lo_) > 0; }
bool Interval::negative() const { return mpfr_sgn(hi_) < 0; }

std::optional<int> Interval::sign() const {
  if (positive()) return 1;
  if (negative()) return -1;
  if (mpfr_zero_p(lo_) && mpfr_zero_p(hi_)) return 0;
  return std::nullopt;
}

bool Interval::subset_of(const Interval& o) const {
  return mpfr_cmp(o.lo_, lo_) <= 0 && mpfr_cmp(hi_, o.hi_) <= 0;
}

Rational Interval::mag() const {
  Rational a = abs_q(lower()), b = abs_q(upper());
  return a > b ? a : b;
}

Rational Interval::mig() const {
  if (contains_zero()) return Rational(0);
  Rational a = abs_q(lower()), b = abs_q(upper());
  return a < b ? a : b;
}

Interval Interval::operator-() const {
  Interval r(prec());
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(pmax(a, b));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  if (mpfr_nan_p(r.lo_) || mpfr_nan_p(r.hi_)) set_whole(r);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(pmax(a, b));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  if (mpfr_nan_p(r.lo_) || mpfr_nan_p(r.hi_)) set_whole(r);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  mpfr_prec_t p = pmax(a, b);
  Interval r(p);
  if (!a.finite() || !b.finite()) {
    set_whole(r);
    return r;
  }
  mpfr_t t;
  mpfr_init2(t, p);
  mpfr_srcptr as[2] = {a.lo_, a.hi_};
  mpfr_srcptr bs[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto x : as)
    for (auto y : bs) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  mpfr_prec_t p = pmax(a, b);
  Interval r(p);
  if (b.contains_zero() || !a.finite() || !b.finite()) {
    set_whole(r);
    return r;
  }
  mpfr_t t;
  mpfr_init2(t, p);
  mpfr_srcptr as[2] = {a.lo_, a.hi_};
  mpfr_srcptr bs[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto x : as)
    for (auto y : bs) {
      mpfr_div(t, x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_div(t, x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

std::string Interval::str() const {
  std::ostringstream os;
  os << "[" << lo_d() << ", " << hi_d() << "]";
  return os.str();
}

Interval hull(const Interval& a, const Interval& b) {
  Interval r(pmax(a, b));
  mpfr_min(r.lo_mut(), a.lo(), b.lo(), MPFR_RNDD);
  mpfr_max(r.hi_mut(), a.hi(), b.hi(), MPFR_RNDU);
  return r;
}

Interval sqr(const Interval& a) {
  Interval r = abs(a);
  Interval out(a.prec());
  mpfr_sqr(out.lo_mut(), r.lo(), MPFR_RNDD);
  mpfr_sqr(out.hi_mut(), r.hi(), MPFR_RNDU);
  return out;
}

Interval abs(const Interval& a) {
  if (mpfr_sgn(a.lo()) >= 0) return a;
  if (mpfr_sgn(a.hi()) <= 0) return -a;
  Interval r(a.prec());
  mpfr_set_zero(r.lo_mut(), 1);
  mpfr_t t;
  mpfr_init2(t, a.prec());
  mpfr_neg(t, a.lo(), MPFR_RNDU);
  mpfr_max(r.hi_mut(), t, a.hi(), MPFR_RNDU);
  mpfr_clear(t);
  return r;
}

Interval pow(const Interval& a, unsigned n) {
  Interval r(1L, a.prec());
  Interval base = a;
  while (n) {
    if (n & 1u) r = r * base;
    n >>= 1u;
    if (n) base = (mpfr_sgn(base.lo()) >= 0 || mpfr_sgn(base.hi()) <= 0) ? base * base : sqr(base);
  }
  return r;
}

Interval exp(const Interval& a) {
  Interval r(a.prec());
  mpfr_exp(r.lo_mut(), a.lo(), MPFR_RNDD);
  mpfr_exp(r.hi_mut(), a.hi(), MPFR_RNDU);
  return r;
}

Interval log(const Interval& a) {
  if (mpfr_sgn(a.lo()) <= 0) throw std::domain_error("log of an interval that is not positive");
  Interval r(a.prec());
  mpfr_log(r.lo_mut(), a.lo(), MPFR_RNDD);
  mpfr_log(r.hi_mut(), a.hi(), MPFR_RNDU);
  return r;
}

Interval sqrt(const Interval& a) {
  Interval r(a.prec());
  if (mpfr_sgn(a.hi()) < 0) throw std::domain_error("sqrt of a negative interval");
  if (mpfr_sgn(a.lo()) <= 0)
    mpfr_set_zero(r.lo_mut(), 1);
  else
    mpfr_sqrt(r.lo_mut(), a.lo(), MPFR_RNDD);
  mpfr_sqrt(r.hi_mut(), a.hi(), MPFR_RNDU);
  return r;
}

namespace {

// Enclosure of sin or cos via |g(x) - g(m)| <= |x - m|, clipped to [-1, 1].
Interval trig_ball(const Interval& a, bool is_sin) {
  mpfr_prec_t p = a.prec();
  Interval r(p);
  if (!a.finite()) {
    mpfr_set_si(r.lo_mut(), -1, MPFR_RNDD);
    mpfr_set_si(r.hi_mut(), 1, MPFR_RNDU);
    return r;
  }
  mpfr_t m, rad, t, v;
  mpfr_inits2(p + 8, m, rad, t, v, static_cast<mpfr_ptr>(nullptr));
  mpfr_add(m, a.lo(), a.hi(), MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  mpfr_sub(rad, a.hi(), m, MPFR_RNDU);
  mpfr_sub(t, m, a.lo(), MPFR_RNDU);
  mpfr_max(rad, rad, t, MPFR_RNDU);
  if (mpfr_cmp_ui(rad, 2) > 0) {
    mpfr_set_si(r.lo_mut(), -1, MPFR_RNDD);
    mpfr_set_si(r.hi_mut(), 1, MPFR_RNDU);
  } else {
    if (is_sin)
      mpfr_sin(v, m, MPFR_RNDD);
    else
      mpfr_cos(v, m, MPFR_RNDD);
    mpfr_sub(r.lo_mut(), v, rad, MPFR_RNDD);
    if (is_sin)
      mpfr_sin(v, m, MPFR_RNDU);
    else
      mpfr_cos(v, m, MPFR_RNDU);
    mpfr_add(r.hi_mut(), v, rad, MPFR_RNDU);
    if (mpfr_cmp_si(r.lo(), -1) < 0) mpfr_set_si(r.lo_mut(), -1, MPFR_RNDD);
    if (mpfr_cmp_si(r.hi(), 1) > 0) mpfr_set_si(r.hi_mut(), 1, MPFR_RNDU);
  }
  mpfr_clears(m, rad, t, v, static_cast<mpfr_ptr>(nullptr));
  return r;
}

}  // namespace

Interval sin(const Interval& a) { return trig_ball(a, true); }
Interval cos(const Interval& a) { return trig_ball(a, false); }

Interval acos(const Interval& a) {
  Interval r(a.prec());
  mpfr_t lo, hi;
  mpfr_inits2(a.prec(), lo, hi, static_cast<mpfr_ptr>(nullptr));
  mpfr_set(lo, a.lo(), MPFR_RNDD);
  mpfr_set(hi, a.hi(), MPFR_RNDU);
  if (mpfr_cmp_si(lo, -1) < 0) mpfr_set_si(lo, -1, MPFR_RNDD);
  if (mpfr_cmp_si(hi, 1) > 0) mpfr_set_si(hi, 1, MPFR_RNDU);
  mpfr_acos(r.lo_mut(), hi, MPFR_RNDD);
  mpfr_acos(r.hi_mut(), lo, MPFR_RNDU);
  mpfr_clears(lo, hi, static_cast<mpfr_ptr>(nullptr));
  return r;
}

Interval set_prec(const Interval& a, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set(r.lo_mut(), a.lo(), MPFR_RNDD);
  mpfr_set(r.hi_mut(), a.hi(), MPFR_RNDU);
  return r;
}

CInterval operator+(const CInterval& a, const CInterval& b) { return {a.re + b.re, a.im + b.im}; }
CInterval operator-(const CInterval& a, const CInterval& b) { return {a.re - b.re, a.im - b.im}; }
CInterval operator-(const CInterval& a) { return {-a.re, -a.im}; }

CInterval operator*(const CInterval& a, const CInterval& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

CInterval operator*(const Interval& a, const CInterval& b) { return {a * b.re, a * b.im}; }

CInterval operator/(const CInterval& a, const CInterval& b) {
  Interval d = sqr(b.re) + sqr(b.im);
  CInterval n = a * conj(b);
  return {n.re / d, n.im / d};
}

CInterval conj(const CInterval& a) { return {a.re, -a.im}; }

CInterval exp(const CInterval& a) {
  Interval m = exp(a.re);
  return {m * cos(a.im), m * sin(a.im)};
}

Interval abs2(const CInterval& a) { return sqr(a.re) + sqr(a.im); }
Interval abs(const CInterval& a) { return sqrt(abs2(a)); }

Interval arg(const CInterval& a) {
  mpfr_prec_t p = a.prec();
  Interval pi = Interval::pi(p);
  const Interval& x = a.re;
  const Interval& y = a.im;
  bool cut = y.contains_zero() && mpfr_sgn(x.lo()) <= 0;
  if (cut || !x.finite() || !y.finite()) return hull(-pi, pi);
  Interval r(p);
  mpfr_t t;
  mpfr_init2(t, p);
  mpfr_srcptr xs[2] = {x.lo(), x.hi()};
  mpfr_srcptr ys[2] = {y.lo(), y.hi()};
  bool first = true;
  for (auto yy : ys)
    for (auto xx : xs) {
      mpfr_atan2(t, yy, xx, MPFR_RNDD);
      if (first || mpfr_cmp(t, r.lo()) < 0) mpfr_set(r.lo_mut(), t, MPFR_RNDD);
      mpfr_atan2(t, yy, xx, MPFR_RNDU);
      if (first || mpfr_cmp(t, r.hi()) > 0) mpfr_set(r.hi_mut(), t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

CInterval cpow(const CInterval& a, unsigned n) {
  CInterval r(Interval(1L, a.prec()), Interval(a.prec()));
  CInterval base = a;
  while (n) {
    if (n & 1u) r = r * base;
    n >>= 1u;
    if (n) base = base * base;
  }
  return r;
}

}  // namespace skolem
