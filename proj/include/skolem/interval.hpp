#pragma once

#include <mpfr.h>

#include <optional>
#include <string>

#include "skolem/rational.hpp"

namespace skolem {

// Closed real interval with MPFR endpoints and outward rounding. Binary operations work
// at the larger of the operand precisions.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 64);
  Interval(const Rational& q, mpfr_prec_t prec);
  Interval(long v, mpfr_prec_t prec);
  Interval(const Interval& o);
  Interval(Interval&& o) noexcept;
  Interval& operator=(const Interval& o);
  Interval& operator=(Interval&& o) noexcept;
  ~Interval();

  static Interval from_bounds(const Rational& lo, const Rational& hi, mpfr_prec_t prec);
  static Interval whole(mpfr_prec_t prec);
  static Interval pi(mpfr_prec_t prec);

  mpfr_prec_t prec() const { return mpfr_get_prec(lo_); }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }
  mpfr_ptr lo_mut() { return lo_; }
  mpfr_ptr hi_mut() { return hi_; }

  bool finite() const { return mpfr_number_p(lo_) && mpfr_number_p(hi_); }
  Rational lower() const;
  Rational upper() const;
  Rational mid() const;
  Rational width() const;  // exact hi - lo; throws if unbounded
  double lo_d() const;
  double hi_d() const;
  double mid_d() const;

  bool contains_zero() const;
  bool contains(const Rational& q) const;
  bool positive() const;  // lo > 0
  bool negative() const;  // hi < 0
  std::optional<int> sign() const;
  bool subset_of(const Interval& o) const;
  Rational mag() const;  // upper bound on |x|
  Rational mig() const;  // lower bound on |x|

  Interval operator-() const;
  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  Interval& operator+=(const Interval& b) { return *this = *this + b; }
  Interval& operator-=(const Interval& b) { return *this = *this - b; }
  Interval& operator*=(const Interval& b) { return *this = *this * b; }

  std::string str() const;

 private:
  mpfr_t lo_, hi_;
};

Interval hull(const Interval& a, const Interval& b);
Interval sqr(const Interval& a);
Interval abs(const Interval& a);
Interval pow(const Interval& a, unsigned n);
Interval exp(const Interval& a);
Interval log(const Interval& a);
Interval sqrt(const Interval& a);
Interval sin(const Interval& a);
Interval cos(const Interval& a);
Interval acos(const Interval& a);
Interval set_prec(const Interval& a, mpfr_prec_t prec);

// Rectangle in the complex plane.
struct CInterval {
  Interval re, im;
  CInterval() = default;
  explicit CInterval(mpfr_prec_t prec) : re(prec), im(prec) {}
  CInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}
  mpfr_prec_t prec() const { return re.prec() > im.prec() ? re.prec() : im.prec(); }
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
};

CInterval operator+(const CInterval& a, const CInterval& b);
CInterval operator-(const CInterval& a, const CInterval& b);
CInterval operator-(const CInterval& a);
CInterval operator*(const CInterval& a, const CInterval& b);
CInterval operator*(const Interval& a, const CInterval& b);
CInterval operator/(const CInterval& a, const CInterval& b);
CInterval conj(const CInterval& a);
CInterval exp(const CInterval& a);
Interval abs(const CInterval& a);
Interval abs2(const CInterval& a);
// Principal argument in (-pi, pi]; the whole [-pi, pi] when the rectangle meets the cut.
Interval arg(const CInterval& a);
CInterval cpow(const CInterval& a, unsigned n);

}  // namespace skolem
