#pragma once

#include <memory>
#include <mutex>

#include "skolem/errors.hpp"
#include "skolem/qpoly.hpp"

namespace skolem {

struct Box {
  Rational re_lo, re_hi, im_lo, im_hi;
};

// User-facing algebraic number: a square-free rational polynomial and a closed rational
// rectangle that holds exactly one of its roots.
struct AlgebraicInput {
  QPoly minpoly;
  Box box;
};

// A validated algebraic number with its irreducible (primitive integer) minimal polynomial.
class AlgebraicNumber {
 public:
  AlgebraicNumber();  // zero
  static AlgebraicNumber from_input(const AlgebraicInput& in);
  static AlgebraicNumber rational(const Rational& q);
  // iso must isolate a root of the irreducible polynomial p.
  static AlgebraicNumber real_root(const QPoly& p, const RealRootInterval& iso);
  static AlgebraicNumber complex_root(const QPoly& p, const RootDisc& iso);

  const QPoly& minpoly() const { return poly_; }
  int degree() const { return poly_.degree(); }
  bool is_real() const { return real_; }
  bool is_rational() const { return poly_.degree() == 1; }
  Rational rational_value() const;

  // Rectangle of width and height at most 2^-prec containing the number.
  CInterval approx(mpfr_prec_t prec) const;
  AlgebraicNumber conj() const;
  AlgebraicInput to_input() const;
  bool same_as(const AlgebraicNumber& o) const;

  const RealRootInterval& real_isolation() const { return riso_; }
  const RootDisc& disc() const { return ciso_; }

 private:
  struct Cache {
    std::mutex mu;
    Rational re, im, rad;  // best certified disc so far (rad = half width for real roots)
    bool have = false;
  };
  QPoly poly_;
  bool real_ = true;
  RealRootInterval riso_;
  RootDisc ciso_;
  std::shared_ptr<Cache> cache_;
};

// Exact test: does the closed box contain the isolated root?
bool box_contains(const Box& b, const AlgebraicNumber& a);

}  // namespace skolem
