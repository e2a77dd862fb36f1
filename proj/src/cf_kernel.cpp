#include "skolem/hardness.hpp"

#ifdef SKOLEM_POISON_FLOAT
#pragma GCC poison float double
#endif

namespace skolem {

bool cf_kernel_float_free() {
#ifdef SKOLEM_POISON_FLOAT
  return true;
#else
  return false;
#endif
}

Integer floor_exact(const FieldElement& x) {
  if (x.is_rational()) return floor_q(x.rational_value());
  // bracket lo <= x < hi by doubling, then bisect
  Integer lo(-1), hi(1);
  while (sign(x - FieldElement(Rational(lo))) < 0) lo *= 2;
  while (sign(x - FieldElement(Rational(hi))) >= 0) hi *= 2;
  while (hi - lo > 1) {
    Integer mid = lo + (hi - lo) / 2;
    if (sign(x - FieldElement(Rational(mid))) >= 0)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

CFExpansion cf_expand(const FieldElement& a, int k) {
  if (k < 1) throw InvalidInput("cf_expand needs k >= 1");
  if (!a.is_real()) throw NotRealElement("continued fraction of a non-real number");
  CFExpansion cf;
  cf.a = a;
  Integer p_prev(1), q_prev(0), p_prev2(0), q_prev2(1);
  FieldElement x = a;
  for (int i = 0; i < k; ++i) {
    Integer n = floor_exact(x);
    cf.quotients.push_back(n);
    Integer p = n * p_prev + p_prev2, q = n * q_prev + q_prev2;
    cf.convergents.push_back(Rational(p, q));
    cf.convergents.back().canonicalize();
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = p;
    q_prev = q;
    FieldElement frac = x - FieldElement(Rational(n));
    if (frac.is_zero()) {
      cf.terminated = true;
      break;
    }
    x = frac.inverse();
  }
  return cf;
}

}  // namespace skolem
