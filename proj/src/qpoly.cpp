#include "skolem/qpoly.hpp"

#include <cmath>
#include <functional>

namespace skolem {

QPoly qpoly(std::initializer_list<long> coeffs) {
  std::vector<Rational> c;
  for (long v : coeffs) c.emplace_back(v);
  return QPoly(std::move(c));
}

ZVec primitive_integer(const QPoly& p) {
  if (p.is_zero_poly()) return {};
  Integer den = 1;
  for (const auto& q : p.c) den = lcm_z(den, q.get_den());
  ZVec z;
  Integer g = 0;
  for (const auto& q : p.c) {
    Integer v = q.get_num() * (den / q.get_den());
    g = gcd_z(g, v);
    z.push_back(v);
  }
  if (p.lc() < 0) g = -g;
  for (auto& v : z) v /= g;
  return z;
}

QPoly from_integer(const ZVec& z) {
  std::vector<Rational> c;
  for (const auto& v : z) c.emplace_back(v);
  return QPoly(std::move(c));
}

QPoly primitive_part(const QPoly& p) { return from_integer(primitive_integer(p)); }

Interval eval(const QPoly& p, const Interval& x) {
  Interval acc(x.prec());
  for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) acc = acc * x + Interval(*it, x.prec());
  return acc;
}

CInterval eval(const QPoly& p, const CInterval& x) {
  CInterval acc(x.prec());
  for (auto it = p.c.rbegin(); it != p.c.rend(); ++it)
    acc = acc * x + CInterval(Interval(*it, x.prec()), Interval(x.prec()));
  return acc;
}

int sign_at(const QPoly& p, const Rational& x) { return sgn(p.eval(x)); }

Rational root_bound(const QPoly& p) {
  // Cauchy: 1 + max |a_i / a_n|, rounded up to a power of two.
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) {
    Rational r = abs_q(p.c[static_cast<std::size_t>(i)] / p.lc());
    if (r > m) m = r;
  }
  Rational b = 1 + m;
  Rational pw = 1;
  while (pw < b) pw *= 2;
  return pw;
}

long log2_root_separation(const QPoly& p) {
  ZVec z = primitive_integer(p);
  long n = static_cast<long>(z.size()) - 1;
  if (n < 2) return 0;
  Integer norm2 = 0;
  for (auto& v : z) norm2 += v * v;
  double lg_norm = 0.5 * static_cast<double>(mpz_sizeinbase(norm2.get_mpz_t(), 2));
  double lg = 0.5 * std::log2(3.0) - 0.5 * static_cast<double>(n + 2) * std::log2(static_cast<double>(n)) -
              static_cast<double>(n - 1) * lg_norm;
  return static_cast<long>(std::floor(lg)) - 2;
}

// ---------------------------------------------------------------- real roots

namespace {

int variations(const ZVec& a) {
  int v = 0, last = 0;
  for (const auto& x : a) {
    int s = sgn(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

ZVec ztaylor1(ZVec a) {
  // a(x + 1)
  std::size_t n = a.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) a[j - 1] += a[j];
  return a;
}

struct DescartesOut {
  std::vector<std::pair<Integer, unsigned long>> open;   // (c, k): (c/2^k, (c+1)/2^k)
  std::vector<std::pair<Integer, unsigned long>> exact;  // c/2^k
};

void descartes(ZVec q, const Integer& c, unsigned long k, DescartesOut& out) {
  ZVec rev(q.rbegin(), q.rend());
  int v = variations(ztaylor1(rev));
  if (v == 0) return;
  if (v == 1) {
    out.open.emplace_back(c, k);
    return;
  }
  std::size_t n = q.size() - 1;
  ZVec q1(q.size());
  for (std::size_t i = 0; i <= n; ++i) q1[i] = q[i] << static_cast<mp_bitcnt_t>(n - i);
  Integer at1 = 0;
  for (auto& x : q1) at1 += x;
  if (at1 == 0) {
    out.exact.emplace_back(2 * c + 1, k + 1);
    // divide by (x - 1)
    ZVec d(n);
    Integer carry = 0;
    for (std::size_t i = n; i-- > 0;) {
      carry += q1[i + 1];
      d[i] = carry;
    }
    q1 = d;
  }
  descartes(q1, 2 * c, k + 1, out);
  descartes(ztaylor1(q1), 2 * c + 1, k + 1, out);
}

std::vector<RealRootInterval> positive_roots(const ZVec& z, const Rational& B) {
  // roots of z in (0, B): q(x) = z(B x) on (0, 1)
  std::size_t n = z.size() - 1;
  ZVec q(z.size());
  Integer b = B.get_num();  // B is a power of two >= 1
  Integer pw = 1;
  for (std::size_t i = 0; i <= n; ++i) {
    q[i] = z[i] * pw;
    pw *= b;
  }
  DescartesOut out;
  descartes(q, 0, 0, out);
  std::vector<RealRootInterval> r;
  for (auto& [c, k] : out.open) {
    Rational lo = B * Rational(c) / pow2_q(static_cast<long>(k));
    Rational hi = B * Rational(c + 1) / pow2_q(static_cast<long>(k));
    r.push_back({lo, hi});
  }
  for (auto& [c, k] : out.exact) {
    Rational x = B * Rational(c) / pow2_q(static_cast<long>(k));
    r.push_back({x, x});
  }
  return r;
}

int effective_sign_lo(const QPoly& p, const QPoly& dp, const Rational& x) {
  int s = sign_at(p, x);
  return s != 0 ? s : sign_at(dp, x);
}

int effective_sign_hi(const QPoly& p, const QPoly& dp, const Rational& x) {
  int s = sign_at(p, x);
  return s != 0 ? s : -sign_at(dp, x);
}

// Shrink so that neither endpoint is a root; may discover the root exactly.
void clean_endpoints(const QPoly& p, RealRootInterval& r) {
  if (r.exact()) return;
  QPoly dp = p.derivative();
  int slo = effective_sign_lo(p, dp, r.lo);
  int shi = effective_sign_hi(p, dp, r.hi);
  (void)shi;
  while (sign_at(p, r.lo) == 0 || sign_at(p, r.hi) == 0) {
    Rational m = (r.lo + r.hi) / 2;
    int sm = sign_at(p, m);
    if (sm == 0) {
      r.lo = r.hi = m;
      return;
    }
    if (sm == slo)
      r.lo = m;
    else
      r.hi = m;
  }
}

}  // namespace

std::vector<RealRootInterval> isolate_real_roots(const QPoly& p_in) {
  if (p_in.degree() <= 0) return {};
  QPoly p = squarefree_part(p_in);
  ZVec z = primitive_integer(p);
  std::vector<RealRootInterval> roots;
  if (z[0] == 0) {
    roots.push_back({Rational(0), Rational(0)});
    z.erase(z.begin());
  }
  if (z.size() > 1) {
    Rational B = root_bound(from_integer(z));
    for (auto& r : positive_roots(z, B)) roots.push_back(r);
    ZVec zn = z;
    for (std::size_t i = 1; i < zn.size(); i += 2) zn[i] = -zn[i];
    for (auto& r : positive_roots(zn, B)) roots.push_back({-r.hi, -r.lo});
  }
  for (auto& r : roots) clean_endpoints(p, r);
  std::sort(roots.begin(), roots.end(), [](const RealRootInterval& a, const RealRootInterval& b) { return a.lo < b.lo; });
  return roots;
}

void refine_real_root(const QPoly& p, RealRootInterval& r, const Rational& width) {
  if (r.exact()) return;
  int slo = sign_at(p, r.lo);
  while (r.hi - r.lo > width) {
    Rational m = (r.lo + r.hi) / 2;
    int sm = sign_at(p, m);
    if (sm == 0) {
      r.lo = r.hi = m;
      return;
    }
    if (sm == slo)
      r.lo = m;
    else
      r.hi = m;
  }
}

std::vector<RealRootInterval> real_roots_in(const QPoly& p_in, const Rational& a, const Rational& b) {
  std::vector<RealRootInterval> out;
  if (p_in.degree() <= 0) return out;
  QPoly p = squarefree_part(p_in);
  for (auto r : isolate_real_roots(p)) {
    if (r.exact()) {
      if (r.lo >= a && r.lo <= b) out.push_back(r);
      continue;
    }
    // Shrink until the isolating interval is clear of the endpoints a, b.
    while (true) {
      if (r.exact()) {
        if (r.lo >= a && r.lo <= b) out.push_back(r);
        break;
      }
      if (r.hi <= a || r.lo >= b) break;
      if (r.lo >= a && r.hi <= b) {
        out.push_back(r);
        break;
      }
      // a or b lies inside (lo, hi); an endpoint may itself be the root.
      if (r.lo < a && a < r.hi && sign_at(p, a) == 0) {
        out.push_back({a, a});
        break;
      }
      if (r.lo < b && b < r.hi && sign_at(p, b) == 0) {
        out.push_back({b, b});
        break;
      }
      refine_real_root(p, r, (r.hi - r.lo) / 2);
    }
  }
  return out;
}

// ---------------------------------------------------------------- Sturm

std::vector<QPoly> sturm_sequence(const QPoly& p) {
  std::vector<QPoly> s{p, p.derivative()};
  while (!s.back().is_zero_poly()) {
    QPoly r = s[s.size() - 2] % s.back();
    if (r.is_zero_poly()) break;
    s.push_back(-r);
  }
  return s;
}

namespace {
int sturm_var(const std::vector<QPoly>& seq, const Rational& x) {
  int v = 0, last = 0;
  for (const auto& q : seq) {
    int s = sign_at(q, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}
}  // namespace

int sturm_count(const std::vector<QPoly>& seq, const Rational& a, const Rational& b) {
  return sturm_var(seq, a) - sturm_var(seq, b);
}

// ---------------------------------------------------------------- complex roots

namespace {

struct BigC {
  mpfr_t re, im;
  explicit BigC(mpfr_prec_t p) {
    mpfr_init2(re, p);
    mpfr_init2(im, p);
    mpfr_set_zero(re, 1);
    mpfr_set_zero(im, 1);
  }
  BigC(const BigC& o) {
    mpfr_init2(re, mpfr_get_prec(o.re));
    mpfr_init2(im, mpfr_get_prec(o.im));
    mpfr_set(re, o.re, MPFR_RNDN);
    mpfr_set(im, o.im, MPFR_RNDN);
  }
  BigC& operator=(const BigC& o) {
    if (this != &o) {
      mpfr_set_prec(re, mpfr_get_prec(o.re));
      mpfr_set_prec(im, mpfr_get_prec(o.im));
      mpfr_set(re, o.re, MPFR_RNDN);
      mpfr_set(im, o.im, MPFR_RNDN);
    }
    return *this;
  }
  ~BigC() {
    mpfr_clear(re);
    mpfr_clear(im);
  }
  void set_prec(mpfr_prec_t p) {
    mpfr_prec_round(re, p, MPFR_RNDN);
    mpfr_prec_round(im, p, MPFR_RNDN);
  }
};

void cmul(BigC& r, const BigC& a, const BigC& b, mpfr_t t1, mpfr_t t2) {
  mpfr_mul(t1, a.re, b.re, MPFR_RNDN);
  mpfr_mul(t2, a.im, b.im, MPFR_RNDN);
  mpfr_t t3;
  mpfr_init2(t3, mpfr_get_prec(t1));
  mpfr_mul(t3, a.re, b.im, MPFR_RNDN);
  mpfr_fma(t3, a.im, b.re, t3, MPFR_RNDN);
  mpfr_sub(r.re, t1, t2, MPFR_RNDN);
  mpfr_set(r.im, t3, MPFR_RNDN);
  mpfr_clear(t3);
}

void cdiv(BigC& r, const BigC& a, const BigC& b, mpfr_prec_t p) {
  mpfr_t d, x, y, t;
  mpfr_inits2(p, d, x, y, t, static_cast<mpfr_ptr>(nullptr));
  mpfr_sqr(d, b.re, MPFR_RNDN);
  mpfr_sqr(t, b.im, MPFR_RNDN);
  mpfr_add(d, d, t, MPFR_RNDN);
  mpfr_mul(x, a.re, b.re, MPFR_RNDN);
  mpfr_mul(t, a.im, b.im, MPFR_RNDN);
  mpfr_add(x, x, t, MPFR_RNDN);
  mpfr_mul(y, a.im, b.re, MPFR_RNDN);
  mpfr_mul(t, a.re, b.im, MPFR_RNDN);
  mpfr_sub(y, y, t, MPFR_RNDN);
  mpfr_div(r.re, x, d, MPFR_RNDN);
  mpfr_div(r.im, y, d, MPFR_RNDN);
  mpfr_clears(d, x, y, t, static_cast<mpfr_ptr>(nullptr));
}

// p(z) and p'(z) by Horner.
void horner2(const std::vector<mpfr_ptr>& coef, const BigC& z, BigC& v, BigC& dv, mpfr_prec_t p) {
  BigC acc(p), dacc(p), tmp(p);
  mpfr_t t1, t2;
  mpfr_inits2(p, t1, t2, static_cast<mpfr_ptr>(nullptr));
  for (std::size_t i = coef.size(); i-- > 0;) {
    cmul(tmp, dacc, z, t1, t2);
    mpfr_add(dacc.re, tmp.re, acc.re, MPFR_RNDN);
    mpfr_set(dacc.im, tmp.im, MPFR_RNDN);
    mpfr_add(dacc.im, dacc.im, acc.im, MPFR_RNDN);
    cmul(tmp, acc, z, t1, t2);
    mpfr_add(acc.re, tmp.re, coef[i], MPFR_RNDN);
    mpfr_set(acc.im, tmp.im, MPFR_RNDN);
  }
  // dacc accumulated one extra step: it equals p'(z) computed as sum over the
  // Horner recurrence d_{k} = d_{k+1} z + a_{k+1}
  v = acc;
  dv = dacc;
  mpfr_clears(t1, t2, static_cast<mpfr_ptr>(nullptr));
}

CInterval to_cinterval(const BigC& z, mpfr_prec_t p) {
  Interval re(p), im(p);
  mpfr_set(re.lo_mut(), z.re, MPFR_RNDD);
  mpfr_set(re.hi_mut(), z.re, MPFR_RNDU);
  mpfr_set(im.lo_mut(), z.im, MPFR_RNDD);
  mpfr_set(im.hi_mut(), z.im, MPFR_RNDU);
  return {re, im};
}

}  // namespace

std::vector<RootDisc> isolate_complex_roots(const QPoly& p_in, mpfr_prec_t start_prec) {
  QPoly p = primitive_part(p_in);
  int n = p.degree();
  std::vector<RootDisc> out;
  if (n <= 0) return out;
  if (n == 1) {
    Rational r = -p.c[0] / p.c[1];
    out.push_back({r, Rational(0), Rational(0), true});
    return out;
  }
  QPoly dp = p.derivative();
  mpfr_prec_t prec = start_prec;
  std::vector<BigC> z;
  double rad0;
  {
    double a0 = std::fabs(p.c[0].get_d()), an = std::fabs(p.lc().get_d());
    rad0 = (a0 > 0 && an > 0 && std::isfinite(a0 / an)) ? std::pow(a0 / an, 1.0 / n) : 1.0;
    if (!std::isfinite(rad0) || rad0 <= 0) rad0 = 1.0;
    double bound = root_bound(p).get_d();
    if (rad0 > bound) rad0 = bound / 2;
  }
  for (int k = 0; k < n; ++k) {
    BigC c(prec);
    double ang = 2.0 * M_PI * k / n + 0.4;
    mpfr_set_d(c.re, rad0 * std::cos(ang), MPFR_RNDN);
    mpfr_set_d(c.im, rad0 * std::sin(ang), MPFR_RNDN);
    z.push_back(c);
  }
  for (int round = 0; round < 14; ++round) {
    std::vector<mpfr_ptr> coef;
    std::vector<mpfr_t> store(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) {
      mpfr_init2(store[static_cast<std::size_t>(i)], prec);
      mpfr_set_q(store[static_cast<std::size_t>(i)], p.c[static_cast<std::size_t>(i)].get_mpq_t(), MPFR_RNDN);
      coef.push_back(store[static_cast<std::size_t>(i)]);
    }
    for (auto& c : z) c.set_prec(prec);
    BigC v(prec), dv(prec), w(prec), s(prec), tmp(prec), diff(prec), one(prec);
    mpfr_set_ui(one.re, 1, MPFR_RNDN);
    mpfr_t t1, t2, mag, tol;
    mpfr_inits2(prec, t1, t2, mag, tol, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_ui(tol, 1, MPFR_RNDN);
    mpfr_div_2si(tol, tol, static_cast<long>(prec) * 3 / 4, MPFR_RNDN);
    for (int it = 0; it < 60 + 8 * n; ++it) {
      bool converged = true;
      for (int k = 0; k < n; ++k) {
        horner2(coef, z[static_cast<std::size_t>(k)], v, dv, prec);
        if (mpfr_zero_p(v.re) && mpfr_zero_p(v.im)) continue;
        cdiv(w, v, dv, prec);  // Newton correction
        mpfr_set_zero(s.re, 1);
        mpfr_set_zero(s.im, 1);
        for (int j = 0; j < n; ++j) {
          if (j == k) continue;
          mpfr_sub(diff.re, z[static_cast<std::size_t>(k)].re, z[static_cast<std::size_t>(j)].re, MPFR_RNDN);
          mpfr_sub(diff.im, z[static_cast<std::size_t>(k)].im, z[static_cast<std::size_t>(j)].im, MPFR_RNDN);
          cdiv(tmp, one, diff, prec);
          mpfr_add(s.re, s.re, tmp.re, MPFR_RNDN);
          mpfr_add(s.im, s.im, tmp.im, MPFR_RNDN);
        }
        // step = w / (1 - w s)
        cmul(tmp, w, s, t1, t2);
        mpfr_ui_sub(tmp.re, 1, tmp.re, MPFR_RNDN);
        mpfr_neg(tmp.im, tmp.im, MPFR_RNDN);
        BigC step(prec);
        cdiv(step, w, tmp, prec);
        if (!mpfr_number_p(step.re) || !mpfr_number_p(step.im)) continue;
        mpfr_sub(z[static_cast<std::size_t>(k)].re, z[static_cast<std::size_t>(k)].re, step.re, MPFR_RNDN);
        mpfr_sub(z[static_cast<std::size_t>(k)].im, z[static_cast<std::size_t>(k)].im, step.im, MPFR_RNDN);
        mpfr_hypot(mag, step.re, step.im, MPFR_RNDN);
        mpfr_hypot(t1, z[static_cast<std::size_t>(k)].re, z[static_cast<std::size_t>(k)].im, MPFR_RNDN);
        mpfr_add_ui(t1, t1, 1, MPFR_RNDN);
        mpfr_mul(t1, t1, tol, MPFR_RNDN);
        if (mpfr_cmp(mag, t1) > 0) converged = false;
      }
      if (converged) break;
    }
    mpfr_clears(t1, t2, mag, tol, static_cast<mpfr_ptr>(nullptr));
    for (auto& m : store) mpfr_clear(m);

    // Certification with Weierstrass inclusion discs.
    std::vector<CInterval> zc;
    for (auto& c : z) zc.push_back(to_cinterval(c, prec));
    std::vector<Rational> rad(static_cast<std::size_t>(n));
    bool ok = true;
    Interval lc(p.lc(), prec);
    for (int k = 0; k < n && ok; ++k) {
      CInterval den(Interval(p.lc(), prec), Interval(prec));
      for (int j = 0; j < n; ++j)
        if (j != k) den = den * (zc[static_cast<std::size_t>(k)] - zc[static_cast<std::size_t>(j)]);
      Interval dmin = abs(den);
      if (!dmin.positive()) {
        ok = false;
        break;
      }
      Interval num = abs(eval(p, zc[static_cast<std::size_t>(k)]));
      Interval r = Interval(static_cast<long>(n), prec) * num / dmin;
      if (!r.finite()) {
        ok = false;
        break;
      }
      rad[static_cast<std::size_t>(k)] = r.upper();
    }
    for (int i = 0; i < n && ok; ++i)
      for (int j = i + 1; j < n && ok; ++j) {
        Interval d = abs(zc[static_cast<std::size_t>(i)] - zc[static_cast<std::size_t>(j)]);
        if (!(d.lower() > rad[static_cast<std::size_t>(i)] + rad[static_cast<std::size_t>(j)])) ok = false;
      }
    if (ok) {
      out.clear();
      for (int k = 0; k < n; ++k)
        out.push_back({rational_from_mpfr(z[static_cast<std::size_t>(k)].re),
                       rational_from_mpfr(z[static_cast<std::size_t>(k)].im), rad[static_cast<std::size_t>(k)], false});
      // A disc meeting the real axis whose mirror image meets no other disc holds a real root.
      bool real_ok = true;
      for (int k = 0; k < n; ++k) {
        auto& d = out[static_cast<std::size_t>(k)];
        if (abs_q(d.im) > d.rad) continue;
        for (int j = 0; j < n; ++j) {
          if (j == k) continue;
          auto& e = out[static_cast<std::size_t>(j)];
          Rational dx = d.re - e.re, dy = -d.im - e.im;
          Rational rr = d.rad + e.rad;
          if (dx * dx + dy * dy <= rr * rr) real_ok = false;
        }
        d.real = true;
      }
      if (real_ok) {
        for (auto& d : out)
          if (d.real) {
            d.rad += abs_q(d.im);
            d.im = 0;
          }
        return out;
      }
    }
    prec *= 2;
  }
  throw std::runtime_error("complex root isolation did not converge");
}

}  // namespace skolem
