#include "skolem/algebraic.hpp"

namespace skolem {

namespace {

Rational mid_round(const Interval& a) {
  mpfr_t m;
  mpfr_init2(m, a.prec() + 2);
  mpfr_add(m, a.lo(), a.hi(), MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  Rational r = rational_from_mpfr(m);
  mpfr_clear(m);
  return r;
}

// Real Newton refinement; returns false if it could not shrink the interval.
bool newton_real(const QPoly& p, RealRootInterval& iso, mpfr_prec_t prec) {
  Rational target = pow2_q(-static_cast<long>(prec));
  if (iso.exact() || iso.hi - iso.lo <= target) return true;
  QPoly dp = p.derivative();
  mpfr_prec_t P = prec + 64;
  Rational x = (iso.lo + iso.hi) / 2;
  for (int it = 0; it < 200; ++it) {
    Interval xi(x, P);
    Interval v = eval(p, xi), dv = eval(dp, xi);
    if (dv.contains_zero()) return false;
    Rational step = mid_round(v / dv);
    x -= step;
    if (x <= iso.lo || x >= iso.hi) return false;
    if (abs_q(step) < target / 8) break;
  }
  Rational lo = x - target / 4, hi = x + target / 4;
  if (lo <= iso.lo || hi >= iso.hi) return false;
  int slo = sign_at(p, lo), shi = sign_at(p, hi);
  if (slo == 0) {
    iso = {lo, lo};
    return true;
  }
  if (shi == 0) {
    iso = {hi, hi};
    return true;
  }
  if (slo == shi) return false;
  iso = {lo, hi};
  return true;
}

void refine_real(const QPoly& p, RealRootInterval& iso, mpfr_prec_t prec) {
  Rational target = pow2_q(-static_cast<long>(prec));
  while (!iso.exact() && iso.hi - iso.lo > target) {
    if (newton_real(p, iso, prec)) continue;
    refine_real_root(p, iso, (iso.hi - iso.lo) / 256);
  }
}

bool disc_inside(const RootDisc& inner, const RootDisc& outer) {
  Rational dx = inner.re - outer.re, dy = inner.im - outer.im;
  Rational room = outer.rad - inner.rad;
  if (room < 0) return false;
  return dx * dx + dy * dy <= room * room;
}

bool newton_complex(const QPoly& p, RootDisc& d, mpfr_prec_t prec) {
  Rational target = pow2_q(-static_cast<long>(prec));
  if (d.rad <= target) return true;
  QPoly dp = p.derivative();
  mpfr_prec_t P = prec + 64;
  Rational zr = d.re, zi = d.im;
  for (int it = 0; it < 200; ++it) {
    CInterval z(Interval(zr, P), Interval(zi, P));
    CInterval v = eval(p, z), dv = eval(dp, z);
    if (dv.contains_zero()) return false;
    CInterval step = v / dv;
    Rational sr = mid_round(step.re), si = mid_round(step.im);
    zr -= sr;
    zi -= si;
    if (abs_q(sr) + abs_q(si) < target / 16) break;
  }
  CInterval z(Interval(zr, P), Interval(zi, P));
  Interval v = abs(eval(p, z));
  Interval dv = abs(eval(dp, z));
  if (!dv.positive()) return false;
  Interval R = Interval(static_cast<long>(p.degree()), P) * v / dv;
  RootDisc nd{zr, zi, R.upper(), d.real};
  if (!disc_inside(nd, d)) return false;
  if (nd.rad >= d.rad) return false;
  d = nd;
  return d.rad <= target;
}

void refine_disc(const QPoly& p, RootDisc& d, mpfr_prec_t prec) {
  Rational target = pow2_q(-static_cast<long>(prec));
  mpfr_prec_t iso_prec = 128;
  int guard = 0;
  while (d.rad > target) {
    if (++guard > 64) throw std::runtime_error("complex root refinement stalled");
    if (newton_complex(p, d, prec)) continue;
    bool found = false;
    for (const auto& e : isolate_complex_roots(p, iso_prec)) {
      if (disc_inside(e, d) && e.rad < d.rad) {
        d = {e.re, e.im, e.rad, d.real};
        found = true;
        break;
      }
    }
    if (!found) iso_prec *= 2;
  }
}

// Roots of p on the line Re z = q (vertical) or Im z = q (horizontal), parametrised by
// the other coordinate.
std::pair<QPoly, std::vector<RealRootInterval>> line_roots(const QPoly& p, bool vertical, const Rational& q) {
  QPoly zr = vertical ? QPoly::constant(q) : QPoly::x();
  QPoly zi = vertical ? QPoly::x() : QPoly::constant(q);
  QPoly R, I;
  for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) {
    QPoly nr = R * zr - I * zi + QPoly::constant(*it);
    QPoly ni = R * zi + I * zr;
    R = nr;
    I = ni;
  }
  QPoly g = gcd(R, I);
  return {g, isolate_real_roots(g)};
}

// Sign of (Re rho - q) or (Im rho - q) for the root isolated by disc d.
int side_of_line(const QPoly& p, RootDisc& d, bool vertical, const Rational& q) {
  std::optional<std::pair<QPoly, std::vector<RealRootInterval>>> lr;
  mpfr_prec_t prec = 32;
  for (int round = 0; round < 400; ++round) {
    const Rational& c = vertical ? d.re : d.im;
    if (c - d.rad > q) return 1;
    if (c + d.rad < q) return -1;
    if (round >= 2) {
      if (!lr) lr = line_roots(p, vertical, q);
      for (auto& w : lr->second) {
        const Rational& other = vertical ? d.im : d.re;
        Rational off = q - c;
        Rational f1 = w.lo - other, f2 = w.hi - other;
        Rational far = std::max(f1 * f1, f2 * f2);
        if (off * off + far <= d.rad * d.rad) return 0;
        refine_real_root(lr->first, w, d.rad / 4 + Rational(0));
      }
    }
    prec += 16;
    refine_disc(p, d, prec);
  }
  throw NonIsolatedRoot("could not decide the position of a root relative to a box edge");
}

bool real_root_in_range(const QPoly& p, RealRootInterval r, const Rational& a, const Rational& b) {
  while (true) {
    if (r.exact()) return r.lo >= a && r.lo <= b;
    if (r.hi <= a || r.lo >= b) {
      if (r.hi == a && sign_at(p, a) == 0) return true;
      if (r.lo == b && sign_at(p, b) == 0) return true;
      return false;
    }
    if (r.lo >= a && r.hi <= b) return true;
    if (r.lo < a && a < r.hi && sign_at(p, a) == 0) return true;
    if (r.lo < b && b < r.hi && sign_at(p, b) == 0) return true;
    refine_real_root(p, r, (r.hi - r.lo) / 2);
  }
}

bool contains_root(const QPoly& p, bool real, const RealRootInterval& riso, RootDisc d, const Box& b) {
  if (real) {
    if (b.im_lo > 0 || b.im_hi < 0) return false;
    return real_root_in_range(p, riso, b.re_lo, b.re_hi);
  }
  if (side_of_line(p, d, true, b.re_lo) < 0) return false;
  if (side_of_line(p, d, true, b.re_hi) > 0) return false;
  if (side_of_line(p, d, false, b.im_lo) < 0) return false;
  if (side_of_line(p, d, false, b.im_hi) > 0) return false;
  return true;
}

RealRootInterval disc_to_real(const QPoly& p, const RootDisc& d) {
  RealRootInterval r{d.re - d.rad, d.re + d.rad};
  if (d.rad == 0) return {d.re, d.re};
  // clear endpoints that happen to be roots (they would be the same root)
  if (sign_at(p, r.lo) == 0) return {r.lo, r.lo};
  if (sign_at(p, r.hi) == 0) return {r.hi, r.hi};
  return r;
}

}  // namespace

AlgebraicNumber::AlgebraicNumber()
    : poly_(qpoly({0, 1})), real_(true), riso_{Rational(0), Rational(0)},
      ciso_{Rational(0), Rational(0), Rational(0), true}, cache_(std::make_shared<Cache>()) {}

AlgebraicNumber AlgebraicNumber::rational(const Rational& q) {
  AlgebraicNumber a;
  a.poly_ = QPoly(std::vector<Rational>{-q * q.get_den(), Rational(q.get_den())});
  a.poly_ = primitive_part(a.poly_);
  a.real_ = true;
  a.riso_ = {q, q};
  a.ciso_ = {q, Rational(0), Rational(0), true};
  a.cache_ = std::make_shared<Cache>();
  return a;
}

AlgebraicNumber AlgebraicNumber::real_root(const QPoly& p, const RealRootInterval& iso) {
  AlgebraicNumber a;
  a.poly_ = primitive_part(p);
  if (a.poly_.degree() == 1) return rational(-a.poly_.c[0] / a.poly_.c[1]);
  a.real_ = true;
  a.riso_ = iso;
  a.ciso_ = {(iso.lo + iso.hi) / 2, Rational(0), (iso.hi - iso.lo) / 2, true};
  a.cache_ = std::make_shared<Cache>();
  return a;
}

AlgebraicNumber AlgebraicNumber::complex_root(const QPoly& p, const RootDisc& iso) {
  AlgebraicNumber a;
  a.poly_ = primitive_part(p);
  if (iso.real) return real_root(p, disc_to_real(a.poly_, iso));
  a.real_ = false;
  a.ciso_ = iso;
  a.cache_ = std::make_shared<Cache>();
  return a;
}

AlgebraicNumber AlgebraicNumber::from_input(const AlgebraicInput& in) {
  const QPoly& p = in.minpoly;
  if (p.degree() < 1) throw InvalidInput("algebraic number: minimal polynomial must be non-constant");
  if (gcd(p, p.derivative()).degree() > 0) throw InvalidInput("algebraic number: polynomial is not square-free");
  const Box& b = in.box;
  if (b.re_lo > b.re_hi || b.im_lo > b.im_hi) throw InvalidInput("algebraic number: empty isolating box");

  std::vector<std::pair<bool, RootDisc>> hits;
  for (auto d : isolate_complex_roots(p)) {
    RealRootInterval r = d.real ? disc_to_real(p, d) : RealRootInterval{};
    if (contains_root(p, d.real, r, d, b)) hits.emplace_back(d.real, d);
  }
  if (hits.size() != 1)
    throw NonIsolatedRoot("isolating box holds " + std::to_string(hits.size()) + " roots of the polynomial");

  auto [is_real, disc] = hits.front();
  auto factors = factor_squarefree_integer(p);
  if (is_real) {
    RealRootInterval r = disc_to_real(p, disc);
    if (r.exact()) return rational(r.lo);
    for (auto& g : factors)
      if (g.degree() >= 1 && sign_at(g, r.lo) * sign_at(g, r.hi) < 0) return real_root(g, r);
    throw std::logic_error("no factor owns the isolated real root");
  }
  // Non-real root: shrink until exactly one irreducible factor can vanish in the disc.
  mpfr_prec_t prec = 32;
  QPoly sq = primitive_part(p);
  while (true) {
    std::vector<const QPoly*> cand;
    for (auto& g : factors) {
      if (g.degree() < 2) continue;
      CInterval z(Interval::from_bounds(disc.re - disc.rad, disc.re + disc.rad, prec + 32),
                  Interval::from_bounds(disc.im - disc.rad, disc.im + disc.rad, prec + 32));
      if (eval(g, z).contains_zero()) cand.push_back(&g);
    }
    if (cand.size() == 1) return complex_root(*cand.front(), disc);
    prec *= 2;
    refine_disc(sq, disc, prec);
  }
}

Rational AlgebraicNumber::rational_value() const {
  if (!is_rational()) throw std::logic_error("algebraic number is not rational");
  return -poly_.c[0] / poly_.c[1];
}

CInterval AlgebraicNumber::approx(mpfr_prec_t prec) const {
  mpfr_prec_t P = prec + 32;
  if (is_rational()) {
    Rational v = rational_value();
    return CInterval(Interval(v, P), Interval(P));
  }
  Rational want = pow2_q(-static_cast<long>(prec) - 1);
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (!cache_->have || cache_->rad > want) {
    if (real_) {
      RealRootInterval r = riso_;
      if (cache_->have) r = {cache_->re - cache_->rad, cache_->re + cache_->rad};
      refine_real(poly_, r, prec + 1);
      cache_->re = (r.lo + r.hi) / 2;
      cache_->im = 0;
      cache_->rad = (r.hi - r.lo) / 2;
    } else {
      RootDisc d = ciso_;
      if (cache_->have) d = {cache_->re, cache_->im, cache_->rad, false};
      refine_disc(poly_, d, prec + 1);
      cache_->re = d.re;
      cache_->im = d.im;
      cache_->rad = d.rad;
    }
    cache_->have = true;
  }
  Interval re = Interval::from_bounds(cache_->re - cache_->rad, cache_->re + cache_->rad, P);
  Interval im = real_ ? Interval(P) : Interval::from_bounds(cache_->im - cache_->rad, cache_->im + cache_->rad, P);
  return CInterval(re, im);
}

AlgebraicNumber AlgebraicNumber::conj() const {
  if (real_) return *this;
  AlgebraicNumber a = *this;
  a.ciso_.im = -a.ciso_.im;
  a.cache_ = std::make_shared<Cache>();
  return a;
}

AlgebraicInput AlgebraicNumber::to_input() const {
  if (real_) return {poly_, {riso_.lo, riso_.hi, Rational(0), Rational(0)}};
  return {poly_, {ciso_.re - ciso_.rad, ciso_.re + ciso_.rad, ciso_.im - ciso_.rad, ciso_.im + ciso_.rad}};
}

bool AlgebraicNumber::same_as(const AlgebraicNumber& o) const {
  if (!(poly_ == o.poly_) || real_ != o.real_) return false;
  if (is_rational()) return rational_value() == o.rational_value();
  long sep = log2_root_separation(poly_);
  mpfr_prec_t prec = static_cast<mpfr_prec_t>(std::max<long>(8, -sep + 4));
  CInterval a = approx(prec), b = o.approx(prec);
  bool re_overlap = !(a.re.upper() < b.re.lower() || b.re.upper() < a.re.lower());
  bool im_overlap = !(a.im.upper() < b.im.lower() || b.im.upper() < a.im.lower());
  return re_overlap && im_overlap;
}

bool box_contains(const Box& b, const AlgebraicNumber& a) {
  if (a.is_rational()) {
    Rational v = a.rational_value();
    return b.im_lo <= 0 && b.im_hi >= 0 && v >= b.re_lo && v <= b.re_hi;
  }
  return contains_root(a.minpoly(), a.is_real(), a.real_isolation(), a.disc(), b);
}

}  // namespace skolem
