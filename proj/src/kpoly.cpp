#include "skolem/kpoly.hpp"

#include <optional>

#include "modp.hpp"

namespace skolem {

FieldPtr kpoly_field(const KPoly& f) {
  FieldPtr K;
  for (const auto& c : f.c) {
    if (!c.field()) continue;
    if (K && K != c.field()) throw std::logic_error("polynomial mixes number fields");
    K = c.field();
  }
  return K;
}

KPoly to_kpoly(const QPoly& p) {
  std::vector<FieldElement> c;
  for (const auto& v : p.c) c.push_back(FieldElement(v));
  return KPoly(c);
}

KPoly kpoly_in(const KPoly& f, const FieldPtr& K) {
  std::vector<FieldElement> c;
  for (const auto& v : f.c) c.push_back(v.field() ? v : v.in_field(K));
  return KPoly(c);
}

namespace {

Rational element_norm(const FieldElement& x) {
  if (x.is_rational()) {
    Rational v = x.is_zero() ? Rational(0) : x.rational_value();
    int d = x.field() ? x.field()->degree() : 1;
    return pow_q(v, static_cast<unsigned long>(d));
  }
  return resultant(x.field()->minpoly(), QPoly(x.coords()));
}

QPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  std::size_t n = xs.size();
  std::vector<Rational> dd = ys;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  QPoly r = QPoly::constant(dd[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;) r = r * QPoly(std::vector<Rational>{-xs[i], Rational(1)}) + QPoly::constant(dd[i]);
  return r;
}

}  // namespace

QPoly norm(const KPoly& f) {
  FieldPtr K = kpoly_field(f);
  if (!K) {
    std::vector<Rational> c;
    for (const auto& v : f.c) c.push_back(v.is_zero() ? Rational(0) : v.rational_value());
    return QPoly(c);
  }
  std::size_t N = static_cast<std::size_t>(f.degree() * K->degree());
  std::vector<Rational> xs, ys;
  for (std::size_t i = 0; i <= N; ++i) {
    Rational x0(static_cast<long>(i));
    xs.push_back(x0);
    ys.push_back(element_norm(f.eval(FieldElement(K, {x0}))));
  }
  return interpolate(xs, ys);
}

namespace {

using namespace modp;
using RPoly = std::vector<MPoly>;  // polynomial over F_p[theta]/(m)

struct ResidueRing {
  MPoly m;
  u64 p;
  MPoly mul(const MPoly& a, const MPoly& b) const { return mmod(mmul(a, b, p), m, p); }
  bool inverse(const MPoly& a, MPoly& out) const {
    MPoly t;
    MPoly g = mxgcd(a, m, p, out, t);
    return g.size() == 1;
  }
};

void rtrim(RPoly& a) {
  while (!a.empty() && a.back().empty()) a.pop_back();
}

// Monic gcd in R[x]; false when a leading coefficient is a zero divisor.
bool residue_gcd(RPoly a, RPoly b, const ResidueRing& R, RPoly& out) {
  rtrim(a);
  rtrim(b);
  while (!b.empty()) {
    MPoly inv;
    if (!R.inverse(b.back(), inv)) return false;
    while (a.size() >= b.size()) {
      MPoly f = R.mul(a.back(), inv);
      std::size_t off = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[off + i] = msub(a[off + i], R.mul(f, b[i]), R.p);
      a.back().clear();
      rtrim(a);
    }
    std::swap(a, b);
  }
  if (a.empty()) return false;
  MPoly inv;
  if (!R.inverse(a.back(), inv)) return false;
  for (auto& c : a) c = R.mul(c, inv);
  out = std::move(a);
  return true;
}

struct IntCoeffs {
  std::vector<ZVec> c;  // coordinates times the common denominator
};

IntCoeffs integer_coords(const KPoly& f, std::size_t d) {
  Integer den = 1;
  for (const auto& e : f.c)
    for (const auto& q : e.coords()) den = lcm_z(den, q.get_den());
  IntCoeffs out;
  for (const auto& e : f.c) {
    ZVec v(d, Integer(0));
    for (std::size_t k = 0; k < e.coords().size(); ++k) v[k] = Integer(e.coords()[k] * den);
    out.c.push_back(v);
  }
  return out;
}

RPoly reduce_coeffs(const IntCoeffs& f, const ResidueRing& R) {
  RPoly out;
  for (const auto& v : f.c) out.push_back(mmod(reduce_mod(v, R.p), R.m, R.p));
  return out;
}

bool divides_exactly(const KPoly& g, const KPoly& f) { return divmod(f, g).second.is_zero_poly(); }

}  // namespace

KPoly gcd(const KPoly& a, const KPoly& b) {
  if (a.is_zero_poly()) return b.is_zero_poly() ? b : b.monic();
  if (b.is_zero_poly()) return a.monic();
  FieldPtr Ka = kpoly_field(a), Kb = kpoly_field(b);
  if (Ka && Kb && Ka != Kb) throw std::logic_error("gcd of polynomials over different fields");
  FieldPtr K = Ka ? Ka : Kb;
  auto rational_poly = [](const KPoly& f) {
    std::vector<Rational> c;
    for (const auto& v : f.c) c.push_back(v.is_zero() ? Rational(0) : v.rational_value());
    return QPoly(c);
  };
  if (!K || K->degree() == 1) return kpoly_in(to_kpoly(gcd(rational_poly(a), rational_poly(b))), K);
  if (a.degree() == 0 || b.degree() == 0) return KPoly::constant(FieldElement(1));
  std::size_t d = static_cast<std::size_t>(K->degree());
  ZVec Mz = primitive_integer(K->minpoly());
  IntCoeffs A = integer_coords(a, d), B = integer_coords(b, d);
  int best = std::min(a.degree(), b.degree()) + 1;
  std::vector<ZVec> acc;
  Integer M = 1;
  std::optional<KPoly> last;
  for (std::size_t idx = 0; idx < 4000; ++idx) {
    u64 p = prime_list(idx + 1)[idx];
    if (mod_of(Mz.back(), p) == 0) continue;
    ResidueRing R{reduce_mod(Mz, p), p};
    if (mgcd(R.m, mderiv(R.m, p), p).size() > 1) continue;
    RPoly ap = reduce_coeffs(A, R), bp = reduce_coeffs(B, R);
    if (static_cast<int>(ap.size()) != a.degree() + 1 || static_cast<int>(bp.size()) != b.degree() + 1) continue;
    RPoly g;
    if (!residue_gcd(ap, bp, R, g)) continue;
    int dg = static_cast<int>(g.size()) - 1;
    if (dg == 0) return KPoly::constant(FieldElement(1).in_field(K));
    if (dg > best) continue;
    if (dg < best) {
      best = dg;
      acc.assign(g.size(), ZVec(d, Integer(0)));
      M = 1;
      last.reset();
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
      MPoly gi = g[i];
      gi.resize(d, 0);
      for (std::size_t k = 0; k < d; ++k) crt(acc[i][k], M, gi[k], p);
    }
    M *= static_cast<unsigned long>(p);
    std::vector<FieldElement> cand;
    bool ok = true;
    for (const auto& v : acc) {
      std::vector<Rational> q;
      if (!reconstruct_vector(v, M, q)) {
        ok = false;
        break;
      }
      cand.push_back(FieldElement(K, K->reduce(q)));
    }
    if (!ok) continue;
    KPoly G(cand);
    if (last && *last == G && divides_exactly(G, a) && divides_exactly(G, b)) return G;
    last = G;
  }
  throw std::logic_error("modular gcd over the number field did not converge");
}

namespace {

// Irreducible factors of a square-free monic polynomial over its field.
std::vector<KPoly> trager(const KPoly& f) {
  if (f.degree() <= 1) return {f.monic()};
  FieldPtr K = kpoly_field(f);
  if (!K || K->degree() == 1) {
    std::vector<KPoly> out;
    for (const auto& g : factor_squarefree_integer(primitive_part(norm(f)))) out.push_back(kpoly_in(to_kpoly(g), K).monic());
    return out;
  }
  FieldElement th = K->theta_element();
  for (long s = 0; s < 40; s = s > 0 ? -s : -s + 1) {
    FieldElement shift = FieldElement(Rational(s)) * th;
    KPoly g = taylor_shift(f, -shift);
    QPoly N = norm(g);
    if (gcd(N, N.derivative()).degree() > 0) continue;
    auto parts = factor_squarefree_integer(primitive_part(N));
    if (parts.size() == 1) return {f.monic()};
    std::vector<KPoly> out;
    for (const auto& p : parts) {
      KPoly ps = taylor_shift(kpoly_in(to_kpoly(p), K), shift);
      KPoly h = gcd(f, ps);
      if (h.degree() > 0) out.push_back(h.monic());
    }
    return out;
  }
  throw std::logic_error("no square-free norm found for factorization over the field");
}

}  // namespace

std::vector<std::pair<KPoly, int>> factor_over_field(const KPoly& f) {
  std::vector<std::pair<KPoly, int>> out;
  if (f.degree() <= 0) return out;
  auto sf = squarefree_decomposition(f);
  for (std::size_t k = 0; k < sf.size(); ++k) {
    if (sf[k].degree() <= 0) continue;
    for (auto& g : trager(sf[k])) out.push_back({g, static_cast<int>(k + 1)});
  }
  return out;
}

CInterval eval(const KPoly& f, const CInterval& x, mpfr_prec_t prec) {
  CInterval acc(Interval(0L, prec), Interval(0L, prec));
  for (auto it = f.c.rbegin(); it != f.c.rend(); ++it) acc = acc * x + it->approx(prec);
  return acc;
}

std::vector<std::pair<AlgebraicNumber, int>> roots_of(const KPoly& f) {
  std::vector<std::pair<AlgebraicNumber, int>> out;
  auto sf = squarefree_decomposition(f);
  for (std::size_t k = 0; k < sf.size(); ++k) {
    const KPoly& s = sf[k];
    if (s.degree() <= 0) continue;
    QFactorization nf = factor(norm(s));
    struct Cand {
      QPoly g;
      RootDisc d;
    };
    std::vector<Cand> cands;
    for (const auto& [g, m] : nf.factors)
      for (const auto& d : isolate_complex_roots(g)) cands.push_back({g, d});
    // Shrink the candidate set until exactly deg s roots survive; the others are
    // excluded by a certified nonzero enclosure of s.
    std::vector<AlgebraicNumber> nums;
    for (const auto& c : cands) {
      if (c.g.degree() == 1) {
        nums.push_back(AlgebraicNumber::rational(-c.g.c[0] / c.g.c[1]));
      } else if (c.d.real) {
        auto rs = real_roots_in(c.g, c.d.re - c.d.rad, c.d.re + c.d.rad);
        nums.push_back(AlgebraicNumber::real_root(c.g, rs.at(0)));
      } else {
        nums.push_back(AlgebraicNumber::complex_root(c.g, c.d));
      }
    }
    std::vector<bool> alive(nums.size(), true);
    std::size_t count = nums.size();
    for (mpfr_prec_t prec = 64; count > static_cast<std::size_t>(s.degree()); prec *= 2) {
      for (std::size_t i = 0; i < nums.size(); ++i) {
        if (!alive[i]) continue;
        CInterval v = eval(s, nums[i].approx(prec), prec + 32);
        if (!v.contains_zero()) {
          alive[i] = false;
          --count;
        }
      }
      if (prec > (1 << 20)) throw std::logic_error("root selection did not converge");
    }
    if (count != static_cast<std::size_t>(s.degree())) throw std::logic_error("root count mismatch");
    for (std::size_t i = 0; i < nums.size(); ++i)
      if (alive[i]) out.push_back({nums[i], static_cast<int>(k + 1)});
  }
  return out;
}

}  // namespace skolem
