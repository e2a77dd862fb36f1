#include <cstdint>
#include <mutex>
#include <random>

#include "modp.hpp"
#include "skolem/qpoly.hpp"

namespace skolem {

namespace modp {

void trim(MPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

u64 powmod(u64 b, u64 e, u64 p) {
  u64 r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

u64 inv_mod(u64 a, u64 p) { return powmod(a, p - 2, p); }

MPoly msub(const MPoly& a, const MPoly& b, u64 p) {
  MPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
  trim(r);
  return r;
}

MPoly mmul(const MPoly& a, const MPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  MPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  trim(r);
  return r;
}

void mdivmod(const MPoly& a, const MPoly& b, u64 p, MPoly* q, MPoly* r) {
  MPoly rem = a;
  std::size_t db = b.size() - 1;
  u64 inv = inv_mod(b.back(), p);
  MPoly quo(rem.size() >= b.size() ? rem.size() - db : 0, 0);
  for (std::size_t k = quo.size(); k-- > 0;) {
    u64 c = rem[k + db] * inv % p;
    quo[k] = c;
    if (!c) continue;
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] = (rem[k + j] + p - c * b[j] % p) % p;
  }
  rem.resize(std::min(rem.size(), db));
  trim(rem);
  trim(quo);
  if (q) *q = quo;
  if (r) *r = rem;
}

MPoly mmod(const MPoly& a, const MPoly& b, u64 p) {
  MPoly r;
  mdivmod(a, b, p, nullptr, &r);
  return r;
}

MPoly mmonic(MPoly a, u64 p) {
  if (a.empty()) return a;
  u64 inv = inv_mod(a.back(), p);
  for (auto& v : a) v = v * inv % p;
  return a;
}

MPoly mgcd(MPoly a, MPoly b, u64 p) {
  while (!b.empty()) {
    MPoly r = mmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return mmonic(a, p);
}

MPoly mxgcd(const MPoly& a, const MPoly& b, u64 p, MPoly& s, MPoly& t) {
  MPoly r0 = a, r1 = b, s0{1}, s1, t0, t1{1};
  while (!r1.empty()) {
    MPoly q, r;
    mdivmod(r0, r1, p, &q, &r);
    r0 = r1;
    r1 = r;
    MPoly s2 = msub(s0, mmul(q, s1, p), p);
    s0 = s1;
    s1 = s2;
    MPoly t2 = msub(t0, mmul(q, t1, p), p);
    t0 = t1;
    t1 = t2;
  }
  u64 inv = inv_mod(r0.back(), p);
  for (auto& v : s0) v = v * inv % p;
  for (auto& v : t0) v = v * inv % p;
  s = s0;
  t = t0;
  return mmonic(r0, p);
}

MPoly mpowmod(MPoly base, u64 e, const MPoly& f, u64 p) {
  MPoly r{1};
  base = mmod(base, f, p);
  while (e) {
    if (e & 1) r = mmod(mmul(r, base, p), f, p);
    base = mmod(mmul(base, base, p), f, p);
    e >>= 1;
  }
  return r;
}

MPoly mderiv(const MPoly& a, u64 p) {
  MPoly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * (i % p) % p);
  trim(r);
  return r;
}

MPoly reduce_mod(const ZVec& z, u64 p) {
  MPoly r;
  for (auto& v : z) {
    Integer m;
    mpz_fdiv_r_ui(m.get_mpz_t(), v.get_mpz_t(), p);
    r.push_back(m.get_ui());
  }
  trim(r);
  return r;
}

// Powers x^{ip} mod f, so that h -> h^p mod f is a matrix-vector product.
struct Frobenius {
  std::vector<MPoly> rows;
  u64 p;
  Frobenius(const MPoly& f, u64 p_) : p(p_) {
    std::size_t n = f.size() - 1;
    MPoly xp = mpowmod(MPoly{0, 1}, p, f, p);
    rows.push_back(MPoly{1});
    for (std::size_t i = 1; i < n; ++i) rows.push_back(mmod(mmul(rows.back(), xp, p), f, p));
  }
  MPoly apply(const MPoly& h) const {
    MPoly r(rows.size(), 0);
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (h[i] == 0) continue;
      for (std::size_t k = 0; k < rows[i].size(); ++k) r[k] = (r[k] + h[i] * rows[i][k]) % p;
    }
    trim(r);
    return r;
  }
};

// Equal-degree splitting (Cantor-Zassenhaus) of a monic squarefree f whose factors all have degree d.
void equal_degree(const MPoly& f, std::size_t d, u64 p, std::mt19937_64& rng, std::vector<MPoly>& out) {
  std::size_t n = f.size() - 1;
  if (n == d) {
    out.push_back(f);
    return;
  }
  u64 pd = 1;
  bool big = false;
  for (std::size_t i = 0; i < d; ++i) {
    if (pd > (~u64(0)) / p) big = true;
    pd *= p;
  }
  while (true) {
    MPoly a(n, 0);
    for (auto& v : a) v = rng() % p;
    trim(a);
    if (a.size() < 2) continue;
    MPoly g = mgcd(a, f, p);
    if (g.size() > 1 && g.size() < f.size()) {
      equal_degree(g, d, p, rng, out);
      MPoly q;
      mdivmod(f, g, p, &q, nullptr);
      equal_degree(mmonic(q, p), d, p, rng, out);
      return;
    }
    MPoly b;
    if (!big) {
      b = mpowmod(a, (pd - 1) / 2, f, p);
    } else {
      // (p^d - 1)/2 = (p-1)/2 * (1 + p + ... + p^{d-1}); use repeated Frobenius.
      MPoly acc{1}, cur = a;
      for (std::size_t i = 0; i < d; ++i) {
        acc = mmod(mmul(acc, cur, p), f, p);
        cur = mpowmod(cur, p, f, p);
      }
      b = mpowmod(acc, (p - 1) / 2, f, p);
    }
    b = msub(b, MPoly{1}, p);
    g = mgcd(b, f, p);
    if (g.size() > 1 && g.size() < f.size()) {
      equal_degree(g, d, p, rng, out);
      MPoly q;
      mdivmod(f, g, p, &q, nullptr);
      equal_degree(mmonic(q, p), d, p, rng, out);
      return;
    }
  }
}

std::vector<MPoly> factor_mod_p(const MPoly& f_in, u64 p) {
  std::mt19937_64 rng(0x5eed + p);
  MPoly f = mmonic(f_in, p);
  std::vector<MPoly> out;
  Frobenius frob(f, p);
  MPoly h{0, 1};
  MPoly x{0, 1};
  for (std::size_t i = 1; 2 * i <= f.size() - 1; ++i) {
    h = mmod(frob.apply(h), f, p);
    MPoly g = mgcd(msub(h, x, p), f, p);
    if (g.size() > 1) {
      equal_degree(g, i, p, rng, out);
      MPoly q;
      mdivmod(f, g, p, &q, nullptr);
      f = mmonic(q, p);
      h = mmod(h, f, p);
    }
  }
  if (f.size() > 1) out.push_back(f);
  return out;
}

// Degrees of the irreducible factors of a monic squarefree f mod p (distinct-degree only).
std::vector<std::size_t> factor_degrees_mod_p(const MPoly& f_in, u64 p) {
  MPoly f = mmonic(f_in, p);
  std::vector<std::size_t> out;
  Frobenius frob(f, p);
  MPoly h{0, 1};
  MPoly x{0, 1};
  for (std::size_t i = 1; 2 * i <= f.size() - 1; ++i) {
    h = mmod(frob.apply(h), f, p);
    MPoly g = mgcd(msub(h, x, p), f, p);
    if (g.size() > 1) {
      for (std::size_t k = 0; k < (g.size() - 1) / i; ++k) out.push_back(i);
      MPoly q;
      mdivmod(f, g, p, &q, nullptr);
      f = mmonic(q, p);
      h = mmod(h, f, p);
    }
  }
  if (f.size() > 1) out.push_back(f.size() - 1);
  return out;
}

std::vector<bool> subset_sums(const std::vector<std::size_t>& degs, std::size_t n) {
  std::vector<bool> s(n + 1, false);
  s[0] = true;
  for (auto d : degs)
    for (std::size_t v = n; v >= d; --v) {
      if (s[v - d]) s[v] = true;
      if (v == d) break;
    }
  return s;
}

// ----------------------------------------------------- Z/m polynomial helpers

void zreduce(ZVec& a, const Integer& m) {
  for (auto& v : a) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZVec zmul(const ZVec& a, const ZVec& b, const Integer& m) {
  if (a.empty() || b.empty()) return {};
  ZVec r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  zreduce(r, m);
  return r;
}

ZVec zadd(const ZVec& a, const ZVec& b, const Integer& m) {
  ZVec r(std::max(a.size(), b.size()), Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  zreduce(r, m);
  return r;
}

ZVec zsub(const ZVec& a, const ZVec& b, const Integer& m) {
  ZVec r(std::max(a.size(), b.size()), Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  zreduce(r, m);
  return r;
}

// Division by a monic polynomial modulo m.
void zdivmod_monic(const ZVec& a, const ZVec& b, const Integer& m, ZVec& q, ZVec& r) {
  ZVec rem = a;
  std::size_t db = b.size() - 1;
  q.assign(rem.size() >= b.size() ? rem.size() - db : 0, Integer(0));
  for (std::size_t k = q.size(); k-- > 0;) {
    Integer c = rem[k + db];
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= c * b[j];
  }
  rem.resize(std::min(rem.size(), db));
  zreduce(rem, m);
  zreduce(q, m);
  r = rem;
}

ZVec lift_u64(const MPoly& a) {
  ZVec r;
  for (auto v : a) r.emplace_back(static_cast<unsigned long>(v));
  return r;
}

// One quadratic Hensel step from modulus m to m^2 (f = g h, s g + t h = 1, h monic).
void hensel_step(const ZVec& f, ZVec& g, ZVec& h, ZVec& s, ZVec& t, const Integer& m2) {
  ZVec e = zsub(f, zmul(g, h, m2), m2);
  ZVec q, r;
  zdivmod_monic(zmul(s, e, m2), h, m2, q, r);
  ZVec g2 = zadd(g, zadd(zmul(t, e, m2), zmul(q, g, m2), m2), m2);
  ZVec h2 = zadd(h, r, m2);
  ZVec b = zsub(zadd(zmul(s, g2, m2), zmul(t, h2, m2), m2), ZVec{Integer(1)}, m2);
  ZVec c, d;
  zdivmod_monic(zmul(s, b, m2), h2, m2, c, d);
  s = zsub(s, d, m2);
  t = zsub(t, zadd(zmul(t, b, m2), zmul(c, g2, m2), m2), m2);
  g = g2;
  h = h2;
}

// Lift f = lc(f) * prod(factors) mod p to monic factors mod p^(2^k) = M.
void multi_lift(const ZVec& f, const std::vector<MPoly>& factors, u64 p, const Integer& M, std::vector<ZVec>& out) {
  if (factors.size() == 1) {
    ZVec g = f;
    Integer inv;
    Integer lc = f.back();
    mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), M.get_mpz_t());
    for (auto& v : g) v *= inv;
    zreduce(g, M);
    out.push_back(g);
    return;
  }
  std::size_t half = factors.size() / 2;
  std::vector<MPoly> A(factors.begin(), factors.begin() + static_cast<long>(half));
  std::vector<MPoly> B(factors.begin() + static_cast<long>(half), factors.end());
  MPoly gA{reduce_mod(ZVec{f.back()}, p)};
  MPoly gm = gA;
  for (auto& a : A) gm = mmul(gm, a, p);
  MPoly hm{1};
  for (auto& b : B) hm = mmul(hm, b, p);
  MPoly sm, tm;
  mxgcd(gm, hm, p, sm, tm);
  ZVec g = lift_u64(gm), h = lift_u64(hm), s = lift_u64(sm), t = lift_u64(tm);
  Integer m = static_cast<unsigned long>(p);
  while (m < M) {
    m = m * m;
    hensel_step(f, g, h, s, t, m);
  }
  zreduce(g, M);
  zreduce(h, M);
  multi_lift(g, A, p, M, out);
  multi_lift(h, B, p, M, out);
}

ZVec symmetric(ZVec a, const Integer& M) {
  Integer half = M / 2;
  for (auto& v : a) {
    mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), M.get_mpz_t());
    if (v > half) v -= M;
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

ZVec zprim(ZVec a) {
  Integer g = 0;
  for (auto& v : a) g = gcd_z(g, v);
  if (g == 0) return a;
  if (a.back() < 0) g = -g;
  for (auto& v : a) v /= g;
  return a;
}

ZVec zmul_exact(const ZVec& a, const ZVec& b) {
  if (a.empty() || b.empty()) return {};
  ZVec r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

bool is_probable_prime(u64 n) {
  Integer z(static_cast<unsigned long>(n));
  return mpz_probab_prime_p(z.get_mpz_t(), 30) > 0;
}

// Primes just below 2^30, generated on first use.
const std::vector<u64>& prime_list(std::size_t count) {
  static std::mutex mu;
  static std::vector<u64> primes;
  std::lock_guard<std::mutex> lock(mu);
  u64 cand = primes.empty() ? (u64(1) << 30) - 1 : primes.back() - 2;
  while (primes.size() < count) {
    if (is_probable_prime(cand)) primes.push_back(cand);
    cand -= 2;
  }
  return primes;
}

u64 mod_of(const Integer& v, u64 p) {
  Integer m;
  mpz_fdiv_r_ui(m.get_mpz_t(), v.get_mpz_t(), p);
  return m.get_ui();
}

u64 mres(MPoly f, MPoly g, u64 p) {
  if (f.empty() || g.empty()) return 0;
  u64 acc = 1;
  while (true) {
    std::size_t m = f.size() - 1, n = g.size() - 1;
    if (n == 0) return acc * powmod(g[0], m, p) % p;
    if (m == 0) return acc * powmod(f[0], n, p) % p;
    if (m < n) {
      if ((m * n) % 2 == 1) acc = (p - acc) % p;
      std::swap(f, g);
      continue;
    }
    MPoly r = mmod(f, g, p);
    if (r.empty()) return 0;
    std::size_t k = r.size() - 1;
    if ((m * n) % 2 == 1) acc = (p - acc) % p;
    acc = acc * powmod(g.back(), m - k, p) % p;
    f = std::move(g);
    g = std::move(r);
  }
}

// Update x (mod M) to the residue mod M*p that is r mod p.
void crt(Integer& x, const Integer& M, u64 r, u64 p) {
  u64 xm = mod_of(x, p);
  u64 minv = inv_mod(mod_of(M, p), p);
  u64 t = (r + p - xm) % p * minv % p;
  x += M * static_cast<unsigned long>(t);
}

Integer denominators_lcm(const QPoly& a) {
  Integer d = 1;
  for (const auto& c : a.c) d = lcm_z(d, c.get_den());
  return d;
}

Integer log2_norm_bound(const ZVec& a) {
  Integer n2 = 0;
  for (const auto& v : a) n2 += v * v;
  return Integer(static_cast<unsigned long>(mpz_sizeinbase(n2.get_mpz_t(), 2) / 2 + 1));
}

}  // namespace modp

using namespace modp;

QPoly gcd(const QPoly& a, const QPoly& b) {
  if (a.is_zero_poly()) return b.monic();
  if (b.is_zero_poly()) return a.monic();
  if (a.degree() == 0 || b.degree() == 0) return QPoly::constant(Rational(1));
  ZVec A = primitive_integer(a), B = primitive_integer(b);
  Integer gamma = gcd_z(A.back(), B.back());
  QPoly Aq = from_integer(A), Bq = from_integer(B);
  std::size_t best = std::min(A.size(), B.size()) + 1;
  Integer M = 1;
  ZVec acc;
  ZVec last;
  for (std::size_t idx = 0;; ++idx) {
    u64 p = prime_list(idx + 1)[idx];
    if (mod_of(A.back(), p) == 0 || mod_of(B.back(), p) == 0) continue;
    MPoly g = mgcd(reduce_mod(A, p), reduce_mod(B, p), p);
    if (g.size() == 1) return QPoly::constant(Rational(1));
    if (g.size() > best) continue;
    u64 gm = mod_of(gamma, p);
    for (auto& v : g) v = v * gm % p;
    if (g.size() < best) {
      best = g.size();
      M = 1;
      acc.assign(best, Integer(0));
    }
    for (std::size_t i = 0; i < best; ++i) crt(acc[i], M, g[i], p);
    M *= static_cast<unsigned long>(p);
    ZVec cand = zprim(symmetric(acc, M));
    if (cand == last) {
      QPoly c = from_integer(cand);
      if ((Aq % c).is_zero_poly() && (Bq % c).is_zero_poly()) return c.monic();
    }
    last = cand;
  }
}

Rational resultant(const QPoly& a, const QPoly& b) {
  if (a.is_zero_poly() || b.is_zero_poly()) return 0;
  Integer da = denominators_lcm(a), db = denominators_lcm(b);
  ZVec A, B;
  for (const auto& c : a.c) A.push_back(Rational(c * da).get_num());
  for (const auto& c : b.c) B.push_back(Rational(c * db).get_num());
  long m = a.degree(), n = b.degree();
  Integer bits = log2_norm_bound(A) * n + log2_norm_bound(B) * m + 2;
  Integer M = 1, x = 0;
  for (std::size_t idx = 0; mpz_sizeinbase(M.get_mpz_t(), 2) <= bits.get_ui(); ++idx) {
    u64 p = prime_list(idx + 1)[idx];
    if (mod_of(A.back(), p) == 0 || mod_of(B.back(), p) == 0) continue;
    crt(x, M, mres(reduce_mod(A, p), reduce_mod(B, p), p), p);
    M *= static_cast<unsigned long>(p);
  }
  Integer half = M / 2;
  if (x > half) x -= M;
  Rational r(x);
  Integer scale;
  mpz_pow_ui(scale.get_mpz_t(), da.get_mpz_t(), static_cast<unsigned long>(n));
  r /= Rational(scale);
  mpz_pow_ui(scale.get_mpz_t(), db.get_mpz_t(), static_cast<unsigned long>(m));
  r /= Rational(scale);
  r.canonicalize();
  return r;
}

namespace modp {

// a/b = u (mod M) with |a|, |b| <= sqrt(M/2), if such a pair exists.
bool rational_reconstruct(const Integer& u, const Integer& M, Rational& out) {
  Integer bound;
  mpz_sqrt(bound.get_mpz_t(), Integer(M / 2).get_mpz_t());
  Integer r0 = M, r1 = u, t0 = 0, t1 = 1;
  mpz_mod(r1.get_mpz_t(), r1.get_mpz_t(), M.get_mpz_t());
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (abs(t1) > bound || t1 == 0) return false;
  if (gcd_z(r1, t1) != 1) return false;
  out = Rational(r1, t1);
  out.canonicalize();
  return true;
}

bool reconstruct_vector(const ZVec& acc, const Integer& M, std::vector<Rational>& out) {
  Integer D = 1, half = M / 2, bound;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  out.assign(acc.size(), Rational(0));
  for (std::size_t i = 0; i < acc.size(); ++i) {
    Integer v = acc[i] * D;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), M.get_mpz_t());
    if (v > half) v -= M;
    if (abs(v) <= bound) {
      out[i] = Rational(v, D);
      out[i].canonicalize();
      continue;
    }
    Rational q;
    if (!rational_reconstruct(v, M, q)) return false;
    D *= q.get_den();
    out[i] = Rational(q.get_num(), D);
    out[i].canonicalize();
  }
  return true;
}

}  // namespace modp

QPoly invert_mod(const QPoly& a, const QPoly& m, const std::function<bool(const QPoly&)>& accept) {
  if (m.degree() <= 0) throw std::domain_error("invert_mod needs a nonconstant modulus");
  QPoly ar = a % m;
  if (ar.is_zero_poly()) throw std::domain_error("zero is not invertible");
  if (ar.degree() == 0) return QPoly::constant(1 / ar.c[0]);
  Integer da = denominators_lcm(ar);
  ZVec A, Mz = primitive_integer(m);
  for (const auto& c : ar.c) A.push_back(Rational(c * da).get_num());
  // The inverse of A modulo Mz is recovered by rational reconstruction from its images
  // modulo many primes and then checked exactly.
  long dm = static_cast<long>(Mz.size()) - 1, dA = static_cast<long>(A.size()) - 1;
  Integer bits = (log2_norm_bound(A) * dm + log2_norm_bound(Mz) * dA + 2) * 2 + 64;
  std::size_t n = Mz.size() - 1;
  ZVec acc(n, Integer(0));
  Integer M = 1;
  std::size_t used = 0, next_check = 2;
  for (std::size_t idx = 0;; ++idx) {
    u64 p = prime_list(idx + 1)[idx];
    if (mod_of(Mz.back(), p) == 0) continue;
    MPoly sp, tp;
    MPoly g = mxgcd(reduce_mod(A, p), reduce_mod(Mz, p), p, sp, tp);
    if (g.size() != 1) continue;
    u64 ginv = inv_mod(g[0], p);
    sp.resize(n, 0);
    for (std::size_t i = 0; i < n; ++i) crt(acc[i], M, sp[i] * ginv % p, p);
    M *= static_cast<unsigned long>(p);
    ++used;
    bool last = mpz_sizeinbase(M.get_mpz_t(), 2) > bits.get_ui();
    if (used < next_check && !last) continue;
    next_check *= 2;
    std::vector<Rational> cand;
    if (reconstruct_vector(acc, M, cand)) {
      for (auto& v : cand) v *= da;
      QPoly inv(cand);
      if (accept ? accept(inv) : (ar * inv % m) == QPoly::constant(1)) return inv;
    }
    if (last) break;
  }
  throw std::domain_error("element not invertible modulo the polynomial");
}

std::vector<QPoly> factor_squarefree_integer(const QPoly& pin) {
  ZVec f = primitive_integer(pin);
  int n = static_cast<int>(f.size()) - 1;
  if (n <= 1) return {from_integer(f)};
  std::vector<QPoly> result;
  if (f[0] == 0) {
    // squarefree, so x divides exactly once
    result.push_back(qpoly({0, 1}));
    f.erase(f.begin());
    if (f.size() <= 2) {
      if (f.size() == 2) result.push_back(from_integer(f));
      return result;
    }
    n = static_cast<int>(f.size()) - 1;
  }
  // Choose a prime giving few modular factors; intersect the possible factor degrees
  // over several primes.
  std::size_t nn = static_cast<std::size_t>(n);
  std::vector<bool> allowed(nn + 1, true);
  std::size_t best_count = nn + 1;
  u64 best_p = 0;
  int tried = 0;
  for (u64 cand = (u64(1) << 30) - 35; tried < 12 && cand > 1000; cand -= 2) {
    if (!is_probable_prime(cand)) continue;
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), f.back().get_mpz_t(), cand);
    if (r == 0) continue;
    MPoly fm = reduce_mod(f, cand);
    MPoly g = mgcd(fm, mderiv(fm, cand), cand);
    if (g.size() > 1) continue;
    ++tried;
    auto degs = factor_degrees_mod_p(fm, cand);
    auto sums = subset_sums(degs, nn);
    for (std::size_t v = 0; v <= nn; ++v) allowed[v] = allowed[v] && sums[v];
    if (degs.size() < best_count) {
      best_count = degs.size();
      best_p = cand;
    }
    bool irreducible = true;
    for (std::size_t v = 1; v < nn; ++v)
      if (allowed[v]) irreducible = false;
    if (irreducible || best_count == 1) {
      result.push_back(from_integer(f));
      return result;
    }
    if (tried >= 4 && best_count <= 6) break;
  }
  std::vector<MPoly> best = factor_mod_p(reduce_mod(f, best_p), best_p);
  // Mignotte-style bound on coefficients of factors, times lc.
  Integer norm2 = 0;
  for (auto& v : f) norm2 += v * v;
  Integer nrm;
  mpz_sqrt(nrm.get_mpz_t(), norm2.get_mpz_t());
  nrm += 1;
  Integer B = nrm * (Integer(1) << static_cast<mp_bitcnt_t>(n)) * abs(f.back()) * 2 + 1;
  Integer M = static_cast<unsigned long>(best_p);
  while (M <= 2 * B) M = M * M;

  std::vector<ZVec> lifted;
  multi_lift(f, best, best_p, M, lifted);

  std::vector<std::size_t> T(lifted.size());
  for (std::size_t i = 0; i < T.size(); ++i) T[i] = i;
  ZVec cur = f;
  std::size_t s = 1;
  while (2 * s <= T.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      Integer lc = cur.back();
      ZVec G{lc}, H{lc};
      std::vector<bool> in(T.size(), false);
      for (auto i : idx) in[i] = true;
      std::size_t deg = 0;
      for (auto i : idx) deg += lifted[T[i]].size() - 1;
      bool plausible = allowed[deg];
      if (plausible && cur[0] != 0) {
        Integer c = lc;
        for (auto i : idx) {
          c *= lifted[T[i]][0];
          mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), M.get_mpz_t());
        }
        if (c > M / 2) c -= M;
        Integer target = lc * cur[0];
        plausible = c != 0 && mpz_divisible_p(target.get_mpz_t(), c.get_mpz_t());
      }
      if (!plausible) {
        std::size_t k = s;
        while (k > 0 && idx[k - 1] == T.size() - s + k - 1) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
        continue;
      }
      for (std::size_t i = 0; i < T.size(); ++i) {
        if (in[i])
          G = zmul(G, lifted[T[i]], M);
        else
          H = zmul(H, lifted[T[i]], M);
      }
      G = zprim(symmetric(G, M));
      H = zprim(symmetric(H, M));
      if (zmul_exact(G, H) == cur) {
        result.push_back(from_integer(G));
        cur = H;
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < T.size(); ++i)
          if (!in[i]) rest.push_back(T[i]);
        T = rest;
        found = true;
        break;
      }
      // next combination
      std::size_t k = s;
      while (k > 0 && idx[k - 1] == T.size() - s + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (cur.size() > 1) result.push_back(from_integer(cur));
  return result;
}

QFactorization factor(const QPoly& p) {
  QFactorization out;
  if (p.is_zero_poly()) throw std::domain_error("factor of the zero polynomial");
  out.content = p.lc();
  if (p.degree() == 0) return out;
  auto sqf = squarefree_decomposition(p);
  Rational prod_lc = 1;
  for (std::size_t i = 0; i < sqf.size(); ++i) {
    if (sqf[i].degree() <= 0) continue;
    for (auto& g : factor_squarefree_integer(sqf[i])) {
      out.factors.emplace_back(g, static_cast<int>(i + 1));
      Rational l = g.lc();
      for (std::size_t k = 0; k <= i; ++k) prod_lc *= l;
    }
  }
  out.content = p.lc() / prod_lc;
  return out;
}

}  // namespace skolem
