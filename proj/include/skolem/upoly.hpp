#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "skolem/rational.hpp"

namespace skolem {

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_one(const Rational& q) { return q == 1; }

// Dense univariate polynomial over a field C, coefficients stored constant term first.
template <class C>
class UPoly {
 public:
  std::vector<C> c;

  UPoly() = default;
  explicit UPoly(std::vector<C> coeffs) : c(std::move(coeffs)) { normalize(); }
  static UPoly constant(const C& v) { return UPoly(std::vector<C>{v}); }
  static UPoly monomial(const C& v, int k) {
    std::vector<C> cs(static_cast<std::size_t>(k) + 1, C(0));
    cs[static_cast<std::size_t>(k)] = v;
    return UPoly(std::move(cs));
  }
  static UPoly x() { return monomial(C(1), 1); }

  void normalize() {
    while (!c.empty() && is_zero(c.back())) c.pop_back();
  }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero_poly() const { return c.empty(); }
  bool is_constant() const { return c.size() <= 1; }
  const C& lc() const { return c.back(); }
  C coeff(int i) const { return (i >= 0 && i < static_cast<int>(c.size())) ? c[static_cast<std::size_t>(i)] : C(0); }

  C eval(const C& v) const {
    C acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * v + *it;
    return acc;
  }

  UPoly derivative() const {
    std::vector<C> d;
    for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * C(static_cast<long>(i)));
    return UPoly(std::move(d));
  }

  UPoly monic() const {
    if (c.empty()) return *this;
    C inv = C(1) / lc();
    UPoly r = *this;
    for (auto& v : r.c) v = v * inv;
    return r;
  }

  friend bool operator==(const UPoly& a, const UPoly& b) {
    if (a.c.size() != b.c.size()) return false;
    for (std::size_t i = 0; i < a.c.size(); ++i)
      if (!(a.c[i] == b.c[i])) return false;
    return true;
  }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<C> r(std::max(a.c.size(), b.c.size()), C(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r[i] = r[i] + a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r[i] = r[i] + b.c[i];
    return UPoly(std::move(r));
  }
  friend UPoly operator-(const UPoly& a) {
    UPoly r = a;
    for (auto& v : r.c) v = C(0) - v;
    return r;
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.c.empty() || b.c.empty()) return UPoly();
    std::vector<C> r(a.c.size() + b.c.size() - 1, C(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      if (is_zero(a.c[i])) continue;
      for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] = r[i + j] + a.c[i] * b.c[j];
    }
    return UPoly(std::move(r));
  }
  friend UPoly operator*(const C& s, const UPoly& a) {
    UPoly r = a;
    for (auto& v : r.c) v = s * v;
    r.normalize();
    return r;
  }
  UPoly& operator+=(const UPoly& b) { return *this = *this + b; }
  UPoly& operator-=(const UPoly& b) { return *this = *this - b; }
  UPoly& operator*=(const UPoly& b) { return *this = *this * b; }
};

template <class C>
std::pair<UPoly<C>, UPoly<C>> divmod(const UPoly<C>& a, const UPoly<C>& b) {
  if (b.is_zero_poly()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {UPoly<C>(), a};
  std::vector<C> rem = a.c;
  int db = b.degree();
  std::vector<C> quo(static_cast<std::size_t>(a.degree() - db + 1), C(0));
  C inv = C(1) / b.lc();
  for (int k = a.degree() - db; k >= 0; --k) {
    C q = rem[static_cast<std::size_t>(k + db)] * inv;
    quo[static_cast<std::size_t>(k)] = q;
    if (is_zero(q)) continue;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(k + j)] = rem[static_cast<std::size_t>(k + j)] - q * b.c[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {UPoly<C>(std::move(quo)), UPoly<C>(std::move(rem))};
}

template <class C>
UPoly<C> operator%(const UPoly<C>& a, const UPoly<C>& b) {
  return divmod(a, b).second;
}

template <class C>
UPoly<C> operator/(const UPoly<C>& a, const UPoly<C>& b) {
  return divmod(a, b).first;
}

template <class C>
UPoly<C> gcd(UPoly<C> a, UPoly<C> b) {
  while (!b.is_zero_poly()) {
    UPoly<C> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// s*a + t*b = g (monic gcd).
template <class C>
UPoly<C> xgcd(const UPoly<C>& a, const UPoly<C>& b, UPoly<C>& s, UPoly<C>& t) {
  UPoly<C> r0 = a, r1 = b;
  UPoly<C> s0 = UPoly<C>::constant(C(1)), s1;
  UPoly<C> t0, t1 = UPoly<C>::constant(C(1));
  while (!r1.is_zero_poly()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    UPoly<C> s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    UPoly<C> t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero_poly()) {
    s = UPoly<C>();
    t = UPoly<C>();
    return r0;
  }
  C inv = C(1) / r0.lc();
  s = inv * s0;
  t = inv * t0;
  return inv * r0;
}

template <class C>
UPoly<C> pow(const UPoly<C>& a, unsigned n) {
  UPoly<C> r = UPoly<C>::constant(C(1));
  UPoly<C> base = a;
  while (n) {
    if (n & 1u) r = r * base;
    n >>= 1u;
    if (n) base = base * base;
  }
  return r;
}

// p(x + s)
template <class C>
UPoly<C> taylor_shift(const UPoly<C>& p, const C& s) {
  UPoly<C> r;
  UPoly<C> lin(std::vector<C>{s, C(1)});
  for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) r = r * lin + UPoly<C>::constant(*it);
  return r;
}

// p(q(x))
template <class C>
UPoly<C> compose(const UPoly<C>& p, const UPoly<C>& q) {
  UPoly<C> r;
  for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) r = r * q + UPoly<C>::constant(*it);
  return r;
}

template <class C>
C resultant(UPoly<C> f, UPoly<C> g) {
  if (f.is_zero_poly() || g.is_zero_poly()) return C(0);
  C acc(1);
  // res(f, g) with the convention res(f, g) = lc(f)^deg g * prod g(roots of f).
  while (true) {
    int m = f.degree(), n = g.degree();
    if (n == 0) {
      C v(1);
      for (int i = 0; i < m; ++i) v = v * g.c[0];
      return acc * v;
    }
    if (m == 0) {
      C v(1);
      for (int i = 0; i < n; ++i) v = v * f.c[0];
      return acc * v;
    }
    if (m < n) {
      if ((m * n) % 2 == 1) acc = C(0) - acc;
      std::swap(f, g);
      continue;
    }
    // m >= n: res(f,g) = (-1)^{mn} res(g,f) = (-1)^{mn} lc(g)^{m-k} res(g, r)
    UPoly<C> r = f % g;
    if (r.is_zero_poly()) return C(0);
    int k = r.degree();
    if ((m * n) % 2 == 1) acc = C(0) - acc;
    for (int i = 0; i < m - k; ++i) acc = acc * g.lc();
    f = std::move(g);
    g = std::move(r);
  }
}

// Yun's square-free decomposition: returns (a_1, a_2, ...) with p = lc * prod a_i^i.
template <class C>
std::vector<UPoly<C>> squarefree_decomposition(const UPoly<C>& p) {
  std::vector<UPoly<C>> out;
  if (p.degree() <= 0) return out;
  UPoly<C> f = p.monic();
  UPoly<C> df = f.derivative();
  UPoly<C> a0 = gcd(f, df);
  UPoly<C> b = f / a0;
  UPoly<C> c = df / a0;
  UPoly<C> d = c - b.derivative();
  while (b.degree() > 0) {
    UPoly<C> a = gcd(b, d);
    out.push_back(a);
    b = b / a;
    c = d / a;
    d = c - b.derivative();
  }
  while (!out.empty() && out.back().degree() == 0) out.pop_back();
  return out;
}

template <class C>
UPoly<C> squarefree_part(const UPoly<C>& p) {
  if (p.degree() <= 0) return p;
  return (p / gcd(p, p.derivative())).monic();
}

}  // namespace skolem
