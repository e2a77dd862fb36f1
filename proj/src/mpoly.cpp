#include "skolem/mpoly.hpp"

#include <cctype>
#include <sstream>

#include "skolem/laurent.hpp"

namespace skolem {

MPoly MPoly::constant(int nvars, const Rational& c) {
  MPoly p(nvars);
  p.add_term(Monomial(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

MPoly MPoly::var(int nvars, int i) {
  if (i < 0 || i >= nvars) throw DimensionMismatch("variable index out of range");
  MPoly p(nvars);
  Monomial m(static_cast<std::size_t>(nvars), 0);
  m[static_cast<std::size_t>(i)] = 1;
  p.add_term(m, Rational(1));
  return p;
}

bool MPoly::is_constant() const {
  if (t_.empty()) return true;
  if (t_.size() > 1) return false;
  for (int e : t_.begin()->first)
    if (e != 0) return false;
  return true;
}

Rational MPoly::constant_value() const {
  if (t_.empty()) return Rational(0);
  if (!is_constant()) throw std::logic_error("polynomial is not constant");
  return t_.begin()->second;
}

int MPoly::degree(int v) const {
  int d = -1;
  for (const auto& [m, c] : t_) d = std::max(d, m[static_cast<std::size_t>(v)]);
  return d;
}

int MPoly::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : t_) {
    int s = 0;
    for (int e : m) s += e;
    d = std::max(d, s);
  }
  return d;
}

int MPoly::main_var() const {
  int v = -1;
  for (const auto& [m, c] : t_)
    for (int i = n_ - 1; i > v; --i)
      if (m[static_cast<std::size_t>(i)] > 0) {
        v = i;
        break;
      }
  return v;
}

MPoly MPoly::coeff(int v, int k) const {
  MPoly r(n_);
  for (const auto& [m, c] : t_) {
    if (m[static_cast<std::size_t>(v)] != k) continue;
    Monomial mm = m;
    mm[static_cast<std::size_t>(v)] = 0;
    r.add_term(mm, c);
  }
  return r;
}

MPoly MPoly::derivative(int v) const {
  MPoly r(n_);
  for (const auto& [m, c] : t_) {
    int e = m[static_cast<std::size_t>(v)];
    if (e == 0) continue;
    Monomial mm = m;
    mm[static_cast<std::size_t>(v)] = e - 1;
    r.add_term(mm, c * e);
  }
  return r;
}

MPoly MPoly::with_nvars(int n) const {
  MPoly r(n);
  for (const auto& [m, c] : t_) {
    Monomial mm(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (static_cast<int>(i) < n)
        mm[i] = m[i];
      else if (m[i] != 0)
        throw DimensionMismatch("dropping a variable that occurs");
    }
    r.add_term(mm, c);
  }
  return r;
}

void MPoly::add_term(const Monomial& m, const Rational& c) {
  if (static_cast<int>(m.size()) != n_) throw DimensionMismatch("monomial has the wrong length");
  if (sgn(c) == 0) return;
  auto [it, fresh] = t_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (sgn(it->second) == 0) t_.erase(it);
  }
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& [m, c] : r.t_) c = -c;
  return r;
}

MPoly operator+(const MPoly& a, const MPoly& b) {
  if (a.n_ != b.n_) throw DimensionMismatch("polynomials in different variable counts");
  MPoly r = a;
  for (const auto& [m, c] : b.t_) r.add_term(m, c);
  return r;
}

MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.n_ != b.n_) throw DimensionMismatch("polynomials in different variable counts");
  MPoly r(a.n_);
  Monomial m(static_cast<std::size_t>(a.n_));
  for (const auto& [ma, ca] : a.t_)
    for (const auto& [mb, cb] : b.t_) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      r.add_term(m, ca * cb);
    }
  return r;
}

MPoly operator*(const Rational& c, const MPoly& a) {
  MPoly r(a.n_);
  if (sgn(c) == 0) return r;
  r.t_ = a.t_;
  for (auto& [m, v] : r.t_) v *= c;
  return r;
}

MPoly pow(const MPoly& a, unsigned e) {
  MPoly r = MPoly::constant(a.nvars(), Rational(1));
  for (unsigned i = 0; i < e; ++i) r = r * a;
  return r;
}

Rational MPoly::eval(const std::vector<Rational>& x) const {
  Rational acc(0);
  for (const auto& [m, c] : t_) {
    Rational term = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0) term *= pow_q(x.at(i), static_cast<unsigned long>(m[i]));
    acc += term;
  }
  return acc;
}

FieldElement MPoly::eval(const std::vector<FieldElement>& x) const {
  std::vector<std::vector<FieldElement>> powers(static_cast<std::size_t>(n_));
  auto power = [&](std::size_t i, int e) -> const FieldElement& {
    auto& p = powers[i];
    if (p.empty()) p.push_back(FieldElement(1));
    while (static_cast<int>(p.size()) <= e) p.push_back(p.back() * x.at(i));
    return p[static_cast<std::size_t>(e)];
  };
  FieldElement acc;
  for (const auto& [m, c] : t_) {
    FieldElement term(c);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0) term = term * power(i, m[i]);
    acc += term;
  }
  return acc;
}

Interval MPoly::eval(const std::vector<Interval>& x, mpfr_prec_t prec) const {
  Interval acc(0L, prec);
  for (const auto& [m, c] : t_) {
    Interval term(c, prec);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0) term = term * pow(x.at(i), static_cast<unsigned>(m[i]));
    acc = acc + term;
  }
  return acc;
}

QPoly MPoly::univariate(int v, const std::vector<Rational>& prefix) const {
  std::vector<Rational> out(static_cast<std::size_t>(std::max(degree(v), 0) + 1), Rational(0));
  for (const auto& [m, c] : t_) {
    Rational term = c;
    for (int i = 0; i < n_; ++i) {
      int e = m[static_cast<std::size_t>(i)];
      if (i == v || e == 0) continue;
      if (i > v) throw DimensionMismatch("polynomial depends on a later variable");
      term *= pow_q(prefix.at(static_cast<std::size_t>(i)), static_cast<unsigned long>(e));
    }
    out[static_cast<std::size_t>(m[static_cast<std::size_t>(v)])] += term;
  }
  return QPoly(std::move(out));
}

KPoly MPoly::univariate(int v, const std::vector<FieldElement>& prefix) const {
  std::vector<MPoly> cs;
  std::vector<FieldElement> out;
  for (int k = 0; k <= degree(v); ++k) {
    MPoly ck = coeff(v, k);
    if (ck.main_var() > v) throw DimensionMismatch("polynomial depends on a later variable");
    out.push_back(ck.eval(prefix));
  }
  return KPoly(std::move(out));
}

MPoly MPoly::primitive() const {
  if (t_.empty()) return *this;
  Integer den = 1, num = 0;
  for (const auto& [m, c] : t_) den = lcm_z(den, c.get_den());
  for (const auto& [m, c] : t_) num = gcd_z(num, Integer(c.get_num() * (den / c.get_den())));
  Rational scale = Rational(den) / Rational(num);
  if (sgn(t_.rbegin()->second) < 0) scale = -scale;
  MPoly r = scale * *this;
  for (auto& [m, c] : r.t_) c.canonicalize();
  return r;
}

std::string MPoly::str(const std::vector<std::string>& names) const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational a = abs_q(c);
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    bool unit = true;
    for (int e : m) unit = unit && e == 0;
    bool wrote = false;
    if (a != 1 || unit) {
      os << to_string(a);
      wrote = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) os << "*";
      os << (i < names.size() ? names[i] : "x" + std::to_string(i));
      if (m[i] > 1) os << "^" << m[i];
      wrote = true;
    }
  }
  return os.str();
}

MPoly exact_div(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) throw std::logic_error("division by the zero polynomial");
  const auto& [lb, cb] = *b.terms().rbegin();
  MPoly q(a.nvars()), r = a;
  Monomial m(lb.size());
  while (!r.is_zero()) {
    const auto& [lr, cr] = *r.terms().rbegin();
    for (std::size_t i = 0; i < m.size(); ++i) {
      m[i] = lr[i] - lb[i];
      if (m[i] < 0) throw std::logic_error("inexact polynomial division");
    }
    MPoly t(a.nvars());
    t.add_term(m, cr / cb);
    q = q + t;
    r = r - t * b;
  }
  return q;
}

namespace {

MPoly determinant(std::vector<std::vector<MPoly>> M, int nvars) {
  const std::size_t n = M.size();
  if (n == 0) return MPoly::constant(nvars, Rational(1));
  MPoly prev = MPoly::constant(nvars, Rational(1));
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M[k][k].is_zero()) {
      std::size_t i = k + 1;
      while (i < n && M[i][k].is_zero()) ++i;
      if (i == n) return MPoly(nvars);
      std::swap(M[i], M[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) M[i][j] = exact_div(M[i][j] * M[k][k] - M[i][k] * M[k][j], prev);
      M[i][k] = MPoly(nvars);
    }
    prev = M[k][k];
  }
  return negate ? -M[n - 1][n - 1] : M[n - 1][n - 1];
}

}  // namespace

MPoly psc(const MPoly& a, const MPoly& b, int v, int j) {
  const int m = a.degree(v), n = b.degree(v);
  if (m < 0 || n < 0) return MPoly(a.nvars());
  if (j < 0 || j > std::min(m, n)) throw std::logic_error("subresultant index out of range");
  const int size = m + n - 2 * j;
  std::vector<MPoly> ca, cb;
  for (int k = 0; k <= m; ++k) ca.push_back(a.coeff(v, k));
  for (int k = 0; k <= n; ++k) cb.push_back(b.coeff(v, k));
  std::vector<std::vector<MPoly>> M;
  auto row = [&](const std::vector<MPoly>& c, int shift) {
    std::vector<MPoly> r;
    for (int col = 0; col < size; ++col) {
      int power = m + n - j - 1 - col - shift;
      r.push_back(power >= 0 && power < static_cast<int>(c.size()) ? c[static_cast<std::size_t>(power)]
                                                                    : MPoly(a.nvars()));
    }
    M.push_back(std::move(r));
  };
  for (int s = n - j - 1; s >= 0; --s) row(ca, s);
  for (int s = m - j - 1; s >= 0; --s) row(cb, s);
  return determinant(std::move(M), a.nvars());
}

MPoly resultant(const MPoly& a, const MPoly& b, int v) { return psc(a, b, v, 0); }

MPoly discriminant(const MPoly& a, int v) { return resultant(a, a.derivative(v), v); }

std::vector<MPoly> irreducible_factors(const MPoly& a, int max_degree) {
  if (a.is_zero()) throw InvalidInput("factoring the zero polynomial");
  if (a.is_constant()) return {};
  const int n = a.nvars();
  LaurentPoly L(nullptr, n, 0);
  for (const auto& [m, c] : a.terms()) {
    Exponent e{0};
    for (int x : m) e.push_back(x);
    L.add_term(e, FieldElement(c));
  }
  LaurentConfig cfg;
  cfg.max_vars = std::max(cfg.max_vars, n + 1);
  cfg.max_degree = max_degree;
  std::vector<MPoly> out;
  LaurentFactorization f;
  try {
    f = factor(L, cfg);
  } catch (const SizeCapExceeded&) {
    return {a.primitive()};
  }
  for (int i = 0; i < n; ++i)
    if (f.unit_exp[static_cast<std::size_t>(1 + i)] > 0) out.push_back(MPoly::var(n, i));
  for (const auto& [g, mult] : f.factors) {
    MPoly p(n);
    for (const auto& [e, c] : g.terms()) {
      if (!c.is_rational()) return {a.primitive()};
      p.add_term(Monomial(e.begin() + 1, e.end()), c.rational_value());
    }
    out.push_back(p.primitive());
  }
  return out;
}

MPoly parse_mpoly(const std::string& text, const std::vector<std::string>& names) {
  const int n = static_cast<int>(names.size());
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& why) {
    throw ParseError("polynomial \"" + text + "\" at offset " + std::to_string(pos) + ": " + why);
  };
  MPoly out(n);
  skip();
  if (pos == text.size()) fail("empty input");
  while (pos < text.size()) {
    int sign = 1;
    skip();
    while (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      if (text[pos] == '-') sign = -sign;
      ++pos;
      skip();
    }
    Rational coef(sign);
    Monomial m(static_cast<std::size_t>(n), 0);
    bool any = false;
    while (true) {
      skip();
      if (pos >= text.size()) break;
      char ch = text[pos];
      if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
        std::size_t start = pos;
        while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/' ||
                                     text[pos] == '.'))
          ++pos;
        coef *= parse_rational(text.substr(start, pos - start));
      } else if (std::isalpha(static_cast<unsigned char>(ch))) {
        std::size_t start = pos;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
        std::string name = text.substr(start, pos - start);
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) fail("unknown variable " + name);
        int e = 1;
        skip();
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          skip();
          std::size_t s2 = pos;
          while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
          if (s2 == pos) fail("expected an exponent");
          e = std::stoi(text.substr(s2, pos - s2));
        }
        m[static_cast<std::size_t>(it - names.begin())] += e;
      } else {
        fail(std::string("unexpected character '") + ch + "'");
      }
      any = true;
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (!any) fail("empty term");
    out.add_term(m, coef);
    skip();
    if (pos < text.size() && text[pos] != '+' && text[pos] != '-') fail("expected + or -");
  }
  return out;
}

}  // namespace skolem
