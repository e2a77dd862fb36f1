#include "skolem/laurent.hpp"

#include <cctype>
#include <functional>
#include <sstream>

#include "skolem/kpoly.hpp"

namespace skolem {

namespace {

FieldPtr merge_field(const FieldPtr& a, const FieldPtr& b) {
  if (a && b && a != b) throw std::logic_error("Laurent polynomials over different fields");
  return a ? a : b;
}

void same_shape(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.r() != b.r() || a.s() != b.s()) throw DimensionMismatch("Laurent polynomials with different variable sets");
}

Exponent add_exp(const Exponent& a, const Exponent& b) {
  Exponent e(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) e[i] = a[i] + b[i];
  return e;
}

Exponent neg_exp(const Exponent& a) {
  Exponent e(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) e[i] = -a[i];
  return e;
}

}  // namespace

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly LaurentPoly::constant(FieldPtr K, int r, int s, const FieldElement& c) {
  return monomial(std::move(K), r, s, Exponent(static_cast<std::size_t>(1 + r + s), 0), c);
}

LaurentPoly LaurentPoly::monomial(FieldPtr K, int r, int s, Exponent e, const FieldElement& c) {
  LaurentPoly p(std::move(K), r, s);
  p.add_term(e, c);
  return p;
}

void LaurentPoly::check_shape(const Exponent& e) const {
  if (e.size() != static_cast<std::size_t>(nvars())) throw DimensionMismatch("exponent vector has the wrong length");
  if (e[0] < 0) throw InvalidInput("negative power of x");
}

FieldElement LaurentPoly::coeff(const Exponent& e) const {
  auto it = t_.find(e);
  return it == t_.end() ? FieldElement() : it->second;
}

void LaurentPoly::add_term(const Exponent& e, const FieldElement& c) {
  check_shape(e);
  if (c.is_zero()) return;
  K_ = merge_field(K_, c.field());
  auto it = t_.find(e);
  if (it == t_.end()) {
    t_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

Exponent LaurentPoly::min_exponents() const {
  Exponent m(static_cast<std::size_t>(nvars()), 0);
  bool first = true;
  for (const auto& [e, c] : t_) {
    for (std::size_t i = 0; i < e.size(); ++i) m[i] = first ? e[i] : std::min(m[i], e[i]);
    first = false;
  }
  return m;
}

Exponent LaurentPoly::max_exponents() const {
  Exponent m(static_cast<std::size_t>(nvars()), 0);
  bool first = true;
  for (const auto& [e, c] : t_) {
    for (std::size_t i = 0; i < e.size(); ++i) m[i] = first ? e[i] : std::max(m[i], e[i]);
    first = false;
  }
  return m;
}

long LaurentPoly::total_degree() const {
  Exponent m = min_exponents();
  long best = 0;
  for (const auto& [e, c] : t_) {
    long d = 0;
    for (std::size_t i = 0; i < e.size(); ++i) d += e[i] - m[i];
    best = std::max(best, d);
  }
  return best;
}

LaurentPoly LaurentPoly::shifted(const Exponent& by) const {
  LaurentPoly out(K_, r_, s_);
  for (const auto& [e, c] : t_) out.t_.emplace(add_exp(e, by), c);
  for (const auto& [e, c] : out.t_)
    if (e[0] < 0) throw InvalidInput("negative power of x");
  return out;
}

LaurentPoly LaurentPoly::in_field(const FieldPtr& K) const {
  LaurentPoly out(K, r_, s_);
  for (const auto& [e, c] : t_) out.t_.emplace(e, c.field() ? c : c.in_field(K));
  return out;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = *this;
  for (auto& [e, c] : out.t_) c = -c;
  return out;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  same_shape(a, b);
  LaurentPoly out = a;
  out.K_ = merge_field(a.K_, b.K_);
  for (const auto& [e, c] : b.t_) out.add_term(e, c);
  return out;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  same_shape(a, b);
  LaurentPoly out(merge_field(a.K_, b.K_), a.r_, a.s_);
  for (const auto& [ea, ca] : a.t_)
    for (const auto& [eb, cb] : b.t_) out.add_term(add_exp(ea, eb), ca * cb);
  return out;
}

LaurentPoly operator*(const FieldElement& c, const LaurentPoly& a) {
  LaurentPoly out(merge_field(a.K_, c.field()), a.r_, a.s_);
  if (c.is_zero()) return out;
  for (const auto& [e, v] : a.t_) out.t_.emplace(e, c * v);
  return out;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  return a.r_ == b.r_ && a.s_ == b.s_ && a.t_ == b.t_;
}

CInterval LaurentPoly::eval(const CInterval& x, const std::vector<CInterval>& y, const std::vector<CInterval>& z,
                            mpfr_prec_t prec) const {
  if (y.size() != static_cast<std::size_t>(r_) || z.size() != static_cast<std::size_t>(s_))
    throw DimensionMismatch("wrong number of evaluation points");
  auto power = [&](const CInterval& v, long k) {
    if (k >= 0) return cpow(v, static_cast<unsigned>(k));
    CInterval one(Interval(1L, prec), Interval(prec));
    return one / cpow(v, static_cast<unsigned>(-k));
  };
  CInterval acc(prec);
  for (const auto& [e, c] : t_) {
    CInterval m = c.approx(prec) * power(x, e[0]);
    for (int j = 0; j < r_; ++j) m = m * power(y[static_cast<std::size_t>(j)], e[static_cast<std::size_t>(1 + j)]);
    for (int k = 0; k < s_; ++k) m = m * power(z[static_cast<std::size_t>(k)], e[static_cast<std::size_t>(1 + r_ + k)]);
    acc = acc + m;
  }
  return acc;
}

std::string LaurentPoly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : t_) {
    std::ostringstream mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      std::string name = i == 0 ? "x" : i <= static_cast<std::size_t>(r_) ? "y" + std::to_string(i) : "z" + std::to_string(i - static_cast<std::size_t>(r_));
      mono << "*" << name;
      if (e[i] != 1) mono << "^" << e[i];
    }
    std::string m = mono.str();
    std::string coef;
    bool negative = false;
    if (c.is_rational()) {
      Rational q = c.rational_value();
      negative = sgn(q) < 0;
      Rational aq = abs_q(q);
      coef = aq == 1 && !m.empty() ? "" : aq.get_str();
    } else {
      coef = "[";
      for (std::size_t i = 0; i < c.coords().size(); ++i) coef += (i ? "," : "") + c.coords()[i].get_str();
      coef += "]";
    }
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (coef.empty()) os << m.substr(1);
    else os << coef << m;
  }
  return os.str();
}

LaurentPoly conjugate(const LaurentPoly& p) {
  LaurentPoly out(p.field(), p.r(), p.s());
  for (const auto& [e, c] : p.terms()) {
    Exponent f = e;
    for (int k = 0; k < p.s(); ++k) f[static_cast<std::size_t>(1 + p.r() + k)] = -f[static_cast<std::size_t>(1 + p.r() + k)];
    out.add_term(f, c.conj());
  }
  return out;
}

// ---------------------------------------------------------------- division

std::optional<LaurentPoly> divide(const LaurentPoly& a, const LaurentPoly& b) {
  same_shape(a, b);
  if (b.is_zero()) throw std::domain_error("division by the zero Laurent polynomial");
  FieldPtr K = merge_field(a.field(), b.field());
  if (a.is_zero()) return LaurentPoly(K, a.r(), a.s());
  Exponent ma = a.min_exponents(), mb = b.min_exponents();
  // Lowest degrees add under multiplication, so the quotient of the shifted polynomials
  // is an ordinary polynomial.
  LaurentPoly A = a.shifted(neg_exp(ma)), B = b.shifted(neg_exp(mb));
  Exponent MA = A.max_exponents(), MB = B.max_exponents();
  for (std::size_t i = 0; i < MA.size(); ++i)
    if (MB[i] > MA[i]) return std::nullopt;
  std::map<Exponent, FieldElement> R = A.terms();
  const auto& [eb, cb] = *B.terms().rbegin();
  FieldElement inv = cb.inverse();
  LaurentPoly Q(K, a.r(), a.s());
  while (!R.empty()) {
    auto top = std::prev(R.end());
    Exponent e(top->first.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] = top->first[i] - eb[i];
      if (e[i] < 0 || e[i] > MA[i] - MB[i]) return std::nullopt;
    }
    FieldElement c = top->second * inv;
    Q.add_term(e, c);
    for (const auto& [f, v] : B.terms()) {
      Exponent g = add_exp(e, f);
      auto it = R.find(g);
      FieldElement delta = c * v;
      if (it == R.end()) {
        R.emplace(g, -delta);
      } else {
        it->second -= delta;
        if (it->second.is_zero()) R.erase(it);
      }
    }
  }
  Exponent shift(ma.size());
  for (std::size_t i = 0; i < ma.size(); ++i) shift[i] = ma[i] - mb[i];
  if (shift[0] < 0) return std::nullopt;
  return Q.shifted(shift);
}

bool divides(const LaurentPoly& b, const LaurentPoly& a) { return divide(a, b).has_value(); }

// ---------------------------------------------------------------- to_laurent

LaurentForm to_laurent(const ExpPoly& f) {
  LaurentForm out;
  std::vector<FieldElement> res, ims;
  for (const auto& t : f.terms()) {
    res.push_back(t.lambda.re());
    ims.push_back(t.lambda.im());
    out.basis.lambdas.push_back(t.lambda);
  }
  QBasis A = rational_basis(res), B = rational_basis(ims);
  out.basis.a = A.basis;
  out.basis.b = B.basis;
  out.basis.re_coords = A.coords;
  out.basis.im_coords = B.coords;
  int r = static_cast<int>(A.basis.size()), s = static_cast<int>(B.basis.size());
  LaurentPoly P(f.field(), r, s);
  auto small = [](const Integer& v) {
    if (!v.fits_slong_p()) throw SizeCapExceeded("exponent out of range");
    return v.get_si();
  };
  for (std::size_t j = 0; j < f.terms().size(); ++j) {
    const auto& poly = f.terms()[j].poly;
    for (std::size_t k = 0; k < poly.size(); ++k) {
      Exponent e{static_cast<long>(k)};
      for (int i = 0; i < r; ++i) e.push_back(small(A.coords[j][static_cast<std::size_t>(i)]));
      for (int i = 0; i < s; ++i) e.push_back(small(B.coords[j][static_cast<std::size_t>(i)]));
      P.add_term(e, poly[k]);
    }
  }
  out.P = P;
  return out;
}

// ---------------------------------------------------------------- factor

LaurentPoly normalize(const LaurentPoly& p) {
  if (p.is_zero()) return p;
  LaurentPoly q = p.shifted(neg_exp(p.min_exponents()));
  return q.first_term().second.inverse() * q;
}

LaurentPoly LaurentFactorization::reassemble(const FieldPtr& K, int r, int s) const {
  LaurentPoly out = LaurentPoly::monomial(K, r, s, unit_exp, unit_coeff);
  for (const auto& [f, m] : factors)
    for (int k = 0; k < m; ++k) out = out * f;
  return out;
}

namespace {

struct Kronecker {
  std::vector<long> radix, weight;
  long limit = 1;

  explicit Kronecker(const Exponent& maxdeg) {
    for (long d : maxdeg) {
      weight.push_back(limit);
      radix.push_back(d + 1);
      limit *= d + 1;
    }
  }

  KPoly image(const LaurentPoly& p) const {
    std::vector<FieldElement> c(static_cast<std::size_t>(limit));
    for (const auto& [e, v] : p.terms()) {
      long n = 0;
      for (std::size_t i = 0; i < e.size(); ++i) n += e[i] * weight[i];
      c[static_cast<std::size_t>(n)] = v;
    }
    return KPoly(c);
  }

  std::optional<LaurentPoly> preimage(const KPoly& h, const FieldPtr& K, int r, int s) const {
    if (h.degree() >= limit) return std::nullopt;
    LaurentPoly out(K, r, s);
    for (std::size_t n = 0; n < h.c.size(); ++n) {
      if (h.c[n].is_zero()) continue;
      Exponent e(radix.size());
      long rest = static_cast<long>(n);
      for (std::size_t i = 0; i < radix.size(); ++i) {
        e[i] = rest % radix[i];
        rest /= radix[i];
      }
      out.add_term(e, h.c[n]);
    }
    return out;
  }
};

KPoly kpow(const KPoly& g, int k) {
  KPoly out = KPoly::constant(FieldElement(1));
  for (int i = 0; i < k; ++i) out = out * g;
  return out;
}

// Irreducible factors of a polynomial with nonnegative exponents and no monomial content.
std::vector<std::pair<LaurentPoly, int>> factor_polynomial(const LaurentPoly& A, const LaurentConfig& cfg) {
  FieldPtr K = A.field();
  int r = A.r(), s = A.s();
  Kronecker kr(A.max_exponents());
  KPoly g = kr.image(A);
  int fd = K ? K->degree() : 1;
  if (static_cast<long>(g.degree()) * fd > cfg.max_norm_degree)
    throw SizeCapExceeded("univariate image of degree " + std::to_string(g.degree()) + " over a field of degree " +
                          std::to_string(fd) + " is beyond the factorization cap");
  struct Item {
    KPoly g;
    int avail;
  };
  std::vector<Item> items;
  int total = 0;
  for (auto& [h, m] : factor_over_field(g)) {
    items.push_back({h, m});
    total += m;
  }
  std::vector<std::pair<LaurentPoly, int>> found;
  LaurentPoly rest = A;
  long budget = 0;
  std::vector<int> cnt(items.size(), 0);
  std::function<bool(std::size_t, int)> search;
  auto try_candidate = [&]() -> bool {
    if (++budget > cfg.max_recombinations) throw SizeCapExceeded("factor recombination budget exhausted");
    KPoly h = KPoly::constant(FieldElement(1));
    for (std::size_t k = 0; k < items.size(); ++k)
      if (cnt[k] > 0) h = h * kpow(items[k].g, cnt[k]);
    auto F = kr.preimage(h, K, r, s);
    if (!F || F->total_degree() == 0) return false;
    Exponent MF = F->max_exponents(), MR = rest.max_exponents();
    for (std::size_t i = 0; i < MF.size(); ++i)
      if (MF[i] > MR[i]) return false;
    int mult = 0;
    for (;;) {
      bool room = true;
      for (std::size_t k = 0; k < items.size(); ++k) room = room && cnt[k] <= items[k].avail;
      if (!room) break;
      auto q = divide(rest, *F);
      if (!q) break;
      rest = *q;
      ++mult;
      for (std::size_t k = 0; k < items.size(); ++k) items[k].avail -= cnt[k];
    }
    if (mult == 0) return false;
    int size = 0;
    for (int c : cnt) size += c;
    total -= mult * size;
    found.push_back({normalize(*F), mult});
    return true;
  };
  search = [&](std::size_t k, int left) -> bool {
    if (left == 0) return try_candidate();
    if (k == items.size()) return false;
    for (int c = std::min(left, items[k].avail); c >= 0; --c) {
      cnt[k] = c;
      if (search(k + 1, left - c)) {
        cnt[k] = 0;
        return true;
      }
    }
    cnt[k] = 0;
    return false;
  };
  for (int size = 1; 2 * size <= total;) {
    std::fill(cnt.begin(), cnt.end(), 0);
    if (!search(0, size)) ++size;
  }
  if (rest.total_degree() > 0) found.push_back({normalize(rest), 1});
  return found;
}

}  // namespace

LaurentFactorization factor(const LaurentPoly& p, const LaurentConfig& cfg) {
  if (p.is_zero()) throw InvalidInput("cannot factor the zero polynomial");
  if (p.nvars() > cfg.max_vars)
    throw SizeCapExceeded(std::to_string(p.nvars()) + " variables exceed the cap of " + std::to_string(cfg.max_vars));
  if (p.total_degree() > cfg.max_degree)
    throw SizeCapExceeded("total degree " + std::to_string(p.total_degree()) + " exceeds the cap of " +
                          std::to_string(cfg.max_degree));
  LaurentFactorization out;
  Exponent m = p.min_exponents();
  LaurentPoly A = p.shifted(neg_exp(m));
  out.unit_exp = m;
  out.unit_exp[0] = 0;
  out.unit_coeff = A.first_term().second;
  if (m[0] > 0) {
    Exponent ex(m.size(), 0);
    ex[0] = 1;
    out.factors.push_back({LaurentPoly::monomial(p.field(), p.r(), p.s(), ex), static_cast<int>(m[0])});
  }
  if (A.total_degree() > 0)
    for (auto& f : factor_polynomial(A, cfg)) out.factors.push_back(f);
  if (out.reassemble(p.field(), p.r(), p.s()) != p) throw std::logic_error("factorization does not reassemble");
  return out;
}

// ---------------------------------------------------------------- classification

TypeTag classify(const LaurentPoly& p, const FieldConfig& cfg) {
  if (p.is_zero()) throw InvalidInput("cannot classify the zero polynomial");
  TypeTag tag;
  tag.normalized = p;
  tag.beta = FieldElement(1);
  LaurentPoly C = conjugate(p);
  Exponent mp = p.min_exponents(), mc = C.min_exponents();
  LaurentPoly Ps = p.shifted(neg_exp(mp)), Cs = C.shifted(neg_exp(mc));
  FieldElement c = Ps.first_term().second / Cs.first_term().second;
  if (Ps != c * Cs) return tag;
  // p = c z^u conj(p)
  std::vector<long> u(static_cast<std::size_t>(p.s()));
  bool nonconstant = false;
  for (int k = 0; k < p.s(); ++k) {
    std::size_t idx = static_cast<std::size_t>(1 + p.r() + k);
    u[static_cast<std::size_t>(k)] = mp[idx] - mc[idx];
    nonconstant = nonconstant || u[static_cast<std::size_t>(k)] != 0;
  }
  tag.kind = nonconstant ? PolyType::Type3 : PolyType::Type2;
  tag.u = nonconstant ? u : std::vector<long>{};
  // beta / conj(beta) = conj(c) makes beta*p fixed by the twisted conjugation.
  LaurentPoly P = p;
  if (c != FieldElement(-1)) {
    tag.beta = FieldElement(1) + c.conj();
  } else {
    FieldPtr K = p.field();
    if (!K || !K->has_imaginary_unit()) {
      AlgebraicNumber i_num = AlgebraicNumber::complex_root(qpoly({1, 0, 1}), {Rational(0), Rational(1), Rational(1, 2), false});
      if (!K) {
        FieldBuild fb = make_field_numbers({i_num}, cfg);
        P = p.in_field(fb.field);
        tag.beta = fb.embeddings[0];
      } else {
        FieldExtension ext = extend_field(K, {i_num}, cfg);
        LaurentPoly lifted(ext.field, p.r(), p.s());
        for (const auto& [e, v] : p.terms()) lifted.add_term(e, lift_element(v, ext));
        P = lifted;
        tag.beta = ext.embeddings[0];
      }
    } else {
      tag.beta = K->imaginary_unit();
    }
  }
  tag.normalized = tag.beta * P;
  Exponent zu(static_cast<std::size_t>(p.nvars()), 0);
  for (int k = 0; k < p.s(); ++k) zu[static_cast<std::size_t>(1 + p.r() + k)] = u[static_cast<std::size_t>(k)];
  if (conjugate(tag.normalized).shifted(zu) != tag.normalized) throw std::logic_error("type normalization failed");
  return tag;
}

LaurentPoly split_type3(const LaurentPoly& p, const std::vector<long>& u) {
  if (u.size() != static_cast<std::size_t>(p.s())) throw DimensionMismatch("unit exponent has the wrong length");
  Exponent zu(static_cast<std::size_t>(p.nvars()), 0);
  for (int k = 0; k < p.s(); ++k) zu[static_cast<std::size_t>(1 + p.r() + k)] = u[static_cast<std::size_t>(k)];
  if (conjugate(p).shifted(zu) != p) throw InvalidInput("polynomial is not fixed by z^u times conjugation");
  LaurentPoly Q(p.field(), p.r(), p.s());
  bool moved = false;
  for (const auto& [e, c] : p.terms()) {
    Exponent partner = e;
    for (int k = 0; k < p.s(); ++k) {
      std::size_t idx = static_cast<std::size_t>(1 + p.r() + k);
      partner[idx] = zu[idx] - e[idx];
    }
    if (partner == e) {
      Q.add_term(e, c * FieldElement(Rational(1, 2)));
    } else if (partner < e) {
      Q.add_term(e, c);
      moved = true;
    }
  }
  if (!moved) throw FixedCase("every monomial is fixed by z^u times conjugation");
  if (Q + conjugate(Q).shifted(zu) != p) throw std::logic_error("orbit split does not reassemble");
  if (divides(p, Q)) throw std::logic_error("split part is divisible by the polynomial");
  return Q;
}

LaurentPoly derivative_poly(const LaurentPoly& p, const SpectralBasis& basis) {
  if (basis.a.size() != static_cast<std::size_t>(p.r()) || basis.b.size() != static_cast<std::size_t>(p.s()))
    throw DimensionMismatch("basis does not match the polynomial's variables");
  LaurentPoly out(p.field(), p.r(), p.s());
  std::optional<FieldElement> i_unit;
  for (const auto& [e, c] : p.terms()) {
    if (e[0] > 0) {
      Exponent d = e;
      --d[0];
      out.add_term(d, c * FieldElement(e[0]));
    }
    FieldElement rate;
    for (int j = 0; j < p.r(); ++j) rate += basis.a[static_cast<std::size_t>(j)] * FieldElement(e[static_cast<std::size_t>(1 + j)]);
    FieldElement spin;
    for (int k = 0; k < p.s(); ++k)
      spin += basis.b[static_cast<std::size_t>(k)] * FieldElement(e[static_cast<std::size_t>(1 + p.r() + k)]);
    if (!spin.is_zero()) {
      if (!i_unit) {
        FieldPtr K = merge_field(p.field(), spin.field());
        if (!K || !K->has_imaginary_unit()) throw std::logic_error("derivative polynomial needs i in the field");
        i_unit = K->imaginary_unit();
      }
      rate += *i_unit * spin;
    }
    out.add_term(e, c * rate);
  }
  return out;
}

ExpPoly to_exppoly(const LaurentPoly& p, const SpectralBasis& basis) {
  if (basis.a.size() != static_cast<std::size_t>(p.r()) || basis.b.size() != static_cast<std::size_t>(p.s()))
    throw DimensionMismatch("basis does not match the polynomial's variables");
  std::vector<ExpTerm> terms;
  FieldPtr K = p.field();
  for (const auto& [e, c] : p.terms()) {
    FieldElement rate, spin;
    for (int j = 0; j < p.r(); ++j) rate += basis.a[static_cast<std::size_t>(j)] * FieldElement(e[static_cast<std::size_t>(1 + j)]);
    for (int k = 0; k < p.s(); ++k)
      spin += basis.b[static_cast<std::size_t>(k)] * FieldElement(e[static_cast<std::size_t>(1 + p.r() + k)]);
    if (!spin.is_zero()) {
      FieldPtr F = merge_field(K, spin.field());
      if (!F || !F->has_imaginary_unit()) throw std::logic_error("oscillating term needs i in the field");
      rate += F->imaginary_unit() * spin;
    }
    Coeffs poly(static_cast<std::size_t>(e[0] + 1), FieldElement(0));
    poly.back() = c;
    terms.push_back({rate, std::move(poly)});
  }
  return ExpPoly::make(K, std::move(terms));
}

// ---------------------------------------------------------------- text form

LaurentPoly parse_laurent(const std::string& text, const FieldPtr& K, int r, int s) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) -> void {
    throw ParseError("Laurent polynomial: " + why + " at offset " + std::to_string(pos));
  };
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto number = [&]() -> std::string {
    std::size_t b = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/' || text[pos] == '.')) ++pos;
    return text.substr(b, pos - b);
  };
  LaurentPoly out(K, r, s);
  std::size_t nv = static_cast<std::size_t>(1 + r + s);
  skip();
  if (text.substr(pos) == "0") return out;
  bool first = true;
  while (true) {
    skip();
    if (pos >= text.size()) {
      if (first) fail("empty input");
      break;
    }
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      fail("expected + or -");
    }
    first = false;
    FieldElement coef(sign);
    Exponent e(nv, 0);
    while (true) {
      skip();
      if (pos >= text.size()) fail("missing factor");
      char ch = text[pos];
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        coef = coef * FieldElement(parse_rational(number()));
      } else if (ch == '[') {
        ++pos;
        std::vector<Rational> coords;
        while (true) {
          skip();
          coords.push_back(parse_rational(number()));
          skip();
          if (pos < text.size() && text[pos] == ',') {
            ++pos;
            continue;
          }
          if (pos < text.size() && text[pos] == ']') {
            ++pos;
            break;
          }
          fail("malformed coordinate list");
        }
        if (!K) fail("coordinates need a number field");
        coef = coef * K->element(coords);
      } else if (ch == 'i' && (pos + 1 >= text.size() || !std::isalnum(static_cast<unsigned char>(text[pos + 1])))) {
        ++pos;
        if (!K || !K->has_imaginary_unit()) fail("i is not in the field");
        coef = coef * K->imaginary_unit();
      } else if (ch == 'x' || ch == 'y' || ch == 'z') {
        ++pos;
        std::size_t b = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        long idx = pos > b ? std::stol(text.substr(b, pos - b)) : 1;
        std::size_t slot = 0;
        if (ch == 'y') {
          if (idx < 1 || idx > r) fail("no such y variable");
          slot = static_cast<std::size_t>(idx);
        } else if (ch == 'z') {
          if (idx < 1 || idx > s) fail("no such z variable");
          slot = static_cast<std::size_t>(r + idx);
        } else if (pos > b) {
          fail("x takes no index");
        }
        long k = 1;
        skip();
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          skip();
          std::string digits = number();
          if (digits.empty() || digits == "-" || digits == "+") fail("missing exponent");
          k = std::stol(digits);
        }
        e[slot] += k;
      } else {
        fail(std::string("unexpected character '") + ch + "'");
      }
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    out.add_term(e, coef);
  }
  return out;
}

}  // namespace skolem
