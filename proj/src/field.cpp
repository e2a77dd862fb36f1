#include "skolem/field.hpp"

#include <sstream>

namespace skolem {

// ---------------------------------------------------------------- FieldElement

FieldElement::FieldElement(FieldPtr f, std::vector<Rational> coords) : f_(std::move(f)), c_(std::move(coords)) {
  for (auto& v : c_) v.canonicalize();
  if (f_) {
    if (c_.size() > static_cast<std::size_t>(f_->degree())) c_ = f_->reduce(std::move(c_));
  } else if (c_.size() > 1) {
    throw std::logic_error("field element without a field must be rational");
  }
  trim();
}

FieldPtr common_field(const FieldElement& a, const FieldElement& b) {
  if (!a.field()) return b.field();
  if (!b.field() || a.field() == b.field()) return a.field();
  throw std::logic_error("elements of different number fields combined");
}

Rational FieldElement::rational_value() const {
  if (!is_rational()) throw std::logic_error("field element is not rational");
  return c_.empty() ? Rational(0) : c_[0];
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  FieldPtr f = common_field(a, b);
  std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
  return FieldElement(f, std::move(r));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  FieldPtr f = common_field(a, b);
  if (a.c_.empty() || b.c_.empty()) return FieldElement(f, {});
  if (a.c_.size() == 1 || b.c_.size() == 1) {
    const FieldElement& s = a.c_.size() == 1 ? a : b;
    const FieldElement& o = a.c_.size() == 1 ? b : a;
    std::vector<Rational> r = o.c_;
    for (auto& v : r) v *= s.c_[0];
    return FieldElement(f, std::move(r));
  }
  if (f) return FieldElement(f, f->multiply(a.c_, b.c_));
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return FieldElement(f, std::move(r));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

bool operator==(const FieldElement& a, const FieldElement& b) {
  if (a.f_ && b.f_ && a.f_ != b.f_) throw std::logic_error("comparing elements of different number fields");
  return a.c_ == b.c_;
}

FieldElement FieldElement::inverse() const {
  if (c_.empty()) throw std::domain_error("inverse of zero field element");
  if (c_.size() == 1) return FieldElement(f_, {1 / c_[0]});
  const NumberField& K = *f_;
  auto accept = [&](const QPoly& cand) {
    auto prod = K.multiply(c_, cand.c);
    while (!prod.empty() && sgn(prod.back()) == 0) prod.pop_back();
    return prod.size() == 1 && prod[0] == 1;
  };
  return FieldElement(f_, invert_mod(QPoly(c_), K.minpoly(), accept).c);
}

FieldElement FieldElement::conj() const {
  if (!f_ || f_->is_real() || c_.size() <= 1) return *this;
  return FieldElement(f_, f_->apply_conj(c_));
}

bool FieldElement::is_real() const {
  if (!f_ || f_->is_real() || c_.size() <= 1) return true;
  return conj() == *this;
}

FieldElement FieldElement::re() const {
  if (is_real()) return *this;
  return (*this + conj()) * FieldElement(Rational(1, 2));
}

FieldElement FieldElement::im() const {
  if (!f_ || f_->is_real() || c_.size() <= 1) return FieldElement(f_, {});
  FieldElement d = *this - conj();
  if (d.is_zero()) return d;
  if (!f_->has_imaginary_unit()) throw std::logic_error("imaginary part needs i in the field");
  return d * f_->imaginary_unit() * FieldElement(Rational(-1, 2));
}

FieldElement FieldElement::in_field(const FieldPtr& f) const {
  if (f_ == f) return *this;
  if (f_) throw std::logic_error("element already belongs to another field");
  return FieldElement(f, c_);
}

CInterval FieldElement::approx(mpfr_prec_t prec) const {
  if (c_.size() <= 1) {
    Rational v = c_.empty() ? Rational(0) : c_[0];
    return CInterval(Interval(v, prec), Interval(prec));
  }
  auto pw = f_->theta_powers(prec);
  CInterval acc(Interval(c_[0], prec), Interval(prec));
  for (std::size_t i = 1; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    acc = acc + Interval(c_[i], prec) * pw[i];
  }
  return acc;
}

std::string FieldElement::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[i].get_str() << ")";
    if (i == 1) os << "*th";
    if (i > 1) os << "*th^" << i;
  }
  return os.str();
}

// ---------------------------------------------------------------- NumberField

NumberField::NumberField(QPoly monic_minpoly, AlgebraicNumber theta)
    : minpoly_(monic_minpoly.monic()), theta_(std::move(theta)) {
  conj_ = {Rational(0), Rational(1)};
  if (minpoly_.degree() == 1) conj_ = {-minpoly_.c[0]};
}

FieldElement NumberField::element(std::vector<Rational> coords) const {
  return FieldElement(shared_from_this(), std::move(coords));
}

FieldElement NumberField::theta_element() const {
  if (degree() == 1) return element({-minpoly_.c[0]});
  return element({Rational(0), Rational(1)});
}

FieldElement NumberField::imaginary_unit() const {
  if (i_coords_.empty()) throw std::logic_error("field has no imaginary unit");
  return element(i_coords_);
}

std::vector<Rational> NumberField::reduce(std::vector<Rational> v) const {
  std::size_t d = static_cast<std::size_t>(degree());
  for (std::size_t k = v.size(); k-- > d;) {
    if (sgn(v[k]) == 0) continue;
    Rational c = v[k];
    for (std::size_t j = 0; j < d; ++j) v[k - d + j] -= c * minpoly_.c[j];
    v[k] = 0;
  }
  if (v.size() > d) v.resize(d);
  return v;
}

namespace {

std::vector<Integer> integer_form(const std::vector<Rational>& v, Integer& den) {
  den = 1;
  for (const auto& q : v) den = lcm_z(den, q.get_den());
  std::vector<Integer> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    mpz_divexact(out[i].get_mpz_t(), den.get_mpz_t(), v[i].get_den_mpz_t());
    out[i] *= v[i].get_num();
  }
  return out;
}

}  // namespace

std::vector<Rational> NumberField::multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
  std::size_t d = static_cast<std::size_t>(degree());
  std::call_once(red_once_, [this, d] {
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> cur(minpoly_.c.begin(), minpoly_.c.begin() + static_cast<long>(d));
    for (auto& v : cur) v = -v;
    for (std::size_t j = 0; j + 1 < d; ++j) {
      rows.push_back(cur);
      Rational top = cur[d - 1];
      for (std::size_t i = d - 1; i > 0; --i) cur[i] = cur[i - 1] - top * minpoly_.c[i];
      cur[0] = -top * minpoly_.c[0];
    }
    red_den_ = 1;
    for (auto& r : rows)
      for (auto& q : r) red_den_ = lcm_z(red_den_, q.get_den());
    for (auto& r : rows) {
      std::vector<Integer> zr(d);
      for (std::size_t i = 0; i < d; ++i) zr[i] = Integer(r[i] * red_den_);
      red_rows_.push_back(std::move(zr));
    }
  });
  Integer da, db;
  std::vector<Integer> A = integer_form(a, da), B = integer_form(b, db);
  std::vector<Integer> P(A.size() + B.size() - 1);
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (sgn(A[i]) == 0) continue;
    for (std::size_t j = 0; j < B.size(); ++j)
      mpz_addmul(P[i + j].get_mpz_t(), A[i].get_mpz_t(), B[j].get_mpz_t());
  }
  Integer den = da * db;
  if (P.size() > d) {
    std::vector<Integer> S(d);
    for (std::size_t i = 0; i < d; ++i) S[i] = P[i] * red_den_;
    for (std::size_t j = 0; d + j < P.size(); ++j) {
      const Integer& p = P[d + j];
      if (sgn(p) == 0) continue;
      const auto& row = red_rows_[j];
      for (std::size_t i = 0; i < d; ++i) mpz_addmul(S[i].get_mpz_t(), p.get_mpz_t(), row[i].get_mpz_t());
    }
    P = std::move(S);
    den *= red_den_;
  }
  std::vector<Rational> out(P.size());
  for (std::size_t i = 0; i < P.size(); ++i) {
    out[i] = Rational(P[i], den);
    out[i].canonicalize();
  }
  return out;
}

const std::vector<std::vector<Rational>>& NumberField::conj_matrix() const {
  std::call_once(conj_once_, [this] {
    std::size_t d = static_cast<std::size_t>(degree());
    FieldElement ct = element(conj_);
    FieldElement pw = element({Rational(1)});
    for (std::size_t j = 0; j < d; ++j) {
      auto v = pw.coords();
      v.resize(d);
      conj_mat_.push_back(v);
      pw = pw * ct;
    }
    conj_den_ = 1;
    for (const auto& col : conj_mat_)
      for (const auto& q : col) conj_den_ = lcm_z(conj_den_, q.get_den());
    for (const auto& col : conj_mat_) {
      std::vector<Integer> zc(d);
      for (std::size_t i = 0; i < d; ++i) zc[i] = Integer(col[i] * conj_den_);
      conj_int_.push_back(std::move(zc));
    }
  });
  return conj_mat_;
}

std::vector<Rational> NumberField::apply_conj(const std::vector<Rational>& v) const {
  std::size_t d = conj_matrix().size();
  Integer dv;
  std::vector<Integer> z = integer_form(v, dv);
  std::vector<Integer> acc(d);
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (sgn(z[j]) == 0) continue;
    const auto& col = conj_int_[j];
    for (std::size_t i = 0; i < d; ++i) mpz_addmul(acc[i].get_mpz_t(), z[j].get_mpz_t(), col[i].get_mpz_t());
  }
  Integer den = dv * conj_den_;
  std::vector<Rational> out(d);
  for (std::size_t i = 0; i < d; ++i) {
    out[i] = Rational(acc[i], den);
    out[i].canonicalize();
  }
  return out;
}

std::vector<CInterval> NumberField::theta_powers(mpfr_prec_t prec) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = pow_cache_.find(prec);
  if (it != pow_cache_.end()) return it->second;
  int d = degree();
  std::vector<CInterval> pw;
  CInterval one(Interval(1L, prec), Interval(prec));
  pw.push_back(one);
  if (d > 1) {
    CInterval t = theta_.approx(prec + static_cast<mpfr_prec_t>(2 * d));
    t = CInterval(set_prec(t.re, prec), set_prec(t.im, prec));
    for (int i = 1; i < d; ++i) pw.push_back(pw.back() * t);
  }
  if (pow_cache_.size() > 16) pow_cache_.erase(pow_cache_.begin());
  pow_cache_[prec] = pw;
  return pw;
}

// ---------------------------------------------------------------- helpers

namespace {

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

// Solve A x = b over Q (A square, nonsingular).
std::vector<Rational> solve_linear(std::vector<std::vector<Rational>> A, std::vector<Rational> b) {
  std::size_t n = A.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(A[piv][col]) == 0) ++piv;
    if (piv == n) throw std::logic_error("singular linear system");
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(A[r][col]) == 0) continue;
      Rational f = A[r][col] / A[col][col];
      for (std::size_t k = col; k < n; ++k) A[r][k] -= f * A[col][k];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= A[i][i];
  return b;
}

std::vector<Rational> padded(const FieldElement& x, std::size_t d) {
  std::vector<Rational> v = x.coords();
  v.resize(d);
  return v;
}

// Evaluate a rational polynomial at an element.
FieldElement eval_at(const QPoly& p, const FieldElement& x) {
  FieldElement acc = FieldElement(x.field(), {});
  for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) acc = acc * x + FieldElement(*it);
  return acc;
}

Rational width_sum(const CInterval& b) { return b.re.width() + b.im.width(); }

// Is the root of irreducible g enclosed by box b (of diameter below the root separation) real?
bool box_root_is_real(const QPoly& g, const CInterval& b) {
  if (!b.im.contains_zero()) return false;
  return !real_roots_in(g, b.re.lower(), b.re.upper()).empty();
}

// Build an AlgebraicNumber for the unique root of irreducible g close to an enclosure
// produced by `enclose(prec)`.
template <class Encl>
AlgebraicNumber identify_root(const QPoly& g, Encl enclose) {
  long sep = log2_root_separation(g);
  mpfr_prec_t prec = static_cast<mpfr_prec_t>(std::max<long>(64, -sep + 8));
  CInterval b = enclose(prec);
  while (!(width_sum(b) < pow2_q(sep))) {
    prec *= 2;
    b = enclose(prec);
  }
  if (g.degree() == 1) return AlgebraicNumber::rational(-g.c[0] / g.c[1]);
  if (box_root_is_real(g, b)) {
    auto rs = real_roots_in(g, b.re.lower(), b.re.upper());
    return AlgebraicNumber::real_root(g, rs.front());
  }
  RootDisc d{b.re.mid(), b.im.mid(), width_sum(b) / 2, false};
  return AlgebraicNumber::complex_root(g, d);
}

// Among irreducible factors, the one vanishing at the number enclosed by enclose(prec).
template <class Encl>
std::size_t owning_factor(const std::vector<QPoly>& factors, Encl enclose) {
  for (mpfr_prec_t prec = 64;; prec *= 2) {
    CInterval b = enclose(prec);
    std::vector<std::size_t> cand;
    for (std::size_t i = 0; i < factors.size(); ++i)
      if (eval(factors[i], b).contains_zero()) cand.push_back(i);
    if (cand.size() == 1) return cand[0];
    if (cand.empty()) throw std::logic_error("no factor vanishes at the enclosed number");
    if (prec > (1 << 20)) throw std::logic_error("factor identification did not separate");
  }
}

std::shared_ptr<NumberField> new_field(const QPoly& minpoly, const AlgebraicNumber& theta) {
  return std::make_shared<NumberField>(minpoly, theta);
}

struct Adjoined {
  std::shared_ptr<NumberField> field;  // new field (may equal the old one)
  std::vector<Rational> a_coords;      // the adjoined number
  std::vector<Rational> old_theta;     // old theta in the new field
  long k = 0;                          // theta_new = theta_old + k*a (0 when unchanged)
};

Adjoined adjoin(const std::shared_ptr<NumberField>& K, const AlgebraicNumber& a, const FieldConfig& cfg) {
  const QPoly& m = K->minpoly();
  QPoly h = a.minpoly();
  int d = m.degree(), e = h.degree();
  std::size_t N = static_cast<std::size_t>(d * e);
  static const long ks[] = {1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6, 7, -7, 8, -8, 9, -9, 10, -10};
  for (long k : ks) {
    std::vector<Rational> xs, ys;
    for (std::size_t i = 0; i <= N; ++i) {
      Rational x0(static_cast<long>(i));
      QPoly shifted = compose(m, QPoly(std::vector<Rational>{x0, Rational(-k)}));
      xs.push_back(x0);
      ys.push_back(resultant(shifted, h));
    }
    QPoly R = interpolate(xs, ys);
    if (R.degree() != static_cast<int>(N)) continue;
    if (gcd(R, R.derivative()).degree() > 0) continue;
    auto factors = factor_squarefree_integer(R);
    auto enclose = [&](mpfr_prec_t prec) {
      CInterval t = K->theta().approx(prec + 8), g = a.approx(prec + 8);
      return t + Interval(k, prec + 8) * g;
    };
    std::size_t idx = owning_factor(factors, enclose);
    const QPoly& F = factors[idx];
    if (F.degree() > cfg.degree_cap)
      throw DegreeCapExceeded("number field degree " + std::to_string(F.degree()) + " exceeds cap " +
                              std::to_string(cfg.degree_cap));
    AlgebraicNumber theta_new = identify_root(F, enclose);
    auto K2 = new_field(F, theta_new);
    // a is the common root of h(y) and m(theta_new - k y) over K2.
    FieldElement tn = K2->theta_element();
    // m(tn - k y) = sum_j (m^(j)(tn) / j!) (-k y)^j, and deg m < deg F keeps each
    // Taylor coefficient already reduced.
    std::vector<FieldElement> mk;
    QPoly der = m;
    Rational fact(1), kp(1);
    for (int j = 0; j <= d; ++j) {
      if (j > 0) {
        der = der.derivative();
        fact *= j;
        kp *= -k;
      }
      std::vector<Rational> cj = der.c;
      for (auto& v : cj) v *= kp / fact;
      mk.push_back(FieldElement(K2, K2->reduce(std::move(cj))));
    }
    KPoly Mk(mk);
    std::vector<FieldElement> hc;
    for (auto& c : h.c) hc.push_back(FieldElement(K2, {c}));
    KPoly G = gcd(KPoly(hc), Mk);
    if (G.degree() != 1) throw std::logic_error("primitive element gcd is not linear");
    FieldElement a_in = -G.c[0];
    FieldElement old_t = tn - FieldElement(Rational(k)) * a_in;
    if (F.degree() == d) {
      // No growth: express a through the old theta instead.
      std::vector<std::vector<Rational>> A(static_cast<std::size_t>(d), std::vector<Rational>(static_cast<std::size_t>(d)));
      FieldElement pw = FieldElement(K2, {Rational(1)});
      for (int j = 0; j < d; ++j) {
        auto col = padded(pw, static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = col[static_cast<std::size_t>(i)];
        pw = pw * old_t;
      }
      std::vector<Rational> rhs = padded(tn, static_cast<std::size_t>(d));
      std::vector<Rational> c = solve_linear(A, rhs);  // theta_new = sum c_j theta_old^j
      c[1] -= 1;
      for (auto& v : c) v /= Rational(k);
      return {K, c, {Rational(0), Rational(1)}, 0};
    }
    return {K2, a_in.coords(), padded(old_t, static_cast<std::size_t>(F.degree())), k};
  }
  throw std::logic_error("no primitive element found among small multipliers");
}

}  // namespace

// ---------------------------------------------------------------- make_field

FieldBuild make_field_numbers(const std::vector<AlgebraicNumber>& gens, const FieldConfig& cfg) {
  std::vector<AlgebraicNumber> L;
  auto add = [&](const AlgebraicNumber& a) -> std::size_t {
    for (std::size_t j = 0; j < L.size(); ++j)
      if (L[j].same_as(a)) return j;
    L.push_back(a);
    return L.size() - 1;
  };
  std::vector<std::size_t> input_idx;
  bool nonreal = false;
  for (const auto& g : gens) {
    input_idx.push_back(add(g));
    if (!g.is_real()) {
      nonreal = true;
      add(g.conj());
    }
  }
  std::optional<std::size_t> i_idx;
  if (nonreal) {
    i_idx = add(AlgebraicNumber::complex_root(qpoly({1, 0, 1}), {Rational(0), Rational(1), Rational(1, 2), false}));
    add(AlgebraicNumber::complex_root(qpoly({1, 0, 1}), {Rational(0), Rational(-1), Rational(1, 2), false}));
  }
  std::vector<std::size_t> conj_idx(L.size());
  for (std::size_t j = 0; j < L.size(); ++j) {
    if (L[j].is_real()) {
      conj_idx[j] = j;
      continue;
    }
    AlgebraicNumber c = L[j].conj();
    bool found = false;
    for (std::size_t k = 0; k < L.size(); ++k)
      if (L[k].same_as(c)) {
        conj_idx[j] = k;
        found = true;
        break;
      }
    if (!found) throw std::logic_error("conjugate missing from generator list");
  }

  std::shared_ptr<NumberField> K;
  std::vector<std::vector<Rational>> coords(L.size());
  std::vector<Rational> comb(L.size());
  std::vector<bool> done(L.size(), false);
  for (std::size_t j = 0; j < L.size(); ++j) {
    const AlgebraicNumber& a = L[j];
    if (a.is_rational()) {
      coords[j] = {a.rational_value()};
      done[j] = true;
      continue;
    }
    if (!K) {
      if (a.degree() > cfg.degree_cap) throw DegreeCapExceeded("generator degree exceeds cap");
      K = new_field(a.minpoly(), a);
      coords[j] = {Rational(0), Rational(1)};
      comb[j] = 1;
      done[j] = true;
      continue;
    }
    // Once all other roots of the minimal polynomial are present, the last one is the
    // trace minus their sum.
    const QPoly& h = a.minpoly();
    std::vector<std::size_t> siblings;
    for (std::size_t i = 0; i < L.size(); ++i)
      if (done[i] && L[i].minpoly() == h) siblings.push_back(i);
    if (static_cast<int>(siblings.size()) + 1 == h.degree()) {
      FieldElement last(Rational(-h.c[h.c.size() - 2] / h.c.back()));
      last = last.in_field(K);
      for (auto i : siblings) last -= FieldElement(K, coords[i]);
      coords[j] = last.coords();
      done[j] = true;
      continue;
    }
    Adjoined adj = adjoin(K, a, cfg);
    if (adj.field != K) {
      FieldElement ot(adj.field, adj.old_theta);
      std::vector<FieldElement> pows{FieldElement(adj.field, {Rational(1)})};
      for (std::size_t i = 0; i < L.size(); ++i) {
        if (!done[i]) continue;
        while (pows.size() < coords[i].size()) pows.push_back(pows.back() * ot);
        FieldElement acc(adj.field, {});
        for (std::size_t t = 0; t < coords[i].size(); ++t)
          if (sgn(coords[i][t]) != 0) acc += FieldElement(coords[i][t]) * pows[t];
        coords[i] = acc.coords();
      }
      comb[j] += adj.k;
      K = adj.field;
    }
    coords[j] = adj.a_coords;
    done[j] = true;
  }
  if (!K) K = new_field(qpoly({0, 1}), AlgebraicNumber::rational(Rational(0)));

  // conj(theta) = sum comb_j conj(L_j)
  FieldElement ct(K, {});
  for (std::size_t j = 0; j < L.size(); ++j)
    if (sgn(comb[j]) != 0) ct = ct + FieldElement(comb[j]) * FieldElement(K, coords[conj_idx[j]]);
  if (K->degree() > 1) K->conj_ = padded(ct, static_cast<std::size_t>(K->degree()));
  if (i_idx) K->i_coords_ = coords[*i_idx];
  K->gens_ = L;
  K->theta_comb_ = comb;
  K->gen_coords_ = coords;

  FieldBuild out;
  out.field = K;
  for (std::size_t j = 0; j < L.size(); ++j) {
    FieldElement x(K, coords[j]);
    if (!eval_at(L[j].minpoly(), x).is_zero()) throw std::logic_error("generator expression fails its minimal polynomial");
  }
  for (auto idx : input_idx) out.embeddings.push_back(FieldElement(K, coords[idx]));
  return out;
}

FieldBuild make_field(const std::vector<AlgebraicInput>& generators, const FieldConfig& cfg) {
  std::vector<AlgebraicNumber> nums;
  for (const auto& g : generators) nums.push_back(AlgebraicNumber::from_input(g));
  return make_field_numbers(nums, cfg);
}

FieldExtension extend_field(const FieldPtr& base, const std::vector<AlgebraicNumber>& extra, const FieldConfig& cfg) {
  std::vector<AlgebraicNumber> all = base->generators();
  std::size_t nb = all.size();
  for (const auto& e : extra) all.push_back(e);
  FieldBuild fb = make_field_numbers(all, cfg);
  FieldExtension ext;
  ext.field = fb.field;
  for (std::size_t i = nb; i < all.size(); ++i) ext.embeddings.push_back(fb.embeddings[i]);
  FieldElement ot(ext.field, {});
  if (base->degree() == 1) {
    ot = FieldElement(base->theta().rational_value());
  } else {
    for (std::size_t j = 0; j < nb; ++j)
      if (sgn(base->theta_comb_[j]) != 0) ot = ot + FieldElement(base->theta_comb_[j]) * fb.embeddings[j];
  }
  ext.old_theta = ot.coords();
  return ext;
}

FieldElement lift_element(const FieldElement& x, const FieldExtension& ext) {
  if (!x.field()) return x.in_field(ext.field);
  FieldElement ot(ext.field, ext.old_theta);
  FieldElement acc(ext.field, {});
  const auto& c = x.coords();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * ot + FieldElement(*it);
  return acc;
}

// ---------------------------------------------------------------- sign & friends

QPoly charpoly(const FieldElement& x) {
  if (!x.field() || x.field()->degree() == 1) {
    Rational v = x.is_zero() ? Rational(0) : x.coords()[0];
    return QPoly(std::vector<Rational>{-v, Rational(1)});
  }
  const auto& K = x.field();
  std::size_t n = static_cast<std::size_t>(K->degree());
  // Multiplication matrix: column j = x * theta^j.
  std::vector<std::vector<Rational>> H(n, std::vector<Rational>(n));
  FieldElement pw = K->element({Rational(1)});
  FieldElement th = K->theta_element();
  for (std::size_t j = 0; j < n; ++j) {
    auto col = padded(x * pw, n);
    for (std::size_t i = 0; i < n; ++i) H[i][j] = col[i];
    pw = pw * th;
  }
  return charpoly_matrix(std::move(H));
}

QPoly charpoly_matrix(std::vector<std::vector<Rational>> H) {
  std::size_t n = H.size();
  if (n == 0) return QPoly::constant(Rational(1));
  // Hessenberg reduction, then the standard recurrence for the characteristic polynomial.
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m + 1;
    while (i < n && sgn(H[i][m - 1]) == 0) ++i;
    if (i == n) continue;
    if (sgn(H[m][m - 1]) == 0) {
      std::swap(H[i], H[m]);
      for (auto& row : H) std::swap(row[i], row[m]);
    }
    for (std::size_t r = m + 1; r < n; ++r) {
      if (sgn(H[r][m - 1]) == 0) continue;
      Rational u = H[r][m - 1] / H[m][m - 1];
      for (std::size_t j = 0; j < n; ++j) H[r][j] -= u * H[m][j];
      for (std::size_t j = 0; j < n; ++j) H[j][m] += u * H[j][r];
    }
  }
  std::vector<QPoly> P(n + 1);
  P[0] = QPoly::constant(Rational(1));
  for (std::size_t m = 1; m <= n; ++m) {
    P[m] = QPoly(std::vector<Rational>{-H[m - 1][m - 1], Rational(1)}) * P[m - 1];
    Rational t = 1;
    for (std::size_t i = m - 1; i >= 1; --i) {
      t *= H[i][i - 1];
      P[m] = P[m] - QPoly::constant(t * H[i - 1][m - 1]) * P[i - 1];
    }
  }
  return P[n];
}

int sign(const FieldElement& x) {
  if (x.is_zero()) return 0;
  if (x.is_rational()) return sgn(x.rational_value());
  if (!x.is_real()) throw NotRealElement("sign of a non-real field element");
  std::optional<Rational> floor_bound;
  for (mpfr_prec_t prec = 64;; prec *= 2) {
    Interval a = x.approx(prec).re;
    if (a.positive()) return 1;
    if (a.negative()) return -1;
    if (prec >= 4096) {
      if (!floor_bound) {
        // Nonzero roots of the characteristic polynomial are at least |a_k| / (|a_k| + max|a_i|).
        QPoly cp = charpoly(x);
        std::size_t k = 0;
        while (sgn(cp.c[k]) == 0) ++k;
        Rational mx = 0;
        for (std::size_t i = k + 1; i < cp.c.size(); ++i) mx = std::max(mx, abs_q(cp.c[i]));
        floor_bound = abs_q(cp.c[k]) / (abs_q(cp.c[k]) + mx);
      }
      if (a.width() < *floor_bound / 2) throw std::logic_error("sign refinement inconsistent with separation floor");
    }
    if (prec > (1 << 22)) throw std::logic_error("sign refinement exceeded precision limit");
  }
}

int compare(const FieldElement& a, const FieldElement& b) { return sign(a - b); }

Box approx_box(const FieldElement& x, const Rational& eps) {
  if (x.is_rational()) {
    Rational v = x.rational_value();
    return {v, v, Rational(0), Rational(0)};
  }
  for (mpfr_prec_t prec = 64;; prec *= 2) {
    CInterval b = x.approx(prec);
    bool real = x.field()->is_real();
    if (b.re.width() <= eps && (real || b.im.width() <= eps)) {
      if (real) return {b.re.lower(), b.re.upper(), Rational(0), Rational(0)};
      return {b.re.lower(), b.re.upper(), b.im.lower(), b.im.upper()};
    }
  }
}

AlgebraicNumber to_algebraic(const FieldElement& x) {
  if (x.is_rational()) return AlgebraicNumber::rational(x.rational_value());
  QPoly cp = charpoly(x);
  std::vector<QPoly> factors;
  for (auto& [g, m] : factor(cp).factors) factors.push_back(g);
  auto enclose = [&](mpfr_prec_t prec) { return x.approx(prec); };
  std::size_t idx = owning_factor(factors, enclose);
  if (x.is_real()) {
    const QPoly& g = factors[idx];
    if (g.degree() == 1) return AlgebraicNumber::rational(-g.c[0] / g.c[1]);
    long sep = log2_root_separation(g);
    for (mpfr_prec_t prec = static_cast<mpfr_prec_t>(std::max<long>(64, -sep + 8));; prec *= 2) {
      Interval b = x.approx(prec).re;
      if (b.width() < pow2_q(sep)) {
        auto rs = real_roots_in(g, b.lower(), b.upper());
        if (rs.size() == 1) return AlgebraicNumber::real_root(g, rs.front());
      }
    }
  }
  return identify_root(factors[idx], enclose);
}

// ---------------------------------------------------------------- rational_basis

QBasis rational_basis(const std::vector<FieldElement>& elems) {
  QBasis out;
  std::size_t d = 1;
  FieldPtr K;
  for (const auto& e : elems) {
    if (e.field()) {
      if (K && K != e.field()) throw std::logic_error("rational_basis: mixed fields");
      K = e.field();
    }
  }
  if (K) d = static_cast<std::size_t>(K->degree());
  for (const auto& e : elems)
    if (!e.is_real()) throw NotRealElement("rational_basis needs real elements");

  // Greedy independent subset via incremental echelon form.
  std::vector<std::vector<Rational>> ech;  // rows with pivot
  std::vector<std::size_t> piv;
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    std::vector<Rational> v = padded(elems[i], d);
    for (std::size_t r = 0; r < ech.size(); ++r) {
      if (sgn(v[piv[r]]) == 0) continue;
      Rational f = v[piv[r]] / ech[r][piv[r]];
      for (std::size_t k = 0; k < d; ++k) v[k] -= f * ech[r][k];
    }
    std::size_t p = 0;
    while (p < d && sgn(v[p]) == 0) ++p;
    if (p == d) continue;
    ech.push_back(v);
    piv.push_back(p);
    chosen.push_back(i);
  }
  std::size_t r = chosen.size();
  // Coefficients of each input in terms of the chosen elements.
  std::vector<std::vector<Rational>> C(elems.size(), std::vector<Rational>(r));
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (r == 0) break;
    // Least-squares-free exact solve: pick r independent coordinate rows.
    std::vector<std::vector<Rational>> A(d, std::vector<Rational>(r + 1));
    for (std::size_t j = 0; j < r; ++j) {
      auto col = padded(elems[chosen[j]], d);
      for (std::size_t k = 0; k < d; ++k) A[k][j] = col[k];
    }
    auto rhs = padded(elems[i], d);
    for (std::size_t k = 0; k < d; ++k) A[k][r] = rhs[k];
    std::size_t row = 0;
    std::vector<std::size_t> pc;
    for (std::size_t col = 0; col < r && row < d; ++col) {
      std::size_t p = row;
      while (p < d && sgn(A[p][col]) == 0) ++p;
      if (p == d) continue;
      std::swap(A[p], A[row]);
      for (std::size_t rr = 0; rr < d; ++rr) {
        if (rr == row || sgn(A[rr][col]) == 0) continue;
        Rational f = A[rr][col] / A[row][col];
        for (std::size_t k = col; k <= r; ++k) A[rr][k] -= f * A[row][k];
      }
      pc.push_back(col);
      ++row;
    }
    for (std::size_t rr = 0; rr < row; ++rr) C[i][pc[rr]] = A[rr][r] / A[rr][pc[rr]];
  }
  // Rescale each basis element by the LCM of its coefficient denominators, and make it positive.
  for (std::size_t j = 0; j < r; ++j) {
    Integer L = 1;
    for (std::size_t i = 0; i < elems.size(); ++i) L = lcm_z(L, C[i][j].get_den());
    FieldElement b = elems[chosen[j]] * FieldElement(Rational(Integer(1), L));
    int s = sign(b);
    if (s < 0) b = -b;
    out.basis.push_back(b);
    for (std::size_t i = 0; i < elems.size(); ++i) C[i][j] *= Rational(L) * (s < 0 ? -1 : 1);
  }
  for (std::size_t i = 0; i < elems.size(); ++i) {
    std::vector<Integer> row;
    for (std::size_t j = 0; j < r; ++j) row.push_back(C[i][j].get_num());
    out.coords.push_back(row);
  }
  return out;
}

}  // namespace skolem
