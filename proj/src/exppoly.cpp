#include "skolem/exppoly.hpp"

#include <sstream>

#include "skolem/kpoly.hpp"

namespace skolem {

namespace {

void trim(Coeffs& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Coeffs add(const Coeffs& a, const Coeffs& b) {
  Coeffs r(std::max(a.size(), b.size()), FieldElement(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
  trim(r);
  return r;
}

Coeffs mul(const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, FieldElement(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  trim(r);
  return r;
}

Coeffs conj_coeffs(const Coeffs& a) {
  Coeffs r;
  for (const auto& c : a) r.push_back(c.conj());
  return r;
}

FieldPtr pick_field(const FieldPtr& a, const FieldPtr& b) {
  if (!a) return b;
  if (!b || a == b) return a;
  throw std::logic_error("exponential polynomials over different fields");
}

}  // namespace

ExpPoly ExpPoly::make(FieldPtr field, std::vector<ExpTerm> terms) {
  ExpPoly f;
  f.field_ = std::move(field);
  for (auto& t : terms) {
    trim(t.poly);
    if (t.poly.empty()) continue;
    bool merged = false;
    for (auto& e : f.terms_) {
      if (e.lambda == t.lambda) {
        e.poly = add(e.poly, t.poly);
        merged = true;
        break;
      }
    }
    if (!merged) f.terms_.push_back(std::move(t));
  }
  std::vector<ExpTerm> kept;
  for (auto& e : f.terms_)
    if (!e.poly.empty()) kept.push_back(std::move(e));
  f.terms_ = std::move(kept);
  f.real_ = true;
  for (const auto& e : f.terms_) {
    FieldElement cl = e.lambda.conj();
    Coeffs cp = conj_coeffs(e.poly);
    bool found = false;
    for (const auto& o : f.terms_)
      if (o.lambda == cl && o.poly == cp) {
        found = true;
        break;
      }
    if (!found) {
      f.real_ = false;
      break;
    }
  }
  return f;
}

ExpPoly ExpPoly::constant(FieldPtr field, const FieldElement& c) {
  return make(std::move(field), {{FieldElement(0), {c}}});
}

bool ExpPoly::simple() const {
  for (const auto& e : terms_)
    if (e.poly.size() > 1) return false;
  return true;
}

ExpPoly ExpPoly::derivative() const {
  std::vector<ExpTerm> out;
  for (const auto& e : terms_) {
    Coeffs d;
    for (std::size_t k = 1; k < e.poly.size(); ++k) d.push_back(e.poly[k] * FieldElement(static_cast<long>(k)));
    Coeffs lp;
    for (const auto& c : e.poly) lp.push_back(e.lambda * c);
    out.push_back({e.lambda, add(d, lp)});
  }
  return make(field_, std::move(out));
}

ExpPoly ExpPoly::conj() const {
  std::vector<ExpTerm> out;
  for (const auto& e : terms_) out.push_back({e.lambda.conj(), conj_coeffs(e.poly)});
  return make(field_, std::move(out));
}

ExpPoly operator+(const ExpPoly& a, const ExpPoly& b) {
  std::vector<ExpTerm> t = a.terms_;
  t.insert(t.end(), b.terms_.begin(), b.terms_.end());
  return ExpPoly::make(pick_field(a.field_, b.field_), std::move(t));
}

ExpPoly operator*(const FieldElement& c, const ExpPoly& a) {
  std::vector<ExpTerm> t;
  for (const auto& e : a.terms_) t.push_back({e.lambda, mul({c}, e.poly)});
  return ExpPoly::make(a.field_, std::move(t));
}

ExpPoly operator-(const ExpPoly& a, const ExpPoly& b) { return a + FieldElement(-1) * b; }

ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
  std::vector<ExpTerm> t;
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) t.push_back({x.lambda + y.lambda, mul(x.poly, y.poly)});
  return ExpPoly::make(pick_field(a.field_, b.field_), std::move(t));
}

bool operator==(const ExpPoly& a, const ExpPoly& b) { return (a - b).is_zero(); }

FieldElement ExpPoly::value_at_zero() const {
  FieldElement v(0);
  for (const auto& e : terms_) v = v + e.poly[0];
  return v;
}

std::string ExpPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t j = 0; j < terms_.size(); ++j) {
    if (j) os << " + ";
    os << "[";
    for (std::size_t k = 0; k < terms_[j].poly.size(); ++k) {
      if (k) os << ", ";
      os << terms_[j].poly[k].str();
    }
    os << "]*exp((" << terms_[j].lambda.str() << ")t)";
  }
  return os.str();
}

ExpPoly exp_term(const FieldPtr& K, const FieldElement& lambda, Coeffs poly) {
  return ExpPoly::make(K, {{lambda, std::move(poly)}});
}

ExpPoly cos_term(const FieldPtr& K, const FieldElement& omega) {
  FieldElement i = K->imaginary_unit();
  FieldElement h(Rational(1, 2));
  return ExpPoly::make(K, {{i * omega, {h}}, {-(i * omega), {h}}});
}

ExpPoly sin_term(const FieldPtr& K, const FieldElement& omega) {
  FieldElement i = K->imaginary_unit();
  FieldElement h = i * FieldElement(Rational(-1, 2));  // 1/(2i)
  return ExpPoly::make(K, {{i * omega, {h}}, {-(i * omega), {-h}}});
}

ExpPoly t_power(const FieldPtr& K, int k) {
  Coeffs p(static_cast<std::size_t>(k) + 1, FieldElement(0));
  p.back() = FieldElement(1);
  return ExpPoly::make(K, {{FieldElement(0), p}});
}

// ---------------------------------------------------------------- ODE

namespace {

std::vector<FieldElement> solve_field(std::vector<std::vector<FieldElement>> A, std::vector<FieldElement> b) {
  std::size_t n = A.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && A[piv][col].is_zero()) ++piv;
    if (piv == n) throw std::logic_error("singular system over the number field");
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    FieldElement inv = A[col][col].inverse();
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || A[r][col].is_zero()) continue;
      FieldElement f = A[r][col] * inv;
      for (std::size_t k = col; k < n; ++k) A[r][k] = A[r][k] - f * A[col][k];
      b[r] = b[r] - f * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] = b[i] / A[i][i];
  return b;
}

}  // namespace

ExpPoly from_ode(const OdeInstance& inst, const FieldConfig& cfg) {
  std::size_t n = inst.coeffs.size();
  if (n == 0) throw InvalidInput("ODE order must be at least 1");
  if (inst.init.size() != n) throw DimensionMismatch("need exactly n initial values");
  for (const auto& a : inst.coeffs)
    if (!a.is_real()) throw InvalidInput("ODE coefficients must be real");
  for (const auto& a : inst.init)
    if (!a.is_real()) throw InvalidInput("initial values must be real");
  std::vector<AlgebraicNumber> data = inst.coeffs;
  data.insert(data.end(), inst.init.begin(), inst.init.end());

  FieldBuild base = make_field_numbers(data, cfg);
  std::vector<FieldElement> chi_c(base.embeddings.begin(), base.embeddings.begin() + static_cast<long>(n));
  chi_c.push_back(FieldElement(1));
  auto roots = roots_of(KPoly(chi_c));

  std::vector<AlgebraicNumber> all = data;
  for (const auto& [r, m] : roots) all.push_back(r);
  FieldBuild fb = make_field_numbers(all, cfg);
  const FieldPtr& K = fb.field;
  std::vector<FieldElement> chi2(fb.embeddings.begin(), fb.embeddings.begin() + static_cast<long>(n));
  chi2.push_back(FieldElement(1));
  KPoly chi(chi2);

  struct Unknown {
    std::size_t root;
    int k;
  };
  std::vector<Unknown> unk;
  std::vector<FieldElement> lam;
  for (std::size_t j = 0; j < roots.size(); ++j) {
    lam.push_back(fb.embeddings[2 * n + j]);
    if (!chi.eval(lam.back()).is_zero()) throw std::logic_error("characteristic root failed exact check");
    for (int k = 0; k < roots[j].second; ++k) unk.push_back({j, k});
  }
  if (unk.size() != n) throw std::logic_error("root multiplicities do not sum to the order");

  std::vector<std::vector<FieldElement>> A(n, std::vector<FieldElement>(n, FieldElement(0)));
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t c = 0; c < n; ++c) {
      int k = unk[c].k;
      if (static_cast<int>(l) < k) continue;
      // d^l/dt^l [t^k e^{lambda t}] at 0 = l!/(l-k)! lambda^{l-k}
      Rational ff = 1;
      for (int i = 0; i < k; ++i) ff *= static_cast<long>(l) - i;
      FieldElement p = FieldElement(ff);
      for (std::size_t e = 0; e < l - static_cast<std::size_t>(k); ++e) p = p * lam[unk[c].root];
      A[l][c] = p;
    }
  }
  std::vector<FieldElement> rhs(fb.embeddings.begin() + static_cast<long>(n), fb.embeddings.begin() + static_cast<long>(2 * n));
  auto sol = solve_field(A, rhs);

  std::vector<ExpTerm> terms;
  for (std::size_t j = 0; j < roots.size(); ++j) {
    Coeffs poly;
    for (std::size_t c = 0; c < n; ++c)
      if (unk[c].root == j) poly.push_back(sol[c]);
    terms.push_back({lam[j], poly});
  }
  return ExpPoly::make(K, std::move(terms));
}

OdeInstance from_linear_system(const QMatrix& A, const std::vector<Rational>& x0, const std::vector<Rational>& u) {
  std::size_t n = A.size();
  if (n == 0) throw DimensionMismatch("empty matrix");
  for (const auto& row : A)
    if (row.size() != n) throw DimensionMismatch("matrix is not square");
  if (x0.size() != n || u.size() != n) throw DimensionMismatch("vector length does not match the matrix");
  QPoly chi = charpoly_matrix(A);
  OdeInstance inst;
  for (std::size_t k = 0; k < n; ++k) inst.coeffs.push_back(AlgebraicNumber::rational(chi.coeff(static_cast<int>(k))));
  std::vector<Rational> v = x0;
  for (std::size_t k = 0; k < n; ++k) {
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i) s += u[i] * v[i];
    inst.init.push_back(AlgebraicNumber::rational(s));
    std::vector<Rational> w(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) w[i] += A[i][j] * v[j];
    v = w;
  }
  return inst;
}

FrequencyForm frequency_form(const ExpPoly& f) {
  if (!f.real_valued()) throw NotRealValued("frequency form needs a real-valued exponential polynomial");
  FrequencyForm out;
  out.field = f.field();
  for (const auto& e : f.terms()) {
    FieldElement r = e.lambda.re(), w = e.lambda.im();
    int s = sign(w);
    if (s < 0) continue;
    FreqTerm t{r, w, {}, {}};
    if (s == 0) {
      t.q1 = e.poly;
    } else {
      for (const auto& c : e.poly) {
        t.q1.push_back(FieldElement(2) * c.re());
        t.q2.push_back(FieldElement(-2) * c.im());
      }
      trim(t.q1);
      trim(t.q2);
    }
    out.terms.push_back(std::move(t));
  }
  return out;
}

// ---------------------------------------------------------------- evaluation

CInterval eval_coeffs(const std::vector<CInterval>& poly, const Interval& t) {
  mpfr_prec_t prec = t.prec();
  CInterval acc(Interval(0L, prec), Interval(0L, prec));
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = t * acc + *it;
  return acc;
}

ExpPolyEvaluator::ExpPolyEvaluator(const ExpPoly& f, mpfr_prec_t prec) : prec_(prec) {
  for (const auto& e : f.terms()) {
    Term t{e.lambda.approx(prec), {}};
    for (const auto& c : e.poly) t.poly.push_back(c.approx(prec));
    terms_.push_back(std::move(t));
  }
}

CInterval ExpPolyEvaluator::eval(const Interval& t) const {
  CInterval acc(Interval(0L, prec_), Interval(0L, prec_));
  for (const auto& term : terms_) {
    CInterval p = eval_coeffs(term.poly, t);
    bool zero_lambda = mpfr_zero_p(term.lambda.re.lo()) && mpfr_zero_p(term.lambda.re.hi()) &&
                       mpfr_zero_p(term.lambda.im.lo()) && mpfr_zero_p(term.lambda.im.hi());
    acc = acc + (zero_lambda ? p : p * exp(t * term.lambda));
  }
  return acc;
}

CInterval ExpPolyEvaluator::eval(const Rational& t) const { return eval(Interval(t, prec_)); }

Box eval_interval(const ExpPoly& f, const Rational& t, const Rational& eps) {
  for (mpfr_prec_t prec = 64;; prec *= 2) {
    ExpPolyEvaluator ev(f, prec);
    CInterval v = ev.eval(t);
    bool real = f.real_valued();
    if (v.re.width() <= eps && (real || v.im.width() <= eps)) {
      if (real) return {v.re.lower(), v.re.upper(), Rational(0), Rational(0)};
      return {v.re.lower(), v.re.upper(), v.im.lower(), v.im.upper()};
    }
    if (prec > (1 << 20)) throw std::logic_error("evaluation precision limit reached");
  }
}

Rational lipschitz_bound(const ExpPoly& f, const Rational& a, const Rational& b) {
  const mpfr_prec_t prec = 64;
  Rational R = std::max(abs_q(a), abs_q(b));
  Interval Ri(R, prec), total(0L, prec);
  ExpPoly d = f.derivative();
  for (const auto& e : d.terms()) {
    Interval pb(0L, prec), rp(1L, prec);
    for (const auto& c : e.poly) {
      pb = pb + Interval::from_bounds(Rational(0), abs(c.approx(prec)).upper(), prec) * rp;
      rp = rp * Ri;
    }
    Interval re = e.lambda.approx(prec).re;
    Rational hi = re.upper(), lo = re.lower();
    Rational growth = std::max(std::max(hi * a, hi * b), std::max(lo * a, lo * b));
    total = total + pb * exp(Interval(growth, prec));
  }
  Rational M = total.upper();
  Rational unit = pow2_q(-30);
  Rational q = Rational(ceil_q(M / unit)) * unit;
  return sgn(q) > 0 ? q : unit;
}

}  // namespace skolem
