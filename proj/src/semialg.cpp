#include "skolem/semialg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <json.hpp>

#include "skolem/kpoly.hpp"

namespace skolem {

// ---------------------------------------------------------------- SemiAlgSet

SemiAlgSet SemiAlgSet::gt(const MPoly& p) {
  if (p.is_constant()) return sgn(p.constant_value()) > 0 ? always() : never();
  SemiAlgSet s(Kind::Gt);
  s.poly_ = p;
  return s;
}

SemiAlgSet SemiAlgSet::eq(const MPoly& p) {
  if (p.is_constant()) return p.is_zero() ? always() : never();
  SemiAlgSet s(Kind::Eq);
  s.poly_ = p;
  return s;
}

SemiAlgSet SemiAlgSet::all_of(std::vector<SemiAlgSet> parts) {
  SemiAlgSet s(Kind::And);
  for (auto& p : parts) {
    if (p.kind_ == Kind::False) return never();
    if (p.kind_ == Kind::True) continue;
    if (p.kind_ == Kind::And)
      for (auto& q : p.parts_) s.parts_.push_back(std::move(q));
    else
      s.parts_.push_back(std::move(p));
  }
  if (s.parts_.empty()) return always();
  if (s.parts_.size() == 1) return s.parts_[0];
  return s;
}

SemiAlgSet SemiAlgSet::any_of(std::vector<SemiAlgSet> parts) {
  SemiAlgSet s(Kind::Or);
  for (auto& p : parts) {
    if (p.kind_ == Kind::True) return always();
    if (p.kind_ == Kind::False) continue;
    if (p.kind_ == Kind::Or)
      for (auto& q : p.parts_) s.parts_.push_back(std::move(q));
    else
      s.parts_.push_back(std::move(p));
  }
  if (s.parts_.empty()) return never();
  if (s.parts_.size() == 1) return s.parts_[0];
  return s;
}

SemiAlgSet operator!(const SemiAlgSet& a) {
  if (a.kind_ == SemiAlgSet::Kind::True) return SemiAlgSet::never();
  if (a.kind_ == SemiAlgSet::Kind::False) return SemiAlgSet::always();
  if (a.kind_ == SemiAlgSet::Kind::Not) return a.parts_[0];
  SemiAlgSet s(SemiAlgSet::Kind::Not);
  s.parts_.push_back(a);
  return s;
}

bool SemiAlgSet::eval(const std::function<int(const MPoly&)>& sign) const {
  switch (kind_) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Gt: return sign(poly_) > 0;
    case Kind::Eq: return sign(poly_) == 0;
    case Kind::Not: return !parts_[0].eval(sign);
    case Kind::And:
      for (const auto& p : parts_)
        if (!p.eval(sign)) return false;
      return true;
    case Kind::Or:
      for (const auto& p : parts_)
        if (p.eval(sign)) return true;
      return false;
  }
  return false;
}

bool SemiAlgSet::contains(const std::vector<Rational>& x) const {
  return eval([&](const MPoly& p) { return sgn(p.eval(x)); });
}

void SemiAlgSet::collect(std::vector<MPoly>& out) const {
  if (kind_ == Kind::Gt || kind_ == Kind::Eq) {
    if (std::find(out.begin(), out.end(), poly_) == out.end()) out.push_back(poly_);
    return;
  }
  for (const auto& p : parts_) p.collect(out);
}

std::vector<MPoly> SemiAlgSet::polys() const {
  std::vector<MPoly> out;
  collect(out);
  return out;
}

int SemiAlgSet::nvars() const {
  auto ps = polys();
  return ps.empty() ? -1 : ps[0].nvars();
}

std::string SemiAlgSet::str(const std::vector<std::string>& names) const {
  switch (kind_) {
    case Kind::True: return "true";
    case Kind::False: return "false";
    case Kind::Gt: return "(" + poly_.str(names) + " > 0)";
    case Kind::Eq: return "(" + poly_.str(names) + " = 0)";
    case Kind::Not: return "!" + parts_[0].str(names);
    default: break;
  }
  std::string sep = kind_ == Kind::And ? " & " : " | ";
  std::string out = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) out += (i ? sep : "") + parts_[i].str(names);
  return out + ")";
}

// ---------------------------------------------------------------- exponential sums

namespace {

Interval real_enclosure(const FieldElement& x, mpfr_prec_t prec) {
  if (x.is_rational()) return Interval(x.rational_value(), prec);
  return x.approx(prec).re;
}

// Positive rational below the positive real number x.
Rational lower_bound_positive(const FieldElement& x) {
  for (mpfr_prec_t p = 64; p <= 1 << 14; p *= 2) {
    Interval v = real_enclosure(x, p);
    if (v.positive()) return v.lower();
  }
  throw CapExceeded("cannot separate a spectral gap from zero");
}

Rational coeff_abs_sum(const QPoly& q, int from, int to, const Rational& scale = Rational(1)) {
  Rational s(0), pw(1);
  for (int k = 0; k <= std::min(to, q.degree()); ++k) {
    if (k >= from) s += abs_q(q.c[static_cast<std::size_t>(k)]) * pw;
    pw *= scale;
  }
  return s;
}

Rational ceil_rational(const Rational& q) { return Rational(ceil_q(q)); }

// Least integer t >= t0 with S t^D e^{-g t} < bound, where t0 >= D/g makes the left side
// decreasing.
Rational decay_time(const Rational& S, int D, const Rational& g, const Rational& bound, const Rational& t0) {
  const mpfr_prec_t prec = 128;
  Interval iS(S, prec), ig(g, prec);
  auto ok = [&](const Rational& t) {
    Interval it(t, prec);
    Interval v = iS * pow(it, static_cast<unsigned>(D)) * exp(-(ig * it));
    return v.finite() && v.upper() < bound;
  };
  Rational lo = std::max(Rational(0), ceil_rational(t0));
  if (ok(lo)) return lo;
  Rational hi = std::max(Rational(1), Rational(lo * 2));
  while (!ok(hi)) {
    if (hi > pow2_q(62)) throw CapExceeded("domination threshold too large");
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    Rational mid = ceil_rational((lo + hi) / 2);
    if (mid == hi) break;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

int ExpSum::eventual_sign() const { return terms.empty() ? 0 : sgn(terms[0].Q.lc()); }

Interval ExpSum::eval(const Rational& s, const Rational& t, mpfr_prec_t prec) const {
  Interval acc(0L, prec);
  Interval is(s, prec), it(t, prec);
  for (const auto& term : terms) acc += skolem::eval(term.Q, is) * exp(real_enclosure(term.beta, prec) * it);
  return acc;
}

ExpSum exp_sum_rewrite(const MPoly& P, int poly_var, const std::vector<FieldElement>& r) {
  const int n = P.nvars() - (poly_var >= 0 ? 1 : 0);
  if (static_cast<int>(r.size()) != n) throw DimensionMismatch("one rate per exponential variable is required");
  for (const auto& x : r)
    if (!x.is_real()) throw NotRealElement("rates must be real");
  std::map<std::vector<int>, std::vector<Rational>> blocks;
  for (const auto& [m, c] : P.terms()) {
    std::vector<int> e;
    int k = 0;
    for (int i = 0; i < P.nvars(); ++i)
      if (i == poly_var)
        k = m[static_cast<std::size_t>(i)];
      else
        e.push_back(m[static_cast<std::size_t>(i)]);
    auto& q = blocks[e];
    if (static_cast<int>(q.size()) <= k) q.resize(static_cast<std::size_t>(k) + 1, Rational(0));
    q[static_cast<std::size_t>(k)] += c;
  }
  ExpSum s;
  for (auto& [e, q] : blocks) {
    FieldElement beta(0);
    for (int i = 0; i < n; ++i)
      if (e[static_cast<std::size_t>(i)] != 0) beta += FieldElement(e[static_cast<std::size_t>(i)]) * r[static_cast<std::size_t>(i)];
    QPoly Q(std::move(q));
    bool merged = false;
    for (auto& t : s.terms)
      if (compare(t.beta, beta) == 0) {
        t.Q += Q;
        merged = true;
        break;
      }
    if (!merged) s.terms.push_back({Q, beta});
  }
  s.terms.erase(std::remove_if(s.terms.begin(), s.terms.end(), [](const ExpBlock& t) { return t.Q.is_zero_poly(); }),
                s.terms.end());
  std::sort(s.terms.begin(), s.terms.end(),
            [](const ExpBlock& a, const ExpBlock& b) { return compare(a.beta, b.beta) > 0; });
  return s;
}

Rational domination_threshold(const ExpSum& s) {
  if (s.terms.empty()) return Rational(0);
  const QPoly& Q1 = s.terms[0].Q;
  if (s.terms.size() == 1) {
    Rational T(0);
    QPoly sq = squarefree_part(Q1);
    for (auto iso : isolate_real_roots(Q1)) {
      refine_real_root(sq, iso, Rational(1, 16));
      T = std::max(T, iso.hi);
    }
    return T;
  }
  const int d1 = Q1.degree();
  const Rational c = abs_q(Q1.lc());
  const Rational L1 = coeff_abs_sum(Q1, 0, d1 - 1);
  Rational T = std::max(Rational(1), Rational(2 * L1 / c));
  const Rational share = c / (2 * static_cast<long>(s.terms.size() - 1));
  for (std::size_t i = 1; i < s.terms.size(); ++i) {
    const QPoly& Qi = s.terms[i].Q;
    Rational g = lower_bound_positive(s.terms[0].beta - s.terms[i].beta);
    int D = std::max(0, Qi.degree() - d1);
    Rational S = coeff_abs_sum(Qi, 0, Qi.degree());
    T = std::max(T, decay_time(S, D, g, share, std::max(Rational(1), Rational(Rational(D) / g))));
  }
  return T;
}

Eventuality eventual_membership(const SemiAlgSet& D, bool has_t, const std::vector<FieldElement>& r) {
  const int nv = static_cast<int>(r.size()) + (has_t ? 1 : 0);
  Eventuality out;
  out.T = 0;
  for (const auto& p : D.polys()) {
    if (p.nvars() != nv) throw DimensionMismatch("atom variable count does not match the trajectory");
    ExpSum s = exp_sum_rewrite(p, has_t ? 0 : -1, r);
    EventualAtom a{p, s.eventual_sign(), Rational(0)};
    if (has_t) {
      a.T = domination_threshold(s);
    } else if (s.terms.size() > 1) {
      // blocks are constants; reuse the bound with t entering only through the exponentials
      a.T = domination_threshold(s);
    }
    out.T = std::max(out.T, a.T);
    out.atoms.push_back(std::move(a));
  }
  out.T = ceil_rational(out.T);
  out.in = D.eval([&](const MPoly& p) {
    for (const auto& a : out.atoms)
      if (a.poly == p) return a.sign;
    return 0;
  });
  return out;
}

// ---------------------------------------------------------------- limits

LimitResult limit_semialg(const MPoly& A, const std::vector<FieldElement>& r, const Rational& T0,
                          const BranchValue& branch, const Rational& bound) {
  LimitResult res;
  res.blocks = exp_sum_rewrite(A, A.nvars() - 1, r);
  const auto& terms = res.blocks.terms;
  if (terms.empty()) throw InvalidInput("annihilating polynomial vanishes identically on the trajectory");
  const QPoly& Q1 = terms[0].Q;
  const int d = Q1.degree();
  if (d == 0) {
    if (terms.size() == 1) throw InvalidInput("annihilating polynomial has no zero on the trajectory");
    throw UnboundedFunction("leading block is constant, so the function cannot stay bounded");
  }

  auto roots = roots_of(to_kpoly(Q1));
  // s_min: below every pairwise root distance and every |Im| of a non-real root
  Rational s_min(1);
  for (mpfr_prec_t p = 64;; p *= 2) {
    if (p > 1 << 14) throw CapExceeded("root separation of the leading block");
    bool good = true;
    Rational s(1);
    std::vector<CInterval> ap;
    for (const auto& [a, m] : roots) ap.push_back(a.approx(p));
    for (std::size_t i = 0; i < roots.size() && good; ++i) {
      if (!roots[i].first.is_real()) {
        Interval im = abs(ap[i].im);
        if (!im.positive()) good = false;
        else s = std::min(s, im.lower());
      }
      for (std::size_t j = i + 1; j < roots.size() && good; ++j) {
        Interval dist = abs(ap[i] - ap[j]);
        if (!dist.positive()) good = false;
        else s = std::min(s, dist.lower());
      }
    }
    if (good) {
      s_min = s;
      break;
    }
  }

  auto pick = [&](const Rational& t) {
    Rational v = branch(t);
    int found = -1;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      CInterval a = roots[i].first.approx(96);
      Interval dist = abs(a - CInterval(Interval(v, 96), Interval(0L, 96)));
      if (dist.upper() < s_min / 2) {
        if (found >= 0 || !roots[i].first.is_real())
          throw AmbiguousBranch("branch value does not single out a real root of the leading block");
        found = static_cast<int>(i);
      }
    }
    if (found < 0) throw AmbiguousBranch("branch value is not close to any root of the leading block");
    return roots[static_cast<std::size_t>(found)].first;
  };

  if (terms.size() == 1) {
    res.eps = 1;
    res.T2 = T0;
    res.value = pick(T0 + 1);
    return res;
  }

  Rational M(0);
  for (std::size_t i = 1; i < terms.size(); ++i) M += coeff_abs_sum(terms[i].Q, 0, terms[i].Q.degree(), bound);
  const Rational lc = abs_q(Q1.lc());
  const Rational gap = lower_bound_positive(terms[0].beta - terms[1].beta);
  res.eps = gap / (2 * d);
  // closest root within K e^{-gap t / d}, K = (M / lc)^{1/d}
  const mpfr_prec_t prec = 128;
  Interval lnK = (log(Interval(M, prec)) - log(Interval(lc, prec))) / Interval(static_cast<long>(d), prec);
  Interval ieps(res.eps, prec), igap(gap, prec);
  Rational t_close = lnK.upper() / res.eps + 1;
  Interval sel = Interval(static_cast<long>(d), prec) * (lnK - log(Interval(s_min / 4, prec))) / igap;
  Rational t_sel = sel.upper() + 1;
  res.T2 = ceil_rational(std::max({T0, t_close, t_sel, Rational(0)}));
  res.value = pick(res.T2);
  return res;
}

// ---------------------------------------------------------------- CAD

namespace {

struct Projector {
  int n;
  const CadOptions& opt;
  std::vector<std::vector<MPoly>> levels;

  void add(const MPoly& p, int cap) {
    if (p.is_zero() || p.is_constant()) return;
    for (const MPoly& f0 : irreducible_factors(p)) {
      MPoly f = f0.primitive();
      if (f.is_constant()) continue;
      if (f.total_degree() > cap) throw CapExceeded("projection factor of total degree " + std::to_string(f.total_degree()));
      auto& L = levels[static_cast<std::size_t>(f.main_var())];
      if (std::find(L.begin(), L.end(), f) != L.end()) continue;
      if (static_cast<int>(L.size()) >= opt.max_polys_per_level) throw CapExceeded("too many projection factors");
      L.push_back(f);
    }
  }

  static MPoly reductum(const MPoly& f, int v) {
    int d = f.degree(v);
    MPoly r(f.nvars());
    for (const auto& [m, c] : f.terms())
      if (m[static_cast<std::size_t>(v)] != d) r.add_term(m, c);
    return r;
  }

  static std::vector<MPoly> reducta(const MPoly& f, int v) {
    std::vector<MPoly> out;
    MPoly g = f;
    while (g.degree(v) > 0) {
      out.push_back(g);
      if (g.leading_coeff(v).is_constant()) break;
      g = reductum(g, v);
    }
    return out;
  }

  void project(int v) {
    const auto F = levels[static_cast<std::size_t>(v)];
    const int cap = opt.projected_degree_cap;
    for (std::size_t a = 0; a < F.size(); ++a) {
      for (int k = 0; k <= F[a].degree(v); ++k) add(F[a].coeff(v, k), cap);
      for (const MPoly& fs : reducta(F[a], v)) {
        add(fs.leading_coeff(v), cap);
        MPoly dfs = fs.derivative(v);
        for (int j = 0; j < fs.degree(v) - 1; ++j) add(psc(fs, dfs, v, j), cap);
        for (std::size_t b = a + 1; b < F.size(); ++b) {
          int top = std::min(fs.degree(v), F[b].degree(v));
          for (int j = 0; j < top; ++j) add(psc(fs, F[b], v, j), cap);
        }
      }
    }
  }

  void close_under_derivative(int v) {
    auto& L = levels[static_cast<std::size_t>(v)];
    for (std::size_t i = 0; i < L.size(); ++i) {
      MPoly d = L[i].derivative(v);
      add(d, opt.projected_degree_cap);
    }
  }
};

bool less_real(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  for (mpfr_prec_t p = 64; p <= 1 << 16; p *= 2) {
    Interval x = a.approx(p).re, y = b.approx(p).re;
    if (x.upper() < y.lower()) return true;
    if (y.upper() < x.lower()) return false;
  }
  throw std::logic_error("comparing equal algebraic numbers");
}

Rational rational_between(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  for (mpfr_prec_t p = 64; p <= 1 << 16; p *= 2) {
    Rational lo = a.approx(p).re.upper(), hi = b.approx(p).re.lower();
    if (lo < hi) return simplest_between((2 * lo + hi) / 3, (lo + 2 * hi) / 3);
  }
  throw std::logic_error("cannot separate consecutive roots");
}

struct Root {
  AlgebraicNumber value;
  RootRef ref;
};

double approx_double(const FieldElement& x) {
  if (x.is_rational()) return to_double(x.rational_value());
  return x.approx(64).re.mid_d();
}

std::vector<FieldElement> padded(const std::vector<FieldElement>& s, int n) {
  std::vector<FieldElement> x = s;
  x.resize(static_cast<std::size_t>(n), FieldElement(0));
  return x;
}

// Position of x relative to the index-th real root of q: -1 below, 0 on, 1 above; 2 when
// q has no such root.
int compare_root(const QPoly& q, int index, const Rational& x) {
  if (q.degree() <= 0) return 2;
  QPoly s = squarefree_part(q);
  auto roots = isolate_real_roots(s);
  if (index < 0 || index >= static_cast<int>(roots.size())) return 2;
  const auto& r = roots[static_cast<std::size_t>(index)];
  if (r.exact()) return x < r.lo ? -1 : (x > r.lo ? 1 : 0);
  if (x <= r.lo) return -1;
  if (x >= r.hi) return 1;
  int sx = sign_at(s, x);
  if (sx == 0) return 0;
  return sx == sign_at(s, r.lo) ? -1 : 1;
}

}  // namespace

CellDecomposition cad(const std::vector<MPoly>& polys, int nvars, const CadOptions& opt) {
  if (nvars < 1 || nvars > 4) throw DimensionTooHigh("cell decomposition supports 1 to 4 variables");
  Projector pr{nvars, opt, std::vector<std::vector<MPoly>>(static_cast<std::size_t>(nvars))};
  CellDecomposition D;
  D.nvars = nvars;
  for (const auto& p : polys) {
    if (p.nvars() != nvars) throw DimensionMismatch("input polynomial has the wrong variable count");
    if (p.total_degree() > opt.degree_cap) throw CapExceeded("input polynomial above the degree cap");
    D.inputs.push_back(p);
    pr.add(p, opt.degree_cap);
  }
  for (int v = nvars - 1; v >= 0; --v) {
    if (v < opt.thom_levels) pr.close_under_derivative(v);
    if (v > 0) pr.project(v);
  }
  D.levels = std::move(pr.levels);
  D.cells.resize(static_cast<std::size_t>(nvars));

  for (int k = 0; k < nvars; ++k) {
    std::vector<int> bases;
    if (k == 0)
      bases.push_back(-1);
    else
      for (int i = 0; i < static_cast<int>(D.cells[static_cast<std::size_t>(k - 1)].size()); ++i) bases.push_back(i);
    for (int bi : bases) {
      Cell base;
      if (bi >= 0) base = D.cells[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(bi)];
      std::vector<Root> merged;
      const auto& L = D.levels[static_cast<std::size_t>(k)];
      for (int pi = 0; pi < static_cast<int>(L.size()); ++pi) {
        KPoly p = L[static_cast<std::size_t>(pi)].univariate(k, padded(base.sample, k));
        if (p.degree() <= 0) continue;
        std::vector<AlgebraicNumber> real;
        for (const auto& [a, m] : roots_of(p))
          if (a.is_real()) real.push_back(a);
        std::sort(real.begin(), real.end(), less_real);
        for (int ri = 0; ri < static_cast<int>(real.size()); ++ri) {
          bool dup = false;
          for (const auto& m : merged)
            if (m.value.same_as(real[static_cast<std::size_t>(ri)])) dup = true;
          if (!dup) merged.push_back({real[static_cast<std::size_t>(ri)], {pi, ri}});
        }
      }
      std::sort(merged.begin(), merged.end(), [](const Root& a, const Root& b) { return less_real(a.value, b.value); });

      auto& out = D.cells[static_cast<std::size_t>(k)];
      auto push = [&](Cell c) {
        c.parent = bi;
        c.type = base.type;
        c.sample_approx.clear();
        for (const auto& x : c.sample) c.sample_approx.push_back(approx_double(x));
        int idx = static_cast<int>(out.size());
        out.push_back(std::move(c));
        if (bi >= 0) D.cells[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(bi)].children.push_back(idx);
      };
      auto sector = [&](const Rational& x, RootRef lo, RootRef hi) {
        Cell c;
        c.field = base.field;
        c.sample = base.sample;
        c.sample.push_back(FieldElement(x));
        c.lower = lo;
        c.upper = hi;
        push(std::move(c));
        out.back().type.push_back(1);
      };
      if (merged.empty()) {
        sector(Rational(0), {}, {});
        continue;
      }
      sector(Rational(floor_q(merged.front().value.approx(64).re.lower()) - 1), {}, merged.front().ref);
      for (std::size_t i = 0; i < merged.size(); ++i) {
        Cell c;
        c.lower = c.upper = merged[i].ref;
        const AlgebraicNumber& a = merged[i].value;
        if (a.is_rational()) {
          c.field = base.field;
          c.sample = base.sample;
          c.sample.push_back(FieldElement(a.rational_value()));
        } else if (!base.field) {
          FieldBuild fb = make_field_numbers({a});
          c.field = fb.field;
          c.sample = base.sample;
          c.sample.push_back(fb.embeddings[0]);
        } else {
          FieldExtension ext = extend_field(base.field, {a});
          c.field = ext.field;
          for (const auto& x : base.sample) c.sample.push_back(lift_element(x, ext));
          c.sample.push_back(ext.embeddings[0]);
        }
        push(std::move(c));
        out.back().type.push_back(0);
        if (i + 1 < merged.size())
          sector(rational_between(a, merged[i + 1].value), merged[i].ref, merged[i + 1].ref);
      }
      sector(Rational(ceil_q(merged.back().value.approx(64).re.upper()) + 1), merged.back().ref, {});
    }
  }
  return D;
}

int CellDecomposition::sign(const MPoly& p, int level, int idx) const {
  const Cell& c = cells.at(static_cast<std::size_t>(level)).at(static_cast<std::size_t>(idx));
  if (p.main_var() > level) throw DimensionMismatch("polynomial uses a coordinate above the cell level");
  return skolem::sign(p.eval(padded(c.sample, p.nvars())));
}

int CellDecomposition::locate(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != nvars) throw DimensionMismatch("point has the wrong dimension");
  int cur = -1;
  for (int k = 0; k < nvars; ++k) {
    QPoly g = QPoly::constant(Rational(1));
    for (const auto& f : levels[static_cast<std::size_t>(k)]) {
      QPoly q = f.univariate(k, x);
      if (q.degree() > 0) g = g * q;
    }
    int below = 0, on = 0;
    if (g.degree() > 0) {
      auto roots = isolate_real_roots(g);
      for (int i = 0; i < static_cast<int>(roots.size()); ++i) {
        int c = compare_root(g, i, x[static_cast<std::size_t>(k)]);
        if (c > 0) ++below;
        if (c == 0) on = 1;
      }
    }
    int pos = 2 * below + on;
    if (k == 0) {
      cur = pos;
    } else {
      const auto& ch = cells[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(cur)].children;
      if (pos >= static_cast<int>(ch.size())) throw std::logic_error("point falls outside the decomposition");
      cur = ch[static_cast<std::size_t>(pos)];
    }
  }
  return cur;
}

bool CellDecomposition::contains(int level, int idx, const std::vector<Rational>& x) const {
  for (int k = level; k >= 0; --k) {
    const Cell& c = cells[static_cast<std::size_t>(k)][static_cast<std::size_t>(idx)];
    const Rational& xk = x.at(static_cast<std::size_t>(k));
    auto cmp = [&](const RootRef& r) {
      QPoly q = levels[static_cast<std::size_t>(k)][static_cast<std::size_t>(r.poly)].univariate(k, x);
      return compare_root(q, r.index, xk);
    };
    if (c.section()) {
      if (cmp(c.lower) != 0) return false;
    } else {
      if (c.lower.poly >= 0 && cmp(c.lower) != 1) return false;
      if (c.upper.poly >= 0 && cmp(c.upper) != -1) return false;
    }
    idx = c.parent;
  }
  return true;
}

SemiAlgSet CellDecomposition::sign_condition(int level, int idx) const {
  std::vector<SemiAlgSet> parts;
  for (int k = 0; k <= level; ++k)
    for (const auto& f : levels[static_cast<std::size_t>(k)]) {
      MPoly q = f.with_nvars(level + 1);
      int s = sign(f, level, idx);
      parts.push_back(s > 0 ? SemiAlgSet::gt(q) : s < 0 ? SemiAlgSet::lt(q) : SemiAlgSet::eq(q));
    }
  return SemiAlgSet::all_of(std::move(parts));
}

std::string CellDecomposition::json() const {
  using nlohmann::json;
  json j;
  j["nvars"] = nvars;
  for (const auto& p : inputs) j["inputs"].push_back(p.str());
  for (const auto& L : levels) {
    json l = json::array();
    for (const auto& p : L) l.push_back(p.str());
    j["levels"].push_back(l);
  }
  for (std::size_t k = 0; k < cells.size(); ++k) {
    json l = json::array();
    for (const auto& c : cells[k]) {
      json cj;
      cj["type"] = c.type;
      cj["parent"] = c.parent;
      cj["sample"] = c.sample_approx;
      cj["lower"] = {c.lower.poly, c.lower.index};
      cj["upper"] = {c.upper.poly, c.upper.index};
      l.push_back(cj);
    }
    j["cells"].push_back(l);
  }
  return j.dump(2);
}

}  // namespace skolem
