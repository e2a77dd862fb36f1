#include "skolem/unbounded.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <json.hpp>

namespace skolem {

namespace {

Interval enclose(const FieldElement& x, mpfr_prec_t prec) {
  if (x.is_rational()) return Interval(x.rational_value(), prec);
  return x.approx(prec).re;
}

MPoly remap(const MPoly& P, const std::vector<int>& where, int n) {
  MPoly r(n);
  for (const auto& [m, c] : P.terms()) {
    Monomial mm(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (where[i] < 0) throw std::logic_error("eliminated variable still occurs");
      mm[static_cast<std::size_t>(where[i])] += m[i];
    }
    r.add_term(mm, c);
  }
  return r;
}

// P = P0 + s P1 modulo s^2 = 1 - c^2.
std::pair<MPoly, MPoly> split_sin(const MPoly& P, int cv, int sv) {
  const int n = P.nvars();
  MPoly w = MPoly::constant(n, Rational(1)) - MPoly::var(n, cv) * MPoly::var(n, cv);
  MPoly P0(n), P1(n);
  for (const auto& [m, c] : P.terms()) {
    int e = m[static_cast<std::size_t>(sv)];
    Monomial mm = m;
    mm[static_cast<std::size_t>(sv)] = 0;
    MPoly t(n);
    t.add_term(mm, c);
    t = t * pow(w, static_cast<unsigned>(e / 2));
    if (e % 2)
      P1 = P1 + t;
    else
      P0 = P0 + t;
  }
  return {P0, P1};
}

// K + sqrt(s) L = 0, for s >= 0.
SemiAlgSet root_form_zero(const MPoly& K, const MPoly& L, const MPoly& s) {
  return SemiAlgSet::eq(K * K - s * L * L) && SemiAlgSet::le(K * L);
}

// K + sqrt(s) L > 0, for s >= 0.
SemiAlgSet root_form_positive(const MPoly& K, const MPoly& L, const MPoly& s) {
  MPoly d = K * K - s * L * L;
  using S = SemiAlgSet;
  return S::any_of({S::gt(K) && S::ge(L), S::gt(K) && S::lt(L) && S::gt(d), S::le(K) && S::gt(L) && S::lt(d)});
}

struct TrigPair {
  MPoly c, s;
};

// cos(n x), sin(n x) from c = cos x, s = sin x.
TrigPair multiple_angle(const MPoly& c, const MPoly& s, long n) {
  const int nv = c.nvars();
  TrigPair p{MPoly::constant(nv, Rational(1)), MPoly(nv)};
  for (long k = 0; k < std::labs(n); ++k) p = {p.c * c - p.s * s, p.s * c + p.c * s};
  if (n < 0) p.s = -p.s;
  return p;
}

TrigPair add_angles(const TrigPair& a, const TrigPair& b) { return {a.c * b.c - a.s * b.s, a.s * b.c + a.c * b.s}; }

// Coordinates of each omega in the given basis, which must be integral.
std::vector<std::vector<Integer>> coords_in(const std::vector<FieldElement>& basis,
                                            const std::vector<FieldElement>& omegas) {
  std::vector<FieldElement> all = basis;
  all.insert(all.end(), omegas.begin(), omegas.end());
  QBasis qb = rational_basis(all);
  const std::size_t k = basis.size();
  if (qb.basis.size() != k) throw InvalidInput("frequencies are not in the span of the supplied basis");
  // Solve [coords(b_1) .. coords(b_k)] n = coords(omega) over Q.
  std::vector<std::vector<Integer>> out;
  for (std::size_t j = 0; j < omegas.size(); ++j) {
    std::vector<std::vector<Rational>> A(k, std::vector<Rational>(k + 1));
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) A[r][c] = Rational(qb.coords[c][r]);
      A[r][k] = Rational(qb.coords[k + j][r]);
    }
    for (std::size_t col = 0; col < k; ++col) {
      std::size_t p = col;
      while (p < k && sgn(A[p][col]) == 0) ++p;
      if (p == k) throw InvalidInput("supplied basis is not independent");
      std::swap(A[p], A[col]);
      for (std::size_t r = 0; r < k; ++r) {
        if (r == col || sgn(A[r][col]) == 0) continue;
        Rational f = A[r][col] / A[col][col];
        for (std::size_t c = col; c <= k; ++c) A[r][c] -= f * A[col][c];
      }
    }
    std::vector<Integer> n;
    for (std::size_t r = 0; r < k; ++r) {
      Rational v = A[r][k] / A[r][r];
      if (v.get_den() != 1) throw InvalidInput("frequency is not an integer combination of the supplied basis");
      n.push_back(v.get_num());
    }
    out.push_back(n);
  }
  return out;
}

Rational rational_of(const FieldElement& x) {
  if (!x.is_rational()) throw InvalidInput("irrational coefficient; only rational coefficients reach the cell decomposition");
  return x.rational_value();
}

Rational exp_approx(const FieldElement& r, const Rational& t) {
  return exp(enclose(r, 256) * Interval(t, 256)).mid();
}

std::optional<Rational> root_approx(const MPoly& p, int level, const std::vector<Rational>& prefix, int index) {
  QPoly q = p.univariate(level, prefix);
  if (q.degree() <= 0) return std::nullopt;
  auto roots = isolate_real_roots(q);
  if (index < 0 || index >= static_cast<int>(roots.size())) return std::nullopt;
  auto r = roots[static_cast<std::size_t>(index)];
  refine_real_root(squarefree_part(q), r, pow2_q(-90));
  return (r.lo + r.hi) / 2;
}

// -1, 0, 1 for a < b, a == b, a > b.
int compare_numbers(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.same_as(b)) return 0;
  for (mpfr_prec_t p = 64; p <= 1 << 16; p *= 2) {
    Interval x = a.approx(p).re, y = b.approx(p).re;
    if (x.upper() < y.lower()) return -1;
    if (y.upper() < x.lower()) return 1;
  }
  throw CapExceeded("cannot order two limits");
}

double approx_d(const AlgebraicNumber& a) { return a.approx(64).re.mid_d(); }

void merge(UnboundedVerdict& v, Boundedness k, const Rational& T) {
  auto rank = [](Boundedness b) {
    switch (b) {
      case Boundedness::Unbounded: return 3;
      case Boundedness::Inconclusive: return 2;
      case Boundedness::BoundedConditional: return 1;
      default: return 0;
    }
  };
  if (rank(k) > rank(v.kind)) v.kind = k;
  if (k == Boundedness::Bounded || k == Boundedness::BoundedConditional) v.T = std::max(v.T, T);
}

std::string region_name(const std::vector<int>& signs) {
  std::string s;
  for (int x : signs) s += x > 0 ? '+' : '-';
  return s;
}

}  // namespace

// ---------------------------------------------------------------- trig rewrite

std::vector<std::string> TrigPoly::names() const {
  std::vector<std::string> out;
  if (has_t) out.push_back("t");
  for (std::size_t k = 0; k < rates.size(); ++k) out.push_back("u" + std::to_string(k + 1));
  for (std::size_t k = 0; k < b.size(); ++k) {
    out.push_back("c" + std::to_string(k + 1));
    out.push_back("s" + std::to_string(k + 1));
  }
  return out;
}

Interval TrigPoly::scale(const Rational& t, mpfr_prec_t prec) const {
  Interval acc(1L, prec), it(t, prec);
  for (std::size_t k = 0; k < rates.size(); ++k)
    acc *= exp(enclose(rates[k], prec) * it * Interval(Rational(u_shift[k]), prec));
  return acc;
}

Interval TrigPoly::eval(const Rational& t, mpfr_prec_t prec) const {
  std::vector<Interval> x;
  Interval it(t, prec);
  if (has_t) x.push_back(it);
  for (const auto& a : rates) x.push_back(exp(enclose(a, prec) * it));
  for (const auto& w : b) {
    Interval arg = enclose(w, prec) * it;
    x.push_back(cos(arg));
    x.push_back(sin(arg));
  }
  return Q.eval(x, prec);
}

TrigPoly rewrite_trig(const ExpPoly& f, const std::optional<std::vector<FieldElement>>& basis) {
  FrequencyForm ff = frequency_form(f);
  TrigPoly T;
  std::vector<FieldElement> omegas, rs;
  for (const auto& term : ff.terms) {
    if (sign(term.omega) != 0) omegas.push_back(term.omega);
    if (sign(term.r) != 0) rs.push_back(term.r);
    if (term.q1.size() > 1 || term.q2.size() > 1) T.has_t = true;
  }
  std::vector<std::vector<Integer>> wc, rc;
  if (basis) {
    T.b = *basis;
    wc = coords_in(T.b, omegas);
  } else if (!omegas.empty()) {
    QBasis qb = rational_basis(omegas);
    T.b = qb.basis;
    wc = qb.coords;
  }
  if (T.b.size() > 2) throw DimensionTooHigh("more than two independent frequencies");
  if (!rs.empty()) {
    QBasis qb = rational_basis(rs);
    T.rates = qb.basis;
    rc = qb.coords;
  }
  const int nb = T.base_vars();
  const int n = nb + 2 * static_cast<int>(T.b.size());
  std::vector<TrigPair> base_angle;
  for (std::size_t k = 0; k < T.b.size(); ++k)
    base_angle.push_back({MPoly::var(n, T.cos_var(static_cast<int>(k))), MPoly::var(n, T.sin_var(static_cast<int>(k)))});

  // first pass: u exponents, to clear negative powers
  std::size_t wi = 0, ri = 0;
  std::vector<std::vector<long>> uexp;
  std::vector<long> lowest(T.rates.size(), 0);
  for (const auto& term : ff.terms) {
    std::vector<long> e(T.rates.size(), 0);
    if (sign(term.r) != 0) {
      for (std::size_t k = 0; k < T.rates.size(); ++k) e[k] = rc[ri][k].get_si();
      ++ri;
    }
    for (std::size_t k = 0; k < e.size(); ++k) lowest[k] = std::min(lowest[k], e[k]);
    uexp.push_back(e);
  }
  for (long l : lowest) T.u_shift.push_back(Integer(-l));

  T.Q = MPoly(n);
  for (std::size_t j = 0; j < ff.terms.size(); ++j) {
    const auto& term = ff.terms[j];
    TrigPair angle{MPoly::constant(n, Rational(1)), MPoly(n)};
    if (sign(term.omega) != 0) {
      for (std::size_t k = 0; k < T.b.size(); ++k)
        angle = add_angles(angle, multiple_angle(base_angle[k].c, base_angle[k].s, wc[wi][k].get_si()));
      ++wi;
    }
    Monomial mu(static_cast<std::size_t>(n), 0);
    for (std::size_t k = 0; k < T.rates.size(); ++k)
      mu[static_cast<std::size_t>((T.has_t ? 1 : 0) + static_cast<int>(k))] =
          static_cast<int>(uexp[j][k] - lowest[k]);
    auto tpoly = [&](const Coeffs& q) {
      MPoly p(n);
      for (std::size_t d = 0; d < q.size(); ++d) {
        Monomial m = mu;
        if (d > 0) m[0] = static_cast<int>(d);
        p.add_term(m, rational_of(q[d]));
      }
      return p;
    };
    T.Q = T.Q + tpoly(term.q1) * angle.c + tpoly(term.q2) * angle.s;
  }
  return T;
}

// ---------------------------------------------------------------- shared pieces

Rational baker_crossover(const Rational& eps, long N, const Rational& floor) {
  const mpfr_prec_t prec = 128;
  Interval ie(eps, prec), l3 = log(Interval(3L, prec));
  auto ok = [&](const Rational& t) {
    Interval it(t, prec);
    Interval v = l3 - ie * it / Interval(3L, prec) + Interval(N, prec) * log(it);
    return v.upper() <= 0;
  };
  Rational lo = Rational(ceil_q(std::max({floor, Rational(Rational(3 * N) / eps), Rational(1)})));
  if (ok(lo)) return lo;
  Rational hi = lo * 2;
  while (!ok(hi)) {
    if (hi > pow2_q(62)) throw CapExceeded("Baker crossover too large");
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    Rational mid = Rational(ceil_q((lo + hi) / 2));
    if (mid == hi) break;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

std::optional<HorizonZero> zero_beyond(const ExpPoly& f, const Rational& H, const Rational& window,
                                       const BoundedCaps& caps) {
  FrequencyForm ff = frequency_form(f);
  double wmax = 0;
  for (const auto& term : ff.terms) wmax = std::max(wmax, std::abs(enclose(term.omega, 64).mid_d()));
  Rational h(1, 16);
  while (to_double(h) * (1 + wmax) > 0.25) h /= 2;
  ExpPolyEvaluator ev(f, 128);
  auto val = [&](const Rational& t) { return ev.eval(t).re; };
  auto confirm = [&](const Rational& a, const Rational& b) -> std::optional<HorizonZero> {
    Verdict v = decide_bounded(f, a, b, caps);
    if (v.overall.outcome == Outcome::HasZero) return HorizonZero{H, v.overall.lo, v.overall.hi};
    return std::nullopt;
  };
  const long steps = static_cast<long>(to_double(window / h));
  Interval prev = val(H), cur = val(H + h);
  for (long k = 1; k < steps; ++k) {
    Rational t = H + h * k;
    Interval next = val(t + h);
    auto sp = prev.sign(), sc = cur.sign();
    if (sp && sc && *sp * *sc < 0) {
      if (auto z = confirm(t - h, t)) return z;
    }
    double a = std::abs(prev.mid_d()), b = std::abs(cur.mid_d()), c = std::abs(next.mid_d());
    if (b <= a && b <= c && b < 1e-2) {
      if (auto z = confirm(t - h, t + h)) return z;
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return std::nullopt;
}

namespace {

void finish(UnboundedVerdict& v, const ExpPoly& f, const UnboundedCaps& caps) {
  if (v.kind == Boundedness::Unbounded && caps.evidence) {
    for (const auto& H : caps.horizons) {
      auto z = zero_beyond(f, H, caps.scan_window, caps.bounded);
      if (z)
        v.evidence.push_back(*z);
      else
        v.missing_horizons.push_back(H);
    }
  }
  if (caps.followup && (v.kind == Boundedness::Bounded || v.kind == Boundedness::BoundedConditional) && v.T > 0)
    v.followup = decide_bounded(f, Rational(0), v.T, caps.bounded);
}

std::optional<BakerParams> effective_params(const std::optional<BakerParams>& given, const UnboundedCaps& caps,
                                            bool& heuristic) {
  heuristic = false;
  if (given) return given;
  if (caps.heuristic_baker_default) {
    heuristic = true;
    return BakerParams{10, Rational(1000)};
  }
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------- one frequency

UnboundedVerdict decide_one_freq(const ExpPoly& f, const UnboundedCaps& caps) {
  UnboundedVerdict v;
  v.kind = Boundedness::Bounded;
  v.T = 0;
  try {
    TrigPoly T = rewrite_trig(f);
    if (T.b.size() > 1) throw InvalidInput("two independent frequencies; use the two-frequency decider");
    const int nb = T.base_vars();
    if (T.b.empty()) {
      // no oscillation: the zero set is eventually empty
      if (nb == 0) return v;
      Eventuality ev = eventual_membership(SemiAlgSet::eq(T.Q), T.has_t, T.rates);
      if (ev.in) throw InvalidInput("identically vanishing function");
      v.T = ev.T;
      v.cells.push_back({"", {}, "eventually_out", ev.T, "no oscillating terms"});
      finish(v, f, caps);
      return v;
    }
    const int n = nb + 1;
    auto [A0, B0] = split_sin(T.Q, T.cos_var(0), T.sin_var(0));
    std::vector<int> where(static_cast<std::size_t>(nb + 2));
    for (int i = 0; i < nb; ++i) where[static_cast<std::size_t>(i)] = i;
    where[static_cast<std::size_t>(nb)] = nb;
    where[static_cast<std::size_t>(nb + 1)] = -1;
    MPoly A = remap(A0, where, n), B = remap(B0, where, n);
    MPoly x = MPoly::var(n, nb);
    MPoly s = MPoly::constant(n, Rational(1)) - x * x;
    CadOptions opt = caps.cad;
    opt.thom_levels = nb;
    for (int sigma : {1, -1}) {
      SemiAlgSet E = SemiAlgSet::ge(s) && root_form_zero(A, Rational(sigma) * B, s);
      if (E.kind() == SemiAlgSet::Kind::False) continue;
      std::vector<MPoly> polys = E.polys();
      CellDecomposition D = cad(polys, n, opt);
      std::map<int, Eventuality> base_cache;
      for (int c = 0; c < static_cast<int>(D.leaves().size()); ++c) {
        bool member = E.eval([&](const MPoly& p) { return D.sign(p, nb, c); });
        if (!member) continue;
        const Cell& cell = D.leaves()[static_cast<std::size_t>(c)];
        CellReport rep{region_name({sigma}), cell.type, "", Rational(0), ""};
        bool in = true;
        Rational Tj(0);
        if (nb > 0) {
          int base = cell.parent;
          auto it = base_cache.find(base);
          if (it == base_cache.end())
            it = base_cache.emplace(base, eventual_membership(D.sign_condition(nb - 1, base), T.has_t, T.rates)).first;
          in = it->second.in;
          Tj = it->second.T;
        }
        rep.T = Tj;
        if (in) {
          rep.route = "eventually_in";
          rep.note = cell.section() ? "graph of a root function meets cos(bt) in every period"
                                    : "band contains a root function graph";
          v.cells.push_back(rep);
          merge(v, Boundedness::Unbounded, Tj);
          v.reason = "a zero cell persists along the trajectory";
          finish(v, f, caps);
          return v;
        }
        rep.route = "eventually_out";
        v.cells.push_back(rep);
        merge(v, Boundedness::Bounded, Tj);
      }
    }
    v.T = Rational(ceil_q(v.T));
    v.reason = v.cells.empty() ? "zero set is empty" : "every zero cell leaves the trajectory";
  } catch (const SkolemError& e) {
    v.kind = Boundedness::Inconclusive;
    v.reason = e.what();
    return v;
  }
  finish(v, f, caps);
  return v;
}

// ---------------------------------------------------------------- two frequencies

namespace {

struct TwoFreq {
  const TrigPoly& T;
  const CellDecomposition& D;
  int m;
  Rational T0;

  std::vector<Rational> u_at(const Rational& t) const {
    std::vector<Rational> u;
    for (const auto& r : T.rates) u.push_back(exp_approx(r, t));
    return u;
  }

  MPoly level_poly(int level, const RootRef& r) const { return D.levels[static_cast<std::size_t>(level)][static_cast<std::size_t>(r.poly)]; }

  Rational x1_at(const RootRef& r, const std::vector<Rational>& u) const {
    auto v = root_approx(level_poly(m, r), m, u, r.index);
    if (!v) throw AmbiguousBranch("boundary root disappeared along the trajectory");
    return *v;
  }

  LimitResult x1_limit(const RootRef& r) const {
    std::vector<int> where(static_cast<std::size_t>(m + 2), -1);
    for (int i = 0; i <= m; ++i) where[static_cast<std::size_t>(i)] = i;
    MPoly A = remap(level_poly(m, r), where, m + 1);
    BranchValue br = [this, r](const Rational& t) { return x1_at(r, u_at(t)); };
    return limit_semialg(A, T.rates, T0, br);
  }

  // x2 boundary over the x1 section r1, annihilated by a resultant in x1
  std::optional<LimitResult> x2_limit(const RootRef& r1, const RootRef& r2) const {
    MPoly res = resultant(level_poly(m, r1), level_poly(m + 1, r2), m);
    if (res.is_zero()) return std::nullopt;
    std::vector<int> where(static_cast<std::size_t>(m + 2), -1);
    for (int i = 0; i < m; ++i) where[static_cast<std::size_t>(i)] = i;
    where[static_cast<std::size_t>(m + 1)] = m;
    MPoly A = remap(res, where, m + 1);
    BranchValue br = [this, r1, r2](const Rational& t) {
      auto u = u_at(t);
      u.push_back(x1_at(r1, u));
      auto v = root_approx(level_poly(m + 1, r2), m + 1, u, r2.index);
      if (!v) throw AmbiguousBranch("boundary root disappeared along the trajectory");
      return *v;
    };
    return limit_semialg(A, T.rates, T0, br);
  }

  // numeric spread of the x2 range of the cell over an x1 sector at time t
  std::optional<double> x2_spread(const Cell& P, const Cell& C, const Rational& t) const {
    auto u = u_at(t);
    Rational lo = x1_at(P.lower, u), hi = x1_at(P.upper, u);
    double g2 = 1e300, h2 = -1e300;
    for (int k = 1; k < 32; ++k) {
      auto pt = u;
      pt.push_back(lo + (hi - lo) * Rational(k, 32));
      auto a = root_approx(level_poly(m + 1, C.lower), m + 1, pt, C.lower.index);
      auto b = root_approx(level_poly(m + 1, C.upper), m + 1, pt, C.upper.index);
      if (!a || !b) return std::nullopt;
      g2 = std::min(g2, to_double(*a));
      h2 = std::max(h2, to_double(*b));
    }
    return h2 - g2;
  }
};

}  // namespace

UnboundedVerdict decide_two_freq_simple(const ExpPoly& f, const std::optional<BakerParams>& baker,
                                        const UnboundedCaps& caps) {
  UnboundedVerdict v;
  v.kind = Boundedness::Bounded;
  v.T = 0;
  try {
    if (!f.simple()) throw InvalidInput("non-simple instance: polynomial coefficients must be constant");
    TrigPoly T = rewrite_trig(f);
    if (T.b.size() != 2) throw InvalidInput("frequency span is not two-dimensional");
    bool heuristic = false;
    auto params = effective_params(baker, caps, heuristic);
    const int m = static_cast<int>(T.rates.size());
    const int n = m + 2;
    auto [P0, P1] = split_sin(T.Q, T.cos_var(0), T.sin_var(0));
    auto [A0, C0] = split_sin(P0, T.cos_var(1), T.sin_var(1));
    auto [B0, D0] = split_sin(P1, T.cos_var(1), T.sin_var(1));
    std::vector<int> where(static_cast<std::size_t>(m + 4), -1);
    for (int i = 0; i < m; ++i) where[static_cast<std::size_t>(i)] = i;
    where[static_cast<std::size_t>(T.cos_var(0))] = m;
    where[static_cast<std::size_t>(T.cos_var(1))] = m + 1;
    MPoly A = remap(A0, where, n), B = remap(B0, where, n), C = remap(C0, where, n), Dp = remap(D0, where, n);
    MPoly x1 = MPoly::var(n, m), x2 = MPoly::var(n, m + 1), one = MPoly::constant(n, Rational(1));
    MPoly s1 = one - x1 * x1, s2 = one - x2 * x2;
    CadOptions opt = caps.cad;
    opt.thom_levels = m;

    for (int sig1 : {1, -1})
      for (int sig2 : {1, -1}) {
        MPoly Bs = Rational(sig1) * B, Cs = Rational(sig2) * C, Ds = Rational(sig1 * sig2) * Dp;
        MPoly G = A * A + s1 * Bs * Bs - s2 * (Cs * Cs + s1 * Ds * Ds);
        MPoly Hh = Rational(2) * (A * Bs - s2 * Cs * Ds);
        MPoly K = A * Cs + s1 * Bs * Ds, L = A * Ds + Bs * Cs;
        SemiAlgSet E = SemiAlgSet::ge(s1) && SemiAlgSet::ge(s2) && root_form_zero(G, Hh, s1) &&
                       !root_form_positive(K, L, s1);
        if (E.kind() == SemiAlgSet::Kind::False) continue;
        CellDecomposition D = cad(E.polys(), n, opt);
        std::map<int, Eventuality> base_cache;
        const std::string region = region_name({sig1, sig2});
        for (int c = 0; c < static_cast<int>(D.leaves().size()); ++c) {
          if (!E.eval([&](const MPoly& p) { return D.sign(p, m + 1, c); })) continue;
          const Cell& cell = D.leaves()[static_cast<std::size_t>(c)];
          const Cell& P = D.cells[static_cast<std::size_t>(m)][static_cast<std::size_t>(cell.parent)];
          CellReport rep{region, cell.type, "", Rational(0), ""};
          bool in = true;
          Rational T0(0);
          if (m > 0) {
            int base = P.parent;
            auto it = base_cache.find(base);
            if (it == base_cache.end())
              it = base_cache.emplace(base, eventual_membership(D.sign_condition(m - 1, base), false, T.rates)).first;
            in = it->second.in;
            T0 = it->second.T;
          }
          rep.T = T0;
          if (!in) {
            rep.route = "eventually_out";
            v.cells.push_back(rep);
            merge(v, Boundedness::Bounded, T0);
            continue;
          }
          TwoFreq tf{T, D, m, T0};
          std::vector<LimitResult> limits;
          std::string note;
          bool case_one = false;
          if (P.section()) {
            limits.push_back(tf.x1_limit(P.lower));
            if (cell.section()) {
              if (auto l = tf.x2_limit(P.lower, cell.lower)) limits.push_back(*l);
              else note = "x2 boundary rate not certified (resultant vanishes)";
              case_one = true;
            } else {
              auto lo = tf.x2_limit(P.lower, cell.lower), hi = tf.x2_limit(P.lower, cell.upper);
              if (!lo || !hi) {
                rep.route = "inconclusive";
                rep.note = "x2 boundary limits unavailable (resultant vanishes)";
                v.cells.push_back(rep);
                merge(v, Boundedness::Inconclusive, T0);
                continue;
              }
              if (compare_numbers(lo->value, hi->value) < 0) {
                rep.route = "case_III";
                rep.note = "x2 limits " + std::to_string(approx_d(lo->value)) + " < " + std::to_string(approx_d(hi->value));
                v.cells.push_back(rep);
                merge(v, Boundedness::Unbounded, T0);
                v.reason = "a zero cell keeps positive width in cos(b2 t)";
                finish(v, f, caps);
                return v;
              }
              limits.push_back(*lo);
              limits.push_back(*hi);
              case_one = true;
            }
          } else {
            LimitResult lo = tf.x1_limit(P.lower), hi = tf.x1_limit(P.upper);
            if (compare_numbers(lo.value, hi.value) < 0) {
              rep.route = "case_II";
              rep.note = "x1 limits " + std::to_string(approx_d(lo.value)) + " < " + std::to_string(approx_d(hi.value));
              v.cells.push_back(rep);
              merge(v, Boundedness::Unbounded, T0);
              v.reason = "a zero cell keeps positive width in cos(b1 t)";
              finish(v, f, caps);
              return v;
            }
            limits.push_back(lo);
            limits.push_back(hi);
            Rational ta = std::max(lo.T2, hi.T2) + 20, tb = ta + 20;
            auto wa = tf.x2_spread(P, cell, ta), wb = tf.x2_spread(P, cell, tb);
            if (!wa || !wb || (*wb > 1e-6 && *wb > *wa / 2)) {
              rep.route = "inconclusive";
              rep.note = "x2 range over a collapsing x1 band could not be resolved numerically";
              v.cells.push_back(rep);
              merge(v, Boundedness::Inconclusive, T0);
              continue;
            }
            note = "x2 limits over the collapsing x1 band estimated numerically";
            case_one = true;
          }
          if (case_one) {
            Rational eps = limits[0].eps, T1 = T0;
            for (const auto& l : limits) {
              eps = std::min(eps, l.eps);
              T1 = std::max(T1, l.T2);
            }
            rep.route = "case_I";
            if (!params) {
              rep.note = "needs Baker parameters" + (note.empty() ? "" : "; " + note);
              rep.T = T1;
              v.cells.push_back(rep);
              merge(v, Boundedness::Inconclusive, T1);
              if (v.reason.empty()) v.reason = MissingBakerParams("case I reached without Baker parameters").what();
              continue;
            }
            Rational T2 = std::max({params->T, T1, baker_crossover(eps, params->N, T1)});
            rep.T = T2;
            rep.note = note;
            v.cells.push_back(rep);
            merge(v, Boundedness::BoundedConditional, T2);
            v.params = params;
            v.heuristic_params = heuristic;
          }
        }
      }
    v.T = Rational(ceil_q(v.T));
    if (v.kind == Boundedness::Bounded) v.reason = v.cells.empty() ? "zero set is empty" : "every zero cell leaves the trajectory";
    if (v.kind == Boundedness::BoundedConditional)
      v.reason = heuristic ? "bounded under heuristic default Baker parameters (not a proof)"
                           : "bounded assuming the supplied Baker parameters are valid";
  } catch (const SkolemError& e) {
    v.kind = Boundedness::Inconclusive;
    v.reason = e.what();
    return v;
  }
  finish(v, f, caps);
  return v;
}

UnboundedVerdict decide_unbounded(const ExpPoly& f, const std::optional<BakerParams>& baker,
                                  const UnboundedCaps& caps) {
  TrigPoly T;
  try {
    T = rewrite_trig(f);
  } catch (const SkolemError& e) {
    UnboundedVerdict v;
    v.reason = e.what();
    return v;
  }
  if (T.b.size() <= 1) return decide_one_freq(f, caps);
  if (!f.simple()) {
    UnboundedVerdict v;
    v.reason =
        "refused: two independent frequencies with non-constant polynomial coefficients. A decision procedure "
        "for this family would compute the Diophantine approximation type L(a) of every real algebraic a "
        "(the hardness reduction behind `skolem approx-type`), which is an open problem";
    return v;
  }
  return decide_two_freq_simple(f, baker, caps);
}

std::string boundedness_name(Boundedness b) {
  switch (b) {
    case Boundedness::Bounded: return "bounded";
    case Boundedness::Unbounded: return "unbounded";
    case Boundedness::BoundedConditional: return "bounded_conditional";
    case Boundedness::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string unbounded_json(const UnboundedVerdict& v) {
  using nlohmann::json;
  json j;
  j["outcome"] = boundedness_name(v.kind);
  j["T"] = v.kind == Boundedness::Bounded || v.kind == Boundedness::BoundedConditional ? json(to_string(v.T)) : json();
  if (v.params)
    j["baker"] = {{"N", v.params->N}, {"T", to_string(v.params->T)}, {"heuristic", v.heuristic_params}};
  else
    j["baker"] = nullptr;
  j["reason"] = v.reason;
  j["horizon_evidence"] = json::array();
  for (const auto& z : v.evidence)
    j["horizon_evidence"].push_back(
        {{"horizon", to_string(z.horizon)}, {"bracket", {to_string(z.lo), to_string(z.hi)}},
         {"bracket_approx", {to_double(z.lo), to_double(z.hi)}}});
  j["missing_horizons"] = json::array();
  for (const auto& h : v.missing_horizons) j["missing_horizons"].push_back(to_string(h));
  j["cells"] = json::array();
  for (const auto& c : v.cells)
    j["cells"].push_back({{"region", c.region}, {"type", c.type}, {"route", c.route}, {"T", to_string(c.T)}, {"note", c.note}});
  if (v.followup) j["followup"] = json::parse(verdict_json(*v.followup));
  return j.dump(2);
}

}  // namespace skolem
