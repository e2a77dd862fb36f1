#include "skolem/zerofinder.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <memory>
#include <shared_mutex>

#include <json.hpp>

#include "skolem/errors.hpp"

namespace skolem {

namespace {

class EvalCache {
 public:
  explicit EvalCache(ExpPoly f) : f_(std::move(f)) {}

  const ExpPolyEvaluator& at(mpfr_prec_t prec) const {
    {
      std::shared_lock lk(mu_);
      auto it = m_.find(prec);
      if (it != m_.end()) return *it->second;
    }
    std::unique_lock lk(mu_);
    auto it = m_.find(prec);
    if (it == m_.end()) it = m_.emplace(prec, std::make_unique<ExpPolyEvaluator>(f_, prec)).first;
    return *it->second;
  }

 private:
  ExpPoly f_;
  mutable std::shared_mutex mu_;
  mutable std::map<mpfr_prec_t, std::unique_ptr<ExpPolyEvaluator>> m_;
};

Interval intersect(const Interval& x, const Interval& y) {
  Rational lo = std::max(x.lower(), y.lower()), hi = std::min(x.upper(), y.upper());
  if (lo > hi) return x;  // cannot happen for two enclosures of one value
  return Interval::from_bounds(lo, hi, std::max(x.prec(), y.prec()));
}

Rational round_down(const Rational& x) {
  if (sgn(x) <= 0) return x;
  Rational unit = pow2_q(-64);
  Rational r = Rational(floor_q(x / unit)) * unit;
  return sgn(r) > 0 ? r : x;
}

Rational interp(const Rational& t, const Rational& t0, const Rational& t1, const Rational& v0, const Rational& v1) {
  return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
}

Envelope build_envelope(const PointEval& f, const Rational& a, const Rational& b, const Rational& M,
                        const Rational& delta, const EnvelopeOptions& opt, bool parallel) {
  if (!(a < b)) throw InvalidInput("envelope needs a < b");
  if (sgn(delta) <= 0) throw InvalidInput("envelope needs delta > 0");
  if (sgn(M) < 0) throw InvalidInput("Lipschitz constant must be non-negative");
  Envelope e;
  e.a = a;
  e.b = b;
  e.M = M;
  e.delta = delta;
  Integer N = floor_q(Rational(4) * (b - a) * M / delta) + 1;
  if (N > opt.max_samples)
    throw CapExceeded("envelope needs " + N.get_str() + " samples, cap is " + std::to_string(opt.max_samples));
  e.N = N.get_si();
  e.q.assign(static_cast<std::size_t>(e.N + 1), Rational(0));
  const Rational tol = delta / 2;

  auto sample = [&](long j, mpfr_prec_t& used) {
    Rational t = e.sample(j);
    for (mpfr_prec_t p = opt.start_prec;; p *= 2) {
      if (p > opt.max_prec) throw CapExceeded("working precision cap reached at t = " + to_string(t));
      Interval v = f(t, p);
      if (v.finite() && v.width() < tol) {
        e.q[static_cast<std::size_t>(j)] = v.mid();
        used = std::max(used, p);
        return;
      }
    }
  };

  mpfr_prec_t used = opt.start_prec;
  if (!parallel) {
    for (long j = 0; j <= e.N; ++j) sample(j, used);
    e.prec = used;
    return e;
  }
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
#pragma omp parallel
  {
    mpfr_prec_t local = opt.start_prec;
#pragma omp for schedule(dynamic, 16)
    for (long j = 0; j <= e.N; ++j) {
      if (failed.load(std::memory_order_relaxed)) continue;
      try {
        sample(j, local);
      } catch (...) {
#pragma omp critical(skolem_envelope_failure)
        if (!failure) failure = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
      }
    }
#pragma omp critical(skolem_envelope_prec)
    used = std::max(used, local);
  }
  if (failure) std::rethrow_exception(failure);
  e.prec = used;
  return e;
}

std::optional<int> point_sign(const PointEval& f, const Rational& t, mpfr_prec_t start, mpfr_prec_t cap) {
  for (mpfr_prec_t p = start; p <= cap; p *= 2) {
    Interval v = f(t, p);
    if (!v.finite()) continue;
    if (auto s = v.sign()) return s;
  }
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------- envelope

Rational Envelope::lower(const Rational& t) const {
  if (t <= a) return lower_at(0);
  if (t >= b) return lower_at(N);
  long j = floor_q((t - a) * Rational(N) / (b - a)).get_si();
  j = std::min(j, N - 1);
  return interp(t, sample(j), sample(j + 1), lower_at(j), lower_at(j + 1));
}

Rational Envelope::upper(const Rational& t) const {
  if (t <= a) return upper_at(0);
  if (t >= b) return upper_at(N);
  long j = floor_q((t - a) * Rational(N) / (b - a)).get_si();
  j = std::min(j, N - 1);
  return interp(t, sample(j), sample(j + 1), upper_at(j), upper_at(j + 1));
}

Envelope envelope(const PointEval& f, const Rational& a, const Rational& b, const Rational& M, const Rational& delta,
                  const EnvelopeOptions& opt) {
  return build_envelope(f, a, b, M, delta, opt, true);
}

Envelope envelope_serial(const PointEval& f, const Rational& a, const Rational& b, const Rational& M,
                         const Rational& delta, const EnvelopeOptions& opt) {
  return build_envelope(f, a, b, M, delta, opt, false);
}

// ---------------------------------------------------------------- detection

Detection detect_zero(const PointEval& f, const LipschitzBound& M, const Rational& a, const Rational& b,
                      const DetectCaps& caps) {
  if (!(a < b)) throw InvalidInput("detect_zero needs a < b");
  Detection out;
  const Rational Mv = M(a, b);
  EnvelopeOptions opt = caps.envelope;
  Rational delta = (b - a) / 4;
  for (int round = 1; round <= caps.max_rounds; ++round, delta /= 2) {
    out.rounds = round;
    out.delta = delta;
    Envelope e;
    try {
      e = caps.parallel ? envelope(f, a, b, Mv, delta, opt) : envelope_serial(f, a, b, Mv, delta, opt);
    } catch (const CapExceeded& ex) {
      out.reason = ex.what();
      return out;
    }
    opt.start_prec = e.prec;
    if (caps.trace) caps.trace(round, e);

    long last = -1, lo_j = -1, hi_j = -1;
    int last_sign = 0;
    bool all_pos = true, all_neg = true;
    for (long j = 0; j <= e.N; ++j) {
      Rational lo = e.lower_at(j), hi = e.upper_at(j);
      all_pos = all_pos && sgn(lo) > 0;
      all_neg = all_neg && sgn(hi) < 0;
      int s = sgn(hi) < 0 ? -1 : (sgn(lo) > 0 ? 1 : 0);
      if (s == 0) continue;
      if (last_sign != 0 && s != last_sign && lo_j < 0) {
        lo_j = last;
        hi_j = j;
      }
      last = j;
      last_sign = s;
    }

    if (lo_j >= 0) {
      out.outcome = Outcome::HasZero;
      out.kind = ZeroKind::SignChange;
      Rational lo = e.sample(lo_j), hi = e.sample(hi_j);
      int lo_sign = sgn(e.upper_at(lo_j)) < 0 ? -1 : 1;
      while (hi - lo > caps.bracket_width) {
        Rational mid = (lo + hi) / 2;
        auto s = point_sign(f, mid, opt.start_prec, caps.refine_prec);
        if (!s) break;
        if (*s == 0) {
          lo = hi = mid;
          break;
        }
        (*s == lo_sign ? lo : hi) = mid;
      }
      out.lo = lo;
      out.hi = hi;
      return out;
    }
    if (all_pos || all_neg) {
      out.outcome = Outcome::NoZero;
      Rational m = all_pos ? e.lower_at(0) : -e.upper_at(0);
      for (long j = 1; j <= e.N; ++j) m = std::min(m, all_pos ? e.lower_at(j) : -e.upper_at(j));
      out.margin = m;
      return out;
    }
  }
  out.reason = "round cap of " + std::to_string(caps.max_rounds) + " reached";
  return out;
}

PointEval real_part_eval(const ExpPoly& f) {
  auto cache = std::make_shared<EvalCache>(f);
  return [cache](const Rational& t, mpfr_prec_t prec) { return cache->at(prec).eval(t).re; };
}

LipschitzBound lipschitz_of(const ExpPoly& f) {
  return [f](const Rational& a, const Rational& b) { return lipschitz_bound(f, a, b); };
}

// ---------------------------------------------------------------- type 3

Type3Reduction type3_reduce(const LaurentPoly& P, const std::vector<long>& u, const LaurentPoly& Q,
                            const SpectralBasis& basis, const Rational& c, const Rational& d, const DetectCaps& caps) {
  if (!(c < d)) throw InvalidInput("type3_reduce needs c < d");
  if (u.size() != static_cast<std::size_t>(P.s())) throw DimensionMismatch("unit exponent has the wrong length");
  Exponent zu(static_cast<std::size_t>(P.nvars()), 0);
  for (int k = 0; k < P.s(); ++k) zu[static_cast<std::size_t>(1 + P.r() + k)] = u[static_cast<std::size_t>(k)];
  LaurentPoly Qbar = conjugate(Q).shifted(zu);
  if (Q + Qbar != P) throw InvalidInput("P is not Q + z^u conj(Q)");

  Type3Reduction out;
  out.g1 = to_exppoly(Q, basis);
  out.g2 = to_exppoly(Qbar, basis);

  ExpPoly n2 = out.g2 * out.g2.conj();
  if (n2.terms().size() == 1 && n2.terms()[0].lambda.is_zero() && n2.terms()[0].poly.size() == 1) {
    Interval m = sqrt(n2.terms()[0].poly[0].approx(128).re);
    out.g2_lower = round_down(m.lower());
  }
  PointEval n2e = real_part_eval(n2);
  Rational Mn = lipschitz_bound(n2, c, d);
  Rational delta = (d - c) / 4;
  EnvelopeOptions opt = caps.envelope;
  Rational m2 = out.g2_lower * out.g2_lower;
  for (int round = 1; sgn(m2) <= 0; ++round, delta /= 2) {
    if (round > caps.max_rounds) throw G2LowerBoundFailed("round cap reached while bounding |g2| away from 0");
    Envelope e;
    try {
      e = caps.parallel ? envelope(n2e, c, d, Mn, delta, opt) : envelope_serial(n2e, c, d, Mn, delta, opt);
    } catch (const CapExceeded& ex) {
      throw G2LowerBoundFailed(std::string("bounding |g2| away from 0: ") + ex.what());
    }
    opt.start_prec = e.prec;
    Rational m = e.lower_at(0);
    for (long j = 1; j <= e.N; ++j) m = std::min(m, e.lower_at(j));
    if (sgn(m) > 0) m2 = m;
  }
  if (sgn(out.g2_lower) <= 0) out.g2_lower = round_down(sqrt(Interval(m2, 128)).lower());
  if (sgn(out.g2_lower) <= 0) throw G2LowerBoundFailed("|g2| lower bound underflowed");
  out.h_lipschitz = (lipschitz_bound(out.g1, c, d) + lipschitz_bound(out.g2, c, d)) / out.g2_lower;

  auto c1 = std::make_shared<EvalCache>(out.g1), c2 = std::make_shared<EvalCache>(out.g2);
  auto ratio = [c1, c2](const Rational& t, mpfr_prec_t prec) {
    return c1->at(prec).eval(t) / c2->at(prec).eval(t);
  };
  // pi + i log w with arg w in [0, 2 pi) equals -Arg(-w) for the principal Arg.
  out.h = [ratio](const Rational& t, mpfr_prec_t prec) { return -arg(-ratio(t, prec)); };
  out.abs_h = [ratio](const Rational& t, mpfr_prec_t prec) {
    CInterval w = ratio(t, prec);
    Interval direct = abs(arg(-w));
    Interval flipped = Interval::pi(prec) - abs(arg(w));
    return intersect(direct, flipped);
  };

  const Rational gap(1, 4), cut(3, 2);
  Envelope e;
  try {
    e = caps.parallel ? envelope(out.abs_h, c, d, out.h_lipschitz, gap, caps.envelope)
                      : envelope_serial(out.abs_h, c, d, out.h_lipschitz, gap, caps.envelope);
  } catch (const CapExceeded& ex) {
    throw CapExceeded(std::string("sampling |h|: ") + ex.what());
  }
  for (long j = 0; j < e.N; ++j) {
    if (std::min(e.lower_at(j), e.lower_at(j + 1)) > cut) continue;
    Rational s0 = e.sample(j), s1 = e.sample(j + 1);
    if (!out.E.empty() && out.E.back().second == s0)
      out.E.back().second = s1;
    else
      out.E.emplace_back(s0, s1);
  }
  return out;
}

// ---------------------------------------------------------------- bounded driver

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::HasZero:
      return "has_zero";
    case Outcome::NoZero:
      return "no_zero";
    case Outcome::Undecided:
      return "undecided";
  }
  return "undecided";
}

std::string kind_name(ZeroKind k) {
  switch (k) {
    case ZeroKind::Exact:
      return "exact";
    case ZeroKind::SignChange:
      return "sign-change";
    case ZeroKind::Type3Crossing:
      return "type3-h-crossing";
  }
  return "sign-change";
}

namespace {

Rational magnitude_upper(const FieldElement& x) { return abs(x.approx(64)).upper(); }

Detection decide_type2(const ExpPoly& g, const Rational& c, const Rational& d, const DetectCaps& caps) {
  return detect_zero(real_part_eval(g), lipschitz_of(g), c, d, caps);
}

Detection decide_type3(const LaurentPoly& P, const std::vector<long>& u, const LaurentPoly& Q,
                       const SpectralBasis& basis, const Rational& c, const Rational& d, const DetectCaps& caps) {
  Detection out;
  Type3Reduction red;
  try {
    red = type3_reduce(P, u, Q, basis, c, d, caps);
  } catch (const G2LowerBoundFailed& ex) {
    out.reason = ex.what();
    return out;
  } catch (const CapExceeded& ex) {
    out.reason = ex.what();
    return out;
  }
  Rational hmin(3, 2);
  LipschitzBound Mh = [&red](const Rational&, const Rational&) { return red.h_lipschitz; };
  for (const auto& [e0, e1] : red.E) {
    Detection piece = detect_zero(red.h, Mh, e0, e1, caps);
    out.rounds = std::max(out.rounds, piece.rounds);
    out.delta = piece.delta;
    if (piece.outcome == Outcome::HasZero) {
      piece.kind = ZeroKind::Type3Crossing;
      return piece;
    }
    if (piece.outcome == Outcome::Undecided) return piece;
    hmin = std::min(hmin, piece.margin);
  }
  // |g1 + g2| = |g2| * 2 |sin(h/2)| >= |g2| * (2/pi) |h| and 7/11 < 2/pi.
  out.outcome = Outcome::NoZero;
  out.margin = red.g2_lower * Rational(7, 11) * hmin;
  return out;
}

}  // namespace

Verdict decide_bounded(const ExpPoly& f, const Rational& c, const Rational& d, const BoundedCaps& caps) {
  if (!(c < d)) throw InvalidInput("decide_bounded needs c < d");
  if (f.is_zero()) throw InvalidInput("the zero function vanishes everywhere");
  if (!f.real_valued()) throw NotRealValued("decide_bounded needs a real-valued exponential polynomial");
  Verdict v;
  if (c <= 0 && d >= 0 && f.value_at_zero().is_zero()) {
    v.overall.outcome = Outcome::HasZero;
    v.overall.kind = ZeroKind::Exact;
    v.overall.lo = v.overall.hi = Rational(0);
    return v;
  }

  LaurentForm form = to_laurent(f);
  LaurentFactorization fac;
  try {
    fac = factor(form.P, caps.laurent);
  } catch (const SizeCapExceeded& ex) {
    v.overall.reason = std::string("factorization: ") + ex.what();
    return v;
  }
  const int r = form.P.r(), s = form.P.s();
  LaurentPoly unit = LaurentPoly::monomial(form.P.field(), r, s, fac.unit_exp, fac.unit_coeff);
  v.unit = unit.str();

  bool conditional = false, undecided = false;
  Rational margin;
  {
    ExpPoly g = to_exppoly(unit, form.basis);
    ExpPolyEvaluator ev(g, 64);
    margin = abs(ev.eval(Interval::from_bounds(c, d, 64))).lower();
  }
  for (const auto& [P, mult] : fac.factors) {
    FactorTrace tr;
    tr.factor = P.str();
    tr.multiplicity = mult;
    TypeTag tag = classify(P, caps.field);
    Rational beta = magnitude_upper(tag.beta);
    if (tag.kind == PolyType::Type1) {
      tr.type = "type1";
      tr.result.outcome = Outcome::NoZero;
      tr.result.conditional = true;
      conditional = true;
    } else if (tag.kind == PolyType::Type2) {
      tr.type = "type2";
      tr.result = decide_type2(to_exppoly(tag.normalized, form.basis), c, d, caps.detect);
    } else {
      tr.type = "type3";
      try {
        LaurentPoly Q = split_type3(tag.normalized, tag.u);
        tr.result = decide_type3(tag.normalized, tag.u, Q, form.basis, c, d, caps.detect);
      } catch (const FixedCase&) {
        // every monomial has z-exponent u/2, so z^{-u/2} P is self-conjugate
        Exponent half(static_cast<std::size_t>(P.nvars()), 0);
        bool even = true;
        for (int k = 0; k < s; ++k) {
          long uk = tag.u[static_cast<std::size_t>(k)];
          even = even && uk % 2 == 0;
          half[static_cast<std::size_t>(1 + r + k)] = -uk / 2;
        }
        if (!even) {
          tr.result.reason = "fixed Type-3 factor with an odd unit exponent";
        } else {
          tr.type = "type3-fixed";
          tr.result = decide_type2(to_exppoly(tag.normalized.shifted(half), form.basis), c, d, caps.detect);
        }
      }
    }
    if (tr.result.outcome == Outcome::NoZero && !tr.result.conditional)
      margin *= pow_q(tr.result.margin / beta, static_cast<unsigned long>(mult));
    if (tr.result.outcome == Outcome::HasZero && v.overall.outcome != Outcome::HasZero) {
      v.overall = tr.result;
    }
    undecided = undecided || tr.result.outcome == Outcome::Undecided;
    if (tr.result.outcome == Outcome::Undecided && v.overall.reason.empty())
      v.overall.reason = "factor " + tr.factor + ": " + tr.result.reason;
    v.overall.rounds = std::max(v.overall.rounds, tr.result.rounds);
    v.factors.push_back(std::move(tr));
  }
  if (v.overall.outcome == Outcome::HasZero) {
    v.overall.reason.clear();
    return v;
  }
  if (undecided) {
    v.overall.outcome = Outcome::Undecided;
    return v;
  }
  v.overall.outcome = Outcome::NoZero;
  v.overall.conditional = conditional;
  v.overall.margin = conditional ? Rational(0) : round_down(margin);
  return v;
}

// ---------------------------------------------------------------- JSON

namespace {

nlohmann::json detection_json(const Detection& d) {
  nlohmann::json j;
  j["outcome"] = outcome_name(d.outcome);
  if (d.outcome == Outcome::HasZero) {
    j["bracket"] = {to_string(d.lo), to_string(d.hi)};
    j["bracket_approx"] = {to_double(d.lo), to_double(d.hi)};
    j["kind"] = kind_name(d.kind);
  } else {
    j["bracket"] = nullptr;
  }
  if (d.outcome == Outcome::NoZero && !d.conditional) {
    j["margin"] = to_string(d.margin);
    j["margin_approx"] = to_double(d.margin);
  } else {
    j["margin"] = nullptr;
  }
  j["conditional"] = d.conditional ? nlohmann::json("schanuel") : nlohmann::json(nullptr);
  if (d.outcome == Outcome::Undecided) {
    j["reason"] = d.reason;
    j["delta_reached"] = to_string(d.delta);
  }
  j["rounds"] = d.rounds;
  return j;
}

}  // namespace

std::string verdict_json(const Verdict& v) {
  nlohmann::json j = detection_json(v.overall);
  j["unit"] = v.unit;
  j["factors"] = nlohmann::json::array();
  for (const auto& f : v.factors) {
    nlohmann::json fj = detection_json(f.result);
    fj["factor"] = f.factor;
    fj["multiplicity"] = f.multiplicity;
    fj["type"] = f.type;
    j["factors"].push_back(fj);
  }
  return j.dump(2);
}

}  // namespace skolem
