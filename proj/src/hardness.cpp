#include "skolem/hardness.hpp"

#include <algorithm>
#include <limits>

#include <json.hpp>

namespace skolem {

namespace {

Interval enclose(const FieldElement& x, mpfr_prec_t prec) {
  if (x.is_rational()) return Interval(x.rational_value(), prec);
  return x.approx(prec).re;
}

mpfr_prec_t bits_of(const Integer& n) { return static_cast<mpfr_prec_t>(mpz_sizeinbase(n.get_mpz_t(), 2)); }

Rational on_grid(const Rational& x, int bits) {
  Rational s = pow2_q(bits);
  Rational r(floor_q(x * s), Integer(1));
  r /= s;
  r.canonicalize();
  return r;
}

Rational on_grid_up(const Rational& x, int bits) {
  Rational s = pow2_q(bits);
  Rational r(ceil_q(x * s), Integer(1));
  r /= s;
  r.canonicalize();
  return r;
}

AlgebraicNumber imaginary_unit() {
  return AlgebraicNumber::from_input(
      {qpoly({1, 0, 1}), {Rational(-1, 2), Rational(1, 2), Rational(1, 2), Rational(3, 2)}});
}

// Least integer t >= start with pred(t), for pred monotone from false to true.
Rational least_integer(const Rational& start, const std::function<bool(const Rational&)>& pred) {
  Rational lo(ceil_q(start));
  if (pred(lo)) return lo;
  Rational step(1);
  Rational hi = lo + step;
  while (!pred(hi)) {
    lo = hi;
    step *= 2;
    hi = lo + step;
    if (step > pow2_q(64)) throw CapExceeded("threshold search did not terminate");
  }
  while (hi - lo > 1) {
    Rational mid(floor_q((lo + hi) / 2));
    if (pred(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace

// ---------------------------------------------------------------- type bounds

TypeBounds type_bounds(const FieldElement& a, int depth) {
  if (depth < 1) throw InvalidInput("type_bounds needs depth >= 1");
  TypeBounds tb;
  CFExpansion cf = cf_expand(a, depth + 1);
  tb.depth = depth;
  if (cf.terminated) {
    tb.rational = true;
    tb.upper = tb.upper_all = 0;
    tb.K_so_far = 0;
    for (std::size_t i = 1; i < cf.quotients.size(); ++i) tb.K_so_far = std::max(tb.K_so_far, cf.quotients[i]);
    return tb;
  }
  std::vector<FieldElement> vals;
  for (int k = 0; k <= depth; ++k) {
    const Rational& pq = cf.convergents[static_cast<std::size_t>(k)];
    Integer p = pq.get_num(), q = pq.get_den();
    FieldElement d = FieldElement(Rational(q)) * a - FieldElement(Rational(p));
    if (sign(d) < 0) d = -d;
    FieldElement v = FieldElement(Rational(q)) * d;
    vals.push_back(v);
    tb.witnessed.push_back(enclose(v, 96 + 4 * bits_of(q)).upper());
  }
  auto argmin = [&](int from) {
    int best = from;
    for (int k = from + 1; k <= depth; ++k)
      if (compare(vals[static_cast<std::size_t>(k)], vals[static_cast<std::size_t>(best)]) < 0) best = k;
    return best;
  };
  int all = argmin(0);
  int tail = argmin(std::max(1, depth / 2));
  tb.upper_all = tb.witnessed[static_cast<std::size_t>(all)];
  tb.upper = tb.witnessed[static_cast<std::size_t>(tail)];
  tb.upper_at = tail;
  tb.K_so_far = 0;
  for (int k = 1; k <= depth; ++k) tb.K_so_far = std::max(tb.K_so_far, cf.quotients[static_cast<std::size_t>(k)]);
  tb.window_lo = Rational(Integer(1), tb.K_so_far + 2);
  tb.window_hi = Rational(Integer(1), tb.K_so_far);
  tb.window_lo.canonicalize();
  tb.window_hi.canonicalize();
  return tb;
}

// ---------------------------------------------------------------- family and thresholds

HardnessFamily hardness_family(const FieldElement& a, const FieldElement& c) {
  if (!a.is_real() || !c.is_real() || sign(a) <= 0 || sign(c) <= 0)
    throw InvalidInput("hardness family needs positive real a and c");
  FieldBuild fb = make_field_numbers({to_algebraic(a), to_algebraic(c), imaginary_unit()});
  const FieldPtr& K = fb.field;
  FieldElement ea = fb.embeddings[0], ec = fb.embeddings[1];
  ExpPoly one = ExpPoly::constant(K, FieldElement(1));
  ExpPoly common = exp_term(K, FieldElement(1), {FieldElement(1)}) * (one - cos_term(K, FieldElement(1))) +
                   t_power(K, 1) * (one - cos_term(K, ea));
  ExpPoly s = ec * sin_term(K, ea);
  HardnessFamily fam{ea, ec, common - s, common + s};
  if (!(fam.f1 - fam.f2 + FieldElement(2) * s).is_zero()) throw std::logic_error("hardness family identity failed");
  return fam;
}

Thresholds thresholds(const FieldElement& a, const Rational& c, const Rational& eps) {
  if (sign(a) <= 0 || sgn(c) <= 0 || sgn(eps) <= 0 || eps >= 1) throw InvalidInput("thresholds need a, c > 0 and eps in (0, 1)");
  const mpfr_prec_t prec = 160;
  Interval pi = Interval::pi(prec), ia = enclose(a, prec), ic(c, prec), ie(eps, prec), one(1L, prec);
  Interval alpha = sqrt(one - ie * ie);
  Thresholds th;
  th.T_period = (Interval(2L, prec) * pi / (one - alpha) + pi).upper();
  th.T_cosine = (pi * pi * pi * ic / (Interval(24L, prec) * (one - alpha))).upper();
  Interval k = ic * ie / (Interval(2L, prec) * ia * alpha);
  th.T_decay = least_integer(Rational(2), [&](const Rational& t) {
    Interval it(t, prec);
    Interval g = log(ic) - it - Interval(2L, prec) * (log(k) - log(it));
    return g.upper() <= 0;
  });
  th.T_forward = Rational(ceil_q(std::max({th.T_period, th.T_cosine, th.T_decay})));
  Interval mb = ic * (one - ie) / (pi * sqrt(Interval(6L, prec) * ie));
  th.M_backward = std::max(Integer(1), ceil_q(mb.upper()));
  th.T_backward = Rational(ceil_q((Interval(2L, prec) * pi * Interval(Rational(th.M_backward), prec)).upper()));
  return th;
}

// ---------------------------------------------------------------- oracle stub

SkolemOracle numeric_search_oracle(const Rational& growth, int rounds, long max_candidates) {
  return [=](const HardnessFamily& fam, const Rational& T) -> OracleAnswer {
    const mpfr_prec_t lo_prec = 128;
    Interval pi = Interval::pi(lo_prec);
    Interval two_pi = Interval(2L, lo_prec) * pi;
    Rational top = T;
    for (int r = 0; r < rounds; ++r) top *= growth;
    Integer m0 = ceil_q((Interval(T, lo_prec) / two_pi).upper()) + 1;
    Integer m1 = floor_q((Interval(top, lo_prec) / two_pi).lower());
    Interval ia = enclose(fam.a, lo_prec), ic = enclose(fam.c, lo_prec);
    long tried = 0;
    for (Integer m = m0; m <= m1 && tried < max_candidates; ++m) {
      // at t = 2 pi m the e^t term vanishes; f = t (1 - cos d) - c |sin d| with d = a t mod 2 pi
      Interval t = two_pi * Interval(Rational(m), lo_prec);
      Interval at = ia * t;
      Interval g = t * (Interval(1L, lo_prec) - cos(at)) - ic * abs(sin(at));
      if (!(g.upper() < 0)) continue;
      ++tried;
      const Rational t_hi = (t).upper();
      const mpfr_prec_t prec = static_cast<mpfr_prec_t>(to_double(t_hi) * 1.5) + 192;
      Interval pi_hi = Interval::pi(prec);
      Rational tr = on_grid((Interval(2L, prec) * pi_hi * Interval(Rational(m), prec)).mid(), static_cast<int>(prec) - 32);
      Rational tr_pos = on_grid((Interval(Rational(2 * m + 1), prec) * pi_hi).mid(), static_cast<int>(prec) - 32);
      for (const ExpPoly* f : {&fam.f1, &fam.f2}) {
        ExpPolyEvaluator ev(*f, prec);
        if (ev.eval_real(tr).upper() < 0 && ev.eval_real(tr_pos).lower() > 0) return OracleAnswer::HasZeroBeyond;
      }
    }
    return OracleAnswer::Unknown;
  };
}

// ---------------------------------------------------------------- refinement loop

TypeApprox approximate_type(const FieldElement& a, const Rational& p0, const Rational& q0, const SkolemOracle& oracle,
                            int max_iters) {
  if (sgn(p0) < 0 || q0 <= p0) throw InvalidInput("approximate_type needs 0 <= p < q");
  if (!a.is_real() || sign(a) <= 0) throw InvalidInput("approximate_type needs a positive real a");
  TypeApprox out{p0, q0, {}, false, ""};
  const mpfr_prec_t prec = 160;
  for (int it = 0; it < max_iters; ++it) {
    TypeIteration step;
    step.p = out.p;
    step.q = out.q;
    Rational w = out.q - out.p;
    Rational At = out.p + w / 3, Bt = out.p + 2 * w / 3;
    Interval pi = Interval::pi(prec), two_pi2 = Interval(2L, prec) * pi * pi;
    Rational r = on_grid(sqrt(Interval(At / Bt, prec)).mid(), 40);
    step.eps = 1 - r;
    step.c = on_grid((two_pi2 * Interval(At, prec) / Interval(r, prec)).mid(), 40);
    Interval A = Interval(step.c, prec) * Interval(r, prec) / two_pi2;
    Interval B = Interval(step.c, prec) / (two_pi2 * Interval(r, prec));
    step.A_lo = on_grid(A.lower(), 64);
    step.A_hi = on_grid_up(A.upper(), 64);
    step.B_lo = on_grid(B.lower(), 64);
    step.B_hi = on_grid_up(B.upper(), 64);
    if (!(out.p < step.A_lo && step.A_hi < step.B_lo && step.B_hi < out.q))
      throw std::logic_error("could not place A and B inside the interval");
    Thresholds th = thresholds(a, step.c, step.eps);
    step.T = std::max(th.T_forward, th.T_backward);
    Integer mmax = ceil_q((Interval(step.T, prec) / (Interval(2L, prec) * pi)).upper());
    step.m_checked = mmax.get_si();

    // every m <= T / 2pi: is some m |m a - n| below A?
    long witness = std::numeric_limits<long>::max();
    const long count = step.m_checked;
    const mpfr_prec_t wprec = 96 + 2 * bits_of(mmax);
    Interval ia = enclose(a, wprec);
    Rational A_lo = step.A_lo, A_hi = step.A_hi;
#pragma omp parallel for schedule(dynamic, 256) reduction(min : witness)
    for (long m = 1; m <= count; ++m) {
      Interval ma = ia * Interval(m, wprec);
      Rational n(floor_q(ma.mid() + Rational(1, 2)));
      Interval v = Interval(m, wprec) * abs(ma - Interval(n, wprec));
      bool below = v.upper() < A_lo;
      if (!below && !(v.lower() > A_hi)) {
        // straddles A: decide with a tighter enclosure of a
        Interval ib = enclose(a, 4 * wprec);
        Interval v2 = Interval(m, 4 * wprec) * abs(ib * Interval(m, 4 * wprec) - Interval(n, 4 * wprec));
        below = v2.upper() < A_lo;
      }
      if (below) witness = std::min(witness, m);
    }
    if (witness != std::numeric_limits<long>::max()) {
      step.witness_m = witness;
      step.branch = "small_witness";
      out.q = step.A_hi;
    } else {
      HardnessFamily fam = hardness_family(a, FieldElement(step.c));
      OracleAnswer ans = oracle(fam, step.T);
      if (ans == OracleAnswer::HasZeroBeyond) {
        step.branch = "zero";
        out.q = step.B_hi;
      } else if (ans == OracleAnswer::NoZeroBeyond) {
        step.branch = "no_zero";
        out.p = step.A_lo;
      } else {
        step.branch = "unknown";
        out.trace.push_back(step);
        out.inconclusive = true;
        out.note = OracleInconclusive("oracle horizon exhausted at T = " + to_string(step.T)).what();
        return out;
      }
    }
    out.trace.push_back(step);
  }
  return out;
}

// ---------------------------------------------------------------- reports

std::string cf_json(const CFExpansion& cf) {
  nlohmann::json j;
  j["quotients"] = nlohmann::json::array();
  for (const auto& n : cf.quotients) j["quotients"].push_back(n.get_str());
  j["convergents"] = nlohmann::json::array();
  for (const auto& c : cf.convergents) j["convergents"].push_back(to_string(c));
  j["terminated"] = cf.terminated;
  j["exact"] = cf_kernel_float_free();
  return j.dump(2);
}

std::string type_bounds_json(const TypeBounds& tb) {
  nlohmann::json j;
  j["depth"] = tb.depth;
  j["rational"] = tb.rational;
  j["upper"] = to_string(tb.upper);
  j["upper_approx"] = to_double(tb.upper);
  j["upper_all"] = to_string(tb.upper_all);
  j["upper_at"] = tb.upper_at;
  j["K_so_far"] = tb.K_so_far.get_str();
  if (!tb.rational) j["K_window"] = {to_string(tb.window_lo), to_string(tb.window_hi)};
  j["witnessed"] = nlohmann::json::array();
  for (const auto& w : tb.witnessed) j["witnessed"].push_back(to_double(w));
  return j.dump(2);
}

std::string type_approx_json(const TypeApprox& ta) {
  nlohmann::json j;
  j["interval"] = {to_string(ta.p), to_string(ta.q)};
  j["interval_approx"] = {to_double(ta.p), to_double(ta.q)};
  j["inconclusive"] = ta.inconclusive;
  j["note"] = ta.note;
  j["trace"] = nlohmann::json::array();
  for (const auto& s : ta.trace)
    j["trace"].push_back({{"p", to_double(s.p)},
                          {"q", to_double(s.q)},
                          {"c", to_string(s.c)},
                          {"eps", to_string(s.eps)},
                          {"A", to_double(s.A_lo)},
                          {"B", to_double(s.B_hi)},
                          {"T", to_string(s.T)},
                          {"m_checked", s.m_checked},
                          {"witness_m", s.witness_m},
                          {"branch", s.branch}});
  return j.dump(2);
}

}  // namespace skolem
