#include <gtest/gtest.h>

#include <cmath>

#include "skolem/unbounded.hpp"

using namespace skolem;

namespace {

struct Ring {
  FieldPtr K;
  FieldElement i, r2;
};

const Ring& ring() {
  static Ring R = [] {
    FieldBuild fb = make_field({{qpoly({1, 0, 1}), {Rational(-1, 2), Rational(1, 2), Rational(1, 2), Rational(3, 2)}},
                                {qpoly({-2, 0, 1}), {Rational(1), Rational(2), Rational(0), Rational(0)}}});
    return Ring{fb.field, fb.embeddings[0], fb.embeddings[1]};
  }();
  return R;
}

ExpPoly konst(const Rational& c) { return ExpPoly::constant(ring().K, FieldElement(c)); }
ExpPoly cosw(const FieldElement& w) { return cos_term(ring().K, w); }
ExpPoly sinw(const FieldElement& w) { return sin_term(ring().K, w); }
ExpPoly expo(const FieldElement& a) { return exp_term(ring().K, a, {FieldElement(1)}); }

UnboundedCaps no_evidence() {
  UnboundedCaps caps;
  caps.evidence = false;
  return caps;
}

void expect_round_trip(const ExpPoly& f, const TrigPoly& T) {
  ExpPolyEvaluator ev(f, 128);
  for (int k = 0; k < 12; ++k) {
    Rational t = Rational(k * 7 + 1, 5);
    Interval q = T.eval(t, 128) / T.scale(t, 128);
    Interval d = q - ev.eval_real(t);
    EXPECT_LT(std::abs(d.mid_d()), 1e-20) << "t = " << to_double(t);
  }
}

}  // namespace

TEST(RewriteTrig, DoubleAngleInFixedBasis) {
  ExpPoly f = cosw(FieldElement(2));
  TrigPoly T = rewrite_trig(f, std::vector<FieldElement>{FieldElement(1)});
  ASSERT_EQ(T.b.size(), 1u);
  EXPECT_EQ(T.Q.degree(T.cos_var(0)), 2);
  expect_round_trip(f, T);
  TrigPoly own = rewrite_trig(f);
  EXPECT_TRUE(own.Q.degree(own.cos_var(0)) == 1);
}

TEST(RewriteTrig, ProductsAndTwoFrequencies) {
  ExpPoly sc = sinw(FieldElement(1)) * cosw(FieldElement(1));
  TrigPoly T = rewrite_trig(sc, std::vector<FieldElement>{FieldElement(1)});
  expect_round_trip(sc, T);
  ExpPoly two = cosw(FieldElement(1)) + cosw(ring().r2);
  TrigPoly T2 = rewrite_trig(two);
  ASSERT_EQ(T2.b.size(), 2u);
  EXPECT_EQ(T2.Q.total_degree(), 1);
  expect_round_trip(two, T2);
  ExpPoly mixed = t_power(ring().K, 1) * expo(FieldElement(Rational(-1, 2))) * cosw(FieldElement(3)) +
                  expo(FieldElement(1)) * sinw(ring().r2) - konst(Rational(2));
  TrigPoly T3 = rewrite_trig(mixed);
  EXPECT_TRUE(T3.has_t);
  expect_round_trip(mixed, T3);
  ExpPoly three = cosw(FieldElement(1)) + cosw(ring().r2) + cosw(ring().r2 * ring().r2 * ring().r2 + FieldElement(1));
  EXPECT_NO_THROW(rewrite_trig(three));
}

TEST(BakerCrossover, IsLeastSolution) {
  Rational eps(1, 4);
  Rational T = baker_crossover(eps, 3, Rational(0));
  auto holds = [&](double t) { return std::log(3.0) - 0.25 * t / 3 + 3 * std::log(t) <= 0; };
  EXPECT_TRUE(holds(to_double(T)));
  EXPECT_FALSE(holds(to_double(T) - 1));
  EXPECT_GE(T, Rational(36));
}

TEST(OneFrequency, ConstantOffsets) {
  UnboundedVerdict v = decide_unbounded(cosw(FieldElement(1)) - konst(Rational(2)), std::nullopt, no_evidence());
  EXPECT_EQ(v.kind, Boundedness::Bounded);
  UnboundedVerdict w = decide_unbounded(konst(Rational(1)) - cosw(FieldElement(1)));
  EXPECT_EQ(w.kind, Boundedness::Unbounded);
  ASSERT_EQ(w.evidence.size(), 3u);
  for (const auto& z : w.evidence) {
    EXPECT_GT(z.lo, z.horizon);
    double k = std::round(to_double(z.lo) / (2 * M_PI));
    EXPECT_LT(std::abs(to_double(z.lo) - 2 * M_PI * k), 0.5);
  }
}

TEST(OneFrequency, DecayingAndGrowingTerms) {
  UnboundedVerdict v = decide_unbounded(expo(FieldElement(-1)) - cosw(FieldElement(1)), std::nullopt, no_evidence());
  EXPECT_EQ(v.kind, Boundedness::Unbounded);
  ExpPoly g = konst(Rational(1)) - cosw(FieldElement(1)) + expo(FieldElement(-1));
  UnboundedVerdict b = decide_unbounded(g, std::nullopt, no_evidence());
  EXPECT_EQ(b.kind, Boundedness::Bounded);
  ExpPoly h = t_power(ring().K, 1) * cosw(FieldElement(1)) - konst(Rational(5));
  EXPECT_EQ(decide_unbounded(h, std::nullopt, no_evidence()).kind, Boundedness::Unbounded);
  ExpPoly shrinking = expo(FieldElement(-1)) * cosw(FieldElement(1)) - konst(Rational(1, 10));
  UnboundedVerdict s = decide_unbounded(shrinking, std::nullopt, no_evidence());
  EXPECT_EQ(s.kind, Boundedness::Bounded);
  EXPECT_GE(s.T, Rational(2));
  ExpPoly none = expo(FieldElement(1)) - konst(Rational(3));
  UnboundedVerdict n = decide_unbounded(none, std::nullopt, no_evidence());
  EXPECT_EQ(n.kind, Boundedness::Bounded);
  EXPECT_GE(n.T, Rational(1));
}

TEST(TwoFrequency, SimpleInstances) {
  ExpPoly base = cosw(FieldElement(1)) + cosw(ring().r2);
  EXPECT_EQ(decide_unbounded(base - konst(Rational(3)), std::nullopt, no_evidence()).kind, Boundedness::Bounded);
  UnboundedCaps far;
  far.horizons = {Rational(10000)};
  UnboundedVerdict v = decide_unbounded(base - konst(Rational(3, 2)), std::nullopt, far);
  EXPECT_EQ(v.kind, Boundedness::Unbounded);
  ASSERT_EQ(v.evidence.size(), 1u);
  EXPECT_GT(v.evidence[0].lo, Rational(10000));
}

TEST(TwoFrequency, NearMissNeedsBakerParameters) {
  ExpPoly f = konst(Rational(2)) - cosw(FieldElement(1)) - cosw(ring().r2) - expo(FieldElement(-1));
  UnboundedVerdict without = decide_unbounded(f, std::nullopt, no_evidence());
  EXPECT_EQ(without.kind, Boundedness::Inconclusive);
  UnboundedVerdict with = decide_unbounded(f, BakerParams{10, Rational(1000)}, no_evidence());
  EXPECT_EQ(with.kind, Boundedness::BoundedConditional);
  EXPECT_GE(with.T, Rational(1000));
  ASSERT_TRUE(with.params.has_value());
  EXPECT_FALSE(with.heuristic_params);
}

TEST(TwoFrequency, RefusesNonSimple) {
  ExpPoly f = t_power(ring().K, 1) * cosw(FieldElement(1)) + cosw(ring().r2);
  UnboundedVerdict v = decide_unbounded(f, std::nullopt, no_evidence());
  EXPECT_EQ(v.kind, Boundedness::Inconclusive);
  EXPECT_NE(v.reason.find("refused"), std::string::npos);
}
