#include <gtest/gtest.h>

#include <random>

#include "skolem/exppoly.hpp"
#include "skolem/kpoly.hpp"

using namespace skolem;

namespace {

AlgebraicNumber q(long v) { return AlgebraicNumber::rational(Rational(v)); }

bool box_has(const Box& b, const char* value) {
  Rational v = parse_rational(value);
  Rational tol(1, 1000000000);
  return b.re_lo <= v + tol && v - tol <= b.re_hi;
}

Rational box_mid(const Box& b) { return (b.re_lo + b.re_hi) / 2; }

}  // namespace

TEST(KPoly, FactorOverQi) {
  auto fb = make_field({{qpoly({1, 0, 1}), {Rational(-1, 2), Rational(1, 2), Rational(1, 2), Rational(3, 2)}}});
  // x^2 + 1 splits over Q(i); x^2 - 2 stays irreducible
  auto f1 = factor_over_field(kpoly_in(to_kpoly(qpoly({1, 0, 1})), fb.field));
  EXPECT_EQ(f1.size(), 2u);
  auto f2 = factor_over_field(kpoly_in(to_kpoly(qpoly({-2, 0, 1})), fb.field));
  EXPECT_EQ(f2.size(), 1u);
  auto f3 = factor_over_field(kpoly_in(to_kpoly(qpoly({1, 0, 2, 0, 1})), fb.field));  // (x^2+1)^2
  ASSERT_EQ(f3.size(), 2u);
  EXPECT_EQ(f3[0].second, 2);
}

TEST(KPoly, RootsWithMultiplicity) {
  auto r = roots_of(to_kpoly(qpoly({1, -2, 1})));  // (x-1)^2
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].second, 2);
  EXPECT_TRUE(r[0].first.is_rational());
  auto r2 = roots_of(to_kpoly(qpoly({1, 0, 1})));
  EXPECT_EQ(r2.size(), 2u);
}

TEST(ExpPoly, SineFromOde) {
  OdeInstance inst{{q(1), q(0)}, {q(0), q(1)}, std::nullopt};
  ExpPoly f = from_ode(inst);
  EXPECT_TRUE(f.real_valued());
  ASSERT_EQ(f.terms().size(), 2u);
  FieldElement i = f.field()->imaginary_unit();
  for (const auto& t : f.terms()) {
    // coefficient of e^{it} is -i/2 and of e^{-it} is i/2
    if (t.lambda == i) EXPECT_EQ(t.poly[0], i * FieldElement(Rational(-1, 2)));
    else EXPECT_EQ(t.poly[0], i * FieldElement(Rational(1, 2)));
  }
  Box b = eval_interval(f, Rational(0), Rational(1, 1000000));
  EXPECT_LE(b.re_lo, 0);
  EXPECT_GE(b.re_hi, 0);
  EXPECT_TRUE(box_has(eval_interval(f, Rational(1), Rational(1, 1000000000)), "0.8414709848"));
}

TEST(ExpPoly, ExponentialAndRepeatedRoot) {
  ExpPoly e2 = from_ode({{q(-2)}, {q(1)}, std::nullopt});
  ASSERT_EQ(e2.terms().size(), 1u);
  EXPECT_EQ(e2.terms()[0].lambda, FieldElement(2));
  ExpPoly te = from_ode({{q(1), q(-2)}, {q(0), q(1)}, std::nullopt});
  ASSERT_EQ(te.terms().size(), 1u);
  EXPECT_EQ(te.terms()[0].lambda, FieldElement(1));
  ASSERT_EQ(te.terms()[0].poly.size(), 2u);
  EXPECT_TRUE(te.terms()[0].poly[0].is_zero());
  EXPECT_EQ(te.terms()[0].poly[1], FieldElement(1));
}

TEST(ExpPoly, EvalExamples) {
  ExpPoly e = from_ode({{q(-1)}, {q(1)}, std::nullopt});
  Box b = eval_interval(e, Rational(1), Rational(1, 10000000000L));
  EXPECT_LE(b.re_hi - b.re_lo, Rational(1, 10000000000L));
  EXPECT_TRUE(box_has(b, "2.71828182845"));
  ExpPoly c = from_ode({{q(1), q(0)}, {q(1), q(0)}, std::nullopt});
  EXPECT_TRUE(box_has(eval_interval(c, Rational(1, 2), Rational(1, 1000000000)), "0.8775825618"));
}

TEST(ExpPoly, LinearSystem) {
  QMatrix A{{Rational(0), Rational(1)}, {Rational(-1), Rational(0)}};
  OdeInstance inst = from_linear_system(A, {Rational(1), Rational(0)}, {Rational(1), Rational(0)});
  EXPECT_EQ(inst.coeffs[0].rational_value(), 1);
  EXPECT_EQ(inst.coeffs[1].rational_value(), 0);
  EXPECT_EQ(inst.init[0].rational_value(), 1);
  EXPECT_EQ(inst.init[1].rational_value(), 0);
  OdeInstance z = from_linear_system({{Rational(0)}}, {Rational(1)}, {Rational(3)});
  EXPECT_EQ(z.coeffs[0].rational_value(), 0);
  EXPECT_EQ(z.init[0].rational_value(), 3);
  OdeInstance o = from_linear_system({{Rational(1)}}, {Rational(1)}, {Rational(1)});
  EXPECT_EQ(o.coeffs[0].rational_value(), -1);
  EXPECT_THROW(from_linear_system({{Rational(1)}}, {Rational(1), Rational(2)}, {Rational(1)}), DimensionMismatch);
}

TEST(ExpPoly, FrequencyForm) {
  ExpPoly c = from_ode({{q(1), q(0)}, {q(1), q(0)}, std::nullopt});
  FrequencyForm ff = frequency_form(c);
  ASSERT_EQ(ff.terms.size(), 1u);
  EXPECT_EQ(ff.terms[0].r, FieldElement(0));
  EXPECT_EQ(ff.terms[0].omega, FieldElement(1));
  EXPECT_EQ(ff.terms[0].q1, Coeffs{FieldElement(1)});
  EXPECT_TRUE(ff.terms[0].q2.empty());
  // e^t sin 2t solves f'' - 2f' + 5f = 0 with f(0)=0, f'(0)=2
  ExpPoly s = from_ode({{q(5), q(-2)}, {q(0), q(2)}, std::nullopt});
  FrequencyForm fs = frequency_form(s);
  ASSERT_EQ(fs.terms.size(), 1u);
  EXPECT_EQ(fs.terms[0].r, FieldElement(1));
  EXPECT_EQ(fs.terms[0].omega, FieldElement(2));
  EXPECT_TRUE(fs.terms[0].q1.empty());
  EXPECT_EQ(fs.terms[0].q2, Coeffs{FieldElement(1)});
  ExpPoly e3 = from_ode({{q(-3)}, {q(1)}, std::nullopt});
  FrequencyForm f3 = frequency_form(e3);
  EXPECT_EQ(f3.terms[0].r, FieldElement(3));
  EXPECT_EQ(f3.terms[0].omega, FieldElement(0));
}

TEST(ExpPoly, LipschitzSampled) {
  ExpPoly s = from_ode({{q(1), q(0)}, {q(0), q(1)}, std::nullopt});
  Rational M = lipschitz_bound(s, Rational(0), Rational(10));
  EXPECT_GE(M, 1);
  ExpPoly e = from_ode({{q(-1)}, {q(1)}, std::nullopt});
  EXPECT_GE(lipschitz_bound(e, Rational(0), Rational(1)), Rational(27182818, 10000000));
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> pick(0, 10000);
  for (int k = 0; k < 100; ++k) {
    Rational a(pick(rng), 1000), b(pick(rng), 1000);
    Rational eps(1, 1000000000);
    Rational fa = box_mid(eval_interval(s, a, eps)), fb = box_mid(eval_interval(s, b, eps));
    EXPECT_LE(abs_q(fa - fb), M * abs_q(a - b) + 2 * eps);
  }
}

TEST(ExpPoly, OdeResidualRandom) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> c(-3, 3), order(1, 4);
  for (int trial = 0; trial < 15; ++trial) {
    int n = order(rng);
    OdeInstance inst;
    for (int k = 0; k < n; ++k) inst.coeffs.push_back(q(c(rng)));
    for (int k = 0; k < n; ++k) inst.init.push_back(q(c(rng)));
    ExpPoly f = from_ode(inst);
    std::vector<ExpPoly> ders{f};
    for (int k = 0; k < n; ++k) ders.push_back(ders.back().derivative());
    ExpPoly res = ders[static_cast<std::size_t>(n)];
    for (int k = 0; k < n; ++k)
      res = res + FieldElement(inst.coeffs[static_cast<std::size_t>(k)].rational_value()) * ders[static_cast<std::size_t>(k)];
    EXPECT_TRUE(res.is_zero());
    for (int k = 0; k < n; ++k) {
      Box b = eval_interval(ders[static_cast<std::size_t>(k)], Rational(0), Rational(1, 1000000));
      Rational want = inst.init[static_cast<std::size_t>(k)].rational_value();
      EXPECT_LE(b.re_lo, want);
      EXPECT_GE(b.re_hi, want);
    }
  }
}
