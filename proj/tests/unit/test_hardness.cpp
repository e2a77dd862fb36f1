#include <gtest/gtest.h>

#include <cmath>

#include "skolem/hardness.hpp"

using namespace skolem;

namespace {

FieldElement real_root(std::initializer_list<long> coeffs, long lo, long hi) {
  return make_field({{qpoly(coeffs), {Rational(lo), Rational(hi), Rational(0), Rational(0)}}}).embeddings[0];
}

FieldElement sqrt2() { return real_root({-2, 0, 1}, 1, 2); }
FieldElement golden() { return real_root({-1, -1, 1}, 1, 2); }
FieldElement cbrt2() { return real_root({-2, 0, 0, 1}, 1, 2); }

// Floor-and-invert on a 2000-bit enclosure, each floor certified by the enclosure.
std::vector<long> mpfr_quotients(Interval x, int k) {
  std::vector<long> out;
  for (int i = 0; i < k; ++i) {
    Integer lo = floor_q(x.lower()), hi = floor_q(x.upper());
    EXPECT_EQ(lo, hi) << "enclosure too wide at step " << i;
    out.push_back(lo.get_si());
    x = Interval(1L, 2000) / (x - Interval(Rational(lo), 2000));
  }
  return out;
}

}  // namespace

TEST(ContinuedFraction, QuadraticIrrationals) {
  CFExpansion r2 = cf_expand(sqrt2(), 21);
  ASSERT_EQ(r2.quotients.size(), 21u);
  EXPECT_EQ(r2.quotients[0], 1);
  for (std::size_t i = 1; i < 21; ++i) EXPECT_EQ(r2.quotients[i], 2);
  CFExpansion g = cf_expand(golden(), 21);
  for (const auto& n : g.quotients) EXPECT_EQ(n, 1);
  EXPECT_EQ(g.convergents[10], Rational(144, 89));
}

TEST(ContinuedFraction, CubeRootAgainstHighPrecision) {
  CFExpansion cf = cf_expand(cbrt2(), 8);
  Interval x = exp(log(Interval(2L, 2000)) / Interval(3L, 2000));
  std::vector<long> oracle = mpfr_quotients(x, 8);
  ASSERT_EQ(cf.quotients.size(), 8u);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(cf.quotients[i], oracle[i]);
  std::vector<long> expected{1, 3, 1, 5, 1, 1, 4, 1};
  EXPECT_EQ(oracle, expected);
}

TEST(ContinuedFraction, ConvergentInvariants) {
  EXPECT_TRUE(cf_kernel_float_free());
  for (const FieldElement& a : {sqrt2(), golden(), cbrt2()}) {
    CFExpansion cf = cf_expand(a, 14);
    for (std::size_t k = 0; k + 1 < cf.convergents.size(); ++k) {
      const Rational& c = cf.convergents[k];
      Integer q0 = c.get_den(), q1 = cf.convergents[k + 1].get_den();
      FieldElement err = a - FieldElement(c);
      if (sign(err) < 0) err = -err;
      Rational bound(Integer(1), q0 * q1);
      bound.canonicalize();
      EXPECT_LT(sign(err - FieldElement(bound)), 0);
      // convergents alternate around a
      EXPECT_EQ(sign(a - FieldElement(c)), k % 2 == 0 ? 1 : -1);
      if (k >= 2) {
        Rational n(cf.quotients[k]);
        EXPECT_EQ(c.get_num(), cf.quotients[k] * cf.convergents[k - 1].get_num() + cf.convergents[k - 2].get_num());
      }
    }
  }
  CFExpansion t = cf_expand(FieldElement(Rational(7, 3)), 10);
  EXPECT_TRUE(t.terminated);
  EXPECT_EQ(t.quotients, (std::vector<Integer>{2, 3}));
  EXPECT_EQ(floor_exact(FieldElement(Rational(-7, 3))), -3);
  EXPECT_EQ(floor_exact(FieldElement(4)), 4);
}

TEST(TypeBounds, ClassicalConstants) {
  Interval five = sqrt(Interval(5L, 128)), eight = sqrt(Interval(8L, 128));
  TypeBounds g = type_bounds(golden(), 20);
  EXPECT_NEAR(to_double(g.upper), 1.0 / five.mid_d(), 1e-3);
  EXPECT_EQ(g.K_so_far, 1);
  EXPECT_LE(g.window_lo, g.upper);
  EXPECT_LE(g.upper, g.window_hi);
  TypeBounds r = type_bounds(sqrt2(), 20);
  EXPECT_NEAR(to_double(r.upper), 1.0 / eight.mid_d(), 1e-3);
  EXPECT_LE(r.upper_all, r.upper);
  TypeBounds shallow = type_bounds(sqrt2(), 4);
  EXPECT_GE(shallow.upper_all, r.upper_all);
  EXPECT_TRUE(type_bounds(FieldElement(Rational(5, 8)), 10).rational);
}

TEST(HardnessFamily, Identities) {
  HardnessFamily f = hardness_family(sqrt2(), FieldElement(1));
  EXPECT_TRUE(f.f1.value_at_zero().is_zero());
  EXPECT_TRUE(f.f2.value_at_zero().is_zero());
  ExpPoly s = sin_term(f.f1.field(), f.a);
  EXPECT_TRUE((f.f1 - f.f2 + FieldElement(2) * s).is_zero());
  HardnessFamily h = hardness_family(real_root({-3, 0, 1}, 1, 2), FieldElement(2));
  std::vector<FieldElement> omegas;
  for (const auto& term : frequency_form(h.f1).terms)
    if (sign(term.omega) != 0) omegas.push_back(term.omega);
  QBasis b = rational_basis(omegas);
  ASSERT_EQ(b.basis.size(), 2u);
  std::vector<double> vals;
  for (const auto& e : b.basis) vals.push_back(e.approx(64).re.mid_d());
  std::sort(vals.begin(), vals.end());
  EXPECT_NEAR(vals[0] / vals[1], 1 / std::sqrt(3.0), 1e-12);
}

TEST(Thresholds, ConditionsHoldOnSubstitution) {
  const double a = std::sqrt(2.0), c = 1, eps = 0.5;
  Thresholds th = thresholds(sqrt2(), Rational(1), Rational(1, 2));
  const double alpha = std::sqrt(1 - eps * eps);
  const double T = to_double(th.T_forward);
  for (double t = T; t < T + 400; t += 0.37) {
    double m = std::round(t / (2 * M_PI));
    EXPECT_GE(t, 2 * M_PI * (m - 1));
    EXPECT_GE(2 * M_PI * (m - 1), 2 * M_PI * m * alpha);
    EXPECT_LE(c * std::exp(-t), std::pow(c * eps / (2 * a * alpha * t), 2));
  }
  for (int k = 0; k <= 20000; ++k) {
    double x = M_PI * k / 20000;
    if (1 - std::cos(x) <= c * M_PI / T) EXPECT_LE(alpha * x * x / 2, 1 - std::cos(x) + 1e-15);
  }
  const double M = th.M_backward.get_d();
  const double X = c * (1 - eps) / (M_PI * M);
  EXPECT_LT(X, M_PI);
  EXPECT_LE((1 - eps) * X, std::sin(X));
  Thresholds tighter = thresholds(sqrt2(), Rational(1), Rational(3, 4));
  EXPECT_GT(tighter.T_forward, Rational(0));
  Thresholds looser = thresholds(sqrt2(), Rational(1), Rational(1, 4));
  EXPECT_GT(looser.T_forward, th.T_forward);
}

TEST(ApproximateType, StubOracleKeepsTheClassicalValue) {
  TypeApprox g = approximate_type(golden(), Rational(0), Rational(1), numeric_search_oracle(), 10);
  ASSERT_FALSE(g.trace.empty());
  EXPECT_LT(to_double(g.p), 0.4472);
  EXPECT_GT(to_double(g.q), 0.4472);
  TypeBounds tb = type_bounds(golden(), 20);
  EXPECT_LE(g.p, tb.upper_all);
  for (const auto& s : g.trace) {
    EXPECT_LT(s.q - s.p, Rational(1) + Rational(1, 100));
  }
  TypeApprox r = approximate_type(sqrt2(), Rational(0), Rational(1), numeric_search_oracle(), 10);
  EXPECT_LT(to_double(r.p), 0.3536);
  EXPECT_GT(to_double(r.q), 0.3536);
}

TEST(ApproximateType, NoZeroOracleFollowsTheUpperBranch) {
  SkolemOracle never = [](const HardnessFamily&, const Rational&) { return OracleAnswer::NoZeroBeyond; };
  TypeApprox t = approximate_type(sqrt2(), Rational(0), Rational(1), never, 6);
  ASSERT_EQ(t.trace.size(), 6u);
  Rational last_p = -1;
  for (const auto& s : t.trace) {
    EXPECT_GE(s.p, last_p);
    last_p = s.p;
    if (s.branch == "no_zero") {
      EXPECT_EQ(s.witness_m, 0);
    } else {
      EXPECT_EQ(s.branch, "small_witness");
      EXPECT_GT(s.witness_m, 0);
    }
    EXPECT_LT(s.A_hi, s.B_lo);
  }
  EXPECT_EQ(t.trace[0].branch, "no_zero");
  EXPECT_GE(t.p, t.trace.back().p);
  EXPECT_LT(t.q - t.p, Rational(1, 2));
}
