#include <gtest/gtest.h>

#include <random>

#include "skolem/laurent.hpp"

using namespace skolem;

namespace {

FieldPtr gaussian() {
  static FieldPtr K =
      make_field({{qpoly({1, 0, 1}), {Rational(-1, 2), Rational(1, 2), Rational(1, 2), Rational(3, 2)}}}).field;
  return K;
}

FieldElement I() { return gaussian()->imaginary_unit(); }

LaurentPoly lp(const std::string& s, int r, int t, FieldPtr K = nullptr) { return parse_laurent(s, K, r, t); }

LaurentPoly random_poly(std::mt19937& rng, const FieldPtr& K, int r, int s, int terms, int span) {
  std::uniform_int_distribution<int> ex(-span, span), xe(0, 2), co(-3, 3);
  LaurentPoly p(K, r, s);
  for (int k = 0; k < terms; ++k) {
    Exponent e{xe(rng)};
    for (int j = 0; j < r + s; ++j) e.push_back(ex(rng));
    FieldElement c = FieldElement(co(rng)) + FieldElement(co(rng)) * K->imaginary_unit();
    p.add_term(e, c);
  }
  return p;
}

}  // namespace

TEST(Laurent, ParsePrintRoundTrip) {
  LaurentPoly p = lp("2 + z + z^-1", 0, 1);
  EXPECT_EQ(p.terms().size(), 3u);
  EXPECT_EQ(lp(p.str(), 0, 1), p);
  LaurentPoly q = lp("3/2*x^2*y1*z1^-1 - i*z2 + [1,-2]*x", 1, 2, gaussian());
  EXPECT_EQ(lp(q.str(), 1, 2, gaussian()), q);
  EXPECT_THROW(lp("x^-1", 0, 0), InvalidInput);
  EXPECT_THROW(lp("2 + w", 0, 1), ParseError);
}

TEST(Laurent, ConjugateExamples) {
  EXPECT_EQ(conjugate(lp("1 + z", 0, 1)), lp("1 + z^-1", 0, 1));
  LaurentPoly real = lp("x^2 - 3*y1 + 1/2*x*y1^-2", 1, 0);
  EXPECT_EQ(conjugate(real), real);
  EXPECT_EQ(conjugate(lp("i*x*z1*z2^-1", 0, 2, gaussian())), lp("-i*x*z1^-1*z2", 0, 2, gaussian()));
}

TEST(Laurent, ConjugateIsRingAutomorphism) {
  std::mt19937 rng(11);
  for (int k = 0; k < 30; ++k) {
    LaurentPoly a = random_poly(rng, gaussian(), 1, 2, 4, 2), b = random_poly(rng, gaussian(), 1, 2, 3, 2);
    EXPECT_EQ(conjugate(a * b), conjugate(a) * conjugate(b));
    EXPECT_EQ(conjugate(conjugate(a)), a);
  }
}

TEST(Laurent, FactorExampleOne) {
  LaurentPoly p = lp("2 + z + z^-1", 0, 1);
  auto f = factor(p);
  EXPECT_EQ(f.unit_exp, (Exponent{0, -1}));
  EXPECT_EQ(f.unit_coeff, FieldElement(1));
  ASSERT_EQ(f.factors.size(), 1u);
  EXPECT_EQ(f.factors[0].first, lp("1 + z", 0, 1));
  EXPECT_EQ(f.factors[0].second, 2);
  EXPECT_EQ(f.reassemble(p.field(), 0, 1), p);
}

TEST(Laurent, FactorDifferenceOfSquares) {
  auto f = factor(lp("y1^2 - x^2", 1, 0));
  ASSERT_EQ(f.factors.size(), 2u);
  for (const auto& [g, m] : f.factors) {
    EXPECT_EQ(m, 1);
    EXPECT_EQ(g.total_degree(), 1);
  }
}

TEST(Laurent, FactorIrreducible) {
  auto f = factor(lp("x + y1 + z1", 1, 1));
  ASSERT_EQ(f.factors.size(), 1u);
  EXPECT_EQ(f.factors[0].first, lp("x + y1 + z1", 1, 1));
}

TEST(Laurent, FactorSplitsOverField) {
  // z^2 + 1 is irreducible over Q but not over Q(i)
  auto fq = factor(lp("z^2 + 1", 0, 1));
  EXPECT_EQ(fq.factors.size(), 1u);
  auto fi = factor(lp("z^2 + 1", 0, 1).in_field(gaussian()));
  EXPECT_EQ(fi.factors.size(), 2u);
}

TEST(Laurent, FactorPullsOutX) {
  auto f = factor(lp("x^2*z + x^3", 0, 1));
  EXPECT_EQ(f.reassemble(nullptr, 0, 1), lp("x^2*z + x^3", 0, 1));
  int xpow = 0;
  for (const auto& [g, m] : f.factors)
    if (g == lp("x", 0, 1)) xpow = m;
  EXPECT_EQ(xpow, 2);
}

TEST(Laurent, FactorRandomProductsReassemble) {
  std::mt19937 rng(7);
  for (int k = 0; k < 12; ++k) {
    LaurentPoly a = random_poly(rng, gaussian(), 1, 1, 3, 1), b = random_poly(rng, gaussian(), 1, 1, 3, 1);
    LaurentPoly p = a * b;
    if (p.is_zero()) continue;
    auto f = factor(p);
    EXPECT_EQ(f.reassemble(gaussian(), 1, 1), p);
    int count = 0;
    for (const auto& [g, m] : f.factors) count += m;
    int expected = 0;
    for (const auto& q : {a, b}) expected += q.total_degree() > 0 ? 1 : 0;
    EXPECT_GE(count, expected);
  }
}

TEST(Laurent, SizeCaps) {
  EXPECT_THROW(factor(lp("x + y1 + y2 + y3 + z1 + z2 + z3", 3, 3)), SizeCapExceeded);
  EXPECT_THROW(factor(lp("z^13 + 1", 0, 1)), SizeCapExceeded);
}

TEST(Laurent, ClassifyExamples) {
  TypeTag t3 = classify(lp("1 + z", 0, 1));
  EXPECT_EQ(t3.kind, PolyType::Type3);
  EXPECT_EQ(t3.u, (std::vector<long>{1}));
  TypeTag t2 = classify(lp("x + y1 - 3", 1, 0));
  EXPECT_EQ(t2.kind, PolyType::Type2);
  EXPECT_EQ(conjugate(t2.normalized), t2.normalized);
  LaurentPoly p = lp("x", 0, 1, gaussian()) + LaurentPoly::monomial(gaussian(), 0, 1, {0, 1}, FieldElement(1) + I());
  EXPECT_EQ(classify(p).kind, PolyType::Type1);
}

TEST(Laurent, ClassifyNeedsRotation) {
  // i*(1 + x) is Type-2 only after scaling by a unit of modulus one
  LaurentPoly p = I() * lp("1 + x", 0, 1, gaussian());
  TypeTag t = classify(p);
  EXPECT_EQ(t.kind, PolyType::Type2);
  EXPECT_EQ(conjugate(t.normalized), t.normalized);
  // 1 - z over Q needs i adjoined
  TypeTag m = classify(lp("1 - z", 0, 1));
  EXPECT_EQ(m.kind, PolyType::Type3);
  Exponent zu{0, m.u[0]};
  EXPECT_EQ(conjugate(m.normalized).shifted(zu), m.normalized);
}

TEST(Laurent, ClassifyRandomSelfConjugate) {
  std::mt19937 rng(19);
  for (int k = 0; k < 20; ++k) {
    LaurentPoly a = random_poly(rng, gaussian(), 1, 1, 3, 2);
    FieldElement rot = FieldElement(1) + FieldElement(2) * I();
    LaurentPoly p = rot * (a + conjugate(a));
    if (p.is_zero()) continue;
    TypeTag t = classify(p);
    EXPECT_EQ(t.kind, PolyType::Type2);
    EXPECT_EQ(conjugate(t.normalized), t.normalized);
  }
}

TEST(Laurent, SplitType3Examples) {
  EXPECT_EQ(split_type3(lp("1 + z", 0, 1), {1}), lp("z", 0, 1));
  LaurentPoly p = lp("i - i*z^2", 0, 1, gaussian());
  EXPECT_EQ(split_type3(p, {2}), lp("-i*z^2", 0, 1, gaussian()));
  EXPECT_EQ(split_type3(lp("z + 2*z^2 + z^3", 0, 1), {4}), lp("z^2 + z^3", 0, 1));
  EXPECT_THROW(split_type3(lp("z*x + z", 0, 1), {2}), FixedCase);
  EXPECT_THROW(split_type3(lp("1 + 2*z", 0, 1), {1}), InvalidInput);
}

TEST(Laurent, DerivativePolyExamples) {
  SpectralBasis ya;
  ya.a = {FieldElement(1)};
  EXPECT_EQ(derivative_poly(lp("y1", 1, 0), ya), lp("y1", 1, 0));
  SpectralBasis zb;
  zb.b = {FieldElement(1)};
  EXPECT_EQ(derivative_poly(lp("z1", 0, 1, gaussian()), zb), lp("i*z1", 0, 1, gaussian()));
  EXPECT_EQ(derivative_poly(lp("x", 0, 0), SpectralBasis{}), lp("1", 0, 0));
}

TEST(Laurent, ToLaurentExamples) {
  FieldPtr K = gaussian();
  ExpPoly cosine = ExpPoly::constant(K, FieldElement(2)) + FieldElement(2) * cos_term(K, FieldElement(1));
  LaurentForm lf = to_laurent(cosine);
  ASSERT_EQ(lf.basis.b.size(), 1u);
  EXPECT_TRUE(lf.basis.a.empty());
  EXPECT_EQ(lf.P, lp("2 + z + z^-1", 0, 1).in_field(K));

  ExpPoly e = exp_term(K, FieldElement(1), {FieldElement(1)});
  LaurentForm le = to_laurent(e);
  EXPECT_EQ(le.P, lp("y1", 1, 0).in_field(K));
}

TEST(Laurent, ToLaurentSqrt2) {
  auto fb = make_field({{qpoly({-2, 0, 1}), {Rational(1), Rational(2), Rational(0), Rational(0)}},
                        {qpoly({1, 0, 1}), {Rational(-1, 2), Rational(1, 2), Rational(1, 2), Rational(3, 2)}}});
  FieldPtr K = fb.field;
  FieldElement r2 = fb.embeddings[0], i = fb.embeddings[1];
  FieldElement half(Rational(1, 2));
  ExpPoly f = exp_term(K, r2 + i, {FieldElement(0), -half * i}) + exp_term(K, r2 - i, {FieldElement(0), half * i});
  LaurentForm lf = to_laurent(f);
  ASSERT_EQ(lf.basis.a.size(), 1u);
  ASSERT_EQ(lf.basis.b.size(), 1u);
  EXPECT_EQ(lf.basis.a[0], r2);
  EXPECT_EQ(lf.basis.b[0], FieldElement(1));
  LaurentPoly want(K, 1, 1);
  want.add_term({1, 1, 1}, -half * i);
  want.add_term({1, 1, -1}, half * i);
  EXPECT_EQ(lf.P, want);

  // derivative polynomial matches d/dt numerically
  LaurentPoly Q = derivative_poly(lf.P, lf.basis);
  ExpPoly df = f.derivative();
  mpfr_prec_t prec = 128;
  for (int k = 1; k <= 5; ++k) {
    Rational t(k, 3);
    Interval ti(t, prec);
    CInterval x(ti, Interval(prec));
    CInterval y = exp(CInterval(lf.basis.a[0].approx(prec).re * ti, Interval(prec)));
    CInterval z = exp(CInterval(Interval(prec), lf.basis.b[0].approx(prec).re * ti));
    CInterval v = Q.eval(x, {y}, {z}, prec);
    Box want_box = eval_interval(df, t, Rational(1, 1000000000));
    EXPECT_LE(to_double(want_box.re_lo) - 1e-8, v.re.hi_d());
    EXPECT_GE(to_double(want_box.re_hi) + 1e-8, v.re.lo_d());
  }
}

TEST(Laurent, DivisionExactness) {
  LaurentPoly a = lp("1 + z", 0, 1), b = lp("2 + z + z^-1", 0, 1);
  auto q = divide(b, a);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q * a, b);
  EXPECT_FALSE(divide(a, b).has_value());
  EXPECT_FALSE(divides(lp("1 + z", 0, 1), lp("z", 0, 1)));
}
