#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "skolem/semialg.hpp"

using namespace skolem;

namespace {

FieldElement sqrt2() {
  static FieldBuild fb = make_field({{qpoly({-2, 0, 1}), {Rational(1), Rational(2), Rational(0), Rational(0)}}});
  return fb.embeddings[0];
}

Rational frac(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

Interval enclose(const FieldElement& x, mpfr_prec_t prec) {
  return x.is_rational() ? Interval(x.rational_value(), prec) : x.approx(prec).re;
}

// Sign of P(t, e^{r t}) by direct substitution, or nullopt when not certified.
std::optional<int> trajectory_sign(const MPoly& P, bool has_t, const std::vector<FieldElement>& r,
                                   const Rational& t) {
  for (mpfr_prec_t prec = 128; prec <= 4096; prec *= 2) {
    std::vector<Interval> x;
    Interval it(t, prec);
    if (has_t) x.push_back(it);
    for (const auto& rk : r) x.push_back(exp(enclose(rk, prec) * it));
    auto s = P.eval(x, prec).sign();
    if (s) return s;
  }
  return std::nullopt;
}

}  // namespace

TEST(MPoly, ArithmeticAndParsing) {
  std::vector<std::string> xy{"x", "y"};
  MPoly p = parse_mpoly("x^2 + y^2 - 1", xy);
  EXPECT_EQ(p.total_degree(), 2);
  EXPECT_EQ(p.main_var(), 1);
  EXPECT_EQ(p.eval(std::vector<Rational>{Rational(3, 5), Rational(4, 5)}), 0);
  MPoly q = parse_mpoly("x - y", xy) * parse_mpoly("x + y", xy);
  EXPECT_EQ(q, parse_mpoly("x^2 - y^2", xy));
  EXPECT_EQ(exact_div(q, parse_mpoly("x + y", xy)), parse_mpoly("x - y", xy));
  EXPECT_THROW(exact_div(q, parse_mpoly("x + 2*y", xy)), std::logic_error);
  EXPECT_THROW(parse_mpoly("x + z", xy), ParseError);
  EXPECT_EQ(parse_mpoly("2*x^2 - 4", xy).primitive(), parse_mpoly("x^2 - 2", xy));
}

TEST(MPoly, ResultantAndSubresultants) {
  std::vector<std::string> xy{"x", "y"};
  MPoly circle = parse_mpoly("x^2 + y^2 - 1", xy);
  MPoly line = parse_mpoly("y", xy);
  MPoly res = resultant(circle, line, 1);
  EXPECT_EQ(res.primitive(), parse_mpoly("x^2 - 1", xy));
  // Res(y^2 + c, 2y) = 4c
  EXPECT_EQ(discriminant(circle, 1).str(xy), "4*x^2 - 4");
  // psc_1 of two quadratics sharing a linear factor is nonzero, psc_0 is zero
  MPoly a = parse_mpoly("y^2 - x^2", xy), b = parse_mpoly("y^2 - x*y", xy);
  EXPECT_TRUE(psc(a, b, 1, 0).is_zero());
  EXPECT_FALSE(psc(a, b, 1, 1).is_zero());
}

TEST(MPoly, Factors) {
  std::vector<std::string> xy{"x", "y"};
  auto fs = irreducible_factors(parse_mpoly("x^3*y - x*y^3", xy));
  ASSERT_EQ(fs.size(), 4u);
  MPoly prod = MPoly::constant(2, Rational(1));
  for (const auto& f : fs) prod = prod * f;
  EXPECT_EQ(prod.primitive(), parse_mpoly("x^3*y - x*y^3", xy).primitive());
}

TEST(ExpSum, Rewrites) {
  std::vector<std::string> tu{"t", "u"};
  ExpSum a = exp_sum_rewrite(parse_mpoly("u - t^3", tu), 0, {FieldElement(1)});
  ASSERT_EQ(a.terms.size(), 2u);
  EXPECT_EQ(a.terms[0].Q, qpoly({1}));
  EXPECT_EQ(a.terms[0].beta, FieldElement(1));
  EXPECT_EQ(a.terms[1].Q, qpoly({0, 0, 0, -1}));
  EXPECT_EQ(a.terms[1].beta, FieldElement(0));

  std::vector<std::string> uu{"u1", "u2"};
  ExpSum b = exp_sum_rewrite(parse_mpoly("u1*u2 - u1", uu), -1, {FieldElement(1), FieldElement(-2)});
  ASSERT_EQ(b.terms.size(), 2u);
  EXPECT_EQ(b.terms[0].Q, qpoly({-1}));
  EXPECT_EQ(b.terms[0].beta, FieldElement(1));
  EXPECT_EQ(b.terms[1].Q, qpoly({1}));
  EXPECT_EQ(b.terms[1].beta, FieldElement(-1));

  ExpSum c = exp_sum_rewrite(MPoly::constant(0, Rational(5)), -1, {});
  ASSERT_EQ(c.terms.size(), 1u);
  EXPECT_EQ(c.terms[0].Q, qpoly({5}));

  // numeric agreement with direct substitution at 10 points
  std::vector<std::string> tuv{"t", "u", "v"};
  MPoly P = parse_mpoly("t^2*u*v - 3*u^2 + t*v^2 - 7", tuv);
  std::vector<FieldElement> r{sqrt2(), FieldElement(Rational(-1, 2))};
  ExpSum s = exp_sum_rewrite(P, 0, r);
  for (int k = 1; k <= 10; ++k) {
    Rational t = frac(k, 3);
    Interval it(t, 200);
    std::vector<Interval> x{it, exp(enclose(r[0], 200) * it), exp(enclose(r[1], 200) * it)};
    Interval direct = P.eval(x, 200);
    Interval rewritten = s.eval(t, t, 200);
    EXPECT_NEAR(direct.mid_d(), rewritten.mid_d(), 1e-9 * (1 + std::abs(direct.mid_d())));
  }
}

TEST(Eventual, SpecInstances) {
  std::vector<std::string> tu{"t", "u"};
  MPoly P = parse_mpoly("u - t^3", tu);
  Eventuality e = eventual_membership(SemiAlgSet::gt(P), true, {FieldElement(1)});
  EXPECT_TRUE(e.in);
  EXPECT_GT(e.T, 0);
  for (int k = 0; k < 50; ++k) {
    Rational t = e.T + Rational(k) + Rational(1, 2);
    EXPECT_EQ(trajectory_sign(P, true, {FieldElement(1)}, t), 1) << to_string(t);
  }

  Eventuality neg = eventual_membership(SemiAlgSet::lt(parse_mpoly("u", {"u"})), false, {FieldElement(1)});
  EXPECT_FALSE(neg.in);
  EXPECT_EQ(neg.T, 0);

  Eventuality five = eventual_membership(SemiAlgSet::gt(parse_mpoly("t - 5", {"t"})), true, {});
  EXPECT_TRUE(five.in);
  EXPECT_GE(five.T, 5);
  EXPECT_LE(five.T, 6);
}

TEST(Eventual, RandomAtomsAgreeWithSampling) {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> coef(-4, 4), texp(0, 3), uexp(0, 2);
  std::vector<std::vector<FieldElement>> rates{
      {FieldElement(1)}, {FieldElement(-1)}, {FieldElement(Rational(1, 2))}, {sqrt2()}, {sqrt2() - FieldElement(1)}};
  for (int inst = 0; inst < 20; ++inst) {
    const auto& r = rates[static_cast<std::size_t>(inst) % rates.size()];
    MPoly P(2);
    for (int k = 0; k < 4; ++k) P.add_term({texp(rng), uexp(rng)}, Rational(coef(rng)));
    if (P.is_constant()) P.add_term({1, 1}, Rational(1));
    SemiAlgSet D = inst % 2 ? SemiAlgSet::gt(P) : SemiAlgSet::le(P);
    Eventuality e = eventual_membership(D, true, r);
    for (int k = 0; k < 50; ++k) {
      Rational t = e.T + Rational(k) + Rational(1, 3);
      auto s = trajectory_sign(P, true, r, t);
      ASSERT_TRUE(s.has_value());
      bool member = inst % 2 ? *s > 0 : *s <= 0;
      EXPECT_EQ(member, e.in) << P.str({"t", "u"}) << " at t=" << to_string(t);
    }
  }
}

TEST(Limit, ReciprocalOfOnePlusU) {
  std::vector<std::string> uy{"u", "y"};
  MPoly A = parse_mpoly("y*u + y - 1", uy);
  auto branch = [](const Rational& t) { return Rational(1.0 / (1.0 + std::exp(-to_double(t)))); };
  LimitResult L = limit_semialg(A, {FieldElement(-1)}, Rational(0), branch);
  ASSERT_TRUE(L.value.is_rational());
  EXPECT_EQ(L.value.rational_value(), 1);
  EXPECT_GT(L.eps, 0);
  for (int k = 1; k <= 20; ++k) {
    Rational t = L.T2 + k;
    Interval it(t, 256);
    Interval g = Interval(1L, 256) / (Interval(1L, 256) + exp(-it));
    Interval err = abs(g - Interval(1L, 256));
    EXPECT_LT(err.upper(), exp(-(Interval(L.eps, 256) * it)).lower());
  }
}

TEST(Limit, VanishingBranches) {
  std::vector<std::string> uy{"u", "y"};
  auto u_branch = [](const Rational& t) { return Rational(std::exp(-to_double(t))); };
  LimitResult a = limit_semialg(parse_mpoly("y - u", uy), {FieldElement(-1)}, Rational(0), u_branch);
  EXPECT_EQ(a.value.rational_value(), 0);
  auto w_branch = [](const Rational& t) {
    double u = std::exp(-to_double(t));
    return Rational(u / (1 + u * u));
  };
  LimitResult b = limit_semialg(parse_mpoly("y*u^2 + y - u", uy), {FieldElement(-1)}, Rational(0), w_branch);
  EXPECT_EQ(b.value.rational_value(), 0);
  for (int k = 1; k <= 20; ++k) {
    double t = to_double(b.T2) + k;
    double u = std::exp(-t);
    EXPECT_LT(u / (1 + u * u), std::exp(-to_double(b.eps) * t));
  }
  // an unbounded function along the trajectory
  EXPECT_THROW(limit_semialg(parse_mpoly("y*u - 1", uy), {FieldElement(-1)}, Rational(0), u_branch),
               UnboundedFunction);
}

TEST(Cad, Line) {
  CellDecomposition D = cad({parse_mpoly("x", {"x"})}, 1);
  ASSERT_EQ(D.leaves().size(), 3u);
  EXPECT_EQ(D.leaves()[0].type, std::vector<int>{1});
  EXPECT_EQ(D.leaves()[1].type, std::vector<int>{0});
  EXPECT_EQ(D.leaves()[2].type, std::vector<int>{1});
  EXPECT_EQ(D.leaves()[1].sample[0], FieldElement(0));
}

TEST(Cad, CircleAndAxis) {
  std::vector<std::string> xy{"x", "y"};
  std::vector<MPoly> in{parse_mpoly("x^2 + y^2 - 1", xy), parse_mpoly("y", xy)};
  CellDecomposition D = cad(in, 2);
  bool plus = false, minus = false;
  for (const auto& c : D.leaves()) {
    if (c.type != std::vector<int>{0, 0}) continue;
    if (c.sample[0] == FieldElement(1) && c.sample[1] == FieldElement(0)) plus = true;
    if (c.sample[0] == FieldElement(-1) && c.sample[1] == FieldElement(0)) minus = true;
  }
  EXPECT_TRUE(plus);
  EXPECT_TRUE(minus);
  EXPECT_NE(D.json().find("\"type\""), std::string::npos);
}

TEST(Cad, Parabola) {
  std::vector<std::string> xy{"x", "y"};
  CellDecomposition D = cad({parse_mpoly("y - x^2", xy)}, 2);
  ASSERT_EQ(D.cells[0].size(), 3u);
  for (const auto& base : D.cells[0]) {
    ASSERT_EQ(base.children.size(), 3u);
    EXPECT_EQ(D.sign(parse_mpoly("y - x^2", xy), 1, base.children[0]), -1);
    EXPECT_EQ(D.sign(parse_mpoly("y - x^2", xy), 1, base.children[1]), 0);
    EXPECT_EQ(D.sign(parse_mpoly("y - x^2", xy), 1, base.children[2]), 1);
  }
}

namespace {

void check_decomposition(const std::vector<MPoly>& in, int n, const CadOptions& opt, int points, unsigned seed) {
  CellDecomposition D = cad(in, n, opt);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> num(-400, 400);
  const int top = n - 1;
  for (int k = 0; k < points; ++k) {
    std::vector<Rational> x;
    for (int i = 0; i < n; ++i) x.push_back(frac(num(rng), 128));
    int hits = 0, hit = -1;
    for (int c = 0; c < static_cast<int>(D.leaves().size()); ++c)
      if (D.contains(top, c, x)) {
        ++hits;
        hit = c;
      }
    ASSERT_EQ(hits, 1);
    EXPECT_EQ(D.locate(x), hit);
    for (const auto& p : in) EXPECT_EQ(sgn(p.eval(x)), D.sign(p, top, hit));
  }
  // sign invariance at every sample and at small perturbations of sector samples
  for (int c = 0; c < static_cast<int>(D.leaves().size()); ++c) {
    const Cell& cell = D.leaves()[static_cast<std::size_t>(c)];
    bool all_sectors = std::all_of(cell.type.begin(), cell.type.end(), [](int t) { return t == 1; });
    if (!all_sectors) continue;
    std::vector<Rational> x;
    for (const auto& v : cell.sample) x.push_back(v.rational_value());
    for (int j = 0; j < n; ++j) {
      std::vector<Rational> y = x;
      y[static_cast<std::size_t>(j)] += Rational(1, 1 << 20);
      if (D.locate(y) != c) continue;
      for (const auto& p : in) EXPECT_EQ(sgn(p.eval(y)), D.sign(p, top, c));
    }
  }
}

}  // namespace

TEST(Cad, RandomPointsCircle) {
  std::vector<std::string> xy{"x", "y"};
  check_decomposition({parse_mpoly("x^2 + y^2 - 1", xy), parse_mpoly("y", xy)}, 2, {}, 1000, 1);
}

TEST(Cad, RandomPointsThreeVariables) {
  std::vector<std::string> v{"u", "x", "y"};
  check_decomposition({parse_mpoly("x + y + u - 1", v), parse_mpoly("x^2 - 1", v), parse_mpoly("y^2 - 1", v)}, 3, {},
                      300, 2);
}

TEST(Cad, ThomLevelsMakeSignConditionsExact) {
  std::vector<std::string> v{"u", "x"};
  CadOptions opt;
  opt.thom_levels = 1;
  CellDecomposition D = cad({parse_mpoly("u^3 - u - x", v), parse_mpoly("x^2 - 1", v)}, 2, opt);
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> num(-600, 600);
  for (int k = 0; k < 200; ++k) {
    Rational u = frac(num(rng), 256);
    int cell = D.locate({u, Rational(0)});
    int base = D.leaves()[static_cast<std::size_t>(cell)].parent;
    for (int b = 0; b < static_cast<int>(D.cells[0].size()); ++b)
      EXPECT_EQ(D.sign_condition(0, b).contains({u}), b == base);
  }
}
