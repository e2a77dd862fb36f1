#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "skolem/field.hpp"

namespace skolem {

using Coeffs = std::vector<FieldElement>;  // polynomial in t, constant first

struct ExpTerm {
  FieldElement lambda;
  Coeffs poly;
};

// f(t) = sum_j P_j(t) e^{lambda_j t} over a number field.
class ExpPoly {
 public:
  ExpPoly() = default;
  // Merges equal exponents and drops vanishing terms.
  static ExpPoly make(FieldPtr field, std::vector<ExpTerm> terms);
  static ExpPoly constant(FieldPtr field, const FieldElement& c);

  const FieldPtr& field() const { return field_; }
  const std::vector<ExpTerm>& terms() const { return terms_; }
  bool real_valued() const { return real_; }
  bool is_zero() const { return terms_.empty(); }
  // True when every P_j is a constant.
  bool simple() const;

  ExpPoly derivative() const;
  ExpPoly conj() const;
  friend ExpPoly operator+(const ExpPoly& a, const ExpPoly& b);
  friend ExpPoly operator-(const ExpPoly& a, const ExpPoly& b);
  friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b);
  friend ExpPoly operator*(const FieldElement& c, const ExpPoly& a);
  friend bool operator==(const ExpPoly& a, const ExpPoly& b);

  FieldElement value_at_zero() const;
  std::string str() const;

 private:
  FieldPtr field_;
  std::vector<ExpTerm> terms_;
  bool real_ = true;
};

// Building blocks over a field containing the needed constants.
ExpPoly exp_term(const FieldPtr& K, const FieldElement& lambda, Coeffs poly);
ExpPoly cos_term(const FieldPtr& K, const FieldElement& omega);  // needs i in K
ExpPoly sin_term(const FieldPtr& K, const FieldElement& omega);
ExpPoly t_power(const FieldPtr& K, int k);

struct OdeInstance {
  std::vector<AlgebraicNumber> coeffs;  // a_0 .. a_{n-1}
  std::vector<AlgebraicNumber> init;    // f(0) .. f^{(n-1)}(0)
  std::optional<std::pair<Rational, Rational>> interval;
};

ExpPoly from_ode(const OdeInstance& inst, const FieldConfig& cfg = {});
using QMatrix = std::vector<std::vector<Rational>>;
OdeInstance from_linear_system(const QMatrix& A, const std::vector<Rational>& x0, const std::vector<Rational>& u);

struct FreqTerm {
  FieldElement r, omega;
  Coeffs q1, q2;
};
struct FrequencyForm {
  FieldPtr field;
  std::vector<FreqTerm> terms;
};
FrequencyForm frequency_form(const ExpPoly& f);

// Rectangle of width and height at most eps holding f(t).
Box eval_interval(const ExpPoly& f, const Rational& t, const Rational& eps);
// Upper bound for sup |f'| on [a, b].
Rational lipschitz_bound(const ExpPoly& f, const Rational& a, const Rational& b);

// Enclosure of f(t) at a fixed working precision; constants are approximated once, so a
// single evaluator can be shared by concurrent callers.
class ExpPolyEvaluator {
 public:
  ExpPolyEvaluator(const ExpPoly& f, mpfr_prec_t prec);
  CInterval eval(const Rational& t) const;
  CInterval eval(const Interval& t) const;
  Interval eval_real(const Rational& t) const { return eval(t).re; }
  mpfr_prec_t prec() const { return prec_; }

 private:
  struct Term {
    CInterval lambda;
    std::vector<CInterval> poly;
  };
  std::vector<Term> terms_;
  mpfr_prec_t prec_;
};

CInterval eval_coeffs(const std::vector<CInterval>& poly, const Interval& t);

}  // namespace skolem
