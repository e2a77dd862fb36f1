#pragma once

#include <map>
#include <string>
#include <vector>

#include "skolem/field.hpp"
#include "skolem/qpoly.hpp"

namespace skolem {

using Monomial = std::vector<int>;

// Polynomial with rational coefficients in x_0..x_{n-1}.
class MPoly {
 public:
  MPoly() = default;
  explicit MPoly(int nvars) : n_(nvars) {}
  static MPoly constant(int nvars, const Rational& c);
  static MPoly var(int nvars, int i);

  int nvars() const { return n_; }
  const std::map<Monomial, Rational>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;

  int degree(int v) const;  // -1 for the zero polynomial
  int total_degree() const;
  int main_var() const;  // largest variable that occurs, -1 for constants
  // Coefficient of x_v^k as a polynomial in the remaining variables.
  MPoly coeff(int v, int k) const;
  MPoly leading_coeff(int v) const { return coeff(v, degree(v)); }
  MPoly derivative(int v) const;
  MPoly with_nvars(int n) const;  // pad or drop unused trailing variables

  void add_term(const Monomial& m, const Rational& c);

  MPoly operator-() const;
  friend MPoly operator+(const MPoly& a, const MPoly& b);
  friend MPoly operator-(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const Rational& c, const MPoly& a);
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.n_ == b.n_ && a.t_ == b.t_; }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }
  friend bool operator<(const MPoly& a, const MPoly& b) { return a.t_ < b.t_; }

  Rational eval(const std::vector<Rational>& x) const;
  FieldElement eval(const std::vector<FieldElement>& x) const;
  Interval eval(const std::vector<Interval>& x, mpfr_prec_t prec) const;
  // Substitute values for x_0..x_{v-1}; the result is univariate in x_v.
  QPoly univariate(int v, const std::vector<Rational>& prefix) const;
  KPoly univariate(int v, const std::vector<FieldElement>& prefix) const;

  // Integer coefficients with gcd 1 and positive leading coefficient.
  MPoly primitive() const;

  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  int n_ = 0;
  std::map<Monomial, Rational> t_;
};

MPoly pow(const MPoly& a, unsigned e);
// a / b when b divides a exactly; throws std::logic_error otherwise.
MPoly exact_div(const MPoly& a, const MPoly& b);
// Principal subresultant coefficient psc_j(a, b) with respect to x_v.
MPoly psc(const MPoly& a, const MPoly& b, int v, int j);
MPoly resultant(const MPoly& a, const MPoly& b, int v);
MPoly discriminant(const MPoly& a, int v);
// Irreducible factors over Q, or the primitive part itself when it is too large to factor.
std::vector<MPoly> irreducible_factors(const MPoly& a, int max_degree = 12);

// Terms like "3/2*x^2*y - u1*x + 1"; variable names are given in order.
MPoly parse_mpoly(const std::string& text, const std::vector<std::string>& names);

}  // namespace skolem
