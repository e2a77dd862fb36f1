#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skolem/exppoly.hpp"
#include "skolem/field.hpp"

namespace skolem {

// Exponent vector [u, v_1..v_r, w_1..w_s] for x^u y^v z^w.
using Exponent = std::vector<long>;

// Element of K[x, y_1^±, ..., y_r^±, z_1^±, ..., z_s^±].
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(FieldPtr K, int r, int s) : K_(std::move(K)), r_(r), s_(s) {}
  static LaurentPoly constant(FieldPtr K, int r, int s, const FieldElement& c);
  static LaurentPoly monomial(FieldPtr K, int r, int s, Exponent e, const FieldElement& c = FieldElement(1));

  const FieldPtr& field() const { return K_; }
  int r() const { return r_; }
  int s() const { return s_; }
  int nvars() const { return 1 + r_ + s_; }
  const std::map<Exponent, FieldElement>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_monomial() const { return t_.size() == 1; }
  FieldElement coeff(const Exponent& e) const;
  // Lexicographically first term.
  const std::pair<const Exponent, FieldElement>& first_term() const { return *t_.begin(); }

  void add_term(const Exponent& e, const FieldElement& c);

  Exponent min_exponents() const;
  Exponent max_exponents() const;
  // Total degree after shifting every exponent minimum to zero.
  long total_degree() const;
  LaurentPoly shifted(const Exponent& by) const;  // multiply by the monomial x^.. y^.. z^..
  LaurentPoly in_field(const FieldPtr& K) const;

  LaurentPoly operator-() const;
  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const FieldElement& c, const LaurentPoly& a);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  // Value at x = t, y_j = e^{a_j t}, z_k = e^{i b_k t} for numeric checks.
  CInterval eval(const CInterval& x, const std::vector<CInterval>& y, const std::vector<CInterval>& z,
                 mpfr_prec_t prec) const;

  std::string str() const;

 private:
  void check_shape(const Exponent& e) const;
  FieldPtr K_;
  int r_ = 0, s_ = 0;
  std::map<Exponent, FieldElement> t_;
};

LaurentPoly conjugate(const LaurentPoly& p);

// Exact quotient a / b in the Laurent ring, if b divides a.
std::optional<LaurentPoly> divide(const LaurentPoly& a, const LaurentPoly& b);
bool divides(const LaurentPoly& b, const LaurentPoly& a);

struct SpectralBasis {
  std::vector<FieldElement> a, b;
  std::vector<std::vector<Integer>> re_coords, im_coords;  // per term of the source ExpPoly
  std::vector<FieldElement> lambdas;
};

struct LaurentForm {
  LaurentPoly P;
  SpectralBasis basis;
};

LaurentForm to_laurent(const ExpPoly& f);

struct LaurentConfig {
  int max_vars = 6;
  long max_degree = 12;
  int max_norm_degree = 512;      // degree over Q of the univariate image's norm
  long max_recombinations = 200000;
};

struct LaurentFactorization {
  FieldElement unit_coeff;
  Exponent unit_exp;  // x component is always 0
  std::vector<std::pair<LaurentPoly, int>> factors;
  LaurentPoly reassemble(const FieldPtr& K, int r, int s) const;
};

LaurentFactorization factor(const LaurentPoly& p, const LaurentConfig& cfg = {});

// Shift minima to zero and scale the lexicographically first coefficient to 1.
LaurentPoly normalize(const LaurentPoly& p);

enum class PolyType { Type1, Type2, Type3 };

struct TypeTag {
  PolyType kind = PolyType::Type1;
  LaurentPoly normalized;  // beta * P for Type-2 and Type-3, P itself for Type-1
  std::vector<long> u;     // z-exponent of the Type-3 unit
  FieldElement beta;
};

TypeTag classify(const LaurentPoly& p, const FieldConfig& cfg = {});

// Q with P = Q + z^u conj(Q); P must satisfy P = z^u conj(P).
LaurentPoly split_type3(const LaurentPoly& p, const std::vector<long>& u);

LaurentPoly derivative_poly(const LaurentPoly& p, const SpectralBasis& basis);

// The exponential polynomial t -> p(t, e^{a t}, e^{i b t}).
ExpPoly to_exppoly(const LaurentPoly& p, const SpectralBasis& basis);

// Text form: terms like "3/2*x^2*y1*z1^-1", "[0,1]*z2" (coordinates in theta) or "i*z1".
LaurentPoly parse_laurent(const std::string& text, const FieldPtr& K, int r, int s);

}  // namespace skolem
