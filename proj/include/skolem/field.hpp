#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "skolem/algebraic.hpp"
#include "skolem/upoly.hpp"

namespace skolem {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

// Element of Q(theta) in power-basis coordinates. A null field means the element is a
// rational constant; such constants combine with elements of any field.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(long v) : c_{Rational(v)} { trim(); }  // NOLINT: implicit by design
  FieldElement(int v) : FieldElement(static_cast<long>(v)) {}
  FieldElement(const Rational& q) : c_{q} {
    c_[0].canonicalize();
    trim();
  }  // NOLINT
  FieldElement(FieldPtr f, std::vector<Rational> coords);

  const FieldPtr& field() const { return f_; }
  const std::vector<Rational>& coords() const { return c_; }
  Rational coord(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  bool is_zero() const { return c_.empty(); }
  bool is_rational() const { return c_.size() <= 1; }
  Rational rational_value() const;

  FieldElement operator-() const;
  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
  FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
  FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }
  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

  FieldElement inverse() const;
  FieldElement conj() const;
  bool is_real() const;
  FieldElement re() const;
  FieldElement im() const;
  CInterval approx(mpfr_prec_t prec) const;
  FieldElement in_field(const FieldPtr& f) const;  // lift a rational constant into f

  std::string str() const;

 private:
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }
  FieldPtr f_;
  std::vector<Rational> c_;
};

inline bool is_zero(const FieldElement& x) { return x.is_zero(); }
inline std::ostream& operator<<(std::ostream& os, const FieldElement& x) { return os << x.str(); }
FieldPtr common_field(const FieldElement& a, const FieldElement& b);

class NumberField : public std::enable_shared_from_this<NumberField> {
 public:
  NumberField(QPoly monic_minpoly, AlgebraicNumber theta);

  int degree() const { return minpoly_.degree(); }
  const QPoly& minpoly() const { return minpoly_; }
  const AlgebraicNumber& theta() const { return theta_; }
  bool is_real() const { return theta_.is_real(); }
  const std::vector<Rational>& conj_theta() const { return conj_; }
  const std::vector<AlgebraicNumber>& generators() const { return gens_; }
  const std::vector<std::vector<Rational>>& generator_coords() const { return gen_coords_; }
  bool has_imaginary_unit() const { return !i_coords_.empty(); }

  FieldElement element(std::vector<Rational> coords) const;
  FieldElement theta_element() const;
  FieldElement imaginary_unit() const;
  FieldElement generator(std::size_t k) const { return element(gen_coords_.at(k)); }

  // Reduce a coordinate vector of any length modulo the minimal polynomial.
  std::vector<Rational> reduce(std::vector<Rational> v) const;
  // Powers theta^0..theta^{d-1} enclosed at the given precision (cached).
  std::vector<CInterval> theta_powers(mpfr_prec_t prec) const;
  // Product of two coordinate vectors, reduced.
  std::vector<Rational> multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) const;
  // Column j holds the coordinates of conj(theta^j).
  const std::vector<std::vector<Rational>>& conj_matrix() const;
  std::vector<Rational> apply_conj(const std::vector<Rational>& v) const;

  // construction internals, set once by make_field
  std::vector<Rational> conj_;
  std::vector<AlgebraicNumber> gens_;
  std::vector<std::vector<Rational>> gen_coords_;
  std::vector<Rational> i_coords_;
  std::vector<Rational> theta_comb_;  // theta = sum theta_comb_[j] * gens_[j]

 private:
  QPoly minpoly_;
  AlgebraicNumber theta_;
  mutable std::mutex mu_;
  mutable std::map<mpfr_prec_t, std::vector<CInterval>> pow_cache_;
  mutable std::once_flag conj_once_;
  mutable std::vector<std::vector<Rational>> conj_mat_;
  mutable std::vector<std::vector<Integer>> conj_int_;
  mutable Integer conj_den_;
  // theta^(d+j) = (1/red_den_) * sum_i red_rows_[j][i] theta^i
  mutable std::once_flag red_once_;
  mutable std::vector<std::vector<Integer>> red_rows_;
  mutable Integer red_den_;
};

struct FieldConfig {
  int degree_cap = 48;
};

struct FieldBuild {
  FieldPtr field;
  std::vector<FieldElement> embeddings;  // one per input generator, in input order
};

// Smallest constructed field containing the generators, their conjugates, and i when
// anything is non-real.
FieldBuild make_field(const std::vector<AlgebraicInput>& generators, const FieldConfig& cfg = {});
FieldBuild make_field_numbers(const std::vector<AlgebraicNumber>& generators, const FieldConfig& cfg = {});
// Extend an existing field by further numbers; old elements are mapped through `lift`.
struct FieldExtension {
  FieldPtr field;
  std::vector<FieldElement> embeddings;  // of the new generators
  std::vector<Rational> old_theta;        // coordinates of the old theta in the new field
};
FieldExtension extend_field(const FieldPtr& base, const std::vector<AlgebraicNumber>& extra,
                            const FieldConfig& cfg = {});
FieldElement lift_element(const FieldElement& x, const FieldExtension& ext);

int sign(const FieldElement& x);
int compare(const FieldElement& a, const FieldElement& b);  // real elements
Box approx_box(const FieldElement& x, const Rational& eps);
// Characteristic polynomial of multiplication by x (degree d over Q).
QPoly charpoly(const FieldElement& x);
// det(xI - A) for a square rational matrix.
QPoly charpoly_matrix(std::vector<std::vector<Rational>> A);
// The element as a standalone algebraic number (its minimal polynomial and isolation).
AlgebraicNumber to_algebraic(const FieldElement& x);

struct QBasis {
  std::vector<FieldElement> basis;
  std::vector<std::vector<Integer>> coords;  // coords[i][j]: input i in terms of basis j
};
QBasis rational_basis(const std::vector<FieldElement>& elems);

using KPoly = UPoly<FieldElement>;
// Monic gcd over the coefficient field (multi-modular, checked by exact division).
KPoly gcd(const KPoly& a, const KPoly& b);

}  // namespace skolem
