#pragma once

#include <functional>
#include <string>
#include <vector>

#include "skolem/field.hpp"
#include "skolem/mpoly.hpp"

namespace skolem {

// Boolean combination of atoms p > 0 and p = 0 over rational polynomials.
class SemiAlgSet {
 public:
  enum class Kind { True, False, Gt, Eq, Not, And, Or };

  static SemiAlgSet always() { return SemiAlgSet(Kind::True); }
  static SemiAlgSet never() { return SemiAlgSet(Kind::False); }
  static SemiAlgSet gt(const MPoly& p);
  static SemiAlgSet eq(const MPoly& p);
  static SemiAlgSet ge(const MPoly& p) { return gt(p) || eq(p); }
  static SemiAlgSet lt(const MPoly& p) { return gt(-p); }
  static SemiAlgSet le(const MPoly& p) { return gt(-p) || eq(p); }
  static SemiAlgSet all_of(std::vector<SemiAlgSet> parts);
  static SemiAlgSet any_of(std::vector<SemiAlgSet> parts);

  friend SemiAlgSet operator&&(const SemiAlgSet& a, const SemiAlgSet& b) { return all_of({a, b}); }
  friend SemiAlgSet operator||(const SemiAlgSet& a, const SemiAlgSet& b) { return any_of({a, b}); }
  friend SemiAlgSet operator!(const SemiAlgSet& a);

  Kind kind() const { return kind_; }
  const MPoly& poly() const { return poly_; }
  const std::vector<SemiAlgSet>& parts() const { return parts_; }

  // Evaluate with the sign of each atom polynomial supplied by the caller.
  bool eval(const std::function<int(const MPoly&)>& sign) const;
  bool contains(const std::vector<Rational>& x) const;
  std::vector<MPoly> polys() const;  // distinct atom polynomials
  int nvars() const;                 // -1 when the tree has no atoms
  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  explicit SemiAlgSet(Kind k) : kind_(k) {}
  void collect(std::vector<MPoly>& out) const;
  Kind kind_;
  MPoly poly_;
  std::vector<SemiAlgSet> parts_;
};

struct ExpBlock {
  QPoly Q;
  FieldElement beta;
};

// sum_i Q_i(s) e^{beta_i t} with beta_1 > beta_2 > ... and every Q_i nonzero.
struct ExpSum {
  std::vector<ExpBlock> terms;
  bool is_zero() const { return terms.empty(); }
  int eventual_sign() const;  // sign of the leading coefficient of Q_1 (0 for the zero sum)
  Interval eval(const Rational& s, const Rational& t, mpfr_prec_t prec) const;
};

// Substitute u_k = e^{r_k t} into P, where u_1..u_n are the variables of P other than
// poly_var in their natural order (poly_var = -1 when there is none).
ExpSum exp_sum_rewrite(const MPoly& P, int poly_var, const std::vector<FieldElement>& r);

// T such that for all t > T the sum has the sign of its leading term, where the
// polynomial variable of the blocks is t itself.
Rational domination_threshold(const ExpSum& s);

struct EventualAtom {
  MPoly poly;
  int sign = 0;
  Rational T;
};

struct Eventuality {
  bool in = false;
  Rational T;  // membership is constant on (T, infinity)
  std::vector<EventualAtom> atoms;
};

// Membership of (t, e^{r t}) in D for large t. D has variables (t, u_1..u_n) when has_t
// and (u_1..u_n) otherwise.
Eventuality eventual_membership(const SemiAlgSet& D, bool has_t, const std::vector<FieldElement>& r);

// Approximate value of g(e^{r t}) used only to pick among the roots of Q_1.
using BranchValue = std::function<Rational(const Rational& t)>;

struct LimitResult {
  AlgebraicNumber value;
  Rational eps;  // |g(e^{r t}) - value| < e^{-eps t} for t > T2
  Rational T2;
  ExpSum blocks;
};

// A has variables (u_1..u_n, y) and vanishes at (e^{r t}, g(e^{r t})) for t > T0, with
// |g| <= bound there. Throws UnboundedFunction or AmbiguousBranch.
LimitResult limit_semialg(const MPoly& A, const std::vector<FieldElement>& r, const Rational& T0,
                          const BranchValue& branch, const Rational& bound = Rational(1));

struct CadOptions {
  int degree_cap = 8;
  int projected_degree_cap = 48;
  int max_polys_per_level = 80;
  // Levels 0..thom_levels-1 are closed under differentiation in their main variable,
  // so each cell over them is exactly a realizable sign condition.
  int thom_levels = 0;
};

// The index-th real root (in increasing order) of levels[k][poly] over the parent cell.
struct RootRef {
  int poly = -1;  // -1 for an infinite end
  int index = -1;
};

struct Cell {
  std::vector<int> type;  // 0 for a section coordinate, 1 for a sector coordinate
  int parent = -1;        // index in the previous level
  std::vector<int> children;
  RootRef lower, upper;   // equal for sections
  FieldPtr field;
  std::vector<FieldElement> sample;
  std::vector<double> sample_approx;

  int level() const { return static_cast<int>(type.size()) - 1; }
  bool section() const { return type.back() == 0; }
};

struct CellDecomposition {
  int nvars = 0;
  std::vector<MPoly> inputs;
  std::vector<std::vector<MPoly>> levels;  // levels[k]: factors with main variable k
  std::vector<std::vector<Cell>> cells;    // cells[k]: cylindrical cells of R^{k+1}

  const std::vector<Cell>& leaves() const { return cells.back(); }
  // Exact sign of p at the sample of cells[level][idx]; p may only use x_0..x_level.
  int sign(const MPoly& p, int level, int idx) const;
  // Leaf containing the rational point.
  int locate(const std::vector<Rational>& x) const;
  // Membership decided from the cell's defining root functions alone.
  bool contains(int level, int idx, const std::vector<Rational>& x) const;
  // Sign conditions of every polynomial of levels 0..level at the cell, as a set in
  // x_0..x_level. It equals the cell when those levels are derivative closed.
  SemiAlgSet sign_condition(int level, int idx) const;
  std::string json() const;
};

// Throws CapExceeded when an input or a projection factor is over the degree caps.
CellDecomposition cad(const std::vector<MPoly>& polys, int nvars, const CadOptions& opt = {});

}  // namespace skolem
