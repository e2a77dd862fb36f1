#pragma once

#include <functional>
#include <string>
#include <vector>

#include "skolem/exppoly.hpp"
#include "skolem/field.hpp"

namespace skolem {

struct CFExpansion {
  FieldElement a;
  std::vector<Integer> quotients;     // n_0 (any integer), n_1, n_2, ... (positive)
  std::vector<Rational> convergents;  // p_k / q_k
  bool terminated = false;            // a is rational and the expansion ended
};

// Largest integer n with n <= x, for a real element x; exact.
Integer floor_exact(const FieldElement& x);
// First k partial quotients by exact floor-and-invert.
CFExpansion cf_expand(const FieldElement& a, int k);
// True when the expansion kernel was compiled with float and double poisoned.
bool cf_kernel_float_free();

struct TypeBounds {
  // min of m^2 |a - n/m| over the convergents in the second half of the expansion,
  // the witnessed estimate of the liminf.
  Rational upper;
  Rational upper_all;  // min over every convergent denominator up to q_depth
  long upper_at = 0;   // index of the convergent attaining upper
  Integer K_so_far;    // max partial quotient n_1..n_depth
  int depth = 0;
  bool rational = false;
  std::vector<Rational> witnessed;  // m^2 |a - n/m| per convergent, rounded up
  // 1/(K+2) <= L <= 1/K when the expansion has shown every large quotient
  Rational window_lo, window_hi;
};

TypeBounds type_bounds(const FieldElement& a, int depth);

struct HardnessFamily {
  FieldElement a, c;  // in the field of f1 and f2
  ExpPoly f1, f2;     // f = min(f1, f2)
};

HardnessFamily hardness_family(const FieldElement& a, const FieldElement& c);

struct Thresholds {
  Rational T_forward;
  Integer M_backward;
  Rational T_backward;  // 2 pi M rounded up
  // the three forward components, before taking the maximum
  Rational T_period, T_cosine, T_decay;
};

// c and eps are rational (the loop only needs rational c).
Thresholds thresholds(const FieldElement& a, const Rational& c, const Rational& eps);

enum class OracleAnswer { HasZeroBeyond, NoZeroBeyond, Unknown };
using SkolemOracle = std::function<OracleAnswer(const HardnessFamily&, const Rational& T)>;

// Looks for a certified sign change of f1 or f2 near t = 2 pi m for m from T/2pi up to
// T * growth^rounds / 2pi. Never answers NoZeroBeyond.
SkolemOracle numeric_search_oracle(const Rational& growth = Rational(2), int rounds = 6, long max_candidates = 4000);

struct TypeIteration {
  Rational p, q, c, eps;
  Rational A_lo, A_hi, B_lo, B_hi;
  Rational T;
  long m_checked = 0;
  long witness_m = 0;
  std::string branch;  // small_witness, zero, no_zero, unknown
};

struct TypeApprox {
  Rational p, q;
  std::vector<TypeIteration> trace;
  bool inconclusive = false;
  std::string note;
};

// Refines L(a) in [p, q] assuming the oracle is sound. Stops early when the oracle
// answers Unknown.
TypeApprox approximate_type(const FieldElement& a, const Rational& p, const Rational& q, const SkolemOracle& oracle,
                            int max_iters);

std::string cf_json(const CFExpansion& cf);
std::string type_bounds_json(const TypeBounds& tb);
std::string type_approx_json(const TypeApprox& ta);

}  // namespace skolem
