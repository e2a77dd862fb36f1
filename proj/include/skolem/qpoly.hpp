#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "skolem/interval.hpp"
#include "skolem/upoly.hpp"

namespace skolem {

using QPoly = UPoly<Rational>;
using ZVec = std::vector<Integer>;

QPoly qpoly(std::initializer_list<long> coeffs);
ZVec primitive_integer(const QPoly& p);  // positive leading coefficient
QPoly from_integer(const ZVec& z);
QPoly primitive_part(const QPoly& p);  // primitive integer polynomial as a QPoly

// Modular algorithms for rational polynomials; these take precedence over the generic
// Euclidean versions in upoly.hpp.
QPoly gcd(const QPoly& a, const QPoly& b);
Rational resultant(const QPoly& a, const QPoly& b);
// Inverse of a modulo m (a and m coprime).
// Inverse of a modulo m. `accept`, when given, replaces the exact product check on the
// reconstructed candidate.
QPoly invert_mod(const QPoly& a, const QPoly& m, const std::function<bool(const QPoly&)>& accept = {});

Interval eval(const QPoly& p, const Interval& x);
CInterval eval(const QPoly& p, const CInterval& x);
int sign_at(const QPoly& p, const Rational& x);

// 2^k with every root of p of modulus below it.
Rational root_bound(const QPoly& p);
// log2 lower bound for the minimal distance between distinct roots of a square-free
// integer polynomial (Mahler).
long log2_root_separation(const QPoly& p);

// Isolating interval of a real root: either lo == hi (exact rational root) or the open
// interval (lo, hi) holds exactly one root and p(lo), p(hi) are nonzero of opposite sign.
struct RealRootInterval {
  Rational lo, hi;
  bool exact() const { return lo == hi; }
};

std::vector<RealRootInterval> isolate_real_roots(const QPoly& p);
// Real roots in the closed interval [a, b], exactly.
std::vector<RealRootInterval> real_roots_in(const QPoly& p, const Rational& a, const Rational& b);
void refine_real_root(const QPoly& sqfree, RealRootInterval& r, const Rational& width);

// Certified complex root enclosure: the closed disc holds exactly one root of the input.
struct RootDisc {
  Rational re, im, rad;
  bool real = false;
};

// Pairwise-disjoint discs, one per root of a square-free polynomial.
std::vector<RootDisc> isolate_complex_roots(const QPoly& sqfree, mpfr_prec_t start_prec = 128);

// Factorization over Q: p = content * prod f_i^{m_i}, each f_i primitive integer,
// irreducible, with positive leading coefficient.
struct QFactorization {
  Rational content;
  std::vector<std::pair<QPoly, int>> factors;
};
QFactorization factor(const QPoly& p);
// Irreducible factors of a square-free primitive integer polynomial.
std::vector<QPoly> factor_squarefree_integer(const QPoly& p);

std::vector<QPoly> sturm_sequence(const QPoly& p);
int sturm_count(const std::vector<QPoly>& seq, const Rational& a, const Rational& b);  // roots in (a, b]

}  // namespace skolem
