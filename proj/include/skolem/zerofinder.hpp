#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "skolem/exppoly.hpp"
#include "skolem/interval.hpp"
#include "skolem/laurent.hpp"

namespace skolem {

// Enclosure of a real function at t, computed with working precision prec. Higher
// precision must not give wider enclosures in the limit.
using PointEval = std::function<Interval(const Rational& t, mpfr_prec_t prec)>;
// Upper bound on the Lipschitz constant over [a, b].
using LipschitzBound = std::function<Rational(const Rational& a, const Rational& b)>;

// Piecewise-linear sandwich f_lower <= f <= f_upper on [a, b] with gap delta.
struct Envelope {
  Rational a, b, M, delta;
  long N = 0;
  std::vector<Rational> q;  // q[j] within delta/4 of f(s_j)
  mpfr_prec_t prec = 64;    // largest working precision used

  Rational sample(long j) const { return a + (b - a) * Rational(j) / Rational(N); }
  Rational lower_at(long j) const { return q[static_cast<std::size_t>(j)] - delta / 2; }
  Rational upper_at(long j) const { return q[static_cast<std::size_t>(j)] + delta / 2; }
  Rational lower(const Rational& t) const;
  Rational upper(const Rational& t) const;
};

struct EnvelopeOptions {
  mpfr_prec_t start_prec = 64;
  mpfr_prec_t max_prec = 1 << 16;
  long max_samples = 1 << 18;
};

// Sample count N is the least integer with 1/N < delta / (4 (b - a) M). Throws
// CapExceeded when N or the working precision would exceed the options.
Envelope envelope(const PointEval& f, const Rational& a, const Rational& b, const Rational& M,
                  const Rational& delta, const EnvelopeOptions& opt = {});
Envelope envelope_serial(const PointEval& f, const Rational& a, const Rational& b, const Rational& M,
                         const Rational& delta, const EnvelopeOptions& opt = {});

enum class Outcome { HasZero, NoZero, Undecided };
enum class ZeroKind { Exact, SignChange, Type3Crossing };

struct Detection {
  Outcome outcome = Outcome::Undecided;
  Rational lo, hi;  // bracket of a zero
  ZeroKind kind = ZeroKind::SignChange;
  Rational margin;           // |f| >= margin on the interval; zero when not certified
  bool conditional = false;  // NoZero resting on Schanuel's conjecture
  std::string reason;
  Rational delta;  // last gap tried
  int rounds = 0;
};

struct DetectCaps {
  int max_rounds = 40;
  EnvelopeOptions envelope;
  Rational bracket_width = Rational(1, 10000000);
  mpfr_prec_t refine_prec = 4096;
  bool parallel = true;
  std::function<void(int round, const Envelope&)> trace;
};

// Halve delta from (b - a)/4 until one envelope keeps a uniform sign (NoZero) or
// f_upper < 0 and f_lower > 0 at some samples (HasZero, bracket then refined by bisection).
Detection detect_zero(const PointEval& f, const LipschitzBound& M, const Rational& a, const Rational& b,
                      const DetectCaps& caps = {});

// Real part of f as a point evaluator; evaluators are cached per precision.
PointEval real_part_eval(const ExpPoly& f);
LipschitzBound lipschitz_of(const ExpPoly& f);

struct Type3Reduction {
  ExpPoly g1, g2;
  PointEval h;      // pi + i log(g1/g2) with the cut on the positive real axis, in (-pi, pi]
  PointEval abs_h;  // |h|, continuous through the cut
  Rational g2_lower;
  Rational h_lipschitz;
  std::vector<std::pair<Rational, Rational>> E;  // |h| <= 2 pi/3 on E, |h| >= pi/3 off E
};

// P = Q + z^u conj(Q) over [c, d]. Throws G2LowerBoundFailed when |g2|^2 cannot be
// separated from zero within the caps.
Type3Reduction type3_reduce(const LaurentPoly& P, const std::vector<long>& u, const LaurentPoly& Q,
                            const SpectralBasis& basis, const Rational& c, const Rational& d,
                            const DetectCaps& caps = {});

struct BoundedCaps {
  DetectCaps detect;
  LaurentConfig laurent;
  FieldConfig field;
  int g2_rounds = 30;
};

struct FactorTrace {
  std::string factor;
  int multiplicity = 1;
  std::string type;  // "type1", "type2", "type3"
  Detection result;
};

struct Verdict {
  Detection overall;
  std::string unit;
  std::vector<FactorTrace> factors;
};

Verdict decide_bounded(const ExpPoly& f, const Rational& c, const Rational& d, const BoundedCaps& caps = {});

std::string outcome_name(Outcome o);
std::string kind_name(ZeroKind k);
std::string verdict_json(const Verdict& v);

}  // namespace skolem
