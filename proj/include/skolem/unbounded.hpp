#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skolem/exppoly.hpp"
#include "skolem/semialg.hpp"
#include "skolem/zerofinder.hpp"

namespace skolem {

// f(t) = Q(t, e^{a t}, cos b_1 t, sin b_1 t[, cos b_2 t, sin b_2 t]). Variables of Q are
// ordered [t], u_1..u_m, c_1, s_1[, c_2, s_2].
struct TrigPoly {
  MPoly Q;
  bool has_t = false;
  std::vector<FieldElement> rates;  // a_k with u_k = e^{a_k t}
  std::vector<FieldElement> b;      // positive frequencies
  std::vector<Integer> u_shift;     // Q = f * prod u_k^{u_shift[k]} after clearing denominators

  int base_vars() const { return (has_t ? 1 : 0) + static_cast<int>(rates.size()); }
  int cos_var(int k) const { return base_vars() + 2 * k; }
  int sin_var(int k) const { return base_vars() + 2 * k + 1; }
  std::vector<std::string> names() const;
  // Q at the point (t, e^{a t}, cos, sin); equals f(t) e^{shift . a t}.
  Interval eval(const Rational& t, mpfr_prec_t prec) const;
  Interval scale(const Rational& t, mpfr_prec_t prec) const;  // prod u_k^{u_shift[k]}
};

// Throws DimensionTooHigh for more than two independent frequencies and InvalidInput for
// irrational coefficients. `basis`, when given, fixes b.
TrigPoly rewrite_trig(const ExpPoly& f, const std::optional<std::vector<FieldElement>>& basis = std::nullopt);

struct BakerParams {
  long N = 0;
  Rational T;
};

enum class Boundedness { Bounded, Unbounded, BoundedConditional, Inconclusive };

struct HorizonZero {
  Rational horizon, lo, hi;
};

struct CellReport {
  std::string region;     // "+", "-", "++", "+-", ...
  std::vector<int> type;  // cell type vector
  std::string route;      // eventually_out, eventually_in, case_I, case_II, case_III, inconclusive
  Rational T;
  std::string note;
};

struct UnboundedVerdict {
  Boundedness kind = Boundedness::Inconclusive;
  Rational T;
  std::optional<BakerParams> params;
  bool heuristic_params = false;
  std::string reason;
  std::vector<HorizonZero> evidence;
  std::vector<Rational> missing_horizons;
  std::vector<CellReport> cells;
  std::optional<Verdict> followup;  // decide_bounded on [0, T]
};

struct UnboundedCaps {
  CadOptions cad{16, 48, 80, 0};
  bool heuristic_baker_default = false;  // N = 10, T = 1000, reported as heuristic
  bool evidence = true;
  std::vector<Rational> horizons{Rational(100), Rational(1000), Rational(10000)};
  Rational scan_window = 2000;
  bool followup = false;
  BoundedCaps bounded;
};

UnboundedVerdict decide_one_freq(const ExpPoly& f, const UnboundedCaps& caps = {});
UnboundedVerdict decide_two_freq_simple(const ExpPoly& f, const std::optional<BakerParams>& baker,
                                        const UnboundedCaps& caps = {});
// Dispatch on the dimension of the frequency span; non-simple two-frequency instances and
// higher dimensions come back Inconclusive with the reason stated.
UnboundedVerdict decide_unbounded(const ExpPoly& f, const std::optional<BakerParams>& baker = std::nullopt,
                                  const UnboundedCaps& caps = {});

// A certified zero beyond each horizon, found by scanning and confirmed by decide_bounded.
std::optional<HorizonZero> zero_beyond(const ExpPoly& f, const Rational& H, const Rational& window,
                                       const BoundedCaps& caps = {});

// Least integer t >= floor with 3 e^{-eps t / 3} <= t^{-N}.
Rational baker_crossover(const Rational& eps, long N, const Rational& floor);

std::string boundedness_name(Boundedness b);
std::string unbounded_json(const UnboundedVerdict& v);

}  // namespace skolem
