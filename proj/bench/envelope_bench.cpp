#include <benchmark/benchmark.h>

#include "skolem/zerofinder.hpp"

using namespace skolem;

namespace {

struct Setup {
  ExpPoly f;
  PointEval ev;
  Rational M;
};

const Setup& setup() {
  static Setup s = [] {
    FieldPtr K =
        make_field({{qpoly({1, 0, 1}), {Rational(-1, 2), Rational(1, 2), Rational(1, 2), Rational(3, 2)}}}).field;
    ExpPoly f = sin_term(K, FieldElement(1)) + cos_term(K, FieldElement(3)) * exp_term(K, FieldElement(1), {FieldElement(1)}) +
                ExpPoly::constant(K, FieldElement(Rational(1, 3)));
    return Setup{f, real_part_eval(f), lipschitz_bound(f, Rational(0), Rational(2))};
  }();
  return s;
}

Rational delta_for(long shift) { return pow2_q(-shift); }

void BM_EnvelopeSerial(benchmark::State& state) {
  const Setup& s = setup();
  Rational delta = delta_for(state.range(0));
  long n = 0;
  for (auto _ : state) {
    Envelope e = envelope_serial(s.ev, Rational(0), Rational(2), s.M, delta);
    n = e.N;
    benchmark::DoNotOptimize(e);
  }
  state.counters["samples"] = static_cast<double>(n);
}

void BM_EnvelopeParallel(benchmark::State& state) {
  const Setup& s = setup();
  Rational delta = delta_for(state.range(0));
  long n = 0;
  for (auto _ : state) {
    Envelope e = envelope(s.ev, Rational(0), Rational(2), s.M, delta);
    n = e.N;
    benchmark::DoNotOptimize(e);
  }
  state.counters["samples"] = static_cast<double>(n);
}

}  // namespace

BENCHMARK(BM_EnvelopeSerial)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnvelopeParallel)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
