#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "skolem/hardness.hpp"
#include "skolem/instance.hpp"
#include "skolem/laurent.hpp"
#include "skolem/unbounded.hpp"
#include "skolem/zerofinder.hpp"

using namespace skolem;
using nlohmann::json;

namespace {

constexpr int kDecisive = 0;
constexpr int kInputError = 1;
constexpr int kUndecided = 2;

struct Options {
  std::string instance;
  std::vector<std::string> interval;
  int precision_rounds = 40;
  std::string horizon;
  std::vector<std::string> baker;
  bool heuristic_baker = false;
  bool followup = false;
  std::string trace;
  bool json = false;
  std::vector<std::string> minpoly;
  std::vector<std::string> box;
  int depth = 20;
  std::string p = "0", q = "1";
  int iters = 10;
};

void emit(const Options& o, const json& j, const std::string& summary) {
  if (o.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << summary << "\n";
}

std::pair<Rational, Rational> interval_of(const Options& o, const Instance& in) {
  if (!o.interval.empty()) return {parse_rational(o.interval.at(0)), parse_rational(o.interval.at(1))};
  if (!in.interval) throw InvalidInput("instance is unbounded; pass --interval c d or use decide-unbounded");
  return *in.interval;
}

FieldElement number_of(const Options& o) {
  if (o.minpoly.empty()) throw InvalidInput("--minpoly is required");
  std::vector<Rational> mp;
  for (const auto& s : o.minpoly) mp.push_back(parse_rational(s));
  Rational lo = 0, hi = 0;
  if (o.box.size() == 2) {
    lo = parse_rational(o.box[0]);
    hi = parse_rational(o.box[1]);
  } else if (QPoly(mp).degree() > 1) {
    throw InvalidInput("--box lo hi is required for irrational numbers");
  }
  return real_number(mp, lo, hi);
}

int decide_bounded_cmd(const Options& o) {
  Instance in = load_instance(o.instance);
  auto [c, d] = interval_of(o, in);
  BoundedCaps caps;
  caps.detect.max_rounds = o.precision_rounds;
  std::ofstream trace;
  if (!o.trace.empty()) {
    trace.open(o.trace);
    if (!trace) throw InvalidInput("cannot write trace file " + o.trace);
    trace << "round,t,lower,upper\n";
    caps.detect.parallel = false;
    caps.detect.trace = [&trace](int round, const Envelope& e) {
      for (long j = 0; j <= e.N; ++j)
        trace << round << "," << to_double(e.sample(j)) << "," << to_double(e.lower_at(j)) << ","
              << to_double(e.upper_at(j)) << "\n";
    };
  }
  Verdict v = decide_bounded(in.f, c, d, caps);
  json j = json::parse(verdict_json(v));
  j["interval"] = {to_string(c), to_string(d)};
  std::string summary = outcome_name(v.overall.outcome);
  if (v.overall.outcome == Outcome::HasZero)
    summary += " in [" + std::to_string(to_double(v.overall.lo)) + ", " + std::to_string(to_double(v.overall.hi)) + "]";
  if (v.overall.conditional) summary += " (conditional on Schanuel's conjecture)";
  emit(o, j, summary);
  return v.overall.outcome == Outcome::Undecided ? kUndecided : kDecisive;
}

int decide_unbounded_cmd(const Options& o) {
  Instance in = load_instance(o.instance);
  UnboundedCaps caps;
  caps.heuristic_baker_default = o.heuristic_baker;
  caps.followup = o.followup;
  caps.bounded.detect.max_rounds = o.precision_rounds;
  if (!o.horizon.empty()) caps.horizons = {parse_rational(o.horizon)};
  std::optional<BakerParams> baker;
  if (!o.baker.empty()) baker = BakerParams{std::stol(o.baker.at(0)), parse_rational(o.baker.at(1))};
  UnboundedVerdict v = decide_unbounded(in.f, baker, caps);
  json j = json::parse(unbounded_json(v));
  std::string summary = boundedness_name(v.kind);
  if (v.kind == Boundedness::Bounded || v.kind == Boundedness::BoundedConditional)
    summary += ": no zeros beyond t = " + to_string(v.T);
  summary += " (" + v.reason + ")";
  emit(o, j, summary);
  return v.kind == Boundedness::Inconclusive ? kUndecided : kDecisive;
}

std::string type_name(PolyType t) {
  switch (t) {
    case PolyType::Type1: return "type1";
    case PolyType::Type2: return "type2";
    case PolyType::Type3: return "type3";
  }
  return "?";
}

int factor_cmd(const Options& o) {
  Instance in = load_instance(o.instance);
  LaurentForm lf = to_laurent(in.f);
  LaurentFactorization fz = factor(lf.P);
  json j;
  j["polynomial"] = lf.P.str();
  j["unit"] = {{"coeff", fz.unit_coeff.str()}, {"exponent", fz.unit_exp}};
  j["factors"] = json::array();
  LaurentPoly unit = LaurentPoly::monomial(lf.P.field(), lf.P.r(), lf.P.s(), fz.unit_exp, fz.unit_coeff);
  j["unit"]["monomial"] = unit.str();
  std::string summary = "unit " + unit.str();
  for (const auto& [p, mult] : fz.factors) {
    TypeTag tag = classify(p);
    json f{{"factor", p.str()}, {"multiplicity", mult}, {"type", type_name(tag.kind)}};
    if (tag.kind == PolyType::Type3) f["u"] = tag.u;
    j["factors"].push_back(f);
    summary += "\n(" + p.str() + ")^" + std::to_string(mult) + "  " + type_name(tag.kind);
  }
  j["reassembles"] = fz.reassemble(lf.P.field(), lf.P.r(), lf.P.s()) == lf.P;
  emit(o, j, summary);
  return kDecisive;
}

int cf_cmd(const Options& o) {
  CFExpansion cf = cf_expand(number_of(o), o.depth);
  std::string summary = "[";
  for (std::size_t k = 0; k < cf.quotients.size(); ++k)
    summary += (k == 0 ? "" : k == 1 ? "; " : ", ") + cf.quotients[k].get_str();
  summary += cf.terminated ? "] (terminated)" : ", ...]";
  emit(o, json::parse(cf_json(cf)), summary);
  return kDecisive;
}

int type_bounds_cmd(const Options& o) {
  TypeBounds tb = type_bounds(number_of(o), o.depth);
  std::string summary = tb.rational ? "rational: L = 0"
                                    : "upper " + std::to_string(to_double(tb.upper)) + ", K so far " +
                                          tb.K_so_far.get_str();
  emit(o, json::parse(type_bounds_json(tb)), summary);
  return kDecisive;
}

int approx_type_cmd(const Options& o) {
  TypeApprox ta =
      approximate_type(number_of(o), parse_rational(o.p), parse_rational(o.q), numeric_search_oracle(), o.iters);
  std::string summary = "L in [" + std::to_string(to_double(ta.p)) + ", " + std::to_string(to_double(ta.q)) + "]";
  if (ta.inconclusive) summary += " (" + ta.note + ")";
  emit(o, json::parse(type_approx_json(ta)), summary);
  return ta.inconclusive ? kUndecided : kDecisive;
}

int eval_trace_cmd(const Options& o) {
  Instance in = load_instance(o.instance);
  auto [c, d] = interval_of(o, in);
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!o.trace.empty()) {
    file.open(o.trace);
    if (!file) throw InvalidInput("cannot write trace file " + o.trace);
    out = &file;
  }
  *out << "round,t,lower,upper\n";
  DetectCaps caps;
  caps.max_rounds = o.precision_rounds;
  caps.parallel = false;
  caps.trace = [out](int round, const Envelope& e) {
    for (long j = 0; j <= e.N; ++j)
      *out << round << "," << to_double(e.sample(j)) << "," << to_double(e.lower_at(j)) << ","
           << to_double(e.upper_at(j)) << "\n";
  };
  Detection det = detect_zero(real_part_eval(in.f), lipschitz_of(in.f), c, d, caps);
  if (!o.trace.empty()) std::cout << outcome_name(det.outcome) << " after " << det.rounds << " rounds\n";
  return det.outcome == Outcome::Undecided ? kUndecided : kDecisive;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous Skolem problem: bounded and unbounded zero decisions"};
  app.require_subcommand(1);
  Options o;

  auto add_instance = [&](CLI::App* sub) { sub->add_option("--instance", o.instance, "instance JSON file")->required(); };
  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", o.json, "print the full JSON report"); };
  auto add_number = [&](CLI::App* sub) {
    sub->add_option("--minpoly", o.minpoly, "coefficients, constant term first")->required();
    sub->add_option("--box", o.box, "isolating interval lo hi")->expected(2);
  };

  auto* bounded = app.add_subcommand("decide-bounded", "zero of f on a compact interval");
  add_instance(bounded);
  bounded->add_option("--interval", o.interval, "c d")->expected(2);
  bounded->add_option("--precision-rounds", o.precision_rounds, "envelope refinement rounds");
  bounded->add_option("--trace", o.trace, "CSV of envelope rounds");
  add_json(bounded);

  auto* unbounded = app.add_subcommand("decide-unbounded", "zero of f on [0, infinity)");
  add_instance(unbounded);
  unbounded->add_option("--horizon", o.horizon, "single horizon for zero evidence");
  unbounded->add_option("--baker", o.baker, "N T")->expected(2);
  unbounded->add_flag("--heuristic-baker", o.heuristic_baker, "use N = 10, T = 1000 when --baker is absent");
  unbounded->add_flag("--followup", o.followup, "decide the bounded problem on [0, T]");
  unbounded->add_option("--precision-rounds", o.precision_rounds, "envelope refinement rounds");
  add_json(unbounded);

  auto* fac = app.add_subcommand("factor", "Laurent factorization with factor types");
  add_instance(fac);
  add_json(fac);

  auto* cf = app.add_subcommand("cf", "continued fraction of a real algebraic number");
  add_number(cf);
  cf->add_option("--depth,-k", o.depth, "number of partial quotients");
  add_json(cf);

  auto* tb = app.add_subcommand("type-bounds", "witnessed bounds on the approximation type");
  add_number(tb);
  tb->add_option("--depth,-k", o.depth, "convergents scanned");
  add_json(tb);

  auto* at = app.add_subcommand("approx-type", "refine the approximation type with the oracle loop");
  add_number(at);
  at->add_option("--p", o.p, "lower end");
  at->add_option("--q", o.q, "upper end");
  at->add_option("--iters", o.iters, "iterations");
  add_json(at);

  auto* tr = app.add_subcommand("eval-trace", "CSV of envelope rounds");
  add_instance(tr);
  tr->add_option("--interval", o.interval, "c d")->expected(2);
  tr->add_option("--precision-rounds", o.precision_rounds, "envelope refinement rounds");
  tr->add_option("--trace", o.trace, "output file (standard output when absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  try {
    if (*bounded) return decide_bounded_cmd(o);
    if (*unbounded) return decide_unbounded_cmd(o);
    if (*fac) return factor_cmd(o);
    if (*cf) return cf_cmd(o);
    if (*tb) return type_bounds_cmd(o);
    if (*at) return approx_type_cmd(o);
    if (*tr) return eval_trace_cmd(o);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const InvalidInput& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const NotRealElement& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const NonIsolatedRoot& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const SkolemError& e) {
    std::cerr << "undecided: " << e.what() << "\n";
    return kUndecided;
  }
  return kInputError;
}
