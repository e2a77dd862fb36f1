#include "skolem/instance.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "skolem/mpoly.hpp"

namespace skolem {

namespace {

using nlohmann::json;

std::string where_in(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

// Error inside the string value s: locate its first occurrence as a JSON literal.
ParseError located(const std::string& text, const std::string& s, const ParseError& e) {
  std::size_t at = text.find(json(s).dump());
  if (at == std::string::npos) return e;
  std::size_t offset = 0;
  std::smatch m;
  std::string msg = e.what();
  if (std::regex_search(msg, m, std::regex("at offset ([0-9]+)"))) offset = std::stoul(m[1].str());
  return ParseError(where_in(text, at + 1 + offset) + ": " + msg);
}

std::string str_of(const json& j, const std::string& what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw ParseError(what + ": expected an exact string");
}

Rational rat_of(const json& j, const std::string& what) { return parse_rational(str_of(j, what)); }

std::vector<Rational> rats_of(const json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + ": expected an array");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rat_of(x, what));
  return out;
}

struct Scope {
  const std::string* text = nullptr;
  FieldPtr K;
  std::vector<std::string> names;
  std::vector<FieldElement> values;

  FieldElement eval(const json& j, const std::string& what) const {
    std::string s = str_of(j, what);
    try {
      return parse_mpoly(s, names).eval(values);
    } catch (const ParseError& e) {
      throw located(*text, s, e);
    }
  }
  Coeffs evals(const json& j, const std::string& what) const {
    Coeffs out;
    if (j.is_array()) {
      for (const auto& x : j) out.push_back(eval(x, what));
    } else {
      out.push_back(eval(j, what));
    }
    return out;
  }
};

Scope make_scope(const json& doc) {
  std::vector<AlgebraicInput> gens;
  Scope sc;
  if (doc.contains("numbers")) {
    const json& nums = doc.at("numbers");
    if (!nums.is_object()) throw ParseError("numbers: expected an object");
    for (const auto& [name, spec] : nums.items()) {
      if (name == "i" || name == "t") throw ParseError("numbers: the name '" + name + "' is reserved");
      std::vector<Rational> mp = rats_of(spec.at("minpoly"), "numbers." + name + ".minpoly");
      std::vector<Rational> box = rats_of(spec.at("box"), "numbers." + name + ".box");
      if (box.size() == 2) box.insert(box.end(), {Rational(0), Rational(0)});
      if (box.size() != 4) throw ParseError("numbers." + name + ".box: expected [lo, hi] or [re_lo, re_hi, im_lo, im_hi]");
      QPoly q(mp);
      gens.push_back({q, {box[0], box[1], box[2], box[3]}});
      sc.names.push_back(name);
    }
  }
  gens.push_back({qpoly({1, 0, 1}), {Rational(-1, 2), Rational(1, 2), Rational(1, 2), Rational(3, 2)}});
  sc.names.push_back("i");
  FieldBuild fb = make_field(gens);
  sc.K = fb.field;
  sc.values = fb.embeddings;
  return sc;
}

ExpPoly exppoly_from_terms(const json& terms, const Scope& sc) {
  if (!terms.is_array()) throw ParseError("terms: expected an array");
  ExpPoly f = ExpPoly::constant(sc.K, FieldElement(0));
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const json& t = terms[k];
    const std::string what = "terms[" + std::to_string(k) + "]";
    if (t.contains("lambda")) {
      FieldElement lambda = sc.eval(t.at("lambda"), what + ".lambda");
      f = f + exp_term(sc.K, lambda, sc.evals(t.at("poly"), what + ".poly"));
      continue;
    }
    // trig sugar: poly(t) e^{rate t} cos(freq t) or sin(freq t)
    bool is_cos = t.contains("cos"), is_sin = t.contains("sin");
    if (is_cos == is_sin) throw ParseError(what + ": expected one of lambda, cos, sin");
    FieldElement w = sc.eval(t.at(is_cos ? "cos" : "sin"), what + (is_cos ? ".cos" : ".sin"));
    FieldElement rate = t.contains("rate") ? sc.eval(t.at("rate"), what + ".rate") : FieldElement(0);
    Coeffs poly = t.contains("poly") ? sc.evals(t.at("poly"), what + ".poly") : Coeffs{FieldElement(1)};
    ExpPoly osc = is_cos ? cos_term(sc.K, w) : sin_term(sc.K, w);
    f = f + exp_term(sc.K, rate, poly) * osc;
  }
  return f;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("instance is not valid JSON at " + where_in(text, e.byte == 0 ? 0 : e.byte - 1) + ": " +
                     e.what());
  }
  Instance in;
  try {
    if (!doc.is_object()) throw ParseError("instance: expected an object");
    in.mode = doc.at("mode").get<std::string>();
    in.name = doc.value("name", "");
    Scope sc = make_scope(doc);
    sc.text = &text;
    in.field = sc.K;
    in.names = sc.names;
    in.values = sc.values;
    if (in.mode == "exppoly") {
      in.f = exppoly_from_terms(doc.at("terms"), sc);
    } else if (in.mode == "ode") {
      OdeInstance ode;
      for (const auto& c : doc.at("coeffs")) ode.coeffs.push_back(to_algebraic(sc.eval(c, "coeffs")));
      for (const auto& c : doc.at("init")) ode.init.push_back(to_algebraic(sc.eval(c, "init")));
      in.f = from_ode(ode);
    } else if (in.mode == "linear_system") {
      QMatrix A;
      for (const auto& row : doc.at("A")) A.push_back(rats_of(row, "A"));
      in.f = from_ode(from_linear_system(A, rats_of(doc.at("x0"), "x0"), rats_of(doc.at("u"), "u")));
    } else {
      throw ParseError("mode: expected exppoly, ode or linear_system, got '" + in.mode + "'");
    }
    if (doc.contains("interval")) {
      const json& iv = doc.at("interval");
      if (iv.is_string() && iv.get<std::string>() == "unbounded") {
        in.interval.reset();
      } else {
        std::vector<Rational> cd = rats_of(iv, "interval");
        if (cd.size() != 2 || cd[0] > cd[1]) throw ParseError("interval: expected [c, d] with c <= d");
        in.interval = std::make_pair(cd[0], cd[1]);
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
  return in;
}

Instance load_instance(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot read instance file " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_instance(ss.str());
}

FieldElement real_number(const std::vector<Rational>& minpoly, const Rational& lo, const Rational& hi) {
  QPoly q(minpoly);
  if (q.degree() == 1) return FieldElement(-minpoly[0] / minpoly[1]);
  return make_field({{q, {lo, hi, Rational(0), Rational(0)}}}).embeddings[0];
}

}  // namespace skolem
