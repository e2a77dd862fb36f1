#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skolem/exppoly.hpp"

namespace skolem {

// A decision instance read from JSON. Numbers are exact strings; named algebraic
// constants are declared under "numbers" and used inside expressions such as
// "1/2 + i*r2".
struct Instance {
  std::string name;
  std::string mode;  // exppoly, ode, linear_system
  ExpPoly f;
  std::optional<std::pair<Rational, Rational>> interval;  // empty when "unbounded"
  FieldPtr field;                                         // numbers and i
  std::vector<std::string> names;
  std::vector<FieldElement> values;
};

Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);

// Real algebraic number from a coefficient list (constant first) and an isolating
// interval, as used by the continued-fraction commands.
FieldElement real_number(const std::vector<Rational>& minpoly, const Rational& lo, const Rational& hi);

}  // namespace skolem
