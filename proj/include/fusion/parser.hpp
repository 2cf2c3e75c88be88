#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fusion/formula.hpp"
#include "fusion/lang.hpp"

namespace fusion {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg), line(line_), col(col_) {}
};

// Parses a source file: data declarations, signatures, definitions.
// A signature without a matching definition becomes an assumption.
Program parse_program(const std::string& text, const std::string& filename);

// A named qualifier: body is a formula over the declared parameters.
// A parameter sort of nullopt is the wildcard `_` (matches any base sort).
struct Qualifier {
  std::string name;
  std::vector<std::pair<std::string, std::optional<Sort>>> params;
  FormulaPtr body;
  int line = 0, col = 0;
};

// Parses a qualifier file: `qualif Name(x:Int, y:_): pred` per line.
std::vector<Qualifier> parse_qualifiers(const std::string& text, const std::string& filename);

// Parses a single refinement formula (tests, --dump tooling).
FormulaPtr parse_formula_string(const std::string& text);

// Parses a single refined type (tests).
RTypePtr parse_rtype_string(const std::string& text);

}  // namespace fusion
