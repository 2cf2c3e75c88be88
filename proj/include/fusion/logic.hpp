#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fusion/formula.hpp"

namespace fusion {

struct SortError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Signature of an uninterpreted (measure) function.
struct FunSig {
  std::vector<Sort> args;
  Sort result = Sort::mk_int();
};

struct SortEnv {
  std::map<std::string, Sort> vars;
  std::map<std::string, FunSig> funs;
};

// Sort of a term; throws SortError for ill-sorted terms and unbound names.
Sort sort_of(const SortEnv& env, const FormulaPtr& t);

// True iff f is a well-sorted boolean formula under env. Multiplication must
// be linear: at least one factor a (possibly negated) integer literal.
bool well_sorted(const SortEnv& env, const FormulaPtr& f);

// Like well_sorted but throws SortError with a reason instead of returning false.
void check_sorted(const SortEnv& env, const FormulaPtr& f);

struct SkolemError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SkolemResult {
  FormulaPtr formula;
  std::vector<std::pair<std::string, Sort>> consts;  // introduced fresh constants
};

// Removes existentials that occur in negative position of a validity goal by
// replacing each binder with a fresh constant (validity of (exists x. p) => q
// equals validity of p[x:=c] => q for fresh c). An existential in positive
// position cannot be discharged this way; it raises SkolemError. `taken`
// seeds and accumulates the names in use.
SkolemResult skolemize(const FormulaPtr& f, std::set<std::string>& taken);

}  // namespace fusion
