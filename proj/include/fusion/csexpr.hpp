#pragma once

#include <string>

#include "fusion/constraint.hpp"

namespace fusion {

// Textual s-expression form of a constraint with its kappa declarations:
//
//   (fusion-constraints
//     (kvar k0 (x Int) (v Int))
//     (constraint (forall (x Int) <pred> <constraint>)))
//
// Constraints: (forall (x SORT) HYP BODY) | (and C C ...) | (head PRED)
// Predicates:  true | false | n | x | (+ a b) | (- a b) | (- a) | (* a b)
//              | (<= a b) | (< a b) | (>= a b) | (> a b) | (= a b)
//              | (and p ...) | (or p ...) | (not p) | (=> p q)
//              | (exists (x SORT) p) | (f a ...) | ($k x ...)
std::string csexpr_dump(const KVarRegistry& kvars, const ConstraintPtr& c);

struct ParsedConstraints {
  KVarRegistry kvars;
  ConstraintPtr constraint;
};

// Inverse of csexpr_dump; throws std::runtime_error on malformed input.
ParsedConstraints csexpr_parse(const std::string& text);

}  // namespace fusion
