#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fusion/sort.hpp"

namespace fusion {

// Quantifier-free-plus-exists first-order terms and formulas over linear
// integer arithmetic, booleans, and declared uninterpreted functions. Terms
// and formulas share one immutable node type; sorts keep them apart. Nodes
// are shared freely (shared_ptr), and all algorithms treat them as values.
struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class FKind {
  IntLit,   // int_val
  BoolLit,  // bool_val
  Var,      // name, sort
  Add,      // kids[0] + kids[1]
  Sub,      // kids[0] - kids[1]
  Neg,      // - kids[0]
  Mul,      // kids[0] * kids[1]  (well-sorted only when one side is a literal)
  Cmp,      // kids[0] <op> kids[1]
  Eq,       // kids[0] = kids[1]  (any sort; Bool equality is iff)
  Not,      // not kids[0]
  And,      // kids[0] /\ kids[1]
  Or,       // kids[0] \/ kids[1]
  Implies,  // kids[0] => kids[1]
  App,      // name(kids...)  uninterpreted function application
  Exists,   // exists name:sort. kids[0]
};

enum class CmpOp { Le, Lt, Ge, Gt };

struct Formula {
  FKind kind;
  long long int_val = 0;
  bool bool_val = false;
  CmpOp cmp = CmpOp::Le;
  std::string name;  // Var / App / Exists binder
  Sort sort;         // Var sort, Exists binder sort, App result sort
  std::vector<FormulaPtr> kids;
};

// --- constructors (true/false absorption only; no other simplification) ---

FormulaPtr f_int(long long v);
FormulaPtr f_bool(bool b);
FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_var(std::string name, Sort s);
FormulaPtr f_add(FormulaPtr a, FormulaPtr b);
FormulaPtr f_sub(FormulaPtr a, FormulaPtr b);
FormulaPtr f_neg(FormulaPtr a);
FormulaPtr f_mul(FormulaPtr a, FormulaPtr b);
FormulaPtr f_cmp(CmpOp op, FormulaPtr a, FormulaPtr b);
FormulaPtr f_eq(FormulaPtr a, FormulaPtr b);
FormulaPtr f_not(FormulaPtr a);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr f_app(std::string fn, std::vector<FormulaPtr> args, Sort result);
FormulaPtr f_exists(std::string x, Sort s, FormulaPtr body);

bool is_true(const FormulaPtr& f);
bool is_false(const FormulaPtr& f);

// Structural equality with a pointer fast path.
bool f_equal(const FormulaPtr& a, const FormulaPtr& b);

// Free variables (name -> sort). Exists binds.
void f_free_vars(const FormulaPtr& f, std::map<std::string, Sort>& out);
std::map<std::string, Sort> f_free_vars(const FormulaPtr& f);

// Capture-avoiding variable-to-variable renaming; binders that collide with a
// substitution target are alpha-renamed.
FormulaPtr f_subst(const FormulaPtr& f, const std::map<std::string, std::string>& m);

// Tree-measured atom count (atomic formulas counted with multiplicity),
// computed in O(shared nodes) with memoization; saturates instead of
// overflowing.
std::uint64_t f_atoms(const FormulaPtr& f);

// Concrete syntax (round-trips through the predicate parser).
std::string f_show(const FormulaPtr& f);

// A fresh variable name derived from `base` avoiding everything in `taken`.
std::string fresh_name(const std::string& base, const std::set<std::string>& taken);

}  // namespace fusion
