#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fusion/logic.hpp"
#include "fusion/pred.hpp"

namespace fusion {

// Constraints in negation normal form: conjunctions of universally quantified
// implications over predicates. `Forall` is the guarded form
//   forall x : sort. hyp => body
// and a `Leaf` is a goal predicate to be established.
struct Constraint;
using ConstraintPtr = std::shared_ptr<const Constraint>;

enum class CKind { Leaf, Conj, Forall };

// Where a proof obligation came from, for diagnostics.
struct Provenance {
  std::string origin;  // e.g. "result of call to inc"
  int line = 0;
  int col = 0;
};

struct Constraint {
  CKind kind;
  PredPtr pred;        // Leaf
  ConstraintPtr l, r;  // Conj
  std::string bind;    // Forall
  Sort sort;           // Forall
  PredPtr hyp;         // Forall
  ConstraintPtr body;  // Forall
  std::optional<Provenance> prov;  // Leaf
};

// Folding builders (used by constraint generation): trivial goals vanish,
// conjunction goals split into separate leaves, false hypotheses and trivial
// bodies collapse the implication.
ConstraintPtr c_trivial();
ConstraintPtr c_leaf(PredPtr goal, std::optional<Provenance> prov = std::nullopt);
ConstraintPtr c_conj(ConstraintPtr a, ConstraintPtr b);
ConstraintPtr c_forall(std::string x, Sort s, PredPtr hyp, ConstraintPtr body);

// Raw builders (used by elimination, which must not restructure the tree).
ConstraintPtr c_leaf_raw(PredPtr goal, std::optional<Provenance> prov = std::nullopt);
ConstraintPtr c_conj_raw(ConstraintPtr a, ConstraintPtr b);
ConstraintPtr c_forall_raw(std::string x, Sort s, PredPtr hyp, ConstraintPtr body);

bool c_is_trivial(const ConstraintPtr& c);
bool c_equal(const ConstraintPtr& a, const ConstraintPtr& b);

// All kappa variables occurring anywhere in c.
std::set<std::string> c_kvars(const ConstraintPtr& c);

// Measured size: number of atomic formulas, counting shared subtrees once per
// occurrence (tree measure) but traversing the shared representation only
// once. Saturates at UINT64_MAX.
std::uint64_t c_atoms(const ConstraintPtr& c);

std::string c_show(const ConstraintPtr& c);

// --- flattening ---------------------------------------------------------------

struct FlatBinder {
  std::string name;
  Sort sort;
  PredPtr hyp;
};

struct FlatClause {
  std::vector<FlatBinder> binders;
  PredPtr goal;
  std::optional<Provenance> prov;
};

// Clause forms of c, in left-to-right order. Trivial goals yield no clause;
// a conjunction goal yields one clause per conjunct.
std::vector<FlatClause> flatten(const ConstraintPtr& c);

// kappas in hypothesis positions / in the goal of a flat clause.
std::set<std::string> clause_hyp_kvars(const FlatClause& cl);
std::set<std::string> clause_goal_kvars(const FlatClause& cl);

// --- assignments ---------------------------------------------------------------

// A solution body: params name the kappa's formal parameters.
struct SolBody {
  std::vector<std::string> params;
  PredPtr body;
};

using Assignment = std::map<std::string, SolBody>;

// Applies sigma to every kappa application (both hypothesis and goal
// occurrences) in p / c. Applications of kappas outside dom(sigma) remain.
PredPtr p_apply(const Assignment& sigma, const PredPtr& p);
ConstraintPtr c_apply(const Assignment& sigma, const ConstraintPtr& c);

// sigma2 after sigma1: applies sigma2 to the bodies of sigma1 and merges in
// the bindings of sigma2 for kappas not in dom(sigma1).
Assignment compose(const Assignment& sigma2, const Assignment& sigma1);

// Replaces every kappa application in c with true.
ConstraintPtr c_kapps_to_true(const ConstraintPtr& c);

// --- well-formedness -----------------------------------------------------------

// Checks that c is well-formed: binders are not shadowed along any path, all
// predicates are well-sorted in scope, and every kappa application matches
// its registry signature (arity and argument sorts). Throws SortError.
void c_wf(const ConstraintPtr& c, const KVarRegistry& kvars, const SortEnv& globals);

}  // namespace fusion
