#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fusion/formula.hpp"

namespace fusion {

// Refinement predicates: concrete formulas, kappa-variable applications, and
// their conjunctions. Solver-produced solutions additionally use disjunction
// and existentials over predicates (a strongest solution may mention other,
// not-yet-eliminated kappas under an exists); user-written refinements never
// contain kappa applications.
struct Pred;
using PredPtr = std::shared_ptr<const Pred>;

enum class PKind { Conc, KApp, And, Or, Exists };

struct Pred {
  PKind kind;
  FormulaPtr conc;                // Conc
  std::string kvar;               // KApp
  std::vector<std::string> args;  // KApp (argument variables)
  PredPtr l, r;                   // And / Or
  std::string bind_name;          // Exists
  Sort bind_sort;                 // Exists
  PredPtr body;                   // Exists
};

PredPtr p_conc(FormulaPtr f);
PredPtr p_true();
PredPtr p_false();
PredPtr p_kapp(std::string kvar, std::vector<std::string> args);
PredPtr p_and(PredPtr a, PredPtr b);
PredPtr p_or(PredPtr a, PredPtr b);
PredPtr p_exists(std::string x, Sort s, PredPtr body);

bool p_is_true(const PredPtr& p);
bool p_is_false(const PredPtr& p);
bool p_equal(const PredPtr& a, const PredPtr& b);

// kappa variables occurring in p.
void p_kvars(const PredPtr& p, std::set<std::string>& out);
std::set<std::string> p_kvars(const PredPtr& p);
bool p_has_kvars(const PredPtr& p);

// Free term variables (kapp arguments included).
void p_free_vars(const PredPtr& p, std::map<std::string, Sort>& out);

// Capture-avoiding variable-to-variable renaming.
PredPtr p_subst(const PredPtr& p, const std::map<std::string, std::string>& m);

// Lowers a kappa-free predicate to a formula; throws std::logic_error on a
// kappa application.
FormulaPtr p_to_formula(const PredPtr& p);

// Replaces every kappa application with `true` (generation-invariant checks).
PredPtr p_kapps_to_true(const PredPtr& p);

std::uint64_t p_atoms(const PredPtr& p);
std::string p_show(const PredPtr& p);

// --- kappa-variable registry -------------------------------------------------

struct KVarInfo {
  std::string name;
  std::vector<std::pair<std::string, Sort>> params;  // last one is the value slot
  bool toplevel = false;  // appears in a templated top-level signature
};

class KVarRegistry {
 public:
  const KVarInfo& declare(std::string name, std::vector<std::pair<std::string, Sort>> params,
                          bool toplevel = false);
  const KVarInfo* find(const std::string& name) const;
  const KVarInfo& at(const std::string& name) const;  // throws if missing
  std::vector<std::string> names() const;             // sorted
  size_t size() const { return infos_.size(); }

 private:
  std::map<std::string, KVarInfo> infos_;
};

}  // namespace fusion
