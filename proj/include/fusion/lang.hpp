#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fusion/pred.hpp"
#include "fusion/sort.hpp"

namespace fusion {

// ---------------------------------------------------------------------------
// Unrefined types (shapes). Used by the elaborator (with unification
// metavariables) and as the payload of type instantiations.
// ---------------------------------------------------------------------------

enum class UKind { Base, TVar, Con, Fun, All, Meta };

struct UType;
using UTypePtr = std::shared_ptr<const UType>;

struct UType {
  UKind kind;
  Sort sort{Sort::mk_int()};    // Base
  std::string name;             // TVar / Con / All (bound tyvar)
  std::vector<UTypePtr> args;   // Con
  UTypePtr in_t, out_t;         // Fun
  UTypePtr body;                // All
  int meta = -1;                // Meta
};

UTypePtr ut_base(Sort s);
UTypePtr ut_tvar(const std::string& a);
UTypePtr ut_con(const std::string& name, std::vector<UTypePtr> args);
UTypePtr ut_fun(UTypePtr in, UTypePtr out);
UTypePtr ut_all(const std::string& a, UTypePtr body);
UTypePtr ut_meta(int id);

bool ut_equal(const UTypePtr& a, const UTypePtr& b);
// Replaces free occurrences of tyvar `a` by `to`.
UTypePtr ut_subst_tyvar(const UTypePtr& t, const std::string& a, const UTypePtr& to);
bool ut_has_meta(const UTypePtr& t);
void ut_metas(const UTypePtr& t, std::set<int>& out);
std::string ut_show(const UTypePtr& t);

// ---------------------------------------------------------------------------
// Refined types.
//   Base     {v:b | p}         value binder v, base sort b, refinement p
//   TVar     a
//   Con      C t1 .. tn        (covariant in every argument)
//   Fun      x:t -> t'         x may appear in refinements of t'
//   All      forall a. t
// ---------------------------------------------------------------------------

enum class RKind { Base, TVar, Con, Fun, All };

struct RType;
using RTypePtr = std::shared_ptr<const RType>;

struct RType {
  RKind kind;
  // Base
  std::string vname;
  Sort sort{Sort::mk_int()};
  PredPtr pred;
  // TVar name / Con name / Fun binder / All tyvar
  std::string name;
  // Con
  std::vector<RTypePtr> args;
  // Fun
  RTypePtr in_t, out_t;
  // All
  RTypePtr body;
};

RTypePtr rt_base(const std::string& vname, Sort s, PredPtr p);
RTypePtr rt_tvar(const std::string& a);
RTypePtr rt_con(const std::string& name, std::vector<RTypePtr> args);
RTypePtr rt_fun(const std::string& x, RTypePtr in, RTypePtr out);
RTypePtr rt_all(const std::string& a, RTypePtr body);

bool rt_equal(const RTypePtr& a, const RTypePtr& b);  // structural, binder names literal
std::string rt_show(const RTypePtr& t);

// Program variables free in refinements (value binders and dependent function
// binders are scoped out).
void rt_free_vars(const RTypePtr& t, std::set<std::string>& out);
// Capture-avoiding substitution of program variable `from` by variable `to`
// inside refinements.
RTypePtr rt_subst_var(const RTypePtr& t, const std::string& from, const std::string& to);
// Type-level substitution of tyvar `a` by `to` (refinements cannot mention
// tyvars, so only type positions are rewritten).
RTypePtr rt_subst_tyvar(const RTypePtr& t, const std::string& a, const RTypePtr& to);
// All kvars appearing in refinements.
void rt_kvars(const RTypePtr& t, std::set<std::string>& out);

// Shape of a refined type: drop refinements, binders and quantifiers stay.
UTypePtr shape(const RTypePtr& t);

// Strips leading All quantifiers, collecting tyvar names.
RTypePtr rt_strip_alls(RTypePtr t, std::vector<std::string>& tyvars);

// ---------------------------------------------------------------------------
// Expressions. Surface syntax produces Var/Lit/App/Lam/Let/If/Inst; the
// elaborator inserts TyApp nodes (with resolved shapes and sharing groups)
// and fills lambda annotations; the ANF pass guarantees App arguments are
// variables.
// ---------------------------------------------------------------------------

enum class EKind { Var, LitInt, LitBool, LitUnit, App, Lam, Let, If, Inst, TyApp };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  EKind kind;
  int line = 0, col = 0;
  std::string name;        // Var; Lam/Let binder
  long long int_val = 0;   // LitInt
  bool bool_val = false;   // LitBool
  ExprPtr fn, arg;         // App
  UTypePtr lam_annot;      // Lam input shape (null until elaborated)
  ExprPtr e1, e2, e3;      // Lam body=e1; Let bound=e1, body=e2; If c/then/else
  UTypePtr shape;          // Inst hint; TyApp resolved shape
  int group = -1;          // TyApp sharing group
};

ExprPtr e_var(const std::string& x, int line = 0, int col = 0);
ExprPtr e_lit_int(long long n, int line = 0, int col = 0);
ExprPtr e_lit_bool(bool b, int line = 0, int col = 0);
ExprPtr e_lit_unit(int line = 0, int col = 0);
ExprPtr e_app(ExprPtr fn, ExprPtr arg, int line = 0, int col = 0);
ExprPtr e_lam(const std::string& x, UTypePtr annot, ExprPtr body, int line = 0, int col = 0);
ExprPtr e_let(const std::string& x, ExprPtr bound, ExprPtr body, int line = 0, int col = 0);
ExprPtr e_if(ExprPtr c, ExprPtr t, ExprPtr e, int line = 0, int col = 0);
ExprPtr e_inst(ExprPtr head, UTypePtr shape, int line = 0, int col = 0);
ExprPtr e_tyapp(ExprPtr head, UTypePtr shape, int group, int line = 0, int col = 0);

std::string expr_show(const ExprPtr& e);

// ---------------------------------------------------------------------------
// Programs.
// ---------------------------------------------------------------------------

struct DataDecl {
  std::string name;
  int arity = 0;
  int line = 0, col = 0;
};

struct TopLevel {
  std::string name;
  RTypePtr sig;                 // required; All-quantified if polymorphic
  bool has_refinements = false; // signature text contained at least one {...}
  ExprPtr def;
  int line = 0, col = 0;
};

struct Program {
  std::vector<DataDecl> datas;
  std::vector<TopLevel> tops;
};

}  // namespace fusion
