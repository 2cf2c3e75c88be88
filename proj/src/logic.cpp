#include "fusion/logic.hpp"

namespace fusion {

namespace {
bool is_int_literal(const FormulaPtr& t) {
  if (t->kind == FKind::IntLit) return true;
  if (t->kind == FKind::Neg) return t->kids[0]->kind == FKind::IntLit;
  return false;
}

Sort expect(const SortEnv& env, const FormulaPtr& t, const Sort& want, const char* where) {
  Sort got = sort_of(env, t);
  if (got != want)
    throw SortError(std::string(where) + ": expected " + want.show() + ", got " + got.show());
  return got;
}
}  // namespace

Sort sort_of(const SortEnv& env, const FormulaPtr& t) {
  switch (t->kind) {
    case FKind::IntLit:
      return Sort::mk_int();
    case FKind::BoolLit:
      return Sort::mk_bool();
    case FKind::Var: {
      auto it = env.vars.find(t->name);
      if (it == env.vars.end()) throw SortError("unbound variable: " + t->name);
      return it->second;
    }
    case FKind::Add:
    case FKind::Sub:
      expect(env, t->kids[0], Sort::mk_int(), "arith");
      expect(env, t->kids[1], Sort::mk_int(), "arith");
      return Sort::mk_int();
    case FKind::Neg:
      expect(env, t->kids[0], Sort::mk_int(), "negation");
      return Sort::mk_int();
    case FKind::Mul:
      expect(env, t->kids[0], Sort::mk_int(), "multiplication");
      expect(env, t->kids[1], Sort::mk_int(), "multiplication");
      if (!is_int_literal(t->kids[0]) && !is_int_literal(t->kids[1]))
        throw SortError("non-linear multiplication");
      return Sort::mk_int();
    case FKind::Cmp:
      expect(env, t->kids[0], Sort::mk_int(), "comparison");
      expect(env, t->kids[1], Sort::mk_int(), "comparison");
      return Sort::mk_bool();
    case FKind::Eq: {
      Sort a = sort_of(env, t->kids[0]);
      Sort b = sort_of(env, t->kids[1]);
      if (a != b)
        throw SortError("equality between " + a.show() + " and " + b.show());
      return Sort::mk_bool();
    }
    case FKind::Not:
      expect(env, t->kids[0], Sort::mk_bool(), "not");
      return Sort::mk_bool();
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
      expect(env, t->kids[0], Sort::mk_bool(), "connective");
      expect(env, t->kids[1], Sort::mk_bool(), "connective");
      return Sort::mk_bool();
    case FKind::App: {
      auto it = env.funs.find(t->name);
      if (it == env.funs.end()) throw SortError("unknown function: " + t->name);
      const FunSig& sig = it->second;
      if (sig.args.size() != t->kids.size())
        throw SortError("arity mismatch applying " + t->name);
      for (size_t i = 0; i < sig.args.size(); ++i) expect(env, t->kids[i], sig.args[i], "argument");
      return sig.result;
    }
    case FKind::Exists: {
      SortEnv inner = env;
      inner.vars[t->name] = t->sort;
      expect(inner, t->kids[0], Sort::mk_bool(), "exists body");
      return Sort::mk_bool();
    }
  }
  throw SortError("sort_of: bad kind");
}

void check_sorted(const SortEnv& env, const FormulaPtr& f) {
  Sort s = sort_of(env, f);
  if (!s.is_bool()) throw SortError("formula has sort " + s.show() + ", expected Bool");
}

bool well_sorted(const SortEnv& env, const FormulaPtr& f) {
  try {
    check_sorted(env, f);
    return true;
  } catch (const SortError&) {
    return false;
  }
}

namespace {
bool has_exists(const FormulaPtr& f) {
  if (f->kind == FKind::Exists) return true;
  for (const auto& k : f->kids)
    if (has_exists(k)) return true;
  return false;
}

// positive == true at the root of a validity goal.
FormulaPtr skolem_walk(const FormulaPtr& f, bool positive, std::set<std::string>& taken,
                       std::vector<std::pair<std::string, Sort>>& consts) {
  switch (f->kind) {
    case FKind::Not:
      return f_not(skolem_walk(f->kids[0], !positive, taken, consts));
    case FKind::And:
      return f_and(skolem_walk(f->kids[0], positive, taken, consts),
                   skolem_walk(f->kids[1], positive, taken, consts));
    case FKind::Or:
      return f_or(skolem_walk(f->kids[0], positive, taken, consts),
                  skolem_walk(f->kids[1], positive, taken, consts));
    case FKind::Implies:
      return f_implies(skolem_walk(f->kids[0], !positive, taken, consts),
                       skolem_walk(f->kids[1], positive, taken, consts));
    case FKind::Exists: {
      if (positive)
        throw SkolemError("existential in positive position: " + f_show(f));
      std::string c = fresh_name(f->name, taken);
      taken.insert(c);
      consts.emplace_back(c, f->sort);
      FormulaPtr body = f_subst(f->kids[0], {{f->name, c}});
      return skolem_walk(body, positive, taken, consts);
    }
    default:
      // Under an atom (e.g. a Bool equality operand) an existential has mixed
      // polarity and cannot be hoisted.
      if (has_exists(f)) throw SkolemError("existential under an atom: " + f_show(f));
      return f;
  }
}
}  // namespace

SkolemResult skolemize(const FormulaPtr& f, std::set<std::string>& taken) {
  SkolemResult r;
  r.formula = skolem_walk(f, /*positive=*/true, taken, r.consts);
  return r;
}

}  // namespace fusion
