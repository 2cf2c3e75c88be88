#include "fusion/constraint.hpp"

#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace fusion {

namespace {
ConstraintPtr mk(Constraint c) { return std::make_shared<const Constraint>(std::move(c)); }

const ConstraintPtr kTrivial = [] {
  Constraint c;
  c.kind = CKind::Leaf;
  c.pred = p_true();
  return std::make_shared<const Constraint>(std::move(c));
}();
}  // namespace

ConstraintPtr c_trivial() { return kTrivial; }

bool c_is_trivial(const ConstraintPtr& c) {
  return c->kind == CKind::Leaf && p_is_true(c->pred);
}

ConstraintPtr c_leaf_raw(PredPtr goal, std::optional<Provenance> prov) {
  Constraint c;
  c.kind = CKind::Leaf;
  c.pred = std::move(goal);
  c.prov = std::move(prov);
  return mk(std::move(c));
}

ConstraintPtr c_conj_raw(ConstraintPtr a, ConstraintPtr b) {
  Constraint c;
  c.kind = CKind::Conj;
  c.l = std::move(a);
  c.r = std::move(b);
  return mk(std::move(c));
}

ConstraintPtr c_forall_raw(std::string x, Sort s, PredPtr hyp, ConstraintPtr body) {
  Constraint c;
  c.kind = CKind::Forall;
  c.bind = std::move(x);
  c.sort = std::move(s);
  c.hyp = std::move(hyp);
  c.body = std::move(body);
  return mk(std::move(c));
}

ConstraintPtr c_leaf(PredPtr goal, std::optional<Provenance> prov) {
  if (p_is_true(goal)) return kTrivial;
  // A conjunction goal is two separate obligations.
  if (goal->kind == PKind::And)
    return c_conj(c_leaf(goal->l, prov), c_leaf(goal->r, prov));
  return c_leaf_raw(std::move(goal), std::move(prov));
}

ConstraintPtr c_conj(ConstraintPtr a, ConstraintPtr b) {
  if (c_is_trivial(a)) return b;
  if (c_is_trivial(b)) return a;
  return c_conj_raw(std::move(a), std::move(b));
}

ConstraintPtr c_forall(std::string x, Sort s, PredPtr hyp, ConstraintPtr body) {
  if (c_is_trivial(body)) return body;
  if (p_is_false(hyp)) return kTrivial;
  return c_forall_raw(std::move(x), std::move(s), std::move(hyp), std::move(body));
}

bool c_equal(const ConstraintPtr& a, const ConstraintPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case CKind::Leaf:
      return p_equal(a->pred, b->pred);
    case CKind::Conj:
      return c_equal(a->l, b->l) && c_equal(a->r, b->r);
    case CKind::Forall:
      return a->bind == b->bind && a->sort == b->sort && p_equal(a->hyp, b->hyp) &&
             c_equal(a->body, b->body);
  }
  return false;
}

namespace {
void kvars_walk(const ConstraintPtr& c, std::set<std::string>& out) {
  switch (c->kind) {
    case CKind::Leaf:
      p_kvars(c->pred, out);
      return;
    case CKind::Conj:
      kvars_walk(c->l, out);
      kvars_walk(c->r, out);
      return;
    case CKind::Forall:
      p_kvars(c->hyp, out);
      kvars_walk(c->body, out);
      return;
  }
}
}  // namespace

std::set<std::string> c_kvars(const ConstraintPtr& c) {
  std::set<std::string> out;
  kvars_walk(c, out);
  return out;
}

namespace {
std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s < a ? UINT64_MAX : s;
}

struct AtomCounter {
  std::unordered_map<const Constraint*, std::uint64_t> cmemo;
  std::unordered_map<const Pred*, std::uint64_t> pmemo;

  std::uint64_t pred(const PredPtr& p) {
    auto it = pmemo.find(p.get());
    if (it != pmemo.end()) return it->second;
    std::uint64_t n = 0;
    switch (p->kind) {
      case PKind::Conc:
        n = f_atoms(p->conc);
        break;
      case PKind::KApp:
        n = 1;
        break;
      case PKind::And:
      case PKind::Or:
        n = sat_add(pred(p->l), pred(p->r));
        break;
      case PKind::Exists:
        n = pred(p->body);
        break;
    }
    pmemo.emplace(p.get(), n);
    return n;
  }

  std::uint64_t cons(const ConstraintPtr& c) {
    auto it = cmemo.find(c.get());
    if (it != cmemo.end()) return it->second;
    std::uint64_t n = 0;
    switch (c->kind) {
      case CKind::Leaf:
        n = pred(c->pred);
        break;
      case CKind::Conj:
        n = sat_add(cons(c->l), cons(c->r));
        break;
      case CKind::Forall:
        n = sat_add(pred(c->hyp), cons(c->body));
        break;
    }
    cmemo.emplace(c.get(), n);
    return n;
  }
};
}  // namespace

std::uint64_t c_atoms(const ConstraintPtr& c) {
  AtomCounter ac;
  return ac.cons(c);
}

namespace {
void show_walk(const ConstraintPtr& c, int indent, std::ostringstream& os) {
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  switch (c->kind) {
    case CKind::Leaf:
      os << pad << p_show(c->pred) << "\n";
      return;
    case CKind::Conj:
      os << pad << "and\n";
      show_walk(c->l, indent + 1, os);
      show_walk(c->r, indent + 1, os);
      return;
    case CKind::Forall:
      os << pad << "forall " << c->bind << ":" << c->sort.show() << ". " << p_show(c->hyp)
         << " =>\n";
      show_walk(c->body, indent + 1, os);
      return;
  }
}
}  // namespace

std::string c_show(const ConstraintPtr& c) {
  std::ostringstream os;
  show_walk(c, 0, os);
  return os.str();
}

namespace {
void flatten_goal(const PredPtr& goal, const std::vector<FlatBinder>& binders,
                  const std::optional<Provenance>& prov, std::vector<FlatClause>& out) {
  if (p_is_true(goal)) return;
  if (goal->kind == PKind::And) {
    flatten_goal(goal->l, binders, prov, out);
    flatten_goal(goal->r, binders, prov, out);
    return;
  }
  out.push_back(FlatClause{binders, goal, prov});
}

void flatten_walk(const ConstraintPtr& c, std::vector<FlatBinder>& binders,
                  std::vector<FlatClause>& out) {
  switch (c->kind) {
    case CKind::Leaf:
      flatten_goal(c->pred, binders, c->prov, out);
      return;
    case CKind::Conj:
      flatten_walk(c->l, binders, out);
      flatten_walk(c->r, binders, out);
      return;
    case CKind::Forall:
      binders.push_back(FlatBinder{c->bind, c->sort, c->hyp});
      flatten_walk(c->body, binders, out);
      binders.pop_back();
      return;
  }
}
}  // namespace

std::vector<FlatClause> flatten(const ConstraintPtr& c) {
  std::vector<FlatClause> out;
  std::vector<FlatBinder> binders;
  flatten_walk(c, binders, out);
  return out;
}

std::set<std::string> clause_hyp_kvars(const FlatClause& cl) {
  std::set<std::string> out;
  for (const auto& b : cl.binders) p_kvars(b.hyp, out);
  return out;
}

std::set<std::string> clause_goal_kvars(const FlatClause& cl) { return p_kvars(cl.goal); }

PredPtr p_apply(const Assignment& sigma, const PredPtr& p) {
  switch (p->kind) {
    case PKind::Conc:
      return p;
    case PKind::KApp: {
      auto it = sigma.find(p->kvar);
      if (it == sigma.end()) return p;
      const SolBody& sb = it->second;
      if (sb.params.size() != p->args.size())
        throw std::logic_error("p_apply: arity mismatch for " + p->kvar);
      std::map<std::string, std::string> m;
      for (size_t i = 0; i < sb.params.size(); ++i)
        if (sb.params[i] != p->args[i]) m[sb.params[i]] = p->args[i];
      return p_subst(sb.body, m);
    }
    case PKind::And:
      return p_and(p_apply(sigma, p->l), p_apply(sigma, p->r));
    case PKind::Or:
      return p_or(p_apply(sigma, p->l), p_apply(sigma, p->r));
    case PKind::Exists:
      return p_exists(p->bind_name, p->bind_sort, p_apply(sigma, p->body));
  }
  return p;
}

ConstraintPtr c_apply(const Assignment& sigma, const ConstraintPtr& c) {
  switch (c->kind) {
    case CKind::Leaf:
      return c_leaf(p_apply(sigma, c->pred), c->prov);
    case CKind::Conj:
      return c_conj(c_apply(sigma, c->l), c_apply(sigma, c->r));
    case CKind::Forall:
      return c_forall(c->bind, c->sort, p_apply(sigma, c->hyp), c_apply(sigma, c->body));
  }
  return c;
}

Assignment compose(const Assignment& sigma2, const Assignment& sigma1) {
  Assignment out;
  for (const auto& [k, sb] : sigma1) out[k] = SolBody{sb.params, p_apply(sigma2, sb.body)};
  for (const auto& [k, sb] : sigma2)
    if (!out.count(k)) out[k] = sb;
  return out;
}

ConstraintPtr c_kapps_to_true(const ConstraintPtr& c) {
  switch (c->kind) {
    case CKind::Leaf:
      return c_leaf(p_kapps_to_true(c->pred), c->prov);
    case CKind::Conj:
      return c_conj(c_kapps_to_true(c->l), c_kapps_to_true(c->r));
    case CKind::Forall:
      return c_forall(c->bind, c->sort, p_kapps_to_true(c->hyp), c_kapps_to_true(c->body));
  }
  return c;
}

namespace {
void wf_pred(const PredPtr& p, const KVarRegistry& kvars, SortEnv& env) {
  switch (p->kind) {
    case PKind::Conc:
      check_sorted(env, p->conc);
      return;
    case PKind::KApp: {
      const KVarInfo& info = kvars.at(p->kvar);
      if (info.params.size() != p->args.size())
        throw SortError("kappa " + p->kvar + " applied to " + std::to_string(p->args.size()) +
                        " arguments, expects " + std::to_string(info.params.size()));
      for (size_t i = 0; i < p->args.size(); ++i) {
        auto it = env.vars.find(p->args[i]);
        if (it == env.vars.end())
          throw SortError("kappa " + p->kvar + ": unbound argument " + p->args[i]);
        if (it->second != info.params[i].second)
          throw SortError("kappa " + p->kvar + ": argument " + p->args[i] + " has sort " +
                          it->second.show() + ", expects " + info.params[i].second.show());
      }
      return;
    }
    case PKind::And:
    case PKind::Or:
      wf_pred(p->l, kvars, env);
      wf_pred(p->r, kvars, env);
      return;
    case PKind::Exists: {
      auto prev = env.vars.find(p->bind_name);
      std::optional<Sort> saved;
      if (prev != env.vars.end()) saved = prev->second;
      env.vars[p->bind_name] = p->bind_sort;
      wf_pred(p->body, kvars, env);
      if (saved)
        env.vars[p->bind_name] = *saved;
      else
        env.vars.erase(p->bind_name);
      return;
    }
  }
}

void wf_walk(const ConstraintPtr& c, const KVarRegistry& kvars, SortEnv& env) {
  switch (c->kind) {
    case CKind::Leaf:
      wf_pred(c->pred, kvars, env);
      return;
    case CKind::Conj:
      wf_walk(c->l, kvars, env);
      wf_walk(c->r, kvars, env);
      return;
    case CKind::Forall: {
      if (env.vars.count(c->bind))
        throw SortError("shadowed binder in constraint: " + c->bind);
      env.vars[c->bind] = c->sort;
      wf_pred(c->hyp, kvars, env);
      wf_walk(c->body, kvars, env);
      env.vars.erase(c->bind);
      return;
    }
  }
}
}  // namespace

void c_wf(const ConstraintPtr& c, const KVarRegistry& kvars, const SortEnv& globals) {
  SortEnv env = globals;
  wf_walk(c, kvars, env);
}

}  // namespace fusion
