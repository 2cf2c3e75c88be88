#include "fusion/pred.hpp"

#include <sstream>
#include <stdexcept>

namespace fusion {

namespace {
PredPtr mk(Pred p) { return std::make_shared<const Pred>(std::move(p)); }

const PredPtr kPTrue = [] {
  Pred p;
  p.kind = PKind::Conc;
  p.conc = f_true();
  return std::make_shared<const Pred>(std::move(p));
}();
const PredPtr kPFalse = [] {
  Pred p;
  p.kind = PKind::Conc;
  p.conc = f_false();
  return std::make_shared<const Pred>(std::move(p));
}();
}  // namespace

PredPtr p_true() { return kPTrue; }
PredPtr p_false() { return kPFalse; }

PredPtr p_conc(FormulaPtr f) {
  if (is_true(f)) return kPTrue;
  if (is_false(f)) return kPFalse;
  Pred p;
  p.kind = PKind::Conc;
  p.conc = std::move(f);
  return mk(std::move(p));
}

PredPtr p_kapp(std::string kvar, std::vector<std::string> args) {
  Pred p;
  p.kind = PKind::KApp;
  p.kvar = std::move(kvar);
  p.args = std::move(args);
  return mk(std::move(p));
}

PredPtr p_and(PredPtr a, PredPtr b) {
  if (p_is_true(a)) return b;
  if (p_is_true(b)) return a;
  if (p_is_false(a)) return a;
  if (p_is_false(b)) return b;
  Pred p;
  p.kind = PKind::And;
  p.l = std::move(a);
  p.r = std::move(b);
  return mk(std::move(p));
}

PredPtr p_or(PredPtr a, PredPtr b) {
  if (p_is_true(a)) return a;
  if (p_is_true(b)) return b;
  if (p_is_false(a)) return b;
  if (p_is_false(b)) return a;
  Pred p;
  p.kind = PKind::Or;
  p.l = std::move(a);
  p.r = std::move(b);
  return mk(std::move(p));
}

PredPtr p_exists(std::string x, Sort s, PredPtr body) {
  if (p_is_true(body) || p_is_false(body)) return body;
  Pred p;
  p.kind = PKind::Exists;
  p.bind_name = std::move(x);
  p.bind_sort = std::move(s);
  p.body = std::move(body);
  return mk(std::move(p));
}

bool p_is_true(const PredPtr& p) { return p->kind == PKind::Conc && is_true(p->conc); }
bool p_is_false(const PredPtr& p) { return p->kind == PKind::Conc && is_false(p->conc); }

bool p_equal(const PredPtr& a, const PredPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case PKind::Conc:
      return f_equal(a->conc, b->conc);
    case PKind::KApp:
      return a->kvar == b->kvar && a->args == b->args;
    case PKind::And:
    case PKind::Or:
      return p_equal(a->l, b->l) && p_equal(a->r, b->r);
    case PKind::Exists:
      return a->bind_name == b->bind_name && a->bind_sort == b->bind_sort &&
             p_equal(a->body, b->body);
  }
  return false;
}

void p_kvars(const PredPtr& p, std::set<std::string>& out) {
  switch (p->kind) {
    case PKind::Conc:
      return;
    case PKind::KApp:
      out.insert(p->kvar);
      return;
    case PKind::And:
    case PKind::Or:
      p_kvars(p->l, out);
      p_kvars(p->r, out);
      return;
    case PKind::Exists:
      p_kvars(p->body, out);
      return;
  }
}

std::set<std::string> p_kvars(const PredPtr& p) {
  std::set<std::string> s;
  p_kvars(p, s);
  return s;
}

bool p_has_kvars(const PredPtr& p) {
  switch (p->kind) {
    case PKind::Conc:
      return false;
    case PKind::KApp:
      return true;
    case PKind::And:
    case PKind::Or:
      return p_has_kvars(p->l) || p_has_kvars(p->r);
    case PKind::Exists:
      return p_has_kvars(p->body);
  }
  return false;
}

void p_free_vars(const PredPtr& p, std::map<std::string, Sort>& out) {
  switch (p->kind) {
    case PKind::Conc:
      f_free_vars(p->conc, out);
      return;
    case PKind::KApp:
      // kapp argument sorts live in the registry; record them as opaque here
      // and let callers with access to the registry refine when needed.
      for (const auto& a : p->args)
        if (!out.count(a)) out.emplace(a, Sort::opaque("?"));
      return;
    case PKind::And:
    case PKind::Or:
      p_free_vars(p->l, out);
      p_free_vars(p->r, out);
      return;
    case PKind::Exists: {
      std::map<std::string, Sort> inner;
      p_free_vars(p->body, inner);
      inner.erase(p->bind_name);
      for (auto& [k, v] : inner)
        if (!out.count(k)) out.emplace(k, v);
      return;
    }
  }
}

PredPtr p_subst(const PredPtr& p, const std::map<std::string, std::string>& m) {
  if (m.empty()) return p;
  switch (p->kind) {
    case PKind::Conc:
      return p_conc(f_subst(p->conc, m));
    case PKind::KApp: {
      std::vector<std::string> args;
      args.reserve(p->args.size());
      bool changed = false;
      for (const auto& a : p->args) {
        auto it = m.find(a);
        if (it != m.end()) {
          args.push_back(it->second);
          changed = true;
        } else {
          args.push_back(a);
        }
      }
      return changed ? p_kapp(p->kvar, std::move(args)) : p;
    }
    case PKind::And:
      return p_and(p_subst(p->l, m), p_subst(p->r, m));
    case PKind::Or:
      return p_or(p_subst(p->l, m), p_subst(p->r, m));
    case PKind::Exists: {
      std::map<std::string, std::string> inner = m;
      inner.erase(p->bind_name);
      // Capture check: if any replacement equals the binder, rename the binder.
      std::string bn = p->bind_name;
      bool collide = false;
      for (const auto& [from, to] : inner)
        if (to == bn) collide = true;
      if (collide) {
        std::map<std::string, Sort> fv;
        p_free_vars(p->body, fv);
        std::set<std::string> taken;
        for (const auto& [k, _] : fv) taken.insert(k);
        for (const auto& [from, to] : inner) taken.insert(to);
        std::string fresh = fresh_name(bn, taken);
        inner[bn] = fresh;
        bn = fresh;
      }
      if (inner.empty()) return p;
      return p_exists(bn, p->bind_sort, p_subst(p->body, inner));
    }
  }
  return p;
}

FormulaPtr p_to_formula(const PredPtr& p) {
  switch (p->kind) {
    case PKind::Conc:
      return p->conc;
    case PKind::KApp:
      throw std::logic_error("p_to_formula: residual kappa application " + p->kvar);
    case PKind::And:
      return f_and(p_to_formula(p->l), p_to_formula(p->r));
    case PKind::Or:
      return f_or(p_to_formula(p->l), p_to_formula(p->r));
    case PKind::Exists:
      return f_exists(p->bind_name, p->bind_sort, p_to_formula(p->body));
  }
  throw std::logic_error("p_to_formula: bad kind");
}

PredPtr p_kapps_to_true(const PredPtr& p) {
  switch (p->kind) {
    case PKind::Conc:
      return p;
    case PKind::KApp:
      return p_true();
    case PKind::And:
      return p_and(p_kapps_to_true(p->l), p_kapps_to_true(p->r));
    case PKind::Or:
      return p_or(p_kapps_to_true(p->l), p_kapps_to_true(p->r));
    case PKind::Exists:
      return p_exists(p->bind_name, p->bind_sort, p_kapps_to_true(p->body));
  }
  return p;
}

std::uint64_t p_atoms(const PredPtr& p) {
  switch (p->kind) {
    case PKind::Conc:
      return f_atoms(p->conc);
    case PKind::KApp:
      return 1;
    case PKind::And:
    case PKind::Or: {
      std::uint64_t a = p_atoms(p->l), b = p_atoms(p->r);
      std::uint64_t s = a + b;
      if (s < a) s = UINT64_MAX;
      return s;
    }
    case PKind::Exists:
      return p_atoms(p->body);
  }
  return 1;
}

namespace {
// Precedence: 1 or, 2 and, 3 everything else.
void show(const PredPtr& p, int parent, std::ostringstream& os) {
  switch (p->kind) {
    case PKind::Conc:
      os << f_show(p->conc);
      return;
    case PKind::KApp: {
      os << "$" << p->kvar << "(";
      for (size_t i = 0; i < p->args.size(); ++i) {
        if (i) os << ", ";
        os << p->args[i];
      }
      os << ")";
      return;
    }
    case PKind::And: {
      bool par = parent > 2;
      if (par) os << "(";
      show(p->l, 2, os);
      os << " && ";
      show(p->r, 2, os);
      if (par) os << ")";
      return;
    }
    case PKind::Or: {
      bool par = parent > 1;
      if (par) os << "(";
      show(p->l, 1, os);
      os << " || ";
      show(p->r, 1, os);
      if (par) os << ")";
      return;
    }
    case PKind::Exists: {
      bool par = parent > 0;
      if (par) os << "(";
      os << "exists " << p->bind_name << ":" << p->bind_sort.show() << ". ";
      show(p->body, 0, os);
      if (par) os << ")";
      return;
    }
  }
}
}  // namespace

std::string p_show(const PredPtr& p) {
  std::ostringstream os;
  show(p, 0, os);
  return os.str();
}

const KVarInfo& KVarRegistry::declare(std::string name,
                                      std::vector<std::pair<std::string, Sort>> params,
                                      bool toplevel) {
  KVarInfo info;
  info.name = name;
  info.params = std::move(params);
  info.toplevel = toplevel;
  auto [it, inserted] = infos_.emplace(std::move(name), std::move(info));
  if (!inserted) throw std::logic_error("kvar redeclared: " + it->first);
  return it->second;
}

const KVarInfo* KVarRegistry::find(const std::string& name) const {
  auto it = infos_.find(name);
  return it == infos_.end() ? nullptr : &it->second;
}

const KVarInfo& KVarRegistry::at(const std::string& name) const {
  const KVarInfo* p = find(name);
  if (!p) throw std::logic_error("unknown kvar: " + name);
  return *p;
}

std::vector<std::string> KVarRegistry::names() const {
  std::vector<std::string> out;
  out.reserve(infos_.size());
  for (const auto& [k, _] : infos_) out.push_back(k);
  return out;
}

}  // namespace fusion
