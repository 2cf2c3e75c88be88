#include "fusion/lang.hpp"

#include <sstream>

#include "fusion/formula.hpp"

namespace fusion {

// ---------------------------------------------------------------------------
// UType
// ---------------------------------------------------------------------------

static UTypePtr mk_ut(UType&& u) { return std::make_shared<const UType>(std::move(u)); }

UTypePtr ut_base(Sort s) {
  UType u;
  u.kind = UKind::Base;
  u.sort = s;
  return mk_ut(std::move(u));
}

UTypePtr ut_tvar(const std::string& a) {
  UType u;
  u.kind = UKind::TVar;
  u.name = a;
  return mk_ut(std::move(u));
}

UTypePtr ut_con(const std::string& name, std::vector<UTypePtr> args) {
  UType u;
  u.kind = UKind::Con;
  u.name = name;
  u.args = std::move(args);
  return mk_ut(std::move(u));
}

UTypePtr ut_fun(UTypePtr in, UTypePtr out) {
  UType u;
  u.kind = UKind::Fun;
  u.in_t = std::move(in);
  u.out_t = std::move(out);
  return mk_ut(std::move(u));
}

UTypePtr ut_all(const std::string& a, UTypePtr body) {
  UType u;
  u.kind = UKind::All;
  u.name = a;
  u.body = std::move(body);
  return mk_ut(std::move(u));
}

UTypePtr ut_meta(int id) {
  UType u;
  u.kind = UKind::Meta;
  u.meta = id;
  return mk_ut(std::move(u));
}

bool ut_equal(const UTypePtr& a, const UTypePtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case UKind::Base:
      return a->sort == b->sort;
    case UKind::TVar:
      return a->name == b->name;
    case UKind::Con: {
      if (a->name != b->name || a->args.size() != b->args.size()) return false;
      for (size_t i = 0; i < a->args.size(); ++i)
        if (!ut_equal(a->args[i], b->args[i])) return false;
      return true;
    }
    case UKind::Fun:
      return ut_equal(a->in_t, b->in_t) && ut_equal(a->out_t, b->out_t);
    case UKind::All:
      return a->name == b->name && ut_equal(a->body, b->body);
    case UKind::Meta:
      return a->meta == b->meta;
  }
  return false;
}

UTypePtr ut_subst_tyvar(const UTypePtr& t, const std::string& a, const UTypePtr& to) {
  if (!t) return t;
  switch (t->kind) {
    case UKind::Base:
    case UKind::Meta:
      return t;
    case UKind::TVar:
      return t->name == a ? to : t;
    case UKind::Con: {
      std::vector<UTypePtr> args;
      args.reserve(t->args.size());
      bool changed = false;
      for (auto& x : t->args) {
        auto y = ut_subst_tyvar(x, a, to);
        changed = changed || y.get() != x.get();
        args.push_back(std::move(y));
      }
      return changed ? ut_con(t->name, std::move(args)) : t;
    }
    case UKind::Fun: {
      auto in = ut_subst_tyvar(t->in_t, a, to);
      auto out = ut_subst_tyvar(t->out_t, a, to);
      if (in.get() == t->in_t.get() && out.get() == t->out_t.get()) return t;
      return ut_fun(std::move(in), std::move(out));
    }
    case UKind::All: {
      if (t->name == a) return t;  // shadowed
      auto body = ut_subst_tyvar(t->body, a, to);
      return body.get() == t->body.get() ? t : ut_all(t->name, std::move(body));
    }
  }
  return t;
}

bool ut_has_meta(const UTypePtr& t) {
  if (!t) return false;
  switch (t->kind) {
    case UKind::Meta:
      return true;
    case UKind::Base:
    case UKind::TVar:
      return false;
    case UKind::Con:
      for (auto& a : t->args)
        if (ut_has_meta(a)) return true;
      return false;
    case UKind::Fun:
      return ut_has_meta(t->in_t) || ut_has_meta(t->out_t);
    case UKind::All:
      return ut_has_meta(t->body);
  }
  return false;
}

void ut_metas(const UTypePtr& t, std::set<int>& out) {
  if (!t) return;
  switch (t->kind) {
    case UKind::Meta:
      out.insert(t->meta);
      return;
    case UKind::Base:
    case UKind::TVar:
      return;
    case UKind::Con:
      for (auto& a : t->args) ut_metas(a, out);
      return;
    case UKind::Fun:
      ut_metas(t->in_t, out);
      ut_metas(t->out_t, out);
      return;
    case UKind::All:
      ut_metas(t->body, out);
      return;
  }
}

static void ut_show_rec(const UTypePtr& t, std::ostringstream& os, bool atom_pos) {
  switch (t->kind) {
    case UKind::Base:
      os << t->sort.show();
      return;
    case UKind::TVar:
      os << t->name;
      return;
    case UKind::Meta:
      os << "?" << t->meta;
      return;
    case UKind::Con: {
      bool paren = atom_pos && !t->args.empty();
      if (paren) os << "(";
      os << t->name;
      for (auto& a : t->args) {
        os << " ";
        ut_show_rec(a, os, true);
      }
      if (paren) os << ")";
      return;
    }
    case UKind::Fun: {
      if (atom_pos) os << "(";
      ut_show_rec(t->in_t, os, t->in_t->kind == UKind::Fun || !t->in_t->args.empty());
      os << " -> ";
      ut_show_rec(t->out_t, os, false);
      if (atom_pos) os << ")";
      return;
    }
    case UKind::All: {
      if (atom_pos) os << "(";
      os << "forall " << t->name << ". ";
      ut_show_rec(t->body, os, false);
      if (atom_pos) os << ")";
      return;
    }
  }
}

std::string ut_show(const UTypePtr& t) {
  if (!t) return "<null>";
  std::ostringstream os;
  ut_show_rec(t, os, false);
  return os.str();
}

// ---------------------------------------------------------------------------
// RType
// ---------------------------------------------------------------------------

static RTypePtr mk_rt(RType&& r) { return std::make_shared<const RType>(std::move(r)); }

RTypePtr rt_base(const std::string& vname, Sort s, PredPtr p) {
  RType r;
  r.kind = RKind::Base;
  r.vname = vname;
  r.sort = s;
  r.pred = p ? p : p_true();
  return mk_rt(std::move(r));
}

RTypePtr rt_tvar(const std::string& a) {
  RType r;
  r.kind = RKind::TVar;
  r.name = a;
  return mk_rt(std::move(r));
}

RTypePtr rt_con(const std::string& name, std::vector<RTypePtr> args) {
  RType r;
  r.kind = RKind::Con;
  r.name = name;
  r.args = std::move(args);
  return mk_rt(std::move(r));
}

RTypePtr rt_fun(const std::string& x, RTypePtr in, RTypePtr out) {
  RType r;
  r.kind = RKind::Fun;
  r.name = x;
  r.in_t = std::move(in);
  r.out_t = std::move(out);
  return mk_rt(std::move(r));
}

RTypePtr rt_all(const std::string& a, RTypePtr body) {
  RType r;
  r.kind = RKind::All;
  r.name = a;
  r.body = std::move(body);
  return mk_rt(std::move(r));
}

bool rt_equal(const RTypePtr& a, const RTypePtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case RKind::Base:
      return a->vname == b->vname && a->sort == b->sort && p_equal(a->pred, b->pred);
    case RKind::TVar:
      return a->name == b->name;
    case RKind::Con: {
      if (a->name != b->name || a->args.size() != b->args.size()) return false;
      for (size_t i = 0; i < a->args.size(); ++i)
        if (!rt_equal(a->args[i], b->args[i])) return false;
      return true;
    }
    case RKind::Fun:
      return a->name == b->name && rt_equal(a->in_t, b->in_t) && rt_equal(a->out_t, b->out_t);
    case RKind::All:
      return a->name == b->name && rt_equal(a->body, b->body);
  }
  return false;
}

static void rt_show_rec(const RTypePtr& t, std::ostringstream& os, bool atom_pos) {
  switch (t->kind) {
    case RKind::Base: {
      if (p_is_true(t->pred)) {
        os << t->sort.show();
      } else {
        os << "{" << t->vname << ":" << t->sort.show() << " | " << p_show(t->pred) << "}";
      }
      return;
    }
    case RKind::TVar:
      os << t->name;
      return;
    case RKind::Con: {
      bool paren = atom_pos && !t->args.empty();
      if (paren) os << "(";
      os << t->name;
      for (auto& a : t->args) {
        os << " ";
        rt_show_rec(a, os, true);
      }
      if (paren) os << ")";
      return;
    }
    case RKind::Fun: {
      if (atom_pos) os << "(";
      os << t->name << ":";
      rt_show_rec(t->in_t, os, true);
      os << " -> ";
      rt_show_rec(t->out_t, os, false);
      if (atom_pos) os << ")";
      return;
    }
    case RKind::All: {
      if (atom_pos) os << "(";
      os << "forall " << t->name << ". ";
      rt_show_rec(t->body, os, false);
      if (atom_pos) os << ")";
      return;
    }
  }
}

std::string rt_show(const RTypePtr& t) {
  if (!t) return "<null>";
  std::ostringstream os;
  rt_show_rec(t, os, false);
  return os.str();
}

void rt_free_vars(const RTypePtr& t, std::set<std::string>& out) {
  if (!t) return;
  switch (t->kind) {
    case RKind::Base: {
      std::map<std::string, Sort> fv;
      p_free_vars(t->pred, fv);
      for (auto& [n, s] : fv) {
        (void)s;
        if (n != t->vname) out.insert(n);
      }
      return;
    }
    case RKind::TVar:
      return;
    case RKind::Con:
      for (auto& a : t->args) rt_free_vars(a, out);
      return;
    case RKind::Fun: {
      rt_free_vars(t->in_t, out);
      std::set<std::string> o;
      rt_free_vars(t->out_t, o);
      o.erase(t->name);
      out.insert(o.begin(), o.end());
      return;
    }
    case RKind::All:
      rt_free_vars(t->body, out);
      return;
  }
}

RTypePtr rt_subst_var(const RTypePtr& t, const std::string& from, const std::string& to) {
  if (!t || from == to) return t;
  switch (t->kind) {
    case RKind::Base: {
      if (t->vname == from) return t;  // bound occurrences only
      if (t->vname == to) {
        // Rename the value binder away from the incoming name.
        std::map<std::string, Sort> fv;
        p_free_vars(t->pred, fv);
        std::set<std::string> taken{from, to};
        for (auto& [n, s] : fv) {
          (void)s;
          taken.insert(n);
        }
        std::string v2 = fresh_name(t->vname, taken);
        auto p2 = p_subst(t->pred, {{t->vname, v2}});
        return rt_base(v2, t->sort, p_subst(p2, {{from, to}}));
      }
      auto p2 = p_subst(t->pred, {{from, to}});
      return p2.get() == t->pred.get() ? t : rt_base(t->vname, t->sort, p2);
    }
    case RKind::TVar:
      return t;
    case RKind::Con: {
      std::vector<RTypePtr> args;
      args.reserve(t->args.size());
      bool changed = false;
      for (auto& a : t->args) {
        auto b = rt_subst_var(a, from, to);
        changed = changed || b.get() != a.get();
        args.push_back(std::move(b));
      }
      return changed ? rt_con(t->name, std::move(args)) : t;
    }
    case RKind::Fun: {
      auto in = rt_subst_var(t->in_t, from, to);
      if (t->name == from) {
        return in.get() == t->in_t.get() ? t : rt_fun(t->name, std::move(in), t->out_t);
      }
      if (t->name == to) {
        std::set<std::string> fv_out;
        rt_free_vars(t->out_t, fv_out);
        fv_out.insert(from);
        fv_out.insert(to);
        std::string x2 = fresh_name(t->name, fv_out);
        auto out1 = rt_subst_var(t->out_t, t->name, x2);
        return rt_fun(x2, std::move(in), rt_subst_var(out1, from, to));
      }
      auto out = rt_subst_var(t->out_t, from, to);
      if (in.get() == t->in_t.get() && out.get() == t->out_t.get()) return t;
      return rt_fun(t->name, std::move(in), std::move(out));
    }
    case RKind::All: {
      auto body = rt_subst_var(t->body, from, to);
      return body.get() == t->body.get() ? t : rt_all(t->name, std::move(body));
    }
  }
  return t;
}

RTypePtr rt_subst_tyvar(const RTypePtr& t, const std::string& a, const RTypePtr& to) {
  if (!t) return t;
  switch (t->kind) {
    case RKind::Base:
      return t;
    case RKind::TVar:
      return t->name == a ? to : t;
    case RKind::Con: {
      std::vector<RTypePtr> args;
      args.reserve(t->args.size());
      bool changed = false;
      for (auto& x : t->args) {
        auto y = rt_subst_tyvar(x, a, to);
        changed = changed || y.get() != x.get();
        args.push_back(std::move(y));
      }
      return changed ? rt_con(t->name, std::move(args)) : t;
    }
    case RKind::Fun: {
      auto in = rt_subst_tyvar(t->in_t, a, to);
      auto out = rt_subst_tyvar(t->out_t, a, to);
      if (in.get() == t->in_t.get() && out.get() == t->out_t.get()) return t;
      return rt_fun(t->name, std::move(in), std::move(out));
    }
    case RKind::All: {
      if (t->name == a) return t;
      auto body = rt_subst_tyvar(t->body, a, to);
      return body.get() == t->body.get() ? t : rt_all(t->name, std::move(body));
    }
  }
  return t;
}

void rt_kvars(const RTypePtr& t, std::set<std::string>& out) {
  if (!t) return;
  switch (t->kind) {
    case RKind::Base:
      p_kvars(t->pred, out);
      return;
    case RKind::TVar:
      return;
    case RKind::Con:
      for (auto& a : t->args) rt_kvars(a, out);
      return;
    case RKind::Fun:
      rt_kvars(t->in_t, out);
      rt_kvars(t->out_t, out);
      return;
    case RKind::All:
      rt_kvars(t->body, out);
      return;
  }
}

UTypePtr shape(const RTypePtr& t) {
  switch (t->kind) {
    case RKind::Base:
      return ut_base(t->sort);
    case RKind::TVar:
      return ut_tvar(t->name);
    case RKind::Con: {
      std::vector<UTypePtr> args;
      args.reserve(t->args.size());
      for (auto& a : t->args) args.push_back(shape(a));
      return ut_con(t->name, std::move(args));
    }
    case RKind::Fun:
      return ut_fun(shape(t->in_t), shape(t->out_t));
    case RKind::All:
      return ut_all(t->name, shape(t->body));
  }
  return nullptr;
}

RTypePtr rt_strip_alls(RTypePtr t, std::vector<std::string>& tyvars) {
  while (t && t->kind == RKind::All) {
    tyvars.push_back(t->name);
    t = t->body;
  }
  return t;
}

// ---------------------------------------------------------------------------
// Expr
// ---------------------------------------------------------------------------

static ExprPtr mk_e(Expr&& e) { return std::make_shared<const Expr>(std::move(e)); }

ExprPtr e_var(const std::string& x, int line, int col) {
  Expr e;
  e.kind = EKind::Var;
  e.name = x;
  e.line = line;
  e.col = col;
  return mk_e(std::move(e));
}

ExprPtr e_lit_int(long long n, int line, int col) {
  Expr e;
  e.kind = EKind::LitInt;
  e.int_val = n;
  e.line = line;
  e.col = col;
  return mk_e(std::move(e));
}

ExprPtr e_lit_bool(bool b, int line, int col) {
  Expr e;
  e.kind = EKind::LitBool;
  e.bool_val = b;
  e.line = line;
  e.col = col;
  return mk_e(std::move(e));
}

ExprPtr e_lit_unit(int line, int col) {
  Expr e;
  e.kind = EKind::LitUnit;
  e.line = line;
  e.col = col;
  return mk_e(std::move(e));
}

ExprPtr e_app(ExprPtr fn, ExprPtr arg, int line, int col) {
  Expr e;
  e.kind = EKind::App;
  e.fn = std::move(fn);
  e.arg = std::move(arg);
  e.line = line;
  e.col = col;
  return mk_e(std::move(e));
}

ExprPtr e_lam(const std::string& x, UTypePtr annot, ExprPtr body, int line, int col) {
  Expr e;
  e.kind = EKind::Lam;
  e.name = x;
  e.lam_annot = std::move(annot);
  e.e1 = std::move(body);
  e.line = line;
  e.col = col;
  return mk_e(std::move(e));
}

ExprPtr e_let(const std::string& x, ExprPtr bound, ExprPtr body, int line, int col) {
  Expr e;
  e.kind = EKind::Let;
  e.name = x;
  e.e1 = std::move(bound);
  e.e2 = std::move(body);
  e.line = line;
  e.col = col;
  return mk_e(std::move(e));
}

ExprPtr e_if(ExprPtr c, ExprPtr t, ExprPtr el, int line, int col) {
  Expr e;
  e.kind = EKind::If;
  e.e1 = std::move(c);
  e.e2 = std::move(t);
  e.e3 = std::move(el);
  e.line = line;
  e.col = col;
  return mk_e(std::move(e));
}

ExprPtr e_inst(ExprPtr head, UTypePtr sh, int line, int col) {
  Expr e;
  e.kind = EKind::Inst;
  e.e1 = std::move(head);
  e.shape = std::move(sh);
  e.line = line;
  e.col = col;
  return mk_e(std::move(e));
}

ExprPtr e_tyapp(ExprPtr head, UTypePtr sh, int group, int line, int col) {
  Expr e;
  e.kind = EKind::TyApp;
  e.e1 = std::move(head);
  e.shape = std::move(sh);
  e.group = group;
  e.line = line;
  e.col = col;
  return mk_e(std::move(e));
}

static void expr_show_rec(const ExprPtr& e, std::ostringstream& os, bool atom_pos) {
  switch (e->kind) {
    case EKind::Var:
      os << e->name;
      return;
    case EKind::LitInt:
      os << e->int_val;
      return;
    case EKind::LitBool:
      os << (e->bool_val ? "true" : "false");
      return;
    case EKind::LitUnit:
      os << "()";
      return;
    case EKind::App: {
      if (atom_pos) os << "(";
      expr_show_rec(e->fn, os, e->fn->kind != EKind::App && e->fn->kind != EKind::TyApp);
      os << " ";
      expr_show_rec(e->arg, os, true);
      if (atom_pos) os << ")";
      return;
    }
    case EKind::Lam: {
      if (atom_pos) os << "(";
      os << "\\" << e->name;
      if (e->lam_annot) os << ":" << ut_show(e->lam_annot);
      os << " -> ";
      expr_show_rec(e->e1, os, false);
      if (atom_pos) os << ")";
      return;
    }
    case EKind::Let: {
      if (atom_pos) os << "(";
      os << "let " << e->name << " = ";
      expr_show_rec(e->e1, os, false);
      os << " in ";
      expr_show_rec(e->e2, os, false);
      if (atom_pos) os << ")";
      return;
    }
    case EKind::If: {
      if (atom_pos) os << "(";
      os << "if ";
      expr_show_rec(e->e1, os, false);
      os << " then ";
      expr_show_rec(e->e2, os, false);
      os << " else ";
      expr_show_rec(e->e3, os, false);
      if (atom_pos) os << ")";
      return;
    }
    case EKind::Inst: {
      if (atom_pos) os << "(";
      expr_show_rec(e->e1, os, true);
      os << " @" << ut_show(e->shape);
      if (atom_pos) os << ")";
      return;
    }
    case EKind::TyApp: {
      if (atom_pos) os << "(";
      expr_show_rec(e->e1, os, e->e1->kind != EKind::App && e->e1->kind != EKind::TyApp);
      os << " [" << ut_show(e->shape) << "]";
      if (atom_pos) os << ")";
      return;
    }
  }
}

std::string expr_show(const ExprPtr& e) {
  if (!e) return "<null>";
  std::ostringstream os;
  expr_show_rec(e, os, false);
  return os.str();
}

}  // namespace fusion
