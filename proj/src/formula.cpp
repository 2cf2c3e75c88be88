#include "fusion/formula.hpp"

#include <functional>
#include <sstream>
#include <unordered_map>

namespace fusion {

namespace {
FormulaPtr node(Formula&& f) { return std::make_shared<const Formula>(std::move(f)); }

const FormulaPtr kTrue = [] {
  Formula f;
  f.kind = FKind::BoolLit;
  f.bool_val = true;
  return node(std::move(f));
}();
const FormulaPtr kFalse = [] {
  Formula f;
  f.kind = FKind::BoolLit;
  f.bool_val = false;
  return node(std::move(f));
}();
}  // namespace

FormulaPtr f_int(long long v) {
  Formula f;
  f.kind = FKind::IntLit;
  f.int_val = v;
  return node(std::move(f));
}

FormulaPtr f_bool(bool b) { return b ? kTrue : kFalse; }
FormulaPtr f_true() { return kTrue; }
FormulaPtr f_false() { return kFalse; }

FormulaPtr f_var(std::string name, Sort s) {
  Formula f;
  f.kind = FKind::Var;
  f.name = std::move(name);
  f.sort = std::move(s);
  return node(std::move(f));
}

namespace {
FormulaPtr binop(FKind k, FormulaPtr a, FormulaPtr b) {
  Formula f;
  f.kind = k;
  f.kids = {std::move(a), std::move(b)};
  return node(std::move(f));
}
}  // namespace

FormulaPtr f_add(FormulaPtr a, FormulaPtr b) { return binop(FKind::Add, std::move(a), std::move(b)); }
FormulaPtr f_sub(FormulaPtr a, FormulaPtr b) { return binop(FKind::Sub, std::move(a), std::move(b)); }

FormulaPtr f_neg(FormulaPtr a) {
  Formula f;
  f.kind = FKind::Neg;
  f.kids = {std::move(a)};
  return node(std::move(f));
}

FormulaPtr f_mul(FormulaPtr a, FormulaPtr b) { return binop(FKind::Mul, std::move(a), std::move(b)); }

FormulaPtr f_cmp(CmpOp op, FormulaPtr a, FormulaPtr b) {
  Formula f;
  f.kind = FKind::Cmp;
  f.cmp = op;
  f.kids = {std::move(a), std::move(b)};
  return node(std::move(f));
}

FormulaPtr f_eq(FormulaPtr a, FormulaPtr b) { return binop(FKind::Eq, std::move(a), std::move(b)); }

FormulaPtr f_not(FormulaPtr a) {
  if (is_true(a)) return kFalse;
  if (is_false(a)) return kTrue;
  Formula f;
  f.kind = FKind::Not;
  f.kids = {std::move(a)};
  return node(std::move(f));
}

FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
  if (is_true(a)) return b;
  if (is_true(b)) return a;
  if (is_false(a) || is_false(b)) return kFalse;
  return binop(FKind::And, std::move(a), std::move(b));
}

FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
  if (is_false(a)) return b;
  if (is_false(b)) return a;
  if (is_true(a) || is_true(b)) return kTrue;
  return binop(FKind::Or, std::move(a), std::move(b));
}

FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) {
  if (is_true(a)) return b;
  if (is_false(a) || is_true(b)) return kTrue;
  return binop(FKind::Implies, std::move(a), std::move(b));
}

FormulaPtr f_app(std::string fn, std::vector<FormulaPtr> args, Sort result) {
  Formula f;
  f.kind = FKind::App;
  f.name = std::move(fn);
  f.kids = std::move(args);
  f.sort = std::move(result);
  return node(std::move(f));
}

FormulaPtr f_exists(std::string x, Sort s, FormulaPtr body) {
  if (is_true(body)) return kTrue;
  if (is_false(body)) return kFalse;
  Formula f;
  f.kind = FKind::Exists;
  f.name = std::move(x);
  f.sort = std::move(s);
  f.kids = {std::move(body)};
  return node(std::move(f));
}

bool is_true(const FormulaPtr& f) { return f && f->kind == FKind::BoolLit && f->bool_val; }
bool is_false(const FormulaPtr& f) { return f && f->kind == FKind::BoolLit && !f->bool_val; }

bool f_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->int_val != b->int_val || a->bool_val != b->bool_val ||
      a->cmp != b->cmp || a->name != b->name || !(a->sort == b->sort) ||
      a->kids.size() != b->kids.size())
    return false;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (!f_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

void f_free_vars(const FormulaPtr& f, std::map<std::string, Sort>& out) {
  if (!f) return;
  switch (f->kind) {
    case FKind::Var:
      out.emplace(f->name, f->sort);
      return;
    case FKind::Exists: {
      std::map<std::string, Sort> inner;
      f_free_vars(f->kids[0], inner);
      inner.erase(f->name);
      out.insert(inner.begin(), inner.end());
      return;
    }
    default:
      for (const auto& k : f->kids) f_free_vars(k, out);
  }
}

std::map<std::string, Sort> f_free_vars(const FormulaPtr& f) {
  std::map<std::string, Sort> out;
  f_free_vars(f, out);
  return out;
}

FormulaPtr f_subst(const FormulaPtr& f, const std::map<std::string, std::string>& m) {
  if (!f || m.empty()) return f;
  switch (f->kind) {
    case FKind::IntLit:
    case FKind::BoolLit:
      return f;
    case FKind::Var: {
      auto it = m.find(f->name);
      if (it == m.end()) return f;
      return f_var(it->second, f->sort);
    }
    case FKind::Exists: {
      std::map<std::string, std::string> inner = m;
      inner.erase(f->name);
      // Rename the binder if it collides with any substitution target.
      bool captures = false;
      for (const auto& [from, to] : inner)
        if (to == f->name) captures = true;
      if (captures) {
        std::set<std::string> taken;
        for (const auto& [from, to] : inner) {
          taken.insert(from);
          taken.insert(to);
        }
        for (const auto& [v, s] : f_free_vars(f->kids[0])) taken.insert(v);
        std::string nb = fresh_name(f->name, taken);
        std::map<std::string, std::string> rename{{f->name, nb}};
        return f_exists(nb, f->sort, f_subst(f_subst(f->kids[0], rename), inner));
      }
      if (inner.empty()) return f;
      return f_exists(f->name, f->sort, f_subst(f->kids[0], inner));
    }
    default: {
      Formula g = *f;
      bool changed = false;
      for (auto& k : g.kids) {
        FormulaPtr nk = f_subst(k, m);
        if (nk != k) changed = true;
        k = std::move(nk);
      }
      if (!changed) return f;
      return node(std::move(g));
    }
  }
}

namespace {
std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  if (s < a) return UINT64_MAX;
  return s;
}

std::uint64_t atoms_rec(const Formula* f, std::unordered_map<const Formula*, std::uint64_t>& memo) {
  auto it = memo.find(f);
  if (it != memo.end()) return it->second;
  std::uint64_t n = 0;
  switch (f->kind) {
    case FKind::BoolLit:
    case FKind::Var:  // bool var used as an atom; int vars appear under atoms anyway
    case FKind::Cmp:
    case FKind::Eq:
    case FKind::App:
      n = 1;
      break;
    case FKind::IntLit:
    case FKind::Add:
    case FKind::Sub:
    case FKind::Neg:
    case FKind::Mul:
      n = 1;  // a bare term position; counted as one atom site
      break;
    case FKind::Not:
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Exists:
      for (const auto& k : f->kids) n = sat_add(n, atoms_rec(k.get(), memo));
      break;
  }
  memo.emplace(f, n);
  return n;
}
}  // namespace

std::uint64_t f_atoms(const FormulaPtr& f) {
  if (!f) return 0;
  std::unordered_map<const Formula*, std::uint64_t> memo;
  return atoms_rec(f.get(), memo);
}

namespace {
const char* cmp_sym(CmpOp op) {
  switch (op) {
    case CmpOp::Le: return "<=";
    case CmpOp::Lt: return "<";
    case CmpOp::Ge: return ">=";
    case CmpOp::Gt: return ">";
  }
  return "?";
}

// Precedence levels for printing: 0 =>, 1 ||, 2 &&, 3 not, 4 cmp/eq, 5 +-,
// 6 * / neg, 7 atoms.
void show_rec(const FormulaPtr& f, int parent_prec, std::ostringstream& os) {
  auto paren = [&](int prec, auto&& body) {
    if (prec < parent_prec) {
      os << "(";
      body();
      os << ")";
    } else {
      body();
    }
  };
  switch (f->kind) {
    case FKind::IntLit:
      if (f->int_val < 0) {
        os << "(" << f->int_val << ")";
      } else {
        os << f->int_val;
      }
      break;
    case FKind::BoolLit:
      os << (f->bool_val ? "true" : "false");
      break;
    case FKind::Var:
      os << f->name;
      break;
    case FKind::Add:
      paren(5, [&] {
        show_rec(f->kids[0], 5, os);
        os << " + ";
        show_rec(f->kids[1], 6, os);
      });
      break;
    case FKind::Sub:
      paren(5, [&] {
        show_rec(f->kids[0], 5, os);
        os << " - ";
        show_rec(f->kids[1], 6, os);
      });
      break;
    case FKind::Neg:
      paren(6, [&] {
        os << "- ";
        show_rec(f->kids[0], 7, os);
      });
      break;
    case FKind::Mul:
      paren(6, [&] {
        show_rec(f->kids[0], 6, os);
        os << " * ";
        show_rec(f->kids[1], 7, os);
      });
      break;
    case FKind::Cmp:
      paren(4, [&] {
        show_rec(f->kids[0], 5, os);
        os << " " << cmp_sym(f->cmp) << " ";
        show_rec(f->kids[1], 5, os);
      });
      break;
    case FKind::Eq:
      paren(4, [&] {
        show_rec(f->kids[0], 5, os);
        os << " = ";
        show_rec(f->kids[1], 5, os);
      });
      break;
    case FKind::Not:
      paren(3, [&] {
        os << "not ";
        show_rec(f->kids[0], 4, os);
      });
      break;
    case FKind::And:
      paren(2, [&] {
        show_rec(f->kids[0], 2, os);
        os << " && ";
        show_rec(f->kids[1], 3, os);
      });
      break;
    case FKind::Or:
      paren(1, [&] {
        show_rec(f->kids[0], 1, os);
        os << " || ";
        show_rec(f->kids[1], 2, os);
      });
      break;
    case FKind::Implies:
      paren(0, [&] {
        show_rec(f->kids[0], 1, os);
        os << " => ";
        show_rec(f->kids[1], 0, os);
      });
      break;
    case FKind::App:
      paren(7, [&] {
        os << f->name;
        for (const auto& a : f->kids) {
          os << " ";
          show_rec(a, 8, os);
        }
      });
      break;
    case FKind::Exists:
      paren(0, [&] {
        os << "exists " << f->name << ":" << f->sort.show() << ". ";
        show_rec(f->kids[0], 0, os);
      });
      break;
  }
}
}  // namespace

std::string f_show(const FormulaPtr& f) {
  if (!f) return "<null>";
  std::ostringstream os;
  show_rec(f, 0, os);
  return os.str();
}

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  if (!taken.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + "_" + std::to_string(i);
    if (!taken.count(cand)) return cand;
  }
}

}  // namespace fusion
