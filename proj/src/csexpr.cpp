#include "fusion/csexpr.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace fusion {

namespace {
std::string sort_sx(const Sort& s) {
  switch (s.kind) {
    case Sort::Kind::Int:
      return "Int";
    case Sort::Kind::Bool:
      return "Bool";
    case Sort::Kind::Unit:
      return "Unit";
    case Sort::Kind::Opaque:
      return s.name;
  }
  return "?";
}

void term_sx(const FormulaPtr& f, std::ostringstream& os) {
  switch (f->kind) {
    case FKind::IntLit:
      os << f->int_val;
      return;
    case FKind::BoolLit:
      os << (f->bool_val ? "true" : "false");
      return;
    case FKind::Var:
      os << f->name;
      return;
    case FKind::Add:
    case FKind::Sub:
    case FKind::Mul: {
      const char* op = f->kind == FKind::Add ? "+" : f->kind == FKind::Sub ? "-" : "*";
      os << "(" << op << " ";
      term_sx(f->kids[0], os);
      os << " ";
      term_sx(f->kids[1], os);
      os << ")";
      return;
    }
    case FKind::Neg:
      os << "(- ";
      term_sx(f->kids[0], os);
      os << ")";
      return;
    case FKind::Cmp: {
      const char* op = f->cmp == CmpOp::Le   ? "<="
                       : f->cmp == CmpOp::Lt ? "<"
                       : f->cmp == CmpOp::Ge ? ">="
                                             : ">";
      os << "(" << op << " ";
      term_sx(f->kids[0], os);
      os << " ";
      term_sx(f->kids[1], os);
      os << ")";
      return;
    }
    case FKind::Eq:
      os << "(= ";
      term_sx(f->kids[0], os);
      os << " ";
      term_sx(f->kids[1], os);
      os << ")";
      return;
    case FKind::Not:
      os << "(not ";
      term_sx(f->kids[0], os);
      os << ")";
      return;
    case FKind::And:
    case FKind::Or:
    case FKind::Implies: {
      const char* op = f->kind == FKind::And ? "and" : f->kind == FKind::Or ? "or" : "=>";
      os << "(" << op << " ";
      term_sx(f->kids[0], os);
      os << " ";
      term_sx(f->kids[1], os);
      os << ")";
      return;
    }
    case FKind::App: {
      os << "(" << f->name;
      for (const auto& k : f->kids) {
        os << " ";
        term_sx(k, os);
      }
      os << ")";
      return;
    }
    case FKind::Exists:
      os << "(exists (" << f->name << " " << sort_sx(f->sort) << ") ";
      term_sx(f->kids[0], os);
      os << ")";
      return;
  }
}

void pred_sx(const PredPtr& p, std::ostringstream& os) {
  switch (p->kind) {
    case PKind::Conc:
      term_sx(p->conc, os);
      return;
    case PKind::KApp:
      os << "($" << p->kvar;
      for (const auto& a : p->args) os << " " << a;
      os << ")";
      return;
    case PKind::And:
    case PKind::Or:
      os << (p->kind == PKind::And ? "(and " : "(or ");
      pred_sx(p->l, os);
      os << " ";
      pred_sx(p->r, os);
      os << ")";
      return;
    case PKind::Exists:
      os << "(exists (" << p->bind_name << " " << sort_sx(p->bind_sort) << ") ";
      pred_sx(p->body, os);
      os << ")";
      return;
  }
}

void cons_sx(const ConstraintPtr& c, int indent, std::ostringstream& os) {
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  switch (c->kind) {
    case CKind::Leaf:
      os << pad << "(head ";
      pred_sx(c->pred, os);
      os << ")";
      return;
    case CKind::Conj:
      os << pad << "(and\n";
      cons_sx(c->l, indent + 1, os);
      os << "\n";
      cons_sx(c->r, indent + 1, os);
      os << ")";
      return;
    case CKind::Forall: {
      os << pad << "(forall (" << c->bind << " " << sort_sx(c->sort) << ") ";
      pred_sx(c->hyp, os);
      os << "\n";
      cons_sx(c->body, indent + 1, os);
      os << ")";
      return;
    }
  }
}
}  // namespace

std::string csexpr_dump(const KVarRegistry& kvars, const ConstraintPtr& c) {
  std::ostringstream os;
  os << "(fusion-constraints\n";
  for (const auto& name : kvars.names()) {
    const KVarInfo& info = kvars.at(name);
    os << "  (kvar " << name;
    for (const auto& [pn, ps] : info.params) os << " (" << pn << " " << sort_sx(ps) << ")";
    if (info.toplevel) os << " :toplevel";
    os << ")\n";
  }
  os << "  (constraint\n";
  cons_sx(c, 2, os);
  os << "))\n";
  return os.str();
}

// --- parsing -------------------------------------------------------------------

namespace {
struct SNode {
  bool atom = false;
  std::string text;
  std::vector<SNode> kids;
};

struct SReader {
  const std::string& s;
  size_t i = 0;

  explicit SReader(const std::string& text) : s(text) {}

  void skip() {
    while (i < s.size()) {
      if (std::isspace(static_cast<unsigned char>(s[i]))) {
        ++i;
      } else if (s[i] == ';') {
        while (i < s.size() && s[i] != '\n') ++i;
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error("csexpr: " + msg + " at offset " + std::to_string(i));
  }

  SNode read() {
    skip();
    if (i >= s.size()) fail("unexpected end of input");
    if (s[i] == '(') {
      ++i;
      SNode n;
      while (true) {
        skip();
        if (i >= s.size()) fail("unterminated list");
        if (s[i] == ')') {
          ++i;
          return n;
        }
        n.kids.push_back(read());
      }
    }
    if (s[i] == ')') fail("unexpected ')'");
    SNode n;
    n.atom = true;
    size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '(' &&
           s[i] != ')' && s[i] != ';')
      ++i;
    n.text = s.substr(start, i - start);
    return n;
  }
};

bool is_integer(const std::string& t) {
  size_t j = (t.size() > 1 && t[0] == '-') ? 1 : 0;
  if (j >= t.size()) return false;
  for (; j < t.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(t[j]))) return false;
  return true;
}

[[noreturn]] void bad(const std::string& what) { throw std::runtime_error("csexpr: " + what); }

Sort parse_sort(const SNode& n) {
  if (!n.atom) bad("expected sort");
  if (n.text == "Int") return Sort::mk_int();
  if (n.text == "Bool") return Sort::mk_bool();
  if (n.text == "Unit") return Sort::mk_unit();
  return Sort::opaque(n.text);
}

using VarEnv = std::map<std::string, Sort>;

FormulaPtr parse_term(const SNode& n, const VarEnv& env);

FormulaPtr fold_bin(const SNode& n, const VarEnv& env, FormulaPtr (*op)(FormulaPtr, FormulaPtr)) {
  if (n.kids.size() < 3) bad("operator needs at least two operands");
  FormulaPtr acc = parse_term(n.kids[1], env);
  for (size_t j = 2; j < n.kids.size(); ++j) acc = op(acc, parse_term(n.kids[j], env));
  return acc;
}

FormulaPtr parse_term(const SNode& n, const VarEnv& env) {
  if (n.atom) {
    if (n.text == "true") return f_true();
    if (n.text == "false") return f_false();
    if (is_integer(n.text)) return f_int(std::stoll(n.text));
    auto it = env.find(n.text);
    return f_var(n.text, it == env.end() ? Sort::opaque("?") : it->second);
  }
  if (n.kids.empty() || !n.kids[0].atom) bad("expected operator");
  const std::string& op = n.kids[0].text;
  auto arg = [&](size_t j) { return parse_term(n.kids[j], env); };
  if (op == "+") return fold_bin(n, env, f_add);
  if (op == "-") {
    if (n.kids.size() == 2) return f_neg(arg(1));
    return fold_bin(n, env, f_sub);
  }
  if (op == "*") return fold_bin(n, env, f_mul);
  if (op == "<=" || op == "<" || op == ">=" || op == ">") {
    if (n.kids.size() != 3) bad("comparison needs two operands");
    CmpOp c = op == "<=" ? CmpOp::Le : op == "<" ? CmpOp::Lt : op == ">=" ? CmpOp::Ge : CmpOp::Gt;
    return f_cmp(c, arg(1), arg(2));
  }
  if (op == "=") {
    if (n.kids.size() != 3) bad("= needs two operands");
    return f_eq(arg(1), arg(2));
  }
  if (op == "and") return fold_bin(n, env, f_and);
  if (op == "or") return fold_bin(n, env, f_or);
  if (op == "=>") {
    if (n.kids.size() != 3) bad("=> needs two operands");
    return f_implies(arg(1), arg(2));
  }
  if (op == "not") {
    if (n.kids.size() != 2) bad("not needs one operand");
    return f_not(arg(1));
  }
  if (op == "exists") {
    if (n.kids.size() != 3 || n.kids[1].kids.size() != 2) bad("malformed exists");
    std::string x = n.kids[1].kids[0].text;
    Sort s = parse_sort(n.kids[1].kids[1]);
    VarEnv inner = env;
    inner[x] = s;
    return f_exists(x, s, parse_term(n.kids[2], inner));
  }
  // Uninterpreted application; the result sort is not recorded in the dump,
  // so Int (the only measure result sort we emit) is assumed.
  std::vector<FormulaPtr> args;
  for (size_t j = 1; j < n.kids.size(); ++j) args.push_back(parse_term(n.kids[j], env));
  return f_app(op, std::move(args), Sort::mk_int());
}

PredPtr parse_pred(const SNode& n, const VarEnv& env) {
  if (!n.atom && !n.kids.empty() && n.kids[0].atom && !n.kids[0].text.empty() &&
      n.kids[0].text[0] == '$') {
    std::vector<std::string> args;
    for (size_t j = 1; j < n.kids.size(); ++j) {
      if (!n.kids[j].atom) bad("kappa argument must be a variable");
      args.push_back(n.kids[j].text);
    }
    return p_kapp(n.kids[0].text.substr(1), std::move(args));
  }
  if (!n.atom && !n.kids.empty() && n.kids[0].atom) {
    const std::string& op = n.kids[0].text;
    if (op == "and" || op == "or") {
      if (n.kids.size() < 3) bad("and/or needs two operands");
      PredPtr acc = parse_pred(n.kids[1], env);
      for (size_t j = 2; j < n.kids.size(); ++j) {
        PredPtr rhs = parse_pred(n.kids[j], env);
        acc = op == "and" ? p_and(acc, rhs) : p_or(acc, rhs);
      }
      return acc;
    }
    if (op == "exists") {
      if (n.kids.size() != 3 || n.kids[1].kids.size() != 2) bad("malformed exists");
      std::string x = n.kids[1].kids[0].text;
      Sort s = parse_sort(n.kids[1].kids[1]);
      VarEnv inner = env;
      inner[x] = s;
      return p_exists(x, s, parse_pred(n.kids[2], inner));
    }
  }
  return p_conc(parse_term(n, env));
}

ConstraintPtr parse_cons(const SNode& n, const VarEnv& env) {
  if (n.atom || n.kids.empty() || !n.kids[0].atom) bad("expected constraint");
  const std::string& op = n.kids[0].text;
  if (op == "head") {
    if (n.kids.size() != 2) bad("head needs one predicate");
    return c_leaf_raw(parse_pred(n.kids[1], env));
  }
  if (op == "and") {
    if (n.kids.size() < 3) bad("constraint and needs two parts");
    ConstraintPtr acc = parse_cons(n.kids[1], env);
    for (size_t j = 2; j < n.kids.size(); ++j) acc = c_conj_raw(acc, parse_cons(n.kids[j], env));
    return acc;
  }
  if (op == "forall") {
    if (n.kids.size() != 4 || n.kids[1].kids.size() != 2) bad("malformed forall");
    std::string x = n.kids[1].kids[0].text;
    Sort s = parse_sort(n.kids[1].kids[1]);
    VarEnv inner = env;
    inner[x] = s;
    return c_forall_raw(x, s, parse_pred(n.kids[2], inner), parse_cons(n.kids[3], inner));
  }
  bad("unknown constraint form: " + op);
}
}  // namespace

ParsedConstraints csexpr_parse(const std::string& text) {
  SReader r(text);
  SNode root = r.read();
  if (root.atom || root.kids.empty() || !root.kids[0].atom ||
      root.kids[0].text != "fusion-constraints")
    bad("expected (fusion-constraints ...)");
  ParsedConstraints out;
  out.constraint = c_trivial();
  for (size_t j = 1; j < root.kids.size(); ++j) {
    const SNode& n = root.kids[j];
    if (n.atom || n.kids.empty() || !n.kids[0].atom) bad("expected kvar or constraint");
    if (n.kids[0].text == "kvar") {
      if (n.kids.size() < 2 || !n.kids[1].atom) bad("malformed kvar");
      std::vector<std::pair<std::string, Sort>> params;
      bool toplevel = false;
      for (size_t k = 2; k < n.kids.size(); ++k) {
        if (n.kids[k].atom) {
          if (n.kids[k].text == ":toplevel")
            toplevel = true;
          else
            bad("unexpected kvar attribute: " + n.kids[k].text);
        } else {
          if (n.kids[k].kids.size() != 2) bad("malformed kvar parameter");
          params.emplace_back(n.kids[k].kids[0].text, parse_sort(n.kids[k].kids[1]));
        }
      }
      out.kvars.declare(n.kids[1].text, std::move(params), toplevel);
    } else if (n.kids[0].text == "constraint") {
      if (n.kids.size() != 2) bad("constraint section needs one body");
      out.constraint = parse_cons(n.kids[1], {});
    } else {
      bad("unknown section: " + n.kids[0].text);
    }
  }
  return out;
}

}  // namespace fusion
