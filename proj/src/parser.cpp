#include "fusion/parser.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace fusion {

namespace {

enum class Tok { End, LIdent, UIdent, IntLit, Sym, Kw };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  long long int_val = 0;
  int line = 1, col = 1;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> kws = {"let",    "in",   "if",    "then",  "else",
                                            "data",   "qualif", "exists", "forall", "true",
                                            "false",  "not"};
  return kws;
}

class Lexer {
 public:
  Lexer(const std::string& text, std::string file) : src_(text), file_(std::move(file)) {
    tokenize();
  }

  const Token& peek(size_t ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    std::ostringstream os;
    os << file_ << ":" << at.line << ":" << at.col << ": parse error: " << msg;
    throw ParseError(os.str(), at.line, at.col);
  }

 private:
  void tokenize() {
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](size_t n) {
      for (size_t k = 0; k < n; ++k) {
        if (src_[i + k] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
      }
      i += n;
    };
    while (i < src_.size()) {
      char c = src_[i];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance(1);
        continue;
      }
      if (c == '-' && i + 1 < src_.size() && src_[i + 1] == '-') {
        while (i < src_.size() && src_[i] != '\n') advance(1);
        continue;
      }
      Token t;
      t.line = line;
      t.col = col;
      if (std::isdigit(static_cast<unsigned char>(c))) {
        size_t j = i;
        while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
        t.kind = Tok::IntLit;
        t.text = src_.substr(i, j - i);
        t.int_val = std::stoll(t.text);
        advance(j - i);
        toks_.push_back(t);
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c))) {
        size_t j = i;
        while (j < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_' ||
                src_[j] == '\'')) {
          ++j;
        }
        t.text = src_.substr(i, j - i);
        if (keywords().count(t.text)) {
          t.kind = Tok::Kw;
        } else if (std::isupper(static_cast<unsigned char>(c))) {
          t.kind = Tok::UIdent;
        } else {
          t.kind = Tok::LIdent;
        }
        advance(j - i);
        toks_.push_back(t);
        continue;
      }
      // symbols, longest match first
      static const char* syms[] = {"::", "->", "=>", "==", "/=", "<=", ">=", "||", "&&",
                                   ":",  "=",  "<",  ">",  "+",  "-",  "*",  "/",  "\\",
                                   "(",  ")",  "{",  "}",  "[",  "]",  "|",  ".",  ",",
                                   ";",  "@",  "_"};
      bool matched = false;
      for (const char* s : syms) {
        size_t n = std::strlen(s);
        if (src_.compare(i, n, s) == 0) {
          t.kind = Tok::Sym;
          t.text = s;
          advance(n);
          toks_.push_back(t);
          matched = true;
          break;
        }
      }
      if (!matched) {
        std::ostringstream os;
        os << file_ << ":" << line << ":" << col << ": parse error: unexpected character '" << c
           << "'";
        throw ParseError(os.str(), line, col);
      }
    }
    Token end;
    end.kind = Tok::End;
    end.text = "<eof>";
    end.line = line;
    end.col = col;
    toks_.push_back(end);
  }

  std::string src_;
  std::string file_;
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

class Parser {
 public:
  Parser(const std::string& text, const std::string& file) : lx_(text, file) {}

  Program program() {
    Program p;
    std::map<std::string, size_t> sig_index;  // name -> index into pending sigs
    std::vector<TopLevel> pending;            // signatures awaiting a definition
    std::vector<bool> defined;
    while (lx_.peek().kind != Tok::End) {
      const Token& t = lx_.peek();
      if (t.kind == Tok::Kw && t.text == "data") {
        lx_.next();
        Token name = expect(Tok::UIdent, "data constructor name");
        Token arity = expect(Tok::IntLit, "data constructor arity");
        DataDecl d;
        d.name = name.text;
        d.arity = static_cast<int>(arity.int_val);
        d.line = name.line;
        d.col = name.col;
        p.datas.push_back(d);
        continue;
      }
      if (t.kind != Tok::LIdent) lx_.fail("expected a declaration", t);
      if (lx_.peek(1).kind == Tok::Sym && lx_.peek(1).text == "::") {
        Token name = lx_.next();
        lx_.next();  // ::
        if (sig_index.count(name.text)) lx_.fail("duplicate signature for '" + name.text + "'", name);
        saw_braces_ = false;
        RTypePtr sig = rtype_generalized();
        TopLevel tl;
        tl.name = name.text;
        tl.sig = sig;
        tl.has_refinements = saw_braces_;
        tl.line = name.line;
        tl.col = name.col;
        sig_index[name.text] = pending.size();
        pending.push_back(tl);
        defined.push_back(false);
        continue;
      }
      // definition: name args = expr
      Token name = lx_.next();
      std::vector<Token> params;
      while (lx_.peek().kind == Tok::LIdent) params.push_back(lx_.next());
      expect_sym("=");
      ExprPtr body = expr();
      for (auto it = params.rbegin(); it != params.rend(); ++it) {
        body = e_lam(it->text, nullptr, body, it->line, it->col);
      }
      auto idx = sig_index.find(name.text);
      if (idx == sig_index.end()) {
        lx_.fail("definition of '" + name.text + "' has no signature (signatures are required)",
                 name);
      }
      if (defined[idx->second]) lx_.fail("duplicate definition of '" + name.text + "'", name);
      pending[idx->second].def = body;
      defined[idx->second] = true;
    }
    for (size_t i = 0; i < pending.size(); ++i) {
      if (defined[i]) {
        p.tops.push_back(pending[i]);
      } else {
        p.assumes.push_back(pending[i]);
      }
    }
    return p;
  }

  std::vector<Qualifier> qualifiers() {
    std::vector<Qualifier> qs;
    while (lx_.peek().kind != Tok::End) {
      const Token& t = lx_.peek();
      if (!(t.kind == Tok::Kw && t.text == "qualif")) lx_.fail("expected 'qualif'", t);
      lx_.next();
      Token name = expect(Tok::UIdent, "qualifier name");
      expect_sym("(");
      Qualifier q;
      q.name = name.text;
      q.line = name.line;
      q.col = name.col;
      if (!at_sym(")")) {
        while (true) {
          Token pn = expect(Tok::LIdent, "qualifier parameter name");
          expect_sym(":");
          std::optional<Sort> s;
          if (at_sym("_")) {
            lx_.next();
          } else {
            s = base_sort();
          }
          q.params.emplace_back(pn.text, s);
          if (at_sym(",")) {
            lx_.next();
            continue;
          }
          break;
        }
      }
      expect_sym(")");
      expect_sym(":");
      q.body = pred0();
      qs.push_back(std::move(q));
    }
    return qs;
  }

  FormulaPtr formula_only() {
    FormulaPtr f = pred0();
    if (lx_.peek().kind != Tok::End) lx_.fail("trailing input after formula", lx_.peek());
    return f;
  }

  RTypePtr rtype_only() {
    RTypePtr t = rtype_generalized();
    if (lx_.peek().kind != Tok::End) lx_.fail("trailing input after type", lx_.peek());
    return t;
  }

 private:
  Lexer lx_;
  bool saw_braces_ = false;

  Token expect(Tok k, const std::string& what) {
    const Token& t = lx_.peek();
    if (t.kind != k) lx_.fail("expected " + what + ", found '" + t.text + "'", t);
    return lx_.next();
  }
  bool at_sym(const std::string& s) const {
    const Token& t = lx_.peek();
    return t.kind == Tok::Sym && t.text == s;
  }
  bool at_kw(const std::string& s) const {
    const Token& t = lx_.peek();
    return t.kind == Tok::Kw && t.text == s;
  }
  void expect_sym(const std::string& s) {
    if (!at_sym(s)) lx_.fail("expected '" + s + "', found '" + lx_.peek().text + "'", lx_.peek());
    lx_.next();
  }

  // --- sorts and types ------------------------------------------------------

  Sort base_sort() {
    const Token& t = lx_.peek();
    if (t.kind == Tok::UIdent) {
      if (t.text == "Int") {
        lx_.next();
        return Sort::mk_int();
      }
      if (t.text == "Bool") {
        lx_.next();
        return Sort::mk_bool();
      }
      if (t.text == "Unit") {
        lx_.next();
        return Sort::mk_unit();
      }
    }
    lx_.fail("expected a base sort (Int, Bool, Unit)", t);
  }

  bool at_base_sort() const {
    const Token& t = lx_.peek();
    return t.kind == Tok::UIdent && (t.text == "Int" || t.text == "Bool" || t.text == "Unit");
  }

  // forall-generalized type: explicit foralls or implicit generalization of
  // free lowercase type variables in first-appearance order.
  RTypePtr rtype_generalized() {
    if (at_kw("forall")) {
      lx_.next();
      std::vector<Token> vs;
      while (lx_.peek().kind == Tok::LIdent) vs.push_back(lx_.next());
      if (vs.empty()) lx_.fail("expected type variables after 'forall'", lx_.peek());
      expect_sym(".");
      RTypePtr body = rtype_generalized();
      for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = rt_all(it->text, body);
      return body;
    }
    RTypePtr t = rtype();
    std::vector<std::string> order;
    std::set<std::string> seen;
    collect_tyvars(t, {}, order, seen);
    for (auto it = order.rbegin(); it != order.rend(); ++it) t = rt_all(*it, t);
    return t;
  }

  static void collect_tyvars(const RTypePtr& t, std::set<std::string> bound,
                             std::vector<std::string>& order, std::set<std::string>& seen) {
    switch (t->kind) {
      case RKind::Base:
        return;
      case RKind::TVar:
        if (!bound.count(t->name) && !seen.count(t->name)) {
          seen.insert(t->name);
          order.push_back(t->name);
        }
        return;
      case RKind::Con:
        for (auto& a : t->args) collect_tyvars(a, bound, order, seen);
        return;
      case RKind::Fun:
        collect_tyvars(t->in_t, bound, order, seen);
        collect_tyvars(t->out_t, bound, order, seen);
        return;
      case RKind::All: {
        bound.insert(t->name);
        collect_tyvars(t->body, bound, order, seen);
        return;
      }
    }
  }

  RTypePtr rtype() {
    // optional dependent binder: `x :` lookahead
    std::string binder;
    if (lx_.peek().kind == Tok::LIdent && lx_.peek(1).kind == Tok::Sym &&
        lx_.peek(1).text == ":") {
      binder = lx_.next().text;
      lx_.next();  // :
    }
    RTypePtr arg = rtype_app();
    if (at_sym("->")) {
      lx_.next();
      RTypePtr out = rtype();
      if (binder.empty()) binder = "_a" + std::to_string(auto_binder_++);
      return rt_fun(binder, arg, out);
    }
    if (!binder.empty()) {
      lx_.fail("binder '" + binder + ":' must be followed by '->'", lx_.peek());
    }
    return arg;
  }

  RTypePtr rtype_app() {
    const Token& t = lx_.peek();
    if (t.kind == Tok::UIdent && !at_base_sort()) {
      Token name = lx_.next();
      std::vector<RTypePtr> args;
      while (at_rtype_atom_start()) args.push_back(rtype_atom());
      return rt_con(name.text, std::move(args));
    }
    return rtype_atom();
  }

  bool at_rtype_atom_start() const {
    const Token& t = lx_.peek();
    return (t.kind == Tok::UIdent) || (t.kind == Tok::LIdent) ||
           (t.kind == Tok::Sym && (t.text == "{" || t.text == "("));
  }

  RTypePtr rtype_atom() {
    const Token& t = lx_.peek();
    if (at_sym("{")) {
      saw_braces_ = true;
      lx_.next();
      Token v = expect(Tok::LIdent, "value binder");
      expect_sym(":");
      Sort s = base_sort();
      expect_sym("|");
      FormulaPtr p = pred0();
      expect_sym("}");
      return rt_base(v.text, s, p_conc(p));
    }
    if (at_sym("(")) {
      lx_.next();
      RTypePtr inner = rtype();
      expect_sym(")");
      return inner;
    }
    if (t.kind == Tok::UIdent) {
      if (at_base_sort()) {
        Sort s = base_sort();
        return rt_base("v", s, p_true());
      }
      Token name = lx_.next();
      return rt_con(name.text, {});
    }
    if (t.kind == Tok::LIdent) {
      Token name = lx_.next();
      return rt_tvar(name.text);
    }
    lx_.fail("expected a type", t);
  }

  // --- refinement formulas --------------------------------------------------

  FormulaPtr pred0() {
    if (at_kw("exists")) {
      lx_.next();
      Token x = expect(Tok::LIdent, "bound variable");
      expect_sym(":");
      Sort s = base_sort();
      expect_sym(".");
      FormulaPtr body = pred0();
      return f_exists(x.text, s, body);
    }
    FormulaPtr l = pred_or();
    if (at_sym("=>")) {
      lx_.next();
      FormulaPtr r = pred0();
      return f_implies(l, r);
    }
    return l;
  }

  FormulaPtr pred_or() {
    FormulaPtr l = pred_and();
    while (at_sym("||")) {
      lx_.next();
      l = f_or(l, pred_and());
    }
    return l;
  }

  FormulaPtr pred_and() {
    FormulaPtr l = pred_not();
    while (at_sym("&&")) {
      lx_.next();
      l = f_and(l, pred_not());
    }
    return l;
  }

  FormulaPtr pred_not() {
    if (at_kw("not")) {
      lx_.next();
      return f_not(pred_not());
    }
    return pred_cmp();
  }

  FormulaPtr pred_cmp() {
    FormulaPtr l = term_add();
    const Token& t = lx_.peek();
    if (t.kind == Tok::Sym) {
      if (t.text == "<=") {
        lx_.next();
        return f_cmp(CmpOp::Le, l, term_add());
      }
      if (t.text == "<") {
        lx_.next();
        return f_cmp(CmpOp::Lt, l, term_add());
      }
      if (t.text == ">=") {
        lx_.next();
        return f_cmp(CmpOp::Ge, l, term_add());
      }
      if (t.text == ">") {
        lx_.next();
        return f_cmp(CmpOp::Gt, l, term_add());
      }
      if (t.text == "=") {
        lx_.next();
        return f_eq(l, term_add());
      }
      if (t.text == "/=") {
        lx_.next();
        return f_not(f_eq(l, term_add()));
      }
    }
    return l;
  }

  FormulaPtr term_add() {
    FormulaPtr l = term_mul();
    while (at_sym("+") || at_sym("-")) {
      bool plus = lx_.peek().text == "+";
      lx_.next();
      FormulaPtr r = term_mul();
      l = plus ? f_add(l, r) : f_sub(l, r);
    }
    return l;
  }

  FormulaPtr term_mul() {
    FormulaPtr l = term_unary();
    while (at_sym("*")) {
      lx_.next();
      l = f_mul(l, term_unary());
    }
    return l;
  }

  FormulaPtr term_unary() {
    if (at_sym("-")) {
      lx_.next();
      return f_neg(term_unary());
    }
    return term_atom();
  }

  FormulaPtr term_atom() {
    const Token& t = lx_.peek();
    if (t.kind == Tok::IntLit) {
      lx_.next();
      return f_int(t.int_val);
    }
    if (at_kw("true")) {
      lx_.next();
      return f_true();
    }
    if (at_kw("false")) {
      lx_.next();
      return f_false();
    }
    if (t.kind == Tok::LIdent) {
      Token name = lx_.next();
      if (at_sym("(")) {
        lx_.next();
        std::vector<FormulaPtr> args;
        if (!at_sym(")")) {
          while (true) {
            args.push_back(pred0());
            if (at_sym(",")) {
              lx_.next();
              continue;
            }
            break;
          }
        }
        expect_sym(")");
        // Uninterpreted application; result sort defaults to Int.
        return f_app(name.text, std::move(args), Sort::mk_int());
      }
      return f_var(name.text, Sort::opaque("?"));
    }
    if (at_sym("(")) {
      lx_.next();
      FormulaPtr inner = pred0();
      expect_sym(")");
      return inner;
    }
    lx_.fail("expected a refinement term", t);
  }

  // --- expressions ----------------------------------------------------------

  ExprPtr expr() {
    const Token& t = lx_.peek();
    if (at_kw("let")) {
      Token kw = lx_.next();
      std::vector<std::tuple<Token, ExprPtr>> binds;
      while (true) {
        Token x = expect(Tok::LIdent, "let binder");
        expect_sym("=");
        ExprPtr rhs = expr();
        binds.emplace_back(x, rhs);
        if (at_sym(";")) {
          lx_.next();
          continue;
        }
        break;
      }
      if (!at_kw("in")) lx_.fail("expected 'in'", lx_.peek());
      lx_.next();
      ExprPtr body = expr();
      for (auto it = binds.rbegin(); it != binds.rend(); ++it) {
        const Token& x = std::get<0>(*it);
        body = e_let(x.text, std::get<1>(*it), body, x.line, x.col);
      }
      (void)kw;
      return body;
    }
    if (at_kw("if")) {
      Token kw = lx_.next();
      ExprPtr c = expr();
      if (!at_kw("then")) lx_.fail("expected 'then'", lx_.peek());
      lx_.next();
      ExprPtr th = expr();
      if (!at_kw("else")) lx_.fail("expected 'else'", lx_.peek());
      lx_.next();
      ExprPtr el = expr();
      return e_if(c, th, el, kw.line, kw.col);
    }
    if (at_sym("\\")) {
      Token kw = lx_.next();
      std::vector<Token> params;
      while (lx_.peek().kind == Tok::LIdent) params.push_back(lx_.next());
      if (params.empty()) lx_.fail("expected lambda parameters", lx_.peek());
      expect_sym("->");
      ExprPtr body = expr();
      for (auto it = params.rbegin(); it != params.rend(); ++it) {
        body = e_lam(it->text, nullptr, body, it->line, it->col);
      }
      (void)kw;
      return body;
    }
    (void)t;
    return expr_or();
  }

  ExprPtr binop(const std::string& op, ExprPtr a, ExprPtr b, int line, int col) {
    return e_app(e_app(e_var(op, line, col), std::move(a), line, col), std::move(b), line, col);
  }

  ExprPtr expr_or() {
    ExprPtr l = expr_and();
    if (at_sym("||")) {
      Token op = lx_.next();
      ExprPtr r = expr_or();
      return binop("||", l, r, op.line, op.col);
    }
    return l;
  }

  ExprPtr expr_and() {
    ExprPtr l = expr_cmp();
    if (at_sym("&&")) {
      Token op = lx_.next();
      ExprPtr r = expr_and();
      return binop("&&", l, r, op.line, op.col);
    }
    return l;
  }

  ExprPtr expr_cmp() {
    ExprPtr l = expr_cons();
    const Token& t = lx_.peek();
    if (t.kind == Tok::Sym &&
        (t.text == "==" || t.text == "/=" || t.text == "<=" || t.text == "<" || t.text == ">=" ||
         t.text == ">")) {
      Token op = lx_.next();
      ExprPtr r = expr_cons();
      return binop(op.text, l, r, op.line, op.col);
    }
    return l;
  }

  ExprPtr expr_cons() {
    ExprPtr l = expr_add();
    if (at_sym(":")) {
      Token op = lx_.next();
      ExprPtr r = expr_cons();
      return binop("cons", l, r, op.line, op.col);
    }
    return l;
  }

  ExprPtr expr_add() {
    ExprPtr l = expr_mul();
    while (at_sym("+") || at_sym("-")) {
      Token op = lx_.next();
      ExprPtr r = expr_mul();
      l = binop(op.text, l, r, op.line, op.col);
    }
    return l;
  }

  ExprPtr expr_mul() {
    ExprPtr l = expr_compose();
    while (at_sym("*") || at_sym("/")) {
      Token op = lx_.next();
      ExprPtr r = expr_compose();
      l = binop(op.text, l, r, op.line, op.col);
    }
    return l;
  }

  ExprPtr expr_compose() {
    if (at_sym("-")) {  // unary minus
      Token op = lx_.next();
      ExprPtr e = expr_compose();
      return binop("-", e_lit_int(0, op.line, op.col), e, op.line, op.col);
    }
    ExprPtr l = expr_app();
    if (at_sym(".")) {
      Token op = lx_.next();
      ExprPtr r = expr_compose();
      return binop("compose", l, r, op.line, op.col);
    }
    return l;
  }

  bool at_expr_atom_start() const {
    const Token& t = lx_.peek();
    if (t.kind == Tok::LIdent || t.kind == Tok::IntLit) return true;
    if (t.kind == Tok::Kw && (t.text == "true" || t.text == "false" || t.text == "not"))
      return true;
    if (t.kind == Tok::Sym && (t.text == "(" || t.text == "[")) return true;
    return false;
  }

  ExprPtr expr_app() {
    ExprPtr head = expr_atom_post();
    while (at_expr_atom_start()) {
      ExprPtr arg = expr_atom_post();
      head = e_app(head, arg, arg->line, arg->col);
    }
    return head;
  }

  ExprPtr expr_atom_post() {
    ExprPtr a = expr_atom();
    while (at_sym("@")) {
      Token op = lx_.next();
      RTypePtr t = rtype_atom();
      a = e_inst(a, shape(t), op.line, op.col);
    }
    return a;
  }

  ExprPtr expr_atom() {
    const Token& t = lx_.peek();
    if (t.kind == Tok::LIdent) {
      Token x = lx_.next();
      return e_var(x.text, x.line, x.col);
    }
    if (t.kind == Tok::IntLit) {
      Token n = lx_.next();
      return e_lit_int(n.int_val, n.line, n.col);
    }
    if (t.kind == Tok::Kw && t.text == "true") {
      Token k = lx_.next();
      return e_lit_bool(true, k.line, k.col);
    }
    if (t.kind == Tok::Kw && t.text == "false") {
      Token k = lx_.next();
      return e_lit_bool(false, k.line, k.col);
    }
    if (t.kind == Tok::Kw && t.text == "not") {
      Token k = lx_.next();
      return e_var("not", k.line, k.col);
    }
    if (at_sym("[")) {
      Token k = lx_.next();
      expect_sym("]");
      return e_var("nil", k.line, k.col);
    }
    if (at_sym("(")) {
      Token k = lx_.next();
      if (at_sym(")")) {
        lx_.next();
        return e_lit_unit(k.line, k.col);
      }
      ExprPtr inner = expr();
      expect_sym(")");
      return inner;
    }
    lx_.fail("expected an expression", t);
  }

  int auto_binder_ = 0;
};

}  // namespace

Program parse_program(const std::string& text, const std::string& filename) {
  Parser p(text, filename);
  return p.program();
}

std::vector<Qualifier> parse_qualifiers(const std::string& text, const std::string& filename) {
  Parser p(text, filename);
  return p.qualifiers();
}

FormulaPtr parse_formula_string(const std::string& text) {
  Parser p(text, "<formula>");
  return p.formula_only();
}

RTypePtr parse_rtype_string(const std::string& text) {
  Parser p(text, "<type>");
  return p.rtype_only();
}

}  // namespace fusion
