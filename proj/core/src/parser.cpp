// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#include <set>

#include "lexer.hpp"
#include "qcc/frontend.hpp"

namespace qcc {

const char* cmp_text(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
    case CmpOp::Eq: return "==";
    case CmpOp::Ne: return "!=";
  }
  return "?";
}

bool cmp_holds(CmpOp op, const Value& a, const Value& b) {
  static const ExprOp kOps[] = {ExprOp::Lt, ExprOp::Le, ExprOp::Gt, ExprOp::Ge, ExprOp::Eq, ExprOp::Ne};
  return apply_op(kOps[static_cast<int>(op)], {a, b}).truthy();
}

namespace {

using detail::Tok;
using detail::Token;

// Gate-like names that ScaffLite does not support. A call to one of these
// (with no module of that name) is reported as UnknownGate.
const std::set<std::string> kForeignGates = {
    "CZ", "CY", "CX", "CCX", "CCNOT", "SWAP", "Swap", "CSWAP", "Fredkin", "U", "U1", "U2", "U3",
    "P", "Phase", "Rphi", "ID", "I", "SX", "Sdg", "Tdg", "MeasX", "PrepX", "Measure", "measure",
    "reset", "Reset", "Tof", "Toff", "NOT", "not", "cnot", "toffoli", "h", "x", "y", "z"};

std::optional<CmpOp> cmp_of(const std::string& t) {
  if (t == "<") return CmpOp::Lt;
  if (t == "<=") return CmpOp::Le;
  if (t == ">") return CmpOp::Gt;
  if (t == ">=") return CmpOp::Ge;
  if (t == "==") return CmpOp::Eq;
  if (t == "!=") return CmpOp::Ne;
  return std::nullopt;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, std::string origin) : t_(std::move(toks)), origin_(std::move(origin)) {}

  Ast run() {
    Ast ast;
    ast.origin = origin_;
    while (cur().kind != Tok::End) {
      if (cur().kind == Tok::Define) {
        if (defines_.count(cur().text)) fail("duplicate #define '" + cur().text + "'");
        defines_[cur().text] = cur().value;
        ++p_;
        continue;
      }
      if (is_ident("module")) {
        ast.modules.push_back(module());
        continue;
      }
      fail("expected 'module' or '#define'");
    }
    ast.defines = defines_;
    check_unknown_gates(ast);
    return ast;
  }

 private:
  const Token& cur() const { return t_[p_]; }
  const Token& ahead(std::size_t k) const { return t_[std::min(p_ + k, t_.size() - 1)]; }
  bool is_punct(const char* s) const { return cur().kind == Tok::Punct && cur().text == s; }
  bool is_ident(const char* s) const { return cur().kind == Tok::Ident && cur().text == s; }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, cur().pos); }
  [[noreturn]] void fail_at(const std::string& msg, SrcPos pos) const {
    throw Error(ErrorKind::Syntax, msg, pos, origin_);
  }

  std::string describe(const Token& t) const {
    switch (t.kind) {
      case Tok::End: return "end of input";
      case Tok::Define: return "#define";
      default: return "'" + t.text + "'";
    }
  }

  void expect(const char* s) {
    if (!is_punct(s)) fail(std::string("expected '") + s + "' but found " + describe(cur()));
    ++p_;
  }
  bool accept(const char* s) {
    if (!is_punct(s)) return false;
    ++p_;
    return true;
  }

  std::string ident(const char* what) {
    if (cur().kind != Tok::Ident) fail(std::string("expected ") + what + " but found " + describe(cur()));
    if (defines_.count(cur().text)) fail("'" + cur().text + "' is a #define constant");
    return t_[p_++].text;
  }

  AstModule module() {
    AstModule m;
    m.pos = cur().pos;
    ++p_;
    m.name = ident("module name");
    expect("(");
    if (!is_punct(")")) {
      do m.params.push_back(param());
      while (accept(","));
    }
    expect(")");
    m.body = block();
    for (const auto& p : m.params)
      if (p.kind == ParamKind::QInt) m.is_ctqg = true;
    if (!m.is_ctqg) m.is_ctqg = contains_ctqg(m.body);
    return m;
  }

  static bool contains_ctqg(const std::vector<AstStmt>& body) {
    for (const auto& s : body) {
      if (s.kind == AstStmt::Kind::CtqgOp || s.kind == AstStmt::Kind::CtqgIf ||
          s.kind == AstStmt::Kind::QintDecl)
        return true;
      if (contains_ctqg(s.body) || contains_ctqg(s.else_body)) return true;
    }
    return false;
  }

  AstParam param() {
    AstParam p;
    p.pos = cur().pos;
    if (is_ident("qbit")) {
      ++p_;
      accept("*");
      p.kind = ParamKind::QubitArray;
      p.name = ident("parameter name");
      expect("[");
      p.size = expr();
      expect("]");
    } else if (is_ident("int") || is_ident("double")) {
      p.kind = is_ident("int") ? ParamKind::Int : ParamKind::Double;
      ++p_;
      p.name = ident("parameter name");
    } else if (is_ident("qint")) {
      ++p_;
      p.kind = ParamKind::QInt;
      expect("[");
      p.size = expr();
      expect("]");
      p.name = ident("register name");
    } else {
      fail("expected a parameter type (qbit, int, double, qint) but found " + describe(cur()));
    }
    return p;
  }

  std::vector<AstStmt> block() {
    expect("{");
    std::vector<AstStmt> out;
    while (!is_punct("}")) {
      if (cur().kind == Tok::End) fail("expected '}' but found end of input");
      statement(out);
    }
    ++p_;
    return out;
  }

  // Body of if/else/for: a braced block is spliced in directly.
  void substatement(std::vector<AstStmt>& out) {
    if (is_punct("{")) {
      auto b = block();
      for (auto& s : b) out.push_back(std::move(s));
      return;
    }
    statement(out);
  }

  // Parses one statement; empty statements append nothing.
  void statement(std::vector<AstStmt>& out) {
    AstStmt s;
    s.pos = cur().pos;
    if (accept(";")) return;
    if (is_punct("{")) {
      s.kind = AstStmt::Kind::Block;
      s.body = block();
      out.push_back(std::move(s));
      return;
    }
    if (is_punct("$")) {
      out.push_back(ctqg_statement());
      return;
    }
    if (cur().kind == Tok::Define) fail("#define is only allowed at top level");
    if (cur().kind != Tok::Ident) fail("expected a statement but found " + describe(cur()));
    const std::string word = cur().text;
    if (word == "qbit") {
      ++p_;
      s.kind = AstStmt::Kind::QubitDecl;
      do {
        std::string name = ident("qubit array name");
        expect("[");
        ExprPtr size = expr();
        expect("]");
        s.decls.emplace_back(name, size);
      } while (accept(","));
      expect(";");
    } else if (word == "int" || word == "double") {
      ++p_;
      s.kind = AstStmt::Kind::VarDecl;
      s.is_real = word == "double";
      do {
        std::string name = ident("variable name");
        ExprPtr init;
        if (accept("=")) init = expr();
        s.decls.emplace_back(name, init);
      } while (accept(","));
      expect(";");
    } else if (word == "qint") {
      ++p_;
      s.kind = AstStmt::Kind::QintDecl;
      expect("[");
      ExprPtr width = expr();
      expect("]");
      do s.decls.emplace_back(ident("register name"), width);
      while (accept(","));
      expect(";");
    } else if (word == "for") {
      for_statement(s);
    } else if (word == "if") {
      ++p_;
      s.kind = AstStmt::Kind::If;
      expect("(");
      s.cond = expr();
      expect(")");
      substatement(s.body);
      if (is_ident("else")) {
        ++p_;
        s.has_else = true;
        substatement(s.else_body);
      }
    } else if (ahead(1).kind == Tok::Punct && ahead(1).text == "(") {
      call_or_gate(s);
    } else {
      assignment(s);
      expect(";");
    }
    out.push_back(std::move(s));
  }

  void call_or_gate(AstStmt& s) {
    Token name = t_[p_++];
    expect("(");
    std::vector<AstArg> args;
    if (!is_punct(")")) {
      do args.push_back(argument());
      while (accept(","));
    }
    expect(")");
    expect(";");
    if (auto g = gate_from_name(name.text)) {
      s.kind = AstStmt::Kind::Gate;
      s.gate = *g;
      for (auto& a : args) {
        if (a.is_slice) fail_at("gate operands cannot be slices in ScaffLite", a.pos);
        s.operands.push_back(a.expr);
      }
      if (gate_has_angle(*g) && !s.operands.empty()) {
        s.angle = s.operands.back();
        s.operands.pop_back();
      }
    } else {
      s.kind = AstStmt::Kind::Call;
      s.callee = name.text;
      s.args = std::move(args);
    }
  }

  AstArg argument() {
    AstArg a;
    a.pos = cur().pos;
    if (cur().kind == Tok::Ident && ahead(1).kind == Tok::Punct && ahead(1).text == "[" &&
        !defines_.count(cur().text)) {
      // name[lo:hi] or name[i]
      std::size_t save = p_;
      std::string name = t_[p_++].text;
      ++p_;
      ExprPtr lo = expr();
      if (accept(":")) {
        a.is_slice = true;
        a.name = name;
        a.lo = lo;
        a.hi = expr();
        expect("]");
        return a;
      }
      p_ = save;
    }
    a.expr = expr();
    return a;
  }

  void assignment(AstStmt& s) {
    s.kind = AstStmt::Kind::Assign;
    s.pos = cur().pos;
    if (accept("++") || accept("--")) {
      bool inc = t_[p_ - 1].text == "++";
      s.var = ident("variable name");
      s.value = make_binary(inc ? ExprOp::Add : ExprOp::Sub, make_var(s.var, -1, s.pos), make_int(1, s.pos), s.pos);
      return;
    }
    s.var = ident("variable name");
    SrcPos vpos = s.pos;
    if (accept("++") || accept("--")) {
      bool inc = t_[p_ - 1].text == "++";
      s.value = make_binary(inc ? ExprOp::Add : ExprOp::Sub, make_var(s.var, -1, vpos), make_int(1, vpos), vpos);
      return;
    }
    static const std::pair<const char*, ExprOp> kCompound[] = {
        {"+=", ExprOp::Add}, {"-=", ExprOp::Sub}, {"*=", ExprOp::Mul}, {"/=", ExprOp::Div}};
    for (const auto& [txt, op] : kCompound) {
      if (accept(txt)) {
        ExprPtr rhs = expr();
        s.value = make_binary(op, make_var(s.var, -1, vpos), rhs, vpos);
        return;
      }
    }
    if (!accept("=")) fail("expected an assignment but found " + describe(cur()));
    s.value = expr();
  }

  void for_statement(AstStmt& s) {
    ++p_;
    s.kind = AstStmt::Kind::For;
    expect("(");
    if (is_ident("int")) {
      ++p_;
      s.declares_var = true;
    }
    s.var = ident("loop variable");
    expect("=");
    s.start = expr();
    expect(";");
    SrcPos cpos = cur().pos;
    std::string cv = ident("loop variable");
    if (cv != s.var) fail_at("loop condition must test the loop variable '" + s.var + "'", cpos);
    auto op = cur().kind == Tok::Punct ? cmp_of(cur().text) : std::nullopt;
    if (!op) fail("expected a comparison in the loop condition");
    ++p_;
    s.cmp = *op;
    s.end = expr();
    expect(";");
    AstStmt step;
    assignment(step);
    if (step.var != s.var) fail_at("loop step must update the loop variable '" + s.var + "'", step.pos);
    s.step = step_amount(*step.value, s.var, step.pos);
    expect(")");
    substatement(s.body);
  }

  // Accepts v+e, v-e as step forms; returns the signed increment.
  ExprPtr step_amount(const Expr& v, const std::string& var, SrcPos pos) {
    auto is_var = [&](const ExprPtr& e) { return e->op == ExprOp::Var && e->name == var; };
    if ((v.op == ExprOp::Add || v.op == ExprOp::Sub) && is_var(v.args[0])) {
      if (v.op == ExprOp::Add) return v.args[1];
      const ExprPtr& rhs = v.args[1];
      if (rhs->op == ExprOp::Int) return make_int(-rhs->ival, rhs->pos);
      return make_unary(ExprOp::Neg, rhs, rhs->pos);
    }
    if (v.op == ExprOp::Add && is_var(v.args[1])) return v.args[0];
    fail_at("unsupported loop step; use i++, i--, i += e, i -= e or i = i + e", pos);
  }

  AstStmt ctqg_statement() {
    AstStmt s;
    s.pos = cur().pos;
    expect("$");
    if (is_ident("if")) {
      ++p_;
      s.kind = AstStmt::Kind::CtqgIf;
      expect("(");
      s.cond = expr();
      expect(")");
      while (!(is_punct("$") && ahead(1).kind == Tok::Ident &&
               (ahead(1).text == "else" || ahead(1).text == "endif"))) {
        if (cur().kind == Tok::End) fail("missing $endif");
        statement(s.body);
      }
      ++p_;
      if (is_ident("else")) {
        ++p_;
        s.has_else = true;
        while (!(is_punct("$") && ahead(1).kind == Tok::Ident && ahead(1).text == "endif")) {
          if (cur().kind == Tok::End) fail("missing $endif");
          statement(s.else_body);
        }
        ++p_;
      }
      ++p_;  // endif
      accept(";");
      return s;
    }
    s.kind = AstStmt::Kind::CtqgOp;
    s.var = ident("register name");
    if (accept(":=")) s.ctqg_op = CtqgOpKind::Init;
    else if (accept("+=")) s.ctqg_op = CtqgOpKind::Add;
    else if (accept("-=")) s.ctqg_op = CtqgOpKind::Sub;
    else fail("expected ':=', '+=' or '-=' in a register statement");
    s.value = expr();
    expect(";");
    return s;
  }

  // Expressions, lowest precedence first.
  ExprPtr expr() { return or_expr(); }

  ExprPtr or_expr() {
    ExprPtr l = and_expr();
    while (is_punct("||")) {
      SrcPos pos = cur().pos;
      ++p_;
      l = make_binary(ExprOp::Or, l, and_expr(), pos);
    }
    return l;
  }
  ExprPtr and_expr() {
    ExprPtr l = eq_expr();
    while (is_punct("&&")) {
      SrcPos pos = cur().pos;
      ++p_;
      l = make_binary(ExprOp::And, l, eq_expr(), pos);
    }
    return l;
  }
  ExprPtr eq_expr() {
    ExprPtr l = rel_expr();
    while (is_punct("==") || is_punct("!=")) {
      SrcPos pos = cur().pos;
      ExprOp op = cur().text == "==" ? ExprOp::Eq : ExprOp::Ne;
      ++p_;
      l = make_binary(op, l, rel_expr(), pos);
    }
    return l;
  }
  ExprPtr rel_expr() {
    ExprPtr l = add_expr();
    for (;;) {
      ExprOp op;
      if (is_punct("<")) op = ExprOp::Lt;
      else if (is_punct("<=")) op = ExprOp::Le;
      else if (is_punct(">")) op = ExprOp::Gt;
      else if (is_punct(">=")) op = ExprOp::Ge;
      else return l;
      SrcPos pos = cur().pos;
      ++p_;
      l = make_binary(op, l, add_expr(), pos);
    }
  }
  ExprPtr add_expr() {
    ExprPtr l = mul_expr();
    while (is_punct("+") || is_punct("-")) {
      SrcPos pos = cur().pos;
      ExprOp op = cur().text == "+" ? ExprOp::Add : ExprOp::Sub;
      ++p_;
      l = make_binary(op, l, mul_expr(), pos);
    }
    return l;
  }
  ExprPtr mul_expr() {
    ExprPtr l = unary();
    while (is_punct("*") || is_punct("/") || is_punct("%")) {
      SrcPos pos = cur().pos;
      ExprOp op = cur().text == "*" ? ExprOp::Mul : cur().text == "/" ? ExprOp::Div : ExprOp::Mod;
      ++p_;
      l = make_binary(op, l, unary(), pos);
    }
    return l;
  }
  ExprPtr unary() {
    SrcPos pos = cur().pos;
    if (accept("-")) {
      ExprPtr a = unary();
      if (a->op == ExprOp::Int) return make_int(-a->ival, pos);
      if (a->op == ExprOp::Real) return make_real(-a->rval, pos);
      return make_unary(ExprOp::Neg, a, pos);
    }
    if (accept("+")) return unary();
    if (accept("!")) return make_unary(ExprOp::Not, unary(), pos);
    return primary();
  }
  ExprPtr primary() {
    const Token& t = cur();
    SrcPos pos = t.pos;
    if (t.kind == Tok::Int || t.kind == Tok::Real) {
      ++p_;
      return make_literal(t.value, pos);
    }
    if (accept("(")) {
      ExprPtr e = expr();
      expect(")");
      return e;
    }
    if (t.kind == Tok::Ident) {
      std::string name = t.text;
      if (auto it = defines_.find(name); it != defines_.end()) {
        ++p_;
        return make_literal(it->second, pos);
      }
      ++p_;
      if (is_punct("(")) {
        ExprOp fn;
        if (name == "pow") fn = ExprOp::Pow;
        else if (name == "floor") fn = ExprOp::Floor;
        else if (name == "abs" || name == "fabs") fn = ExprOp::Abs;
        else fail_at("unsupported function '" + name + "'; only pow, floor and abs exist", pos);
        ++p_;
        std::vector<ExprPtr> args;
        if (!is_punct(")")) {
          do args.push_back(expr());
          while (accept(","));
        }
        expect(")");
        std::size_t want = fn == ExprOp::Pow ? 2 : 1;
        if (args.size() != want)
          fail_at(name + " takes " + std::to_string(want) + " argument(s)", pos);
        return make_call(fn, std::move(args), pos);
      }
      if (accept("[")) {
        ExprPtr idx = expr();
        expect("]");
        return make_index(name, idx, pos);
      }
      return make_var(name, -1, pos);
    }
    fail("expected an expression but found " + describe(t));
  }

  void check_unknown_gates(const Ast& ast) const {
    std::set<std::string> names;
    for (const auto& m : ast.modules) names.insert(m.name);
    for (const auto& m : ast.modules) check_calls(m.body, names);
  }

  void check_calls(const std::vector<AstStmt>& body, const std::set<std::string>& names) const {
    for (const auto& s : body) {
      if (s.kind == AstStmt::Kind::Call && !names.count(s.callee)) {
        bool gate_like = kForeignGates.count(s.callee) > 0;
        if (!gate_like && !s.args.empty()) {
          gate_like = true;
          for (const auto& a : s.args)
            if (a.is_slice || a.expr->op != ExprOp::Index) gate_like = false;
        }
        if (gate_like)
          throw Error(ErrorKind::UnknownGate, "unknown gate '" + s.callee + "'", s.pos, origin_);
      }
      check_calls(s.body, names);
      check_calls(s.else_body, names);
    }
  }

  std::vector<Token> t_;
  std::string origin_;
  std::size_t p_ = 0;
  std::map<std::string, Value> defines_;
};

}  // namespace

Ast parse_scafflite(const SourceProgram& src) {
  if (src.text.empty()) throw Error(ErrorKind::Syntax, "empty source", {}, src.origin);
  return Parser(detail::lex_scafflite(src.text, src.origin), src.origin).run();
}

}  // namespace qcc
