// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#include <sstream>

#include "qcc/frontend.hpp"

namespace qcc {

namespace {

const char* param_type(ParamKind k) {
  switch (k) {
    case ParamKind::QubitArray: return "qbit";
    case ParamKind::Int: return "int";
    case ParamKind::Double: return "double";
    case ParamKind::QInt: return "qint";
  }
  return "?";
}

class Printer {
 public:
  std::string run(const Ast& ast) {
    for (const auto& [name, v] : ast.defines) os_ << "#define " << name << " " << format_value(v) << "\n";
    if (!ast.defines.empty()) os_ << "\n";
    for (const auto& m : ast.modules) module(m);
    return os_.str();
  }

 private:
  void indent() {
    for (int i = 0; i < depth_; ++i) os_ << "  ";
  }

  void module(const AstModule& m) {
    os_ << "module " << m.name << "(";
    for (std::size_t i = 0; i < m.params.size(); ++i) {
      const auto& p = m.params[i];
      if (i) os_ << ", ";
      os_ << param_type(p.kind);
      if (p.kind == ParamKind::QInt) os_ << "[" << to_source(*p.size) << "]";
      os_ << " " << p.name;
      if (p.kind == ParamKind::QubitArray) os_ << "[" << to_source(*p.size) << "]";
    }
    os_ << ") {\n";
    ++depth_;
    for (const auto& s : m.body) stmt(s);
    --depth_;
    os_ << "}\n\n";
  }

  void body(const std::vector<AstStmt>& b) {
    os_ << "{\n";
    ++depth_;
    for (const auto& s : b) stmt(s);
    --depth_;
    indent();
    os_ << "}";
  }

  void arg(const AstArg& a) {
    if (a.is_slice) os_ << a.name << "[" << to_source(*a.lo) << ":" << to_source(*a.hi) << "]";
    else os_ << to_source(*a.expr);
  }

  void stmt(const AstStmt& s) {
    indent();
    switch (s.kind) {
      case AstStmt::Kind::Gate: {
        os_ << gate_name(s.gate) << "(";
        for (std::size_t i = 0; i < s.operands.size(); ++i) os_ << (i ? ", " : "") << to_source(*s.operands[i]);
        if (s.angle) os_ << (s.operands.empty() ? "" : ", ") << to_source(*s.angle);
        os_ << ");\n";
        break;
      }
      case AstStmt::Kind::Call:
        os_ << s.callee << "(";
        for (std::size_t i = 0; i < s.args.size(); ++i) {
          if (i) os_ << ", ";
          arg(s.args[i]);
        }
        os_ << ");\n";
        break;
      case AstStmt::Kind::For:
        os_ << "for (" << (s.declares_var ? "int " : "") << s.var << " = " << to_source(*s.start) << "; "
            << s.var << " " << cmp_text(s.cmp) << " " << to_source(*s.end) << "; " << s.var
            << " += " << to_source(*s.step) << ") ";
        body(s.body);
        os_ << "\n";
        break;
      case AstStmt::Kind::If:
        os_ << "if (" << to_source(*s.cond) << ") ";
        body(s.body);
        if (s.has_else) {
          os_ << " else ";
          body(s.else_body);
        }
        os_ << "\n";
        break;
      case AstStmt::Kind::QubitDecl:
        os_ << "qbit ";
        for (std::size_t i = 0; i < s.decls.size(); ++i)
          os_ << (i ? ", " : "") << s.decls[i].first << "[" << to_source(*s.decls[i].second) << "]";
        os_ << ";\n";
        break;
      case AstStmt::Kind::VarDecl:
        os_ << (s.is_real ? "double " : "int ");
        for (std::size_t i = 0; i < s.decls.size(); ++i) {
          os_ << (i ? ", " : "") << s.decls[i].first;
          if (s.decls[i].second) os_ << " = " << to_source(*s.decls[i].second);
        }
        os_ << ";\n";
        break;
      case AstStmt::Kind::QintDecl:
        os_ << "qint[" << to_source(*s.decls.front().second) << "] ";
        for (std::size_t i = 0; i < s.decls.size(); ++i) os_ << (i ? ", " : "") << s.decls[i].first;
        os_ << ";\n";
        break;
      case AstStmt::Kind::Assign:
        os_ << s.var << " = " << to_source(*s.value) << ";\n";
        break;
      case AstStmt::Kind::Block:
        body(s.body);
        os_ << "\n";
        break;
      case AstStmt::Kind::CtqgOp: {
        const char* op = s.ctqg_op == CtqgOpKind::Init ? ":=" : s.ctqg_op == CtqgOpKind::Add ? "+=" : "-=";
        os_ << "$ " << s.var << " " << op << " " << to_source(*s.value) << ";\n";
        break;
      }
      case AstStmt::Kind::CtqgIf:
        os_ << "$if (" << to_source(*s.cond) << ")\n";
        ++depth_;
        for (const auto& b : s.body) stmt(b);
        --depth_;
        if (s.has_else) {
          indent();
          os_ << "$else\n";
          ++depth_;
          for (const auto& b : s.else_body) stmt(b);
          --depth_;
        }
        indent();
        os_ << "$endif\n";
        break;
    }
  }

  std::ostringstream os_;
  int depth_ = 0;
};

bool opt_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return structurally_equal(*a, *b);
}

bool stmts_equal(const std::vector<AstStmt>& a, const std::vector<AstStmt>& b);

bool stmt_equal(const AstStmt& a, const AstStmt& b) {
  if (a.kind != b.kind || a.gate != b.gate || a.callee != b.callee || a.var != b.var ||
      a.declares_var != b.declares_var || a.cmp != b.cmp || a.has_else != b.has_else ||
      a.is_real != b.is_real || a.ctqg_op != b.ctqg_op)
    return false;
  if (a.operands.size() != b.operands.size() || a.args.size() != b.args.size() ||
      a.decls.size() != b.decls.size())
    return false;
  for (std::size_t i = 0; i < a.operands.size(); ++i)
    if (!opt_equal(a.operands[i], b.operands[i])) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    const auto &x = a.args[i], &y = b.args[i];
    if (x.is_slice != y.is_slice || x.name != y.name || !opt_equal(x.expr, y.expr) ||
        !opt_equal(x.lo, y.lo) || !opt_equal(x.hi, y.hi))
      return false;
  }
  for (std::size_t i = 0; i < a.decls.size(); ++i)
    if (a.decls[i].first != b.decls[i].first || !opt_equal(a.decls[i].second, b.decls[i].second))
      return false;
  return opt_equal(a.angle, b.angle) && opt_equal(a.start, b.start) && opt_equal(a.end, b.end) &&
         opt_equal(a.step, b.step) && opt_equal(a.cond, b.cond) && opt_equal(a.value, b.value) &&
         stmts_equal(a.body, b.body) && stmts_equal(a.else_body, b.else_body);
}

bool stmts_equal(const std::vector<AstStmt>& a, const std::vector<AstStmt>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!stmt_equal(a[i], b[i])) return false;
  return true;
}

}  // namespace

std::string print_ast(const Ast& ast) { return Printer().run(ast); }

bool ast_equal(const Ast& a, const Ast& b) {
  if (a.modules.size() != b.modules.size() || a.defines.size() != b.defines.size()) return false;
  for (auto ia = a.defines.begin(), ib = b.defines.begin(); ia != a.defines.end(); ++ia, ++ib)
    if (ia->first != ib->first || !(ia->second == ib->second)) return false;
  for (std::size_t i = 0; i < a.modules.size(); ++i) {
    const auto &x = a.modules[i], &y = b.modules[i];
    if (x.name != y.name || x.is_ctqg != y.is_ctqg || x.params.size() != y.params.size()) return false;
    for (std::size_t k = 0; k < x.params.size(); ++k)
      if (x.params[k].name != y.params[k].name || x.params[k].kind != y.params[k].kind ||
          !opt_equal(x.params[k].size, y.params[k].size))
        return false;
    if (!stmts_equal(x.body, y.body)) return false;
  }
  return true;
}

}  // namespace qcc
