// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include "qcc/expr.hpp"
#include "qcc/gates.hpp"

namespace qcc {

struct Program;

struct SourceProgram {
  std::string text;
  std::string origin = "<memory>";
};

enum class CmpOp : unsigned char { Lt, Le, Gt, Ge, Eq, Ne };
const char* cmp_text(CmpOp op);
bool cmp_holds(CmpOp op, const Value& a, const Value& b);

enum class ParamKind : unsigned char { QubitArray, Int, Double, QInt };

struct AstParam {
  std::string name;
  ParamKind kind = ParamKind::QubitArray;
  ExprPtr size;  // array size or register width
  SrcPos pos;
};

// Call argument: a classical expression, a qubit array name (Var), one
// element (Index), or a contiguous slice name[lo:hi].
struct AstArg {
  ExprPtr expr;
  bool is_slice = false;
  std::string name;
  ExprPtr lo, hi;
  SrcPos pos;
};

enum class CtqgOpKind : unsigned char { Init, Add, Sub };

struct AstStmt {
  enum class Kind : unsigned char {
    Gate, Call, For, If, QubitDecl, VarDecl, QintDecl, Assign, Block, CtqgOp, CtqgIf,
  };
  Kind kind = Kind::Block;
  SrcPos pos;

  // Gate
  GateKind gate = GateKind::X;
  std::vector<ExprPtr> operands;
  ExprPtr angle;
  // Call
  std::string callee;
  std::vector<AstArg> args;
  // For: var from start while (var cmp end), var += step.
  std::string var;
  bool declares_var = false;
  ExprPtr start, end, step;
  CmpOp cmp = CmpOp::Lt;
  // If / CtqgIf / For / Block bodies
  ExprPtr cond;
  std::vector<AstStmt> body;
  std::vector<AstStmt> else_body;
  bool has_else = false;
  // QubitDecl / VarDecl / QintDecl: (name, size-or-init) pairs
  bool is_real = false;
  std::vector<std::pair<std::string, ExprPtr>> decls;
  // Assign: var = value.  CtqgOp: $ var <op> value.
  ExprPtr value;
  CtqgOpKind ctqg_op = CtqgOpKind::Init;
};

struct AstModule {
  std::string name;
  std::vector<AstParam> params;
  std::vector<AstStmt> body;
  bool is_ctqg = false;
  SrcPos pos;
};

struct Ast {
  std::vector<AstModule> modules;
  std::map<std::string, Value> defines;
  std::string origin = "<memory>";
};

// Lex and parse ScaffLite. #define constants are substituted as literals.
// Throws Error(Syntax | UnknownGate).
Ast parse_scafflite(const SourceProgram& src);

// Renders an Ast back to ScaffLite source; parse(print(a)) equals a.
std::string print_ast(const Ast& ast);
bool ast_equal(const Ast& a, const Ast& b);

// Binds identifiers, checks arities and types, detects recursion, and
// builds the IR. Throws Error(UndefinedModule | ArityMismatch |
// TypeMismatch | Recursion | ...).
Program resolve_semantics(const Ast& ast);

Program compile_source(const SourceProgram& src);
SourceProgram read_source_file(const std::string& path);

}  // namespace qcc
