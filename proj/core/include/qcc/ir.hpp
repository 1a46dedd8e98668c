// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qcc/expr.hpp"
#include "qcc/frontend.hpp"
#include "qcc/gates.hpp"

namespace qcc {

struct QubitArrayDecl {
  std::string name;
  ExprPtr size_expr;
  std::int64_t size = -1;  // -1 until it can be evaluated
  bool is_param = false;
  SrcPos pos;
};

struct VarInfo {
  std::string name;
  bool is_real = false;
  bool is_param = false;
};

// arrays[array][index]
struct QRef {
  int array = -1;
  ExprPtr index;
};

// Qubit call argument: whole array, or the inclusive range [lo, hi].
struct QArg {
  int array = -1;
  bool whole = true;
  ExprPtr lo, hi;
};

struct GateInst {
  GateKind kind = GateKind::X;
  std::vector<QRef> qubits;
  ExprPtr angle;  // radians, rotations only
};

struct CallInst {
  std::string callee;
  std::vector<QArg> qargs;     // in callee qubit-parameter order
  std::vector<ExprPtr> cargs;  // in callee classical-parameter order
};

enum class LoopKind : unsigned char { Classical, Forall, Repeat };
const char* loop_kind_name(LoopKind k);

struct LoopClassification {
  LoopKind kind = LoopKind::Classical;
  // True when the verdict cannot change once more variables become known.
  bool final = true;
  std::int64_t trip_count = 0;
  // forall: range of the first operand of the first body gate
  int array = -1;
  std::int64_t lo = 0, hi = 0;
};

struct Inst;

struct LoopInst {
  int var = -1;
  ExprPtr start, end, step;
  CmpOp cmp = CmpOp::Lt;
  std::vector<Inst> body;
  LoopClassification cls;
};

struct CondInst {
  ExprPtr guard;
  std::vector<Inst> then_body;
  std::vector<Inst> else_body;
};

struct AssignInst {
  int var = -1;
  ExprPtr value;
};

struct Inst {
  std::variant<GateInst, CallInst, LoopInst, CondInst, AssignInst> v;
  SrcPos pos;
};

// Reversible-logic sub-language of CTQG modules.
struct CtqgStmt {
  enum class Kind : unsigned char { Init, AddConst, SubConst, AddReg, SubReg, AddMul, If, For, Assign };
  Kind kind = Kind::Init;
  SrcPos pos;
  int reg = -1;          // destination register / $if left operand
  int src1 = -1, src2 = -1;
  ExprPtr value;         // constant operand, or Assign value
  CmpOp cmp = CmpOp::Lt; // $if
  int var = -1;          // For / Assign
  ExprPtr start, end, step;
  std::vector<CtqgStmt> body, else_body;
};

struct CtqgRegister {
  std::string name;
  int width = 0;
  bool is_param = false;
  // Parameter whose first use is `:=`; it is an output assumed zero on entry.
  bool output = false;
};

struct ParamRef {
  bool is_qubit = true;
  int index = -1;  // array index or variable slot
};

struct ModuleDef {
  std::string name;
  SrcPos pos;
  std::vector<QubitArrayDecl> arrays;  // parameters first, then hoisted locals
  int num_qubit_params = 0;
  std::vector<VarInfo> vars;           // frame slots
  std::vector<int> classical_params;   // slots, declaration order
  std::vector<ParamRef> params;        // declaration order
  std::vector<Inst> body;
  bool is_ctqg = false;
  std::vector<CtqgRegister> registers;  // CTQG: aligned with arrays
  std::vector<CtqgStmt> ctqg_body;

  int find_array(const std::string& n) const;
  int find_var(const std::string& n) const;
};

struct Program {
  std::vector<ModuleDef> modules;
  std::map<std::string, int> index;
  std::string entry = "main";
  std::string origin = "<memory>";

  const ModuleDef* find(const std::string& name) const;
  ModuleDef* find(const std::string& name);
  void add(ModuleDef m);
};

struct CallEdge {
  std::string caller, callee;
  int site = 0;  // call-site ordinal within the caller
};

struct CallGraph {
  std::vector<std::string> nodes;
  std::vector<CallEdge> edges;
  std::vector<std::string> preorder;   // depth-first from the entry
  std::vector<std::string> postorder;  // callees before callers
};

// Throws Error(Recursion) on cycles.
CallGraph build_call_graph(const Program& p);

// Tags every loop of m. Conservative: anything doubtful is Classical.
void classify_loops(ModuleDef& m);

// Classifies one loop given an optional frame of known outer variables.
LoopClassification classify_loop(const LoopInst& loop, const ModuleDef& m, const Frame* env);

// Number of iterations; empty if a bound is not known in env. Throws
// Error(Semantic) for a loop that never terminates.
std::optional<std::int64_t> trip_count(const LoopInst& loop, const Frame& env);

// Value of the loop variable at iteration k.
Value loop_value(const LoopInst& loop, const Frame& env, std::int64_t k);

// Annotated text form of the IR.
std::string dump_ir(const Program& p);

}  // namespace qcc
