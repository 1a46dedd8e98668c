// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qcc/error.hpp"

namespace qcc {

// A classical value: C-like int (64-bit) or double.
struct Value {
  bool is_real = false;
  std::int64_t i = 0;
  double d = 0.0;

  static Value of_int(std::int64_t v) { return Value{false, v, 0.0}; }
  static Value of_real(double v) { return Value{true, 0, v}; }

  double as_real() const { return is_real ? d : static_cast<double>(i); }
  std::int64_t as_int() const;
  bool truthy() const { return is_real ? d != 0.0 : i != 0; }
  bool operator==(const Value& o) const;
};

enum class ExprOp : unsigned char {
  Int, Real, Var, Index,
  Neg, Not,
  Add, Sub, Mul, Div, Mod,
  Lt, Le, Gt, Ge, Eq, Ne, And, Or,
  Pow, Floor, Abs,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable expression tree. Var nodes carry the variable name and, after
// semantic resolution, the slot of the variable in its module's frame.
// Index nodes (name[expr]) only appear as qubit references.
struct Expr {
  ExprOp op = ExprOp::Int;
  std::int64_t ival = 0;
  double rval = 0.0;
  std::string name;
  int slot = -1;
  std::vector<ExprPtr> args;
  SrcPos pos;

  bool is_literal() const { return op == ExprOp::Int || op == ExprOp::Real; }
  Value literal() const {
    return op == ExprOp::Real ? Value::of_real(rval) : Value::of_int(ival);
  }
};

ExprPtr make_int(std::int64_t v, SrcPos pos = {});
ExprPtr make_real(double v, SrcPos pos = {});
ExprPtr make_literal(const Value& v, SrcPos pos = {});
ExprPtr make_var(std::string name, int slot = -1, SrcPos pos = {});
ExprPtr make_index(std::string name, ExprPtr index, SrcPos pos = {});
ExprPtr make_unary(ExprOp op, ExprPtr a, SrcPos pos = {});
ExprPtr make_binary(ExprOp op, ExprPtr a, ExprPtr b, SrcPos pos = {});
ExprPtr make_call(ExprOp fn, std::vector<ExprPtr> args, SrcPos pos = {});

// Variable frame of one module activation, indexed by slot.
using Frame = std::vector<std::optional<Value>>;

Value apply_op(ExprOp op, const std::vector<Value>& args, SrcPos pos = {});

// Evaluates e; throws NonConstantControl when a variable is unbound.
Value eval(const Expr& e, const Frame& frame);
std::optional<Value> try_eval(const Expr& e, const Frame& frame);

// Substitutes known slots and folds constant subtrees. Slots listed as
// unknown in `frame` (nullopt) stay symbolic.
ExprPtr fold(const ExprPtr& e, const Frame& frame);

// Affine decomposition e == a*var + b with integer a, b, if e only mentions
// `slot` and literals.
struct Affine {
  std::int64_t a = 0;
  std::int64_t b = 0;
};
std::optional<Affine> affine_in(const Expr& e, int slot);

bool mentions_slot(const Expr& e, int slot);
void collect_slots(const Expr& e, std::vector<int>& out);
bool structurally_equal(const Expr& a, const Expr& b);

// C-syntax rendering; parses back to a structurally equal tree.
std::string to_source(const Expr& e);

std::string format_real(double v);          // shortest round-trip decimal
std::string format_real17(double v);        // 17 significant digits
std::string format_value(const Value& v);

}  // namespace qcc
