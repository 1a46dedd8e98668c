// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#include "qcc/expr.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>

namespace qcc {

std::int64_t Value::as_int() const {
  if (!is_real) return i;
  return static_cast<std::int64_t>(d);
}

bool Value::operator==(const Value& o) const {
  if (is_real != o.is_real) return false;
  if (is_real) return std::memcmp(&d, &o.d, sizeof d) == 0;
  return i == o.i;
}

ExprPtr make_int(std::int64_t v, SrcPos pos) {
  auto e = std::make_shared<Expr>();
  e->op = ExprOp::Int;
  e->ival = v;
  e->pos = pos;
  return e;
}

ExprPtr make_real(double v, SrcPos pos) {
  auto e = std::make_shared<Expr>();
  e->op = ExprOp::Real;
  e->rval = v;
  e->pos = pos;
  return e;
}

ExprPtr make_literal(const Value& v, SrcPos pos) {
  return v.is_real ? make_real(v.d, pos) : make_int(v.i, pos);
}

ExprPtr make_var(std::string name, int slot, SrcPos pos) {
  auto e = std::make_shared<Expr>();
  e->op = ExprOp::Var;
  e->name = std::move(name);
  e->slot = slot;
  e->pos = pos;
  return e;
}

ExprPtr make_index(std::string name, ExprPtr index, SrcPos pos) {
  auto e = std::make_shared<Expr>();
  e->op = ExprOp::Index;
  e->name = std::move(name);
  e->args.push_back(std::move(index));
  e->pos = pos;
  return e;
}

ExprPtr make_unary(ExprOp op, ExprPtr a, SrcPos pos) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->args.push_back(std::move(a));
  e->pos = pos;
  return e;
}

ExprPtr make_binary(ExprOp op, ExprPtr a, ExprPtr b, SrcPos pos) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->args.push_back(std::move(a));
  e->args.push_back(std::move(b));
  e->pos = pos;
  return e;
}

ExprPtr make_call(ExprOp fn, std::vector<ExprPtr> args, SrcPos pos) {
  auto e = std::make_shared<Expr>();
  e->op = fn;
  e->args = std::move(args);
  e->pos = pos;
  return e;
}

namespace {

std::int64_t wrap_add(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(b));
}
std::int64_t wrap_sub(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) - static_cast<std::uint64_t>(b));
}
std::int64_t wrap_mul(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b));
}

Value cmp_result(bool b) { return Value::of_int(b ? 1 : 0); }

}  // namespace

Value apply_op(ExprOp op, const std::vector<Value>& v, SrcPos pos) {
  switch (op) {
    case ExprOp::Neg:
      return v[0].is_real ? Value::of_real(-v[0].d) : Value::of_int(wrap_sub(0, v[0].i));
    case ExprOp::Not:
      return cmp_result(!v[0].truthy());
    case ExprOp::Add:
    case ExprOp::Sub:
    case ExprOp::Mul:
    case ExprOp::Div: {
      if (v[0].is_real || v[1].is_real) {
        double a = v[0].as_real(), b = v[1].as_real();
        switch (op) {
          case ExprOp::Add: return Value::of_real(a + b);
          case ExprOp::Sub: return Value::of_real(a - b);
          case ExprOp::Mul: return Value::of_real(a * b);
          default: return Value::of_real(a / b);
        }
      }
      std::int64_t a = v[0].i, b = v[1].i;
      switch (op) {
        case ExprOp::Add: return Value::of_int(wrap_add(a, b));
        case ExprOp::Sub: return Value::of_int(wrap_sub(a, b));
        case ExprOp::Mul: return Value::of_int(wrap_mul(a, b));
        default:
          if (b == 0) throw Error(ErrorKind::Semantic, "integer division by zero", pos);
          if (b == -1) return Value::of_int(wrap_sub(0, a));  // INT64_MIN / -1 wraps
          return Value::of_int(a / b);
      }
    }
    case ExprOp::Mod:
      if (v[0].is_real || v[1].is_real)
        throw Error(ErrorKind::TypeMismatch, "'%' requires integer operands", pos);
      if (v[1].i == 0) throw Error(ErrorKind::Semantic, "integer modulo by zero", pos);
      if (v[1].i == -1) return Value::of_int(0);
      return Value::of_int(v[0].i % v[1].i);
    case ExprOp::Lt:
    case ExprOp::Le:
    case ExprOp::Gt:
    case ExprOp::Ge:
    case ExprOp::Eq:
    case ExprOp::Ne: {
      if (v[0].is_real || v[1].is_real) {
        double a = v[0].as_real(), b = v[1].as_real();
        switch (op) {
          case ExprOp::Lt: return cmp_result(a < b);
          case ExprOp::Le: return cmp_result(a <= b);
          case ExprOp::Gt: return cmp_result(a > b);
          case ExprOp::Ge: return cmp_result(a >= b);
          case ExprOp::Eq: return cmp_result(a == b);
          default: return cmp_result(a != b);
        }
      }
      std::int64_t a = v[0].i, b = v[1].i;
      switch (op) {
        case ExprOp::Lt: return cmp_result(a < b);
        case ExprOp::Le: return cmp_result(a <= b);
        case ExprOp::Gt: return cmp_result(a > b);
        case ExprOp::Ge: return cmp_result(a >= b);
        case ExprOp::Eq: return cmp_result(a == b);
        default: return cmp_result(a != b);
      }
    }
    case ExprOp::And: return cmp_result(v[0].truthy() && v[1].truthy());
    case ExprOp::Or: return cmp_result(v[0].truthy() || v[1].truthy());
    case ExprOp::Pow: return Value::of_real(std::pow(v[0].as_real(), v[1].as_real()));
    case ExprOp::Floor: return Value::of_real(std::floor(v[0].as_real()));
    case ExprOp::Abs:
      return v[0].is_real ? Value::of_real(std::fabs(v[0].d))
                          : Value::of_int(v[0].i < 0 ? wrap_sub(0, v[0].i) : v[0].i);
    default:
      break;
  }
  throw Error(ErrorKind::Semantic, "not an operator", pos);
}

Value eval(const Expr& e, const Frame& frame) {
  switch (e.op) {
    case ExprOp::Int: return Value::of_int(e.ival);
    case ExprOp::Real: return Value::of_real(e.rval);
    case ExprOp::Var:
      if (e.slot >= 0 && static_cast<std::size_t>(e.slot) < frame.size() && frame[e.slot])
        return *frame[e.slot];
      throw Error(ErrorKind::NonConstantControl, "value of '" + e.name + "' is not known", e.pos);
    case ExprOp::Index:
      throw Error(ErrorKind::TypeMismatch, "qubit reference '" + e.name + "[...]' used as a classical value", e.pos);
    case ExprOp::And: {
      if (!eval(*e.args[0], frame).truthy()) return Value::of_int(0);
      return Value::of_int(eval(*e.args[1], frame).truthy() ? 1 : 0);
    }
    case ExprOp::Or: {
      if (eval(*e.args[0], frame).truthy()) return Value::of_int(1);
      return Value::of_int(eval(*e.args[1], frame).truthy() ? 1 : 0);
    }
    default: {
      std::vector<Value> vals;
      vals.reserve(e.args.size());
      for (const auto& a : e.args) vals.push_back(eval(*a, frame));
      return apply_op(e.op, vals, e.pos);
    }
  }
}

std::optional<Value> try_eval(const Expr& e, const Frame& frame) {
  try {
    return eval(e, frame);
  } catch (const Error&) {
    return std::nullopt;
  }
}

ExprPtr fold(const ExprPtr& e, const Frame& frame) {
  switch (e->op) {
    case ExprOp::Int:
    case ExprOp::Real:
      return e;
    case ExprOp::Var:
      if (e->slot >= 0 && static_cast<std::size_t>(e->slot) < frame.size() && frame[e->slot])
        return make_literal(*frame[e->slot], e->pos);
      return e;
    default:
      break;
  }
  std::vector<ExprPtr> args;
  bool all_lit = true;
  bool changed = false;
  for (const auto& a : e->args) {
    ExprPtr f = fold(a, frame);
    changed |= f != a;
    all_lit &= f->is_literal();
    args.push_back(std::move(f));
  }
  if (e->op != ExprOp::Index && all_lit) {
    std::vector<Value> vals;
    for (const auto& a : args) vals.push_back(a->literal());
    try {
      return make_literal(apply_op(e->op, vals, e->pos), e->pos);
    } catch (const Error&) {
      // leave it for run time, the branch may be dead
    }
  }
  if ((e->op == ExprOp::And || e->op == ExprOp::Or) && args[0]->is_literal()) {
    bool l = args[0]->literal().truthy();
    if (e->op == ExprOp::And && !l) return make_int(0, e->pos);
    if (e->op == ExprOp::Or && l) return make_int(1, e->pos);
  }
  if (!changed) return e;
  auto n = std::make_shared<Expr>(*e);
  n->args = std::move(args);
  return n;
}

std::optional<Affine> affine_in(const Expr& e, int slot) {
  switch (e.op) {
    case ExprOp::Int: return Affine{0, e.ival};
    case ExprOp::Var:
      if (e.slot == slot) return Affine{1, 0};
      return std::nullopt;
    case ExprOp::Neg: {
      auto a = affine_in(*e.args[0], slot);
      if (!a) return std::nullopt;
      return Affine{-a->a, -a->b};
    }
    case ExprOp::Add:
    case ExprOp::Sub: {
      auto a = affine_in(*e.args[0], slot);
      auto b = affine_in(*e.args[1], slot);
      if (!a || !b) return std::nullopt;
      if (e.op == ExprOp::Add) return Affine{a->a + b->a, a->b + b->b};
      return Affine{a->a - b->a, a->b - b->b};
    }
    case ExprOp::Mul: {
      auto a = affine_in(*e.args[0], slot);
      auto b = affine_in(*e.args[1], slot);
      if (!a || !b) return std::nullopt;
      if (a->a != 0 && b->a != 0) return std::nullopt;
      return Affine{a->a * b->b + b->a * a->b, a->b * b->b};
    }
    default:
      return std::nullopt;
  }
}

bool mentions_slot(const Expr& e, int slot) {
  if (e.op == ExprOp::Var) return e.slot == slot;
  for (const auto& a : e.args)
    if (mentions_slot(*a, slot)) return true;
  return false;
}

void collect_slots(const Expr& e, std::vector<int>& out) {
  if (e.op == ExprOp::Var && e.slot >= 0) out.push_back(e.slot);
  for (const auto& a : e.args) collect_slots(*a, out);
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.op != b.op || a.args.size() != b.args.size()) return false;
  switch (a.op) {
    case ExprOp::Int:
      if (a.ival != b.ival) return false;
      break;
    case ExprOp::Real:
      if (std::memcmp(&a.rval, &b.rval, sizeof a.rval) != 0) return false;
      break;
    case ExprOp::Var:
    case ExprOp::Index:
      if (a.name != b.name) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!structurally_equal(*a.args[i], *b.args[i])) return false;
  return true;
}

std::string format_real(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string format_real17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string format_value(const Value& v) {
  return v.is_real ? format_real(v.d) : std::to_string(v.i);
}

namespace {
const char* binop_text(ExprOp op) {
  switch (op) {
    case ExprOp::Add: return "+";
    case ExprOp::Sub: return "-";
    case ExprOp::Mul: return "*";
    case ExprOp::Div: return "/";
    case ExprOp::Mod: return "%";
    case ExprOp::Lt: return "<";
    case ExprOp::Le: return "<=";
    case ExprOp::Gt: return ">";
    case ExprOp::Ge: return ">=";
    case ExprOp::Eq: return "==";
    case ExprOp::Ne: return "!=";
    case ExprOp::And: return "&&";
    case ExprOp::Or: return "||";
    default: return "?";
  }
}
}  // namespace

std::string to_source(const Expr& e) {
  switch (e.op) {
    case ExprOp::Int: return std::to_string(e.ival);
    case ExprOp::Real: return format_real(e.rval);
    case ExprOp::Var: return e.name;
    case ExprOp::Index: return e.name + "[" + to_source(*e.args[0]) + "]";
    case ExprOp::Neg: return "(-" + to_source(*e.args[0]) + ")";
    case ExprOp::Not: return "(!" + to_source(*e.args[0]) + ")";
    case ExprOp::Pow:
      return "pow(" + to_source(*e.args[0]) + ", " + to_source(*e.args[1]) + ")";
    case ExprOp::Floor: return "floor(" + to_source(*e.args[0]) + ")";
    case ExprOp::Abs: return "abs(" + to_source(*e.args[0]) + ")";
    default:
      return "(" + to_source(*e.args[0]) + " " + binop_text(e.op) + " " +
             to_source(*e.args[1]) + ")";
  }
}

}  // namespace qcc
