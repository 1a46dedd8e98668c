// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#include "reference.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <optional>
#include <set>
#include <unordered_map>

namespace qcc::testing {
namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error("reference: " + msg); }

// ---- classical values ----

struct Val {
  bool real = false;
  std::int64_t i = 0;
  double d = 0;

  double r() const { return real ? d : static_cast<double>(i); }
  std::int64_t n() const { return real ? static_cast<std::int64_t>(d) : i; }
  bool truth() const { return real ? d != 0 : i != 0; }
};

Val vi(std::int64_t x) { return Val{false, x, 0}; }
Val vr(double x) { return Val{true, 0, x}; }

std::int64_t wrap(std::uint64_t x) { return static_cast<std::int64_t>(x); }

using Env = std::map<std::string, Val>;
using Lookup = std::function<Val(const std::string&)>;

Val evaluate(const Expr& e, const Lookup& var) {
  auto arg = [&](std::size_t k) { return evaluate(*e.args.at(k), var); };
  switch (e.op) {
    case ExprOp::Int: return vi(e.ival);
    case ExprOp::Real: return vr(e.rval);
    case ExprOp::Var: return var(e.name);
    case ExprOp::Index: fail("qubit reference '" + e.name + "' in a classical expression");
    case ExprOp::Neg: {
      Val a = arg(0);
      return a.real ? vr(-a.d) : vi(wrap(0 - static_cast<std::uint64_t>(a.i)));
    }
    case ExprOp::Not: return vi(!arg(0).truth());
    case ExprOp::Add:
    case ExprOp::Sub:
    case ExprOp::Mul:
    case ExprOp::Div: {
      Val a = arg(0), b = arg(1);
      if (a.real || b.real) {
        double x = a.r(), y = b.r();
        if (e.op == ExprOp::Add) return vr(x + y);
        if (e.op == ExprOp::Sub) return vr(x - y);
        if (e.op == ExprOp::Mul) return vr(x * y);
        return vr(x / y);
      }
      auto ua = static_cast<std::uint64_t>(a.i), ub = static_cast<std::uint64_t>(b.i);
      if (e.op == ExprOp::Add) return vi(wrap(ua + ub));
      if (e.op == ExprOp::Sub) return vi(wrap(ua - ub));
      if (e.op == ExprOp::Mul) return vi(wrap(ua * ub));
      if (b.i == 0) fail("division by zero");
      if (b.i == -1) return vi(wrap(0 - ua));
      return vi(a.i / b.i);
    }
    case ExprOp::Mod: {
      Val a = arg(0), b = arg(1);
      if (a.real || b.real || b.i == 0) fail("bad modulo");
      return vi(b.i == -1 ? 0 : a.i % b.i);
    }
    case ExprOp::Lt:
    case ExprOp::Le:
    case ExprOp::Gt:
    case ExprOp::Ge:
    case ExprOp::Eq:
    case ExprOp::Ne: {
      Val a = arg(0), b = arg(1);
      int c;
      if (a.real || b.real) c = a.r() < b.r() ? -1 : (a.r() > b.r() ? 1 : 0);
      else c = a.i < b.i ? -1 : (a.i > b.i ? 1 : 0);
      switch (e.op) {
        case ExprOp::Lt: return vi(c < 0);
        case ExprOp::Le: return vi(c <= 0);
        case ExprOp::Gt: return vi(c > 0);
        case ExprOp::Ge: return vi(c >= 0);
        case ExprOp::Eq: return vi(c == 0);
        default: return vi(c != 0);
      }
    }
    case ExprOp::And: return vi(arg(0).truth() && arg(1).truth());
    case ExprOp::Or: return vi(arg(0).truth() || arg(1).truth());
    case ExprOp::Pow: return vr(std::pow(arg(0).r(), arg(1).r()));
    case ExprOp::Floor: return vr(std::floor(arg(0).r()));
    case ExprOp::Abs: {
      Val a = arg(0);
      return a.real ? vr(std::fabs(a.d)) : vi(a.i < 0 ? wrap(0 - static_cast<std::uint64_t>(a.i)) : a.i);
    }
  }
  fail("unknown operator");
}

bool compare(CmpOp op, const Val& a, const Val& b) {
  double x = a.r(), y = b.r();
  bool lt = (a.real || b.real) ? x < y : a.i < b.i;
  bool gt = (a.real || b.real) ? x > y : a.i > b.i;
  switch (op) {
    case CmpOp::Lt: return lt;
    case CmpOp::Le: return !gt;
    case CmpOp::Gt: return gt;
    case CmpOp::Ge: return !lt;
    case CmpOp::Eq: return !lt && !gt;
    case CmpOp::Ne: return lt || gt;
  }
  return false;
}

const AstModule& find_module(const Ast& ast, const std::string& name) {
  for (const auto& m : ast.modules)
    if (m.name == name) return m;
  fail("no module '" + name + "'");
}

// ---- quantum programs ----

struct Activation {
  Env vars;
  std::map<std::string, bool> is_real;
  std::map<std::string, std::vector<std::string>> arrays;
};

class Interpreter {
 public:
  Interpreter(const Ast& ast, std::uint64_t budget) : ast_(ast), budget_(budget) {}

  ReferenceRun run() {
    const AstModule& entry = find_module(ast_, "main");
    Activation act;
    enter(entry, act, "");
    ReferenceRun r;
    r.trace = std::move(trace_);
    r.peak_qubits = peak_;
    return r;
  }

 private:
  void collect_decls(const std::vector<AstStmt>& body, std::vector<const AstStmt*>& out) {
    for (const auto& s : body) {
      if (s.kind == AstStmt::Kind::QubitDecl) out.push_back(&s);
      collect_decls(s.body, out);
      collect_decls(s.else_body, out);
    }
  }

  Val value_of(Activation& a, const Expr& e) {
    return evaluate(e, [&](const std::string& n) {
      auto it = a.vars.find(n);
      if (it == a.vars.end()) fail("unbound variable '" + n + "'");
      return it->second;
    });
  }

  void assign(Activation& a, const std::string& n, Val v) {
    auto t = a.is_real.find(n);
    if (t == a.is_real.end()) fail("assignment to undeclared '" + n + "'");
    a.vars[n] = t->second ? vr(v.r()) : vi(v.n());
  }

  // Locals are allocated for the whole activation, wherever declared.
  void enter(const AstModule& m, Activation& a, const std::string& prefix) {
    std::vector<const AstStmt*> decls;
    collect_decls(m.body, decls);
    std::uint64_t allocated = 0;
    for (const AstStmt* d : decls)
      for (const auto& [name, size_e] : d->decls) {
        std::int64_t n = value_of(a, *size_e).n();
        if (n <= 0) fail("bad array size");
        auto& names = a.arrays[name];
        for (std::int64_t k = 0; k < n; ++k) names.push_back(prefix + name + "[" + std::to_string(k) + "]");
        allocated += static_cast<std::uint64_t>(n);
      }
    live_ += allocated;
    peak_ = std::max(peak_, live_);
    exec(m.body, a);
    live_ -= allocated;
  }

  const std::string& qubit(Activation& a, const Expr& e) {
    if (e.op != ExprOp::Index) fail("gate operand is not an element reference");
    auto it = a.arrays.find(e.name);
    if (it == a.arrays.end()) fail("unknown qubit array '" + e.name + "'");
    std::int64_t k = value_of(a, *e.args.at(0)).n();
    if (k < 0 || k >= static_cast<std::int64_t>(it->second.size())) fail("qubit index out of range");
    return it->second[static_cast<std::size_t>(k)];
  }

  std::vector<std::string> qubit_arg(Activation& a, const AstArg& arg) {
    if (arg.is_slice) {
      const auto& arr = a.arrays.at(arg.name);
      std::int64_t lo = value_of(a, *arg.lo).n(), hi = value_of(a, *arg.hi).n();
      if (lo < 0 || hi < lo || hi >= static_cast<std::int64_t>(arr.size())) fail("bad slice");
      return {arr.begin() + lo, arr.begin() + hi + 1};
    }
    if (arg.expr->op == ExprOp::Var) {
      auto it = a.arrays.find(arg.expr->name);
      if (it == a.arrays.end()) fail("unknown qubit array '" + arg.expr->name + "'");
      return it->second;
    }
    return {qubit(a, *arg.expr)};
  }

  void call(Activation& a, const AstStmt& s) {
    const AstModule& callee = find_module(ast_, s.callee);
    if (callee.is_ctqg) throw Unsupported("call to CTQG module '" + callee.name + "'");
    if (callee.params.size() != s.args.size()) fail("arity mismatch calling " + callee.name);
    Activation inner;
    std::vector<std::pair<const AstParam*, std::vector<std::string>>> qubit_params;
    for (std::size_t k = 0; k < callee.params.size(); ++k) {
      const AstParam& p = callee.params[k];
      if (p.kind == ParamKind::QubitArray) {
        qubit_params.emplace_back(&p, qubit_arg(a, s.args[k]));
      } else {
        Val v = value_of(a, *s.args[k].expr);
        bool real = p.kind == ParamKind::Double;
        inner.is_real[p.name] = real;
        inner.vars[p.name] = real ? vr(v.r()) : vi(v.n());
      }
    }
    for (auto& [p, names] : qubit_params) {
      std::int64_t n = value_of(inner, *p->size).n();
      if (n != static_cast<std::int64_t>(names.size())) fail("argument size mismatch calling " + callee.name);
      inner.arrays[p->name] = std::move(names);
    }
    enter(callee, inner, "#" + std::to_string(++instances_) + ".");
  }

  void exec(const std::vector<AstStmt>& body, Activation& a) {
    for (const auto& s : body) exec(s, a);
  }

  void exec(const AstStmt& s, Activation& a) {
    switch (s.kind) {
      case AstStmt::Kind::Gate: {
        if (trace_.size() >= budget_) fail("gate budget exceeded");
        TraceGate g;
        g.kind = s.gate;
        for (const auto& op : s.operands) g.qubits.push_back(qubit(a, *op));
        if (s.angle) g.angle = value_of(a, *s.angle).r();
        trace_.push_back(std::move(g));
        break;
      }
      case AstStmt::Kind::Call: call(a, s); break;
      case AstStmt::Kind::For: {
        if (s.declares_var || !a.is_real.count(s.var)) a.is_real[s.var] = false;
        assign(a, s.var, value_of(a, *s.start));
        const Val step = value_of(a, *s.step);
        while (compare(s.cmp, a.vars.at(s.var), value_of(a, *s.end))) {
          exec(s.body, a);
          Val cur = a.vars.at(s.var);
          assign(a, s.var, cur.real || step.real ? vr(cur.r() + step.r())
                                                 : vi(wrap(static_cast<std::uint64_t>(cur.i) +
                                                           static_cast<std::uint64_t>(step.i))));
        }
        break;
      }
      case AstStmt::Kind::If:
        if (value_of(a, *s.cond).truth()) exec(s.body, a);
        else exec(s.else_body, a);
        break;
      case AstStmt::Kind::Block: exec(s.body, a); break;
      case AstStmt::Kind::QubitDecl: break;
      case AstStmt::Kind::VarDecl:
        for (const auto& [name, init] : s.decls) {
          a.is_real[name] = s.is_real;
          if (init) assign(a, name, value_of(a, *init));
        }
        break;
      case AstStmt::Kind::Assign: assign(a, s.var, value_of(a, *s.value)); break;
      default: throw Unsupported("CTQG statement in a quantum module");
    }
  }

  const Ast& ast_;
  std::uint64_t budget_;
  Trace trace_;
  std::uint64_t instances_ = 0;
  std::uint64_t live_ = 0, peak_ = 0;
};

// ---- CTQG ----

class CtqgInterpreter {
 public:
  CtqgInterpreter(const AstModule& m, const std::map<std::string, std::uint64_t>& inputs) : m_(m) {
    for (const auto& p : m.params) {
      if (p.kind == ParamKind::QInt) {
        width_[p.name] = static_cast<int>(constant(*p.size));
        auto it = inputs.find(p.name);
        reg_[p.name] = it == inputs.end() ? 0 : it->second & mask(p.name);
      } else {
        fail("classical parameters are not supported by the CTQG reference");
      }
    }
  }

  std::map<std::string, std::uint64_t> run() {
    exec(m_.body);
    std::map<std::string, std::uint64_t> out;
    for (const auto& p : m_.params) out[p.name] = reg_.at(p.name);
    return out;
  }

 private:
  std::int64_t constant(const Expr& e) {
    return evaluate(e, [&](const std::string& n) -> Val {
             auto it = vars_.find(n);
             if (it == vars_.end()) fail("unbound '" + n + "' in a constant");
             return it->second;
           })
        .n();
  }

  std::uint64_t mask(const std::string& r) const {
    int w = width_.at(r);
    return w >= 64 ? ~0ULL : (1ULL << w) - 1;
  }

  // A register, a product of two registers, or a classical constant.
  std::uint64_t operand(const Expr& e) {
    if (e.op == ExprOp::Var && reg_.count(e.name)) return reg_.at(e.name);
    if (e.op == ExprOp::Mul && e.args[0]->op == ExprOp::Var && reg_.count(e.args[0]->name) &&
        e.args[1]->op == ExprOp::Var && reg_.count(e.args[1]->name))
      return reg_.at(e.args[0]->name) * reg_.at(e.args[1]->name);
    return static_cast<std::uint64_t>(constant(e));
  }

  bool condition(const Expr& e) {
    auto side = [&](const Expr& x) -> std::int64_t {
      if (x.op == ExprOp::Var && reg_.count(x.name)) return static_cast<std::int64_t>(reg_.at(x.name));
      return constant(x);
    };
    std::int64_t a = side(*e.args.at(0)), b = side(*e.args.at(1));
    switch (e.op) {
      case ExprOp::Lt: return a < b;
      case ExprOp::Le: return a <= b;
      case ExprOp::Gt: return a > b;
      case ExprOp::Ge: return a >= b;
      case ExprOp::Eq: return a == b;
      case ExprOp::Ne: return a != b;
      default: fail("unsupported $if condition");
    }
  }

  void exec(const std::vector<AstStmt>& body) {
    for (const auto& s : body) exec(s);
  }

  void exec(const AstStmt& s) {
    switch (s.kind) {
      case AstStmt::Kind::QintDecl:
        for (const auto& [name, w] : s.decls) {
          width_[name] = static_cast<int>(constant(*w));
          reg_[name] = 0;
        }
        break;
      case AstStmt::Kind::VarDecl:
        for (const auto& [name, init] : s.decls) vars_[name] = init ? vi(constant(*init)) : vi(0);
        break;
      case AstStmt::Kind::Assign: vars_[s.var] = vi(constant(*s.value)); break;
      case AstStmt::Kind::For: {
        vars_[s.var] = vi(constant(*s.start));
        const std::int64_t step = constant(*s.step);
        while (compare(s.cmp, vars_.at(s.var), vi(constant(*s.end)))) {
          exec(s.body);
          vars_[s.var] = vi(vars_.at(s.var).i + step);
        }
        break;
      }
      case AstStmt::Kind::CtqgOp: {
        std::uint64_t& r = reg_.at(s.var);
        const std::uint64_t v = operand(*s.value);
        if (s.ctqg_op == CtqgOpKind::Init) r ^= v;
        else if (s.ctqg_op == CtqgOpKind::Add) r += v;
        else r -= v;
        r &= mask(s.var);
        break;
      }
      case AstStmt::Kind::CtqgIf:
        if (condition(*s.cond)) exec(s.body);
        else exec(s.else_body);
        break;
      case AstStmt::Kind::Block: exec(s.body); break;
      default: fail("unsupported statement in a CTQG module");
    }
  }

  const AstModule& m_;
  std::map<std::string, std::uint64_t> reg_;
  std::map<std::string, int> width_;
  std::map<std::string, Val> vars_;
};

std::string gate_text(const TraceGate& g) {
  std::string s(gate_name(g.kind));
  for (const auto& q : g.qubits) s += " " + q;
  if (gate_has_angle(g.kind)) s += " @" + std::to_string(g.angle);
  return s;
}

}  // namespace

ReferenceRun reference_run(const Ast& ast, std::uint64_t budget) { return Interpreter(ast, budget).run(); }

Trace canonical_locals(const Trace& t) {
  std::unordered_map<std::string, std::string> names;
  Trace out = t;
  for (auto& g : out)
    for (auto& q : g.qubits) {
      if (q.empty() || q[0] != '#') continue;
      auto [it, fresh] = names.try_emplace(q, "#" + std::to_string(names.size()));
      q = it->second;
    }
  return out;
}

bool traces_equal(const Trace& a, const Trace& b, std::string* why) {
  const Trace ca = canonical_locals(a), cb = canonical_locals(b);
  for (std::size_t k = 0; k < std::min(ca.size(), cb.size()); ++k) {
    const auto& x = ca[k];
    const auto& y = cb[k];
    if (x.kind != y.kind || x.qubits != y.qubits ||
        std::bit_cast<std::uint64_t>(x.angle) != std::bit_cast<std::uint64_t>(y.angle)) {
      if (why) *why = "gate " + std::to_string(k) + ": " + gate_text(x) + " vs " + gate_text(y);
      return false;
    }
  }
  if (ca.size() != cb.size()) {
    if (why) *why = "lengths " + std::to_string(ca.size()) + " vs " + std::to_string(cb.size());
    return false;
  }
  return true;
}

std::uint64_t reference_critical_path(const Trace& t) {
  std::unordered_map<std::string, std::uint64_t> last;
  std::uint64_t len = 0;
  for (const auto& g : t) {
    std::uint64_t at = 0;
    for (const auto& q : g.qubits) at = std::max(at, last[q]);
    ++at;
    for (const auto& q : g.qubits) last[q] = at;
    len = std::max(len, at);
  }
  return len;
}

std::array<std::uint64_t, kNumGateKinds> reference_histogram(const Trace& t) {
  std::array<std::uint64_t, kNumGateKinds> h{};
  for (const auto& g : t) ++h[static_cast<int>(g.kind)];
  return h;
}

std::map<std::string, std::uint64_t> reference_ctqg(const Ast& ast, const std::string& module,
                                                     const std::map<std::string, std::uint64_t>& inputs) {
  return CtqgInterpreter(find_module(ast, module), inputs).run();
}

}  // namespace qcc::testing
