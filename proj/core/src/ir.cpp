// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#include "qcc/ir.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

namespace qcc {

const char* loop_kind_name(LoopKind k) {
  switch (k) {
    case LoopKind::Classical: return "classical";
    case LoopKind::Forall: return "forall";
    case LoopKind::Repeat: return "repeat";
  }
  return "?";
}

int ModuleDef::find_array(const std::string& n) const {
  for (std::size_t i = 0; i < arrays.size(); ++i)
    if (arrays[i].name == n) return static_cast<int>(i);
  return -1;
}

int ModuleDef::find_var(const std::string& n) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i].name == n) return static_cast<int>(i);
  return -1;
}

const ModuleDef* Program::find(const std::string& name) const {
  auto it = index.find(name);
  return it == index.end() ? nullptr : &modules[it->second];
}

ModuleDef* Program::find(const std::string& name) {
  auto it = index.find(name);
  return it == index.end() ? nullptr : &modules[it->second];
}

void Program::add(ModuleDef m) {
  index[m.name] = static_cast<int>(modules.size());
  modules.push_back(std::move(m));
}

namespace {

void collect_calls(const std::vector<Inst>& body, std::vector<std::pair<const CallInst*, SrcPos>>& out) {
  for (const auto& i : body) {
    if (auto* c = std::get_if<CallInst>(&i.v)) out.push_back({c, i.pos});
    else if (auto* l = std::get_if<LoopInst>(&i.v)) collect_calls(l->body, out);
    else if (auto* c2 = std::get_if<CondInst>(&i.v)) {
      collect_calls(c2->then_body, out);
      collect_calls(c2->else_body, out);
    }
  }
}

}  // namespace

CallGraph build_call_graph(const Program& p) {
  CallGraph g;
  std::map<std::string, std::vector<std::pair<std::string, SrcPos>>> succ;
  for (const auto& m : p.modules) {
    g.nodes.push_back(m.name);
    std::vector<std::pair<const CallInst*, SrcPos>> calls;
    collect_calls(m.body, calls);
    int site = 0;
    for (const auto& [c, pos] : calls) {
      if (!p.find(c->callee))
        throw Error(ErrorKind::UndefinedModule, "call to undefined module '" + c->callee + "'", pos, p.origin);
      g.edges.push_back({m.name, c->callee, site++});
      succ[m.name].push_back({c->callee, pos});
    }
  }
  enum Color { White, Grey, Black };
  std::map<std::string, Color> color;
  std::set<std::string> pre_seen;
  std::vector<std::string> stack;
  std::function<void(const std::string&)> dfs = [&](const std::string& n) {
    color[n] = Grey;
    stack.push_back(n);
    if (pre_seen.insert(n).second) g.preorder.push_back(n);
    for (const auto& [c, pos] : succ[n]) {
      if (color[c] == Grey) {
        std::string cycle;
        auto it = std::find(stack.begin(), stack.end(), c);
        for (; it != stack.end(); ++it) cycle += *it + " -> ";
        throw Error(ErrorKind::Recursion, "recursive call cycle " + cycle + c, pos, p.origin);
      }
      if (color[c] == White) dfs(c);
    }
    stack.pop_back();
    color[n] = Black;
    g.postorder.push_back(n);
  };
  if (p.find(p.entry)) dfs(p.entry);
  for (const auto& n : g.nodes)
    if (color[n] == White) dfs(n);
  return g;
}

std::optional<std::int64_t> trip_count(const LoopInst& loop, const Frame& env) {
  auto s = try_eval(*loop.start, env);
  auto e = try_eval(*loop.end, env);
  auto st = try_eval(*loop.step, env);
  if (!s || !e || !st) return std::nullopt;
  const std::int64_t start = s->as_int();
  const std::int64_t step = st->as_int();
  const Value end = *e;
  auto holds = [&](__int128 k) {
    __int128 v = start + k * step;
    if (v > INT64_MAX || v < INT64_MIN) return false;
    return cmp_holds(loop.cmp, Value::of_int(static_cast<std::int64_t>(v)), end);
  };
  if (!holds(0)) return 0;
  auto never_ends = [&]() -> std::optional<std::int64_t> {
    throw Error(ErrorKind::Semantic, "loop never terminates", loop.start->pos);
  };
  if (step == 0) return never_ends();
  switch (loop.cmp) {
    case CmpOp::Eq:
      return 1;
    case CmpOp::Ne: {
      if (end.is_real && end.d != std::floor(end.d)) return never_ends();
      __int128 diff = static_cast<__int128>(end.as_int()) - start;
      if (diff % step != 0 || diff / step < 0) return never_ends();
      return static_cast<std::int64_t>(diff / step);
    }
    case CmpOp::Lt:
    case CmpOp::Le:
      if (step < 0) return never_ends();
      break;
    case CmpOp::Gt:
    case CmpOp::Ge:
      if (step > 0) return never_ends();
      break;
  }
  // First k where the condition fails; estimate then correct.
  long double est = (static_cast<long double>(end.as_real()) - start) / step;
  __int128 k = est < 0 ? 0 : est > 9.2e18L ? static_cast<__int128>(INT64_MAX) : static_cast<__int128>(est);
  if (k < 1) k = 1;
  while (k > 1 && !holds(k - 1)) --k;
  while (holds(k)) ++k;
  return static_cast<std::int64_t>(k);
}

Value loop_value(const LoopInst& loop, const Frame& env, std::int64_t k) {
  return Value::of_int(eval(*loop.start, env).as_int() + k * eval(*loop.step, env).as_int());
}

namespace {

void dump_body(const ModuleDef& m, const std::vector<Inst>& body, int depth, std::ostringstream& os) {
  std::string ind(2 * depth, ' ');
  for (const auto& inst : body) {
    os << ind;
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, GateInst>) {
            os << "gate " << gate_name(x.kind) << " ";
            for (std::size_t i = 0; i < x.qubits.size(); ++i)
              os << (i ? ", " : "") << m.arrays[x.qubits[i].array].name << "[" << to_source(*x.qubits[i].index) << "]";
            if (x.angle) os << " angle " << to_source(*x.angle);
            os << "\n";
          } else if constexpr (std::is_same_v<T, CallInst>) {
            os << "call " << x.callee << " (";
            bool first = true;
            for (const auto& q : x.qargs) {
              os << (first ? "" : ", ") << m.arrays[q.array].name;
              if (!q.whole) os << "[" << to_source(*q.lo) << ":" << to_source(*q.hi) << "]";
              first = false;
            }
            for (const auto& c : x.cargs) {
              os << (first ? "" : ", ") << to_source(*c);
              first = false;
            }
            os << ")\n";
          } else if constexpr (std::is_same_v<T, LoopInst>) {
            os << "loop " << m.vars[x.var].name << " = " << to_source(*x.start) << "; " << m.vars[x.var].name << " "
               << cmp_text(x.cmp) << " " << to_source(*x.end) << "; += " << to_source(*x.step) << "  ["
               << loop_kind_name(x.cls.kind);
            if (x.cls.kind == LoopKind::Repeat) os << " " << x.cls.trip_count;
            if (x.cls.kind == LoopKind::Forall)
              os << " " << m.arrays[x.cls.array].name << "[" << x.cls.lo << ":" << x.cls.hi << "]";
            if (!x.cls.final) os << " provisional";
            os << "]\n";
            dump_body(m, x.body, depth + 1, os);
          } else if constexpr (std::is_same_v<T, CondInst>) {
            os << "if " << to_source(*x.guard) << "\n";
            dump_body(m, x.then_body, depth + 1, os);
            if (!x.else_body.empty()) {
              os << ind << "else\n";
              dump_body(m, x.else_body, depth + 1, os);
            }
          } else {
            os << "assign " << m.vars[x.var].name << " = " << to_source(*x.value) << "\n";
          }
        },
        inst.v);
  }
}

void dump_ctqg(const ModuleDef& m, const std::vector<CtqgStmt>& body, int depth, std::ostringstream& os) {
  std::string ind(2 * depth, ' ');
  auto reg = [&](int r) { return m.registers[r].name; };
  for (const auto& s : body) {
    os << ind;
    using K = CtqgStmt::Kind;
    switch (s.kind) {
      case K::Init: os << reg(s.reg) << " := " << to_source(*s.value) << "\n"; break;
      case K::AddConst: os << reg(s.reg) << " += " << to_source(*s.value) << "\n"; break;
      case K::SubConst: os << reg(s.reg) << " -= " << to_source(*s.value) << "\n"; break;
      case K::AddReg: os << reg(s.reg) << " += " << reg(s.src1) << "\n"; break;
      case K::SubReg: os << reg(s.reg) << " -= " << reg(s.src1) << "\n"; break;
      case K::AddMul: os << reg(s.reg) << " += " << reg(s.src1) << " * " << reg(s.src2) << "\n"; break;
      case K::Assign: os << "assign " << m.vars[s.var].name << " = " << to_source(*s.value) << "\n"; break;
      case K::For:
        os << "loop " << m.vars[s.var].name << " = " << to_source(*s.start) << "; " << cmp_text(s.cmp) << " "
           << to_source(*s.end) << "; += " << to_source(*s.step) << "\n";
        dump_ctqg(m, s.body, depth + 1, os);
        break;
      case K::If:
        os << "$if " << reg(s.reg) << " " << cmp_text(s.cmp) << " "
           << (s.src1 >= 0 ? reg(s.src1) : to_source(*s.value)) << "\n";
        dump_ctqg(m, s.body, depth + 1, os);
        if (!s.else_body.empty()) {
          os << ind << "$else\n";
          dump_ctqg(m, s.else_body, depth + 1, os);
        }
        break;
    }
  }
}

}  // namespace

std::string dump_ir(const Program& p) {
  std::ostringstream os;
  for (const auto& m : p.modules) {
    os << (m.is_ctqg ? "ctqg module " : "module ") << m.name << "\n";
    for (int slot : m.classical_params)
      os << "  param " << (m.vars[slot].is_real ? "double " : "int ") << m.vars[slot].name << "\n";
    for (std::size_t a = 0; a < m.arrays.size(); ++a) {
      const auto& d = m.arrays[a];
      os << "  " << (d.is_param ? "param " : "local ") << (m.is_ctqg ? "qint " : "qbit ") << d.name << "["
         << (d.size >= 0 ? std::to_string(d.size) : to_source(*d.size_expr)) << "]";
      if (m.is_ctqg && m.registers[a].output) os << " output";
      os << "\n";
    }
    if (m.is_ctqg) dump_ctqg(m, m.ctqg_body, 1, os);
    else dump_body(m, m.body, 1, os);
  }
  return os.str();
}

}  // namespace qcc
