// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#include "qcc/flat.hpp"

#include <bit>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include "qcc/error.hpp"
#include "qcc/expr.hpp"

namespace qcc {

namespace {

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > std::numeric_limits<std::uint64_t>::max() / b ? std::numeric_limits<std::uint64_t>::max() : a * b;
}

}  // namespace

std::strong_ordering MemoKey::operator<=>(const MemoKey& o) const {
  if (auto c = module <=> o.module; c != 0) return c;
  if (auto c = ints <=> o.ints; c != 0) return c;
  if (auto c = reals.size() <=> o.reals.size(); c != 0) return c;
  for (std::size_t i = 0; i < reals.size(); ++i) {
    auto c = std::bit_cast<std::uint64_t>(reals[i]) <=> std::bit_cast<std::uint64_t>(o.reals[i]);
    if (c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string MemoKey::str() const {
  std::string s = module + "(";
  bool first = true;
  for (auto v : ints) {
    s += (first ? "" : ", ") + std::to_string(v);
    first = false;
  }
  for (auto v : reals) {
    s += (first ? "" : ", ") + format_real(v);
    first = false;
  }
  return s + ")";
}

bool FGate::operator==(const FGate& o) const {
  return kind == o.kind && qubits == o.qubits && same_bits(angle, o.angle);
}

bool FForall::operator==(const FForall& o) const {
  return kind == o.kind && ops == o.ops && count == o.count && same_bits(angle, o.angle);
}

bool FRepeat::operator==(const FRepeat& o) const { return count == o.count && body == o.body; }

int FlatModule::find_reg(const std::string& n) const {
  for (std::size_t i = 0; i < regs.size(); ++i)
    if (regs[i].name == n) return static_cast<int>(i);
  return -1;
}

const FlatModule* SpecializedProgram::find(const std::string& name) const {
  int i = find_index(name);
  return i < 0 ? nullptr : &modules[i];
}

FlatModule* SpecializedProgram::find(const std::string& name) {
  int i = find_index(name);
  return i < 0 ? nullptr : &modules[i];
}

int SpecializedProgram::find_index(const std::string& name) const {
  auto it = index.find(name);
  return it == index.end() ? -1 : it->second;
}

void SpecializedProgram::add(FlatModule m) {
  index[m.name] = static_cast<int>(modules.size());
  modules.push_back(std::move(m));
}

namespace {

template <typename F>
void for_each_call(const std::vector<FInst>& body, F&& f) {
  for (const auto& i : body) {
    if (const auto* c = std::get_if<FCall>(&i.v)) f(*c);
    else if (const auto* r = std::get_if<FRepeat>(&i.v)) for_each_call(r->body, f);
  }
}

}  // namespace

std::vector<int> SpecializedProgram::postorder() const {
  std::vector<int> out;
  std::vector<char> seen(modules.size(), 0);
  std::function<void(int)> dfs = [&](int m) {
    seen[m] = 1;
    for_each_call(modules[m].body, [&](const FCall& c) {
      int k = find_index(c.callee);
      if (k >= 0 && !seen[k]) dfs(k);
    });
    out.push_back(m);
  };
  if (int e = find_index(entry); e >= 0) dfs(e);
  for (std::size_t i = 0; i < modules.size(); ++i)
    if (!seen[i]) dfs(static_cast<int>(i));
  return out;
}

namespace {

void validate_body(const SpecializedProgram& p, const FlatModule& m, const std::vector<FInst>& body) {
  auto bad = [&](const std::string& msg) { throw Error(ErrorKind::Semantic, "module '" + m.name + "': " + msg); };
  auto check_qubit = [&](int reg, std::int64_t idx) {
    if (reg < 0 || reg >= static_cast<int>(m.regs.size())) bad("bad register number");
    if (idx < 0 || idx >= m.regs[reg].size)
      bad("index " + std::to_string(idx) + " out of range for '" + m.regs[reg].name + "'");
  };
  for (const auto& inst : body) {
    if (const auto* g = std::get_if<FGate>(&inst.v)) {
      if (static_cast<int>(g->qubits.size()) != gate_arity(g->kind)) bad("gate arity");
      for (const auto& q : g->qubits) check_qubit(q.reg, q.idx);
    } else if (const auto* c = std::get_if<FCall>(&inst.v)) {
      const FlatModule* callee = p.find(c->callee);
      if (!callee) bad("call to undefined module '" + c->callee + "'");
      if (static_cast<int>(c->args.size()) != callee->num_params) bad("argument count for '" + c->callee + "'");
      for (std::size_t j = 0; j < c->args.size(); ++j) {
        const FArg& a = c->args[j];
        if (a.len != callee->regs[j].size)
          bad("argument " + std::to_string(j + 1) + " of '" + c->callee + "' has " + std::to_string(a.len) +
              " qubit(s), expected " + std::to_string(callee->regs[j].size));
        check_qubit(a.reg, a.lo);
        check_qubit(a.reg, a.lo + a.len - 1);
      }
    } else if (const auto* f = std::get_if<FForall>(&inst.v)) {
      if (static_cast<int>(f->ops.size()) != gate_arity(f->kind) || f->count < 1) bad("malformed forall");
      for (const auto& o : f->ops) {
        check_qubit(o.reg, o.start);
        check_qubit(o.reg, o.start + (f->count - 1) * o.step);
      }
    } else {
      validate_body(p, m, std::get<FRepeat>(inst.v).body);
    }
  }
}

}  // namespace

void validate(const SpecializedProgram& p) {
  if (!p.find(p.entry)) throw Error(ErrorKind::UndefinedModule, "no entry module '" + p.entry + "'");
  for (const auto& m : p.modules) validate_body(p, m, m.body);
}

std::uint64_t total_gate_count(const SpecializedProgram& p) {
  std::vector<std::uint64_t> own(p.modules.size(), 0);
  std::function<std::uint64_t(const std::vector<FInst>&)> count = [&](const std::vector<FInst>& body) {
    std::uint64_t n = 0;
    for (const auto& i : body) {
      if (std::holds_alternative<FGate>(i.v)) n = sat_add(n, 1);
      else if (const auto* f = std::get_if<FForall>(&i.v)) n = sat_add(n, static_cast<std::uint64_t>(f->count));
      else if (const auto* c = std::get_if<FCall>(&i.v)) n = sat_add(n, own[p.find_index(c->callee)]);
      else {
        const auto& r = std::get<FRepeat>(i.v);
        n = sat_add(n, sat_mul(r.count, count(r.body)));
      }
    }
    return n;
  };
  for (int m : p.postorder()) own[m] = count(p.modules[m].body);
  int e = p.find_index(p.entry);
  return e < 0 ? 0 : own[e];
}

namespace {

struct Binding {
  std::int64_t owner;
  int module;
  int reg;
  std::int64_t off;
};

class Expander {
 public:
  Expander(const SpecializedProgram& p, std::uint64_t budget, const std::function<void(const ExpandedGate&)>& visit)
      : p_(p), budget_(budget), visit_(visit) {}

  void run() {
    int e = p_.find_index(p_.entry);
    if (e < 0) throw Error(ErrorKind::UndefinedModule, "no entry module '" + p_.entry + "'");
    if (total_gate_count(p_) > budget_)
      throw Error(ErrorKind::BudgetExceeded,
                  "program expands to more than " + std::to_string(budget_) + " gates");
    std::vector<Binding> bind;
    for (std::size_t r = 0; r < p_.modules[e].regs.size(); ++r) bind.push_back({0, e, static_cast<int>(r), 0});
    body(p_.modules[e].body, bind);
  }

 private:
  PhysQubit phys(const std::vector<Binding>& bind, int reg, std::int64_t idx) const {
    const Binding& b = bind[reg];
    return PhysQubit{b.owner, b.module, b.reg, b.off + idx};
  }

  void emit(const ExpandedGate& g) {
    if (++emitted_ > budget_)
      throw Error(ErrorKind::BudgetExceeded, "program expands to more than " + std::to_string(budget_) + " gates");
    visit_(g);
  }

  void body(const std::vector<FInst>& insts, const std::vector<Binding>& bind) {
    for (const auto& inst : insts) {
      if (const auto* g = std::get_if<FGate>(&inst.v)) {
        ExpandedGate e;
        e.kind = g->kind;
        e.angle = g->angle;
        e.n = static_cast<int>(g->qubits.size());
        for (int k = 0; k < e.n; ++k) e.q[k] = phys(bind, g->qubits[k].reg, g->qubits[k].idx);
        emit(e);
      } else if (const auto* f = std::get_if<FForall>(&inst.v)) {
        for (std::int64_t t = 0; t < f->count; ++t) {
          ExpandedGate e;
          e.kind = f->kind;
          e.angle = f->angle;
          e.n = static_cast<int>(f->ops.size());
          for (int k = 0; k < e.n; ++k) e.q[k] = phys(bind, f->ops[k].reg, f->ops[k].start + t * f->ops[k].step);
          emit(e);
        }
      } else if (const auto* c = std::get_if<FCall>(&inst.v)) {
        int ci = p_.find_index(c->callee);
        const FlatModule& callee = p_.modules[ci];
        std::vector<Binding> cb;
        cb.reserve(callee.regs.size());
        for (const auto& a : c->args) {
          Binding b = bind[a.reg];
          b.off += a.lo;
          cb.push_back(b);
        }
        const std::int64_t owner = ++instances_;
        for (std::size_t r = cb.size(); r < callee.regs.size(); ++r) cb.push_back({owner, ci, static_cast<int>(r), 0});
        body(callee.body, cb);
      } else {
        const auto& r = std::get<FRepeat>(inst.v);
        for (std::uint64_t k = 0; k < r.count; ++k) body(r.body, bind);
      }
    }
  }

  const SpecializedProgram& p_;
  std::uint64_t budget_;
  const std::function<void(const ExpandedGate&)>& visit_;
  std::uint64_t emitted_ = 0;
  std::int64_t instances_ = 0;
};

}  // namespace

void expand(const SpecializedProgram& p, std::uint64_t budget, const std::function<void(const ExpandedGate&)>& visit) {
  Expander(p, budget, visit).run();
}

std::string qubit_name(const SpecializedProgram& p, const PhysQubit& q) {
  const FlatModule& m = p.modules[q.module];
  std::string base = m.regs[q.reg].name + "[" + std::to_string(q.idx) + "]";
  if (m.name == p.entry) return base;
  return "#" + std::to_string(q.owner) + "." + base;
}

Trace expand_trace(const SpecializedProgram& p, std::uint64_t budget) {
  Trace t;
  expand(p, budget, [&](const ExpandedGate& g) {
    TraceGate tg;
    tg.kind = g.kind;
    tg.angle = g.angle;
    for (int k = 0; k < g.n; ++k) tg.qubits.push_back(qubit_name(p, g.q[k]));
    t.push_back(std::move(tg));
  });
  return t;
}

namespace {

std::map<std::string, std::vector<std::string>> per_qubit(const Trace& t) {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& g : t) {
    std::string sig(gate_name(g.kind));
    if (gate_has_angle(g.kind)) sig += "@" + std::to_string(std::bit_cast<std::uint64_t>(g.angle));
    for (const auto& q : g.qubits) sig += " " + q;
    for (const auto& q : g.qubits) out[q].push_back(sig);
  }
  return out;
}

}  // namespace

bool dependency_equivalent(const Trace& a, const Trace& b, std::string* why) {
  if (a.size() != b.size()) {
    if (why) *why = "lengths differ: " + std::to_string(a.size()) + " vs " + std::to_string(b.size());
    return false;
  }
  auto pa = per_qubit(a), pb = per_qubit(b);
  if (pa == pb) return true;
  if (why) {
    for (const auto& [q, seq] : pa) {
      auto it = pb.find(q);
      if (it == pb.end()) {
        *why = "qubit " + q + " only in the first trace";
        return false;
      }
      if (it->second != seq) {
        std::size_t k = 0;
        while (k < seq.size() && k < it->second.size() && seq[k] == it->second[k]) ++k;
        *why = "qubit " + q + " differs at its gate " + std::to_string(k) + ": " +
               (k < seq.size() ? seq[k] : "<end>") + " vs " + (k < it->second.size() ? it->second[k] : "<end>");
        return false;
      }
    }
    *why = "second trace touches extra qubits";
  }
  return false;
}

std::array<std::uint64_t, kNumGateKinds> gate_histogram(const Trace& t) {
  std::array<std::uint64_t, kNumGateKinds> h{};
  for (const auto& g : t) ++h[static_cast<int>(g.kind)];
  return h;
}

}  // namespace qcc
