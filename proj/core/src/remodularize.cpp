// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

// Inlining of small modules and unrolling of small loops, guided by the
// resource counts.

#include <functional>
#include <set>

#include "qcc/analysis.hpp"
#include "qcc/error.hpp"
#include "qcc/timing.hpp"

namespace qcc {

namespace {

std::uint64_t statements(const std::vector<FInst>& body) {
  std::uint64_t n = 0;
  for (const auto& i : body) {
    ++n;
    if (const auto* r = std::get_if<FRepeat>(&i.v)) n += statements(r->body);
  }
  return n;
}

BigCount gates_in(const std::vector<FInst>& body, const ResourceTable& rt) {
  BigCount n = 0;
  for (const auto& i : body) {
    if (std::holds_alternative<FGate>(i.v)) n += 1;
    else if (const auto* f = std::get_if<FForall>(&i.v)) n += f->count;
    else if (const auto* c = std::get_if<FCall>(&i.v)) n += rt.find(c->callee)->total_gates();
    else {
      const auto& r = std::get<FRepeat>(i.v);
      n += gates_in(r.body, rt) * r.count;
    }
  }
  return n;
}

struct RegMap {
  int reg;
  std::int64_t off;
};

class Rewriter {
 public:
  Rewriter(const SpecializedProgram& p, const ResourceTable& rt, std::uint64_t threshold, std::uint64_t budget,
           std::uint64_t& total)
      : p_(p), rt_(rt), threshold_(threshold), budget_(budget), total_(total) {}

  bool small(const BigCount& n) const { return n < BigCount(threshold_); }

  // Rewrites m's body in place; returns true if anything changed.
  bool module(FlatModule& m) {
    changed_ = false;
    m_ = &m;
    std::vector<FInst> out;
    body(m.body, out);
    m.body = std::move(out);
    return changed_;
  }

 private:
  void grow(std::uint64_t n) {
    total_ += n;
    if (total_ > budget_)
      throw Error(ErrorKind::BudgetExceeded,
                  "remodularized program exceeds " + std::to_string(budget_) + " statements");
  }

  void body(const std::vector<FInst>& in, std::vector<FInst>& out) {
    for (const auto& inst : in) {
      if (const auto* f = std::get_if<FForall>(&inst.v); f && small(f->count)) {
        changed_ = true;
        grow(static_cast<std::uint64_t>(f->count));
        for (std::int64_t t = 0; t < f->count; ++t) {
          FGate g{f->kind, {}, f->angle};
          for (const auto& o : f->ops) g.qubits.push_back(FQubit{o.reg, o.start + t * o.step});
          out.push_back(FInst{std::move(g)});
        }
      } else if (const auto* r = std::get_if<FRepeat>(&inst.v)) {
        if (small(gates_in(r->body, rt_) * r->count)) {
          changed_ = true;
          grow(statements(r->body) * r->count);
          for (std::uint64_t k = 0; k < r->count; ++k) body(r->body, out);
        } else {
          FRepeat nr{r->count, {}};
          body(r->body, nr.body);
          out.push_back(FInst{std::move(nr)});
        }
      } else if (const auto* c = std::get_if<FCall>(&inst.v)) {
        const FlatModule* callee = p_.find(c->callee);
        if (callee && callee->name != m_->name && small(rt_.find(callee->name)->total_gates())) {
          changed_ = true;
          grow(statements(callee->body));
          inline_call(*callee, *c, out);
        } else {
          out.push_back(inst);
        }
      } else {
        out.push_back(inst);
      }
    }
  }

  void inline_call(const FlatModule& callee, const FCall& c, std::vector<FInst>& out) {
    std::vector<RegMap> map;
    for (const auto& a : c.args) map.push_back(RegMap{a.reg, a.lo});
    std::set<std::string> names;
    for (const auto& r : m_->regs) names.insert(r.name);
    const std::string tag = callee.name + "_" + std::to_string(++instance_[callee.name]) + "__";
    for (std::size_t r = callee.num_params; r < callee.regs.size(); ++r) {
      std::string name = tag + callee.regs[r].name;
      while (names.count(name)) name += "_";
      names.insert(name);
      map.push_back(RegMap{static_cast<int>(m_->regs.size()), 0});
      m_->regs.push_back(FReg{name, callee.regs[r].size, false});
    }
    for (const auto& inst : callee.body) out.push_back(mapped(inst, map));
  }

  static FInst mapped(const FInst& inst, const std::vector<RegMap>& map) {
    if (const auto* g = std::get_if<FGate>(&inst.v)) {
      FGate n = *g;
      for (auto& q : n.qubits) q = FQubit{map[q.reg].reg, map[q.reg].off + q.idx};
      return FInst{std::move(n)};
    }
    if (const auto* f = std::get_if<FForall>(&inst.v)) {
      FForall n = *f;
      for (auto& o : n.ops) o = FOperand{map[o.reg].reg, map[o.reg].off + o.start, o.step};
      return FInst{std::move(n)};
    }
    if (const auto* c = std::get_if<FCall>(&inst.v)) {
      FCall n = *c;
      for (auto& a : n.args) a = FArg{map[a.reg].reg, map[a.reg].off + a.lo, a.len};
      return FInst{std::move(n)};
    }
    const auto& r = std::get<FRepeat>(inst.v);
    FRepeat n{r.count, {}};
    for (const auto& x : r.body) n.body.push_back(mapped(x, map));
    return FInst{std::move(n)};
  }

  const SpecializedProgram& p_;
  const ResourceTable& rt_;
  std::uint64_t threshold_, budget_;
  std::uint64_t& total_;
  FlatModule* m_ = nullptr;
  bool changed_ = false;
  std::map<std::string, int> instance_;
};

SpecializedProgram reachable(SpecializedProgram p) {
  std::set<int> live;
  std::function<void(int)> mark = [&](int m) {
    if (!live.insert(m).second) return;
    std::function<void(const std::vector<FInst>&)> scan = [&](const std::vector<FInst>& b) {
      for (const auto& i : b) {
        if (const auto* c = std::get_if<FCall>(&i.v)) {
          if (int k = p.find_index(c->callee); k >= 0) mark(k);
        } else if (const auto* r = std::get_if<FRepeat>(&i.v)) {
          scan(r->body);
        }
      }
    };
    scan(p.modules[m].body);
  };
  if (int e = p.find_index(p.entry); e >= 0) mark(e);
  SpecializedProgram out;
  out.entry = p.entry;
  for (int mi : p.postorder())
    if (live.count(mi)) out.add(std::move(p.modules[mi]));
  for (const auto& [k, name] : p.specialization_index)
    if (out.find(name)) out.specialization_index.emplace(k, name);
  return out;
}

}  // namespace

SpecializedProgram remodularize(const SpecializedProgram& p, std::uint64_t threshold, std::uint64_t budget) {
  SpecializedProgram q = p;
  if (threshold == 0) return q;
  for (;;) {
    const ResourceTable rt = estimate_resources(q);
    std::uint64_t total = 0;
    for (const auto& m : q.modules) total += statements(m.body);
    bool changed = false;
    for (int mi : q.postorder()) {
      Rewriter rw(q, rt, threshold, budget, total);
      FlatModule m = q.modules[mi];
      if (rw.module(m)) {
        q.modules[mi] = std::move(m);
        changed = true;
      }
    }
    q = reachable(std::move(q));
    if (!changed) return q;
  }
}

}  // namespace qcc
