// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

// Aliasing check for multi-qubit gates. Registers are resolved to physical
// (root, offset) positions through the call bindings; each module is visited
// once per aliasing pattern of its parameters.

#include <set>

#include "qcc/analysis.hpp"

namespace qcc {

const char* severity_name(Severity s) {
  switch (s) {
    case Severity::Error: return "error";
    case Severity::Warning: return "warning";
    case Severity::Info: return "info";
  }
  return "?";
}

std::string format_diagnostic(const Diagnostic& d) {
  return d.module + "#" + std::to_string(d.inst) + ": " + severity_name(d.severity) + ": " + d.kind + ": " +
         d.message;
}

namespace {

struct Loc {
  int root = 0;
  std::int64_t off = 0;
};

class NoCloning {
 public:
  explicit NoCloning(const SpecializedProgram& p) : p_(p) {}

  std::vector<Diagnostic> run() {
    const int e = p_.find_index(p_.entry);
    if (e < 0) return {};
    const FlatModule& m = p_.modules[e];
    std::vector<Loc> binding;
    for (const auto& r : m.regs) binding.push_back(fresh(r.name));
    visit(e, binding, m.name);
    return std::move(out_);
  }

 private:
  Loc fresh(const std::string& name) {
    roots_.push_back(name);
    return Loc{static_cast<int>(roots_.size()) - 1, 0};
  }

  std::string phys(const Loc& l, std::int64_t idx) const {
    return roots_[l.root] + "[" + std::to_string(l.off + idx) + "]";
  }

  std::vector<std::int64_t> pattern(int mi, const std::vector<Loc>& b) const {
    std::vector<std::int64_t> pat{mi};
    std::map<int, std::int64_t> number, base;
    for (int i = 0; i < p_.modules[mi].num_params; ++i) {
      number.emplace(b[i].root, static_cast<std::int64_t>(number.size()));
      auto [bt, bfresh] = base.emplace(b[i].root, b[i].off);
      if (!bfresh) bt->second = std::min(bt->second, b[i].off);
    }
    for (int i = 0; i < p_.modules[mi].num_params; ++i) {
      pat.push_back(number[b[i].root]);
      pat.push_back(b[i].off - base[b[i].root]);
    }
    return pat;
  }

  void report(const FlatModule& m, std::size_t inst, const std::string& what, const std::string& path) {
    out_.push_back(Diagnostic{Severity::Error, "no-cloning", what + " (call path " + path + ")", m.name,
                              static_cast<std::int64_t>(inst)});
  }

  void visit(int mi, const std::vector<Loc>& b, const std::string& path) {
    if (!seen_.insert(pattern(mi, b)).second) return;
    const FlatModule& m = p_.modules[mi];
    for (std::size_t i = 0; i < m.body.size(); ++i) statement(m, m.body[i], i, b, path);
  }

  void statement(const FlatModule& m, const FInst& inst, std::size_t top, const std::vector<Loc>& b,
                 const std::string& path) {
    auto name = [&](int reg, std::int64_t idx) { return m.regs[reg].name + "[" + std::to_string(idx) + "]"; };
    if (const auto* g = std::get_if<FGate>(&inst.v)) {
      for (std::size_t x = 0; x < g->qubits.size(); ++x)
        for (std::size_t y = x + 1; y < g->qubits.size(); ++y) {
          const FQubit& qx = g->qubits[x];
          const FQubit& qy = g->qubits[y];
          if (b[qx.reg].root == b[qy.reg].root && b[qx.reg].off + qx.idx == b[qy.reg].off + qy.idx) {
            report(m, top,
                   std::string(gate_name(g->kind)) + " operands " + name(qx.reg, qx.idx) + " and " +
                       name(qy.reg, qy.idx) + " are the same qubit " + phys(b[qx.reg], qx.idx),
                   path);
            return;
          }
        }
    } else if (const auto* f = std::get_if<FForall>(&inst.v)) {
      for (std::size_t x = 0; x < f->ops.size(); ++x)
        for (std::size_t y = x + 1; y < f->ops.size(); ++y) {
          const FOperand& ox = f->ops[x];
          const FOperand& oy = f->ops[y];
          if (b[ox.reg].root != b[oy.reg].root) continue;
          const std::int64_t sx = b[ox.reg].off + ox.start, sy = b[oy.reg].off + oy.start;
          // sx + t*ox.step == sy + t*oy.step for some t in [0, count)
          std::int64_t t = -1;
          if (ox.step == oy.step) {
            if (sx == sy) t = 0;
          } else if ((sy - sx) % (ox.step - oy.step) == 0) {
            t = (sy - sx) / (ox.step - oy.step);
          }
          if (t >= 0 && t < f->count) {
            report(m, top,
                   std::string(gate_name(f->kind)) + " slice operands " + std::to_string(x + 1) + " and " +
                       std::to_string(y + 1) + " share qubit " + phys(b[ox.reg], ox.start + t * ox.step) +
                       " at iteration " + std::to_string(t),
                   path);
            return;
          }
        }
    } else if (const auto* c = std::get_if<FCall>(&inst.v)) {
      const int ci = p_.find_index(c->callee);
      if (ci < 0) return;
      const FlatModule& callee = p_.modules[ci];
      std::vector<Loc> cb;
      for (const auto& a : c->args) cb.push_back(Loc{b[a.reg].root, b[a.reg].off + a.lo});
      for (std::size_t r = cb.size(); r < callee.regs.size(); ++r)
        cb.push_back(fresh(callee.name + "." + callee.regs[r].name));
      visit(ci, cb, path + " -> " + callee.name);
    } else {
      for (const auto& x : std::get<FRepeat>(inst.v).body) statement(m, x, top, b, path);
    }
  }

  const SpecializedProgram& p_;
  std::vector<std::string> roots_;
  std::set<std::vector<std::int64_t>> seen_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> check_no_cloning(const SpecializedProgram& p) { return NoCloning(p).run(); }

}  // namespace qcc
