// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "qcc/error.hpp"
#include "qcc/expr.hpp"
#include "qcc/qasm.hpp"

namespace qcc {

const char* qasm_format_name(QasmFormat f) {
  switch (f) {
    case QasmFormat::Flat: return "qasm-f";
    case QasmFormat::Hier: return "qasm-h";
    case QasmFormat::HierLoops: return "qasm-hl";
  }
  return "?";
}

std::optional<QasmFormat> parse_qasm_format(std::string_view s) {
  if (s == "qasm-f" || s == "flat") return QasmFormat::Flat;
  if (s == "qasm-h" || s == "hier") return QasmFormat::Hier;
  if (s == "qasm-hl" || s == "hier-loops") return QasmFormat::HierLoops;
  return std::nullopt;
}

std::uint64_t QasmStats::code_size() const {
  std::uint64_t n = 0;
  for (auto g : gate_lines) n += g;
  return n;
}

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a + b < a ? UINT64_MAX : a + b; }
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > UINT64_MAX / b ? UINT64_MAX : a * b;
}

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) { buf_.reserve(1 << 20); }
  ~Writer() { flush(); }

  void line(std::string_view indent, std::string_view text) {
    buf_.append(indent);
    buf_.append(text);
    buf_.push_back('\n');
    ++stats.lines;
    if (buf_.size() >= (1 << 20)) flush();
  }
  void flush() {
    out_.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
    buf_.clear();
  }

  QasmStats stats;

 private:
  std::ostream& out_;
  std::string buf_;
};

std::string slice(const std::string& reg, std::int64_t lo, std::int64_t hi) {
  return reg + "[" + std::to_string(lo) + ":" + std::to_string(hi) + "]";
}

std::string element(const std::string& reg, std::int64_t i) { return reg + "[" + std::to_string(i) + "]"; }

std::string gate_text(GateKind k, const std::vector<std::string>& ops, double angle) {
  std::string s(gate_name(k));
  s += " ( ";
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (i) s += " , ";
    s += ops[i];
  }
  if (gate_has_angle(k)) s += " , " + format_real17(angle);
  s += " );";
  return s;
}

std::string call_text(const FlatModule& m, const FCall& c) {
  std::string s = c.callee + " ( ";
  for (std::size_t i = 0; i < c.args.size(); ++i) {
    const FArg& a = c.args[i];
    const FReg& r = m.regs[a.reg];
    if (i) s += " , ";
    if (a.lo == 0 && a.len == r.size) s += r.name;
    else if (a.len == 1) s += element(r.name, a.lo);
    else s += slice(r.name, a.lo, a.lo + a.len - 1);
  }
  return s + " );";
}

std::string forall_text(const FlatModule& m, const FForall& f) {
  std::vector<std::string> ops;
  for (const auto& o : f.ops) ops.push_back(slice(m.regs[o.reg].name, o.start, o.start + (f.count - 1) * o.step));
  return gate_text(f.kind, ops, f.angle);
}

std::string fgate_text(const FlatModule& m, const FGate& g) {
  std::vector<std::string> ops;
  for (const auto& q : g.qubits) ops.push_back(element(m.regs[q.reg].name, q.idx));
  return gate_text(g.kind, ops, g.angle);
}

class Emitter {
 public:
  Emitter(const SpecializedProgram& p, QasmFormat fmt, Writer& w) : p_(p), fmt_(fmt), w_(w) {}

  void hierarchical() {
    for (int mi : p_.postorder()) {
      const FlatModule& m = p_.modules[mi];
      std::string head = "module " + m.name + " (";
      for (int r = 0; r < m.num_params; ++r) head += (r ? " , qbit* " : " qbit* ") + m.regs[r].name;
      head += " )";
      w_.line("", head);
      w_.line("", "{");
      for (std::size_t r = m.num_params; r < m.regs.size(); ++r)
        w_.line("  ", "qbit " + m.regs[r].name + "[" + std::to_string(m.regs[r].size) + "];");
      body(m, m.body, 1);
      w_.line("", "}");
    }
  }

 private:
  void body(const FlatModule& m, const std::vector<FInst>& insts, int depth) {
    const std::string ind(2 * depth, ' ');
    for (const auto& inst : insts) {
      if (const auto* g = std::get_if<FGate>(&inst.v)) {
        gate(ind, g->kind, fgate_text(m, *g));
      } else if (const auto* f = std::get_if<FForall>(&inst.v)) {
        if (fmt_ == QasmFormat::HierLoops) {
          gate(ind, f->kind, forall_text(m, *f));
        } else {
          for (std::int64_t t = 0; t < f->count; ++t) {
            std::vector<std::string> ops;
            for (const auto& o : f->ops) ops.push_back(element(m.regs[o.reg].name, o.start + t * o.step));
            gate(ind, f->kind, gate_text(f->kind, ops, f->angle));
          }
        }
      } else if (const auto* c = std::get_if<FCall>(&inst.v)) {
        w_.line(ind, call_text(m, *c));
      } else {
        const auto& r = std::get<FRepeat>(inst.v);
        if (fmt_ == QasmFormat::HierLoops) {
          w_.line(ind, "repeat ( " + std::to_string(r.count) + " ) {");
          body(m, r.body, depth + 1);
          w_.line(ind, "}");
        } else {
          for (std::uint64_t k = 0; k < r.count; ++k) body(m, r.body, depth);
        }
      }
    }
  }

  void gate(const std::string& ind, GateKind k, const std::string& text) {
    w_.line(ind, text);
    ++w_.stats.gate_lines[static_cast<int>(k)];
  }

  const SpecializedProgram& p_;
  QasmFormat fmt_;
  Writer& w_;
};

// Lines a module's unrolled HIER body takes, saturating.
std::uint64_t hier_lines(const SpecializedProgram& p) {
  std::function<std::uint64_t(const std::vector<FInst>&)> count = [&](const std::vector<FInst>& b) {
    std::uint64_t n = 0;
    for (const auto& i : b) {
      if (const auto* f = std::get_if<FForall>(&i.v)) n = sat_add(n, static_cast<std::uint64_t>(f->count));
      else if (const auto* r = std::get_if<FRepeat>(&i.v)) n = sat_add(n, sat_mul(r->count, count(r->body)));
      else n = sat_add(n, 1);
    }
    return n;
  };
  std::uint64_t total = 0;
  for (const auto& m : p.modules) total = sat_add(total, count(m.body));
  return total;
}

// Callee locals get one register per call instance, "<module>__<k>__<reg>",
// numbered in execution order. A first pass collects them for declaration.
void flat(const SpecializedProgram& p, Writer& w, std::uint64_t budget) {
  const int entry = p.find_index(p.entry);
  if (entry < 0) throw Error(ErrorKind::UndefinedModule, "no entry module '" + p.entry + "'");
  struct Local {
    std::int64_t owner;
    int module, reg;
    auto operator<=>(const Local&) const = default;
  };
  std::map<Local, std::string> locals;
  std::vector<const std::pair<const Local, std::string>*> order;
  std::int64_t next = 0;
  expand(p, budget, [&](const ExpandedGate& g) {
    for (int k = 0; k < g.n; ++k) {
      if (g.q[k].module == entry) continue;
      const Local l{g.q[k].owner, g.q[k].module, g.q[k].reg};
      auto [it, fresh] = locals.try_emplace(l);
      if (!fresh) continue;
      const FlatModule& m = p.modules[l.module];
      it->second = m.name + "__" + std::to_string(next++) + "__" + m.regs[l.reg].name;
      order.push_back(&*it);
    }
  });
  for (const auto& r : p.modules[entry].regs) w.line("", "qbit " + r.name + "[" + std::to_string(r.size) + "];");
  for (const auto* l : order)
    w.line("", "qbit " + l->second + "[" + std::to_string(p.modules[l->first.module].regs[l->first.reg].size) + "];");
  expand(p, budget, [&](const ExpandedGate& g) {
    std::vector<std::string> ops;
    for (int k = 0; k < g.n; ++k) {
      const PhysQubit& q = g.q[k];
      const std::string idx = "[" + std::to_string(q.idx) + "]";
      ops.push_back(q.module == entry ? p.modules[entry].regs[q.reg].name + idx
                                      : locals.at(Local{q.owner, q.module, q.reg}) + idx);
    }
    w.line("", gate_text(g.kind, ops, g.angle));
    ++w.stats.gate_lines[static_cast<int>(g.kind)];
  });
}

}  // namespace

QasmStats write_qasm(const SpecializedProgram& p, QasmFormat fmt, std::ostream& out, const EmitOptions& opt) {
  if (fmt == QasmFormat::Flat && total_gate_count(p) > opt.budget)
    throw Error(ErrorKind::BudgetExceeded, "flat output needs more than " + std::to_string(opt.budget) + " gate lines");
  if (fmt == QasmFormat::Hier && hier_lines(p) > opt.budget)
    throw Error(ErrorKind::BudgetExceeded,
                "hierarchical output needs more than " + std::to_string(opt.budget) + " lines");
  Writer w(out);
  if (fmt == QasmFormat::Flat) {
    flat(p, w, opt.budget);
  } else {
    Emitter(p, fmt, w).hierarchical();
  }
  w.flush();
  return w.stats;
}

QasmDocument emit_qasm(const SpecializedProgram& p, QasmFormat fmt, const EmitOptions& opt) {
  std::ostringstream os;
  QasmDocument d;
  d.format = fmt;
  d.stats = write_qasm(p, fmt, os, opt);
  d.text = os.str();
  return d;
}

std::string qasm_statement(const FlatModule& m, const FInst& inst) {
  if (const auto* g = std::get_if<FGate>(&inst.v)) return fgate_text(m, *g);
  if (const auto* f = std::get_if<FForall>(&inst.v)) return forall_text(m, *f);
  if (const auto* c = std::get_if<FCall>(&inst.v)) return call_text(m, *c);
  return "repeat ( " + std::to_string(std::get<FRepeat>(inst.v).count) + " ) {";
}

}  // namespace qcc
