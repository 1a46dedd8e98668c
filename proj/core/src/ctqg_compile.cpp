// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>

#include "qcc/ctqg.hpp"
#include "qcc/ir.hpp"
#include "qcc/qasm.hpp"

namespace qcc {

namespace {

class CountingForward : public GateSink {
 public:
  explicit CountingForward(GateSink& next) : next_(next) {}
  void put(const RevGate& g) override {
    counts.add(g);
    next_.put(g);
  }
  RevCounts counts;

 private:
  GateSink& next_;
};

void put_all(GateSink& sink, const Fragment& f) {
  for (const auto& g : f) sink.put(g);
}

void written_registers(const std::vector<CtqgStmt>& body, std::set<int>& out) {
  using K = CtqgStmt::Kind;
  for (const auto& s : body) {
    switch (s.kind) {
      case K::Init:
      case K::AddConst:
      case K::SubConst:
      case K::AddReg:
      case K::SubReg:
      case K::AddMul:
        out.insert(s.reg);
        break;
      case K::If:
      case K::For:
        written_registers(s.body, out);
        written_registers(s.else_body, out);
        break;
      case K::Assign:
        break;
    }
  }
}

class ModuleCompiler {
 public:
  ModuleCompiler(const ModuleDef& m, const Frame& params, const std::string& origin)
      : m_(m), origin_(origin), frame_(params), mgr_(0) {
    frame_.resize(m.vars.size());
    Line next = 0;
    for (std::size_t r = 0; r < m.registers.size(); ++r) {
      RevRegister reg;
      reg.name = m.registers[r].name;
      reg.is_param = m.registers[r].is_param;
      reg.output = m.registers[r].output;
      for (int b = 0; b < m.registers[r].width; ++b) reg.lines.push_back(next++);
      layout_.registers.push_back(std::move(reg));
    }
    mgr_ = AncillaManager(next);
    layout_.anc_first = next;
  }

  CtqgLayout run(GateSink& sink) {
    CountingForward counted(sink);
    block(m_.ctqg_body, counted);
    layout_.ancillas = mgr_.high_water();
    layout_.counts = counted.counts;
    return layout_;
  }

 private:
  [[noreturn]] void fail(const Error& e, SrcPos pos) const {
    throw Error(e.kind(), e.message(), e.pos().valid() ? e.pos() : pos, origin_);
  }

  const std::vector<Line>& lines(int reg) const { return layout_.registers[reg].lines; }

  std::int64_t constant(const ExprPtr& e) const { return eval(*e, frame_).as_int(); }

  void block(const std::vector<CtqgStmt>& body, GateSink& sink) {
    for (const auto& s : body) {
      try {
        statement(s, sink);
      } catch (const Error& e) {
        fail(e, s.pos);
      }
    }
  }

  void statement(const CtqgStmt& s, GateSink& sink) {
    using K = CtqgStmt::Kind;
    switch (s.kind) {
      case K::Init: {
        std::uint64_t k = static_cast<std::uint64_t>(constant(s.value));
        const auto& r = lines(s.reg);
        for (std::size_t i = 0; i < r.size() && i < 64; ++i)
          if ((k >> i) & 1) sink.put(RevGate::x(r[i]));
        return;
      }
      case K::AddConst:
        put_all(sink, synth_add_const(lines(s.reg), static_cast<std::uint64_t>(constant(s.value)), mgr_));
        return;
      case K::SubConst:
        put_all(sink, synth_sub_const(lines(s.reg), static_cast<std::uint64_t>(constant(s.value)), mgr_));
        return;
      case K::AddReg:
        put_all(sink, synth_adder(lines(s.reg), lines(s.src1)));
        return;
      case K::SubReg:
        put_all(sink, synth_subtractor(lines(s.reg), lines(s.src1)));
        return;
      case K::AddMul: {
        std::vector<Line> extra;
        for (std::size_t r = 0; r < layout_.registers.size(); ++r)
          if (static_cast<int>(r) != s.reg && static_cast<int>(r) != s.src1 && static_cast<int>(r) != s.src2)
            extra.insert(extra.end(), lines(static_cast<int>(r)).begin(), lines(static_cast<int>(r)).end());
        bool scratch = false;
        put_all(sink, synth_multiplier(lines(s.reg), lines(s.src1), lines(s.src2), mgr_, extra, &scratch));
        layout_.used_scratch |= scratch;
        return;
      }
      case K::Assign: {
        Value v = eval(*s.value, frame_);
        frame_[s.var] = m_.vars[s.var].is_real ? Value::of_real(v.as_real()) : Value::of_int(v.as_int());
        return;
      }
      case K::For: {
        LoopInst l;
        l.var = s.var;
        l.start = s.start;
        l.end = s.end;
        l.step = s.step;
        l.cmp = s.cmp;
        auto trips = trip_count(l, frame_);
        if (!trips) throw Error(ErrorKind::NonConstantControl, "loop bounds are not constant", s.pos);
        const std::int64_t start = constant(s.start), step = constant(s.step);
        for (std::int64_t k = 0; k < *trips; ++k) {
          frame_[s.var] = Value::of_int(start + k * step);
          block(s.body, sink);
        }
        frame_[s.var] = Value::of_int(start + *trips * step);
        return;
      }
      case K::If:
        conditional(s, sink);
        return;
    }
  }

  void conditional(const CtqgStmt& s, GateSink& sink) {
    std::set<int> written;
    written_registers(s.body, written);
    written_registers(s.else_body, written);
    if (written.count(s.reg) || (s.src1 >= 0 && written.count(s.src1)))
      throw Error(ErrorKind::Semantic, "$if body modifies a register of its own condition", s.pos);
    const Line out = mgr_.acquire(1)[0];
    Fragment cmp = s.src1 >= 0 ? synth_compare(lines(s.reg), lines(s.src1), s.cmp, out, mgr_)
                               : synth_compare_const(lines(s.reg), constant(s.value), s.cmp, out, mgr_);
    put_all(sink, cmp);
    FragmentSink then_part;
    block(s.body, then_part);
    put_all(sink, controlize(then_part.gates, out, mgr_.end()));
    if (!s.else_body.empty()) {
      sink.put(RevGate::x(out));
      FragmentSink else_part;
      block(s.else_body, else_part);
      put_all(sink, controlize(else_part.gates, out, mgr_.end()));
      sink.put(RevGate::x(out));
    }
    std::reverse(cmp.begin(), cmp.end());
    put_all(sink, cmp);
    mgr_.release({out});
  }

  const ModuleDef& m_;
  std::string origin_;
  Frame frame_;
  AncillaManager mgr_;
  CtqgLayout layout_;
};

std::string ancilla_name(const ModuleDef& m) {
  std::string name = "anc";
  while (m.find_array(name) >= 0) name += "_";
  return name;
}

class NetlistWriter : public GateSink {
 public:
  NetlistWriter(std::ostream& out, std::vector<std::string> names) : out_(out), names_(std::move(names)) {}
  void put(const RevGate& g) override {
    switch (g.kind) {
      case RevGate::Kind::Not: out_ << "X ( " << names_[g.t] << " );\n"; break;
      case RevGate::Kind::Cnot: out_ << "CNOT ( " << names_[g.t] << " , " << names_[g.c1] << " );\n"; break;
      case RevGate::Kind::Toffoli:
        out_ << "Toffoli ( " << names_[g.t] << " , " << names_[g.c1] << " , " << names_[g.c2] << " );\n";
        break;
    }
  }

 private:
  std::ostream& out_;
  std::vector<std::string> names_;
};

}  // namespace

CtqgLayout compile_ctqg_module(const ModuleDef& m, const Frame& params, GateSink& sink, const std::string& origin) {
  if (!m.is_ctqg) throw Error(ErrorKind::Semantic, "module '" + m.name + "' is not a CTQG module", m.pos, origin);
  return ModuleCompiler(m, params, origin).run(sink);
}

RevCircuit compile_ctqg_circuit(const ModuleDef& m, const Frame& params) {
  FragmentSink sink;
  CtqgLayout l = compile_ctqg_module(m, params, sink);
  RevCircuit c;
  c.registers = l.registers;
  c.width = l.anc_first + static_cast<Line>(l.ancillas);
  for (std::size_t k = 0; k < l.ancillas; ++k) c.ancillas.push_back(l.anc_first + static_cast<Line>(k));
  c.gates = std::move(sink.gates);
  c.counts = l.counts;
  c.ancilla_count = l.ancillas;
  c.used_scratch = l.used_scratch;
  return c;
}

void write_ctqg_netlist(const ModuleDef& m, const Frame& params, std::ostream& out) {
  CountingSink counter;
  CtqgLayout l = compile_ctqg_module(m, params, counter);
  out << "// ctqg " << m.name << "\n";
  std::vector<std::string> names;
  for (const auto& r : l.registers) {
    out << "qbit " << r.name << "[" << r.lines.size() << "];\n";
    for (std::size_t i = 0; i < r.lines.size(); ++i) names.push_back(r.name + "[" + std::to_string(i) + "]");
  }
  const std::string anc = ancilla_name(m);
  if (l.ancillas) out << "qbit " << anc << "[" << l.ancillas << "];\n";
  for (std::size_t k = 0; k < l.ancillas; ++k) names.push_back(anc + "[" + std::to_string(k) + "]");
  NetlistWriter w(out, std::move(names));
  compile_ctqg_module(m, params, w);
}

std::string ctqg_netlist(const ModuleDef& m, const Frame& params) {
  std::ostringstream os;
  write_ctqg_netlist(m, params, os);
  return os.str();
}

std::map<std::string, std::uint64_t> simulate_ctqg(const ModuleDef& m,
                                                   const std::map<std::string, std::uint64_t>& inputs,
                                                   const Frame& params) {
  RevCircuit c = compile_ctqg_circuit(m, params);
  for (const auto& [name, v] : inputs) {
    auto it = std::find_if(c.registers.begin(), c.registers.end(),
                           [&](const RevRegister& r) { return r.name == name && r.is_param; });
    if (it == c.registers.end())
      throw Error(ErrorKind::UndefinedName, "module '" + m.name + "' has no register parameter '" + name + "'");
    if (it->lines.size() < 64 && (v >> it->lines.size()) != 0)
      throw Error(ErrorKind::Width, "value " + std::to_string(v) + " does not fit register '" + name + "' of width " +
                                        std::to_string(it->lines.size()));
  }
  Bits state(c.width, 0);
  for (const auto& r : c.registers) {
    if (!r.is_param) continue;
    auto it = inputs.find(r.name);
    if (it == inputs.end()) {
      if (r.output) continue;
      throw Error(ErrorKind::UndefinedName, "missing input for register '" + r.name + "'");
    }
    write_register(state, r.lines, it->second);
  }
  state = simulate_reversible(c, std::move(state));
  for (Line a : c.ancillas)
    if (state[a]) throw Error(ErrorKind::Semantic, "ancilla line " + std::to_string(a) + " was not restored");
  std::map<std::string, std::uint64_t> out;
  for (const auto& r : c.registers)
    if (r.is_param) out[r.name] = read_register(state, r.lines);
  return out;
}

FlatModule ctqg_flat_module(const ModuleDef& m, const Frame& params, const std::string& name) {
  SpecializedProgram net = parse_qasm_hl(ctqg_netlist(m, params), m.name);
  FlatModule f = std::move(net.modules.front());
  f.name = name;
  f.num_params = 0;
  for (const auto& r : m.registers)
    if (r.is_param) ++f.num_params;
  for (int i = 0; i < static_cast<int>(f.regs.size()); ++i) f.regs[i].is_param = i < f.num_params;
  return f;
}

}  // namespace qcc
