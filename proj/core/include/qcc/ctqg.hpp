// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qcc/expr.hpp"
#include "qcc/flat.hpp"
#include "qcc/frontend.hpp"

namespace qcc {

struct ModuleDef;

// Reversible-logic netlists over numbered signal lines. Registers are
// little-endian: lines[0] holds bit 0.
using Line = std::uint32_t;

struct RevGate {
  enum class Kind : unsigned char { Not, Cnot, Toffoli };
  Kind kind = Kind::Not;
  Line t = 0;   // target
  Line c1 = 0;  // controls, when present
  Line c2 = 0;

  static RevGate x(Line t) { return {Kind::Not, t, 0, 0}; }
  static RevGate cnot(Line t, Line c) { return {Kind::Cnot, t, c, 0}; }
  static RevGate toffoli(Line t, Line c1, Line c2) { return {Kind::Toffoli, t, c1, c2}; }
  int num_controls() const { return static_cast<int>(kind); }
  bool touches(Line l) const;
  bool operator==(const RevGate&) const = default;
};

using Fragment = std::vector<RevGate>;

struct RevCounts {
  std::uint64_t nots = 0;
  std::uint64_t cnots = 0;
  std::uint64_t toffolis = 0;

  void add(const RevGate& g);
  std::uint64_t total() const { return nots + cnots + toffolis; }
};

RevCounts count_gates(const Fragment& f);

class GateSink {
 public:
  virtual ~GateSink() = default;
  virtual void put(const RevGate& g) = 0;
};

class FragmentSink : public GateSink {
 public:
  void put(const RevGate& g) override { gates.push_back(g); }
  Fragment gates;
};

class CountingSink : public GateSink {
 public:
  void put(const RevGate& g) override { counts.add(g); }
  RevCounts counts;
};

// Pool of zeroed ancilla lines numbered from `first`. Released lines are
// reused before new ones are created.
class AncillaManager {
 public:
  explicit AncillaManager(Line first) : first_(first) {}

  std::vector<Line> acquire(std::size_t n);
  void release(const std::vector<Line>& lines);

  Line first() const { return first_; }
  std::size_t high_water() const { return created_; }  // distinct lines ever handed out
  std::size_t live() const { return live_; }
  Line end() const { return first_ + static_cast<Line>(created_); }

 private:
  Line first_;
  std::size_t created_ = 0;
  std::size_t live_ = 0;
  std::vector<Line> free_;
};

// a := a + b mod 2^n, b unchanged. 5n-6 CNOT and 2n-2 Toffoli for n >= 2,
// a single CNOT for n = 1, no ancillas.
Fragment synth_adder(const std::vector<Line>& a, const std::vector<Line>& b);

// a := a - b mod 2^n; the adder's gate list reversed.
Fragment synth_subtractor(const std::vector<Line>& a, const std::vector<Line>& b);

// a := a + k mod 2^n using n pooled ancillas for the constant; k = 0 is empty.
Fragment synth_add_const(const std::vector<Line>& a, std::uint64_t k, AncillaManager& mgr);
Fragment synth_sub_const(const std::vector<Line>& a, std::uint64_t k, AncillaManager& mgr);

// a := a + b*c mod 2^(2n) with |a| = 2n, |b| = |c| = n. Partial products
// widen b with dirty lines borrowed from a, c and `extra`. When those run
// short (only for the first product) one zeroed scratch line is taken from
// mgr and returned; *used_scratch reports it.
Fragment synth_multiplier(const std::vector<Line>& a, const std::vector<Line>& b, const std::vector<Line>& c,
                          AncillaManager& mgr, const std::vector<Line>& extra = {},
                          bool* used_scratch = nullptr);

// k-control NOT on target. k >= 3 uses one dirty line from `borrowable`
// (any line outside the gate) and restores it.
Fragment decompose_multi_control(const std::vector<Line>& controls, Line target,
                                 const std::vector<Line>& borrowable);

// Adds ctrl as a control to every gate. 3-control gates are lowered at once,
// borrowing the lowest line below `num_lines` outside the gate.
Fragment controlize(const Fragment& body, Line ctrl, Line num_lines);

// out ^= [a op b]; a and b restored. out must be a zeroed line.
Fragment synth_compare(const std::vector<Line>& a, const std::vector<Line>& b, CmpOp op, Line out,
                       AncillaManager& mgr);
Fragment synth_compare_const(const std::vector<Line>& a, std::int64_t k, CmpOp op, Line out, AncillaManager& mgr);

struct RevRegister {
  std::string name;
  std::vector<Line> lines;
  bool is_param = false;
  bool output = false;
};

struct RevCircuit {
  Line width = 0;
  std::vector<RevRegister> registers;
  std::vector<Line> ancillas;
  Fragment gates;
  RevCounts counts;
  std::size_t ancilla_count = 0;
  bool used_scratch = false;  // multiplier scratch line in use
};

using Bits = std::vector<std::uint8_t>;

// Throws Error(WidthMismatch) if input.size() != width.
Bits simulate_reversible(const Fragment& gates, Line width, Bits input);
Bits simulate_reversible(const RevCircuit& c, Bits input);

std::uint64_t read_register(const Bits& state, const std::vector<Line>& lines);
void write_register(Bits& state, const std::vector<Line>& lines, std::uint64_t v);

// ---- Module compilation ----

struct CtqgLayout {
  std::vector<RevRegister> registers;  // params, then locals
  Line anc_first = 0;
  std::size_t ancillas = 0;
  RevCounts counts;
  bool used_scratch = false;
};

// Compiles one CTQG module, streaming gates into sink as they are produced.
// `params` binds the module's classical parameters.
CtqgLayout compile_ctqg_module(const ModuleDef& m, const Frame& params, GateSink& sink,
                               const std::string& origin = "<memory>");

RevCircuit compile_ctqg_circuit(const ModuleDef& m, const Frame& params = {});

// Flat-format netlist: register and ancilla declarations, then one gate per
// line. Two passes: the first sizes the ancilla block, the second streams.
void write_ctqg_netlist(const ModuleDef& m, const Frame& params, std::ostream& out);
std::string ctqg_netlist(const ModuleDef& m, const Frame& params = {});

// Runs the module on classical inputs. Registers that are outputs default
// to 0; any other parameter register must be given. Returns the final
// value of every parameter register.
std::map<std::string, std::uint64_t> simulate_ctqg(const ModuleDef& m,
                                                   const std::map<std::string, std::uint64_t>& inputs,
                                                   const Frame& params = {});

// The module's netlist re-read through the QASM parser as a flat module
// whose parameters are the module's registers.
FlatModule ctqg_flat_module(const ModuleDef& m, const Frame& params, const std::string& name);

}  // namespace qcc
