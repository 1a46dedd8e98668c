// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <complex>
#include <iosfwd>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcc/flat.hpp"

namespace qcc {

// FLAT: one inlined gate list. HIER: modules with unrolled bodies.
// HIER_LOOPS: modules with forall slices and repeat blocks retained.
enum class QasmFormat : unsigned char { Flat, Hier, HierLoops };

const char* qasm_format_name(QasmFormat f);               // "qasm-f", "qasm-h", "qasm-hl"
std::optional<QasmFormat> parse_qasm_format(std::string_view s);

struct QasmStats {
  std::uint64_t lines = 0;
  std::array<std::uint64_t, kNumGateKinds> gate_lines{};  // statements per gate kind
  // Gate statements written; declarations, braces, calls and repeat headers
  // are not counted.
  std::uint64_t code_size() const;
};

struct QasmDocument {
  std::string text;
  QasmFormat format = QasmFormat::HierLoops;
  QasmStats stats;
};

struct EmitOptions {
  // FLAT and HIER refuse to write more gate lines than this.
  std::uint64_t budget = 100'000'000;
};

// Throws Error(BudgetExceeded) when FLAT or HIER output would exceed the
// budget; nothing is written in that case.
QasmDocument emit_qasm(const SpecializedProgram& p, QasmFormat fmt, const EmitOptions& opt = {});
QasmStats write_qasm(const SpecializedProgram& p, QasmFormat fmt, std::ostream& out, const EmitOptions& opt = {});

// QASM-HL text of one statement; a repeat yields its opening line.
std::string qasm_statement(const FlatModule& m, const FInst& inst);

// Reads any of the three formats. Statements outside a module form an
// implicit main. Parameter sizes come from call sites, else from the
// largest index used. Throws Error(Syntax) with a line number.
SpecializedProgram parse_qasm_hl(std::string_view text, const std::string& origin = "<memory>");

// A gate of the fixed Toffoli network. Operand positions refer to the
// Toffoli's own operands: 0 = target, 1 = first control, 2 = second control.
struct NetworkGate {
  GateKind kind;
  std::array<int, 2> operands;  // unused slots are -1
};

// Fifteen gates over {H, T, Tdag, CNOT}.
const std::vector<NetworkGate>& toffoli_network();

// Replaces every Toffoli (including forall Toffolis) by the network.
SpecializedProgram lower_toffoli(const SpecializedProgram& p);

// ---- Dense state-vector checker ----

inline constexpr int kMaxStateQubits = 10;

struct SimGate {
  GateKind kind = GateKind::X;
  std::vector<int> qubits;  // target first for controlled gates
  double angle = 0.0;
};

// Amplitude k belongs to the basis state whose bit q is the value of qubit q.
class StateVector {
 public:
  // Throws Error(TooManyQubits) when n > kMaxStateQubits.
  StateVector(int n, std::uint64_t basis = 0);

  int num_qubits() const { return n_; }
  const std::vector<std::complex<double>>& amplitudes() const { return amp_; }
  void apply(const SimGate& g);
  double norm() const;

 private:
  int n_;
  std::vector<std::complex<double>> amp_;
};

StateVector simulate_statevector(const std::vector<SimGate>& gates, int n, std::uint64_t basis = 0);

// Column k is the output state for basis input k.
std::vector<std::vector<std::complex<double>>> unitary_of(const std::vector<SimGate>& gates, int n);

// Largest elementwise deviation between u and v after removing the best
// global phase.
double phase_insensitive_distance(const std::vector<std::vector<std::complex<double>>>& u,
                                  const std::vector<std::vector<std::complex<double>>>& v);

}  // namespace qcc
