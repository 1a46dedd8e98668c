// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qcc/flat.hpp"

namespace qcc {

enum class Severity : unsigned char { Error, Warning, Info };
const char* severity_name(Severity s);

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string kind;     // "no-cloning", "disentangled-qubit"
  std::string message;
  std::string module;
  std::int64_t inst = 0;  // index of the top-level statement in the module body
};

// "<module>#<inst>: <severity>: <kind>: <message>"
std::string format_diagnostic(const Diagnostic& d);

// ---- No-cloning ----

// One error per multi-qubit gate (per module and aliasing pattern of its
// parameters) whose operands resolve to the same physical qubit, including
// aliases created by call argument binding.
std::vector<Diagnostic> check_no_cloning(const SpecializedProgram& p);

// ---- Entanglement ----

struct QubitId {
  int reg = 0;
  std::int64_t idx = 0;
  auto operator<=>(const QubitId&) const = default;
};

struct EntanglementNote {
  enum class Kind : unsigned char { Create, Reverse, Call, Measure };
  Kind kind = Kind::Create;
  std::size_t inst = 0;         // top-level statement index
  std::size_t seq = 0;          // statement number in preorder, repeat bodies included
  std::string statement;        // QASM-HL text of the gate or call
  std::vector<std::string> qubits;  // entangled class, or the disentangled target
};

struct EntanglementResult {
  std::string module;
  std::vector<EntanglementNote> notes;             // in processing order
  std::vector<std::vector<QubitId>> final_classes;  // classes of two or more qubits
  std::vector<QubitId> measured;
  std::uint64_t timestamps = 0;

  std::vector<std::vector<std::string>> final_names(const FlatModule& m) const;
};

// Summaries of already analyzed callees, by specialized module name.
using EntanglementSummaries = std::map<std::string, EntanglementResult>;

// Conservative tracking: CNOT and Toffoli merge their operands' classes; an
// identical gate whose controls were not targeted since the original is a
// reverse operation and drops the record; a target without records leaves
// its class. Calls merge the callee's final classes over the bound actuals.
EntanglementResult analyze_entanglement(const FlatModule& m, const EntanglementSummaries& callees = {});

// Warning per local qubit left in a final class and never measured.
std::vector<Diagnostic> check_disentangled(const FlatModule& m, const EntanglementResult& r);

// QASM-HL text of m with creation notes on the following line, reverse
// notes on the same line and the final classes after the module.
std::string annotate_entanglement(const FlatModule& m, const EntanglementResult& r);

// Every module in postorder; the disentangled-qubit check skips the entry.
struct ProgramEntanglement {
  EntanglementSummaries modules;
  std::vector<Diagnostic> diagnostics;
  std::string annotated;  // every module, callees first
};

ProgramEntanglement analyze_program_entanglement(const SpecializedProgram& p);

// Qubit display name "x0" for x[0].
std::string qubit_label(const FlatModule& m, const QubitId& q);

// ---- Resources ----

using BigCount = boost::multiprecision::cpp_int;

struct ResourceRow {
  std::string module;
  MemoKey key;
  BigCount qubits = 0;
  std::array<BigCount, kNumGateKinds> gates{};

  BigCount total_gates() const;
  const BigCount& count(GateKind k) const { return gates[static_cast<int>(k)]; }
};

struct ResourceTable {
  std::vector<ResourceRow> rows;  // callees first
  std::map<std::string, std::size_t> index;

  const ResourceRow* find(const std::string& module) const;
  // Aligned columns: Module, IntegerParam, DoubleParam, Qubit, gate kinds.
  std::string text() const;
  // module,int_params,real_params,qubits,<one column per gate kind>
  std::string csv() const;
};

// Each module counted once: own gates (repeat bodies times the trip count,
// foralls times their width) plus the rows of its callees. Qubits are the
// module's locals plus the largest callee count.
ResourceTable estimate_resources(const SpecializedProgram& p);

}  // namespace qcc
