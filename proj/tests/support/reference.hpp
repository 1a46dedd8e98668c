// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

// Reference semantics used as test oracles. Everything here works on the
// parsed Ast directly and shares no code with the IR, the flatteners, the
// CTQG compiler or the analyses.

#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcc/flat.hpp"
#include "qcc/frontend.hpp"

namespace qcc::testing {

struct Unsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ReferenceRun {
  Trace trace;                   // entry qubits "reg[i]", callee locals "#<n>.reg[i]"
  std::uint64_t peak_qubits = 0;  // most qubits allocated at once
};

// Executes the entry module of ast by direct interpretation. Throws
// Unsupported for calls into CTQG modules and std::runtime_error past
// `budget` gates or on a malformed program.
ReferenceRun reference_run(const Ast& ast, std::uint64_t budget = 10'000'000);

// Renames callee-local qubits ("#...") by order of first appearance so two
// traces with different instance numbering can be compared.
Trace canonical_locals(const Trace& t);

bool traces_equal(const Trace& a, const Trace& b, std::string* why = nullptr);

// Longest chain of gates sharing qubits, by a per-qubit last-use scan.
std::uint64_t reference_critical_path(const Trace& t);

std::array<std::uint64_t, kNumGateKinds> reference_histogram(const Trace& t);

// Classical semantics of a CTQG module: registers wrap modulo 2^width,
// `:=` xors a constant in, `$if` compares unsigned register values.
// Returns the final value of every register parameter.
std::map<std::string, std::uint64_t> reference_ctqg(const Ast& ast, const std::string& module,
                                                     const std::map<std::string, std::uint64_t>& inputs);

}  // namespace qcc::testing
