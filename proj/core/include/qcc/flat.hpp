// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "qcc/gates.hpp"

namespace qcc {

// Specialization key: module name plus exact classical parameter values.
// Reals compare by bit pattern.
struct MemoKey {
  std::string module;
  std::vector<std::int64_t> ints;
  std::vector<double> reals;

  std::strong_ordering operator<=>(const MemoKey& o) const;
  bool operator==(const MemoKey& o) const { return (*this <=> o) == 0; }
  std::string str() const;  // "Oracle(j=..)" style, for reports
};

struct FReg {
  std::string name;
  std::int64_t size = 0;
  bool is_param = false;
};

struct FQubit {
  int reg = 0;
  std::int64_t idx = 0;
  bool operator==(const FQubit&) const = default;
};

struct FGate {
  GateKind kind = GateKind::X;
  std::vector<FQubit> qubits;
  double angle = 0.0;
  bool operator==(const FGate& o) const;
};

// Contiguous run reg[lo .. lo+len-1] bound to one callee parameter.
struct FArg {
  int reg = 0;
  std::int64_t lo = 0;
  std::int64_t len = 0;
  bool operator==(const FArg&) const = default;
};

struct FCall {
  std::string callee;
  std::vector<FArg> args;
  bool operator==(const FCall&) const = default;
};

// Iteration t in [0, count) applies the gate to (reg, start + t*step) per operand.
struct FOperand {
  int reg = 0;
  std::int64_t start = 0;
  int step = 1;  // +1 or -1
  bool operator==(const FOperand&) const = default;
};

struct FForall {
  GateKind kind = GateKind::X;
  std::vector<FOperand> ops;
  std::int64_t count = 0;
  double angle = 0.0;
  bool operator==(const FForall& o) const;
};

struct FInst;

struct FRepeat {
  std::uint64_t count = 0;
  std::vector<FInst> body;
  bool operator==(const FRepeat& o) const;
};

struct FInst {
  std::variant<FGate, FCall, FForall, FRepeat> v;
  bool operator==(const FInst& o) const { return v == o.v; }
};

struct FlatModule {
  std::string name;
  std::vector<FReg> regs;  // parameters first, then locals
  int num_params = 0;
  MemoKey key;
  std::vector<FInst> body;

  int find_reg(const std::string& n) const;
};

struct SpecializedProgram {
  std::vector<FlatModule> modules;
  std::map<std::string, int> index;
  std::string entry = "main";
  std::map<MemoKey, std::string> specialization_index;

  const FlatModule* find(const std::string& name) const;
  FlatModule* find(const std::string& name);
  int find_index(const std::string& name) const;
  void add(FlatModule m);
  // Callees before callers; modules reachable from the entry come first.
  std::vector<int> postorder() const;
};

// Throws Error(Semantic) on dangling callees, bad slices or out-of-range qubits.
void validate(const SpecializedProgram& p);

// Saturating total of primitive gate applications (foralls count per qubit).
std::uint64_t total_gate_count(const SpecializedProgram& p);

// ---- Expansion to a flat gate trace ----

struct PhysQubit {
  std::int64_t owner = 0;  // call-instance number, 0 for the entry
  int module = 0;
  int reg = 0;
  std::int64_t idx = 0;
  bool operator==(const PhysQubit&) const = default;
  auto operator<=>(const PhysQubit&) const = default;
};

struct ExpandedGate {
  GateKind kind = GateKind::X;
  int n = 0;
  std::array<PhysQubit, 3> q{};
  double angle = 0.0;
};

// Visits every primitive gate in execution order. Throws
// Error(BudgetExceeded) once more than `budget` gates would be visited.
void expand(const SpecializedProgram& p, std::uint64_t budget, const std::function<void(const ExpandedGate&)>& visit);

// "reg[i]" for entry qubits, "#<k>.reg[i]" for locals of call instance k.
std::string qubit_name(const SpecializedProgram& p, const PhysQubit& q);

struct TraceGate {
  GateKind kind = GateKind::X;
  std::vector<std::string> qubits;
  double angle = 0.0;
};
using Trace = std::vector<TraceGate>;

// Fully expanded gate trace; call-instance locals are named "#<k>.<local>[i]"
// with instances numbered in execution order.
Trace expand_trace(const SpecializedProgram& p, std::uint64_t budget);

// Same length and the same gate sequence on every qubit. Gates on disjoint
// qubits may be reordered.
bool dependency_equivalent(const Trace& a, const Trace& b, std::string* why = nullptr);

// Per-kind gate counts of a trace.
std::array<std::uint64_t, kNumGateKinds> gate_histogram(const Trace& t);

}  // namespace qcc
