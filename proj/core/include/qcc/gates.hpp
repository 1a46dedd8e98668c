// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace qcc {

// Operand order is target first for the controlled gates:
// CNOT(target, control) and Toffoli(target, control1, control2).
enum class GateKind : unsigned char {
  X, Y, Z, H, S, Sdag, T, Tdag, CNOT, Toffoli, Rx, Ry, Rz, PrepZ, MeasZ,
};

inline constexpr int kNumGateKinds = 15;

inline constexpr std::array<GateKind, kNumGateKinds> kAllGateKinds = {
    GateKind::X,    GateKind::Y,    GateKind::Z,    GateKind::H,
    GateKind::S,    GateKind::Sdag, GateKind::T,    GateKind::Tdag,
    GateKind::CNOT, GateKind::Toffoli, GateKind::Rx, GateKind::Ry,
    GateKind::Rz,   GateKind::PrepZ, GateKind::MeasZ};

std::string_view gate_name(GateKind k);
std::optional<GateKind> gate_from_name(std::string_view name);

// Number of qubit operands.
int gate_arity(GateKind k);
bool gate_has_angle(GateKind k);
inline bool gate_is_multi_qubit(GateKind k) { return gate_arity(k) > 1; }

}  // namespace qcc
