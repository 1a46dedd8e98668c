// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#include "qcc/gates.hpp"

namespace qcc {

namespace {
constexpr std::array<std::string_view, kNumGateKinds> kNames = {
    "X", "Y", "Z", "H", "S", "Sdag", "T", "Tdag", "CNOT", "Toffoli",
    "Rx", "Ry", "Rz", "PrepZ", "MeasZ"};
}

std::string_view gate_name(GateKind k) { return kNames[static_cast<int>(k)]; }

std::optional<GateKind> gate_from_name(std::string_view name) {
  for (int i = 0; i < kNumGateKinds; ++i)
    if (kNames[i] == name) return static_cast<GateKind>(i);
  return std::nullopt;
}

int gate_arity(GateKind k) {
  switch (k) {
    case GateKind::CNOT: return 2;
    case GateKind::Toffoli: return 3;
    default: return 1;
  }
}

bool gate_has_angle(GateKind k) {
  return k == GateKind::Rx || k == GateKind::Ry || k == GateKind::Rz;
}

}  // namespace qcc
