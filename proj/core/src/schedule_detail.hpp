// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qcc/timing.hpp"

namespace qcc {

// Schedule of one statement sequence (a module body or a repeat body) on
// the module's linearized qubits.
struct SequenceSchedule {
  std::uint64_t length = 0;
  std::vector<std::uint64_t> times;  // per statement, see ModuleSchedule::inst_time
  std::vector<std::shared_ptr<const SequenceSchedule>> bodies;  // repeat statements only
  std::vector<std::uint64_t> period;                             // repeat: steps between instances
  std::unordered_map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> uses;  // qubit -> (first, last)
};

inline std::uint64_t sat_add64(std::uint64_t a, std::uint64_t b) { return a > UINT64_MAX - b ? UINT64_MAX : a + b; }

inline std::uint64_t sat_mul64(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > UINT64_MAX / b ? UINT64_MAX : a * b;
}

}  // namespace qcc
