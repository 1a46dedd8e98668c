// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "qcc/flat.hpp"
#include "qcc/ir.hpp"

namespace qcc {

struct FlattenOptions {
  // Pass-driven: largest module body (in IR instructions) an unroll may produce.
  std::uint64_t blowup_limit = 100'000'000;
  // Dynamic: classical interpreter steps (assignments, guards, loop iterations, calls).
  std::uint64_t step_limit = 10'000'000'000ULL;
  // Dynamic: reuse an emitted module for a repeated specialization key.
  bool memoize = true;
};

struct FlattenStats {
  std::uint64_t modules = 0;
  std::uint64_t memo_hits = 0;
  std::uint64_t unrolled = 0;
  std::uint64_t fixpoint_rounds = 0;
  std::uint64_t steps = 0;
};

enum class Strategy : unsigned char { Pass, Dynamic };
const char* strategy_name(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view s);

// Static partial evaluation: propagate, fold, resolve guards, unroll classical
// loops, clone modules per constant argument tuple, to fixpoint.
SpecializedProgram flatten_pass_driven(const Program& p, const FlattenOptions& opt = {},
                                       FlattenStats* stats = nullptr);

// Executes the classical control; emits one module per specialization key
// and collapses identical consecutive loop iterations into repeat loops.
SpecializedProgram flatten_dynamic(const Program& p, const FlattenOptions& opt = {},
                                   FlattenStats* stats = nullptr);

SpecializedProgram flatten(const Program& p, Strategy s, const FlattenOptions& opt = {},
                           FlattenStats* stats = nullptr);

}  // namespace qcc
