// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcc/flat.hpp"

namespace qcc {

// How a callee (or repeat body) is summarized at its use site.
// Modular: every used operand busy for the whole callee.
// BottomSlack: operands free after their last use.
// CenterAligned: operands free before their first and after their last
// use, with the first half of each schedule pushed late.
enum class SchedulingMode : unsigned char { Modular, BottomSlack, CenterAligned };

const char* scheduling_mode_name(SchedulingMode m);  // "modular", "bottom-slack", "center"
std::optional<SchedulingMode> parse_scheduling_mode(std::string_view s);

struct QubitUse {
  int reg = 0;
  std::int64_t idx = 0;
  std::uint64_t first = 0;  // timesteps are 1-based
  std::uint64_t last = 0;
};

struct SequenceSchedule;

struct ModuleSchedule {
  std::string module;
  std::uint64_t length = 0;
  // Per top-level statement: the timestep of a gate or forall, or the
  // offset t0 of a call or repeat (callee step tau runs at t0 + tau).
  std::vector<std::uint64_t> inst_time;
  std::vector<QubitUse> uses;  // sorted by (reg, idx)
  std::shared_ptr<const SequenceSchedule> detail;

  const QubitUse* use(int reg, std::int64_t idx) const;
};

// Program-order ASAP: each statement starts right after the latest use of
// its operands. Throws Error(Semantic) if m calls other modules.
ModuleSchedule schedule_asap(const FlatModule& m);

// ASAP, then statements in the first half pushed as late as their operands'
// next uses allow. Same length as ASAP.
ModuleSchedule schedule_center_aligned(const FlatModule& m);

// Per-module schedules of one program, memoized per (module, mode).
class Scheduler {
 public:
  explicit Scheduler(const SpecializedProgram& p);
  ~Scheduler();
  Scheduler(const Scheduler&) = delete;
  Scheduler& operator=(const Scheduler&) = delete;

  const ModuleSchedule& schedule(const std::string& module, SchedulingMode mode);
  std::size_t modules_scheduled() const;
  const SpecializedProgram& program() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct CpEstimate {
  std::uint64_t length = 0;
  SchedulingMode mode = SchedulingMode::Modular;
  std::optional<std::uint64_t> threshold;
  std::size_t modules_scheduled = 0;
  double seconds = 0.0;
  std::map<std::string, std::uint64_t> module_lengths;
};

CpEstimate compose_critical_path(const SpecializedProgram& p, SchedulingMode mode);

// Inlines every module whose total gate count is below threshold, and
// unrolls repeat blocks and forall slices below it, to fixpoint. Inlined
// locals get fresh registers per inlined instance. Throws
// Error(BudgetExceeded) past `budget` statements.
SpecializedProgram remodularize(const SpecializedProgram& p, std::uint64_t threshold,
                                std::uint64_t budget = 100'000'000);

// Longest dependency chain of the fully expanded gate sequence.
std::uint64_t oracle_critical_path(const SpecializedProgram& p, std::uint64_t budget = 100'000'000);

struct TimedGate {
  GateKind kind = GateKind::X;
  int n = 0;
  std::array<PhysQubit, 3> q{};
  std::uint64_t time = 0;
};

// Every gate of the expanded program, in execution order, at the timestep
// the composed schedule assigns it.
std::vector<TimedGate> timed_expansion(const SpecializedProgram& p, SchedulingMode mode,
                                       std::uint64_t budget = 100'000'000);

struct ScheduleCheck {
  bool valid = true;
  std::uint64_t max_time = 0;
  std::vector<std::string> violations;
};

// Gates sharing a qubit must run at strictly increasing timesteps in
// execution order, and the latest timestep must equal `length`.
ScheduleCheck check_timed_gates(const std::vector<TimedGate>& gates, std::uint64_t length);

ScheduleCheck validate_schedule(const SpecializedProgram& p, const CpEstimate& est,
                                std::uint64_t budget = 100'000'000);

}  // namespace qcc
