// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcc/flatten.hpp"
#include "qcc/qasm.hpp"
#include "qcc/timing.hpp"

namespace qcc::cli {

enum class Command : unsigned char { Compile, Analyze, Timing, CtqgSynth, CtqgSimulate };

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDiagnostics = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  Command command = Command::Compile;
  std::string input;
  std::string output;  // empty: standard output
  QasmFormat format = QasmFormat::HierLoops;
  Strategy strategy = Strategy::Pass;
  bool lower_toffoli = false;
  bool dump_ir = false;
  bool resources = false;
  bool entangle = false;
  bool nocloning = false;
  bool csv = false;
  SchedulingMode mode = SchedulingMode::Modular;
  std::optional<std::uint64_t> threshold;
  bool oracle = false;
  bool validate = false;
  std::uint64_t budget_instructions = 100'000'000;
  std::uint64_t blowup_limit = 100'000'000;
  std::uint64_t step_limit = 10'000'000'000ULL;
  bool memoize = true;
  std::string module;
  std::map<std::string, std::uint64_t> inputs;  // ctqg simulate --in
  std::map<std::string, std::string> params;     // ctqg --param name=value
  int verbosity = 0;
};

// Parses argv into cfg. Returns an exit code when the invocation is done
// (help, version or a usage error), else nullopt.
std::optional<int> parse_args(int argc, const char* const* argv, RunConfig& cfg, std::ostream& out,
                              std::ostream& err);

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Writes text to path through a temporary file in the same directory and a rename.
void write_atomically(const std::string& path, const std::string& text);

}  // namespace qcc::cli
