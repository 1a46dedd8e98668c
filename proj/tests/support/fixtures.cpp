// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#include "fixtures.hpp"

#ifndef QCC_FIXTURE_DIR
#error "QCC_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace qcc::testing {

std::string fixture_path(const std::string& name) { return std::string(QCC_FIXTURE_DIR) + "/" + name; }

SourceProgram fixture_source(const std::string& name) { return read_source_file(fixture_path(name)); }

Ast fixture_ast(const std::string& name) { return parse_scafflite(fixture_source(name)); }

Program fixture_program(const std::string& name) { return compile_source(fixture_source(name)); }

const std::vector<std::string>& timing_fixtures() {
  static const std::vector<std::string> v = {
      "chain.scf",
      "timing/t01_call_chain.scf",
      "timing/t02_bottom_slack.scf",
      "timing/t03_top_slack.scf",
      "timing/t04_repeat_serial.scf",
      "timing/t05_repeat_slack.scf",
      "timing/t06_forall_mix.scf",
      "timing/t07_diamond.scf",
      "timing/t08_params.scf",
      "timing/t09_locals.scf",
      "timing/t10_deep.scf",
      "timing/t11_measure.scf",
      "forall_cnot.scf",
      "oracle_loop.scf",
      "eq_mark.scf",
      "phase_mark.scf",
      "classical_mix.scf",
  };
  return v;
}

const std::vector<std::string>& expandable_fixtures() {
  static const std::vector<std::string> v = [] {
    std::vector<std::string> all = timing_fixtures();
    for (const char* f : {"phase_mark_no_uncompute.scf", "clone_bug.scf", "alias_call.scf", "alias_slices.scf",
                          "repeat_small.scf"})
      all.emplace_back(f);
    return all;
  }();
  return v;
}

const std::vector<std::string>& ctqg_program_fixtures() {
  static const std::vector<std::string> v = {"ctqg_call.scf"};
  return v;
}

}  // namespace qcc::testing
