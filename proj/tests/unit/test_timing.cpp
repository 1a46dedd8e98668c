// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>
#include <chrono>
#include <limits>

#include "fixtures.hpp"
#include "qcc/error.hpp"
#include "qcc/flatten.hpp"
#include "qcc/qasm.hpp"
#include "qcc/timing.hpp"
#include "reference.hpp"

using namespace qcc;
using namespace qcc::testing;

namespace {

constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
constexpr SchedulingMode kModes[] = {SchedulingMode::Modular, SchedulingMode::BottomSlack,
                                     SchedulingMode::CenterAligned};

SpecializedProgram from_source(const std::string& text) { return flatten_pass_driven(compile_source(SourceProgram{text})); }

}  // namespace

TEST_CASE("ASAP on a serial chain", "[timing]") {
  const SpecializedProgram sp = flatten_pass_driven(fixture_program("chain.scf"));
  const ModuleSchedule s = schedule_asap(*sp.find("main"));
  CHECK(s.length == 3);
  CHECK(s.inst_time == std::vector<std::uint64_t>{1, 2, 3});
  const ModuleSchedule c = schedule_center_aligned(*sp.find("main"));
  CHECK(c.inst_time == s.inst_time);
  CHECK(compose_critical_path(sp, SchedulingMode::Modular).length == 3);
  CHECK(oracle_critical_path(sp) == 3);
}

TEST_CASE("center alignment pushes early gates toward their next use", "[timing]") {
  const SpecializedProgram sp = from_source(
      "module main() { qbit a[1], b[1];\n  H(a[0]);\n  H(b[0]);\n  T(b[0]);\n  CNOT(b[0], a[0]); }\n");
  const FlatModule& m = *sp.find("main");
  const ModuleSchedule asap = schedule_asap(m);
  CHECK(asap.inst_time == std::vector<std::uint64_t>{1, 1, 2, 3});
  const ModuleSchedule center = schedule_center_aligned(m);
  CHECK(center.length == 3);
  CHECK(center.inst_time == std::vector<std::uint64_t>{2, 1, 2, 3});
  const QubitUse* a = center.use(0, 0);
  REQUIRE(a);
  CHECK(a->first == 2);
  CHECK(a->last == 3);
}

TEST_CASE("leaf schedulers reject modules with calls", "[timing]") {
  const SpecializedProgram sp = flatten_pass_driven(fixture_program("forall_cnot.scf"));
  CHECK_THROWS_AS(schedule_asap(*sp.find("main")), Error);
  CHECK_THROWS_AS(schedule_center_aligned(*sp.find("main")), Error);
}

TEST_CASE("mode names round trip", "[timing]") {
  for (SchedulingMode m : kModes) CHECK(parse_scheduling_mode(scheduling_mode_name(m)) == m);
  CHECK(parse_scheduling_mode("center-aligned") == SchedulingMode::CenterAligned);
  CHECK(parse_scheduling_mode("bottom_slack") == SchedulingMode::BottomSlack);
  CHECK_FALSE(parse_scheduling_mode("sideways"));
}

TEST_CASE("every mode is sound and the modes are ordered on the suite", "[timing][suite]") {
  REQUIRE(timing_fixtures().size() >= 10);
  for (const auto& f : timing_fixtures()) {
    INFO(f);
    const Ast ast = fixture_ast(f);
    const std::uint64_t exact = reference_critical_path(reference_run(ast).trace);
    const SpecializedProgram sp = flatten_pass_driven(resolve_semantics(ast));
    CHECK(oracle_critical_path(sp) == exact);
    std::uint64_t len[3];
    for (int k = 0; k < 3; ++k) {
      INFO(scheduling_mode_name(kModes[k]));
      const CpEstimate est = compose_critical_path(sp, kModes[k]);
      len[k] = est.length;
      const ScheduleCheck chk = validate_schedule(sp, est);
      CHECK(chk.valid);
      for (const auto& v : chk.violations) INFO(v);
      CHECK(est.length >= exact);
    }
    CHECK(len[2] <= len[1]);
    CHECK(len[1] <= len[0]);
  }
}

TEST_CASE("more inlining never lengthens the modular estimate", "[timing][suite]") {
  const std::uint64_t thresholds[] = {0, 1, 2, 3, 5, 8, 13, 21, 50, 100, 1000, kInf};
  for (const auto& f : timing_fixtures()) {
    INFO(f);
    const SpecializedProgram sp = flatten_pass_driven(fixture_program(f));
    const std::uint64_t exact = oracle_critical_path(sp);
    std::uint64_t prev = kInf;
    for (std::uint64_t t : thresholds) {
      INFO("threshold " << t);
      const SpecializedProgram r = remodularize(sp, t);
      const CpEstimate est = compose_critical_path(r, SchedulingMode::Modular);
      CHECK(est.length <= prev);
      CHECK(validate_schedule(r, est).valid);
      CHECK(oracle_critical_path(r) == exact);
      prev = est.length;
    }
    for (SchedulingMode m : kModes) CHECK(compose_critical_path(remodularize(sp, kInf), m).length == exact);
  }
}

TEST_CASE("threshold zero leaves the program unchanged", "[timing][remodularize]") {
  const SpecializedProgram sp = flatten_pass_driven(fixture_program("timing/t10_deep.scf"));
  CHECK(emit_qasm(remodularize(sp, 0), QasmFormat::HierLoops).text == emit_qasm(sp, QasmFormat::HierLoops).text);
}

TEST_CASE("only modules below the threshold are inlined", "[timing][remodularize]") {
  std::string big;
  for (int k = 0; k < 50; ++k) big += " T(x[0]);";
  const SpecializedProgram sp = from_source(
      "module Small(qbit x[1]) { H(x[0]); S(x[0]); T(x[0]); X(x[0]); Z(x[0]); }\n"
      "module Big(qbit x[1]) {" + big + " }\n"
      "module main() { qbit q[2]; Small(q[0:0]); Big(q[1:1]); Small(q[1:1]); }\n");
  const SpecializedProgram r = remodularize(sp, 10);
  CHECK_FALSE(r.find("Small"));
  CHECK(r.find("Big"));
  CHECK(r.find("main")->body.size() == 11);
}

TEST_CASE("inlined locals get fresh registers per instance", "[timing][remodularize]") {
  const SpecializedProgram sp = flatten_pass_driven(fixture_program("timing/t09_locals.scf"));
  const SpecializedProgram r = remodularize(sp, kInf);
  REQUIRE(r.modules.size() == 1);
  int anc = 0;
  for (const auto& reg : r.find("main")->regs) anc += reg.name.find("__anc") != std::string::npos;
  CHECK(anc == 3);
  CHECK(oracle_critical_path(r) == oracle_critical_path(sp));
}

TEST_CASE("remodularization stops at the statement budget", "[timing][remodularize]") {
  const SpecializedProgram sp = flatten_pass_driven(fixture_program("scale.scf"));
  try {
    remodularize(sp, kInf, 1'000'000);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetExceeded);
  }
}

TEST_CASE("a repeat composes as k times its body", "[timing][repeat]") {
  const SpecializedProgram sp = flatten_pass_driven(fixture_program("timing/t04_repeat_serial.scf"));
  CHECK(compose_critical_path(sp, SchedulingMode::Modular).length == 7 * 3);
  CHECK(oracle_critical_path(sp) == 15);

  // Every body gate touches both qubits, so iterations cannot overlap.
  const SpecializedProgram serial = from_source(
      "module main() { qbit q[2];\n"
      "  for (int k = 0; k < 9; k++) { CNOT(q[1], q[0]); CNOT(q[0], q[1]); CNOT(q[1], q[0]); } }\n");
  for (SchedulingMode m : kModes) CHECK(compose_critical_path(serial, m).length == 27);
  CHECK(oracle_critical_path(serial) == 27);
}

TEST_CASE("the schedule checker finds conflicts", "[timing]") {
  PhysQubit q0{0, 0, 0, 0}, q1{0, 0, 0, 1};
  std::vector<TimedGate> gates = {{GateKind::H, 1, {q0}, 1}, {GateKind::CNOT, 2, {q1, q0}, 2},
                                  {GateKind::X, 1, {q1}, 2}};
  const ScheduleCheck bad = check_timed_gates(gates, 2);
  CHECK_FALSE(bad.valid);
  CHECK_FALSE(bad.violations.empty());
  gates[2].time = 3;
  CHECK(check_timed_gates(gates, 3).valid);
  CHECK_FALSE(check_timed_gates(gates, 4).valid);
}

TEST_CASE("the scheduler memoizes per module and mode", "[timing]") {
  const SpecializedProgram sp = flatten_pass_driven(fixture_program("timing/t07_diamond.scf"));
  Scheduler s(sp);
  const ModuleSchedule& a = s.schedule("Leaf", SchedulingMode::Modular);
  const ModuleSchedule& b = s.schedule("Leaf", SchedulingMode::Modular);
  CHECK(&a == &b);
  const std::size_t n = s.modules_scheduled();
  s.schedule("Leaf", SchedulingMode::Modular);
  CHECK(s.modules_scheduled() == n);
  const CpEstimate est = compose_critical_path(sp, SchedulingMode::BottomSlack);
  CHECK(est.module_lengths.at("Leaf") == 3);
}

TEST_CASE("two billion gates are timed without expansion", "[timing][scale]") {
  const auto t0 = std::chrono::steady_clock::now();
  const SpecializedProgram sp = flatten_pass_driven(fixture_program("scale.scf"));
  CHECK(total_gate_count(sp) == 1'999'000'000ULL);
  const CpEstimate est = compose_critical_path(sp, SchedulingMode::Modular);
  CHECK(est.length == 1'000'000'000ULL);
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 10.0);
  CHECK_THROWS_AS(oracle_critical_path(sp, 1'000'000), Error);
}
