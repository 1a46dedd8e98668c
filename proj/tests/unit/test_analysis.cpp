// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>
#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "qcc/analysis.hpp"
#include "qcc/ctqg.hpp"
#include "qcc/flatten.hpp"
#include "qcc/qasm.hpp"
#include "reference.hpp"

using namespace qcc;
using namespace qcc::testing;

namespace {

std::string golden(const std::string& name) {
  std::ifstream in(std::string(QCC_GOLDEN_DIR) + "/" + name);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SpecializedProgram specialized(const std::string& fixture) { return flatten_pass_driven(fixture_program(fixture)); }

SpecializedProgram from_source(const std::string& text) { return flatten_pass_driven(compile_source(SourceProgram{text})); }

std::set<std::string> flatten_classes(const std::vector<std::vector<std::string>>& classes) {
  std::set<std::string> s;
  for (const auto& c : classes) s.insert(c.begin(), c.end());
  return s;
}

std::vector<std::vector<std::string>> final_of(const SpecializedProgram& sp, const std::string& module) {
  const FlatModule& m = *sp.find(module);
  return analyze_entanglement(m).final_names(m);
}

}  // namespace

// ---- entanglement ----

TEST_CASE("eq_mark annotations match the golden text", "[analysis][entangle]") {
  const SpecializedProgram sp = specialized("eq_mark.scf");
  const FlatModule& m = *sp.find("EQxMark_1_1");
  const EntanglementResult r = analyze_entanglement(m);
  CHECK(annotate_entanglement(m, r) == golden("eq_mark_annotated.txt"));
  CHECK(r.final_names(m) == std::vector<std::vector<std::string>>{{"t0", "b4", "b3", "b2", "b1", "b0"}});
  CHECK(check_disentangled(m, r).empty());
}

TEST_CASE("phase_mark ancillas are disentangled by the uncompute gates", "[analysis][entangle]") {
  const SpecializedProgram sp = specialized("phase_mark.scf");
  const FlatModule& m = *sp.find("PhaseMark");
  const EntanglementResult r = analyze_entanglement(m);
  CHECK(r.final_names(m) == std::vector<std::vector<std::string>>{{"d1", "d2"}});
  int reverses = 0;
  for (const auto& n : r.notes) reverses += n.kind == EntanglementNote::Kind::Reverse;
  CHECK(reverses == 2);
  CHECK(check_disentangled(m, r).empty());

  const ProgramEntanglement pe = analyze_program_entanglement(sp);
  CHECK(pe.diagnostics.empty());
  CHECK(pe.modules.at("main").final_names(*sp.find("main")) == std::vector<std::vector<std::string>>{{"d1", "d2"}});
}

TEST_CASE("phase_mark without uncompute leaves two ancilla warnings", "[analysis][entangle]") {
  const SpecializedProgram sp = specialized("phase_mark_no_uncompute.scf");
  const ProgramEntanglement pe = analyze_program_entanglement(sp);
  REQUIRE(pe.diagnostics.size() == 2);
  std::set<std::string> flagged;
  for (const auto& d : pe.diagnostics) {
    CHECK(d.severity == Severity::Warning);
    CHECK(d.kind == "disentangled-qubit");
    CHECK(d.module == "PhaseMark");
    flagged.insert(d.message.substr(std::string("local qubit ").size(), 2));
  }
  CHECK(flagged == std::set<std::string>{"a1", "a2"});
}

TEST_CASE("deleting one phase_mark gate never shrinks the final set below the intact run", "[analysis][entangle]") {
  const std::vector<std::string> gates = {
      "Toffoli(a[1], d[1], d[2]);", "Toffoli(a[2], a[1], d[1]);", "Z(a[2]);",
      "Toffoli(a[2], a[1], d[1]);", "Toffoli(a[1], d[1], d[2]);"};
  const std::vector<std::set<std::string>> touched = {
      {"a1", "d1", "d2"}, {"a2", "a1", "d1"}, {"a2"}, {"a2", "a1", "d1"}, {"a1", "d1", "d2"}};
  auto program = [&](std::size_t skip) {
    std::string body;
    for (std::size_t k = 0; k < gates.size(); ++k)
      if (k != skip) body += "  " + gates[k] + "\n";
    return "module P(qbit d[3]) {\n  qbit a[3];\n" + body + "}\nmodule main() { qbit d[3]; P(d); }\n";
  };
  const auto intact = flatten_classes(final_of(from_source(program(gates.size())), "P"));
  CHECK(intact == std::set<std::string>{"d1", "d2"});
  for (std::size_t k = 0; k < gates.size(); ++k) {
    INFO("without " << gates[k]);
    const auto variant = flatten_classes(final_of(from_source(program(k)), "P"));
    for (const auto& q : intact)
      if (!touched[k].count(q)) CHECK(variant.count(q));
  }
}

TEST_CASE("a reverse gate does not count once a control was changed", "[analysis][entangle]") {
  const SpecializedProgram sp = from_source(
      "module main() { qbit q[3];\n"
      "  Toffoli(q[0], q[1], q[2]);\n  X(q[1]);\n  Toffoli(q[0], q[1], q[2]); }\n");
  CHECK(final_of(sp, "main") == std::vector<std::vector<std::string>>{{"q0", "q1", "q2"}});

  // Changing the target does not block the reverse; the controls stay merged.
  const SpecializedProgram ok = from_source(
      "module main() { qbit q[3];\n"
      "  Toffoli(q[0], q[1], q[2]);\n  X(q[0]);\n  Toffoli(q[0], q[1], q[2]); }\n");
  const FlatModule& m = *ok.find("main");
  const EntanglementResult r = analyze_entanglement(m);
  CHECK(r.final_names(m) == std::vector<std::vector<std::string>>{{"q1", "q2"}});
  CHECK(r.notes.back().kind == EntanglementNote::Kind::Reverse);
}

TEST_CASE("measurement removes a qubit from its class", "[analysis][entangle]") {
  const SpecializedProgram sp = from_source(
      "module main() { qbit q[3];\n  CNOT(q[1], q[0]);\n  CNOT(q[2], q[1]);\n  MeasZ(q[1]); }\n");
  const FlatModule& m = *sp.find("main");
  const EntanglementResult r = analyze_entanglement(m);
  CHECK(r.final_names(m) == std::vector<std::vector<std::string>>{{"q2", "q0"}});
  REQUIRE(r.measured.size() == 1);
  CHECK(qubit_label(m, r.measured[0]) == "q1");
}

TEST_CASE("calls merge the callee's final classes onto the actuals", "[analysis][entangle]") {
  const SpecializedProgram sp = from_source(
      "module Pair(qbit x[1], qbit y[1]) { H(x[0]); CNOT(y[0], x[0]); }\n"
      "module main() { qbit q[4]; Pair(q[2:2], q[0:0]); CNOT(q[3], q[1]); }\n");
  const ProgramEntanglement pe = analyze_program_entanglement(sp);
  const auto main_classes = pe.modules.at("main").final_names(*sp.find("main"));
  REQUIRE(main_classes.size() == 2);
  CHECK(std::set<std::string>(main_classes[0].begin(), main_classes[0].end()) == std::set<std::string>{"q2", "q0"});
  CHECK(std::set<std::string>(main_classes[1].begin(), main_classes[1].end()) == std::set<std::string>{"q3", "q1"});
}

// ---- no-cloning ----

TEST_CASE("each aliasing fixture yields exactly its error", "[analysis][nocloning]") {
  struct Case {
    const char* file;
    const char* module;
    const char* qubit;
  };
  for (const Case& c : {Case{"clone_bug.scf", "main", "q[0]"}, Case{"alias_call.scf", "Entangle", "q[0]"},
                        Case{"alias_slices.scf", "Mirror", "q[2]"}}) {
    INFO(c.file);
    for (Strategy s : {Strategy::Pass, Strategy::Dynamic}) {
      const auto ds = check_no_cloning(flatten(fixture_program(c.file), s));
      REQUIRE(ds.size() == 1);
      CHECK(ds[0].severity == Severity::Error);
      CHECK(ds[0].kind == "no-cloning");
      CHECK(ds[0].module == c.module);
      CHECK(ds[0].message.find(c.qubit) != std::string::npos);
    }
  }
}

TEST_CASE("no false positives on clean fixtures and CTQG netlists", "[analysis][nocloning]") {
  const std::set<std::string> aliasing = {"clone_bug.scf", "alias_call.scf", "alias_slices.scf"};
  for (const auto& f : expandable_fixtures()) {
    if (aliasing.count(f)) continue;
    INFO(f);
    CHECK(check_no_cloning(specialized(f)).empty());
  }
  for (const auto& f : ctqg_program_fixtures()) {
    INFO(f);
    CHECK(check_no_cloning(specialized(f)).empty());
  }
  for (const char* f : {"adder8.scf", "three_const.scf", "mul3.scf", "sum_loop.scf"}) {
    INFO(f);
    const Program p = fixture_program(f);
    for (const auto& m : p.modules) {
      if (!m.is_ctqg) continue;
      SpecializedProgram sp;
      FlatModule fm = ctqg_flat_module(m, {}, "main");
      sp.add(std::move(fm));
      CHECK(check_no_cloning(sp).empty());
    }
  }
}

TEST_CASE("distinct aliasing patterns of one module are each checked", "[analysis][nocloning]") {
  const SpecializedProgram sp = from_source(
      "module Two(qbit x[2], qbit y[2]) { CNOT(y[0], x[1]); }\n"
      "module main() { qbit q[4]; Two(q[0:1], q[2:3]); Two(q[0:1], q[1:2]); Two(q[0:1], q[1:2]); }\n");
  CHECK(check_no_cloning(sp).size() == 1);
}

// ---- resources ----

TEST_CASE("resource counts equal full expansion on every fixture", "[analysis][resources]") {
  for (const auto& f : expandable_fixtures()) {
    INFO(f);
    const Ast ast = fixture_ast(f);
    const ReferenceRun ref = reference_run(ast);
    const auto expected = reference_histogram(ref.trace);
    for (Strategy s : {Strategy::Pass, Strategy::Dynamic}) {
      const SpecializedProgram sp = flatten(resolve_semantics(ast), s);
      const ResourceTable t = estimate_resources(sp);
      const ResourceRow* main = t.find(sp.entry);
      REQUIRE(main);
      for (GateKind k : kAllGateKinds) CHECK(main->count(k) == expected[static_cast<int>(k)]);
      CHECK(main->qubits == ref.peak_qubits);
    }
  }
}

TEST_CASE("oracle_loop resource table", "[analysis][resources]") {
  const ResourceTable t = estimate_resources(specialized("oracle_loop.scf"));
  REQUIRE(t.rows.size() == 5);
  const ResourceRow& main = *t.find("main");
  CHECK(main.count(GateKind::X) == 12000);
  CHECK(main.count(GateKind::Rz) == 12000);
  CHECK(main.qubits == 2);
  CHECK(main.total_gates() == 24000);
  std::set<std::int64_t> js;
  for (const auto& r : t.rows) {
    if (r.module == "main") continue;
    CHECK(r.key.module == "Oracle");
    REQUIRE(r.key.ints.size() == 1);
    js.insert(r.key.ints[0]);
    CHECK(r.count(GateKind::X) == 1);
    CHECK(r.count(GateKind::Rz) == 1);
    CHECK(r.qubits == 0);
  }
  CHECK(js == std::set<std::int64_t>{0, 1, 2, 3});
  const std::string csv = t.csv();
  CHECK(csv.rfind("module,int_params,real_params,qubits,X,", 0) == 0);
  CHECK(csv.find("\nmain,,,2,12000,") != std::string::npos);
  CHECK(t.text().find("Oracle") != std::string::npos);
}

TEST_CASE("a billion-iteration repeat is counted by multiplication", "[analysis][resources]") {
  const auto t0 = std::chrono::steady_clock::now();
  const ResourceTable big = estimate_resources(specialized("repeat_big.scf"));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(big.find("main")->count(GateKind::H) == 1'000'000'000);
  CHECK(secs < 1.0);
  const SpecializedProgram small = specialized("repeat_small.scf");
  CHECK(estimate_resources(small).find("main")->count(GateKind::H) == 7);
  CHECK(gate_histogram(expand_trace(small, 100))[static_cast<int>(GateKind::H)] == 7);
}

TEST_CASE("counts beyond 64 bits do not overflow", "[analysis][resources]") {
  std::string src = "module L0(qbit q[1]) { H(q[0]); }\n";
  for (int k = 1; k <= 4; ++k)
    src += "module L" + std::to_string(k) + "(qbit q[1]) { for (int i = 0; i < 1000000; i++) L" +
           std::to_string(k - 1) + "(q); }\n";
  src += "module main() { qbit q[1]; L4(q); }\n";
  const ResourceTable t = estimate_resources(from_source(src));
  BigCount expect = 1;
  for (int k = 0; k < 4; ++k) expect *= 1000000;
  CHECK(t.find("main")->count(GateKind::H) == expect);
}
