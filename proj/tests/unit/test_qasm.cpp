// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>
#include <complex>
#include <sstream>

#include "fixtures.hpp"
#include "qcc/error.hpp"
#include "qcc/flatten.hpp"
#include "qcc/qasm.hpp"
#include "reference.hpp"

using namespace qcc;
using namespace qcc::testing;

namespace {

using Matrix = std::vector<std::vector<std::complex<double>>>;

std::vector<std::string> body_lines(const std::string& text, const std::string& module) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> out;
  bool inside = false;
  while (std::getline(in, line)) {
    if (line.rfind("module " + module + " ", 0) == 0) {
      inside = true;
      continue;
    }
    if (!inside || line == "{") continue;
    if (line == "}") break;
    out.push_back(line);
  }
  return out;
}

// 8x8 unitary of a gate list on three qubits, built column by column.
// Qubit q is bit q of the basis index.
Matrix unitary3(const std::vector<NetworkGate>& gates, const std::array<int, 3>& wires) {
  const double r = 1 / std::sqrt(2.0);
  const std::complex<double> w(r, r);
  Matrix u(8, std::vector<std::complex<double>>(8));
  for (int col = 0; col < 8; ++col) {
    std::vector<std::complex<double>> v(8);
    v[col] = 1;
    for (const auto& g : gates) {
      const int t = wires[g.operands[0]];
      std::vector<std::complex<double>> nv(8);
      for (int k = 0; k < 8; ++k) {
        const int bit = (k >> t) & 1;
        switch (g.kind) {
          case GateKind::H: {
            const int k0 = k & ~(1 << t), k1 = k | (1 << t);
            nv[k] += bit ? r * (v[k0] - v[k1]) : r * (v[k0] + v[k1]);
            break;
          }
          case GateKind::T: nv[k] = bit ? w * v[k] : v[k]; break;
          case GateKind::Tdag: nv[k] = bit ? std::conj(w) * v[k] : v[k]; break;
          case GateKind::CNOT: {
            const int c = wires[g.operands[1]];
            nv[((k >> c) & 1) ? (k ^ (1 << t)) : k] = v[k];
            break;
          }
          default: FAIL("unexpected gate in the Toffoli network");
        }
      }
      v = nv;
    }
    for (int row = 0; row < 8; ++row) u[row][col] = v[row];
  }
  return u;
}

double distance_up_to_phase(const Matrix& a, const Matrix& b) {
  std::complex<double> phase = 0;
  for (int i = 0; i < 8 && phase == std::complex<double>(0); ++i)
    for (int j = 0; j < 8; ++j)
      if (std::abs(b[i][j]) > 0.5) {
        phase = a[i][j] / b[i][j];
        break;
      }
  double worst = 0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) worst = std::max(worst, std::abs(a[i][j] - phase * b[i][j]));
  return worst;
}

}  // namespace

TEST_CASE("forall_cnot QASM-HL body is one forall line and one CNOT", "[qasm]") {
  const SpecializedProgram sp = flatten_pass_driven(fixture_program("forall_cnot.scf"));
  const QasmDocument doc = emit_qasm(sp, QasmFormat::HierLoops);
  CHECK(body_lines(doc.text, "foo") == std::vector<std::string>{"  H ( q[0:999] );", "  CNOT ( q[999] , q[0] );"});
  const QasmDocument flat = emit_qasm(sp, QasmFormat::Flat);
  CHECK(flat.text.rfind("qbit b[1000];\nH ( b[0] );\nH ( b[1] );\n", 0) == 0);
  CHECK(flat.text.find("CNOT ( b[999] , b[0] );") != std::string::npos);
  CHECK(flat.stats.gate_lines[static_cast<int>(GateKind::H)] == 1000);
  const QasmDocument hier = emit_qasm(sp, QasmFormat::Hier);
  CHECK(body_lines(hier.text, "foo").size() == 1001);
}

TEST_CASE("oracle_loop QASM-HL keeps the repeat loop", "[qasm]") {
  const SpecializedProgram sp = flatten_dynamic(fixture_program("oracle_loop.scf"));
  const std::string text = emit_qasm(sp, QasmFormat::HierLoops).text;
  CHECK(text.find("repeat ( 3000 ) {") != std::string::npos);
  CHECK(text.find("Oracle_3 ( a , b );") != std::string::npos);
}

TEST_CASE("code size shrinks from QASM-F to QASM-H to QASM-HL and gates are preserved", "[qasm]") {
  for (const auto& f : expandable_fixtures()) {
    INFO(f);
    const SpecializedProgram sp = flatten_pass_driven(fixture_program(f));
    const QasmDocument hl = emit_qasm(sp, QasmFormat::HierLoops);
    const QasmDocument h = emit_qasm(sp, QasmFormat::Hier);
    const QasmDocument fl = emit_qasm(sp, QasmFormat::Flat);
    CHECK(hl.stats.code_size() <= h.stats.code_size());
    CHECK(h.stats.code_size() <= fl.stats.code_size());

    const Trace expected = expand_trace(sp, 10'000'000);
    const auto hist = gate_histogram(expected);
    for (const QasmDocument* d : {&hl, &h, &fl}) {
      INFO(qasm_format_name(d->format));
      const SpecializedProgram back = parse_qasm_hl(d->text, f);
      const Trace t = expand_trace(back, 10'000'000);
      CHECK(gate_histogram(t) == hist);
      CHECK(reference_critical_path(t) == reference_critical_path(expected));
      if (d->format != QasmFormat::Flat) {
        std::string why;
        CHECK(traces_equal(t, expected, &why));
        INFO(why);
      }
    }
  }
}

TEST_CASE("QASM-HL reparses to the same text", "[qasm]") {
  for (const auto& f : expandable_fixtures()) {
    INFO(f);
    const SpecializedProgram sp = flatten_dynamic(fixture_program(f));
    const std::string text = emit_qasm(sp, QasmFormat::HierLoops).text;
    CHECK(emit_qasm(parse_qasm_hl(text, f), QasmFormat::HierLoops).text == text);
  }
}

TEST_CASE("flat and hierarchical output refuse to exceed the budget", "[qasm]") {
  const SpecializedProgram sp = flatten_pass_driven(fixture_program("scale.scf"));
  CHECK(emit_qasm(sp, QasmFormat::HierLoops).stats.lines < 2000);
  // Two billion gates flat; a million call lines hierarchical.
  try {
    emit_qasm(sp, QasmFormat::Flat);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetExceeded);
  }
  EmitOptions tight;
  tight.budget = 100'000;
  try {
    emit_qasm(sp, QasmFormat::Hier, tight);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetExceeded);
  }
  EmitOptions small;
  small.budget = 10;
  CHECK_THROWS_AS(emit_qasm(flatten_pass_driven(fixture_program("forall_cnot.scf")), QasmFormat::Hier, small), Error);
}

TEST_CASE("format names round trip", "[qasm]") {
  for (QasmFormat f : {QasmFormat::Flat, QasmFormat::Hier, QasmFormat::HierLoops})
    CHECK(parse_qasm_format(qasm_format_name(f)) == f);
  CHECK_FALSE(parse_qasm_format("qasm-x"));
}

TEST_CASE("the Toffoli network equals Toffoli up to global phase", "[qasm][toffoli]") {
  const auto& net = toffoli_network();
  CHECK(net.size() == 15);
  // Toffoli with target wire 0 and controls 1, 2: flips bit 0 when bits 1 and 2 are set.
  Matrix toff(8, std::vector<std::complex<double>>(8));
  for (int k = 0; k < 8; ++k) toff[((k & 6) == 6) ? (k ^ 1) : k][k] = 1;
  CHECK(distance_up_to_phase(unitary3(net, {0, 1, 2}), toff) <= 1e-10);

  // The library's state-vector checker agrees.
  std::vector<SimGate> lowered, direct{{GateKind::Toffoli, {0, 1, 2}, 0}};
  for (const auto& g : net) {
    SimGate s{g.kind, {g.operands[0]}, 0};
    if (g.operands[1] >= 0) s.qubits.push_back(g.operands[1]);
    lowered.push_back(s);
  }
  CHECK(phase_insensitive_distance(unitary_of(lowered, 3), unitary_of(direct, 3)) <= 1e-10);
}

TEST_CASE("lower_toffoli replaces every Toffoli, including forall slices", "[qasm][toffoli]") {
  const Program p = compile_source(SourceProgram{
      "module main() { qbit a[4], b[4], c[4];\n"
      "  for (int i = 0; i < 4; i++) Toffoli(c[i], a[i], b[i]);\n"
      "  Toffoli(a[0], b[1], c[2]); }\n"});
  const SpecializedProgram sp = flatten_pass_driven(p);
  const SpecializedProgram low = lower_toffoli(sp);
  const auto h = gate_histogram(expand_trace(low, 1000));
  CHECK(h[static_cast<int>(GateKind::Toffoli)] == 0);
  std::uint64_t total = 0;
  for (auto x : h) total += x;
  CHECK(total == 5 * 15);
}

TEST_CASE("the QASM reader reports syntax errors with a line", "[qasm]") {
  try {
    parse_qasm_hl("qbit q[2];\nH ( q[0] );\nCNOT ( q[1] q[0] );\n", "bad.qasm");
    FAIL("expected a syntax error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Syntax);
    CHECK(e.pos().line == 3);
  }
}

TEST_CASE("state vector basics", "[qasm][statevector]") {
  StateVector s = simulate_statevector({{GateKind::H, {0}, 0}, {GateKind::CNOT, {1, 0}, 0}}, 2);
  const double r = 1 / std::sqrt(2.0);
  CHECK(std::abs(s.amplitudes()[0] - r) < 1e-12);
  CHECK(std::abs(s.amplitudes()[3] - r) < 1e-12);
  CHECK(std::abs(s.norm() - 1) < 1e-12);
  CHECK_THROWS_AS(StateVector(kMaxStateQubits + 1), Error);
}
