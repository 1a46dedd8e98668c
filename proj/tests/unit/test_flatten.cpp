// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "fixtures.hpp"
#include "qcc/error.hpp"
#include "qcc/flatten.hpp"
#include "reference.hpp"

using namespace qcc;
using namespace qcc::testing;

namespace {

constexpr std::uint64_t kBudget = 5'000'000;

ErrorKind flatten_error(const Program& p, Strategy s, const FlattenOptions& opt) {
  try {
    flatten(p, s, opt);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("both strategies reproduce the reference trace on every fixture", "[flatten]") {
  for (const auto& f : expandable_fixtures()) {
    const Ast ast = fixture_ast(f);
    const Trace expected = reference_run(ast, kBudget).trace;
    const Program p = resolve_semantics(ast);
    for (Strategy s : {Strategy::Pass, Strategy::Dynamic}) {
      INFO(f << " " << strategy_name(s));
      const SpecializedProgram sp = flatten(p, s);
      std::string why;
      CHECK(traces_equal(expand_trace(sp, kBudget), expected, &why));
      INFO(why);
    }
  }
}

TEST_CASE("strategies agree on programs that call CTQG modules", "[flatten]") {
  for (const auto& f : ctqg_program_fixtures()) {
    INFO(f);
    const Program p = fixture_program(f);
    const Trace a = expand_trace(flatten_pass_driven(p), kBudget);
    const Trace b = expand_trace(flatten_dynamic(p), kBudget);
    std::string why;
    CHECK(traces_equal(a, b, &why));
    INFO(why);
    CHECK_FALSE(a.empty());
  }
}

TEST_CASE("oracle_loop specializes Oracle per j and keeps the outer repeat", "[flatten]") {
  const Program p = fixture_program("oracle_loop.scf");
  for (Strategy s : {Strategy::Pass, Strategy::Dynamic}) {
    INFO(strategy_name(s));
    FlattenStats stats;
    const SpecializedProgram sp = flatten(p, s, {}, &stats);
    REQUIRE(sp.modules.size() == 5);
    for (int j = 0; j <= 3; ++j) {
      const FlatModule* m = sp.find("Oracle_" + std::to_string(j));
      REQUIRE(m);
      CHECK(m->key.module == "Oracle");
      CHECK(m->key.ints == std::vector<std::int64_t>{j});
      REQUIRE(m->body.size() == 2);
      const auto& rz = std::get<FGate>(m->body[1].v);
      CHECK(rz.kind == GateKind::Rz);
      CHECK(rz.angle == (-1) * std::pow(2.0, j) / 100);
    }
    const FlatModule& main = *sp.find("main");
    REQUIRE(main.body.size() == 1);
    const auto* rep = std::get_if<FRepeat>(&main.body[0].v);
    REQUIRE(rep);
    CHECK(rep->count == 3000);
    REQUIRE(rep->body.size() == 4);
    for (int j = 0; j <= 3; ++j) CHECK(std::get<FCall>(rep->body[j].v).callee == "Oracle_" + std::to_string(j));
  }
}

TEST_CASE("dynamic flattening without memoization emits a module per call", "[flatten]") {
  const Program p = fixture_program("oracle_loop.scf");
  FlattenOptions opt;
  opt.memoize = false;
  FlattenStats with, without;
  const SpecializedProgram a = flatten_dynamic(p, {}, &with);
  const SpecializedProgram b = flatten_dynamic(p, opt, &without);
  CHECK(with.modules == 5);
  CHECK(without.modules == 12001);
  CHECK(traces_equal(expand_trace(a, kBudget), expand_trace(b, kBudget)));
}

TEST_CASE("clone names avoid existing module names", "[flatten]") {
  const Program p = compile_source(SourceProgram{
      "module Oracle_0(qbit a[1]) { Z(a[0]); }\n"
      "module Oracle(qbit a[1], int j) { if (j == 0) X(a[0]); else Y(a[0]); }\n"
      "module main() { qbit q[1]; Oracle_0(q); Oracle(q, 0); Oracle(q, 1); }\n"});
  for (Strategy s : {Strategy::Pass, Strategy::Dynamic}) {
    INFO(strategy_name(s));
    const SpecializedProgram sp = flatten(p, s);
    REQUIRE(sp.find("Oracle_0"));
    CHECK(std::get<FGate>(sp.find("Oracle_0")->body[0].v).kind == GateKind::Z);
    REQUIRE(sp.find("Oracle_0_"));
    CHECK(std::get<FGate>(sp.find("Oracle_0_")->body[0].v).kind == GateKind::X);
    CHECK(sp.find("Oracle_1"));
  }
}

TEST_CASE("limits stop runaway flattening", "[flatten]") {
  const Program p = fixture_program("classical_mix.scf");
  FlattenOptions tight;
  tight.blowup_limit = 8;
  CHECK(flatten_error(p, Strategy::Pass, tight) == ErrorKind::BlowupLimit);
  FlattenOptions few_steps;
  few_steps.step_limit = 20;
  CHECK(flatten_error(p, Strategy::Dynamic, few_steps) == ErrorKind::StepLimit);
}

TEST_CASE("call argument sizes are checked", "[flatten]") {
  // Constant sizes are checked when the program is resolved; the rest when flattening.
  try {
    compile_source(SourceProgram{"module A(qbit x[2]) { CNOT(x[1], x[0]); }\n"
                                 "module main() { qbit q[3]; A(q[0:2]); }\n"});
    FAIL("expected a type mismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TypeMismatch);
  }
  const Program p = compile_source(SourceProgram{
      "module A(qbit x[2]) { CNOT(x[1], x[0]); }\n"
      "module B(qbit y[4], int k) { A(y[0:k]); }\n"
      "module main() { qbit q[4]; B(q, 2); }\n"});
  CHECK(flatten_error(p, Strategy::Pass, {}) == ErrorKind::Width);
  CHECK(flatten_error(p, Strategy::Dynamic, {}) == ErrorKind::Width);
}

TEST_CASE("out-of-range qubit indices are rejected", "[flatten]") {
  const Program p = compile_source(SourceProgram{
      "module main() { qbit q[3]; for (int i = 0; i <= 3; i++) H(q[i]); }\n"});
  CHECK_THROWS_AS(flatten_pass_driven(p), Error);
  CHECK_THROWS_AS(flatten_dynamic(p), Error);
}

TEST_CASE("a loop body may not assign its bound or step", "[flatten]") {
  for (const char* loop : {"for (int i = 0; i < n; i += s) { H(q[i]); n = 6; }",
                           "for (int i = 0; i < n; i += s) { H(q[i]); s = 2; }",
                           "for (int i = 0; i < n; i++) { H(q[i]); i = 2; }"}) {
    INFO(loop);
    try {
      compile_source(SourceProgram{std::string("module main() { qbit q[8]; int n = 3; int s = 1;\n  ") + loop + " }\n"});
      FAIL("expected a semantic error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Semantic);
    }
  }
}

TEST_CASE("integer division wraps at the most negative value", "[flatten]") {
  const SourceProgram src{
      "module main() { qbit q[2]; int m = -9223372036854775807 - 1;\n"
      "  if (m / -1 < 0) X(q[0]); else H(q[0]);\n"
      "  if (m % -1 == 0) X(q[1]); }\n"};
  const Program p = compile_source(src);
  const Trace expected = reference_run(parse_scafflite(src)).trace;
  REQUIRE(expected.size() == 2);
  CHECK(expected[0].kind == GateKind::X);
  for (Strategy s : {Strategy::Pass, Strategy::Dynamic}) {
    INFO(strategy_name(s));
    CHECK(traces_equal(expand_trace(flatten(p, s), kBudget), expected));
  }
}
