// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "qcc/error.hpp"
#include "qcc/ir.hpp"

using namespace qcc;
using qcc::testing::fixture_program;

namespace {

const LoopInst& first_loop(const ModuleDef& m) {
  for (const auto& i : m.body)
    if (auto* l = std::get_if<LoopInst>(&i.v)) return *l;
  throw std::runtime_error("no loop in " + m.name);
}

}  // namespace

TEST_CASE("call graph of a chain lists callees first", "[ir]") {
  const Program p = compile_source(SourceProgram{
      "module B(qbit x[1]) { H(x[0]); }\n"
      "module A(qbit x[1]) { B(x); }\n"
      "module main() { qbit q[1]; A(q); }\n"});
  const CallGraph g = build_call_graph(p);
  CHECK(g.postorder == std::vector<std::string>{"B", "A", "main"});
  CHECK(g.preorder == std::vector<std::string>{"main", "A", "B"});
  REQUIRE(g.edges.size() == 2);
}

TEST_CASE("the forall_cnot loop is a forall over q[0..999]", "[ir]") {
  Program p = fixture_program("forall_cnot.scf");
  ModuleDef& foo = *p.find("foo");
  classify_loops(foo);
  const LoopInst& l = first_loop(foo);
  CHECK(l.cls.kind == LoopKind::Forall);
  CHECK(l.cls.trip_count == 1000);
  CHECK(l.cls.lo == 0);
  CHECK(l.cls.hi == 999);
}

TEST_CASE("oracle_loop loops are classical until the inner call is specialized", "[ir]") {
  Program p = fixture_program("oracle_loop.scf");
  ModuleDef& main = *p.find("main");
  classify_loops(main);
  const LoopInst& outer = first_loop(main);
  CHECK(outer.cls.kind == LoopKind::Classical);
  CHECK(trip_count(outer, Frame(main.vars.size())) == 3000);
}

TEST_CASE("a loop of identical gates is a repeat", "[ir]") {
  Program p = fixture_program("repeat_small.scf");
  ModuleDef& main = *p.find("main");
  classify_loops(main);
  const LoopInst& l = first_loop(main);
  CHECK(l.cls.kind == LoopKind::Repeat);
  CHECK(l.cls.trip_count == 7);
}

TEST_CASE("trip counts follow the loop condition and step", "[ir]") {
  auto count = [](const std::string& header) {
    Program p = compile_source(SourceProgram{"module main() { qbit q[1]; int i; " + header + " H(q[0]); }"});
    const ModuleDef& m = *p.find("main");
    return trip_count(first_loop(m), Frame(m.vars.size()));
  };
  CHECK(count("for (i = 0; i < 10; i++)") == 10);
  CHECK(count("for (i = 0; i <= 10; i += 3)") == 4);
  CHECK(count("for (i = 10; i > 0; i--)") == 10);
  CHECK(count("for (i = 10; i >= 0; i -= 4)") == 3);
  CHECK(count("for (i = 5; i < 5; i++)") == 0);
  CHECK(count("for (i = 0; i != 6; i += 2)") == 3);
  CHECK_THROWS_AS(count("for (i = 0; i < 10; i -= 1)"), Error);
}

TEST_CASE("dump_ir mentions every module and loop kind", "[ir]") {
  Program p = fixture_program("forall_cnot.scf");
  for (auto& m : p.modules) classify_loops(m);
  const std::string text = dump_ir(p);
  CHECK(text.find("foo") != std::string::npos);
  CHECK(text.find("main") != std::string::npos);
  CHECK(text.find(loop_kind_name(LoopKind::Forall)) != std::string::npos);
}
