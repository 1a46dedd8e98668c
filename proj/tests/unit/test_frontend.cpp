// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "qcc/flatten.hpp"
#include "qcc/error.hpp"
#include "qcc/frontend.hpp"
#include "qcc/ir.hpp"

using namespace qcc;
using qcc::testing::fixture_ast;

namespace {

ErrorKind kind_of(const std::string& text) {
  try {
    compile_source(SourceProgram{text, "t.scf"});
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised for:\n" << text);
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("forall_cnot parses into foo with a loop and main with a call", "[frontend]") {
  const Ast ast = fixture_ast("forall_cnot.scf");
  REQUIRE(ast.modules.size() == 2);
  const AstModule& foo = ast.modules[0];
  CHECK(foo.name == "foo");
  REQUIRE(foo.params.size() == 1);
  CHECK(foo.params[0].kind == ParamKind::QubitArray);
  REQUIRE(foo.params[0].size->is_literal());
  CHECK(foo.params[0].size->ival == 1000);

  REQUIRE(foo.body.size() == 2);
  const AstStmt& loop = foo.body[0];
  CHECK(loop.kind == AstStmt::Kind::For);
  CHECK(loop.var == "i");
  CHECK(loop.start->ival == 0);
  CHECK(loop.cmp == CmpOp::Lt);
  CHECK(loop.end->ival == 1000);
  CHECK(loop.step->ival == 1);
  REQUIRE(loop.body.size() == 1);
  CHECK(loop.body[0].kind == AstStmt::Kind::Gate);
  CHECK(loop.body[0].gate == GateKind::H);

  const AstStmt& cnot = foo.body[1];
  CHECK(cnot.kind == AstStmt::Kind::Gate);
  CHECK(cnot.gate == GateKind::CNOT);
  REQUIRE(cnot.operands.size() == 2);
  CHECK(to_source(*cnot.operands[0]) == "q[(1000 - 1)]");

  CHECK(ast.modules[1].name == "main");
  CHECK(ast.modules[1].body.back().kind == AstStmt::Kind::Call);
}

TEST_CASE("printing and reparsing gives an equal Ast", "[frontend]") {
  for (const auto& f : qcc::testing::expandable_fixtures()) {
    INFO(f);
    const Ast a = fixture_ast(f);
    const Ast b = parse_scafflite(SourceProgram{print_ast(a), "printed"});
    CHECK(ast_equal(a, b));
  }
  for (const char* f : {"sum_loop.scf", "adder8.scf", "mul3.scf", "ctqg_call.scf"}) {
    INFO(f);
    const Ast a = fixture_ast(f);
    CHECK(ast_equal(a, parse_scafflite(SourceProgram{print_ast(a), "printed"})));
  }
}

TEST_CASE("defines are substituted as literals", "[frontend]") {
  const Ast ast = parse_scafflite(SourceProgram{"#define K 7\nmodule main() { qbit q[K]; H(q[K - 1]); }"});
  REQUIRE(ast.defines.count("K"));
  CHECK(ast.defines.at("K").i == 7);
  const Program p = resolve_semantics(ast);
  CHECK(p.find("main")->arrays[0].size == 7);
}

TEST_CASE("semantic errors carry their kind", "[frontend]") {
  CHECK(kind_of("module main() { qbit q[1]; Frob(q); }") == ErrorKind::UndefinedModule);
  CHECK(kind_of("module main() { qbit q[1]; Frob(q[0]); }") == ErrorKind::UnknownGate);
  CHECK(kind_of("module main() { qbit q[2]; CZ(q[0], q[1]); }") == ErrorKind::UnknownGate);
  CHECK(kind_of("module main() { qbit q[2]; CNOT(q[0]); }") == ErrorKind::ArityMismatch);
  CHECK(kind_of("module A(qbit x[1]) { B(x); }\nmodule B(qbit y[1]) { A(y); }\n"
                "module main() { qbit q[1]; A(q); }") == ErrorKind::Recursion);
  CHECK(kind_of("module main() { qbit q[1]; H(r[0]); }") == ErrorKind::UndefinedName);
  CHECK(kind_of("module main() { qbit q[1] H(q[0]); }") == ErrorKind::Syntax);
  CHECK(kind_of("module A(qbit x[1], int k) { H(x[0]); }\nmodule main() { qbit q[1]; A(q); }") ==
        ErrorKind::ArityMismatch);
}

TEST_CASE("syntax errors report a line and column", "[frontend]") {
  try {
    parse_scafflite(SourceProgram{"module main() {\n  qbit q[1];\n  H(q[0]) \n}\n", "bad.scf"});
    FAIL("expected a syntax error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Syntax);
    CHECK(e.pos().line == 4);
    CHECK(std::string(e.what()).rfind("bad.scf:4:", 0) == 0);
  }
}

TEST_CASE("missing files raise Io errors", "[frontend]") {
  CHECK_THROWS_MATCHES(read_source_file("/nonexistent/x.scf"), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.kind() == ErrorKind::Io; }));
}

TEST_CASE("CTQG registers are marked as outputs by a leading :=", "[frontend]") {
  const Program p = qcc::testing::fixture_program("sum_loop.scf");
  const ModuleDef* m = p.find("main_ctqg");
  REQUIRE(m);
  CHECK(m->is_ctqg);
  REQUIRE(m->registers.size() == 3);
  CHECK(m->registers[0].name == "sum");
  CHECK(m->registers[0].output);
  CHECK(m->registers[1].output);
  CHECK_FALSE(m->registers[2].output);
  CHECK(flatten_pass_driven(p).entry == "main_ctqg");
}
