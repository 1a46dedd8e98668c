// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <numeric>
#include <string>

#include "qcc/analysis.hpp"
#include "qcc/ctqg.hpp"
#include "qcc/flatten.hpp"
#include "qcc/frontend.hpp"
#include "qcc/qasm.hpp"
#include "qcc/timing.hpp"

namespace {

using namespace qcc;

Program fixture(const std::string& name) {
  return compile_source(read_source_file(std::string(QCC_BENCH_FIXTURE_DIR) + "/" + name));
}

// An oracle loop like oracle_loop with `k` distinct oracle parameters.
Program oracle_program(int k) {
  const std::string src =
      "module Oracle(qbit a[1], qbit b[1], int j) {\n"
      "  double theta = (-1) * pow(2, j) / 100;\n"
      "  Toffoli(b[0], a[0], b[0]);\n"
      "  Rz(b[0], theta);\n"
      "  Toffoli(b[0], a[0], b[0]);\n"
      "}\n"
      "module main() {\n"
      "  qbit a[1], b[1];\n"
      "  for (int i = 0; i < 100; i++)\n"
      "    for (int j = 0; j < " + std::to_string(k) + "; j++)\n"
      "      Oracle(a, b, j);\n"
      "}\n";
  return compile_source(SourceProgram{src});
}

std::vector<Line> lines(Line first, Line n) {
  std::vector<Line> v(n);
  std::iota(v.begin(), v.end(), first);
  return v;
}

void BM_FlattenPass(benchmark::State& state) {
  const Program p = oracle_program(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(flatten_pass_driven(p));
}
BENCHMARK(BM_FlattenPass)->Arg(4)->Arg(16)->Arg(64);

void BM_FlattenDynamic(benchmark::State& state) {
  const Program p = oracle_program(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(flatten_dynamic(p));
}
BENCHMARK(BM_FlattenDynamic)->Arg(4)->Arg(16)->Arg(64);

void BM_SynthAdder(benchmark::State& state) {
  const Line n = static_cast<Line>(state.range(0));
  const auto a = lines(0, n), b = lines(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(synth_adder(a, b));
}
BENCHMARK(BM_SynthAdder)->RangeMultiplier(4)->Range(8, 512);

void BM_SynthMultiplier(benchmark::State& state) {
  const Line n = static_cast<Line>(state.range(0));
  for (auto _ : state) {
    AncillaManager mgr(4 * n);
    benchmark::DoNotOptimize(synth_multiplier(lines(0, 2 * n), lines(2 * n, n), lines(3 * n, n), mgr));
  }
}
BENCHMARK(BM_SynthMultiplier)->RangeMultiplier(2)->Range(4, 32);

void BM_ResourcesScale(benchmark::State& state) {
  const SpecializedProgram sp = flatten_pass_driven(fixture("scale.scf"));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_resources(sp));
}
BENCHMARK(BM_ResourcesScale);

void BM_ComposeCriticalPath(benchmark::State& state) {
  const SpecializedProgram sp = flatten_pass_driven(fixture("scale.scf"));
  const auto mode = static_cast<SchedulingMode>(state.range(0));
  state.SetLabel(scheduling_mode_name(mode));
  for (auto _ : state) benchmark::DoNotOptimize(compose_critical_path(sp, mode));
}
BENCHMARK(BM_ComposeCriticalPath)->DenseRange(0, 2);

void BM_EmitQasmHL(benchmark::State& state) {
  const SpecializedProgram sp = flatten_pass_driven(fixture("scale.scf"));
  for (auto _ : state) benchmark::DoNotOptimize(emit_qasm(sp, QasmFormat::HierLoops));
}
BENCHMARK(BM_EmitQasmHL);

}  // namespace

BENCHMARK_MAIN();
