// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <unistd.h>

#include <CLI11.hpp>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "qcc/analysis.hpp"
#include "qcc/ctqg.hpp"
#include "qcc/error.hpp"
#include "qcc/frontend.hpp"
#include "qcc/ir.hpp"

namespace qcc::cli {
namespace {

constexpr std::uint64_t kInfinity = std::numeric_limits<std::uint64_t>::max();

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::pair<std::string, std::string> split_assignment(const std::string& s, const char* flag) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == s.size())
    throw UsageError(std::string(flag) + " expects name=value, got '" + s + "'");
  return {s.substr(0, eq), s.substr(eq + 1)};
}

template <typename T>
T parse_number(const std::string& s, const std::string& what) {
  T v{};
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || p != end) throw UsageError("invalid " + what + " '" + s + "'");
  return v;
}

std::uint64_t parse_threshold(const std::string& s) {
  if (s == "inf" || s == "infinity") return kInfinity;
  return parse_number<std::uint64_t>(s, "threshold");
}

bool is_qasm_path(const std::string& path) {
  const auto ext = std::filesystem::path(path).extension().string();
  return ext == ".qasm" || ext == ".qasmh" || ext == ".qasmf" || ext == ".qasmhl";
}

FlattenOptions flatten_options(const RunConfig& cfg) {
  FlattenOptions o;
  o.blowup_limit = cfg.blowup_limit;
  o.step_limit = cfg.step_limit;
  o.memoize = cfg.memoize;
  return o;
}

SpecializedProgram load_specialized(const RunConfig& cfg, std::ostream& err) {
  const SourceProgram src = read_source_file(cfg.input);
  if (is_qasm_path(cfg.input)) {
    SpecializedProgram sp = parse_qasm_hl(src.text, src.origin);
    validate(sp);
    return sp;
  }
  const Program p = compile_source(src);
  FlattenStats stats;
  SpecializedProgram sp = flatten(p, cfg.strategy, flatten_options(cfg), &stats);
  if (cfg.verbosity > 0) {
    err << "flatten (" << strategy_name(cfg.strategy) << "): modules=" << stats.modules
        << " memo_hits=" << stats.memo_hits << " unrolled=" << stats.unrolled
        << " rounds=" << stats.fixpoint_rounds << " steps=" << stats.steps << '\n';
  }
  return sp;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty()) out << text;
  else write_atomically(cfg.output, text);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char c : s) {
    if (c == '"') r += '"';
    r += c;
  }
  return r + '"';
}

// ---- compile ----

int cmd_compile(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.dump_ir) {
    if (is_qasm_path(cfg.input)) throw UsageError("--dump-ir needs ScaffLite input");
    emit(cfg, dump_ir(compile_source(read_source_file(cfg.input))), out);
    return kExitOk;
  }
  SpecializedProgram sp = load_specialized(cfg, err);
  if (cfg.lower_toffoli) sp = lower_toffoli(sp);
  EmitOptions eo;
  eo.budget = cfg.budget_instructions;
  const QasmDocument doc = emit_qasm(sp, cfg.format, eo);
  if (cfg.verbosity > 0) err << qasm_format_name(cfg.format) << ": " << doc.stats.lines << " lines\n";
  emit(cfg, doc.text, out);
  return kExitOk;
}

// ---- analyze ----

std::string diagnostics_csv(const std::vector<Diagnostic>& ds) {
  std::string r = "module,inst,severity,kind,message\n";
  for (const auto& d : ds) {
    r += csv_field(d.module) + ',' + std::to_string(d.inst) + ',' + severity_name(d.severity) + ',' +
         csv_field(d.kind) + ',' + csv_field(d.message) + '\n';
  }
  return r;
}

std::string join_classes(const std::vector<std::vector<std::string>>& classes) {
  if (classes.empty()) return "none";
  std::string r;
  for (const auto& c : classes) {
    if (!r.empty()) r += ", ";
    r += '(';
    for (std::size_t i = 0; i < c.size(); ++i) r += (i ? ", " : "") + c[i];
    r += ')';
  }
  return r;
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const SpecializedProgram sp = load_specialized(cfg, err);
  const bool all = !cfg.resources && !cfg.nocloning && !cfg.entangle;
  std::ostringstream rep;
  bool errors = false;
  auto count_errors = [&](const std::vector<Diagnostic>& ds) {
    for (const auto& d : ds) errors = errors || d.severity == Severity::Error;
  };

  if (all || cfg.resources) {
    const ResourceTable t = estimate_resources(sp);
    rep << (cfg.csv ? t.csv() : t.text());
  }
  if (all || cfg.nocloning) {
    const auto ds = check_no_cloning(sp);
    count_errors(ds);
    if (cfg.csv) {
      rep << diagnostics_csv(ds);
    } else {
      rep << "no-cloning: " << ds.size() << " error(s)\n";
      for (const auto& d : ds) rep << format_diagnostic(d) << '\n';
    }
  }
  if (all || cfg.entangle) {
    const ProgramEntanglement pe = analyze_program_entanglement(sp);
    count_errors(pe.diagnostics);
    const FlatModule* entry = sp.find(sp.entry);
    std::vector<std::vector<std::string>> final_classes;
    if (entry) {
      auto it = pe.modules.find(entry->name);
      if (it != pe.modules.end()) final_classes = it->second.final_names(*entry);
    }
    if (cfg.csv) {
      rep << diagnostics_csv(pe.diagnostics);
      rep << "module,class\n";
      for (const auto& c : final_classes) {
        std::string joined;
        for (const auto& q : c) joined += (joined.empty() ? "" : " ") + q;
        rep << csv_field(sp.entry) << ',' << csv_field(joined) << '\n';
      }
    } else {
      rep << pe.annotated;
      for (const auto& d : pe.diagnostics) rep << format_diagnostic(d) << '\n';
      rep << "final entanglements: " << join_classes(final_classes) << '\n';
    }
  }
  emit(cfg, rep.str(), out);
  return errors ? kExitDiagnostics : kExitOk;
}

// ---- timing ----

int cmd_timing(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const SpecializedProgram sp = load_specialized(cfg, err);
  const SpecializedProgram remod =
      cfg.threshold ? remodularize(sp, *cfg.threshold, cfg.budget_instructions) : SpecializedProgram{};
  const SpecializedProgram& target = cfg.threshold ? remod : sp;
  const CpEstimate est = compose_critical_path(target, cfg.mode);

  std::optional<std::uint64_t> oracle;
  bool oracle_skipped = false;
  if (cfg.oracle) {
    try {
      oracle = oracle_critical_path(sp, cfg.budget_instructions);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
      oracle_skipped = true;
    }
  }
  std::optional<ScheduleCheck> check;
  if (cfg.validate) check = validate_schedule(target, est, cfg.budget_instructions);

  const std::string thr = !cfg.threshold           ? std::string("none")
                          : *cfg.threshold == kInfinity ? std::string("inf")
                                                        : std::to_string(*cfg.threshold);
  std::ostringstream rep;
  if (cfg.csv) {
    rep << "mode,threshold,critical_path,oracle,modules_scheduled,valid\n";
    rep << scheduling_mode_name(cfg.mode) << ',' << thr << ',' << est.length << ','
        << (oracle ? std::to_string(*oracle) : std::string()) << ',' << est.modules_scheduled << ','
        << (check ? (check->valid ? "true" : "false") : "") << '\n';
  } else {
    rep << "mode: " << scheduling_mode_name(cfg.mode) << '\n';
    rep << "threshold: " << thr << '\n';
    rep << "critical path: " << est.length << '\n';
    if (oracle) rep << "oracle: " << *oracle << '\n';
    if (oracle_skipped) rep << "oracle: skipped (budget exceeded)\n";
    rep << "modules scheduled: " << est.modules_scheduled << '\n';
    if (check) {
      rep << "schedule: " << (check->valid ? "valid" : "invalid") << '\n';
      for (const auto& v : check->violations) rep << "  " << v << '\n';
    }
  }
  if (cfg.verbosity > 0) err << "timing: " << est.seconds << " s\n";
  emit(cfg, rep.str(), out);
  return check && !check->valid ? kExitDiagnostics : kExitOk;
}

// ---- ctqg ----

const ModuleDef& select_ctqg_module(const Program& p, const std::string& name) {
  if (!name.empty()) {
    const ModuleDef* m = p.find(name);
    if (!m) throw UsageError("no module named '" + name + "'");
    if (!m->is_ctqg) throw UsageError("module '" + name + "' is not a CTQG module");
    return *m;
  }
  const ModuleDef* entry = p.find(p.entry);
  if (entry && entry->is_ctqg) return *entry;
  const ModuleDef* last = nullptr;
  for (const auto& m : p.modules)
    if (m.is_ctqg) last = &m;
  if (!last) throw UsageError("no CTQG module in '" + p.origin + "'");
  return *last;
}

Frame ctqg_frame(const ModuleDef& m, const std::map<std::string, std::string>& params) {
  Frame f(m.vars.size());
  for (int s : m.classical_params) {
    const VarInfo& v = m.vars[s];
    auto it = params.find(v.name);
    if (it == params.end()) throw UsageError("missing --param " + v.name + "=VALUE");
    f[s] = v.is_real ? Value::of_real(std::stod(it->second))
                     : Value::of_int(parse_number<std::int64_t>(it->second, "value for " + v.name));
  }
  for (const auto& [name, value] : params) {
    bool known = false;
    for (int s : m.classical_params) known = known || m.vars[s].name == name;
    if (!known) throw UsageError("module '" + m.name + "' has no classical parameter '" + name + "'");
  }
  return f;
}

int cmd_ctqg(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Program p = compile_source(read_source_file(cfg.input));
  const ModuleDef& m = select_ctqg_module(p, cfg.module);
  const Frame frame = ctqg_frame(m, cfg.params);
  if (cfg.command == Command::CtqgSynth) {
    std::ostringstream net;
    write_ctqg_netlist(m, frame, net);
    if (cfg.verbosity > 0) {
      const RevCircuit c = compile_ctqg_circuit(m, frame);
      err << m.name << ": not=" << c.counts.nots << " cnot=" << c.counts.cnots
          << " toffoli=" << c.counts.toffolis << " ancillas=" << c.ancilla_count << '\n';
    }
    emit(cfg, net.str(), out);
    return kExitOk;
  }
  std::map<std::string, std::uint64_t> result;
  try {
    result = simulate_ctqg(m, cfg.inputs, frame);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::UndefinedName || e.kind() == ErrorKind::Width) throw UsageError(e.message());
    throw;
  }
  std::ostringstream rep;
  if (cfg.csv) rep << "register,value\n";
  for (const auto& r : m.registers) {
    if (!r.is_param) continue;
    rep << r.name << (cfg.csv ? ',' : '=') << result.at(r.name) << '\n';
  }
  emit(cfg, rep.str(), out);
  return kExitOk;
}

// ---- argument parsing ----

struct RawArgs {
  std::string format = "qasm-hl";
  std::string strategy = "pass";
  std::string mode = "modular";
  std::string threshold;
  std::vector<std::string> inputs;
  std::vector<std::string> params;
  bool no_memo = false;
};

// Flags bound to one variable from several subcommands are reset by the
// subcommands that were not invoked, so shared flags go through callbacks.
void add_verbose(CLI::App* c, RunConfig& cfg, const char* help) {
  c->add_flag_function("-v,--verbose", [&cfg](std::int64_t n) { cfg.verbosity += static_cast<int>(n); }, help);
}

void add_csv(CLI::App* c, RunConfig& cfg) {
  c->add_flag_callback("--csv", [&cfg] { cfg.csv = true; }, "Comma-separated output");
}

void add_common(CLI::App* c, RunConfig& cfg, RawArgs& raw) {
  c->add_option("input", cfg.input, "Input file (.scf, or .qasm for QASM text)")->required();
  c->add_option("-o,--output", cfg.output, "Write the result to PATH instead of standard output");
  add_verbose(c, cfg, "Print statistics to the error stream");
  c->add_option("--strategy", raw.strategy, "Flattening strategy: pass or dynamic");
  c->add_option("--budget-instructions", cfg.budget_instructions, "Largest instruction count to emit or expand")
      ->check(CLI::PositiveNumber);
  c->add_option("--blowup-limit", cfg.blowup_limit, "Largest module body an unroll may produce")
      ->check(CLI::PositiveNumber);
  c->add_option("--step-limit", cfg.step_limit, "Classical interpreter step limit (dynamic strategy)")
      ->check(CLI::PositiveNumber);
  c->add_flag_callback("--no-memo", [&raw] { raw.no_memo = true; },
                       "Disable specialization reuse (dynamic strategy)");
}

void finish_config(RunConfig& cfg, const RawArgs& raw) {
  auto f = parse_qasm_format(raw.format);
  if (!f) throw UsageError("unknown format '" + raw.format + "' (qasm-f, qasm-h, qasm-hl)");
  cfg.format = *f;
  auto s = parse_strategy(raw.strategy);
  if (!s) throw UsageError("unknown strategy '" + raw.strategy + "' (pass, dynamic)");
  cfg.strategy = *s;
  auto m = parse_scheduling_mode(raw.mode);
  if (!m) throw UsageError("unknown mode '" + raw.mode + "' (modular, bottom-slack, center)");
  cfg.mode = *m;
  if (!raw.threshold.empty()) cfg.threshold = parse_threshold(raw.threshold);
  cfg.memoize = !raw.no_memo;
  for (const auto& in : raw.inputs) {
    auto [name, value] = split_assignment(in, "--in");
    cfg.inputs[name] = parse_number<std::uint64_t>(value, "value for " + name);
  }
  for (const auto& pa : raw.params) {
    auto [name, value] = split_assignment(pa, "--param");
    cfg.params[name] = value;
  }
}

}  // namespace

void write_atomically(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    if (!o) throw Error(ErrorKind::Io, "cannot write '" + tmp + "'");
    o << text;
    o.flush();
    if (!o) {
      std::remove(tmp.c_str());
      throw Error(ErrorKind::Io, "cannot write '" + tmp + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    throw Error(ErrorKind::Io, "cannot rename onto '" + path + "': " + ec.message());
  }
}

std::optional<int> parse_args(int argc, const char* const* argv, RunConfig& cfg, std::ostream& out,
                              std::ostream& err) {
  CLI::App app{"qcc: quantum program compiler and analyzer", "qcc"};
  app.set_version_flag("--version", "qcc 0.1.0");
  app.require_subcommand(1);
  RawArgs raw;

  auto* compile = app.add_subcommand("compile", "Flatten a program and emit QASM");
  add_common(compile, cfg, raw);
  compile->add_option("--format", raw.format, "Output format: qasm-f, qasm-h or qasm-hl");
  compile->add_flag("--lower-toffoli", cfg.lower_toffoli, "Replace Toffoli gates by the 15-gate network");
  compile->add_flag("--dump-ir", cfg.dump_ir, "Print the resolved IR instead of QASM");

  auto* analyze = app.add_subcommand("analyze", "Run program analyses (all when none is selected)");
  add_common(analyze, cfg, raw);
  analyze->add_flag("--resources", cfg.resources, "Per-module qubit and gate counts");
  analyze->add_flag("--entangle", cfg.entangle, "Entanglement tracking and disentangled-qubit check");
  analyze->add_flag("--nocloning", cfg.nocloning, "Repeated-operand check");
  add_csv(analyze, cfg);

  auto* timing = app.add_subcommand("timing", "Estimate the critical path");
  add_common(timing, cfg, raw);
  timing->add_option("--mode", raw.mode, "Scheduling mode: modular, bottom-slack or center");
  timing->add_option("--threshold", raw.threshold, "Inline modules smaller than N gates first (N or inf)");
  timing->add_flag("--oracle", cfg.oracle, "Also compute the fully expanded critical path");
  timing->add_flag("--validate", cfg.validate, "Check the composed schedule gate by gate");
  add_csv(timing, cfg);

  auto* ctqg = app.add_subcommand("ctqg", "Classical-to-quantum-gate modules");
  ctqg->require_subcommand(1);
  auto* synth = ctqg->add_subcommand("synth", "Emit the flat netlist of a CTQG module");
  auto* sim = ctqg->add_subcommand("simulate", "Run a CTQG module on classical inputs");
  for (auto* c : {synth, sim}) {
    c->add_option("input", cfg.input, "ScaffLite input file")->required();
    c->add_option("-o,--output", cfg.output, "Write the result to PATH instead of standard output");
    c->add_option("--module", cfg.module, "Module to compile (default: the entry, else the last CTQG module)");
    c->add_option("--param", raw.params, "Classical parameter binding name=value")->take_all();
    add_verbose(c, cfg, "Print gate counts to the error stream");
  }
  sim->add_option("--in", raw.inputs, "Input register value reg=value")->take_all();
  add_csv(sim, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (compile->parsed()) cfg.command = Command::Compile;
  else if (analyze->parsed()) cfg.command = Command::Analyze;
  else if (timing->parsed()) cfg.command = Command::Timing;
  else if (synth->parsed()) cfg.command = Command::CtqgSynth;
  else cfg.command = Command::CtqgSimulate;

  try {
    finish_config(cfg, raw);
  } catch (const UsageError& e) {
    err << "qcc: " << e.what() << '\n';
    return kExitUsage;
  }
  return std::nullopt;
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::Compile: return cmd_compile(cfg, out, err);
      case Command::Analyze: return cmd_analyze(cfg, out, err);
      case Command::Timing: return cmd_timing(cfg, out, err);
      case Command::CtqgSynth:
      case Command::CtqgSimulate: return cmd_ctqg(cfg, out, err);
    }
  } catch (const UsageError& e) {
    err << "qcc: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "qcc: " << e.what() << '\n';
    return e.kind() == ErrorKind::Io ? kExitUsage : kExitDiagnostics;
  } catch (const std::exception& e) {
    err << "qcc: internal error: " << e.what() << '\n';
    return kExitDiagnostics;
  }
  return kExitDiagnostics;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  if (auto done = parse_args(argc, argv, cfg, out, err)) return *done;
  return execute(cfg, out, err);
}

}  // namespace qcc::cli
