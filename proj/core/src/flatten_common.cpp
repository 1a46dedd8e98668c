// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#include "flatten_common.hpp"

#include <algorithm>

#include "qcc/flatten.hpp"

namespace qcc {

const char* strategy_name(Strategy s) { return s == Strategy::Pass ? "pass" : "dynamic"; }

std::optional<Strategy> parse_strategy(std::string_view s) {
  if (s == "pass") return Strategy::Pass;
  if (s == "dynamic") return Strategy::Dynamic;
  return std::nullopt;
}

SpecializedProgram flatten(const Program& p, Strategy s, const FlattenOptions& opt, FlattenStats* stats) {
  return s == Strategy::Pass ? flatten_pass_driven(p, opt, stats) : flatten_dynamic(p, opt, stats);
}

namespace detail {

Value convert_to(const VarInfo& v, const Value& x) {
  return v.is_real ? Value::of_real(x.as_real()) : Value::of_int(x.as_int());
}

Frame bind_params(const ModuleDef& m, const std::vector<Value>& args) {
  Frame f(m.vars.size());
  for (std::size_t i = 0; i < m.classical_params.size() && i < args.size(); ++i) {
    const int s = m.classical_params[i];
    f[s] = convert_to(m.vars[s], args[i]);
  }
  return f;
}

MemoKey make_key(const ModuleDef& m, const Frame& f) {
  MemoKey k;
  k.module = m.name;
  for (int s : m.classical_params) {
    const Value v = f[s].value_or(Value{});
    if (m.vars[s].is_real) k.reals.push_back(v.as_real());
    else k.ints.push_back(v.as_int());
  }
  return k;
}

std::int64_t array_size(const ModuleDef& m, int a, const Frame& f) {
  const auto& d = m.arrays[a];
  std::int64_t n = d.size >= 0 ? d.size : eval(*d.size_expr, f).as_int();
  if (n <= 0)
    throw Error(ErrorKind::Semantic, "qubit array '" + d.name + "' has size " + std::to_string(n), d.pos);
  return n;
}

SpecNamer::SpecNamer(const Program& p) {
  for (const auto& m : p.modules) originals_.insert(m.name);
}

std::string SpecNamer::name_for(const ModuleDef& m, const Frame& f) {
  std::string base = m.name;
  for (int s : m.classical_params) {
    const Value v = f[s].value_or(Value{});
    base += "_" + (m.vars[s].is_real ? format_real(v.as_real()) : std::to_string(v.as_int()));
  }
  std::string name = base;
  const bool own = m.classical_params.empty();
  while (used_.count(name) || (!own && originals_.count(name)) || (own && name != m.name && originals_.count(name)))
    name += "_";
  used_.insert(name);
  return name;
}

std::vector<const ModuleDef*> ctqg_roots(const Program& p) {
  std::vector<const ModuleDef*> out;
  for (const auto& m : p.modules)
    if (m.is_ctqg && m.classical_params.empty()) out.push_back(&m);
  if (out.empty()) throw Error(ErrorKind::UndefinedModule, "program has no module '" + p.entry + "'", {}, p.origin);
  return out;
}

namespace {

class Emitter {
 public:
  Emitter(const ModuleDef& m, Frame f, const EmitContext& ctx) : m_(m), f_(std::move(f)), ctx_(ctx) {
    f_.resize(m.vars.size());
  }

  FlatModule run(const std::string& name, MemoKey key) {
    FlatModule out;
    out.name = name;
    out.key = std::move(key);
    for (int a = 0; a < static_cast<int>(m_.arrays.size()); ++a) {
      const std::int64_t n = array_size(m_, a, f_);
      sizes_.push_back(n);
      out.regs.push_back(FReg{m_.arrays[a].name, n, a < m_.num_qubit_params});
    }
    out.num_params = m_.num_qubit_params;
    body(m_.body, out.body);
    return out;
  }

 private:
  void tick() {
    if (ctx_.steps && ++*ctx_.steps > ctx_.step_limit)
      throw Error(ErrorKind::StepLimit, "classical interpreter exceeded " + std::to_string(ctx_.step_limit) + " steps");
  }

  std::int64_t index(const QRef& q) {
    const std::int64_t i = eval(*q.index, f_).as_int();
    if (i < 0 || i >= sizes_[q.array])
      throw Error(ErrorKind::Semantic, "index " + std::to_string(i) + " out of range for '" +
                                           m_.arrays[q.array].name + "' of size " + std::to_string(sizes_[q.array]));
    return i;
  }

  void body(const std::vector<Inst>& b, std::vector<FInst>& out) {
    for (const auto& inst : b) {
      try {
        std::visit([&](const auto& x) { one(x, out); }, inst.v);
      } catch (const Error& e) {
        if (e.pos().valid()) throw;
        throw Error(e.kind(), e.message(), inst.pos, ctx_.origin);
      }
    }
  }

  void one(const GateInst& g, std::vector<FInst>& out) {
    FGate fg;
    fg.kind = g.kind;
    for (const auto& q : g.qubits) fg.qubits.push_back(FQubit{q.array, index(q)});
    if (g.angle) fg.angle = eval(*g.angle, f_).as_real();
    out.push_back(FInst{std::move(fg)});
  }

  void one(const CallInst& c, std::vector<FInst>& out) {
    tick();
    CalleeInfo ci = ctx_.resolve(c, f_);
    FCall fc;
    fc.callee = ci.name;
    for (std::size_t i = 0; i < c.qargs.size(); ++i) {
      const QArg& q = c.qargs[i];
      FArg a{q.array, 0, sizes_[q.array]};
      if (!q.whole) {
        const std::int64_t lo = eval(*q.lo, f_).as_int();
        const std::int64_t hi = eval(*q.hi, f_).as_int();
        if (lo < 0 || hi < lo || hi >= sizes_[q.array])
          throw Error(ErrorKind::Semantic, "slice " + m_.arrays[q.array].name + "[" + std::to_string(lo) + ":" +
                                               std::to_string(hi) + "] is out of range");
        a.lo = lo;
        a.len = hi - lo + 1;
      }
      if (i < ci.param_sizes.size() && a.len != ci.param_sizes[i])
        throw Error(ErrorKind::Width, "argument " + std::to_string(i + 1) + " of call to '" + c.callee + "' has " +
                                          std::to_string(a.len) + " qubits, parameter expects " +
                                          std::to_string(ci.param_sizes[i]));
      fc.args.push_back(a);
    }
    out.push_back(FInst{std::move(fc)});
  }

  void one(const AssignInst& a, std::vector<FInst>&) {
    tick();
    f_[a.var] = convert_to(m_.vars[a.var], eval(*a.value, f_));
  }

  void one(const CondInst& c, std::vector<FInst>& out) {
    tick();
    body(eval(*c.guard, f_).truthy() ? c.then_body : c.else_body, out);
  }

  void one(const LoopInst& l, std::vector<FInst>& out) {
    tick();
    auto trips = trip_count(l, f_);
    if (!trips) throw Error(ErrorKind::NonConstantControl, "loop bounds are not constant");
    const std::int64_t start = eval(*l.start, f_).as_int(), step = eval(*l.step, f_).as_int();
    auto value = [&](std::int64_t k) { return Value::of_int(start + k * step); };
    LoopClassification cls = classify_loop(l, m_, &f_);
    switch (cls.kind) {
      case LoopKind::Forall:
        forall(l, *trips, value(0), value(1), out);
        break;
      case LoopKind::Repeat: {
        f_[l.var] = value(0);
        FRepeat r;
        r.count = static_cast<std::uint64_t>(*trips);
        body(l.body, r.body);
        out.push_back(FInst{std::move(r)});
        break;
      }
      case LoopKind::Classical:
        if (!ctx_.iterate_classical)
          throw Error(ErrorKind::NonConstantControl, "classical loop over '" + m_.vars[l.var].name + "' remains");
        iterate(l, *trips, value, out);
        break;
    }
    f_[l.var] = value(*trips);
  }

  void forall(const LoopInst& l, std::int64_t trips, Value v0, Value v1, std::vector<FInst>& out) {
    for (const auto& inst : l.body) {
      const auto& g = std::get<GateInst>(inst.v);
      FForall fa;
      fa.kind = g.kind;
      fa.count = trips;
      for (const auto& q : g.qubits) {
        f_[l.var] = v0;
        const std::int64_t i0 = eval(*q.index, f_).as_int();
        f_[l.var] = v1;
        const std::int64_t i1 = eval(*q.index, f_).as_int();
        fa.ops.push_back(FOperand{q.array, i0, static_cast<int>(i1 - i0)});
      }
      f_[l.var] = v0;
      if (g.angle) fa.angle = eval(*g.angle, f_).as_real();
      out.push_back(FInst{std::move(fa)});
    }
  }

  template <class ValueAt>
  void iterate(const LoopInst& l, std::int64_t trips, const ValueAt& value, std::vector<FInst>& out) {
    std::vector<FInst> prev;
    std::uint64_t run = 0;
    auto flush = [&] {
      if (run >= 2 && !prev.empty()) {
        FRepeat r;
        r.count = run;
        r.body = std::move(prev);
        out.push_back(FInst{std::move(r)});
      } else {
        for (std::uint64_t k = 0; k < run; ++k) out.insert(out.end(), prev.begin(), prev.end());
      }
      prev.clear();
      run = 0;
    };
    for (std::int64_t k = 0; k < trips; ++k) {
      tick();
      f_[l.var] = value(k);
      std::vector<FInst> cur;
      body(l.body, cur);
      if (run > 0 && cur == prev) {
        ++run;
        continue;
      }
      flush();
      prev = std::move(cur);
      run = 1;
    }
    flush();
  }

  const ModuleDef& m_;
  Frame f_;
  const EmitContext& ctx_;
  std::vector<std::int64_t> sizes_;
};

}  // namespace

FlatModule emit_module(const ModuleDef& m, Frame frame, const std::string& name, MemoKey key,
                       const EmitContext& ctx) {
  return Emitter(m, std::move(frame), ctx).run(name, std::move(key));
}

}  // namespace detail
}  // namespace qcc
