// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

// Static flattening by partial evaluation. Each specialized module is
// rewritten to a fixpoint of: constant propagation and folding, guard
// resolution, dead assignment removal, loop reclassification, unrolling of
// classical loops and cloning of calls whose arguments became constant.

#include <deque>
#include <set>

#include "flatten_common.hpp"
#include "qcc/ctqg.hpp"
#include "qcc/flatten.hpp"

namespace qcc {

namespace {

void assigned_vars(const std::vector<Inst>& body, std::set<int>& out) {
  for (const auto& i : body) {
    if (const auto* a = std::get_if<AssignInst>(&i.v)) {
      out.insert(a->var);
    } else if (const auto* l = std::get_if<LoopInst>(&i.v)) {
      out.insert(l->var);
      assigned_vars(l->body, out);
    } else if (const auto* c = std::get_if<CondInst>(&i.v)) {
      assigned_vars(c->then_body, out);
      assigned_vars(c->else_body, out);
    }
  }
}

void read_vars(const std::vector<Inst>& body, std::vector<int>& out) {
  for (const auto& i : body) {
    if (const auto* g = std::get_if<GateInst>(&i.v)) {
      for (const auto& q : g->qubits) collect_slots(*q.index, out);
      if (g->angle) collect_slots(*g->angle, out);
    } else if (const auto* c = std::get_if<CallInst>(&i.v)) {
      for (const auto& q : c->qargs)
        if (!q.whole) {
          collect_slots(*q.lo, out);
          collect_slots(*q.hi, out);
        }
      for (const auto& a : c->cargs) collect_slots(*a, out);
    } else if (const auto* l = std::get_if<LoopInst>(&i.v)) {
      collect_slots(*l->start, out);
      collect_slots(*l->end, out);
      collect_slots(*l->step, out);
      read_vars(l->body, out);
    } else if (const auto* c = std::get_if<CondInst>(&i.v)) {
      collect_slots(*c->guard, out);
      read_vars(c->then_body, out);
      read_vars(c->else_body, out);
    } else if (const auto* a = std::get_if<AssignInst>(&i.v)) {
      collect_slots(*a->value, out);
    }
  }
}

std::uint64_t body_size(const std::vector<Inst>& body) {
  std::uint64_t n = 0;
  for (const auto& i : body) {
    ++n;
    if (const auto* l = std::get_if<LoopInst>(&i.v)) n += body_size(l->body);
    else if (const auto* c = std::get_if<CondInst>(&i.v)) n += body_size(c->then_body) + body_size(c->else_body);
  }
  return n;
}

std::optional<std::int64_t> literal_trips(const LoopInst& l, std::size_t nvars) {
  if (!l.start->is_literal() || !l.end->is_literal() || !l.step->is_literal()) return std::nullopt;
  return trip_count(l, Frame(nvars));
}

Inst assign(int var, const Value& v, SrcPos pos) { return Inst{AssignInst{var, make_literal(v, pos)}, pos}; }

class ModuleRewriter {
 public:
  ModuleRewriter(ModuleDef& m, const FlattenOptions& opt, FlattenStats& stats) : m_(m), opt_(opt), stats_(stats) {}

  // One round; returns true if anything changed other than expression folding.
  bool round() {
    progress_ = false;
    Frame env(m_.vars.size());
    m_.body = propagate(std::move(m_.body), env);
    remove_dead_assignments();
    classify_loops(m_);
    size_ = body_size(m_.body);
    m_.body = unroll(std::move(m_.body), false);
    return progress_;
  }

  bool fallback() {
    progress_ = false;
    size_ = body_size(m_.body);
    m_.body = unroll(std::move(m_.body), true);
    return progress_;
  }

 private:
  std::vector<Inst> propagate(std::vector<Inst>&& body, Frame& env) {
    std::vector<Inst> out;
    out.reserve(body.size());
    for (auto& inst : body) {
      if (auto* g = std::get_if<GateInst>(&inst.v)) {
        for (auto& q : g->qubits) q.index = fold(q.index, env);
        if (g->angle) g->angle = fold(g->angle, env);
      } else if (auto* c = std::get_if<CallInst>(&inst.v)) {
        for (auto& q : c->qargs)
          if (!q.whole) {
            q.lo = fold(q.lo, env);
            q.hi = fold(q.hi, env);
          }
        for (auto& a : c->cargs) a = fold(a, env);
      } else if (auto* a = std::get_if<AssignInst>(&inst.v)) {
        a->value = fold(a->value, env);
        if (a->value->is_literal()) {
          const Value v = detail::convert_to(m_.vars[a->var], a->value->literal());
          a->value = make_literal(v, a->value->pos);
          env[a->var] = v;
        } else {
          env[a->var].reset();
        }
      } else if (auto* c = std::get_if<CondInst>(&inst.v)) {
        c->guard = fold(c->guard, env);
        if (c->guard->is_literal()) {
          progress_ = true;
          auto chosen = propagate(std::move(c->guard->literal().truthy() ? c->then_body : c->else_body), env);
          for (auto& x : chosen) out.push_back(std::move(x));
          continue;
        }
        Frame te = env, ee = env;
        c->then_body = propagate(std::move(c->then_body), te);
        c->else_body = propagate(std::move(c->else_body), ee);
        for (std::size_t s = 0; s < env.size(); ++s)
          env[s] = te[s] && ee[s] && *te[s] == *ee[s] ? te[s] : std::nullopt;
      } else if (auto* l = std::get_if<LoopInst>(&inst.v)) {
        l->start = fold(l->start, env);
        l->end = fold(l->end, env);
        l->step = fold(l->step, env);
        std::set<int> written;
        assigned_vars(l->body, written);
        written.insert(l->var);
        Frame inner = env;
        for (int s : written) inner[s].reset();
        l->body = propagate(std::move(l->body), inner);
        std::optional<std::int64_t> trips;
        try {
          trips = literal_trips(*l, env.size());
        } catch (const Error&) {
        }
        for (int s : written) env[s].reset();
        if (trips) env[l->var] = loop_value(*l, env, *trips);
      }
      out.push_back(std::move(inst));
    }
    return out;
  }

  void remove_dead_assignments() {
    for (;;) {
      std::vector<int> reads;
      read_vars(m_.body, reads);
      std::set<int> live(reads.begin(), reads.end());
      std::uint64_t removed = 0;
      m_.body = strip(std::move(m_.body), live, removed);
      if (!removed) return;
      progress_ = true;
    }
  }

  std::vector<Inst> strip(std::vector<Inst>&& body, const std::set<int>& live, std::uint64_t& removed) {
    std::vector<Inst> out;
    for (auto& inst : body) {
      if (const auto* a = std::get_if<AssignInst>(&inst.v); a && !live.count(a->var)) {
        ++removed;
        continue;
      }
      if (auto* l = std::get_if<LoopInst>(&inst.v)) {
        l->body = strip(std::move(l->body), live, removed);
      } else if (auto* c = std::get_if<CondInst>(&inst.v)) {
        c->then_body = strip(std::move(c->then_body), live, removed);
        c->else_body = strip(std::move(c->else_body), live, removed);
        if (c->then_body.empty() && c->else_body.empty()) {
          ++removed;
          continue;
        }
      }
      out.push_back(std::move(inst));
    }
    return out;
  }

  bool unrollable(const LoopInst& l, bool any) const {
    if (l.cls.kind != LoopKind::Classical || (!any && !l.cls.final)) return false;
    return literal_trips(l, m_.vars.size()).has_value();
  }

  bool contains_unrollable(const std::vector<Inst>& body, bool any) const {
    for (const auto& i : body) {
      if (const auto* l = std::get_if<LoopInst>(&i.v)) {
        if (unrollable(*l, any) || contains_unrollable(l->body, any)) return true;
      } else if (const auto* c = std::get_if<CondInst>(&i.v)) {
        if (contains_unrollable(c->then_body, any) || contains_unrollable(c->else_body, any)) return true;
      }
    }
    return false;
  }

  std::vector<Inst> unroll(std::vector<Inst>&& body, bool any) {
    std::vector<Inst> out;
    for (auto& inst : body) {
      if (auto* c = std::get_if<CondInst>(&inst.v)) {
        c->then_body = unroll(std::move(c->then_body), any);
        c->else_body = unroll(std::move(c->else_body), any);
      } else if (auto* l = std::get_if<LoopInst>(&inst.v)) {
        if (contains_unrollable(l->body, any) || !unrollable(*l, any)) {
          l->body = unroll(std::move(l->body), any);
        } else {
          expand(*l, inst.pos, out);
          continue;
        }
      }
      out.push_back(std::move(inst));
    }
    return out;
  }

  void expand(const LoopInst& l, SrcPos pos, std::vector<Inst>& out) {
    const Frame none(m_.vars.size());
    const std::int64_t trips = *trip_count(l, none);
    const std::uint64_t per = l.body.empty() ? 0 : body_size(l.body) + 1;
    const std::uint64_t limit = opt_.blowup_limit;
    if (per && (static_cast<std::uint64_t>(trips) > (limit - std::min(limit, size_)) / per))
      throw Error(ErrorKind::BlowupLimit,
                  "unrolling " + std::to_string(trips) + " iterations of a " + std::to_string(per) +
                      "-instruction body in '" + m_.name + "' exceeds the limit of " + std::to_string(limit),
                  pos);
    size_ += per * static_cast<std::uint64_t>(trips);
    ++stats_.unrolled;
    progress_ = true;
    if (per) {
      for (std::int64_t k = 0; k < trips; ++k) {
        out.push_back(assign(l.var, loop_value(l, none, k), pos));
        out.insert(out.end(), l.body.begin(), l.body.end());
      }
    }
    out.push_back(assign(l.var, loop_value(l, none, trips), pos));
  }

  ModuleDef& m_;
  const FlattenOptions& opt_;
  FlattenStats& stats_;
  bool progress_ = false;
  std::uint64_t size_ = 0;
};

class PassFlattener {
 public:
  PassFlattener(const Program& p, const FlattenOptions& opt, FlattenStats& stats)
      : p_(p), opt_(opt), stats_(stats), namer_(p) {
    ctx_.resolve = [this](const CallInst& c, const Frame&) { return resolved(c); };
    ctx_.origin = p.origin;
  }

  SpecializedProgram run() {
    if (const ModuleDef* main = p_.find(p_.entry)) {
      out_.entry = specialize(*main, Frame(main->vars.size()));
    } else {
      for (const ModuleDef* m : detail::ctqg_roots(p_)) out_.entry = specialize(*m, Frame(m->vars.size()));
    }
    while (!queue_.empty()) {
      std::string name = queue_.front();
      queue_.pop_front();
      process(name);
    }
    SpecializedProgram all;
    all.entry = out_.entry;
    for (auto& m : emitted_) all.add(std::move(m));
    // Callers are processed before their callees; store callees first.
    SpecializedProgram sorted;
    sorted.entry = out_.entry;
    sorted.specialization_index = out_.specialization_index;
    for (int i : all.postorder()) sorted.add(std::move(all.modules[i]));
    stats_.modules = sorted.modules.size();
    return sorted;
  }

 private:
  std::string specialize(const ModuleDef& m, const Frame& f) {
    MemoKey key = detail::make_key(m, f);
    auto it = out_.specialization_index.find(key);
    if (it != out_.specialization_index.end()) return it->second;
    const std::string name = namer_.name_for(m, f);
    out_.specialization_index.emplace(key, name);
    if (m.is_ctqg) {
      FlatModule fm = ctqg_flat_module(m, f, name);
      fm.key = key;
      std::vector<std::int64_t> sizes;
      for (int i = 0; i < fm.num_params; ++i) sizes.push_back(fm.regs[i].size);
      sizes_[name] = sizes;
      emitted_.push_back(std::move(fm));
      return name;
    }
    ModuleDef c = m;
    c.name = name;
    std::vector<Inst> prologue;
    for (int s : m.classical_params) {
      c.vars[s].is_param = false;
      prologue.push_back(assign(s, *f[s], m.pos));
    }
    std::vector<std::int64_t> sizes;
    for (int a = 0; a < static_cast<int>(c.arrays.size()); ++a) {
      c.arrays[a].size = detail::array_size(m, a, f);
      c.arrays[a].size_expr = make_int(c.arrays[a].size, c.arrays[a].pos);
      if (a < c.num_qubit_params) sizes.push_back(c.arrays[a].size);
    }
    c.classical_params.clear();
    std::erase_if(c.params, [](const ParamRef& r) { return !r.is_qubit; });
    c.body.insert(c.body.begin(), prologue.begin(), prologue.end());
    sizes_[name] = sizes;
    keys_[name] = key;
    defs_.emplace(name, std::move(c));
    queue_.push_back(name);
    return name;
  }

  void process(const std::string& name) {
    ModuleDef& m = defs_.at(name);
    ModuleRewriter rw(m, opt_, stats_);
    for (;;) {
      ++stats_.fixpoint_rounds;
      bool progress = rw.round();
      progress |= clone_calls(m.body);
      if (!progress && !rw.fallback()) break;
    }
    emitted_.push_back(detail::emit_module(m, Frame(m.vars.size()), name, keys_.at(name), ctx_));
  }

  bool clone_calls(std::vector<Inst>& body) {
    bool progress = false;
    for (auto& inst : body) {
      if (auto* c = std::get_if<CallInst>(&inst.v)) {
        if (sizes_.count(c->callee) && c->cargs.empty()) continue;
        bool constant = true;
        std::vector<Value> args;
        for (const auto& a : c->cargs) {
          constant = constant && a->is_literal();
          if (constant) args.push_back(a->literal());
        }
        if (!constant) continue;
        const ModuleDef* callee = p_.find(c->callee);
        if (!callee) throw Error(ErrorKind::UndefinedModule, "no module '" + c->callee + "'", inst.pos, p_.origin);
        const std::string name = specialize(*callee, detail::bind_params(*callee, args));
        progress = progress || name != c->callee || !c->cargs.empty();
        c->callee = name;
        c->cargs.clear();
      } else if (auto* l = std::get_if<LoopInst>(&inst.v)) {
        progress = clone_calls(l->body) || progress;
      } else if (auto* c = std::get_if<CondInst>(&inst.v)) {
        progress = clone_calls(c->then_body) || progress;
        progress = clone_calls(c->else_body) || progress;
      }
    }
    return progress;
  }

  detail::CalleeInfo resolved(const CallInst& c) {
    auto it = sizes_.find(c.callee);
    if (!c.cargs.empty() || it == sizes_.end())
      throw Error(ErrorKind::NonConstantControl, "arguments of call to '" + c.callee + "' are not constant");
    return {c.callee, it->second};
  }

  const Program& p_;
  FlattenOptions opt_;
  FlattenStats& stats_;
  detail::SpecNamer namer_;
  detail::EmitContext ctx_;
  SpecializedProgram out_;
  std::map<std::string, ModuleDef> defs_;
  std::map<std::string, MemoKey> keys_;
  std::map<std::string, std::vector<std::int64_t>> sizes_;
  std::deque<std::string> queue_;
  std::vector<FlatModule> emitted_;
};

}  // namespace

SpecializedProgram flatten_pass_driven(const Program& p, const FlattenOptions& opt, FlattenStats* stats) {
  FlattenStats local;
  SpecializedProgram out = PassFlattener(p, opt, stats ? *stats : local).run();
  validate(out);
  return out;
}

}  // namespace qcc
