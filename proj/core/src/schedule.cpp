// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

// Hierarchical scheduling. A sequence is placed in program order; a call or
// repeat is placed at the earliest offset t0 such that each operand's first
// use inside it lands after the operand's last use so far.

#include <algorithm>
#include <functional>

#include "qcc/error.hpp"
#include "schedule_detail.hpp"

namespace qcc {

const char* scheduling_mode_name(SchedulingMode m) {
  switch (m) {
    case SchedulingMode::Modular: return "modular";
    case SchedulingMode::BottomSlack: return "bottom-slack";
    case SchedulingMode::CenterAligned: return "center";
  }
  return "?";
}

std::optional<SchedulingMode> parse_scheduling_mode(std::string_view s) {
  if (s == "modular") return SchedulingMode::Modular;
  if (s == "bottom-slack" || s == "bottom_slack") return SchedulingMode::BottomSlack;
  if (s == "center" || s == "center-aligned" || s == "center_aligned") return SchedulingMode::CenterAligned;
  return std::nullopt;
}

const QubitUse* ModuleSchedule::use(int reg, std::int64_t idx) const {
  auto it = std::lower_bound(uses.begin(), uses.end(), std::make_pair(reg, idx),
                             [](const QubitUse& u, const std::pair<int, std::int64_t>& k) {
                               return std::make_pair(u.reg, u.idx) < k;
                             });
  return it != uses.end() && it->reg == reg && it->idx == idx ? &*it : nullptr;
}

namespace {

using Callee = std::function<const ModuleSchedule&(const std::string&)>;

struct Span {
  std::uint64_t q, first, last;
};

// (first, last) of a summarized sequence or callee operand, per mode.
std::pair<std::uint64_t, std::uint64_t> summary(SchedulingMode mode, std::uint64_t first, std::uint64_t last,
                                                std::uint64_t length) {
  switch (mode) {
    case SchedulingMode::Modular: return {1, length};
    case SchedulingMode::BottomSlack: return {1, last};
    case SchedulingMode::CenterAligned: return {first, last};
  }
  return {first, last};
}

class SequenceScheduler {
 public:
  SequenceScheduler(const FlatModule& m, SchedulingMode mode, const Callee& callee) : mode_(mode), callee_(callee) {
    std::uint64_t base = 0;
    for (const auto& r : m.regs) {
      base_.push_back(base);
      base += static_cast<std::uint64_t>(r.size);
    }
  }

  std::uint64_t lin(int reg, std::int64_t idx) const { return base_[reg] + static_cast<std::uint64_t>(idx); }

  std::pair<int, std::int64_t> delin(std::uint64_t q) const {
    const int reg = static_cast<int>(std::upper_bound(base_.begin(), base_.end(), q) - base_.begin()) - 1;
    return {reg, static_cast<std::int64_t>(q - base_[reg])};
  }

  std::shared_ptr<SequenceSchedule> run(const std::vector<FInst>& body) {
    auto s = std::make_shared<SequenceSchedule>();
    const std::size_t n = body.size();
    s->times.assign(n, 0);
    s->bodies.assign(n, nullptr);
    s->period.assign(n, 0);
    std::vector<std::vector<Span>> spans(n);
    std::unordered_map<std::uint64_t, std::uint64_t> last;
    auto last_of = [&](std::uint64_t q) {
      auto it = last.find(q);
      return it == last.end() ? std::uint64_t{0} : it->second;
    };
    for (std::size_t i = 0; i < n; ++i) {
      const FInst& inst = body[i];
      if (std::holds_alternative<FGate>(inst.v) || std::holds_alternative<FForall>(inst.v)) {
        std::uint64_t t = 0;
        for_operands(inst, [&](std::uint64_t q) { t = std::max(t, last_of(q)); });
        t += 1;
        for_operands(inst, [&](std::uint64_t q) { last[q] = t; });
        s->times[i] = t;
        s->length = std::max(s->length, t);
        continue;
      }
      // (qubit, s, u) relative to the offset, and the extent of the block.
      std::vector<Span> rel;
      std::uint64_t extent = 0;
      if (const auto* c = std::get_if<FCall>(&inst.v)) {
        const ModuleSchedule& cs = callee_(c->callee);
        for (const auto& u : cs.uses) {
          if (u.reg >= static_cast<int>(c->args.size())) continue;
          auto [f, l] = summary(mode_, u.first, u.last, cs.length);
          rel.push_back(Span{lin(c->args[u.reg].reg, c->args[u.reg].lo + u.idx), f, l});
        }
        extent = cs.length;
      } else {
        const auto& r = std::get<FRepeat>(inst.v);
        if (r.count == 0) continue;
        auto b = run(r.body);
        std::uint64_t d = 0;
        for (const auto& [q, fl] : b->uses) {
          auto [f, l] = summary(mode_, fl.first, fl.second, b->length);
          d = std::max(d, l + 1 - f);
          rel.push_back(Span{q, f, l});
        }
        const std::uint64_t shift = sat_mul64(r.count - 1, d);
        for (auto& sp : rel) sp.last = sat_add64(sp.last, shift);
        extent = sat_add64(b->length, shift);
        s->period[i] = d;
        s->bodies[i] = std::move(b);
      }
      std::uint64_t t0 = 0;
      for (const auto& sp : rel) {
        const std::uint64_t need = last_of(sp.q) + 1;
        if (need > sp.first) t0 = std::max(t0, need - sp.first);
      }
      for (auto& sp : rel) {
        sp.first = sat_add64(t0, sp.first);
        sp.last = sat_add64(t0, sp.last);
        last[sp.q] = sp.last;
      }
      s->times[i] = t0;
      s->length = std::max(s->length, sat_add64(t0, extent));
      spans[i] = std::move(rel);
    }
    if (mode_ == SchedulingMode::CenterAligned) center(body, *s, spans);
    for (std::size_t i = 0; i < n; ++i) {
      if (std::holds_alternative<FGate>(body[i].v) || std::holds_alternative<FForall>(body[i].v)) {
        for_operands(body[i], [&](std::uint64_t q) { note_use(*s, q, s->times[i], s->times[i]); });
      } else {
        for (const auto& sp : spans[i]) note_use(*s, sp.q, sp.first, sp.last);
      }
    }
    return s;
  }

 private:
  template <class F>
  void for_operands(const FInst& inst, const F& f) const {
    if (const auto* g = std::get_if<FGate>(&inst.v)) {
      for (const auto& q : g->qubits) f(lin(q.reg, q.idx));
    } else if (const auto* fa = std::get_if<FForall>(&inst.v)) {
      for (std::int64_t t = 0; t < fa->count; ++t)
        for (const auto& o : fa->ops) f(lin(o.reg, o.start + t * o.step));
    }
  }

  static void note_use(SequenceSchedule& s, std::uint64_t q, std::uint64_t first, std::uint64_t last) {
    auto [it, fresh] = s.uses.emplace(q, std::make_pair(first, last));
    if (!fresh) {
      it->second.first = std::min(it->second.first, first);
      it->second.second = std::max(it->second.second, last);
    }
  }

  // Single-step statements in timesteps 1..L/2 move to just before the
  // next use of any operand; later statements and blocks stay put.
  void center(const std::vector<FInst>& body, SequenceSchedule& s, const std::vector<std::vector<Span>>& spans) const {
    const std::uint64_t half = s.length / 2;
    std::unordered_map<std::uint64_t, std::uint64_t> next;
    for (std::size_t k = body.size(); k-- > 0;) {
      const bool single = std::holds_alternative<FGate>(body[k].v) || std::holds_alternative<FForall>(body[k].v);
      if (!single) {
        for (const auto& sp : spans[k]) next[sp.q] = sp.first;
        continue;
      }
      if (s.times[k] <= half) {
        std::uint64_t nt = s.length + 1;
        for_operands(body[k], [&](std::uint64_t q) {
          auto it = next.find(q);
          if (it != next.end()) nt = std::min(nt, it->second);
        });
        s.times[k] = std::max(s.times[k], nt - 1);
      }
      for_operands(body[k], [&](std::uint64_t q) { next[q] = s.times[k]; });
    }
  }

  SchedulingMode mode_;
  const Callee& callee_;
  std::vector<std::uint64_t> base_;
};

bool has_call(const std::vector<FInst>& body) {
  for (const auto& i : body) {
    if (std::holds_alternative<FCall>(i.v)) return true;
    if (const auto* r = std::get_if<FRepeat>(&i.v); r && has_call(r->body)) return true;
  }
  return false;
}

ModuleSchedule build(const FlatModule& m, SchedulingMode mode, const Callee& callee) {
  SequenceScheduler sched(m, mode, callee);
  auto seq = sched.run(m.body);
  ModuleSchedule out;
  out.module = m.name;
  out.length = seq->length;
  out.inst_time = seq->times;
  for (const auto& [q, fl] : seq->uses) {
    auto [reg, idx] = sched.delin(q);
    out.uses.push_back(QubitUse{reg, idx, fl.first, fl.second});
  }
  std::sort(out.uses.begin(), out.uses.end(),
            [](const QubitUse& a, const QubitUse& b) { return std::tie(a.reg, a.idx) < std::tie(b.reg, b.idx); });
  out.detail = std::move(seq);
  return out;
}

ModuleSchedule leaf(const FlatModule& m, SchedulingMode mode) {
  if (has_call(m.body))
    throw Error(ErrorKind::Semantic, "module '" + m.name + "' calls other modules; schedule it through a Scheduler");
  Callee none = [](const std::string& name) -> const ModuleSchedule& {
    throw Error(ErrorKind::UndefinedModule, "no module '" + name + "'");
  };
  return build(m, mode, none);
}

}  // namespace

ModuleSchedule schedule_asap(const FlatModule& m) { return leaf(m, SchedulingMode::BottomSlack); }

ModuleSchedule schedule_center_aligned(const FlatModule& m) { return leaf(m, SchedulingMode::CenterAligned); }

struct Scheduler::Impl {
  const SpecializedProgram& p;
  std::map<std::pair<std::string, SchedulingMode>, ModuleSchedule> cache;
};

Scheduler::Scheduler(const SpecializedProgram& p) : impl_(std::make_unique<Impl>(Impl{p, {}})) {}
Scheduler::~Scheduler() = default;

const SpecializedProgram& Scheduler::program() const { return impl_->p; }

std::size_t Scheduler::modules_scheduled() const { return impl_->cache.size(); }

const ModuleSchedule& Scheduler::schedule(const std::string& module, SchedulingMode mode) {
  auto key = std::make_pair(module, mode);
  if (auto it = impl_->cache.find(key); it != impl_->cache.end()) return it->second;
  const FlatModule* m = impl_->p.find(module);
  if (!m) throw Error(ErrorKind::UndefinedModule, "no module '" + module + "'");
  Callee callee = [this, mode](const std::string& name) -> const ModuleSchedule& { return schedule(name, mode); };
  ModuleSchedule s = build(*m, mode, callee);
  return impl_->cache.emplace(key, std::move(s)).first->second;
}

}  // namespace qcc
