// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <map>

#include "qcc/error.hpp"
#include "schedule_detail.hpp"

namespace qcc {

CpEstimate compose_critical_path(const SpecializedProgram& p, SchedulingMode mode) {
  const auto start = std::chrono::steady_clock::now();
  Scheduler s(p);
  CpEstimate est;
  est.mode = mode;
  for (int mi : p.postorder()) {
    const auto& ms = s.schedule(p.modules[mi].name, mode);
    est.module_lengths[ms.module] = ms.length;
  }
  if (p.find(p.entry)) est.length = s.schedule(p.entry, mode).length;
  est.modules_scheduled = s.modules_scheduled();
  est.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return est;
}

std::uint64_t oracle_critical_path(const SpecializedProgram& p, std::uint64_t budget) {
  std::map<PhysQubit, std::uint64_t> last;
  std::uint64_t length = 0;
  expand(p, budget, [&](const ExpandedGate& g) {
    std::uint64_t t = 0;
    for (int k = 0; k < g.n; ++k) {
      auto it = last.find(g.q[k]);
      if (it != last.end()) t = std::max(t, it->second);
    }
    ++t;
    for (int k = 0; k < g.n; ++k) last[g.q[k]] = t;
    length = std::max(length, t);
  });
  return length;
}

namespace {

struct Binding {
  std::int64_t owner;
  int module;
  int reg;
  std::int64_t off;
};

class TimedExpander {
 public:
  TimedExpander(const SpecializedProgram& p, SchedulingMode mode, std::uint64_t budget)
      : p_(p), sched_(p), mode_(mode), budget_(budget) {}

  std::vector<TimedGate> run() {
    const int e = p_.find_index(p_.entry);
    if (e < 0) return {};
    const FlatModule& m = p_.modules[e];
    std::vector<Binding> b;
    for (int r = 0; r < static_cast<int>(m.regs.size()); ++r) b.push_back(Binding{0, e, r, 0});
    const ModuleSchedule& ms = sched_.schedule(m.name, mode_);
    walk(m.body, *ms.detail, 0, b);
    return std::move(out_);
  }

 private:
  PhysQubit phys(const std::vector<Binding>& b, int reg, std::int64_t idx) const {
    return PhysQubit{b[reg].owner, b[reg].module, b[reg].reg, b[reg].off + idx};
  }

  void emit(TimedGate g) {
    if (out_.size() >= budget_)
      throw Error(ErrorKind::BudgetExceeded, "schedule expansion exceeds " + std::to_string(budget_) + " gates");
    out_.push_back(g);
  }

  void walk(const std::vector<FInst>& body, const SequenceSchedule& s, std::uint64_t base,
            const std::vector<Binding>& b) {
    for (std::size_t i = 0; i < body.size(); ++i) {
      const FInst& inst = body[i];
      const std::uint64_t at = base + s.times[i];
      if (const auto* g = std::get_if<FGate>(&inst.v)) {
        TimedGate t{g->kind, static_cast<int>(g->qubits.size()), {}, at};
        for (int k = 0; k < t.n; ++k) t.q[k] = phys(b, g->qubits[k].reg, g->qubits[k].idx);
        emit(t);
      } else if (const auto* f = std::get_if<FForall>(&inst.v)) {
        for (std::int64_t it = 0; it < f->count; ++it) {
          TimedGate t{f->kind, static_cast<int>(f->ops.size()), {}, at};
          for (int k = 0; k < t.n; ++k) t.q[k] = phys(b, f->ops[k].reg, f->ops[k].start + it * f->ops[k].step);
          emit(t);
        }
      } else if (const auto* c = std::get_if<FCall>(&inst.v)) {
        const int ci = p_.find_index(c->callee);
        const FlatModule& callee = p_.modules[ci];
        const std::int64_t owner = ++instances_;
        std::vector<Binding> cb;
        for (const auto& a : c->args) cb.push_back(Binding{b[a.reg].owner, b[a.reg].module, b[a.reg].reg, b[a.reg].off + a.lo});
        for (int r = static_cast<int>(cb.size()); r < static_cast<int>(callee.regs.size()); ++r)
          cb.push_back(Binding{owner, ci, r, 0});
        const ModuleSchedule& cs = sched_.schedule(callee.name, mode_);
        walk(callee.body, *cs.detail, at, cb);
      } else {
        const auto& r = std::get<FRepeat>(inst.v);
        if (!s.bodies[i]) continue;
        for (std::uint64_t k = 0; k < r.count; ++k) walk(r.body, *s.bodies[i], at + k * s.period[i], b);
      }
    }
  }

  const SpecializedProgram& p_;
  Scheduler sched_;
  SchedulingMode mode_;
  std::uint64_t budget_;
  std::int64_t instances_ = 0;
  std::vector<TimedGate> out_;
};

std::string phys_name(const PhysQubit& q) {
  return "#" + std::to_string(q.owner) + ".r" + std::to_string(q.reg) + "[" + std::to_string(q.idx) + "]";
}

}  // namespace

std::vector<TimedGate> timed_expansion(const SpecializedProgram& p, SchedulingMode mode, std::uint64_t budget) {
  return TimedExpander(p, mode, budget).run();
}

ScheduleCheck check_timed_gates(const std::vector<TimedGate>& gates, std::uint64_t length) {
  ScheduleCheck c;
  std::map<PhysQubit, std::pair<std::uint64_t, std::size_t>> last;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const TimedGate& g = gates[i];
    c.max_time = std::max(c.max_time, g.time);
    if (g.time == 0) c.violations.push_back("gate " + std::to_string(i) + " has timestep 0");
    for (int k = 0; k < g.n; ++k) {
      auto it = last.find(g.q[k]);
      if (it != last.end() && it->second.first >= g.time)
        c.violations.push_back("gate " + std::to_string(i) + " at timestep " + std::to_string(g.time) +
                               " does not follow gate " + std::to_string(it->second.second) + " at timestep " +
                               std::to_string(it->second.first) + " on qubit " + phys_name(g.q[k]));
      last[g.q[k]] = {g.time, i};
    }
  }
  if (c.max_time != length)
    c.violations.push_back("reported length " + std::to_string(length) + " differs from the latest timestep " +
                           std::to_string(c.max_time));
  c.valid = c.violations.empty();
  return c;
}

ScheduleCheck validate_schedule(const SpecializedProgram& p, const CpEstimate& est, std::uint64_t budget) {
  return check_timed_gates(timed_expansion(p, est.mode, budget), est.length);
}

}  // namespace qcc
