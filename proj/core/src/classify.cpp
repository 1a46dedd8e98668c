// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

// Loop classification into forall (parallel slice), repeat (serial
// iteration of a loop-invariant body) or classical (to be unrolled).

#include "qcc/ir.hpp"

namespace qcc {

namespace {

enum class Verdict { Yes, No, Maybe };

Verdict meet(Verdict a, Verdict b) {
  if (a == Verdict::No || b == Verdict::No) return Verdict::No;
  if (a == Verdict::Maybe || b == Verdict::Maybe) return Verdict::Maybe;
  return Verdict::Yes;
}

bool has_unknown(const Expr& e, int var) {
  std::vector<int> s;
  collect_slots(e, s);
  for (int x : s)
    if (x != var) return true;
  return false;
}

std::optional<std::int64_t> array_size(const ModuleDef& m, int a, const Frame& f) {
  if (m.arrays[a].size >= 0) return m.arrays[a].size;
  if (auto v = try_eval(*m.arrays[a].size_expr, f)) return v->as_int();
  return std::nullopt;
}

Verdict forall_verdict(const LoopInst& loop, const ModuleDef& m, const Frame& f, std::int64_t trips,
                       LoopClassification& out) {
  std::map<int, Affine> per_array;
  Verdict v = Verdict::Yes;
  const std::int64_t start = eval(*loop.start, f).as_int();
  const std::int64_t step = eval(*loop.step, f).as_int();
  bool first = true;
  for (const auto& inst : loop.body) {
    const auto* g = std::get_if<GateInst>(&inst.v);
    if (!g) {
      // A nested loop or call can never make this loop a forall; a
      // conditional or assignment might vanish after folding.
      if (std::holds_alternative<CondInst>(inst.v)) v = meet(v, Verdict::Maybe);
      else return Verdict::No;
      continue;
    }
    if (g->angle && mentions_slot(*fold(g->angle, f), loop.var)) return Verdict::No;
    std::vector<int> seen;
    for (const auto& q : g->qubits) {
      if (std::find(seen.begin(), seen.end(), q.array) != seen.end()) return Verdict::No;
      seen.push_back(q.array);
      ExprPtr idx = fold(q.index, f);
      if (has_unknown(*idx, loop.var)) {
        v = meet(v, Verdict::Maybe);
        continue;
      }
      auto aff = affine_in(*idx, loop.var);
      if (!aff || (aff->a != 1 && aff->a != -1) || (aff->a * step != 1 && aff->a * step != -1)) return Verdict::No;
      auto [it, fresh] = per_array.emplace(q.array, *aff);
      if (!fresh && (it->second.a != aff->a || it->second.b != aff->b)) return Verdict::No;
      const std::int64_t lo = aff->a * start + aff->b;
      const std::int64_t hi = lo + (trips - 1) * aff->a * step;
      auto size = array_size(m, q.array, f);
      if (!size) {
        v = meet(v, Verdict::Maybe);
      } else if (std::min(lo, hi) < 0 || std::max(lo, hi) >= *size) {
        return Verdict::No;
      }
      if (first) {
        out.array = q.array;
        out.lo = lo;
        out.hi = hi;
        first = false;
      }
    }
  }
  if (loop.body.empty()) return Verdict::No;
  return v;
}

Verdict repeat_verdict(const LoopInst& loop, const ModuleDef& m, const Frame& f);

Verdict invariant_known(const ExprPtr& e, int var, const Frame& f) {
  ExprPtr x = fold(e, f);
  if (mentions_slot(*x, var)) return Verdict::No;
  return x->is_literal() ? Verdict::Yes : Verdict::Maybe;
}

Verdict body_is_invariant(const std::vector<Inst>& body, int var, const ModuleDef& m, const Frame& f) {
  Verdict v = Verdict::Yes;
  for (const auto& inst : body) {
    if (const auto* g = std::get_if<GateInst>(&inst.v)) {
      for (const auto& q : g->qubits) v = meet(v, invariant_known(q.index, var, f));
      if (g->angle && mentions_slot(*fold(g->angle, f), var)) v = Verdict::No;
    } else if (const auto* c = std::get_if<CallInst>(&inst.v)) {
      for (const auto& q : c->qargs)
        if (!q.whole) v = meet(meet(v, invariant_known(q.lo, var, f)), invariant_known(q.hi, var, f));
      for (const auto& a : c->cargs) {
        // Cloning removes classical arguments that do not vary.
        if (mentions_slot(*fold(a, f), var)) return Verdict::No;
        v = meet(v, Verdict::Maybe);
      }
    } else if (const auto* l = std::get_if<LoopInst>(&inst.v)) {
      if (mentions_slot(*fold(l->start, f), var) || mentions_slot(*fold(l->end, f), var) ||
          mentions_slot(*fold(l->step, f), var))
        return Verdict::No;
      LoopClassification inner = classify_loop(*l, m, &f);
      if (inner.kind == LoopKind::Classical) {
        v = meet(v, Verdict::Maybe);
        continue;
      }
      v = meet(v, inner.final ? Verdict::Yes : Verdict::Maybe);
      Frame g = f;
      g[l->var].reset();
      Verdict b = body_is_invariant(l->body, var, m, g);
      if (b == Verdict::No) return Verdict::No;
      v = meet(v, b);
    } else if (const auto* c = std::get_if<CondInst>(&inst.v)) {
      if (mentions_slot(*fold(c->guard, f), var)) return Verdict::No;
      v = meet(v, Verdict::Maybe);
    } else {
      return Verdict::No;
    }
  }
  return v;
}

Verdict repeat_verdict(const LoopInst& loop, const ModuleDef& m, const Frame& f) {
  if (loop.body.empty()) return Verdict::No;
  return body_is_invariant(loop.body, loop.var, m, f);
}

bool has_assign(const std::vector<Inst>& body) {
  for (const auto& i : body) {
    if (std::holds_alternative<AssignInst>(i.v)) return true;
    if (const auto* l = std::get_if<LoopInst>(&i.v); l && has_assign(l->body)) return true;
    if (const auto* c = std::get_if<CondInst>(&i.v); c && (has_assign(c->then_body) || has_assign(c->else_body)))
      return true;
  }
  return false;
}

}  // namespace

LoopClassification classify_loop(const LoopInst& loop, const ModuleDef& m, const Frame* env) {
  LoopClassification c;
  Frame f = env ? *env : Frame{};
  f.resize(m.vars.size());
  f[loop.var].reset();
  if (has_assign(loop.body)) return c;
  std::optional<std::int64_t> trips;
  try {
    trips = trip_count(loop, f);
  } catch (const Error&) {
    return c;
  }
  if (!trips) {
    c.final = false;
    return c;
  }
  c.trip_count = *trips;
  if (*trips < 2) return c;
  LoopClassification fc = c;
  Verdict fv = forall_verdict(loop, m, f, *trips, fc);
  if (fv == Verdict::Yes) {
    fc.kind = LoopKind::Forall;
    return fc;
  }
  Verdict rv = repeat_verdict(loop, m, f);
  if (rv == Verdict::Yes) {
    c.kind = LoopKind::Repeat;
    return c;
  }
  c.final = fv == Verdict::No && rv == Verdict::No;
  return c;
}

namespace {

void classify_body(std::vector<Inst>& body, const ModuleDef& m) {
  for (auto& inst : body) {
    if (auto* l = std::get_if<LoopInst>(&inst.v)) {
      classify_body(l->body, m);
      l->cls = classify_loop(*l, m, nullptr);
    } else if (auto* c = std::get_if<CondInst>(&inst.v)) {
      classify_body(c->then_body, m);
      classify_body(c->else_body, m);
    }
  }
}

}  // namespace

void classify_loops(ModuleDef& m) { classify_body(m.body, m); }

}  // namespace qcc
