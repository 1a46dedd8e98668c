// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#include "qcc/qasm.hpp"

namespace qcc {

const std::vector<NetworkGate>& toffoli_network() {
  // Operand 0 is the target, 1 and 2 the controls. CNOT lists its target first.
  enum { t = 0, a = 1, b = 2 };
  static const std::vector<NetworkGate> kNet = {
      {GateKind::H, {t, -1}},    {GateKind::CNOT, {t, b}}, {GateKind::Tdag, {t, -1}}, {GateKind::CNOT, {t, a}},
      {GateKind::T, {t, -1}},    {GateKind::CNOT, {t, b}}, {GateKind::Tdag, {t, -1}}, {GateKind::CNOT, {t, a}},
      {GateKind::T, {b, -1}},    {GateKind::T, {t, -1}},   {GateKind::H, {t, -1}},    {GateKind::CNOT, {b, a}},
      {GateKind::T, {a, -1}},    {GateKind::Tdag, {b, -1}}, {GateKind::CNOT, {b, a}},
  };
  return kNet;
}

namespace {

template <typename Op>
std::vector<Op> pick(const std::vector<Op>& ops, const NetworkGate& n) {
  std::vector<Op> out;
  for (int k : n.operands)
    if (k >= 0) out.push_back(ops[k]);
  return out;
}

std::vector<FInst> lower(const std::vector<FInst>& body) {
  std::vector<FInst> out;
  out.reserve(body.size());
  for (const auto& inst : body) {
    if (const auto* g = std::get_if<FGate>(&inst.v); g && g->kind == GateKind::Toffoli) {
      for (const auto& n : toffoli_network()) out.push_back(FInst{FGate{n.kind, pick(g->qubits, n), 0.0}});
    } else if (const auto* f = std::get_if<FForall>(&inst.v); f && f->kind == GateKind::Toffoli) {
      for (const auto& n : toffoli_network()) out.push_back(FInst{FForall{n.kind, pick(f->ops, n), f->count, 0.0}});
    } else if (const auto* r = std::get_if<FRepeat>(&inst.v)) {
      out.push_back(FInst{FRepeat{r->count, lower(r->body)}});
    } else {
      out.push_back(inst);
    }
  }
  return out;
}

}  // namespace

SpecializedProgram lower_toffoli(const SpecializedProgram& p) {
  SpecializedProgram q = p;
  for (auto& m : q.modules) m.body = lower(m.body);
  return q;
}

}  // namespace qcc
