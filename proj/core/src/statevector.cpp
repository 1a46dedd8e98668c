// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <set>

#include "qcc/error.hpp"
#include "qcc/qasm.hpp"

namespace qcc {

using cd = std::complex<double>;

StateVector::StateVector(int n, std::uint64_t basis) : n_(n) {
  if (n < 0 || n > kMaxStateQubits)
    throw Error(ErrorKind::TooManyQubits,
                std::to_string(n) + " qubits requested, the state-vector checker holds at most " +
                    std::to_string(kMaxStateQubits));
  amp_.assign(std::size_t{1} << n, cd{0.0, 0.0});
  if (basis >= amp_.size()) throw Error(ErrorKind::Semantic, "basis state out of range");
  amp_[basis] = 1.0;
}

double StateVector::norm() const {
  double s = 0;
  for (const auto& a : amp_) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::apply(const SimGate& g) {
  if (static_cast<int>(g.qubits.size()) != gate_arity(g.kind))
    throw Error(ErrorKind::ArityMismatch, std::string(gate_name(g.kind)) + " operand count");
  std::set<int> distinct(g.qubits.begin(), g.qubits.end());
  if (distinct.size() != g.qubits.size()) throw Error(ErrorKind::Overlap, "gate operands must be distinct");
  for (int q : g.qubits)
    if (q < 0 || q >= n_) throw Error(ErrorKind::Semantic, "qubit " + std::to_string(q) + " out of range");
  const std::size_t dim = amp_.size();
  if (g.kind == GateKind::CNOT || g.kind == GateKind::Toffoli) {
    std::size_t cmask = 0;
    for (std::size_t k = 1; k < g.qubits.size(); ++k) cmask |= std::size_t{1} << g.qubits[k];
    const std::size_t tbit = std::size_t{1} << g.qubits[0];
    for (std::size_t i = 0; i < dim; ++i)
      if ((i & cmask) == cmask && !(i & tbit)) std::swap(amp_[i], amp_[i | tbit]);
    return;
  }
  const double h = 1.0 / std::sqrt(2.0);
  const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
  const cd I{0.0, 1.0};
  cd m[2][2];
  switch (g.kind) {
    case GateKind::X: m[0][0] = 0; m[0][1] = 1; m[1][0] = 1; m[1][1] = 0; break;
    case GateKind::Y: m[0][0] = 0; m[0][1] = -I; m[1][0] = I; m[1][1] = 0; break;
    case GateKind::Z: m[0][0] = 1; m[0][1] = 0; m[1][0] = 0; m[1][1] = -1; break;
    case GateKind::H: m[0][0] = h; m[0][1] = h; m[1][0] = h; m[1][1] = -h; break;
    case GateKind::S: m[0][0] = 1; m[0][1] = 0; m[1][0] = 0; m[1][1] = I; break;
    case GateKind::Sdag: m[0][0] = 1; m[0][1] = 0; m[1][0] = 0; m[1][1] = -I; break;
    case GateKind::T: m[0][0] = 1; m[0][1] = 0; m[1][0] = 0; m[1][1] = std::polar(1.0, M_PI / 4); break;
    case GateKind::Tdag: m[0][0] = 1; m[0][1] = 0; m[1][0] = 0; m[1][1] = std::polar(1.0, -M_PI / 4); break;
    case GateKind::Rx: m[0][0] = c; m[0][1] = -I * s; m[1][0] = -I * s; m[1][1] = c; break;
    case GateKind::Ry: m[0][0] = c; m[0][1] = -s; m[1][0] = s; m[1][1] = c; break;
    case GateKind::Rz:
      m[0][0] = std::polar(1.0, -g.angle / 2); m[0][1] = 0; m[1][0] = 0; m[1][1] = std::polar(1.0, g.angle / 2);
      break;
    default:
      throw Error(ErrorKind::Semantic, std::string(gate_name(g.kind)) + " is not a unitary gate");
  }
  const std::size_t bit = std::size_t{1} << g.qubits[0];
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    cd a0 = amp_[i], a1 = amp_[i | bit];
    amp_[i] = m[0][0] * a0 + m[0][1] * a1;
    amp_[i | bit] = m[1][0] * a0 + m[1][1] * a1;
  }
}

StateVector simulate_statevector(const std::vector<SimGate>& gates, int n, std::uint64_t basis) {
  StateVector sv(n, basis);
  for (const auto& g : gates) sv.apply(g);
  return sv;
}

std::vector<std::vector<cd>> unitary_of(const std::vector<SimGate>& gates, int n) {
  std::vector<std::vector<cd>> cols;
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) cols.push_back(simulate_statevector(gates, n, k).amplitudes());
  return cols;
}

double phase_insensitive_distance(const std::vector<std::vector<cd>>& u, const std::vector<std::vector<cd>>& v) {
  if (u.size() != v.size()) return INFINITY;
  // Global phase from the largest entry of v.
  cd phase{1.0, 0.0};
  double best = -1;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (u[j].size() != v[j].size()) return INFINITY;
    for (std::size_t i = 0; i < v[j].size(); ++i)
      if (std::abs(v[j][i]) > best && std::abs(u[j][i]) > 1e-12) {
        best = std::abs(v[j][i]);
        phase = u[j][i] / v[j][i];
        phase /= std::abs(phase);
      }
  }
  double d = 0;
  for (std::size_t j = 0; j < v.size(); ++j)
    for (std::size_t i = 0; i < v[j].size(); ++i) d = std::max(d, std::abs(u[j][i] - phase * v[j][i]));
  return d;
}

}  // namespace qcc
