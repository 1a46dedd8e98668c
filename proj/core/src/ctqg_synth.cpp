// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <set>

#include "qcc/ctqg.hpp"

namespace qcc {

bool RevGate::touches(Line l) const {
  if (t == l) return true;
  if (kind != Kind::Not && c1 == l) return true;
  return kind == Kind::Toffoli && c2 == l;
}

void RevCounts::add(const RevGate& g) {
  switch (g.kind) {
    case RevGate::Kind::Not: ++nots; break;
    case RevGate::Kind::Cnot: ++cnots; break;
    case RevGate::Kind::Toffoli: ++toffolis; break;
  }
}

RevCounts count_gates(const Fragment& f) {
  RevCounts c;
  for (const auto& g : f) c.add(g);
  return c;
}

std::vector<Line> AncillaManager::acquire(std::size_t n) {
  std::vector<Line> out;
  std::sort(free_.begin(), free_.end(), std::greater<>());
  while (out.size() < n && !free_.empty()) {
    out.push_back(free_.back());
    free_.pop_back();
  }
  while (out.size() < n) out.push_back(first_ + static_cast<Line>(created_++));
  live_ += n;
  return out;
}

void AncillaManager::release(const std::vector<Line>& lines) {
  free_.insert(free_.end(), lines.begin(), lines.end());
  live_ -= lines.size();
}

namespace {

void check_disjoint(const std::vector<Line>& a, const std::vector<Line>& b, const char* what) {
  std::set<Line> s(a.begin(), a.end());
  if (s.size() != a.size()) throw Error(ErrorKind::Overlap, std::string(what) + ": register repeats a line");
  for (Line l : b)
    if (s.count(l)) throw Error(ErrorKind::Overlap, std::string(what) + ": operands share line " + std::to_string(l));
  std::set<Line> t(b.begin(), b.end());
  if (t.size() != b.size()) throw Error(ErrorKind::Overlap, std::string(what) + ": register repeats a line");
}

void append(Fragment& out, const Fragment& f) { out.insert(out.end(), f.begin(), f.end()); }

Fragment reversed(Fragment f) {
  std::reverse(f.begin(), f.end());
  return f;
}

std::vector<Line> concat(std::vector<Line> a, const std::vector<Line>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::uint64_t mask(std::size_t n) { return n >= 64 ? ~0ULL : (1ULL << n) - 1; }

Fragment load_const(const std::vector<Line>& lines, std::uint64_t k) {
  Fragment f;
  for (std::size_t i = 0; i < lines.size() && i < 64; ++i)
    if ((k >> i) & 1) f.push_back(RevGate::x(lines[i]));
  return f;
}

}  // namespace

Fragment synth_adder(const std::vector<Line>& a, const std::vector<Line>& b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::Width, "adder operands differ in width: " + std::to_string(a.size()) + " vs " +
                                      std::to_string(b.size()));
  if (a.empty()) throw Error(ErrorKind::Width, "adder needs width >= 1");
  check_disjoint(a, b, "adder");
  // Ripple addition without carry lines: the carries travel through the
  // addend register x, which is restored; y accumulates the sum.
  const std::vector<Line>& x = b;
  const std::vector<Line>& y = a;
  const int n = static_cast<int>(a.size());
  Fragment f;
  for (int i = 1; i < n; ++i) f.push_back(RevGate::cnot(y[i], x[i]));
  for (int i = n - 2; i >= 1; --i) f.push_back(RevGate::cnot(x[i + 1], x[i]));
  for (int i = 0; i <= n - 2; ++i) f.push_back(RevGate::toffoli(x[i + 1], y[i], x[i]));
  for (int i = n - 1; i >= 1; --i) {
    f.push_back(RevGate::cnot(y[i], x[i]));
    f.push_back(RevGate::toffoli(x[i], y[i - 1], x[i - 1]));
  }
  for (int i = 1; i <= n - 2; ++i) f.push_back(RevGate::cnot(x[i + 1], x[i]));
  for (int i = 0; i < n; ++i) f.push_back(RevGate::cnot(y[i], x[i]));
  return f;
}

Fragment synth_subtractor(const std::vector<Line>& a, const std::vector<Line>& b) {
  return reversed(synth_adder(a, b));
}

Fragment synth_add_const(const std::vector<Line>& a, std::uint64_t k, AncillaManager& mgr) {
  k &= mask(a.size());
  if (k == 0) return {};
  std::vector<Line> anc = mgr.acquire(a.size());
  Fragment load = load_const(anc, k);
  Fragment f = load;
  append(f, synth_adder(a, anc));
  append(f, load);
  mgr.release(anc);
  return f;
}

Fragment synth_sub_const(const std::vector<Line>& a, std::uint64_t k, AncillaManager& mgr) {
  k &= mask(a.size());
  if (k == 0) return {};
  std::vector<Line> anc = mgr.acquire(a.size());
  Fragment load = load_const(anc, k);
  Fragment f = load;
  append(f, synth_subtractor(a, anc));
  append(f, load);
  mgr.release(anc);
  return f;
}

Fragment decompose_multi_control(const std::vector<Line>& controls, Line target,
                                 const std::vector<Line>& borrowable) {
  const std::size_t k = controls.size();
  if (k == 0) return {RevGate::x(target)};
  if (k == 1) return {RevGate::cnot(target, controls[0])};
  if (k == 2) return {RevGate::toffoli(target, controls[0], controls[1])};
  std::set<Line> used(controls.begin(), controls.end());
  used.insert(target);
  if (used.size() != k + 1) throw Error(ErrorKind::Overlap, "multi-control gate repeats a line");
  auto d_it = std::find_if(borrowable.begin(), borrowable.end(), [&](Line l) { return !used.count(l); });
  if (d_it == borrowable.end())
    throw Error(ErrorKind::NoBorrowAvailable,
                std::to_string(k) + "-control NOT needs one line outside the gate to borrow");
  const Line d = *d_it;
  const std::size_t half = (k + 1) / 2;
  std::vector<Line> A(controls.begin(), controls.begin() + half);
  std::vector<Line> B(controls.begin() + half, controls.end());
  std::vector<Line> poolA = concat(B, {target});
  std::vector<Line> poolB = A;
  for (Line l : borrowable)
    if (l != d) {
      poolA.push_back(l);
      poolB.push_back(l);
    }
  Fragment ga = decompose_multi_control(A, d, poolA);
  Fragment gb = decompose_multi_control(concat(B, {d}), target, poolB);
  Fragment f;
  append(f, ga);
  append(f, gb);
  append(f, ga);
  append(f, gb);
  return f;
}

Fragment controlize(const Fragment& body, Line ctrl, Line num_lines) {
  Fragment f;
  f.reserve(body.size());
  for (const auto& g : body) {
    if (g.touches(ctrl))
      throw Error(ErrorKind::ControlOverlap, "control line " + std::to_string(ctrl) + " is used inside the body");
    switch (g.kind) {
      case RevGate::Kind::Not:
        f.push_back(RevGate::cnot(g.t, ctrl));
        break;
      case RevGate::Kind::Cnot:
        f.push_back(RevGate::toffoli(g.t, g.c1, ctrl));
        break;
      case RevGate::Kind::Toffoli: {
        std::vector<Line> borrow;
        for (Line l = 0; l < num_lines && borrow.empty(); ++l)
          if (!g.touches(l) && l != ctrl) borrow.push_back(l);
        append(f, decompose_multi_control({g.c1, g.c2, ctrl}, g.t, borrow));
        break;
      }
    }
  }
  return f;
}

Fragment synth_multiplier(const std::vector<Line>& a, const std::vector<Line>& b, const std::vector<Line>& c,
                          AncillaManager& mgr, const std::vector<Line>& extra, bool* used_scratch) {
  const std::size_t n = b.size();
  if (n == 0 || c.size() != n || a.size() != 2 * n)
    throw Error(ErrorKind::Width, "multiplier needs widths 2n, n, n");
  check_disjoint(a, concat(b, c), "multiplier");
  check_disjoint(b, c, "multiplier");
  if (used_scratch) *used_scratch = false;
  Line num_lines = mgr.end();
  for (const auto* r : {&a, &b, &c, &extra})
    for (Line l : *r) num_lines = std::max(num_lines, l + 1);
  Fragment f;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Line> target(a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
    std::vector<Line> dirty(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(i));
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) dirty.push_back(c[j]);
    dirty.insert(dirty.end(), extra.begin(), extra.end());
    std::vector<Line> scratch;
    if (dirty.size() < n - i) {
      scratch = mgr.acquire(n - i - dirty.size());
      dirty.insert(dirty.end(), scratch.begin(), scratch.end());
      num_lines = std::max(num_lines, mgr.end());
      if (used_scratch) *used_scratch = true;
    }
    dirty.resize(n - i);
    // target += b + dirty*2^n, then target[n..] -= dirty; both under c[i].
    std::vector<Line> addend = concat(b, dirty);
    append(f, controlize(synth_adder(target, addend), c[i], num_lines));
    std::vector<Line> high(target.begin() + static_cast<std::ptrdiff_t>(n), target.end());
    append(f, controlize(synth_subtractor(high, dirty), c[i], num_lines));
    if (!scratch.empty()) mgr.release(scratch);
  }
  return f;
}

namespace {

// e := [a < b] with fresh lines e, f; returns compute part only.
Fragment less_than_into(const std::vector<Line>& a, const std::vector<Line>& b, Line out, AncillaManager& mgr) {
  std::vector<Line> ef = mgr.acquire(2);
  std::vector<Line> ax = concat(a, {ef[0]});
  std::vector<Line> bx = concat(b, {ef[1]});
  Fragment sub = synth_subtractor(ax, bx);
  Fragment f = sub;
  f.push_back(RevGate::cnot(out, ef[0]));
  append(f, reversed(sub));
  mgr.release(ef);
  return f;
}

}  // namespace

Fragment synth_compare(const std::vector<Line>& a, const std::vector<Line>& b, CmpOp op, Line out,
                       AncillaManager& mgr) {
  if (a.size() != b.size()) throw Error(ErrorKind::Width, "compared registers differ in width");
  check_disjoint(a, b, "compare");
  if (std::find(a.begin(), a.end(), out) != a.end() || std::find(b.begin(), b.end(), out) != b.end())
    throw Error(ErrorKind::Overlap, "compare: result line is an operand");
  Fragment f;
  switch (op) {
    case CmpOp::Lt: return less_than_into(a, b, out, mgr);
    case CmpOp::Gt: return less_than_into(b, a, out, mgr);
    case CmpOp::Ge:
      f = less_than_into(a, b, out, mgr);
      f.push_back(RevGate::x(out));
      return f;
    case CmpOp::Le:
      f = less_than_into(b, a, out, mgr);
      f.push_back(RevGate::x(out));
      return f;
    case CmpOp::Eq:
    case CmpOp::Ne: {
      Fragment sub = synth_subtractor(a, b);
      Fragment flip;
      for (Line l : a) flip.push_back(RevGate::x(l));
      std::vector<Line> borrow = b;
      for (Line l = 0; l < mgr.end(); ++l) borrow.push_back(l);
      f = sub;
      append(f, flip);
      append(f, decompose_multi_control(a, out, borrow));
      append(f, flip);
      append(f, reversed(sub));
      if (op == CmpOp::Ne) f.push_back(RevGate::x(out));
      return f;
    }
  }
  return f;
}

Fragment synth_compare_const(const std::vector<Line>& a, std::int64_t k, CmpOp op, Line out, AncillaManager& mgr) {
  const std::size_t n = a.size();
  const bool fits = k >= 0 && (n >= 64 || static_cast<std::uint64_t>(k) <= mask(n));
  if (!fits) {
    // Every register value lies on one side of k.
    bool holds = k < 0 ? cmp_holds(op, Value::of_int(1), Value::of_int(0))
                       : cmp_holds(op, Value::of_int(0), Value::of_int(1));
    return holds ? Fragment{RevGate::x(out)} : Fragment{};
  }
  std::vector<Line> kb = mgr.acquire(n);
  Fragment load = load_const(kb, static_cast<std::uint64_t>(k));
  Fragment f = load;
  append(f, synth_compare(a, kb, op, out, mgr));
  append(f, load);
  mgr.release(kb);
  return f;
}

Bits simulate_reversible(const Fragment& gates, Line width, Bits s) {
  if (s.size() != width)
    throw Error(ErrorKind::WidthMismatch, "input has " + std::to_string(s.size()) + " bits, circuit has " +
                                               std::to_string(width) + " lines");
  for (const auto& g : gates) {
    if (g.t >= width || (g.kind != RevGate::Kind::Not && g.c1 >= width) ||
        (g.kind == RevGate::Kind::Toffoli && g.c2 >= width))
      throw Error(ErrorKind::WidthMismatch, "gate addresses a line beyond the circuit width");
    switch (g.kind) {
      case RevGate::Kind::Not: s[g.t] ^= 1; break;
      case RevGate::Kind::Cnot: s[g.t] ^= s[g.c1]; break;
      case RevGate::Kind::Toffoli: s[g.t] ^= s[g.c1] & s[g.c2]; break;
    }
  }
  return s;
}

Bits simulate_reversible(const RevCircuit& c, Bits input) {
  return simulate_reversible(c.gates, c.width, std::move(input));
}

std::uint64_t read_register(const Bits& state, const std::vector<Line>& lines) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < lines.size() && i < 64; ++i)
    if (state[lines[i]]) v |= 1ULL << i;
  return v;
}

void write_register(Bits& state, const std::vector<Line>& lines, std::uint64_t v) {
  for (std::size_t i = 0; i < lines.size(); ++i) state[lines[i]] = i < 64 ? (v >> i) & 1 : 0;
}

}  // namespace qcc
