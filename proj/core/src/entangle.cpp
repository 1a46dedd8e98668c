// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

// Conservative entanglement tracking over one module. Classes only grow by
// merging; a qubit leaves its class when it is measured or when its last
// (target, controls) record is dropped by a reverse operation.

#include <algorithm>
#include <set>
#include <sstream>

#include "qcc/analysis.hpp"
#include "qcc/qasm.hpp"

namespace qcc {

std::string qubit_label(const FlatModule& m, const QubitId& q) { return m.regs[q.reg].name + std::to_string(q.idx); }

std::vector<std::vector<std::string>> EntanglementResult::final_names(const FlatModule& m) const {
  std::vector<std::vector<std::string>> out;
  for (const auto& c : final_classes) {
    out.emplace_back();
    for (const auto& q : c) out.back().push_back(qubit_label(m, q));
  }
  return out;
}

namespace {

struct Record {
  std::vector<QubitId> controls;  // sorted
  GateKind kind;
  std::uint64_t ts;
};

class Tracker {
 public:
  Tracker(const FlatModule& m, const EntanglementSummaries& callees) : m_(m), callees_(callees) {
    r_.module = m.name;
  }

  EntanglementResult run() {
    for (std::size_t i = 0; i < m_.body.size(); ++i) statement(m_.body[i], i);
    for (const auto& [id, members] : classes_)
      if (members.size() >= 2) r_.final_classes.push_back(members);
    r_.measured.assign(measured_.begin(), measured_.end());
    r_.timestamps = ts_;
    return std::move(r_);
  }

 private:
  std::vector<std::string> labels(const std::vector<QubitId>& qs) const {
    std::vector<std::string> out;
    for (const auto& q : qs) out.push_back(qubit_label(m_, q));
    return out;
  }

  void note(EntanglementNote::Kind k, const std::string& stmt, std::vector<QubitId> qs) {
    r_.notes.push_back(EntanglementNote{k, top_, seq_, stmt, labels(qs)});
  }

  std::vector<QubitId> merge(const std::vector<QubitId>& ops) {
    std::vector<QubitId> members;
    std::set<QubitId> in;
    auto add = [&](const QubitId& q) {
      if (in.insert(q).second) members.push_back(q);
    };
    for (const auto& q : ops) add(q);
    std::set<int> old;
    for (const auto& q : ops) {
      auto it = class_of_.find(q);
      if (it == class_of_.end() || !old.insert(it->second).second) continue;
      for (const auto& x : classes_[it->second]) add(x);
    }
    for (int id : old) classes_.erase(id);
    const int id = next_class_++;
    for (const auto& q : members) class_of_[q] = id;
    classes_[id] = members;
    return members;
  }

  void leave(const QubitId& q) {
    auto it = class_of_.find(q);
    if (it == class_of_.end()) return;
    auto& members = classes_[it->second];
    members.erase(std::find(members.begin(), members.end(), q));
    if (members.empty()) classes_.erase(it->second);
    class_of_.erase(it);
  }

  void gate(GateKind kind, const std::vector<QubitId>& qs, const std::string& stmt) {
    ++ts_;
    if (kind == GateKind::MeasZ) {
      leave(qs[0]);
      records_.erase(qs[0]);
      measured_.insert(qs[0]);
      changed_[qs[0]] = ts_;
      note(EntanglementNote::Kind::Measure, stmt, qs);
      return;
    }
    if (kind != GateKind::CNOT && kind != GateKind::Toffoli) {
      for (const auto& q : qs) changed_[q] = ts_;
      return;
    }
    const QubitId t = qs[0];
    std::vector<QubitId> controls(qs.begin() + 1, qs.end());
    std::sort(controls.begin(), controls.end());
    auto& recs = records_[t];
    for (auto it = recs.rbegin(); it != recs.rend(); ++it) {
      if (it->kind != kind || it->controls != controls) continue;
      const std::uint64_t since = it->ts;
      const bool untouched = std::all_of(controls.begin(), controls.end(), [&](const QubitId& c) {
        auto ch = changed_.find(c);
        return ch == changed_.end() || ch->second <= since;
      });
      if (!untouched) break;
      recs.erase(std::next(it).base());
      if (recs.empty()) {
        records_.erase(t);
        leave(t);
      }
      changed_[t] = ts_;
      note(EntanglementNote::Kind::Reverse, stmt, {t});
      return;
    }
    recs.push_back(Record{controls, kind, ts_});
    changed_[t] = ts_;
    note(EntanglementNote::Kind::Create, stmt, merge(qs));
  }

  void call(const FCall& c, const std::string& stmt) {
    ++ts_;
    auto it = callees_.find(c.callee);
    for (const auto& a : c.args)
      for (std::int64_t k = 0; k < a.len; ++k) changed_[QubitId{a.reg, a.lo + k}] = ts_;
    if (it == callees_.end()) return;
    for (const auto& cls : it->second.final_classes) {
      std::vector<QubitId> mapped;
      for (const auto& q : cls)
        if (q.reg < static_cast<int>(c.args.size())) mapped.push_back(QubitId{c.args[q.reg].reg, c.args[q.reg].lo + q.idx});
      if (mapped.size() >= 2) note(EntanglementNote::Kind::Call, stmt, merge(mapped));
    }
  }

  void statement(const FInst& inst, std::size_t top) {
    top_ = top;
    const std::size_t my_seq = seq_;
    const std::string stmt = qasm_statement(m_, inst);
    if (const auto* g = std::get_if<FGate>(&inst.v)) {
      std::vector<QubitId> qs;
      for (const auto& q : g->qubits) qs.push_back(QubitId{q.reg, q.idx});
      gate(g->kind, qs, stmt);
      ++seq_;
    } else if (const auto* f = std::get_if<FForall>(&inst.v)) {
      for (std::int64_t t = 0; t < f->count; ++t) {
        std::vector<QubitId> qs;
        for (const auto& o : f->ops) qs.push_back(QubitId{o.reg, o.start + t * o.step});
        seq_ = my_seq;
        gate(f->kind, qs, stmt);
      }
      seq_ = my_seq + 1;
    } else if (const auto* c = std::get_if<FCall>(&inst.v)) {
      call(*c, stmt);
      ++seq_;
    } else {
      ++seq_;
      // One pass over the body: a second pass could only reverse records.
      for (const auto& x : std::get<FRepeat>(inst.v).body) statement(x, top);
    }
  }

  const FlatModule& m_;
  const EntanglementSummaries& callees_;
  EntanglementResult r_;
  std::map<QubitId, std::vector<Record>> records_;
  std::map<QubitId, int> class_of_;
  std::map<int, std::vector<QubitId>> classes_;
  int next_class_ = 0;
  std::map<QubitId, std::uint64_t> changed_;
  std::set<QubitId> measured_;
  std::uint64_t ts_ = 0;
  std::size_t top_ = 0, seq_ = 0;
};

std::string joined(const std::vector<std::string>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i];
  return s;
}

class Annotator {
 public:
  Annotator(const FlatModule& m, const EntanglementResult& r) : m_(m) {
    for (const auto& n : r.notes) by_seq_[n.seq].push_back(&n);
  }

  std::string run(const EntanglementResult& r) {
    os_ << "module " << m_.name << " ( ";
    for (int i = 0; i < m_.num_params; ++i) os_ << (i ? " , qbit* " : "qbit* ") << m_.regs[i].name;
    os_ << " )\n{\n";
    for (std::size_t i = m_.num_params; i < m_.regs.size(); ++i)
      os_ << "  qbit " << m_.regs[i].name << "[" << m_.regs[i].size << "];\n";
    body(m_.body, 1);
    os_ << "}\n// Final entanglements:\n";
    for (const auto& c : r.final_names(m_)) os_ << "// (" << joined(c) << ");\n";
    return os_.str();
  }

 private:
  void body(const std::vector<FInst>& insts, int depth) {
    const std::string ind(2 * depth, ' ');
    for (const auto& inst : insts) {
      const std::size_t my = seq_++;
      std::vector<std::string> same_line, next_lines;
      std::set<std::string> dedup;
      if (auto it = by_seq_.find(my); it != by_seq_.end())
        for (const auto* n : it->second) {
          if (n->kind == EntanglementNote::Kind::Reverse) same_line.push_back(joined(n->qubits));
          else if (n->kind != EntanglementNote::Kind::Measure && dedup.insert(joined(n->qubits)).second)
            next_lines.push_back(joined(n->qubits));
        }
      os_ << ind << qasm_statement(m_, inst);
      if (!same_line.empty()) os_ << " // " << joined(same_line);
      os_ << "\n";
      for (const auto& l : next_lines) os_ << ind << "// " << l << "\n";
      if (const auto* r = std::get_if<FRepeat>(&inst.v)) {
        body(r->body, depth + 1);
        os_ << ind << "}\n";
      }
    }
  }

  const FlatModule& m_;
  std::map<std::size_t, std::vector<const EntanglementNote*>> by_seq_;
  std::ostringstream os_;
  std::size_t seq_ = 0;
};

}  // namespace

EntanglementResult analyze_entanglement(const FlatModule& m, const EntanglementSummaries& callees) {
  return Tracker(m, callees).run();
}

std::vector<Diagnostic> check_disentangled(const FlatModule& m, const EntanglementResult& r) {
  std::vector<Diagnostic> out;
  std::set<QubitId> measured(r.measured.begin(), r.measured.end());
  for (const auto& cls : r.final_classes)
    for (const auto& q : cls) {
      if (q.reg < m.num_params || measured.count(q)) continue;
      std::vector<std::string> others;
      for (const auto& x : cls)
        if (!(x == q)) others.push_back(qubit_label(m, x));
      std::int64_t inst = static_cast<std::int64_t>(m.body.size());
      out.push_back(Diagnostic{Severity::Warning, "disentangled-qubit",
                               "local qubit " + qubit_label(m, q) + " is still entangled with (" + joined(others) +
                                   ") at the end of the module; it was neither uncomputed nor measured",
                               m.name, inst});
    }
  return out;
}

std::string annotate_entanglement(const FlatModule& m, const EntanglementResult& r) { return Annotator(m, r).run(r); }

ProgramEntanglement analyze_program_entanglement(const SpecializedProgram& p) {
  ProgramEntanglement out;
  for (int mi : p.postorder()) {
    const FlatModule& m = p.modules[mi];
    EntanglementResult r = analyze_entanglement(m, out.modules);
    // The entry's registers are the program's outputs; nothing above it can uncompute them.
    if (m.name != p.entry)
      for (auto& d : check_disentangled(m, r)) out.diagnostics.push_back(std::move(d));
    out.annotated += annotate_entanglement(m, r);
    out.modules.emplace(m.name, std::move(r));
  }
  return out;
}

}  // namespace qcc
