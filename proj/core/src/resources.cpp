// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <sstream>

#include "qcc/analysis.hpp"
#include "qcc/expr.hpp"

namespace qcc {

BigCount ResourceRow::total_gates() const {
  BigCount t = 0;
  for (const auto& g : gates) t += g;
  return t;
}

const ResourceRow* ResourceTable::find(const std::string& module) const {
  auto it = index.find(module);
  return it == index.end() ? nullptr : &rows[it->second];
}

namespace {

std::string join_ints(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
  return s;
}

std::string join_reals(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + format_real(v[i]);
  return s;
}

std::string display_name(const ResourceRow& r) { return r.key.module.empty() ? r.module : r.key.module; }

std::vector<std::vector<std::string>> cells(const ResourceTable& t) {
  std::vector<std::vector<std::string>> out;
  for (const auto& r : t.rows) {
    std::vector<std::string> row{display_name(r), join_ints(r.key.ints), join_reals(r.key.reals), r.qubits.str()};
    for (const auto& g : r.gates) row.push_back(g.str());
    out.push_back(std::move(row));
  }
  return out;
}

class Counter {
 public:
  explicit Counter(const SpecializedProgram& p) : p_(p) {}

  ResourceTable run() {
    for (int mi : p_.postorder()) {
      const FlatModule& m = p_.modules[mi];
      ResourceRow row;
      row.module = m.name;
      row.key = m.key;
      BigCount widest = 0;
      add(m.body, 1, row, widest);
      for (std::size_t r = m.num_params; r < m.regs.size(); ++r) row.qubits += m.regs[r].size;
      row.qubits += widest;
      t_.index[m.name] = t_.rows.size();
      t_.rows.push_back(std::move(row));
    }
    return std::move(t_);
  }

 private:
  void add(const std::vector<FInst>& body, const BigCount& times, ResourceRow& row, BigCount& widest) {
    for (const auto& inst : body) {
      if (const auto* g = std::get_if<FGate>(&inst.v)) {
        row.gates[static_cast<int>(g->kind)] += times;
      } else if (const auto* f = std::get_if<FForall>(&inst.v)) {
        row.gates[static_cast<int>(f->kind)] += times * f->count;
      } else if (const auto* c = std::get_if<FCall>(&inst.v)) {
        const ResourceRow* callee = t_.find(c->callee);
        if (!callee) throw Error(ErrorKind::UndefinedModule, "no module '" + c->callee + "'");
        for (int k = 0; k < kNumGateKinds; ++k) row.gates[k] += times * callee->gates[k];
        widest = std::max(widest, callee->qubits);
      } else {
        const auto& r = std::get<FRepeat>(inst.v);
        add(r.body, times * r.count, row, widest);
      }
    }
  }

  const SpecializedProgram& p_;
  ResourceTable t_;
};

}  // namespace

std::string ResourceTable::text() const {
  std::vector<std::string> head{"Module", "IntegerParam", "DoubleParam", "Qubit"};
  for (GateKind k : kAllGateKinds) head.emplace_back(gate_name(k));
  auto body = cells(*this);
  std::vector<std::size_t> width(head.size());
  for (std::size_t c = 0; c < head.size(); ++c) {
    width[c] = head[c].size();
    for (const auto& r : body) width[c] = std::max(width[c], r[c].size());
  }
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& r) {
    std::string s;
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c) s += "  ";
      const std::string pad(width[c] - r[c].size(), ' ');
      s += c < 3 ? r[c] + pad : pad + r[c];
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    os << s << "\n";
  };
  line(head);
  for (const auto& r : body) line(r);
  return os.str();
}

std::string ResourceTable::csv() const {
  std::ostringstream os;
  os << "module,int_params,real_params,qubits";
  for (GateKind k : kAllGateKinds) os << "," << gate_name(k);
  os << "\n";
  for (const auto& r : cells(*this)) {
    for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "," : "") << r[c];
    os << "\n";
  }
  return os.str();
}

ResourceTable estimate_resources(const SpecializedProgram& p) { return Counter(p).run(); }

}  // namespace qcc
