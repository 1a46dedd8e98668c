// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

// Execution-based flattening: the classical control is interpreted directly
// and each specialization is emitted once, on first use.

#include "flatten_common.hpp"
#include "qcc/ctqg.hpp"
#include "qcc/flatten.hpp"

namespace qcc {

namespace {

class DynamicFlattener {
 public:
  DynamicFlattener(const Program& p, const FlattenOptions& opt, FlattenStats& stats)
      : p_(p), opt_(opt), stats_(stats), namer_(p) {
    ctx_.resolve = [this](const CallInst& c, const Frame& f) { return call(c, f); };
    ctx_.iterate_classical = true;
    ctx_.steps = &stats_.steps;
    ctx_.step_limit = opt.step_limit;
    ctx_.origin = p.origin;
  }

  SpecializedProgram run() {
    if (const ModuleDef* main = p_.find(p_.entry)) {
      out_.entry = specialize(*main, Frame(main->vars.size()));
    } else {
      for (const ModuleDef* m : detail::ctqg_roots(p_)) out_.entry = specialize(*m, Frame(m->vars.size()));
    }
    stats_.modules = out_.modules.size();
    return std::move(out_);
  }

 private:
  detail::CalleeInfo call(const CallInst& c, const Frame& f) {
    const ModuleDef* callee = p_.find(c.callee);
    if (!callee) throw Error(ErrorKind::UndefinedModule, "no module '" + c.callee + "'");
    std::vector<Value> args;
    for (const auto& a : c.cargs) args.push_back(eval(*a, f));
    const std::string name = specialize(*callee, detail::bind_params(*callee, args));
    detail::CalleeInfo info{name, {}};
    const FlatModule* fm = out_.find(name);
    for (int i = 0; i < fm->num_params; ++i) info.param_sizes.push_back(fm->regs[i].size);
    return info;
  }

  std::string specialize(const ModuleDef& m, const Frame& f) {
    MemoKey key = detail::make_key(m, f);
    if (opt_.memoize) {
      auto it = out_.specialization_index.find(key);
      if (it != out_.specialization_index.end()) {
        ++stats_.memo_hits;
        return it->second;
      }
    }
    const std::string name = namer_.name_for(m, f);
    FlatModule fm = m.is_ctqg ? ctqg_flat_module(m, f, name) : detail::emit_module(m, f, name, key, ctx_);
    fm.key = key;
    out_.add(std::move(fm));
    out_.specialization_index.emplace(std::move(key), name);
    return name;
  }

  const Program& p_;
  FlattenOptions opt_;
  FlattenStats& stats_;
  detail::SpecNamer namer_;
  detail::EmitContext ctx_;
  SpecializedProgram out_;
};

}  // namespace

SpecializedProgram flatten_dynamic(const Program& p, const FlattenOptions& opt, FlattenStats* stats) {
  FlattenStats local;
  SpecializedProgram out = DynamicFlattener(p, opt, stats ? *stats : local).run();
  validate(out);
  return out;
}

}  // namespace qcc
