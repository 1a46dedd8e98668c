// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

// Pieces shared by both flattening strategies: specialization keys and
// names, and the emitter that turns a module with a known classical frame
// into a FlatModule.

#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "qcc/flat.hpp"
#include "qcc/ir.hpp"

namespace qcc::detail {

struct CalleeInfo {
  std::string name;
  std::vector<std::int64_t> param_sizes;
};

using CallResolver = std::function<CalleeInfo(const CallInst&, const Frame&)>;

struct EmitContext {
  CallResolver resolve;
  bool iterate_classical = false;
  std::uint64_t* steps = nullptr;
  std::uint64_t step_limit = UINT64_MAX;
  std::string origin;
};

// Frame of m with its classical parameters bound, converted to their types.
Frame bind_params(const ModuleDef& m, const std::vector<Value>& args);

MemoKey make_key(const ModuleDef& m, const Frame& f);

Value convert_to(const VarInfo& v, const Value& x);

std::int64_t array_size(const ModuleDef& m, int a, const Frame& f);

class SpecNamer {
 public:
  explicit SpecNamer(const Program& p);
  // "<orig>_<p1>_..." in parameter declaration order; modules without
  // classical parameters keep their name. Collisions append '_'.
  std::string name_for(const ModuleDef& m, const Frame& f);

 private:
  std::set<std::string> used_;
  std::set<std::string> originals_;
};

FlatModule emit_module(const ModuleDef& m, Frame frame, const std::string& name, MemoKey key,
                       const EmitContext& ctx);

// Modules to emit when the program has no entry module: every CTQG module
// without classical parameters. Returns the entry name to use.
std::vector<const ModuleDef*> ctqg_roots(const Program& p);

}  // namespace qcc::detail
