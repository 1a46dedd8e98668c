// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "qcc/flat.hpp"
#include "qcc/frontend.hpp"
#include "qcc/ir.hpp"

namespace qcc::testing {

std::string fixture_path(const std::string& name);
SourceProgram fixture_source(const std::string& name);
Ast fixture_ast(const std::string& name);
Program fixture_program(const std::string& name);

// Quantum programs small enough to expand gate by gate.
const std::vector<std::string>& expandable_fixtures();
// Programs that call CTQG modules.
const std::vector<std::string>& ctqg_program_fixtures();
// The timing suite: multi-level call graphs, slack leaves, repeats.
const std::vector<std::string>& timing_fixtures();

}  // namespace qcc::testing
