// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "qcc/expr.hpp"

namespace qcc::detail {

enum class Tok : unsigned char {
  Ident, Int, Real, Punct, Define, End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;  // identifier, punctuation, or define name
  Value value;       // numeric literal or define value
  SrcPos pos;
};

// Tokenizes ScaffLite. `#define NAME value` lines become Define tokens.
std::vector<Token> lex_scafflite(const std::string& text, const std::string& origin);

}  // namespace qcc::detail
