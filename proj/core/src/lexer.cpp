// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#include "lexer.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>

namespace qcc::detail {

namespace {

class Lexer {
 public:
  Lexer(const std::string& text, const std::string& origin) : s_(text), origin_(origin) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.pos = {line_, col_};
      if (i_ >= s_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      char c = s_[i_];
      if (c == '#') {
        out.push_back(directive());
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::Ident;
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
          t.text += advance();
        out.push_back(t);
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '.' && i_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_ + 1])))) {
        out.push_back(number());
      } else {
        out.push_back(punct());
      }
    }
  }

 private:
  char peek(std::size_t k = 0) const { return i_ + k < s_.size() ? s_[i_ + k] : '\0'; }

  char advance() {
    char c = s_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  [[noreturn]] void fail(const std::string& msg, SrcPos pos) {
    throw Error(ErrorKind::Syntax, msg, pos, origin_);
  }

  void skip_space() {
    for (;;) {
      while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) advance();
      if (peek() == '/' && peek(1) == '/') {
        while (i_ < s_.size() && s_[i_] != '\n') advance();
      } else if (peek() == '/' && peek(1) == '*') {
        SrcPos start{line_, col_};
        advance();
        advance();
        while (i_ < s_.size() && !(peek() == '*' && peek(1) == '/')) advance();
        if (i_ >= s_.size()) fail("unterminated comment", start);
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  Token number() {
    Token t;
    t.pos = {line_, col_};
    std::string text;
    bool real = false;
    while (std::isdigit(static_cast<unsigned char>(peek()))) text += advance();
    if (peek() == '.') {
      real = true;
      text += advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) text += advance();
    }
    if (peek() == 'e' || peek() == 'E') {
      std::size_t k = 1;
      if (peek(1) == '+' || peek(1) == '-') k = 2;
      if (std::isdigit(static_cast<unsigned char>(peek(k)))) {
        real = true;
        for (std::size_t j = 0; j < k; ++j) text += advance();
        while (std::isdigit(static_cast<unsigned char>(peek()))) text += advance();
      }
    }
    if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')
      fail("malformed number '" + text + peek() + "'", t.pos);
    t.text = text;
    if (real) {
      t.kind = Tok::Real;
      t.value = Value::of_real(std::strtod(text.c_str(), nullptr));
    } else {
      t.kind = Tok::Int;
      errno = 0;
      long long v = std::strtoll(text.c_str(), nullptr, 10);
      if (errno == ERANGE) fail("integer literal out of range", t.pos);
      t.value = Value::of_int(v);
    }
    return t;
  }

  Token directive() {
    Token t;
    t.pos = {line_, col_};
    advance();  // '#'
    std::string word;
    while (std::isalpha(static_cast<unsigned char>(peek()))) word += advance();
    if (word != "define") fail("unsupported directive '#" + word + "'", t.pos);
    auto hspace = [&] {
      while (peek() == ' ' || peek() == '\t') advance();
    };
    hspace();
    if (!(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_'))
      fail("expected a name after #define", {line_, col_});
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') t.text += advance();
    hspace();
    bool neg = false;
    if (peek() == '-' || peek() == '+') neg = advance() == '-';
    hspace();
    if (!(std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.'))
      fail("#define value must be an integer or real literal", {line_, col_});
    Token num = number();
    t.kind = Tok::Define;
    t.value = num.value;
    if (neg) {
      if (t.value.is_real) t.value.d = -t.value.d;
      else t.value.i = -t.value.i;
    }
    // rest of the line may hold a comment only
    hspace();
    if (peek() == '/' && peek(1) == '/') {
      while (i_ < s_.size() && s_[i_] != '\n') advance();
    } else if (peek() == '/' && peek(1) == '*') {
      skip_space();
    } else if (i_ < s_.size() && peek() != '\n' && peek() != '\r') {
      fail("unexpected text after #define value", {line_, col_});
    }
    return t;
  }

  Token punct() {
    static const char* kTwo[] = {":=", "+=", "-=", "*=", "/=", "++", "--", "<=", ">=", "==", "!=", "&&", "||"};
    Token t;
    t.kind = Tok::Punct;
    t.pos = {line_, col_};
    for (const char* p : kTwo) {
      if (peek() == p[0] && peek(1) == p[1]) {
        t.text = std::string{advance()};
        t.text += advance();
        return t;
      }
    }
    char c = peek();
    static const std::string kOne = "(){}[],;:=+-*/%<>!$";
    if (kOne.find(c) == std::string::npos)
      fail(std::string("unexpected character '") + c + "'", t.pos);
    t.text = std::string{advance()};
    return t;
  }

  const std::string& s_;
  const std::string& origin_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<Token> lex_scafflite(const std::string& text, const std::string& origin) {
  return Lexer(text, origin).run();
}

}  // namespace qcc::detail
