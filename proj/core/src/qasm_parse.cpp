// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <functional>
#include <map>

#include "qcc/error.hpp"
#include "qcc/qasm.hpp"

namespace qcc {

namespace {

enum class T { Word, Num, Punct, End };

struct Tok {
  T kind = T::End;
  std::string text;
  SrcPos pos;
};

bool word_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '+' || c == '-';
}
bool num_char(char c) {
  return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+' || c == 'e' || c == 'E';
}

std::vector<Tok> lex(std::string_view s, const std::string& origin) {
  std::vector<Tok> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto adv = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      adv(1);
      continue;
    }
    if (c == '/' && i + 1 < s.size() && s[i + 1] == '/') {
      while (i < s.size() && s[i] != '\n') adv(1);
      continue;
    }
    Tok t;
    t.pos = {line, col};
    std::size_t j = i;
    if (word_start(c)) {
      while (j < s.size() && word_char(s[j])) ++j;
      t.kind = T::Word;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
      while (j < s.size() && num_char(s[j])) ++j;
      t.kind = T::Num;
    } else if (std::string_view("(){}[],;:*").find(c) != std::string_view::npos) {
      j = i + 1;
      t.kind = T::Punct;
    } else {
      throw Error(ErrorKind::Syntax, std::string("unexpected character '") + c + "'", t.pos, origin);
    }
    t.text = std::string(s.substr(i, j - i));
    adv(j - i);
    out.push_back(std::move(t));
  }
  Tok end;
  end.pos = {line, col};
  out.push_back(end);
  return out;
}

struct RawArg {
  bool is_num = false;
  double num = 0.0;
  std::string name;
  bool indexed = false;
  std::int64_t lo = 0, hi = 0;
  bool slice = false;
  SrcPos pos;
};

struct RawStmt {
  enum class Kind { Op, Repeat } kind = Kind::Op;
  std::string word;
  std::vector<RawArg> args;
  std::uint64_t count = 0;
  std::vector<RawStmt> body;
  SrcPos pos;
};

struct RawModule {
  std::string name;
  std::vector<std::string> params;
  std::vector<std::pair<std::string, std::int64_t>> locals;
  std::vector<RawStmt> body;
  bool implicit = false;
  SrcPos pos;
};

class Parser {
 public:
  Parser(std::vector<Tok> toks, std::string origin) : t_(std::move(toks)), origin_(std::move(origin)) {}

  std::vector<RawModule> file() {
    std::vector<RawModule> mods;
    RawModule top;
    top.name = "main";
    top.implicit = true;
    while (peek().kind != T::End) {
      if (is_word("module")) {
        mods.push_back(module());
      } else if (is_word("qbit")) {
        top.locals.push_back(decl());
      } else {
        top.body.push_back(statement());
      }
    }
    if (!top.body.empty() || !top.locals.empty() || mods.empty()) {
      for (const auto& m : mods)
        if (m.name == "main")
          throw Error(ErrorKind::Syntax, "statements outside a module next to an explicit module main", m.pos,
                      origin_);
      mods.push_back(std::move(top));
    }
    return mods;
  }

 private:
  const Tok& peek() const { return t_[k_]; }
  bool is_word(std::string_view w) const { return peek().kind == T::Word && peek().text == w; }
  bool is_punct(char c) const { return peek().kind == T::Punct && peek().text[0] == c; }
  [[noreturn]] void fail(const std::string& msg) const {
    const Tok& t = peek();
    throw Error(ErrorKind::Syntax, msg + (t.kind == T::End ? " at end of input" : " near '" + t.text + "'"), t.pos,
                origin_);
  }
  void expect(char c) {
    if (!is_punct(c)) fail(std::string("expected '") + c + "'");
    ++k_;
  }
  std::string word(const char* what) {
    if (peek().kind != T::Word) fail(std::string("expected ") + what);
    return t_[k_++].text;
  }
  std::int64_t integer() {
    if (peek().kind != T::Num) fail("expected an integer");
    const std::string& s = peek().text;
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) fail("expected an integer");
    ++k_;
    return v;
  }

  RawModule module() {
    RawModule m;
    m.pos = peek().pos;
    ++k_;
    m.name = word("module name");
    expect('(');
    if (!is_punct(')')) {
      do {
        if (!is_word("qbit")) fail("expected 'qbit*'");
        ++k_;
        expect('*');
        m.params.push_back(word("parameter name"));
      } while (is_punct(',') && (++k_, true));
    }
    expect(')');
    expect('{');
    while (!is_punct('}')) {
      if (peek().kind == T::End) fail("missing '}'");
      if (is_word("qbit")) m.locals.push_back(decl());
      else m.body.push_back(statement());
    }
    ++k_;
    return m;
  }

  std::pair<std::string, std::int64_t> decl() {
    ++k_;
    std::string name = word("register name");
    expect('[');
    std::int64_t n = integer();
    if (n < 1) fail("register size must be positive");
    expect(']');
    expect(';');
    return {name, n};
  }

  RawStmt statement() {
    RawStmt s;
    s.pos = peek().pos;
    if (is_word("repeat")) {
      ++k_;
      s.kind = RawStmt::Kind::Repeat;
      expect('(');
      std::int64_t n = integer();
      if (n < 0) fail("repeat count must be non-negative");
      s.count = static_cast<std::uint64_t>(n);
      expect(')');
      expect('{');
      while (!is_punct('}')) {
        if (peek().kind == T::End) fail("missing '}'");
        if (is_word("qbit")) fail("declarations are not allowed inside repeat");
        s.body.push_back(statement());
      }
      ++k_;
      return s;
    }
    s.word = word("a gate, call or declaration");
    expect('(');
    if (!is_punct(')')) {
      do s.args.push_back(argument());
      while (is_punct(',') && (++k_, true));
    }
    expect(')');
    expect(';');
    return s;
  }

  RawArg argument() {
    RawArg a;
    a.pos = peek().pos;
    if (peek().kind == T::Num) {
      const std::string& txt = peek().text;
      char* end = nullptr;
      a.num = std::strtod(txt.c_str(), &end);
      if (end != txt.c_str() + txt.size()) fail("malformed number");
      a.is_num = true;
      ++k_;
      return a;
    }
    a.name = word("an operand");
    if (a.name == "inf" || a.name == "nan") {
      a.is_num = true;
      a.num = std::strtod(a.name.c_str(), nullptr);
      return a;
    }
    if (is_punct('[')) {
      ++k_;
      a.indexed = true;
      a.lo = a.hi = integer();
      if (is_punct(':')) {
        ++k_;
        a.hi = integer();
        a.slice = true;
      }
      expect(']');
      if (a.lo < 0 || a.hi < 0) fail("negative qubit index");
    }
    return a;
  }

  std::vector<Tok> t_;
  std::size_t k_ = 0;
  std::string origin_;
};

class Builder {
 public:
  Builder(std::vector<RawModule> raw, std::string origin) : raw_(std::move(raw)), origin_(std::move(origin)) {}

  SpecializedProgram build() {
    for (std::size_t i = 0; i < raw_.size(); ++i) {
      if (!by_name_.emplace(raw_[i].name, static_cast<int>(i)).second)
        throw Error(ErrorKind::Syntax, "duplicate module '" + raw_[i].name + "'", raw_[i].pos, origin_);
      if (gate_from_name(raw_[i].name))
        throw Error(ErrorKind::Syntax, "module name '" + raw_[i].name + "' is a gate name", raw_[i].pos, origin_);
    }
    // Register tables with sizes still open for parameters and undeclared
    // registers of an implicit main.
    sizes_.resize(raw_.size());
    for (std::size_t i = 0; i < raw_.size(); ++i) {
      auto& m = raw_[i];
      for (const auto& p : m.params) add_reg(i, p, -1, m.pos);
      for (const auto& [n, s] : m.locals) add_reg(i, n, s, m.pos);
      scan_refs(i, m.body);
    }
    infer_sizes();
    SpecializedProgram p;
    for (std::size_t i = 0; i < raw_.size(); ++i) p.add(convert(i));
    validate(p);
    return p;
  }

 private:
  struct RegInfo {
    std::string name;
    std::int64_t size;  // -1 while unknown
    std::int64_t max_index = -1;
    bool is_param;
  };

  [[noreturn]] void fail(const std::string& msg, SrcPos pos) const {
    throw Error(ErrorKind::Syntax, msg, pos, origin_);
  }

  void add_reg(std::size_t m, const std::string& name, std::int64_t size, SrcPos pos) {
    for (const auto& r : sizes_[m])
      if (r.name == name) fail("duplicate register '" + name + "'", pos);
    sizes_[m].push_back({name, size, -1, size < 0});
  }

  int reg_index(std::size_t m, const std::string& name, SrcPos pos, bool create) {
    for (std::size_t r = 0; r < sizes_[m].size(); ++r)
      if (sizes_[m][r].name == name) return static_cast<int>(r);
    if (!create) fail("undeclared register '" + name + "'", pos);
    sizes_[m].push_back({name, -1, -1, false});
    return static_cast<int>(sizes_[m].size()) - 1;
  }

  void scan_refs(std::size_t m, const std::vector<RawStmt>& body) {
    for (const auto& s : body) {
      if (s.kind == RawStmt::Kind::Repeat) {
        scan_refs(m, s.body);
        continue;
      }
      for (const auto& a : s.args) {
        if (a.is_num) continue;
        int r = reg_index(m, a.name, a.pos, raw_[m].implicit);
        if (a.indexed) sizes_[m][r].max_index = std::max({sizes_[m][r].max_index, a.lo, a.hi});
      }
    }
  }

  std::int64_t arg_len(std::size_t m, const RawArg& a) {
    if (a.indexed) return std::abs(a.hi - a.lo) + 1;
    for (const auto& r : sizes_[m])
      if (r.name == a.name) return r.size;
    return -1;
  }

  // One sweep over the call sites; returns whether a size was learned.
  bool propagate(bool check) {
    bool changed = false;
    std::function<void(std::size_t, const std::vector<RawStmt>&)> walk = [&](std::size_t m,
                                                                           const std::vector<RawStmt>& body) {
      for (const auto& s : body) {
        if (s.kind == RawStmt::Kind::Repeat) {
          walk(m, s.body);
          continue;
        }
        auto it = by_name_.find(s.word);
        if (it == by_name_.end() || gate_from_name(s.word)) continue;
        auto& callee = sizes_[it->second];
        const auto& cm = raw_[it->second];
        if (s.args.size() != cm.params.size())
          fail("'" + s.word + "' takes " + std::to_string(cm.params.size()) + " argument(s)", s.pos);
        for (std::size_t j = 0; j < s.args.size(); ++j) {
          if (s.args[j].is_num) fail("module arguments must be qubit registers", s.args[j].pos);
          std::int64_t len = arg_len(m, s.args[j]);
          if (len < 0) continue;
          if (callee[j].size < 0) {
            callee[j].size = len;
            changed = true;
          } else if (check && callee[j].size != len) {
            fail("argument " + std::to_string(j + 1) + " of '" + s.word + "' has " + std::to_string(len) +
                     " qubit(s), other call sites pass " + std::to_string(callee[j].size),
                 s.args[j].pos);
          }
        }
      }
    };
    for (std::size_t m = 0; m < raw_.size(); ++m) walk(m, raw_[m].body);
    return changed;
  }

  void infer_sizes() {
    while (propagate(false)) {
    }
    for (auto& regs : sizes_)
      for (auto& r : regs)
        if (r.size < 0) r.size = std::max<std::int64_t>(r.max_index + 1, 1);
    while (propagate(false)) {
    }
    propagate(true);
  }

  FlatModule convert(std::size_t mi) {
    const RawModule& rm = raw_[mi];
    FlatModule m;
    m.name = rm.name;
    m.key.module = rm.name;
    m.num_params = static_cast<int>(rm.params.size());
    for (const auto& r : sizes_[mi]) m.regs.push_back({r.name, r.size, r.is_param});
    // Undeclared registers of an implicit main come after the declared ones.
    m.body = body(mi, rm.body);
    return m;
  }

  std::vector<FInst> body(std::size_t mi, const std::vector<RawStmt>& raw) {
    std::vector<FInst> out;
    for (const auto& s : raw) {
      if (s.kind == RawStmt::Kind::Repeat) {
        FRepeat r;
        r.count = s.count;
        r.body = body(mi, s.body);
        out.push_back(FInst{std::move(r)});
        continue;
      }
      if (auto g = gate_from_name(s.word)) {
        out.push_back(gate(mi, *g, s));
        continue;
      }
      if (!by_name_.count(s.word)) fail("unknown gate or module '" + s.word + "'", s.pos);
      FCall c;
      c.callee = s.word;
      for (const auto& a : s.args) {
        FArg fa;
        fa.reg = reg_index(mi, a.name, a.pos, false);
        if (!a.indexed) {
          fa.lo = 0;
          fa.len = sizes_[mi][fa.reg].size;
        } else {
          if (a.hi < a.lo) fail("call arguments must be ascending slices", a.pos);
          fa.lo = a.lo;
          fa.len = a.hi - a.lo + 1;
        }
        c.args.push_back(fa);
      }
      out.push_back(FInst{std::move(c)});
    }
    return out;
  }

  FInst gate(std::size_t mi, GateKind k, const RawStmt& s) {
    const std::size_t arity = static_cast<std::size_t>(gate_arity(k));
    const std::size_t want = arity + (gate_has_angle(k) ? 1 : 0);
    if (s.args.size() != want)
      fail(std::string(gate_name(k)) + " takes " + std::to_string(want) + " operand(s)", s.pos);
    double angle = 0.0;
    if (gate_has_angle(k)) {
      if (!s.args.back().is_num) fail("expected an angle", s.args.back().pos);
      angle = s.args.back().num;
    }
    bool any_slice = false;
    for (std::size_t j = 0; j < arity; ++j) {
      const RawArg& a = s.args[j];
      if (a.is_num || !a.indexed) fail("gate operands must be register elements", a.pos);
      any_slice |= a.slice;
    }
    if (!any_slice) {
      FGate g;
      g.kind = k;
      g.angle = angle;
      for (std::size_t j = 0; j < arity; ++j)
        g.qubits.push_back({reg_index(mi, s.args[j].name, s.args[j].pos, false), s.args[j].lo});
      return FInst{std::move(g)};
    }
    FForall f;
    f.kind = k;
    f.angle = angle;
    f.count = -1;
    for (std::size_t j = 0; j < arity; ++j) {
      const RawArg& a = s.args[j];
      if (!a.slice) fail("forall operands must all be slices", a.pos);
      std::int64_t len = std::abs(a.hi - a.lo) + 1;
      if (f.count >= 0 && len != f.count) fail("forall slices differ in length", a.pos);
      f.count = len;
      f.ops.push_back({reg_index(mi, a.name, a.pos, false), a.lo, a.hi >= a.lo ? 1 : -1});
    }
    return FInst{std::move(f)};
  }

  std::vector<RawModule> raw_;
  std::string origin_;
  std::map<std::string, int> by_name_;
  std::vector<std::vector<RegInfo>> sizes_;
};

}  // namespace

SpecializedProgram parse_qasm_hl(std::string_view text, const std::string& origin) {
  auto raw = Parser(lex(text, origin), origin).file();
  try {
    return Builder(std::move(raw), origin).build();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Syntax || e.kind() == ErrorKind::UndefinedModule) throw;
    throw Error(ErrorKind::Syntax, e.message(), e.pos(), origin);
  }
}

}  // namespace qcc
