// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "qcc/frontend.hpp"
#include "qcc/ir.hpp"

namespace qcc {

namespace {

class ModuleResolver {
 public:
  ModuleResolver(const Ast& ast, const AstModule& am, const std::map<std::string, const AstModule*>& mods)
      : ast_(ast), am_(am), mods_(mods) {}

  ModuleDef run() {
    m_.name = am_.name;
    m_.pos = am_.pos;
    m_.is_ctqg = am_.is_ctqg;
    // classical params first so sizes may reference them
    for (const auto& p : am_.params) {
      if (p.kind == ParamKind::Int || p.kind == ParamKind::Double) {
        if (m_.find_var(p.name) >= 0) fail(ErrorKind::Semantic, "duplicate parameter '" + p.name + "'", p.pos);
        m_.vars.push_back({p.name, p.kind == ParamKind::Double, true});
      }
    }
    for (const auto& p : am_.params) {
      if (p.kind == ParamKind::Int || p.kind == ParamKind::Double) {
        int slot = m_.find_var(p.name);
        m_.classical_params.push_back(slot);
        m_.params.push_back({false, slot});
        continue;
      }
      if (m_.find_array(p.name) >= 0 || m_.find_var(p.name) >= 0)
        fail(ErrorKind::Semantic, "duplicate parameter '" + p.name + "'", p.pos);
      QubitArrayDecl d;
      d.name = p.name;
      d.is_param = true;
      d.pos = p.pos;
      d.size_expr = bind_size(p.size, p.pos);
      if (d.size_expr->is_literal()) d.size = check_size(d.size_expr->literal(), p.pos, p.kind == ParamKind::QInt);
      if (p.kind == ParamKind::QInt) {
        if (!d.size_expr->is_literal()) fail(ErrorKind::Width, "register width must be a constant", p.pos);
        m_.registers.push_back({p.name, static_cast<int>(d.size), true, false});
      }
      m_.params.push_back({true, static_cast<int>(m_.arrays.size())});
      m_.arrays.push_back(d);
      ++m_.num_qubit_params;
    }
    if (m_.is_ctqg) {
      for (const auto& p : am_.params)
        if (p.kind == ParamKind::QubitArray)
          fail(ErrorKind::TypeMismatch, "CTQG module parameters must be qint registers", p.pos);
      m_.ctqg_body = ctqg_block(am_.body, 0);
      mark_outputs();
    } else {
      for (const auto& p : am_.params)
        if (p.kind == ParamKind::QInt)
          fail(ErrorKind::TypeMismatch, "qint registers are only allowed in CTQG modules", p.pos);
      block(am_.body, m_.body);
    }
    return std::move(m_);
  }

 private:
  [[noreturn]] void fail(ErrorKind k, const std::string& msg, SrcPos pos) const {
    throw Error(k, msg, pos, ast_.origin);
  }

  std::int64_t check_size(const Value& v, SrcPos pos, bool reg) const {
    if (v.is_real) fail(ErrorKind::TypeMismatch, "size must be an integer", pos);
    if (reg && (v.i < 1 || v.i > 64)) fail(ErrorKind::Width, "register width must be in 1..64", pos);
    if (v.i < 1) fail(ErrorKind::Semantic, "qubit array size must be positive", pos);
    return v.i;
  }

  ExprPtr bind_size(const ExprPtr& e, SrcPos pos) {
    (void)pos;
    Frame empty;
    return fold(bind_classical(e), empty);
  }

  // Binds Var slots in a classical expression.
  ExprPtr bind_classical(const ExprPtr& e) {
    switch (e->op) {
      case ExprOp::Int:
      case ExprOp::Real:
        return e;
      case ExprOp::Var: {
        int slot = m_.find_var(e->name);
        if (slot < 0) {
          if (m_.find_array(e->name) >= 0)
            fail(ErrorKind::TypeMismatch, "qubit array '" + e->name + "' used as a classical value", e->pos);
          fail(ErrorKind::UndefinedName, "undefined name '" + e->name + "'", e->pos);
        }
        return make_var(e->name, slot, e->pos);
      }
      case ExprOp::Index:
        fail(ErrorKind::TypeMismatch, "qubit reference '" + e->name + "[...]' used as a classical value", e->pos);
      default: {
        auto n = std::make_shared<Expr>(*e);
        for (auto& a : n->args) a = bind_classical(a);
        return n;
      }
    }
  }

  int declare_var(const std::string& name, bool is_real, SrcPos pos) {
    if (m_.find_array(name) >= 0) fail(ErrorKind::Semantic, "'" + name + "' is already a qubit array", pos);
    int slot = m_.find_var(name);
    if (slot >= 0) {
      if (m_.vars[slot].is_real != is_real || m_.vars[slot].is_param)
        fail(ErrorKind::Semantic, "conflicting declaration of '" + name + "'", pos);
      return slot;
    }
    m_.vars.push_back({name, is_real, false});
    return static_cast<int>(m_.vars.size()) - 1;
  }

  int lookup_var(const std::string& name, SrcPos pos) const {
    int slot = m_.find_var(name);
    if (slot < 0) {
      if (m_.find_array(name) >= 0)
        fail(ErrorKind::TypeMismatch, "'" + name + "' is a qubit array, not a classical variable", pos);
      fail(ErrorKind::UndefinedName, "undefined variable '" + name + "'", pos);
    }
    return slot;
  }

  QRef qubit_ref(const ExprPtr& e) {
    if (e->op != ExprOp::Index) {
      if (e->op == ExprOp::Var && m_.find_array(e->name) >= 0)
        fail(ErrorKind::TypeMismatch, "gate operand '" + e->name + "' must name one element, e.g. " + e->name + "[0]", e->pos);
      fail(ErrorKind::TypeMismatch, "gate operand must be a qubit element", e->pos);
    }
    int a = m_.find_array(e->name);
    if (a < 0) {
      if (m_.find_var(e->name) >= 0)
        fail(ErrorKind::TypeMismatch, "'" + e->name + "' is not a qubit array", e->pos);
      fail(ErrorKind::UndefinedName, "undefined qubit array '" + e->name + "'", e->pos);
    }
    return QRef{a, bind_classical(e->args[0])};
  }

  void block(const std::vector<AstStmt>& in, std::vector<Inst>& out) {
    for (const auto& s : in) statement(s, out);
  }

  void statement(const AstStmt& s, std::vector<Inst>& out) {
    using K = AstStmt::Kind;
    switch (s.kind) {
      case K::Block:
        block(s.body, out);
        return;
      case K::QubitDecl:
        for (const auto& [name, size] : s.decls) {
          if (m_.find_array(name) >= 0 || m_.find_var(name) >= 0)
            fail(ErrorKind::Semantic, "duplicate declaration of '" + name + "'", s.pos);
          QubitArrayDecl d;
          d.name = name;
          d.pos = s.pos;
          d.size_expr = bind_size(size, s.pos);
          for (int slot : slots_of(*d.size_expr))
            if (!m_.vars[slot].is_param)
              fail(ErrorKind::Semantic, "local array size may only use constants and parameters", s.pos);
          if (d.size_expr->is_literal()) d.size = check_size(d.size_expr->literal(), s.pos, false);
          m_.arrays.push_back(d);
        }
        return;
      case K::VarDecl:
        for (const auto& [name, init] : s.decls) {
          ExprPtr value = init ? bind_classical(init) : nullptr;
          int slot = declare_var(name, s.is_real, s.pos);
          if (value) out.push_back(Inst{AssignInst{slot, value}, s.pos});
        }
        return;
      case K::Assign: {
        int slot = lookup_var(s.var, s.pos);
        if (m_.vars[slot].is_param)
          fail(ErrorKind::Semantic, "cannot assign to parameter '" + s.var + "'", s.pos);
        out.push_back(Inst{AssignInst{slot, bind_classical(s.value)}, s.pos});
        return;
      }
      case K::Gate: {
        if (static_cast<int>(s.operands.size()) != gate_arity(s.gate))
          fail(ErrorKind::ArityMismatch,
               std::string(gate_name(s.gate)) + " takes " + std::to_string(gate_arity(s.gate)) +
                   " qubit operand(s), got " + std::to_string(s.operands.size()),
               s.pos);
        if (gate_has_angle(s.gate) != static_cast<bool>(s.angle))
          fail(ErrorKind::ArityMismatch, std::string(gate_name(s.gate)) + (s.angle ? " takes no angle" : " needs an angle"), s.pos);
        GateInst g;
        g.kind = s.gate;
        for (const auto& o : s.operands) g.qubits.push_back(qubit_ref(o));
        if (s.angle) g.angle = bind_classical(s.angle);
        out.push_back(Inst{std::move(g), s.pos});
        return;
      }
      case K::Call:
        out.push_back(Inst{call(s), s.pos});
        return;
      case K::For: {
        LoopInst l;
        l.var = s.declares_var ? declare_var(s.var, false, s.pos) : lookup_var(s.var, s.pos);
        if (m_.vars[l.var].is_real) fail(ErrorKind::TypeMismatch, "loop variable must be an int", s.pos);
        if (m_.vars[l.var].is_param) fail(ErrorKind::Semantic, "cannot use parameter '" + s.var + "' as loop variable", s.pos);
        l.start = bind_classical(s.start);
        l.end = bind_classical(s.end);
        l.step = bind_classical(s.step);
        l.cmp = s.cmp;
        block(s.body, l.body);
        std::set<int> written;
        assigned(l.body, written);
        if (written.count(l.var))
          fail(ErrorKind::Semantic, "loop body may not assign the loop variable '" + s.var + "'", s.pos);
        for (int slot : slots_of(*l.end, *l.step))
          if (written.count(slot))
            fail(ErrorKind::Semantic, "loop bound uses '" + m_.vars[slot].name + "' which the body assigns", s.pos);
        out.push_back(Inst{std::move(l), s.pos});
        return;
      }
      case K::If: {
        CondInst c;
        c.guard = bind_classical(s.cond);
        block(s.body, c.then_body);
        block(s.else_body, c.else_body);
        out.push_back(Inst{std::move(c), s.pos});
        return;
      }
      case K::QintDecl:
      case K::CtqgOp:
      case K::CtqgIf:
        fail(ErrorKind::Semantic, "CTQG statement in a non-CTQG module", s.pos);
    }
  }

  std::vector<int> slots_of(const Expr& a) const {
    std::vector<int> out;
    collect_slots(a, out);
    return out;
  }
  std::vector<int> slots_of(const Expr& a, const Expr& b) const {
    std::vector<int> out;
    collect_slots(a, out);
    collect_slots(b, out);
    return out;
  }

  static void assigned(const std::vector<Inst>& body, std::set<int>& out) {
    for (const auto& i : body) {
      if (auto* a = std::get_if<AssignInst>(&i.v)) out.insert(a->var);
      else if (auto* l = std::get_if<LoopInst>(&i.v)) {
        out.insert(l->var);
        assigned(l->body, out);
      } else if (auto* c = std::get_if<CondInst>(&i.v)) {
        assigned(c->then_body, out);
        assigned(c->else_body, out);
      }
    }
  }

  CallInst call(const AstStmt& s) {
    auto it = mods_.find(s.callee);
    if (it == mods_.end()) fail(ErrorKind::UndefinedModule, "call to undefined module '" + s.callee + "'", s.pos);
    const AstModule& callee = *it->second;
    if (s.callee == "main") fail(ErrorKind::Semantic, "main cannot be called", s.pos);
    if (callee.params.size() != s.args.size())
      fail(ErrorKind::ArityMismatch,
           "'" + s.callee + "' takes " + std::to_string(callee.params.size()) + " argument(s), got " +
               std::to_string(s.args.size()),
           s.pos);
    CallInst c;
    c.callee = s.callee;
    for (std::size_t i = 0; i < s.args.size(); ++i) {
      const AstParam& p = callee.params[i];
      const AstArg& a = s.args[i];
      if (p.kind == ParamKind::Int || p.kind == ParamKind::Double) {
        if (a.is_slice || (a.expr->op == ExprOp::Var && m_.find_array(a.expr->name) >= 0) ||
            a.expr->op == ExprOp::Index)
          fail(ErrorKind::TypeMismatch, "argument " + std::to_string(i + 1) + " of '" + s.callee +
                   "' must be a classical value", a.pos);
        c.cargs.push_back(bind_classical(a.expr));
        continue;
      }
      QArg q;
      std::string name = a.is_slice ? a.name : a.expr->name;
      if (!a.is_slice && a.expr->op != ExprOp::Var && a.expr->op != ExprOp::Index)
        fail(ErrorKind::TypeMismatch, "argument " + std::to_string(i + 1) + " of '" + s.callee +
                 "' must be a qubit array", a.pos);
      q.array = m_.find_array(name);
      if (q.array < 0) {
        if (m_.find_var(name) >= 0)
          fail(ErrorKind::TypeMismatch, "argument " + std::to_string(i + 1) + " of '" + s.callee +
                   "' must be a qubit array, '" + name + "' is classical", a.pos);
        fail(ErrorKind::UndefinedName, "undefined qubit array '" + name + "'", a.pos);
      }
      if (a.is_slice) {
        q.whole = false;
        q.lo = bind_classical(a.lo);
        q.hi = bind_classical(a.hi);
      } else if (a.expr->op == ExprOp::Index) {
        q.whole = false;
        q.lo = bind_classical(a.expr->args[0]);
        q.hi = q.lo;
      }
      // static size check when both sides are known
      Frame empty;
      ExprPtr psize = fold(p.size, empty);
      std::optional<std::int64_t> want, have;
      if (psize->is_literal()) want = psize->literal().as_int();
      if (q.whole) {
        if (m_.arrays[q.array].size >= 0) have = m_.arrays[q.array].size;
      } else {
        ExprPtr lo = fold(q.lo, empty), hi = fold(q.hi, empty);
        if (lo->is_literal() && hi->is_literal()) have = hi->literal().as_int() - lo->literal().as_int() + 1;
      }
      if (want && have && *want != *have)
        fail(ErrorKind::TypeMismatch,
             "argument " + std::to_string(i + 1) + " of '" + s.callee + "' has " + std::to_string(*have) +
                 " qubit(s), parameter '" + p.name + "' expects " + std::to_string(*want),
             a.pos);
      c.qargs.push_back(q);
    }
    return c;
  }

  // ---- CTQG ----

  int find_register(const std::string& name) const {
    for (std::size_t i = 0; i < m_.registers.size(); ++i)
      if (m_.registers[i].name == name) return static_cast<int>(i);
    return -1;
  }

  bool mentions_register(const Expr& e) const {
    if (e.op == ExprOp::Var && find_register(e.name) >= 0) return true;
    for (const auto& a : e.args)
      if (mentions_register(*a)) return true;
    return false;
  }

  ExprPtr ctqg_constant(const ExprPtr& e, SrcPos pos) {
    if (mentions_register(*e))
      fail(ErrorKind::TypeMismatch, "register used where a classical constant is expected", pos);
    return bind_classical(e);
  }

  std::vector<CtqgStmt> ctqg_block(const std::vector<AstStmt>& in, int depth) {
    std::vector<CtqgStmt> out;
    for (const auto& s : in) ctqg_statement(s, depth, out);
    return out;
  }

  void ctqg_statement(const AstStmt& s, int depth, std::vector<CtqgStmt>& out) {
    using K = AstStmt::Kind;
    CtqgStmt c;
    c.pos = s.pos;
    switch (s.kind) {
      case K::Block:
        for (const auto& b : s.body) ctqg_statement(b, depth, out);
        return;
      case K::QintDecl:
        for (const auto& [name, width] : s.decls) {
          if (m_.find_array(name) >= 0 || m_.find_var(name) >= 0)
            fail(ErrorKind::Semantic, "duplicate declaration of '" + name + "'", s.pos);
          QubitArrayDecl d;
          d.name = name;
          d.pos = s.pos;
          d.size_expr = bind_size(width, s.pos);
          if (!d.size_expr->is_literal()) fail(ErrorKind::Width, "register width must be a constant", s.pos);
          d.size = check_size(d.size_expr->literal(), s.pos, true);
          m_.arrays.push_back(d);
          m_.registers.push_back({name, static_cast<int>(d.size), false, false});
        }
        return;
      case K::VarDecl:
        for (const auto& [name, init] : s.decls) {
          ExprPtr value = init ? ctqg_constant(init, s.pos) : nullptr;
          int slot = declare_var(name, s.is_real, s.pos);
          if (value) {
            CtqgStmt a;
            a.kind = CtqgStmt::Kind::Assign;
            a.pos = s.pos;
            a.var = slot;
            a.value = value;
            out.push_back(a);
          }
        }
        return;
      case K::Assign:
        c.kind = CtqgStmt::Kind::Assign;
        c.var = lookup_var(s.var, s.pos);
        c.value = ctqg_constant(s.value, s.pos);
        out.push_back(c);
        return;
      case K::For: {
        c.kind = CtqgStmt::Kind::For;
        c.var = s.declares_var ? declare_var(s.var, false, s.pos) : lookup_var(s.var, s.pos);
        if (m_.vars[c.var].is_real) fail(ErrorKind::TypeMismatch, "loop variable must be an int", s.pos);
        c.start = ctqg_constant(s.start, s.pos);
        c.end = ctqg_constant(s.end, s.pos);
        c.step = ctqg_constant(s.step, s.pos);
        c.cmp = s.cmp;
        c.body = ctqg_block(s.body, depth + 1);
        out.push_back(c);
        return;
      }
      case K::CtqgOp: {
        c.reg = find_register(s.var);
        if (c.reg < 0) fail(ErrorKind::UndefinedName, "undefined register '" + s.var + "'", s.pos);
        const Expr& v = *s.value;
        if (v.op == ExprOp::Var && find_register(v.name) >= 0) {
          if (s.ctqg_op == CtqgOpKind::Init)
            fail(ErrorKind::Semantic, "':=' takes a constant; use '+=' to add a register", s.pos);
          c.kind = s.ctqg_op == CtqgOpKind::Add ? CtqgStmt::Kind::AddReg : CtqgStmt::Kind::SubReg;
          c.src1 = find_register(v.name);
          check_width(c.reg, c.src1, s.pos);
        } else if (v.op == ExprOp::Mul && v.args[0]->op == ExprOp::Var && v.args[1]->op == ExprOp::Var &&
                   find_register(v.args[0]->name) >= 0 && find_register(v.args[1]->name) >= 0) {
          if (s.ctqg_op != CtqgOpKind::Add)
            fail(ErrorKind::Semantic, "register products are only supported with '+='", s.pos);
          c.kind = CtqgStmt::Kind::AddMul;
          c.src1 = find_register(v.args[0]->name);
          c.src2 = find_register(v.args[1]->name);
          int n = m_.registers[c.src1].width;
          if (m_.registers[c.src2].width != n || m_.registers[c.reg].width != 2 * n)
            fail(ErrorKind::Width, "r += s * t needs widths 2n, n, n", s.pos);
        } else {
          c.value = ctqg_constant(s.value, s.pos);
          c.kind = s.ctqg_op == CtqgOpKind::Init  ? CtqgStmt::Kind::Init
                   : s.ctqg_op == CtqgOpKind::Add ? CtqgStmt::Kind::AddConst
                                                  : CtqgStmt::Kind::SubConst;
          if (c.kind == CtqgStmt::Kind::Init && depth != 0)
            fail(ErrorKind::Semantic, "':=' is only allowed at the top level of a CTQG module", s.pos);
        }
        out.push_back(c);
        return;
      }
      case K::CtqgIf: {
        c.kind = CtqgStmt::Kind::If;
        const Expr& cond = *s.cond;
        static const std::map<ExprOp, CmpOp> kCmp = {{ExprOp::Lt, CmpOp::Lt}, {ExprOp::Le, CmpOp::Le},
                                                     {ExprOp::Gt, CmpOp::Gt}, {ExprOp::Ge, CmpOp::Ge},
                                                     {ExprOp::Eq, CmpOp::Eq}, {ExprOp::Ne, CmpOp::Ne}};
        auto it = kCmp.find(cond.op);
        if (it == kCmp.end() || cond.args[0]->op != ExprOp::Var || find_register(cond.args[0]->name) < 0)
          fail(ErrorKind::Semantic, "$if needs a comparison 'register OP register|constant'", s.pos);
        c.cmp = it->second;
        c.reg = find_register(cond.args[0]->name);
        const ExprPtr& rhs = cond.args[1];
        if (rhs->op == ExprOp::Var && find_register(rhs->name) >= 0) {
          c.src1 = find_register(rhs->name);
          check_width(c.reg, c.src1, s.pos);
        } else {
          c.value = ctqg_constant(rhs, s.pos);
        }
        c.body = ctqg_block(s.body, depth + 1);
        c.else_body = ctqg_block(s.else_body, depth + 1);
        out.push_back(c);
        return;
      }
      default:
        fail(ErrorKind::Semantic, "only register statements, $if, for and int variables are allowed in a CTQG module", s.pos);
    }
  }

  void check_width(int a, int b, SrcPos pos) const {
    if (m_.registers[a].width != m_.registers[b].width)
      fail(ErrorKind::Width, "registers '" + m_.registers[a].name + "' and '" + m_.registers[b].name +
               "' differ in width", pos);
  }

  // A register whose first touching statement is a top-level `:=` is zero on
  // entry by contract; any other `:=` is rejected.
  void mark_outputs() {
    std::set<int> touched;
    for (const auto& s : m_.ctqg_body) {
      if (s.kind == CtqgStmt::Kind::Init) {
        if (touched.count(s.reg))
          fail(ErrorKind::Semantic, "':=' on register '" + m_.registers[s.reg].name +
                   "' after it was already used; a register can only be initialised while still zero", s.pos);
        if (m_.registers[s.reg].is_param) m_.registers[s.reg].output = true;
      }
      touch(s, touched);
    }
  }

  static void touch(const CtqgStmt& s, std::set<int>& t) {
    if (s.reg >= 0) t.insert(s.reg);
    if (s.src1 >= 0) t.insert(s.src1);
    if (s.src2 >= 0) t.insert(s.src2);
    for (const auto& b : s.body) touch(b, t);
    for (const auto& b : s.else_body) touch(b, t);
  }

  const Ast& ast_;
  const AstModule& am_;
  const std::map<std::string, const AstModule*>& mods_;
  ModuleDef m_;
};

}  // namespace

Program resolve_semantics(const Ast& ast) {
  std::map<std::string, const AstModule*> mods;
  for (const auto& m : ast.modules) {
    if (!mods.emplace(m.name, &m).second)
      throw Error(ErrorKind::Semantic, "duplicate module '" + m.name + "'", m.pos, ast.origin);
    if (gate_from_name(m.name))
      throw Error(ErrorKind::Semantic, "module name '" + m.name + "' is a gate name", m.pos, ast.origin);
  }
  auto main = mods.find("main");
  // A file of CTQG modules alone is a library of oracles and needs no main.
  bool all_ctqg = !ast.modules.empty() &&
                  std::all_of(ast.modules.begin(), ast.modules.end(), [](const AstModule& m) { return m.is_ctqg; });
  if (main == mods.end() && !all_ctqg)
    throw Error(ErrorKind::UndefinedModule, "program has no module 'main'", {}, ast.origin);
  if (main != mods.end() && !main->second->params.empty())
    throw Error(ErrorKind::Semantic, "module 'main' takes no parameters", main->second->pos, ast.origin);
  if (main != mods.end() && main->second->is_ctqg)
    throw Error(ErrorKind::Semantic, "module 'main' cannot be a CTQG module", main->second->pos, ast.origin);

  Program p;
  p.origin = ast.origin;
  for (const auto& m : ast.modules) {
    ModuleDef def = ModuleResolver(ast, m, mods).run();
    classify_loops(def);
    p.add(std::move(def));
  }
  build_call_graph(p);
  return p;
}

Program compile_source(const SourceProgram& src) { return resolve_semantics(parse_scafflite(src)); }

SourceProgram read_source_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return SourceProgram{ss.str(), path};
}

}  // namespace qcc
