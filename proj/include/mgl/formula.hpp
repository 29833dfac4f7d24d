#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mgl/error.hpp"
#include "mgl/type.hpp"

namespace mgl {

struct Formula;
struct LogicTerm;
using FormulaPtr = std::shared_ptr<const Formula>;
using LTermPtr = std::shared_ptr<const LogicTerm>;

// Terms of many-sorted logic, including the three Hilbert binding operators.
struct LogicTerm {
  enum class Kind { Const, Var, FunApp, Epsilon, Tau, Iota };

  Kind kind;
  std::string name;           // Const/Var/FunApp symbol; binders: bound variable
  std::string sort;           // the term's sort (binders: the bound variable's sort)
  std::vector<LTermPtr> args; // FunApp
  FormulaPtr body;            // binders
  int index = 0;              // epsilon subscript; 0 means plain eps
};

struct Formula {
  enum class Kind { Pred, Equal, Not, And, Or, Implies, ForAll, Exists };

  Kind kind;
  std::string name;           // Pred symbol; quantifiers: bound variable
  std::string sort;           // quantifiers: sort of the bound variable
  std::vector<LTermPtr> args; // Pred: arguments; Equal: exactly two
  FormulaPtr l, r;            // connectives; quantifier body in l
};

inline LTermPtr lconst(std::string name, std::string sort) {
  return std::make_shared<const LogicTerm>(
      LogicTerm{LogicTerm::Kind::Const, std::move(name), std::move(sort), {}, nullptr, 0});
}
inline LTermPtr lvar(std::string name, std::string sort) {
  return std::make_shared<const LogicTerm>(
      LogicTerm{LogicTerm::Kind::Var, std::move(name), std::move(sort), {}, nullptr, 0});
}
inline LTermPtr funApp(std::string fn, std::vector<LTermPtr> args, std::string resultSort) {
  return std::make_shared<const LogicTerm>(LogicTerm{
      LogicTerm::Kind::FunApp, std::move(fn), std::move(resultSort), std::move(args), nullptr, 0});
}
inline LTermPtr epsilonTerm(std::string var, std::string sort, FormulaPtr body, int index = 0) {
  return std::make_shared<const LogicTerm>(LogicTerm{
      LogicTerm::Kind::Epsilon, std::move(var), std::move(sort), {}, std::move(body), index});
}
inline LTermPtr tauTerm(std::string var, std::string sort, FormulaPtr body) {
  return std::make_shared<const LogicTerm>(
      LogicTerm{LogicTerm::Kind::Tau, std::move(var), std::move(sort), {}, std::move(body), 0});
}
inline LTermPtr iotaTerm(std::string var, std::string sort, FormulaPtr body) {
  return std::make_shared<const LogicTerm>(
      LogicTerm{LogicTerm::Kind::Iota, std::move(var), std::move(sort), {}, std::move(body), 0});
}

inline FormulaPtr pred(std::string name, std::vector<LTermPtr> args) {
  return std::make_shared<const Formula>(
      Formula{Formula::Kind::Pred, std::move(name), "", std::move(args), nullptr, nullptr});
}
inline FormulaPtr equalF(LTermPtr lhs, LTermPtr rhs) {
  return std::make_shared<const Formula>(Formula{
      Formula::Kind::Equal, "=", "", {std::move(lhs), std::move(rhs)}, nullptr, nullptr});
}
inline FormulaPtr notF(FormulaPtr f) {
  return std::make_shared<const Formula>(
      Formula{Formula::Kind::Not, "", "", {}, std::move(f), nullptr});
}
inline FormulaPtr binF(Formula::Kind k, FormulaPtr l, FormulaPtr r) {
  return std::make_shared<const Formula>(
      Formula{k, "", "", {}, std::move(l), std::move(r)});
}
inline FormulaPtr andF(FormulaPtr l, FormulaPtr r) {
  return binF(Formula::Kind::And, std::move(l), std::move(r));
}
inline FormulaPtr orF(FormulaPtr l, FormulaPtr r) {
  return binF(Formula::Kind::Or, std::move(l), std::move(r));
}
inline FormulaPtr impliesF(FormulaPtr l, FormulaPtr r) {
  return binF(Formula::Kind::Implies, std::move(l), std::move(r));
}
inline FormulaPtr quantF(Formula::Kind k, std::string var, std::string sort, FormulaPtr body) {
  return std::make_shared<const Formula>(
      Formula{k, std::move(var), std::move(sort), {}, std::move(body), nullptr});
}
inline FormulaPtr forallF(std::string var, std::string sort, FormulaPtr body) {
  return quantF(Formula::Kind::ForAll, std::move(var), std::move(sort), std::move(body));
}
inline FormulaPtr existsF(std::string var, std::string sort, FormulaPtr body) {
  return quantF(Formula::Kind::Exists, std::move(var), std::move(sort), std::move(body));
}

inline bool isBinder(LogicTerm::Kind k) {
  return k == LogicTerm::Kind::Epsilon || k == LogicTerm::Kind::Tau ||
         k == LogicTerm::Kind::Iota;
}
inline bool isQuantifier(Formula::Kind k) {
  return k == Formula::Kind::ForAll || k == Formula::Kind::Exists;
}
inline bool isBinaryConn(Formula::Kind k) {
  return k == Formula::Kind::And || k == Formula::Kind::Or || k == Formula::Kind::Implies;
}

// -- free variables ---------------------------------------------------------

inline void freeVarsF(const FormulaPtr& f, std::set<std::string>& bound,
                      std::map<std::string, std::string>& out);

inline void freeVarsT(const LTermPtr& t, std::set<std::string>& bound,
                      std::map<std::string, std::string>& out) {
  switch (t->kind) {
    case LogicTerm::Kind::Const:
      return;
    case LogicTerm::Kind::Var:
      if (!bound.count(t->name)) out.emplace(t->name, t->sort);
      return;
    case LogicTerm::Kind::FunApp:
      for (auto& a : t->args) freeVarsT(a, bound, out);
      return;
    case LogicTerm::Kind::Epsilon:
    case LogicTerm::Kind::Tau:
    case LogicTerm::Kind::Iota: {
      bool fresh = bound.insert(t->name).second;
      freeVarsF(t->body, bound, out);
      if (fresh) bound.erase(t->name);
      return;
    }
  }
}

inline void freeVarsF(const FormulaPtr& f, std::set<std::string>& bound,
                      std::map<std::string, std::string>& out) {
  switch (f->kind) {
    case Formula::Kind::Pred:
    case Formula::Kind::Equal:
      for (auto& a : f->args) freeVarsT(a, bound, out);
      return;
    case Formula::Kind::Not:
      freeVarsF(f->l, bound, out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      freeVarsF(f->l, bound, out);
      freeVarsF(f->r, bound, out);
      return;
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists: {
      bool fresh = bound.insert(f->name).second;
      freeVarsF(f->l, bound, out);
      if (fresh) bound.erase(f->name);
      return;
    }
  }
}

inline std::map<std::string, std::string> freeVars(const FormulaPtr& f) {
  std::set<std::string> bound;
  std::map<std::string, std::string> out;
  freeVarsF(f, bound, out);
  return out;
}

inline std::map<std::string, std::string> freeVars(const LTermPtr& t) {
  std::set<std::string> bound;
  std::map<std::string, std::string> out;
  freeVarsT(t, bound, out);
  return out;
}

inline bool closedFormula(const FormulaPtr& f) { return freeVars(f).empty(); }

inline void allVarNamesF(const FormulaPtr& f, std::set<std::string>& out);
inline void allVarNamesT(const LTermPtr& t, std::set<std::string>& out) {
  switch (t->kind) {
    case LogicTerm::Kind::Const:
      return;
    case LogicTerm::Kind::Var:
      out.insert(t->name);
      return;
    case LogicTerm::Kind::FunApp:
      for (auto& a : t->args) allVarNamesT(a, out);
      return;
    default:
      out.insert(t->name);
      allVarNamesF(t->body, out);
      return;
  }
}
inline void allVarNamesF(const FormulaPtr& f, std::set<std::string>& out) {
  switch (f->kind) {
    case Formula::Kind::Pred:
    case Formula::Kind::Equal:
      for (auto& a : f->args) allVarNamesT(a, out);
      return;
    case Formula::Kind::Not:
      allVarNamesF(f->l, out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      allVarNamesF(f->l, out);
      allVarNamesF(f->r, out);
      return;
    default:
      out.insert(f->name);
      allVarNamesF(f->l, out);
      return;
  }
}

// -- substitution -----------------------------------------------------------

inline FormulaPtr substInFormula(const FormulaPtr& f, const std::string& var,
                                 const LTermPtr& repl);

inline LTermPtr substInTerm(const LTermPtr& t, const std::string& var, const LTermPtr& repl) {
  switch (t->kind) {
    case LogicTerm::Kind::Const:
      return t;
    case LogicTerm::Kind::Var:
      return t->name == var ? repl : t;
    case LogicTerm::Kind::FunApp: {
      std::vector<LTermPtr> args;
      for (auto& a : t->args) args.push_back(substInTerm(a, var, repl));
      return funApp(t->name, std::move(args), t->sort);
    }
    case LogicTerm::Kind::Epsilon:
    case LogicTerm::Kind::Tau:
    case LogicTerm::Kind::Iota: {
      if (t->name == var) return t;
      auto replFree = freeVars(repl);
      std::string bvar = t->name;
      FormulaPtr body = t->body;
      if (replFree.count(bvar)) {
        std::set<std::string> avoid;
        for (auto& [n, s] : replFree) avoid.insert(n);
        allVarNamesF(body, avoid);
        avoid.insert(var);
        std::string renamed = freshName(bvar, avoid);
        body = substInFormula(body, bvar, lvar(renamed, t->sort));
        bvar = renamed;
      }
      body = substInFormula(body, var, repl);
      return std::make_shared<const LogicTerm>(
          LogicTerm{t->kind, bvar, t->sort, {}, body, t->index});
    }
  }
  fail("Internal", "unreachable logic term kind");
}

inline FormulaPtr substInFormula(const FormulaPtr& f, const std::string& var,
                                 const LTermPtr& repl) {
  switch (f->kind) {
    case Formula::Kind::Pred:
    case Formula::Kind::Equal: {
      std::vector<LTermPtr> args;
      for (auto& a : f->args) args.push_back(substInTerm(a, var, repl));
      return std::make_shared<const Formula>(
          Formula{f->kind, f->name, f->sort, std::move(args), nullptr, nullptr});
    }
    case Formula::Kind::Not:
      return notF(substInFormula(f->l, var, repl));
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return binF(f->kind, substInFormula(f->l, var, repl), substInFormula(f->r, var, repl));
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists: {
      if (f->name == var) return f;
      auto replFree = freeVars(repl);
      std::string bvar = f->name;
      FormulaPtr body = f->l;
      if (replFree.count(bvar)) {
        std::set<std::string> avoid;
        for (auto& [n, s] : replFree) avoid.insert(n);
        allVarNamesF(body, avoid);
        avoid.insert(var);
        std::string renamed = freshName(bvar, avoid);
        body = substInFormula(body, bvar, lvar(renamed, f->sort));
        bvar = renamed;
      }
      return quantF(f->kind, bvar, f->sort, substInFormula(body, var, repl));
    }
  }
  fail("Internal", "unreachable formula kind");
}

// -- alpha equality ---------------------------------------------------------

using NamePairs = std::vector<std::pair<std::string, std::string>>;

inline bool alphaEqF(const FormulaPtr& a, const FormulaPtr& b, NamePairs& binders);

inline bool alphaEqT(const LTermPtr& a, const LTermPtr& b, NamePairs& binders) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case LogicTerm::Kind::Const:
      return a->name == b->name && a->sort == b->sort;
    case LogicTerm::Kind::Var: {
      for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
        bool la = it->first == a->name, lb = it->second == b->name;
        if (la || lb) return la && lb && a->sort == b->sort;
      }
      return a->name == b->name && a->sort == b->sort;
    }
    case LogicTerm::Kind::FunApp: {
      if (a->name != b->name || a->args.size() != b->args.size()) return false;
      for (size_t i = 0; i < a->args.size(); ++i)
        if (!alphaEqT(a->args[i], b->args[i], binders)) return false;
      return true;
    }
    default: {
      if (a->sort != b->sort || a->index != b->index) return false;
      binders.emplace_back(a->name, b->name);
      bool ok = alphaEqF(a->body, b->body, binders);
      binders.pop_back();
      return ok;
    }
  }
}

inline bool alphaEqF(const FormulaPtr& a, const FormulaPtr& b, NamePairs& binders) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Formula::Kind::Pred:
    case Formula::Kind::Equal: {
      if (a->name != b->name || a->args.size() != b->args.size()) return false;
      for (size_t i = 0; i < a->args.size(); ++i)
        if (!alphaEqT(a->args[i], b->args[i], binders)) return false;
      return true;
    }
    case Formula::Kind::Not:
      return alphaEqF(a->l, b->l, binders);
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return alphaEqF(a->l, b->l, binders) && alphaEqF(a->r, b->r, binders);
    default: {
      if (a->sort != b->sort) return false;
      binders.emplace_back(a->name, b->name);
      bool ok = alphaEqF(a->l, b->l, binders);
      binders.pop_back();
      return ok;
    }
  }
}

inline bool alphaEq(const FormulaPtr& a, const FormulaPtr& b) {
  NamePairs binders;
  return alphaEqF(a, b, binders);
}

inline bool alphaEq(const LTermPtr& a, const LTermPtr& b) {
  NamePairs binders;
  return alphaEqT(a, b, binders);
}

// -- signature --------------------------------------------------------------

struct Signature {
  std::vector<std::string> sorts;  // declaration order matters for model defaults
  std::map<std::string, std::vector<std::string>> preds;
  std::map<std::string, std::pair<std::vector<std::string>, std::string>> funs;
  std::map<std::string, std::string> consts;

  bool hasSort(const std::string& s) const {
    for (auto& x : sorts)
      if (x == s) return true;
    return false;
  }
  void addSort(const std::string& s) {
    if (!hasSort(s)) sorts.push_back(s);
  }
};

inline void checkSortedT(const Signature& sig, const LTermPtr& t,
                         std::map<std::string, std::string>& env);

inline void checkSortedF(const Signature& sig, const FormulaPtr& f,
                         std::map<std::string, std::string>& env) {
  switch (f->kind) {
    case Formula::Kind::Pred: {
      auto it = sig.preds.find(f->name);
      if (it == sig.preds.end())
        fail("IllSorted", "unknown predicate '" + f->name + "'");
      if (it->second.size() != f->args.size())
        fail("IllSorted", "predicate '" + f->name + "' arity mismatch");
      for (size_t i = 0; i < f->args.size(); ++i) {
        checkSortedT(sig, f->args[i], env);
        if (f->args[i]->sort != it->second[i])
          fail("IllSorted", "argument " + std::to_string(i + 1) + " of '" + f->name +
                                "' has sort " + f->args[i]->sort + ", expected " +
                                it->second[i]);
      }
      return;
    }
    case Formula::Kind::Equal:
      for (auto& a : f->args) checkSortedT(sig, a, env);
      if (f->args[0]->sort != f->args[1]->sort)
        fail("IllSorted", "equality between different sorts");
      return;
    case Formula::Kind::Not:
      checkSortedF(sig, f->l, env);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      checkSortedF(sig, f->l, env);
      checkSortedF(sig, f->r, env);
      return;
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists: {
      auto saved = env.count(f->name) ? std::optional<std::string>(env[f->name]) : std::nullopt;
      env[f->name] = f->sort;
      checkSortedF(sig, f->l, env);
      if (saved)
        env[f->name] = *saved;
      else
        env.erase(f->name);
      return;
    }
  }
}

inline void checkSortedT(const Signature& sig, const LTermPtr& t,
                         std::map<std::string, std::string>& env) {
  switch (t->kind) {
    case LogicTerm::Kind::Const: {
      auto it = sig.consts.find(t->name);
      if (it != sig.consts.end() && it->second != t->sort)
        fail("IllSorted", "constant '" + t->name + "' has sort " + it->second);
      return;
    }
    case LogicTerm::Kind::Var: {
      auto it = env.find(t->name);
      if (it != env.end() && it->second != t->sort)
        fail("IllSorted", "variable '" + t->name + "' bound at sort " + it->second);
      return;
    }
    case LogicTerm::Kind::FunApp: {
      auto it = sig.funs.find(t->name);
      if (it == sig.funs.end()) fail("IllSorted", "unknown function '" + t->name + "'");
      if (it->second.first.size() != t->args.size())
        fail("IllSorted", "function '" + t->name + "' arity mismatch");
      for (size_t i = 0; i < t->args.size(); ++i) {
        checkSortedT(sig, t->args[i], env);
        if (t->args[i]->sort != it->second.first[i])
          fail("IllSorted", "argument of '" + t->name + "' has wrong sort");
      }
      if (t->sort != it->second.second)
        fail("IllSorted", "function '" + t->name + "' result sort mismatch");
      return;
    }
    default: {
      auto saved = env.count(t->name) ? std::optional<std::string>(env[t->name]) : std::nullopt;
      env[t->name] = t->sort;
      checkSortedF(sig, t->body, env);
      if (saved)
        env[t->name] = *saved;
      else
        env.erase(t->name);
      return;
    }
  }
}

inline void checkWellSorted(const Signature& sig, const FormulaPtr& f) {
  std::map<std::string, std::string> env;
  checkSortedF(sig, f, env);
}

// -- printing ---------------------------------------------------------------

enum class PrintStyle { Ascii, Unicode };

inline std::string showT(const LTermPtr& t, PrintStyle style);

inline std::string showF(const FormulaPtr& f, PrintStyle style, bool atomicCtx = false) {
  const bool uni = style == PrintStyle::Unicode;
  switch (f->kind) {
    case Formula::Kind::Pred: {
      std::string s = f->name + "(";
      for (size_t i = 0; i < f->args.size(); ++i) {
        if (i) s += ", ";
        s += showT(f->args[i], style);
      }
      s += ")";
      if (f->args.empty()) s = f->name;  // atomic proposition
      return s;
    }
    case Formula::Kind::Equal:
      return showT(f->args[0], style) + " = " + showT(f->args[1], style);
    case Formula::Kind::Not:
      return (uni ? std::string("¬") : std::string("~")) + showF(f->l, style, true);
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies: {
      const char* opAscii = f->kind == Formula::Kind::And    ? "/\\"
                            : f->kind == Formula::Kind::Or   ? "\\/"
                                                             : "->";
      const char* opUni = f->kind == Formula::Kind::And    ? "∧"
                          : f->kind == Formula::Kind::Or   ? "∨"
                                                           : "→";
      std::string s = showF(f->l, style, true) + " " + (uni ? opUni : opAscii) + " " +
                      showF(f->r, style, true);
      return atomicCtx ? "(" + s + ")" : s;
    }
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists: {
      std::string q = f->kind == Formula::Kind::ForAll
                          ? (uni ? "∀" : "forall ")
                          : (uni ? "∃" : "exists ");
      std::string body = showF(f->l, style, isBinaryConn(f->l->kind) ||
                                                f->l->kind == Formula::Kind::Equal);
      std::string s = q + f->name + ":" + f->sort + ". " + body;
      return atomicCtx ? "(" + s + ")" : s;
    }
  }
  return "?";
}

inline std::string showT(const LTermPtr& t, PrintStyle style) {
  const bool uni = style == PrintStyle::Unicode;
  switch (t->kind) {
    case LogicTerm::Kind::Const:
    case LogicTerm::Kind::Var:
      return t->name;
    case LogicTerm::Kind::FunApp: {
      std::string s = t->name + "(";
      for (size_t i = 0; i < t->args.size(); ++i) {
        if (i) s += ", ";
        s += showT(t->args[i], style);
      }
      return s + ")";
    }
    case LogicTerm::Kind::Epsilon:
    case LogicTerm::Kind::Tau:
    case LogicTerm::Kind::Iota: {
      std::string op = t->kind == LogicTerm::Kind::Epsilon ? (uni ? "ε" : "eps")
                       : t->kind == LogicTerm::Kind::Tau   ? (uni ? "τ" : "tau")
                                                           : (uni ? "ι" : "iota");
      if (t->index > 0) op += "_" + std::to_string(t->index);
      std::string body = showF(t->body, style, isBinaryConn(t->body->kind) ||
                                                   t->body->kind == Formula::Kind::Equal);
      return op + " " + t->name + ":" + t->sort + ". " + body;
    }
  }
  return "?";
}

inline std::string prettyPrint(const FormulaPtr& f, PrintStyle style = PrintStyle::Ascii) {
  return showF(f, style);
}

inline std::string prettyPrint(const LTermPtr& t, PrintStyle style = PrintStyle::Ascii) {
  return showT(t, style);
}

// -- Fregean relativization -------------------------------------------------

// Rewrites quantification over the subdomain sort named like `guard` into
// guarded quantification over the guard predicate's parent sort.
inline FormulaPtr relativize(const Signature& sig, const FormulaPtr& f,
                             const std::string& guard) {
  auto it = sig.preds.find(guard);
  if (it == sig.preds.end() || it->second.size() != 1)
    fail("GuardArityMismatch", "guard '" + guard + "' is not a declared unary predicate");
  const std::string& parent = it->second[0];

  std::function<FormulaPtr(const FormulaPtr&)> go;
  std::function<LTermPtr(const LTermPtr&)> goT = [&](const LTermPtr& t) -> LTermPtr {
    switch (t->kind) {
      case LogicTerm::Kind::Const:
      case LogicTerm::Kind::Var:
        return t;
      case LogicTerm::Kind::FunApp: {
        std::vector<LTermPtr> args;
        for (auto& a : t->args) args.push_back(goT(a));
        return funApp(t->name, std::move(args), t->sort);
      }
      default:
        return std::make_shared<const LogicTerm>(
            LogicTerm{t->kind, t->name, t->sort, {}, go(t->body), t->index});
    }
  };
  go = [&](const FormulaPtr& g) -> FormulaPtr {
    switch (g->kind) {
      case Formula::Kind::Pred:
      case Formula::Kind::Equal: {
        std::vector<LTermPtr> args;
        for (auto& a : g->args) args.push_back(goT(a));
        return std::make_shared<const Formula>(
            Formula{g->kind, g->name, g->sort, std::move(args), nullptr, nullptr});
      }
      case Formula::Kind::Not:
        return notF(go(g->l));
      case Formula::Kind::And:
      case Formula::Kind::Or:
      case Formula::Kind::Implies:
        return binF(g->kind, go(g->l), go(g->r));
      case Formula::Kind::ForAll:
      case Formula::Kind::Exists: {
        FormulaPtr body = go(g->l);
        if (g->sort == guard) {
          // quantified variable moves to the parent sort
          body = substInFormula(body, g->name, lvar(g->name, parent));
          FormulaPtr guardAtom = pred(guard, {lvar(g->name, parent)});
          FormulaPtr guarded = g->kind == Formula::Kind::ForAll
                                   ? impliesF(guardAtom, body)
                                   : andF(guardAtom, body);
          return quantF(g->kind, g->name, parent, guarded);
        }
        return quantF(g->kind, g->name, g->sort, body);
      }
    }
    fail("Internal", "unreachable");
  };
  return go(f);
}

// Partial inverse: recognizes exactly the forall/implies and exists/and guard
// patterns for the given guard predicate.
inline FormulaPtr unrelativize(const Signature& sig, const FormulaPtr& f,
                               const std::string& guard) {
  auto it = sig.preds.find(guard);
  if (it == sig.preds.end() || it->second.size() != 1)
    fail("GuardArityMismatch", "guard '" + guard + "' is not a declared unary predicate");

  std::function<FormulaPtr(const FormulaPtr&)> go = [&](const FormulaPtr& g) -> FormulaPtr {
    switch (g->kind) {
      case Formula::Kind::Pred:
      case Formula::Kind::Equal:
        return g;
      case Formula::Kind::Not:
        return notF(go(g->l));
      case Formula::Kind::And:
      case Formula::Kind::Or:
      case Formula::Kind::Implies:
        return binF(g->kind, go(g->l), go(g->r));
      case Formula::Kind::ForAll:
      case Formula::Kind::Exists: {
        FormulaPtr body = g->l;
        Formula::Kind want = g->kind == Formula::Kind::ForAll ? Formula::Kind::Implies
                                                              : Formula::Kind::And;
        if (body->kind == want && body->l->kind == Formula::Kind::Pred &&
            body->l->name == guard && body->l->args.size() == 1 &&
            body->l->args[0]->kind == LogicTerm::Kind::Var &&
            body->l->args[0]->name == g->name) {
          FormulaPtr inner = go(body->r);
          inner = substInFormula(inner, g->name, lvar(g->name, guard));
          return quantF(g->kind, g->name, guard, inner);
        }
        return quantF(g->kind, g->name, g->sort, go(body));
      }
    }
    fail("Internal", "unreachable");
  };
  return go(f);
}

}  // namespace mgl
