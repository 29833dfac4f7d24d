#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "mgl/type.hpp"

namespace mgl {

struct SemTerm;
using TermPtr = std::shared_ptr<const SemTerm>;

// Church-style terms: every binder carries its type annotation.
struct SemTerm {
  enum class Kind { Var, Const, App, Lam, TyApp, TyLam };

  Kind kind;
  std::string name;  // Var/Const name; Lam bound variable; TyLam bound type variable
  TypePtr type;      // Var/Const: its type; Lam: bound variable type; TyApp: type argument
  TermPtr fun;       // App: function; Lam/TyLam: body; TyApp: function
  TermPtr arg;       // App: argument
};

inline TermPtr mkVar(std::string name, TypePtr type) {
  return std::make_shared<const SemTerm>(
      SemTerm{SemTerm::Kind::Var, std::move(name), std::move(type), nullptr, nullptr});
}

inline TermPtr mkConst(std::string name, TypePtr type) {
  return std::make_shared<const SemTerm>(
      SemTerm{SemTerm::Kind::Const, std::move(name), std::move(type), nullptr, nullptr});
}

inline TermPtr mkApp(TermPtr fun, TermPtr arg) {
  return std::make_shared<const SemTerm>(
      SemTerm{SemTerm::Kind::App, "", nullptr, std::move(fun), std::move(arg)});
}

inline TermPtr mkLam(std::string var, TypePtr varType, TermPtr body) {
  return std::make_shared<const SemTerm>(
      SemTerm{SemTerm::Kind::Lam, std::move(var), std::move(varType), std::move(body), nullptr});
}

inline TermPtr mkTyApp(TermPtr fun, TypePtr typeArg) {
  return std::make_shared<const SemTerm>(
      SemTerm{SemTerm::Kind::TyApp, "", std::move(typeArg), std::move(fun), nullptr});
}

inline TermPtr mkTyLam(std::string var, TermPtr body) {
  return std::make_shared<const SemTerm>(
      SemTerm{SemTerm::Kind::TyLam, std::move(var), nullptr, std::move(body), nullptr});
}

inline void collectFreeVars(const TermPtr& t, std::set<std::string>& bound,
                            std::map<std::string, TypePtr>& out) {
  switch (t->kind) {
    case SemTerm::Kind::Var:
      if (!bound.count(t->name)) out.emplace(t->name, t->type);
      return;
    case SemTerm::Kind::Const:
      return;
    case SemTerm::Kind::App:
      collectFreeVars(t->fun, bound, out);
      collectFreeVars(t->arg, bound, out);
      return;
    case SemTerm::Kind::Lam: {
      bool fresh = bound.insert(t->name).second;
      collectFreeVars(t->fun, bound, out);
      if (fresh) bound.erase(t->name);
      return;
    }
    case SemTerm::Kind::TyApp:
    case SemTerm::Kind::TyLam:
      collectFreeVars(t->fun, bound, out);
      return;
  }
}

// Free term variables with the types their occurrences carry.
inline std::map<std::string, TypePtr> freeVars(const TermPtr& t) {
  std::set<std::string> bound;
  std::map<std::string, TypePtr> out;
  collectFreeVars(t, bound, out);
  return out;
}

inline void collectVarNames(const TermPtr& t, std::set<std::string>& out) {
  switch (t->kind) {
    case SemTerm::Kind::Var:
      out.insert(t->name);
      return;
    case SemTerm::Kind::Const:
      return;
    case SemTerm::Kind::App:
      collectVarNames(t->fun, out);
      collectVarNames(t->arg, out);
      return;
    case SemTerm::Kind::Lam:
      out.insert(t->name);
      collectVarNames(t->fun, out);
      return;
    case SemTerm::Kind::TyApp:
    case SemTerm::Kind::TyLam:
      collectVarNames(t->fun, out);
      return;
  }
}

// Capture-avoiding substitution of `repl` for free occurrences of `var`.
inline TermPtr substituteTerm(const TermPtr& t, const std::string& var, const TermPtr& repl) {
  switch (t->kind) {
    case SemTerm::Kind::Var:
      return t->name == var ? repl : t;
    case SemTerm::Kind::Const:
      return t;
    case SemTerm::Kind::App:
      return mkApp(substituteTerm(t->fun, var, repl), substituteTerm(t->arg, var, repl));
    case SemTerm::Kind::Lam: {
      if (t->name == var) return t;
      auto replFree = freeVars(repl);
      if (replFree.count(t->name)) {
        std::set<std::string> avoid;
        for (auto& [n, ty] : replFree) avoid.insert(n);
        collectVarNames(t->fun, avoid);
        avoid.insert(var);
        std::string renamed = freshName(t->name, avoid);
        TermPtr body = substituteTerm(t->fun, t->name, mkVar(renamed, t->type));
        return mkLam(renamed, t->type, substituteTerm(body, var, repl));
      }
      return mkLam(t->name, t->type, substituteTerm(t->fun, var, repl));
    }
    case SemTerm::Kind::TyApp:
      return mkTyApp(substituteTerm(t->fun, var, repl), t->type);
    case SemTerm::Kind::TyLam:
      return mkTyLam(t->name, substituteTerm(t->fun, var, repl));
  }
  fail("Internal", "unreachable term kind");
}

inline void collectFreeTypeVarsOfTerm(const TermPtr& t, std::set<std::string>& bound,
                                      std::set<std::string>& out) {
  switch (t->kind) {
    case SemTerm::Kind::Var:
    case SemTerm::Kind::Const:
      collectFreeTypeVars(t->type, bound, out);
      return;
    case SemTerm::Kind::App:
      collectFreeTypeVarsOfTerm(t->fun, bound, out);
      collectFreeTypeVarsOfTerm(t->arg, bound, out);
      return;
    case SemTerm::Kind::Lam:
      collectFreeTypeVars(t->type, bound, out);
      collectFreeTypeVarsOfTerm(t->fun, bound, out);
      return;
    case SemTerm::Kind::TyApp:
      collectFreeTypeVars(t->type, bound, out);
      collectFreeTypeVarsOfTerm(t->fun, bound, out);
      return;
    case SemTerm::Kind::TyLam: {
      bool fresh = bound.insert(t->name).second;
      collectFreeTypeVarsOfTerm(t->fun, bound, out);
      if (fresh) bound.erase(t->name);
      return;
    }
  }
}

inline std::set<std::string> freeTypeVarsOfTerm(const TermPtr& t) {
  std::set<std::string> bound, out;
  collectFreeTypeVarsOfTerm(t, bound, out);
  return out;
}

// Substitution of a type for a type variable, throughout a term.
inline TermPtr substituteTypeInTerm(const TermPtr& t, const std::string& var, const TypePtr& repl) {
  switch (t->kind) {
    case SemTerm::Kind::Var:
      return mkVar(t->name, substituteType(t->type, var, repl));
    case SemTerm::Kind::Const:
      return mkConst(t->name, substituteType(t->type, var, repl));
    case SemTerm::Kind::App:
      return mkApp(substituteTypeInTerm(t->fun, var, repl),
                   substituteTypeInTerm(t->arg, var, repl));
    case SemTerm::Kind::Lam:
      return mkLam(t->name, substituteType(t->type, var, repl),
                   substituteTypeInTerm(t->fun, var, repl));
    case SemTerm::Kind::TyApp:
      return mkTyApp(substituteTypeInTerm(t->fun, var, repl), substituteType(t->type, var, repl));
    case SemTerm::Kind::TyLam: {
      if (t->name == var) return t;
      auto replFree = freeTypeVars(repl);
      if (replFree.count(t->name)) {
        auto avoid = replFree;
        auto bodyFree = freeTypeVarsOfTerm(t->fun);
        avoid.insert(bodyFree.begin(), bodyFree.end());
        avoid.insert(var);
        std::string renamed = freshName(t->name, avoid);
        TermPtr body = substituteTypeInTerm(t->fun, t->name, typeVar(renamed));
        return mkTyLam(renamed, substituteTypeInTerm(body, var, repl));
      }
      return mkTyLam(t->name, substituteTypeInTerm(t->fun, var, repl));
    }
  }
  fail("Internal", "unreachable term kind");
}

inline bool alphaEqTermRec(const TermPtr& x, const TermPtr& y,
                           std::vector<std::pair<std::string, std::string>>& termBinders,
                           std::vector<std::pair<std::string, std::string>>& typeBinders) {
  if (x->kind != y->kind) return false;
  auto typesEq = [&](const TypePtr& a, const TypePtr& b) {
    // Reuse the term-level type-binder correspondence for type alpha-equality.
    auto binders = typeBinders;
    return alphaEqRec(a, b, binders);
  };
  switch (x->kind) {
    case SemTerm::Kind::Var: {
      for (auto it = termBinders.rbegin(); it != termBinders.rend(); ++it) {
        bool lx = it->first == x->name, ly = it->second == y->name;
        if (lx || ly) return lx && ly && typesEq(x->type, y->type);
      }
      return x->name == y->name && typesEq(x->type, y->type);
    }
    case SemTerm::Kind::Const:
      return x->name == y->name && typesEq(x->type, y->type);
    case SemTerm::Kind::App:
      return alphaEqTermRec(x->fun, y->fun, termBinders, typeBinders) &&
             alphaEqTermRec(x->arg, y->arg, termBinders, typeBinders);
    case SemTerm::Kind::Lam: {
      if (!typesEq(x->type, y->type)) return false;
      termBinders.emplace_back(x->name, y->name);
      bool ok = alphaEqTermRec(x->fun, y->fun, termBinders, typeBinders);
      termBinders.pop_back();
      return ok;
    }
    case SemTerm::Kind::TyApp:
      return typesEq(x->type, y->type) &&
             alphaEqTermRec(x->fun, y->fun, termBinders, typeBinders);
    case SemTerm::Kind::TyLam: {
      typeBinders.emplace_back(x->name, y->name);
      bool ok = alphaEqTermRec(x->fun, y->fun, termBinders, typeBinders);
      typeBinders.pop_back();
      return ok;
    }
  }
  return false;
}

inline bool alphaEq(const TermPtr& x, const TermPtr& y) {
  std::vector<std::pair<std::string, std::string>> termBinders, typeBinders;
  return alphaEqTermRec(x, y, termBinders, typeBinders);
}

inline std::string show(const TermPtr& t, bool atomic = false) {
  switch (t->kind) {
    case SemTerm::Kind::Var:
    case SemTerm::Kind::Const:
      return t->name;
    case SemTerm::Kind::App: {
      std::string s = show(t->fun, t->fun->kind == SemTerm::Kind::Lam ||
                                       t->fun->kind == SemTerm::Kind::TyLam) +
                      " " + show(t->arg, true);
      return atomic ? "(" + s + ")" : s;
    }
    case SemTerm::Kind::Lam: {
      std::string s = "\\" + t->name + ":" + show(t->type, true) + ". " + show(t->fun);
      return atomic ? "(" + s + ")" : s;
    }
    case SemTerm::Kind::TyApp: {
      std::string s = show(t->fun, t->fun->kind == SemTerm::Kind::Lam ||
                                       t->fun->kind == SemTerm::Kind::TyLam) +
                      " {" + show(t->type) + "}";
      return atomic ? "(" + s + ")" : s;
    }
    case SemTerm::Kind::TyLam: {
      std::string s = "/\\" + t->name + ". " + show(t->fun);
      return atomic ? "(" + s + ")" : s;
    }
  }
  return "?";
}

}  // namespace mgl
