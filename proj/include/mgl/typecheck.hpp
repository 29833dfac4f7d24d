#pragma once

#include <map>
#include <string>

#include "mgl/context.hpp"

namespace mgl {

inline TypePtr typeOfRec(const TypingContext& ctx, const TermPtr& t,
                         std::map<std::string, TypePtr>& env) {
  switch (t->kind) {
    case SemTerm::Kind::Var: {
      auto it = env.find(t->name);
      if (it != env.end()) {
        if (!alphaEq(it->second, t->type))
          fail("TypeMismatch", "variable '" + t->name + "' bound at " + show(it->second) +
                                   ", occurrence carries " + show(t->type));
        return t->type;
      }
      auto fv = ctx.vars.find(t->name);
      if (fv == ctx.vars.end()) fail("UnboundName", "unbound variable '" + t->name + "'");
      if (!alphaEq(fv->second, t->type))
        fail("TypeMismatch", "free variable '" + t->name + "' declared at " +
                                 show(fv->second) + ", occurrence carries " + show(t->type));
      return t->type;
    }
    case SemTerm::Kind::Const:
      ctx.checkConst(t->name, t->type);
      ctx.checkSortsDeclared(t->type);
      return t->type;
    case SemTerm::Kind::App: {
      TypePtr funTy = typeOfRec(ctx, t->fun, env);
      TypePtr argTy = typeOfRec(ctx, t->arg, env);
      if (funTy->kind != SemType::Kind::Arrow)
        fail("ApplicationMismatch", "applying non-function of type " + show(funTy));
      if (!alphaEq(funTy->a, argTy))
        fail("ApplicationMismatch",
             "expected " + show(funTy->a) + ", actual " + show(argTy));
      return funTy->b;
    }
    case SemTerm::Kind::Lam: {
      ctx.checkSortsDeclared(t->type);
      auto saved = env.find(t->name) != env.end()
                       ? std::optional<TypePtr>(env[t->name])
                       : std::nullopt;
      env[t->name] = t->type;
      TypePtr bodyTy = typeOfRec(ctx, t->fun, env);
      if (saved)
        env[t->name] = *saved;
      else
        env.erase(t->name);
      return arrow(t->type, bodyTy);
    }
    case SemTerm::Kind::TyApp: {
      TypePtr funTy = typeOfRec(ctx, t->fun, env);
      if (funTy->kind != SemType::Kind::Pi)
        fail("ApplicationMismatch", "type application to non-Pi type " + show(funTy));
      ctx.checkSortsDeclared(t->type);
      return substituteType(funTy->a, funTy->name, t->type);
    }
    case SemTerm::Kind::TyLam: {
      // Side condition: the bound type variable must not occur free in the
      // type of any free term variable of the body.
      for (auto& [name, ty] : freeVars(t->fun)) {
        if (freeTypeVars(ty).count(t->name))
          fail("EscapingTypeVar", "type variable '" + t->name +
                                      "' occurs in the type of free variable '" + name + "'");
      }
      TypePtr bodyTy = typeOfRec(ctx, t->fun, env);
      return piType(t->name, bodyTy);
    }
  }
  fail("Internal", "unreachable term kind");
}

// The unique type assigned by the calculus, or a typing error.
inline TypePtr typeOf(const TypingContext& ctx, const TermPtr& t) {
  std::map<std::string, TypePtr> env;
  return typeOfRec(ctx, t, env);
}

inline bool wellTyped(const TypingContext& ctx, const TermPtr& t) {
  try {
    typeOf(ctx, t);
    return true;
  } catch (const Error&) {
    return false;
  }
}

// Checked variant of substitution: the replacement must have the variable's type.
inline TermPtr substituteTermChecked(const TypingContext& ctx, const TermPtr& t,
                                     const std::string& var, const TypePtr& varType,
                                     const TermPtr& repl) {
  TypePtr replTy = typeOf(ctx, repl);
  if (!alphaEq(replTy, varType))
    fail("TypeMismatch", "substituting " + show(replTy) + " for variable of type " +
                             show(varType));
  return substituteTerm(t, var, repl);
}

}  // namespace mgl
