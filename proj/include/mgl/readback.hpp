#pragma once

#include <string>
#include <vector>

#include "mgl/formula.hpp"
#include "mgl/normalize.hpp"

namespace mgl {

// Readback of closed normal lambda-terms of type t into many-sorted formulas,
// and its inverse encoding. First-order signatures only: predicate constants
// must have type S1 -> ... -> Sn -> t with base-sort arguments.

namespace detail {

inline void spine(const TermPtr& t, TermPtr& head, std::vector<TermPtr>& args) {
  if (t->kind == SemTerm::Kind::App) {
    spine(t->fun, head, args);
    args.push_back(t->arg);
  } else {
    head = t;
  }
}

inline std::string sortName(const TypePtr& ty, const std::string& what) {
  if (ty->kind != SemType::Kind::Base)
    fail("UnknownConstantShape", what + " must live at a base sort, got " + show(ty));
  return ty->name;
}

}  // namespace detail

inline FormulaPtr readbackFormula(const TypingContext& ctx, const TermPtr& t);

inline LTermPtr readbackTerm(const TypingContext& ctx, const TermPtr& t) {
  using detail::sortName;
  if (t->kind == SemTerm::Kind::Var) return lvar(t->name, sortName(t->type, "variable"));
  if (t->kind == SemTerm::Kind::Const) {
    if (ctx.generalizedDets.count(t->name))
      fail("GeneralizedQuantifier",
           "'" + t->name + "' has no readback (no semantics for generalized quantifiers)");
    return lconst(t->name, sortName(t->type, "constant"));
  }

  TermPtr head;
  std::vector<TermPtr> args;
  detail::spine(t, head, args);

  // Hilbert operator instance: op {S} restriction
  if (head->kind == SemTerm::Kind::TyApp && head->fun->kind == SemTerm::Kind::Const &&
      isHilbertConstName(head->fun->name)) {
    if (args.size() != 1)
      fail("UnknownConstantShape", "Hilbert constant applied to " +
                                       std::to_string(args.size()) + " arguments");
    std::string sort = sortName(head->type, "Hilbert operator instance");
    const std::string& op = head->fun->name;
    const TermPtr& restriction = args[0];
    std::string var;
    FormulaPtr body;
    if (restriction->kind == SemTerm::Kind::Lam) {
      var = restriction->name;
      body = readbackFormula(ctx, restriction->fun);
    } else {
      // property given point-free: expand P into P(x) with a fresh variable
      var = "x";
      body = readbackFormula(ctx, mkApp(restriction, mkVar(var, baseSort(sort))));
    }
    if (op == "tau") return tauTerm(var, sort, body);
    if (op == "iota") return iotaTerm(var, sort, body);
    int index = op == "eps" ? 0 : std::stoi(op.substr(4));
    return epsilonTerm(var, sort, body, index);
  }

  if (head->kind == SemTerm::Kind::Const && ctx.generalizedDets.count(head->name))
    fail("GeneralizedQuantifier",
         "'" + head->name + "' has no readback (no semantics for generalized quantifiers)");
  if (head->kind == SemTerm::Kind::TyApp && head->fun->kind == SemTerm::Kind::Const &&
      ctx.generalizedDets.count(head->fun->name))
    fail("GeneralizedQuantifier", "'" + head->fun->name +
                                      "' has no readback (no semantics for generalized quantifiers)");

  // function symbol application
  if (head->kind != SemTerm::Kind::Const)
    fail("UnknownConstantShape", "term head is not a constant: " + show(t));
  std::vector<LTermPtr> largs;
  TypePtr ty = head->type;
  for (auto& a : args) {
    if (ty->kind != SemType::Kind::Arrow)
      fail("UnknownConstantShape", "over-applied function symbol '" + head->name + "'");
    largs.push_back(readbackTerm(ctx, a));
    ty = ty->b;
  }
  return funApp(head->name, std::move(largs), detail::sortName(ty, "function result"));
}

inline FormulaPtr readbackFormula(const TypingContext& ctx, const TermPtr& t) {
  TermPtr head;
  std::vector<TermPtr> args;
  detail::spine(t, head, args);

  if (head->kind == SemTerm::Kind::Const) {
    const std::string& c = head->name;
    if (c == "not" && args.size() == 1) return notF(readbackFormula(ctx, args[0]));
    if ((c == "and" || c == "or" || c == "implies") && args.size() == 2) {
      Formula::Kind k = c == "and"  ? Formula::Kind::And
                        : c == "or" ? Formula::Kind::Or
                                    : Formula::Kind::Implies;
      return binF(k, readbackFormula(ctx, args[0]), readbackFormula(ctx, args[1]));
    }
    if ((c == "exists" || c == "forall") && args.size() == 1) {
      const TermPtr& body = args[0];
      if (body->kind != SemTerm::Kind::Lam)
        fail("UnknownConstantShape", "quantifier constant applied to a non-lambda argument");
      std::string sort = detail::sortName(body->type, "quantified variable");
      return quantF(c == "exists" ? Formula::Kind::Exists : Formula::Kind::ForAll, body->name,
                    sort, readbackFormula(ctx, body->fun));
    }
    if (c == "=" && args.size() == 2)
      return equalF(readbackTerm(ctx, args[0]), readbackTerm(ctx, args[1]));
    if (ctx.generalizedDets.count(c))
      fail("GeneralizedQuantifier",
           "'" + c + "' has no readback (no semantics for generalized quantifiers)");
    // ordinary predicate
    std::vector<LTermPtr> largs;
    for (auto& a : args) largs.push_back(readbackTerm(ctx, a));
    return pred(c, std::move(largs));
  }
  fail("UnknownConstantShape", "cannot read back term: " + show(t));
}

// The formula whose term encoding is t. Requires t closed, normal, of type t.
inline FormulaPtr readback(const TypingContext& ctx, const TermPtr& t) {
  if (!freeVars(t).empty()) fail("NotProp", "term is not closed");
  if (!isNormal(t)) fail("NotNormal", "term contains a redex");
  TypePtr ty = typeOf(ctx, t);
  if (ty->kind != SemType::Kind::Prop)
    fail("NotProp", "term has type " + show(ty) + ", expected t");
  return readbackFormula(ctx, t);
}

// Inverse direction, restricted to Hilbert-free formulas; Hilbert-term
// encodings are built by the epsilon-calculus layer instead.
inline TermPtr formulaToTermRec(const Signature& sig, const FormulaPtr& f);

inline TermPtr logicTermToTerm(const Signature& sig, const LTermPtr& t) {
  switch (t->kind) {
    case LogicTerm::Kind::Const:
      return mkConst(t->name, baseSort(t->sort));
    case LogicTerm::Kind::Var:
      return mkVar(t->name, baseSort(t->sort));
    case LogicTerm::Kind::FunApp: {
      auto it = sig.funs.find(t->name);
      if (it == sig.funs.end()) fail("IllSorted", "unknown function '" + t->name + "'");
      TypePtr ty = baseSort(it->second.second);
      for (auto rit = it->second.first.rbegin(); rit != it->second.first.rend(); ++rit)
        ty = arrow(baseSort(*rit), ty);
      TermPtr out = mkConst(t->name, ty);
      for (auto& a : t->args) out = mkApp(out, logicTermToTerm(sig, a));
      return out;
    }
    default:
      fail("IllSorted", "Hilbert terms have no encoding here; use the epsilon-calculus layer");
  }
}

inline TermPtr formulaToTermRec(const Signature& sig, const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Pred: {
      auto it = sig.preds.find(f->name);
      if (it == sig.preds.end()) fail("IllSorted", "unknown predicate '" + f->name + "'");
      TypePtr ty = propType();
      for (auto rit = it->second.rbegin(); rit != it->second.rend(); ++rit)
        ty = arrow(baseSort(*rit), ty);
      TermPtr out = mkConst(f->name, ty);
      for (auto& a : f->args) out = mkApp(out, logicTermToTerm(sig, a));
      return out;
    }
    case Formula::Kind::Equal: {
      TermPtr l = logicTermToTerm(sig, f->args[0]);
      const std::string& s = f->args[0]->sort;
      TypePtr eq = arrow(baseSort(s), arrow(baseSort(s), propType()));
      return mkApp(mkApp(mkConst("=", eq), l), logicTermToTerm(sig, f->args[1]));
    }
    case Formula::Kind::Not:
      return mkApp(mkConst("not", arrow(propType(), propType())),
                   formulaToTermRec(sig, f->l));
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies: {
      const char* c = f->kind == Formula::Kind::And  ? "and"
                      : f->kind == Formula::Kind::Or ? "or"
                                                     : "implies";
      TypePtr ty = arrow(propType(), arrow(propType(), propType()));
      return mkApp(mkApp(mkConst(c, ty), formulaToTermRec(sig, f->l)),
                   formulaToTermRec(sig, f->r));
    }
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists: {
      const char* c = f->kind == Formula::Kind::Exists ? "exists" : "forall";
      TypePtr prop = arrow(baseSort(f->sort), propType());
      return mkApp(mkConst(c, arrow(prop, propType())),
                   mkLam(f->name, baseSort(f->sort), formulaToTermRec(sig, f->l)));
    }
  }
  fail("Internal", "unreachable formula kind");
}

// Closed normal term of type t whose readback is f.
inline TermPtr formulaToTerm(const Signature& sig, const FormulaPtr& f) {
  checkWellSorted(sig, f);
  return formulaToTermRec(sig, f);
}

}  // namespace mgl
