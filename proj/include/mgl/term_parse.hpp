#pragma once

#include <string>
#include <vector>

#include "mgl/tokenize.hpp"
#include "mgl/typecheck.hpp"

namespace mgl {

// Parser for the type and lambda-term surface syntax:
//   types:  S -> T,  Pi a. T,  t,  sort names, type variables
//   terms:  \x:T. t,  /\a. t,  t {T},  juxtaposition for application
// The quantifier family constants (exists/forall/=) have their member type
// resolved from the argument they are applied to.
class TermParser {
public:
  TermParser(const std::string& src, const TypingContext& ctx) : cur_(src), ctx_(ctx) {}

  TypePtr parseTypeOnly() {
    TypePtr t = parseType();
    if (!cur_.done()) fail("ParseError", "trailing input after type: '" + cur_.peek() + "'");
    return t;
  }

  TermPtr parseTermOnly() {
    TermPtr t = parseTerm();
    if (!cur_.done()) fail("ParseError", "trailing input after term: '" + cur_.peek() + "'");
    return t;
  }

private:
  TokenCursor cur_;
  const TypingContext& ctx_;
  std::vector<std::pair<std::string, TypePtr>> termEnv_;
  std::vector<std::string> typeEnv_;

  bool tyVarInScope(const std::string& name) const {
    for (auto it = typeEnv_.rbegin(); it != typeEnv_.rend(); ++it)
      if (*it == name) return true;
    return false;
  }

  TypePtr lookupTermVar(const std::string& name) const {
    for (auto it = termEnv_.rbegin(); it != termEnv_.rend(); ++it)
      if (it->first == name) return it->second;
    return nullptr;
  }

  // -- types --

  TypePtr parseType() {
    TypePtr l = parseTypeAtom();
    if (cur_.eat("->")) return arrow(l, parseType());
    return l;
  }

  TypePtr parseTypeAtom() {
    if (cur_.eat("(")) {
      TypePtr t = parseType();
      cur_.expect(")");
      return t;
    }
    if (cur_.at("Pi")) {
      cur_.next();
      std::string var = cur_.ident();
      cur_.expect(".");
      typeEnv_.push_back(var);
      TypePtr body = parseType();
      typeEnv_.pop_back();
      return piType(var, body);
    }
    std::string name = cur_.ident();
    if (name == "t") return propType();
    if (tyVarInScope(name)) return typeVar(name);
    if (ctx_.hasSort(name)) return baseSort(name);
    fail("UnboundName", "unknown sort or type variable '" + name + "'");
  }

  // -- terms --

  struct PTerm {
    TermPtr term;           // null while a family constant awaits its argument
    std::string pendingFamily;
  };

  TypePtr typeIn(const TermPtr& t) {
    std::map<std::string, TypePtr> env;
    for (auto& [n, ty] : termEnv_) env[n] = ty;
    return typeOfRec(ctx_, t, env);
  }

  TermPtr resolveApply(PTerm fun, const TermPtr& arg) {
    if (!fun.pendingFamily.empty()) {
      TypePtr argTy = typeIn(arg);
      const std::string& f = fun.pendingFamily;
      TypePtr constTy;
      if (f == "exists" || f == "forall") {
        if (!(argTy->kind == SemType::Kind::Arrow && argTy->b->kind == SemType::Kind::Prop))
          fail("TypeMismatch", "'" + f + "' expects a property argument, got " + show(argTy));
        constTy = arrow(argTy, propType());
      } else {  // "="
        constTy = arrow(argTy, arrow(argTy, propType()));
      }
      return mkApp(mkConst(f, constTy), arg);
    }
    return mkApp(fun.term, arg);
  }

  TermPtr parseTerm() {
    PTerm t = parseTermP();
    if (!t.pendingFamily.empty())
      fail("ParseError", "quantifier constant '" + t.pendingFamily + "' needs an argument");
    return t.term;
  }

  PTerm parseTermP() {
    if (cur_.at("\\")) {
      cur_.next();
      std::string var = cur_.ident();
      cur_.expect(":");
      TypePtr ty = parseType();
      cur_.expect(".");
      termEnv_.emplace_back(var, ty);
      TermPtr body = parseTerm();
      termEnv_.pop_back();
      return {mkLam(var, ty, body), ""};
    }
    if (cur_.at("/\\")) {
      cur_.next();
      std::string var = cur_.ident();
      cur_.expect(".");
      typeEnv_.push_back(var);
      TermPtr body = parseTerm();
      typeEnv_.pop_back();
      return {mkTyLam(var, body), ""};
    }
    // application chain
    PTerm acc = parseAtom();
    while (true) {
      if (cur_.eat("{")) {
        TypePtr ty = parseType();
        cur_.expect("}");
        if (!acc.pendingFamily.empty())
          fail("ParseError", "'" + acc.pendingFamily + "' takes no type argument");
        acc = {mkTyApp(acc.term, ty), ""};
        continue;
      }
      if (cur_.at("(") || (!cur_.done() && startsAtom(cur_.peek()))) {
        PTerm arg = parseAtom();
        if (!arg.pendingFamily.empty())
          fail("ParseError", "quantifier constant '" + arg.pendingFamily +
                                 "' needs an argument");
        acc = {resolveApply(acc, arg.term), ""};
        continue;
      }
      break;
    }
    return acc;
  }

  static bool startsAtom(const std::string& tok) {
    if (tok.empty()) return false;
    char c = tok[0];
    if (tok == "Pi") return false;
    return isalpha(static_cast<unsigned char>(c)) || c == '_' || tok == "\\" || tok == "/\\";
  }

  PTerm parseAtom() {
    if (cur_.eat("(")) {
      PTerm t = parseTermP();
      cur_.expect(")");
      return t;
    }
    if (cur_.at("\\") || cur_.at("/\\")) return parseTermP();
    std::string name = cur_.ident();
    if (TypePtr ty = lookupTermVar(name)) return {mkVar(name, ty), ""};
    if (auto fixed = TypingContext::fixedLogicalType(name)) return {mkConst(name, *fixed), ""};
    if (TypingContext::isFamilyConstName(name)) return {nullptr, name};
    auto it = ctx_.consts.find(name);
    if (it != ctx_.consts.end()) return {mkConst(name, it->second), ""};
    fail("UnboundName", "unknown identifier '" + name + "'");
  }
};

inline TypePtr parseType(const std::string& src, const TypingContext& ctx) {
  return TermParser(src, ctx).parseTypeOnly();
}

inline TermPtr parseTerm(const std::string& src, const TypingContext& ctx) {
  return TermParser(src, ctx).parseTermOnly();
}

}  // namespace mgl
