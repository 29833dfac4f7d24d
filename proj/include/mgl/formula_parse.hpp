#pragma once

#include <map>
#include <string>
#include <vector>

#include "mgl/context.hpp"
#include "mgl/formula.hpp"
#include "mgl/tokenize.hpp"

namespace mgl {

// Parser for the formula surface syntax:
//   forall x:S. F   exists x:S. F   eps x:S. F   tau x:S. F   iota x:S. F
//   infix  /\  \/  ->  =   prefix ~
// Omitted sort annotations default to `defaultSort`.
class FormulaParser {
public:
  FormulaParser(const std::string& src, const Signature* sig, std::string defaultSort)
      : cur_(src), sig_(sig), defaultSort_(std::move(defaultSort)) {}

  FormulaPtr parse() {
    FormulaPtr f = parseFormula();
    if (!cur_.done()) fail("ParseError", "trailing input after formula: '" + cur_.peek() + "'");
    return f;
  }

  LTermPtr parseSingleTerm() {
    LTermPtr t = parseTerm();
    if (!cur_.done()) fail("ParseError", "trailing input after term: '" + cur_.peek() + "'");
    return t;
  }

private:
  TokenCursor cur_;
  const Signature* sig_;
  std::string defaultSort_;
  std::vector<std::pair<std::string, std::string>> env_;  // var -> sort, stack

  static bool isQuantKeyword(const std::string& s) { return s == "forall" || s == "exists"; }

  std::string lookupVar(const std::string& name) const {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it)
      if (it->first == name) return it->second;
    return "";
  }

  FormulaPtr parseFormula() {
    FormulaPtr l = parseOr();
    if (cur_.eat("->")) return impliesF(l, parseFormula());
    return l;
  }

  FormulaPtr parseOr() {
    FormulaPtr l = parseAnd();
    while (cur_.eat("\\/")) l = orF(l, parseAnd());
    return l;
  }

  FormulaPtr parseAnd() {
    FormulaPtr l = parseUnary();
    while (cur_.eat("/\\")) l = andF(l, parseUnary());
    return l;
  }

  std::pair<std::string, std::string> parseBoundVar() {
    std::string var = cur_.ident();
    std::string sort = defaultSort_;
    if (cur_.eat(":")) sort = cur_.ident();
    return {var, sort};
  }

  FormulaPtr parseUnary() {
    if (cur_.eat("~")) return notF(parseUnary());
    if (isQuantKeyword(cur_.peek())) {
      std::string q = cur_.next();
      auto [var, sort] = parseBoundVar();
      cur_.expect(".");
      env_.emplace_back(var, sort);
      FormulaPtr body = parseFormula();
      env_.pop_back();
      return quantF(q == "forall" ? Formula::Kind::ForAll : Formula::Kind::Exists, var, sort,
                    body);
    }
    if (cur_.eat("(")) {
      FormulaPtr f = parseFormula();
      cur_.expect(")");
      return f;
    }
    LTermPtr t = parseTerm();
    if (cur_.eat("=")) {
      LTermPtr rhs = parseTerm();
      return equalF(t, rhs);
    }
    // reinterpret the term as an atomic formula
    if (t->kind == LogicTerm::Kind::FunApp) return pred(t->name, t->args);
    if (t->kind == LogicTerm::Kind::Const || t->kind == LogicTerm::Kind::Var)
      return pred(t->name, {});
    fail("ParseError", "a Hilbert term is not a formula");
  }

  LTermPtr parseTerm() {
    const std::string& head = cur_.peek();
    if (isHilbertConstName(head)) {
      std::string op = cur_.next();
      auto [var, sort] = parseBoundVar();
      cur_.expect(".");
      env_.emplace_back(var, sort);
      FormulaPtr body = parseFormula();
      env_.pop_back();
      if (op == "tau") return tauTerm(var, sort, body);
      if (op == "iota") return iotaTerm(var, sort, body);
      int index = op == "eps" ? 0 : std::stoi(op.substr(4));
      return epsilonTerm(var, sort, body, index);
    }
    std::string name = cur_.ident();
    if (cur_.eat("(")) {
      std::vector<LTermPtr> args;
      if (!cur_.at(")")) {
        args.push_back(parseTerm());
        while (cur_.eat(",")) args.push_back(parseTerm());
      }
      cur_.expect(")");
      std::string resultSort = defaultSort_;
      if (sig_) {
        auto it = sig_->funs.find(name);
        if (it != sig_->funs.end()) resultSort = it->second.second;
      }
      return funApp(name, std::move(args), resultSort);
    }
    std::string bsort = lookupVar(name);
    if (!bsort.empty()) return lvar(name, bsort);
    std::string csort = defaultSort_;
    if (sig_) {
      auto it = sig_->consts.find(name);
      if (it != sig_->consts.end()) csort = it->second;
    }
    return lconst(name, csort);
  }
};

inline FormulaPtr parseFormula(const std::string& src, const Signature* sig = nullptr,
                               const std::string& defaultSort = "e") {
  return FormulaParser(src, sig, defaultSort).parse();
}

inline LTermPtr parseLogicTerm(const std::string& src, const Signature* sig = nullptr,
                               const std::string& defaultSort = "e") {
  return FormulaParser(src, sig, defaultSort).parseSingleTerm();
}

}  // namespace mgl
