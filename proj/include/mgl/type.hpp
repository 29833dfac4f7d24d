#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "mgl/error.hpp"

namespace mgl {

struct SemType;
using TypePtr = std::shared_ptr<const SemType>;

// Types of the second-order calculus: base sorts e_i, the proposition type t,
// type variables, arrows and Pi-quantified types. Immutable, shared.
struct SemType {
  enum class Kind { Base, Prop, Var, Arrow, Pi };

  Kind kind;
  std::string name;  // Base: sort name; Var: variable name; Pi: bound variable
  TypePtr a;         // Arrow: domain; Pi: body
  TypePtr b;         // Arrow: codomain
};

inline TypePtr baseSort(std::string sort) {
  return std::make_shared<const SemType>(SemType{SemType::Kind::Base, std::move(sort), nullptr, nullptr});
}

inline TypePtr propType() {
  static const TypePtr t =
      std::make_shared<const SemType>(SemType{SemType::Kind::Prop, "t", nullptr, nullptr});
  return t;
}

inline TypePtr typeVar(std::string name) {
  return std::make_shared<const SemType>(SemType{SemType::Kind::Var, std::move(name), nullptr, nullptr});
}

inline TypePtr arrow(TypePtr dom, TypePtr cod) {
  return std::make_shared<const SemType>(
      SemType{SemType::Kind::Arrow, "", std::move(dom), std::move(cod)});
}

inline TypePtr piType(std::string var, TypePtr body) {
  return std::make_shared<const SemType>(
      SemType{SemType::Kind::Pi, std::move(var), std::move(body), nullptr});
}

inline void collectFreeTypeVars(const TypePtr& t, std::set<std::string>& bound,
                                std::set<std::string>& out) {
  switch (t->kind) {
    case SemType::Kind::Base:
    case SemType::Kind::Prop:
      return;
    case SemType::Kind::Var:
      if (!bound.count(t->name)) out.insert(t->name);
      return;
    case SemType::Kind::Arrow:
      collectFreeTypeVars(t->a, bound, out);
      collectFreeTypeVars(t->b, bound, out);
      return;
    case SemType::Kind::Pi: {
      bool fresh = bound.insert(t->name).second;
      collectFreeTypeVars(t->a, bound, out);
      if (fresh) bound.erase(t->name);
      return;
    }
  }
}

inline std::set<std::string> freeTypeVars(const TypePtr& t) {
  std::set<std::string> bound, out;
  collectFreeTypeVars(t, bound, out);
  return out;
}

// Incrementing-suffix freshness: base, base1, base2, ...
inline std::string freshName(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

inline bool alphaEqRec(const TypePtr& x, const TypePtr& y,
                       std::vector<std::pair<std::string, std::string>>& binders) {
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case SemType::Kind::Base:
      return x->name == y->name;
    case SemType::Kind::Prop:
      return true;
    case SemType::Kind::Var: {
      for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
        bool lx = it->first == x->name, ly = it->second == y->name;
        if (lx || ly) return lx && ly;
      }
      return x->name == y->name;
    }
    case SemType::Kind::Arrow:
      return alphaEqRec(x->a, y->a, binders) && alphaEqRec(x->b, y->b, binders);
    case SemType::Kind::Pi: {
      binders.emplace_back(x->name, y->name);
      bool ok = alphaEqRec(x->a, y->a, binders);
      binders.pop_back();
      return ok;
    }
  }
  return false;
}

inline bool alphaEq(const TypePtr& x, const TypePtr& y) {
  std::vector<std::pair<std::string, std::string>> binders;
  return alphaEqRec(x, y, binders);
}

// Capture-avoiding substitution of a type for a type variable.
inline TypePtr substituteType(const TypePtr& t, const std::string& var, const TypePtr& repl) {
  switch (t->kind) {
    case SemType::Kind::Base:
    case SemType::Kind::Prop:
      return t;
    case SemType::Kind::Var:
      return t->name == var ? repl : t;
    case SemType::Kind::Arrow:
      return arrow(substituteType(t->a, var, repl), substituteType(t->b, var, repl));
    case SemType::Kind::Pi: {
      if (t->name == var) return t;
      auto replFree = freeTypeVars(repl);
      if (replFree.count(t->name)) {
        auto avoid = replFree;
        auto bodyFree = freeTypeVars(t->a);
        avoid.insert(bodyFree.begin(), bodyFree.end());
        avoid.insert(var);
        std::string renamed = freshName(t->name, avoid);
        TypePtr body = substituteType(t->a, t->name, typeVar(renamed));
        return piType(renamed, substituteType(body, var, repl));
      }
      return piType(t->name, substituteType(t->a, var, repl));
    }
  }
  fail("Internal", "unreachable type kind");
}

inline std::string show(const TypePtr& t, bool atomic = false) {
  switch (t->kind) {
    case SemType::Kind::Base:
    case SemType::Kind::Var:
      return t->name;
    case SemType::Kind::Prop:
      return "t";
    case SemType::Kind::Arrow: {
      std::string s = show(t->a, true) + " -> " + show(t->b);
      return atomic ? "(" + s + ")" : s;
    }
    case SemType::Kind::Pi: {
      std::string s = "Pi " + t->name + ". " + show(t->a);
      return atomic ? "(" + s + ")" : s;
    }
  }
  return "?";
}

}  // namespace mgl
