#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "mgl/term.hpp"

namespace mgl {

// The polymorphic Hilbert-operator type: Pi a. (a -> t) -> a.
inline TypePtr hilbertType() {
  static const TypePtr ty =
      piType("a", arrow(arrow(typeVar("a"), propType()), typeVar("a")));
  return ty;
}

inline bool isEpsilonConstName(const std::string& name) {
  if (name == "eps") return true;
  // Indexed epsilon constants (eps_2, eps_3, ...) keep repeated discourse
  // referents distinct.
  if (name.rfind("eps_", 0) == 0 && name.size() > 4) {
    for (size_t i = 4; i < name.size(); ++i)
      if (!isdigit(static_cast<unsigned char>(name[i]))) return false;
    return true;
  }
  return false;
}

inline bool isHilbertConstName(const std::string& name) {
  return isEpsilonConstName(name) || name == "tau" || name == "iota";
}

// Declared sorts, the constant signature and free-variable bindings.
struct TypingContext {
  std::set<std::string> sorts;
  std::map<std::string, TypePtr> consts;
  std::map<std::string, TypePtr> vars;
  std::set<std::string> generalizedDets;  // "most" etc.: parse, never evaluate

  void declareSort(const std::string& s) {
    if (s == "t") fail("ParseError", "'t' is reserved for the proposition type");
    sorts.insert(s);
  }

  bool hasSort(const std::string& s) const { return sorts.count(s) > 0; }

  void declareConst(const std::string& name, TypePtr ty) {
    auto it = consts.find(name);
    if (it != consts.end()) {
      if (!alphaEq(it->second, ty))
        fail("ParseError", "duplicate constant '" + name + "' with a different type");
      return;
    }
    consts.emplace(name, std::move(ty));
  }

  void declareVar(const std::string& name, TypePtr ty) { vars[name] = std::move(ty); }

  // Names with a fixed logical type, independent of any declaration.
  static std::optional<TypePtr> fixedLogicalType(const std::string& name) {
    if (name == "and" || name == "or" || name == "implies")
      return arrow(propType(), arrow(propType(), propType()));
    if (name == "not") return arrow(propType(), propType());
    if (isHilbertConstName(name)) return hilbertType();
    return std::nullopt;
  }

  // The quantifier constants form a sort-indexed family: exists/forall at
  // every (S -> t) -> t, and "=" at every S -> S -> t.
  static bool isFamilyConstName(const std::string& name) {
    return name == "exists" || name == "forall" || name == "=";
  }

  bool familyTypeOk(const std::string& name, const TypePtr& ty) const {
    auto isDomain = [&](const TypePtr& d) {
      return d->kind == SemType::Kind::Base || d->kind == SemType::Kind::Prop;
    };
    if (name == "exists" || name == "forall") {
      return ty->kind == SemType::Kind::Arrow && ty->b->kind == SemType::Kind::Prop &&
             ty->a->kind == SemType::Kind::Arrow && isDomain(ty->a->a) &&
             ty->a->b->kind == SemType::Kind::Prop;
    }
    if (name == "=") {
      return ty->kind == SemType::Kind::Arrow && ty->b->kind == SemType::Kind::Arrow &&
             ty->b->b->kind == SemType::Kind::Prop && isDomain(ty->a) &&
             alphaEq(ty->a, ty->b->a);
    }
    return false;
  }

  // Accepts a constant occurrence carrying type `ty`, or reports why not.
  void checkConst(const std::string& name, const TypePtr& ty) const {
    if (auto fixed = fixedLogicalType(name)) {
      if (!alphaEq(*fixed, ty))
        fail("TypeMismatch", "constant '" + name + "' must have type " + show(*fixed));
      return;
    }
    if (isFamilyConstName(name)) {
      if (!familyTypeOk(name, ty))
        fail("TypeMismatch", "constant '" + name + "' used at invalid type " + show(ty));
      return;
    }
    auto it = consts.find(name);
    if (it == consts.end()) fail("UnboundName", "undeclared constant '" + name + "'");
    if (!alphaEq(it->second, ty))
      fail("TypeMismatch", "constant '" + name + "' declared at " + show(it->second) +
                               ", used at " + show(ty));
  }

  void checkSortsDeclared(const TypePtr& ty) const {
    switch (ty->kind) {
      case SemType::Kind::Base:
        if (!hasSort(ty->name)) fail("UnboundName", "undeclared sort '" + ty->name + "'");
        return;
      case SemType::Kind::Prop:
      case SemType::Kind::Var:
        return;
      case SemType::Kind::Arrow:
        checkSortsDeclared(ty->a);
        checkSortsDeclared(ty->b);
        return;
      case SemType::Kind::Pi:
        checkSortsDeclared(ty->a);
        return;
    }
  }
};

}  // namespace mgl
