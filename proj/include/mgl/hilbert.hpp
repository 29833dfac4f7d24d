#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "mgl/formula.hpp"

namespace mgl {

// Hilbert operators: construction, tau elimination, the two translations
// between first-order and epsilon form, and the four deduction-rule schemas.

namespace detail {

inline void checkVarSort(const FormulaPtr& body, const std::string& var,
                         const std::string& sort) {
  auto fv = freeVars(body);
  auto it = fv.find(var);
  if (it != fv.end() && it->second != sort)
    fail("SortMismatch", "variable '" + var + "' occurs at sort " + it->second +
                             ", binder declares " + sort);
}

}  // namespace detail

inline LTermPtr mkEpsilon(const std::string& var, const std::string& sort,
                          const FormulaPtr& body) {
  detail::checkVarSort(body, var, sort);
  return epsilonTerm(var, sort, body);
}

inline LTermPtr mkTau(const std::string& var, const std::string& sort, const FormulaPtr& body) {
  detail::checkVarSort(body, var, sort);
  return tauTerm(var, sort, body);
}

inline LTermPtr mkIota(const std::string& var, const std::string& sort, const FormulaPtr& body) {
  detail::checkVarSort(body, var, sort);
  return iotaTerm(var, sort, body);
}

// -- tau elimination: tau_x A  =  eps_x ~A, innermost occurrences first -----

inline FormulaPtr tauFree(const FormulaPtr& f);

inline LTermPtr tauFreeT(const LTermPtr& t) {
  switch (t->kind) {
    case LogicTerm::Kind::Const:
    case LogicTerm::Kind::Var:
      return t;
    case LogicTerm::Kind::FunApp: {
      std::vector<LTermPtr> args;
      for (auto& a : t->args) args.push_back(tauFreeT(a));
      return funApp(t->name, std::move(args), t->sort);
    }
    case LogicTerm::Kind::Epsilon:
      return epsilonTerm(t->name, t->sort, tauFree(t->body), t->index);
    case LogicTerm::Kind::Iota:
      return iotaTerm(t->name, t->sort, tauFree(t->body));
    case LogicTerm::Kind::Tau:
      return epsilonTerm(t->name, t->sort, notF(tauFree(t->body)));
  }
  fail("Internal", "unreachable logic term kind");
}

inline FormulaPtr tauFree(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Pred:
    case Formula::Kind::Equal: {
      std::vector<LTermPtr> args;
      for (auto& a : f->args) args.push_back(tauFreeT(a));
      return std::make_shared<const Formula>(
          Formula{f->kind, f->name, f->sort, std::move(args), nullptr, nullptr});
    }
    case Formula::Kind::Not:
      return notF(tauFree(f->l));
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return binF(f->kind, tauFree(f->l), tauFree(f->r));
    default:
      return quantF(f->kind, f->name, f->sort, tauFree(f->l));
  }
}

// -- occurrence helpers -----------------------------------------------------

inline bool hasHilbertT(const LTermPtr& t);

inline bool hasHilbert(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Pred:
    case Formula::Kind::Equal:
      for (auto& a : f->args)
        if (hasHilbertT(a)) return true;
      return false;
    case Formula::Kind::Not:
      return hasHilbert(f->l);
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return hasHilbert(f->l) || hasHilbert(f->r);
    default:
      return hasHilbert(f->l);
  }
}

inline bool hasHilbertT(const LTermPtr& t) {
  switch (t->kind) {
    case LogicTerm::Kind::Const:
    case LogicTerm::Kind::Var:
      return false;
    case LogicTerm::Kind::FunApp:
      for (auto& a : t->args)
        if (hasHilbertT(a)) return true;
      return false;
    default:
      return true;
  }
}

inline void collectHilbertOccurrences(const FormulaPtr& f, std::vector<LTermPtr>& out);

inline void collectHilbertOccurrencesT(const LTermPtr& t, std::vector<LTermPtr>& out) {
  switch (t->kind) {
    case LogicTerm::Kind::Const:
    case LogicTerm::Kind::Var:
      return;
    case LogicTerm::Kind::FunApp:
      for (auto& a : t->args) collectHilbertOccurrencesT(a, out);
      return;
    default:
      out.push_back(t);
      collectHilbertOccurrences(t->body, out);
      return;
  }
}

inline void collectHilbertOccurrences(const FormulaPtr& f, std::vector<LTermPtr>& out) {
  switch (f->kind) {
    case Formula::Kind::Pred:
    case Formula::Kind::Equal:
      for (auto& a : f->args) collectHilbertOccurrencesT(a, out);
      return;
    case Formula::Kind::Not:
      collectHilbertOccurrences(f->l, out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      collectHilbertOccurrences(f->l, out);
      collectHilbertOccurrences(f->r, out);
      return;
    default:
      collectHilbertOccurrences(f->l, out);
      return;
  }
}

// -- FO -> epsilon ----------------------------------------------------------

// Quantifier elimination. Each maximal quantifier prefix is eliminated
// outermost-first over a matrix whose own quantifiers are already gone:
// the outermost binder's Hilbert term closes over the still-free inner
// variables, and the later substitutions thread it through, yielding
//   forall x. exists y. P(x,y)
//     == P(tau x. P(x, eps y. P(tau x. P(x,y), y)),
//          eps y. P(tau x. P(x,y), y)).
inline FormulaPtr foToEpsilon(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Pred:
    case Formula::Kind::Equal:
      return f;
    case Formula::Kind::Not:
      return notF(foToEpsilon(f->l));
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return binF(f->kind, foToEpsilon(f->l), foToEpsilon(f->r));
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists: {
      std::vector<std::tuple<Formula::Kind, std::string, std::string>> prefix;
      FormulaPtr cur = f;
      while (isQuantifier(cur->kind)) {
        prefix.emplace_back(cur->kind, cur->name, cur->sort);
        cur = cur->l;
      }
      FormulaPtr matrix = foToEpsilon(cur);
      for (auto& [k, var, sort] : prefix) {
        LTermPtr h = k == Formula::Kind::Exists ? epsilonTerm(var, sort, matrix)
                                                : tauTerm(var, sort, matrix);
        matrix = substInFormula(matrix, var, h);
      }
      return matrix;
    }
  }
  fail("Internal", "unreachable formula kind");
}

// -- epsilon -> FO ----------------------------------------------------------

// Inversion works by undoing elimination steps. A quantifier prefix is
// recovered innermost-first: find a Hilbert occurrence h = op_x B with
// F = B[x := h]; h was the last term substituted in, its binder is the
// innermost quantifier recovered so far, and B is the formula one step
// earlier. The prefix is kept apart from the matrix so the recovered binders
// nest in the original order. Backtracks over candidate occurrences.
namespace detail {

struct RecoveredPrefix {
  // outermost binder first
  std::vector<std::tuple<Formula::Kind, std::string, std::string>> prefix;
  FormulaPtr matrix;
};

inline FormulaPtr rebuildPrefix(const RecoveredPrefix& s) {
  FormulaPtr out = s.matrix;
  for (auto it = s.prefix.rbegin(); it != s.prefix.rend(); ++it)
    out = quantF(std::get<0>(*it), std::get<1>(*it), std::get<2>(*it), out);
  return out;
}

inline std::optional<RecoveredPrefix> solveEpsilon(const FormulaPtr& f) {
  if (!hasHilbert(f)) return RecoveredPrefix{{}, f};

  std::vector<LTermPtr> candidates;
  collectHilbertOccurrences(f, candidates);
  for (auto& h : candidates) {
    if (h->kind == LogicTerm::Kind::Iota || h->index != 0) continue;
    if (!alphaEq(f, substInFormula(h->body, h->name, h))) continue;
    auto inner = solveEpsilon(h->body);
    if (!inner) continue;
    Formula::Kind q = h->kind == LogicTerm::Kind::Epsilon ? Formula::Kind::Exists
                                                          : Formula::Kind::ForAll;
    inner->prefix.emplace_back(q, h->name, h->sort);
    return inner;
  }

  // no whole-formula undo applies; recurse through the structure
  switch (f->kind) {
    case Formula::Kind::Not: {
      auto a = solveEpsilon(f->l);
      if (!a) return std::nullopt;
      return RecoveredPrefix{{}, notF(rebuildPrefix(*a))};
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies: {
      auto a = solveEpsilon(f->l);
      if (!a) return std::nullopt;
      auto b = solveEpsilon(f->r);
      if (!b) return std::nullopt;
      return RecoveredPrefix{{}, binF(f->kind, rebuildPrefix(*a), rebuildPrefix(*b))};
    }
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists: {
      auto a = solveEpsilon(f->l);
      if (!a) return std::nullopt;
      return RecoveredPrefix{{}, quantF(f->kind, f->name, f->sort, rebuildPrefix(*a))};
    }
    default:
      return std::nullopt;  // atom still containing a Hilbert term
  }
}

}  // namespace detail

// Empty result: the formula has no first-order equivalent under this
// translation (e.g. P(eps x. Q(x)), indexed epsilon constants, iota terms).
inline std::optional<FormulaPtr> epsilonToFo(const FormulaPtr& f) {
  auto s = detail::solveEpsilon(f);
  if (!s) return std::nullopt;
  return detail::rebuildPrefix(*s);
}

// -- the four deduction-rule schemas ----------------------------------------

enum class InferenceRule { EpsIntro, TauIntro, EpsDualIntro, TauDualIntro };

struct InferenceStep {
  InferenceRule rule;
  FormulaPtr premise;
  std::string genericVar;  // tauIntro/epsDualIntro only
  FormulaPtr conclusion;
};

// Matches pattern B, whose hole is the free variable `hole`, against formula
// g; the hole must map to one consistent witness term, everything else must
// agree exactly (no alpha-renaming across the match).
inline bool matchHoleF(const FormulaPtr& p, const FormulaPtr& g, const std::string& hole,
                       bool holeShadowed, std::optional<LTermPtr>& witness);

inline bool matchHoleT(const LTermPtr& p, const LTermPtr& t, const std::string& hole,
                       bool holeShadowed, std::optional<LTermPtr>& witness) {
  if (p->kind == LogicTerm::Kind::Var && p->name == hole && !holeShadowed) {
    if (witness) return alphaEq(*witness, t);
    witness = t;
    return true;
  }
  if (p->kind != t->kind) return false;
  switch (p->kind) {
    case LogicTerm::Kind::Const:
    case LogicTerm::Kind::Var:
      return p->name == t->name && p->sort == t->sort;
    case LogicTerm::Kind::FunApp: {
      if (p->name != t->name || p->args.size() != t->args.size()) return false;
      for (size_t i = 0; i < p->args.size(); ++i)
        if (!matchHoleT(p->args[i], t->args[i], hole, holeShadowed, witness)) return false;
      return true;
    }
    default: {
      if (p->name != t->name || p->sort != t->sort || p->index != t->index) return false;
      return matchHoleF(p->body, t->body, hole, holeShadowed || p->name == hole, witness);
    }
  }
}

inline bool matchHoleF(const FormulaPtr& p, const FormulaPtr& g, const std::string& hole,
                       bool holeShadowed, std::optional<LTermPtr>& witness) {
  if (p->kind != g->kind) return false;
  switch (p->kind) {
    case Formula::Kind::Pred:
    case Formula::Kind::Equal: {
      if (p->name != g->name || p->args.size() != g->args.size()) return false;
      for (size_t i = 0; i < p->args.size(); ++i)
        if (!matchHoleT(p->args[i], g->args[i], hole, holeShadowed, witness)) return false;
      return true;
    }
    case Formula::Kind::Not:
      return matchHoleF(p->l, g->l, hole, holeShadowed, witness);
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return matchHoleF(p->l, g->l, hole, holeShadowed, witness) &&
             matchHoleF(p->r, g->r, hole, holeShadowed, witness);
    default: {
      if (p->name != g->name || p->sort != g->sort) return false;
      return matchHoleF(p->l, g->l, hole, holeShadowed || p->name == hole, witness);
    }
  }
}

// True iff the conclusion is the rule schema applied to the premise. The
// tau-style rules additionally require the generic variable to be free in no
// hypothesis.
inline bool checkInference(const InferenceStep& step,
                           const std::vector<FormulaPtr>& hypotheses) {
  switch (step.rule) {
    case InferenceRule::TauIntro:
    case InferenceRule::EpsDualIntro: {
      // from A(x), x generic: A(tau x. A(x)), resp. A(eps x. ~A(x))
      const std::string& x = step.genericVar;
      if (x.empty()) return false;
      for (auto& h : hypotheses)
        if (freeVars(h).count(x)) return false;
      auto fv = freeVars(step.premise);
      auto it = fv.find(x);
      std::string sort = it != fv.end() ? it->second : std::string("e");
      LTermPtr h = step.rule == InferenceRule::TauIntro
                       ? tauTerm(x, sort, step.premise)
                       : epsilonTerm(x, sort, notF(step.premise));
      return alphaEq(step.conclusion, substInFormula(step.premise, x, h));
    }
    case InferenceRule::EpsIntro:
    case InferenceRule::TauDualIntro: {
      // from A(t): A(eps x. A(x)), resp. A(tau x. ~A(x)); find the introduced
      // Hilbert term in the conclusion, then match the premise against its
      // body with the hole filled by some witness term
      std::vector<LTermPtr> candidates;
      collectHilbertOccurrences(step.conclusion, candidates);
      for (auto& h : candidates) {
        FormulaPtr body;  // B with conclusion = B[x := h]
        if (step.rule == InferenceRule::EpsIntro) {
          if (h->kind != LogicTerm::Kind::Epsilon || h->index != 0) continue;
          body = h->body;
        } else {
          if (h->kind != LogicTerm::Kind::Tau) continue;
          if (h->body->kind != Formula::Kind::Not) continue;
          body = h->body->l;
        }
        if (!alphaEq(step.conclusion, substInFormula(body, h->name, h))) continue;
        std::optional<LTermPtr> witness;
        if (matchHoleF(body, step.premise, h->name, false, witness)) return true;
      }
      return false;
    }
  }
  return false;
}

}  // namespace mgl
