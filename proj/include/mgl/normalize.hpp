#pragma once

#include <random>
#include <string>
#include <vector>

#include "mgl/typecheck.hpp"

namespace mgl {

// Redex-selection strategies. Random strategies carry their own generator so a
// whole normalization replays deterministically from one seed.
struct Strategy {
  enum class Kind { LeftmostOutermost, RightmostInnermost, Random };
  Kind kind = Kind::LeftmostOutermost;
  std::mt19937 rng;

  static Strategy leftmostOutermost() { return Strategy{Kind::LeftmostOutermost, {}}; }
  static Strategy rightmostInnermost() { return Strategy{Kind::RightmostInnermost, {}}; }
  static Strategy randomRedex(unsigned seed) {
    return Strategy{Kind::Random, std::mt19937(seed)};
  }
};

using Path = std::vector<int>;

inline std::string showPath(const Path& p) {
  if (p.empty()) return ".";
  std::string s;
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += ".";
    s += std::to_string(p[i]);
  }
  return s;
}

inline bool isRedex(const TermPtr& t) {
  return (t->kind == SemTerm::Kind::App && t->fun->kind == SemTerm::Kind::Lam) ||
         (t->kind == SemTerm::Kind::TyApp && t->fun->kind == SemTerm::Kind::TyLam);
}

inline void collectRedexes(const TermPtr& t, Path& here, std::vector<Path>& out) {
  if (isRedex(t)) out.push_back(here);
  switch (t->kind) {
    case SemTerm::Kind::Var:
    case SemTerm::Kind::Const:
      return;
    case SemTerm::Kind::App:
      here.push_back(0);
      collectRedexes(t->fun, here, out);
      here.back() = 1;
      collectRedexes(t->arg, here, out);
      here.pop_back();
      return;
    case SemTerm::Kind::Lam:
    case SemTerm::Kind::TyApp:
    case SemTerm::Kind::TyLam:
      here.push_back(0);
      collectRedexes(t->fun, here, out);
      here.pop_back();
      return;
  }
}

inline std::vector<Path> redexPaths(const TermPtr& t) {
  Path here;
  std::vector<Path> out;
  collectRedexes(t, here, out);
  return out;
}

inline bool isNormal(const TermPtr& t) { return redexPaths(t).empty(); }

struct ReductionStep {
  Path path;
  std::string rule;  // "beta" | "typeBeta"
  TermPtr result;
};

struct ReductionTrace {
  TermPtr initial;
  std::vector<ReductionStep> steps;
  TermPtr normalForm;

  std::string render() const {
    std::string out;
    for (size_t i = 0; i < steps.size(); ++i) {
      out += "[" + std::to_string(i + 1) + "] " + steps[i].rule + " @ " +
             showPath(steps[i].path) + " : " + show(steps[i].result) + "\n";
    }
    return out;
  }
};

inline TermPtr contract(const TermPtr& t) {
  if (t->kind == SemTerm::Kind::App && t->fun->kind == SemTerm::Kind::Lam)
    return substituteTerm(t->fun->fun, t->fun->name, t->arg);
  if (t->kind == SemTerm::Kind::TyApp && t->fun->kind == SemTerm::Kind::TyLam)
    return substituteTypeInTerm(t->fun->fun, t->fun->name, t->type);
  fail("Internal", "contract on non-redex");
}

inline TermPtr replaceAt(const TermPtr& t, const Path& p, size_t i, const TermPtr& sub) {
  if (i == p.size()) return sub;
  switch (t->kind) {
    case SemTerm::Kind::App:
      return p[i] == 0 ? mkApp(replaceAt(t->fun, p, i + 1, sub), t->arg)
                       : mkApp(t->fun, replaceAt(t->arg, p, i + 1, sub));
    case SemTerm::Kind::Lam:
      return mkLam(t->name, t->type, replaceAt(t->fun, p, i + 1, sub));
    case SemTerm::Kind::TyApp:
      return mkTyApp(replaceAt(t->fun, p, i + 1, sub), t->type);
    case SemTerm::Kind::TyLam:
      return mkTyLam(t->name, replaceAt(t->fun, p, i + 1, sub));
    default:
      fail("Internal", "bad path in replaceAt");
  }
}

inline TermPtr subtermAt(const TermPtr& t, const Path& p, size_t i = 0) {
  if (i == p.size()) return t;
  switch (t->kind) {
    case SemTerm::Kind::App:
      return subtermAt(p[i] == 0 ? t->fun : t->arg, p, i + 1);
    case SemTerm::Kind::Lam:
    case SemTerm::Kind::TyApp:
    case SemTerm::Kind::TyLam:
      return subtermAt(t->fun, p, i + 1);
    default:
      fail("Internal", "bad path in subtermAt");
  }
}

inline Path pickRedex(const std::vector<Path>& redexes, const TermPtr& t, Strategy& strategy) {
  switch (strategy.kind) {
    case Strategy::Kind::LeftmostOutermost:
      return redexes.front();  // pre-order collection: first is leftmost-outermost
    case Strategy::Kind::RightmostInnermost: {
      // Innermost redexes have no redex strictly below them; take the
      // rightmost (lexicographically greatest path) among those.
      Path best;
      bool found = false;
      for (const auto& p : redexes) {
        TermPtr sub = subtermAt(t, p);
        bool inner = true;
        auto below = redexPaths(sub);
        if (below.size() > 1) inner = false;  // the redex itself plus deeper ones
        if (!inner) continue;
        if (!found || p > best) {
          best = p;
          found = true;
        }
      }
      return best;
    }
    case Strategy::Kind::Random: {
      std::uniform_int_distribution<size_t> dist(0, redexes.size() - 1);
      return redexes[dist(strategy.rng)];
    }
  }
  fail("Internal", "unknown strategy");
}

struct StepResult {
  bool normalAlready;
  TermPtr term;
  Path path;
  std::string rule;
};

// Contracts exactly one redex chosen by the strategy; refuses ill-typed input.
inline StepResult stepOnce(const TypingContext& ctx, const TermPtr& t, Strategy& strategy) {
  try {
    typeOf(ctx, t);
  } catch (const Error& e) {
    fail("IllTyped", e.detail());
  }
  auto redexes = redexPaths(t);
  if (redexes.empty()) return {true, t, {}, ""};
  Path p = pickRedex(redexes, t, strategy);
  TermPtr sub = subtermAt(t, p);
  std::string rule = sub->kind == SemTerm::Kind::App ? "beta" : "typeBeta";
  return {false, replaceAt(t, p, 0, contract(sub)), p, rule};
}

constexpr int kDefaultFuel = 100000;

// Unique normal form; fuel exhaustion indicates a kernel bug, not a user error.
inline std::pair<TermPtr, ReductionTrace> normalizeTerm(const TypingContext& ctx,
                                                        const TermPtr& t,
                                                        int fuel = kDefaultFuel,
                                                        Strategy strategy = Strategy::leftmostOutermost(),
                                                        bool keepTrace = false) {
  try {
    typeOf(ctx, t);
  } catch (const Error& e) {
    fail("IllTyped", e.detail());
  }
  ReductionTrace trace;
  trace.initial = t;
  TermPtr cur = t;
  for (int i = 0; i < fuel; ++i) {
    auto redexes = redexPaths(cur);
    if (redexes.empty()) {
      trace.normalForm = cur;
      return {cur, trace};
    }
    Path p = pickRedex(redexes, cur, strategy);
    TermPtr sub = subtermAt(cur, p);
    std::string rule = sub->kind == SemTerm::Kind::App ? "beta" : "typeBeta";
    cur = replaceAt(cur, p, 0, contract(sub));
    if (keepTrace) trace.steps.push_back({p, rule, cur});
  }
  fail("FuelExhausted", "no normal form after " + std::to_string(fuel) + " steps");
}

inline TermPtr normalize(const TypingContext& ctx, const TermPtr& t) {
  return normalizeTerm(ctx, t).first;
}

}  // namespace mgl
