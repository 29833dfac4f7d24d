#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mgl/lexicon.hpp"

namespace mgl {

// End-to-end composition: functor-argument trees to logical forms with
// presuppositions and discourse referents.

// -- trees ------------------------------------------------------------------

struct TreeNode;
using TreePtr = std::shared_ptr<const TreeNode>;

struct TreeNode {
  std::string word;  // leaf only
  TreePtr fun, arg;  // node only; the functor is the left subtree
  bool leaf() const { return !fun; }
};

inline TreePtr treeLeaf(std::string w) {
  return std::make_shared<const TreeNode>(TreeNode{std::move(w), nullptr, nullptr});
}
inline TreePtr treeNode(TreePtr f, TreePtr x) {
  return std::make_shared<const TreeNode>(TreeNode{"", std::move(f), std::move(x)});
}

inline std::string treeSurface(const TreePtr& t) {
  if (t->leaf()) return t->word;
  return treeSurface(t->fun) + " " + treeSurface(t->arg);
}

namespace detail {

inline std::vector<std::string> treeTokens(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == '(' || c == ')' || isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
      if (c == '(' || c == ')') out.push_back(std::string(1, c));
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline TreePtr parseTreeRec(const std::vector<std::string>& toks, size_t& i) {
  if (i >= toks.size()) fail("ParseError", "unexpected end of tree input");
  if (toks[i] == "(") {
    ++i;
    TreePtr f = parseTreeRec(toks, i);
    TreePtr x = parseTreeRec(toks, i);
    if (i >= toks.size() || toks[i] != ")")
      fail("ParseError", "expected ')' closing a tree node");
    ++i;
    return treeNode(f, x);
  }
  if (toks[i] == ")") fail("ParseError", "unexpected ')'");
  return treeLeaf(toks[i++]);
}

}  // namespace detail

// Fully parenthesized functor-first bracketing: `(f x)`, leaves are words.
inline TreePtr parseTree(const std::string& text) {
  auto toks = detail::treeTokens(text);
  size_t i = 0;
  TreePtr t = detail::parseTreeRec(toks, i);
  if (i != toks.size()) fail("ParseError", "trailing input after tree");
  return t;
}

// -- discourse state --------------------------------------------------------

struct Referent {
  std::string key;   // "a man", "a man_2", "the man", "he"
  std::string noun;  // restriction surface, for definite lookup
  TermPtr term;
  TypePtr sort;
  LTermPtr logic;          // null for non-evaluable (generalized) terms
  bool indefinite = false;
};

struct DiscourseState {
  std::vector<Referent> referents;          // introduction order
  std::map<std::string, int> indefCounts;   // description -> times introduced
};

inline bool isPronoun(const std::string& w) {
  return w == "he" || w == "she" || w == "it" || w == "him" || w == "her" ||
         w == "they" || w == "them";
}

// -- composition ------------------------------------------------------------

enum class ComposeMode { Gq, Epsilon };

struct Derivation {
  std::string status = "ok";  // "ok" | "rejected"
  std::string reason;
  TermPtr raw, normalForm;
  ReductionTrace trace;
  TypePtr resultType;
  FormulaPtr logicalForm;  // null when the result is not of type t
  std::vector<FormulaPtr> presuppositions;
  std::vector<std::pair<std::string, LTermPtr>> referents;  // key -> Hilbert term
  int alternatives = 0;
};

namespace detail {

struct RefUse {
  Referent ref;
  bool fresh;  // introduced here (commit to the discourse store on selection)
};

struct Cand {
  TermPtr term;
  TypePtr type;
  const LexEntry* entry = nullptr;  // set when term is a bare principal term
  const DetEntry* det = nullptr;    // determiner leaf awaiting its restriction
  // polymorphic application waiting for more arguments to fix its type vars
  TermPtr pendingHead;
  TypePtr pendingType;
  std::vector<Cand> pendingArgs;
  std::string surface;
  std::vector<FormulaPtr> presups;
  std::vector<RefUse> refs;
};

struct ComposeState {
  const Lexicon& lex;
  ComposeMode mode;
  DiscourseState* disc = nullptr;
  std::string clash;  // first recorded failure, for the rejection reason

  void recordClash(const std::string& why) {
    if (clash.empty()) clash = why;
  }
};

inline void mergeAux(Cand& into, const Cand& from) {
  into.presups.insert(into.presups.end(), from.presups.begin(), from.presups.end());
  into.refs.insert(into.refs.end(), from.refs.begin(), from.refs.end());
}

// Argument conversions against a wanted domain type: exact match first, then
// the entry's coercions in declaration order.
inline std::vector<Cand> convertArg(const Cand& arg, const TypePtr& wanted) {
  std::vector<Cand> out;
  if (arg.term && arg.type && alphaEq(arg.type, wanted)) out.push_back(arg);
  if (arg.entry && arg.type && arg.type->kind == SemType::Kind::Base &&
      wanted->kind == SemType::Kind::Base && !alphaEq(arg.type, wanted)) {
    for (auto& c : arg.entry->coercions) {
      if (!alphaEq(c.from, arg.type) || !alphaEq(c.to, wanted)) continue;
      Cand v = arg;
      v.term = mkApp(c.term, arg.term);
      v.type = wanted;
      v.entry = nullptr;
      out.push_back(std::move(v));
    }
  }
  return out;
}

inline std::string typeOfCand(const Cand& c) {
  if (c.det) return "determiner";
  if (!c.type) return "unresolved polymorphic application";
  return show(c.type);
}

// Strips the leading Pi binders and applies the inferred substitution.
inline TypePtr scanInstantiate(const TypePtr& piTy, const std::vector<std::string>& vars,
                               const std::map<std::string, TypePtr>& subst) {
  TypePtr body = piTy;
  for (size_t i = 0; i < vars.size(); ++i) body = body->a;
  TypePtr out = body;
  for (auto& v : vars) out = substituteType(out, v, subst.at(v));
  return out;
}

// Applies a polymorphic head to collected arguments: each Pi block is
// instantiated by matching the following arrow domains against the argument
// types; remaining transformer slots (object -> view) are filled from the
// object's coercion entry under rigid-exclusivity.
inline std::vector<Cand> finishPolyApply(ComposeState& st, const TermPtr& head,
                                         const TypePtr& headType, std::vector<Cand> args,
                                         std::optional<Cand>& pendingOut) {
  TermPtr term = head;
  TypePtr type = headType;
  Cand acc;
  acc.term = nullptr;
  size_t ai = 0;

  while (true) {
    if (type->kind == SemType::Kind::Pi) {
      std::vector<std::string> vars;
      TypePtr body = type;
      while (body->kind == SemType::Kind::Pi) {
        vars.push_back(body->name);
        body = body->a;
      }
      std::set<std::string> unknowns(vars.begin(), vars.end());
      std::map<std::string, TypePtr> subst;
      TypePtr scan = body;
      for (size_t aj = ai; aj < args.size() && scan->kind == SemType::Kind::Arrow; ++aj) {
        if (!args[aj].type) break;
        try {
          matchTypeRec(scan->a, args[aj].type, unknowns, subst);
        } catch (const Error&) {
          break;
        }
        scan = scan->b;
      }
      bool allBound = true;
      for (auto& v : vars)
        if (!subst.count(v)) allBound = false;
      if (!allBound) {
        // wait for more arguments before committing the type instantiation
        Cand pending;
        pending.pendingHead = head;
        pending.pendingType = headType;
        pending.pendingArgs = std::move(args);
        pendingOut = std::move(pending);
        return {};
      }
      for (auto& v : vars) term = mkTyApp(term, subst[v]);
      type = scanInstantiate(type, vars, subst);
      continue;
    }
    if (ai >= args.size()) break;
    if (type->kind != SemType::Kind::Arrow) {
      st.recordClash("cannot apply result of type " + show(type) + " to argument of type " +
                     typeOfCand(args[ai]));
      return {};
    }
    auto conv = convertArg(args[ai], type->a);
    if (conv.empty()) {
      st.recordClash("cannot apply functor of type " + show(type) +
                     " to argument of type " + typeOfCand(args[ai]));
      return {};
    }
    // deterministic: first conversion; alternatives only arise at slot filling
    mergeAux(acc, conv.front());
    term = mkApp(term, conv.front().term);
    type = type->b;
    ++ai;
  }

  // transformer slots: consecutive (X -> S) domains where X is the type of the
  // last term argument, filled from its coercion entry
  std::vector<Cand> out;
  const Cand* object = args.empty() ? nullptr : &args.back();
  if (object && object->entry && object->type && type->kind == SemType::Kind::Arrow &&
      type->a->kind == SemType::Kind::Arrow && alphaEq(type->a->a, object->type)) {
    std::vector<TypePtr> targets;
    TypePtr scan = type;
    while (scan->kind == SemType::Kind::Arrow && scan->a->kind == SemType::Kind::Arrow &&
           alphaEq(scan->a->a, object->type) &&
           scan->a->b->kind == SemType::Kind::Base) {
      targets.push_back(scan->a->b);
      scan = scan->b;
    }
    auto assignments = assignCoercionSlots(*object->entry, targets);
    if (assignments.empty()) {
      bool eachSlotHadOptions = true;
      for (auto& t : targets)
        if (coercionsTo(*object->entry, t).empty()) eachSlotHadOptions = false;
      if (eachSlotHadOptions)
        st.recordClash("rigid-exclusivity: the coercions of '" + object->surface +
                       "' required for functor type " + show(type) +
                       " cannot be combined (a rigid coercion excludes all others)");
      else
        st.recordClash("no coercion on '" + object->surface + "' fits functor type " +
                       show(type) + " (argument type " + show(object->type) + ")");
      return {};
    }
    for (auto& pick : assignments) {
      Cand c = acc;
      c.term = term;
      for (auto& co : pick) c.term = mkApp(c.term, co.term);
      c.type = scan;
      out.push_back(std::move(c));
    }
    return out;
  }

  acc.term = term;
  acc.type = type;
  out.push_back(std::move(acc));
  return out;
}

inline std::vector<Cand> applyDetCand(ComposeState& st, const Cand& fc, const Cand& xc) {
  if (!xc.type || xc.type->kind != SemType::Kind::Arrow ||
      xc.type->a->kind != SemType::Kind::Base ||
      xc.type->b->kind != SemType::Kind::Prop) {
    st.recordClash("determiner '" + fc.surface + "' needs a property, got argument of type " +
                   typeOfCand(xc));
    return {};
  }
  const DetEntry& det = *fc.det;
  std::string desc = fc.surface + " " + xc.surface;

  // definite co-reference: `the N` re-uses the referent introduced by `a N`
  if (det.kind == DetKind::Iota && st.disc) {
    for (auto it = st.disc->referents.rbegin(); it != st.disc->referents.rend(); ++it) {
      if (it->indefinite && it->noun == xc.surface) {
        Cand c = xc;
        c.term = it->term;
        c.type = it->sort;
        c.entry = nullptr;
        c.refs.push_back({{desc, xc.surface, it->term, it->sort, it->logic, false}, false});
        return {c};
      }
    }
  }

  int index = 0;
  if (st.disc && det.kind == DetKind::Epsilon) index = st.disc->indefCounts[desc] + 1;

  auto d = applyDeterminer(st.lex.ctx, det, xc.term, index);
  Cand c = xc;
  c.term = d.term;
  c.type = xc.type->a;
  c.entry = nullptr;
  c.presups.insert(c.presups.end(), d.presuppositions.begin(), d.presuppositions.end());
  std::string key = index >= 2 ? desc + "_" + std::to_string(index) : desc;
  LTermPtr logic = d.evaluable ? readbackTerm(st.lex.ctx, d.term) : nullptr;
  bool track = det.kind == DetKind::Epsilon || det.kind == DetKind::Iota;
  c.refs.push_back(
      {{key, xc.surface, d.term, c.type, logic, det.kind == DetKind::Epsilon}, track});
  return {c};
}

inline std::vector<Cand> applyPair(ComposeState& st, const Cand& fc, const Cand& xc) {
  if (fc.det) return applyDetCand(st, fc, xc);
  if (xc.det) {
    st.recordClash("determiner '" + xc.surface + "' cannot be an argument");
    return {};
  }

  // polymorphic functor: defer instantiation until the arguments fix it
  if (fc.pendingHead || (fc.type && fc.type->kind == SemType::Kind::Pi)) {
    TermPtr head = fc.pendingHead ? fc.pendingHead : fc.term;
    TypePtr headType = fc.pendingHead ? fc.pendingType : fc.type;
    std::vector<Cand> args = fc.pendingArgs;
    args.push_back(xc);
    std::optional<Cand> pending;
    auto got = finishPolyApply(st, head, headType, args, pending);
    std::vector<Cand> out;
    for (auto& g : got) {
      Cand c = g;
      c.surface = fc.surface + " " + xc.surface;
      std::vector<FormulaPtr> presups = fc.presups;
      presups.insert(presups.end(), c.presups.begin(), c.presups.end());
      c.presups = std::move(presups);
      std::vector<RefUse> refs = fc.refs;
      refs.insert(refs.end(), c.refs.begin(), c.refs.end());
      c.refs = std::move(refs);
      out.push_back(std::move(c));
    }
    if (pending) {
      Cand c = *pending;
      c.surface = fc.surface + " " + xc.surface;
      c.presups = fc.presups;
      c.refs = fc.refs;
      out.push_back(std::move(c));
    }
    return out;
  }
  if (!fc.term || !xc.term) {
    st.recordClash("unresolved subterm under '" + fc.surface + " " + xc.surface + "'");
    return {};
  }

  std::vector<Cand> out;
  auto push = [&](TermPtr term, TypePtr type, const Cand& convertedArg) {
    Cand c;
    c.term = std::move(term);
    c.type = std::move(type);
    c.surface = fc.surface + " " + xc.surface;
    c.presups = fc.presups;
    c.refs = fc.refs;
    mergeAux(c, convertedArg);
    out.push_back(std::move(c));
  };

  if (fc.type->kind == SemType::Kind::Arrow) {
    for (auto& v : convertArg(xc, fc.type->a)) push(mkApp(fc.term, v.term), fc.type->b, v);
    if (!out.empty()) return out;

    // generalized-quantifier lifting: F : D -> E -> t applied to A : (D->t)->t
    // becomes \w:E. A (\v:D. (F v) w)
    const TypePtr& ft = fc.type;
    if (ft->b->kind == SemType::Kind::Arrow && ft->b->b->kind == SemType::Kind::Prop &&
        xc.type->kind == SemType::Kind::Arrow &&
        alphaEq(xc.type, arrow(arrow(ft->a, propType()), propType()))) {
      const TypePtr& d = ft->a;
      const TypePtr& e = ft->b->a;
      std::set<std::string> avoid;
      collectVarNames(fc.term, avoid);
      collectVarNames(xc.term, avoid);
      std::string w = freshName("w", avoid);
      avoid.insert(w);
      std::string v = freshName("v", avoid);
      TermPtr inner = mkLam(v, d, mkApp(mkApp(fc.term, mkVar(v, d)), mkVar(w, e)));
      push(mkLam(w, e, mkApp(xc.term, inner)), arrow(e, propType()), xc);
      return out;
    }
  }

  // swapped application: the right subtree is the semantic functor
  if (xc.type->kind == SemType::Kind::Arrow) {
    for (auto& v : convertArg(fc, xc.type->a)) {
      Cand c;
      c.term = mkApp(xc.term, v.term);
      c.type = xc.type->b;
      c.surface = fc.surface + " " + xc.surface;
      c.presups = v.presups;
      c.refs = v.refs;
      mergeAux(c, xc);
      out.push_back(std::move(c));
    }
  }

  if (out.empty())
    st.recordClash("cannot apply functor of type " + typeOfCand(fc) +
                   " to argument of type " + typeOfCand(xc));
  return out;
}

inline std::vector<Cand> composeTree(ComposeState& st, const TreePtr& tree) {
  if (tree->leaf()) {
    const std::string& w = tree->word;
    if (isPronoun(w)) {
      if (!st.disc || st.disc->referents.empty())
        fail("NoAntecedent", "pronoun '" + w + "' has no prior referent");
      std::vector<Cand> out;
      for (auto it = st.disc->referents.rbegin(); it != st.disc->referents.rend(); ++it) {
        Cand c;
        c.term = it->term;
        c.type = it->sort;
        c.surface = w;
        c.refs.push_back({{w, it->noun, it->term, it->sort, it->logic, false}, false});
        out.push_back(std::move(c));
      }
      return out;
    }
    if (st.mode == ComposeMode::Epsilon) {
      auto dit = st.lex.dets.find(w);
      if (dit != st.lex.dets.end()) {
        Cand c;
        c.det = &dit->second;
        c.surface = w;
        return {c};
      }
    }
    auto eit = st.lex.entries.find(w);
    if (eit != st.lex.entries.end()) {
      Cand c;
      c.term = eit->second.principal;
      c.type = eit->second.principalType;
      c.entry = &eit->second;
      c.surface = w;
      return {c};
    }
    if (st.mode == ComposeMode::Gq && st.lex.dets.count(w))
      fail("UnknownWord", "'" + w + "' has no generalized-quantifier term in this lexicon");
    fail("UnknownWord", "'" + w + "' is not in the lexicon");
  }

  auto fs = composeTree(st, tree->fun);
  auto xs = composeTree(st, tree->arg);
  std::vector<Cand> out;
  for (auto& fc : fs)
    for (auto& xc : xs)
      for (auto& c : applyPair(st, fc, xc)) {
        bool dup = false;
        for (auto& prev : out)
          if (prev.term && c.term && alphaEq(prev.term, c.term)) dup = true;
        if (!dup) out.push_back(std::move(c));
      }
  return out;
}

}  // namespace detail

inline Derivation compose(const Lexicon& lex, const TreePtr& tree, ComposeMode mode,
                          DiscourseState* disc = nullptr, bool keepTrace = false) {
  detail::ComposeState st{lex, mode, disc, ""};
  auto cands = detail::composeTree(st, tree);

  Derivation d;
  // prefer a candidate of proposition type
  const detail::Cand* chosen = nullptr;
  for (auto& c : cands)
    if (c.term && c.type && c.type->kind == SemType::Kind::Prop) {
      chosen = &c;
      break;
    }
  if (!chosen)
    for (auto& c : cands)
      if (c.term) {
        chosen = &c;
        break;
      }
  if (!chosen) {
    d.status = "rejected";
    d.reason = st.clash.empty() ? "no candidate derivation" : st.clash;
    return d;
  }
  d.alternatives = 0;
  for (auto& c : cands)
    if (c.term && &c != chosen) ++d.alternatives;

  d.raw = chosen->term;
  auto [nf, trace] =
      normalizeTerm(lex.ctx, chosen->term, kDefaultFuel, Strategy::leftmostOutermost(),
                    keepTrace);
  d.normalForm = nf;
  d.trace = trace;
  d.resultType = typeOf(lex.ctx, nf);
  if (d.resultType->kind == SemType::Kind::Prop) d.logicalForm = readback(lex.ctx, nf);
  d.presuppositions = chosen->presups;
  for (auto& r : chosen->refs) {
    d.referents.emplace_back(r.ref.key, r.ref.logic);
    if (r.fresh && disc) {
      disc->referents.push_back(r.ref);
      if (r.ref.indefinite) {
        // key "a man_2" counts under its description "a man"
        std::string desc = r.ref.key;
        size_t us = desc.rfind('_');
        if (us != std::string::npos && us > 0 &&
            desc.find_first_not_of("0123456789", us + 1) == std::string::npos)
          desc = desc.substr(0, us);
        ++disc->indefCounts[desc];
      }
    }
  }
  return d;
}

inline std::vector<Derivation> runDiscourse(const Lexicon& lex,
                                            const std::vector<TreePtr>& trees,
                                            ComposeMode mode = ComposeMode::Epsilon,
                                            bool keepTrace = false) {
  DiscourseState disc;
  std::vector<Derivation> out;
  for (auto& t : trees) out.push_back(compose(lex, t, mode, &disc, keepTrace));
  return out;
}

}  // namespace mgl
