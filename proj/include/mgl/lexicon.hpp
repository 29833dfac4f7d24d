#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mgl/formula.hpp"
#include "mgl/normalize.hpp"
#include "mgl/readback.hpp"
#include "mgl/term_parse.hpp"

namespace mgl {

// The generative lexicon: word entries with a principal term plus optional
// flexible/rigid coercions, and determiner entries mapped to typed Hilbert
// constants.

struct Coercion {
  std::string name;
  TermPtr term;
  TypePtr from, to;
  bool rigid = false;
};

struct LexEntry {
  std::string word;
  TermPtr principal;
  TypePtr principalType;
  std::vector<Coercion> coercions;  // identity first, then declaration order
};

enum class DetKind { Epsilon, Tau, Iota, Generalized };

struct DetEntry {
  std::string word;
  DetKind kind = DetKind::Epsilon;
  std::string genName;  // Generalized only: the constant's name
};

struct Lexicon {
  TypingContext ctx;
  std::vector<std::string> sortOrder;
  std::map<std::string, std::string> glosses;
  std::map<std::string, LexEntry> entries;
  std::map<std::string, DetEntry> dets;

  bool hasWord(const std::string& w) const { return entries.count(w) || dets.count(w); }
};

// -- lexicon file format ----------------------------------------------------
//   sort T "town"
//   const lpl : T
//   word Liverpool = lpl
//     coerce t3 : T -> Pl flexible
//   det a = epsilon
//   det most = generalized most_q

inline Lexicon loadLexicon(const std::string& text) {
  Lexicon lex;
  std::istringstream in(text);
  std::string rawLine;
  int lineNo = 0;
  LexEntry* current = nullptr;
  auto bad = [&](const std::string& why) {
    fail("ParseError", "lexicon line " + std::to_string(lineNo) + ": " + why);
  };

  while (std::getline(in, rawLine)) {
    ++lineNo;
    bool indented = !rawLine.empty() && (rawLine[0] == ' ' || rawLine[0] == '\t');
    std::string line = rawLine;
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    size_t e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    if (line.empty() || line[0] == '#') continue;

    if (line.rfind("sort ", 0) == 0) {
      std::string rest = line.substr(5);
      std::string name, gloss;
      size_t q = rest.find('"');
      if (q != std::string::npos) {
        size_t q2 = rest.find('"', q + 1);
        if (q2 == std::string::npos) bad("unterminated gloss");
        gloss = rest.substr(q + 1, q2 - q - 1);
        rest = rest.substr(0, q);
      }
      size_t we = rest.find_last_not_of(" \t");
      if (we == std::string::npos) bad("missing sort name");
      name = rest.substr(0, we + 1);
      lex.ctx.declareSort(name);
      lex.sortOrder.push_back(name);
      lex.glosses[name] = gloss;
      current = nullptr;
      continue;
    }
    if (line.rfind("const ", 0) == 0) {
      size_t colon = line.find(':');
      if (colon == std::string::npos) bad("expected ':' in const declaration");
      std::string name = line.substr(6, colon - 6);
      name.erase(name.find_last_not_of(" \t") + 1);
      TypePtr ty;
      try {
        ty = parseType(line.substr(colon + 1), lex.ctx);
      } catch (const Error& err) {
        bad(err.detail());
      }
      lex.ctx.declareConst(name, ty);
      current = nullptr;
      continue;
    }
    if (line.rfind("word ", 0) == 0) {
      size_t eq = line.find('=');
      if (eq == std::string::npos) bad("expected '=' in word entry");
      std::string surface = line.substr(5, eq - 5);
      surface.erase(surface.find_last_not_of(" \t") + 1);
      if (surface.empty()) bad("missing surface form");
      LexEntry entry;
      entry.word = surface;
      try {
        entry.principal = parseTerm(line.substr(eq + 1), lex.ctx);
        entry.principalType = typeOf(lex.ctx, entry.principal);
      } catch (const Error& err) {
        fail("TypeErrorInEntry", "'" + surface + "': " + err.detail());
      }
      auto [it, fresh] = lex.entries.insert_or_assign(surface, std::move(entry));
      (void)fresh;
      current = &it->second;
      continue;
    }
    if (line.rfind("coerce ", 0) == 0) {
      if (!indented || !current) bad("coerce outside a word entry");
      size_t colon = line.find(':');
      size_t arr = line.find("->");
      if (colon == std::string::npos || arr == std::string::npos)
        bad("expected 'coerce <name> : <S> -> <T> flexible|rigid'");
      std::string name = line.substr(7, colon - 7);
      name.erase(name.find_last_not_of(" \t") + 1);
      std::string from = line.substr(colon + 1, arr - colon - 1);
      from.erase(0, from.find_first_not_of(" \t"));
      from.erase(from.find_last_not_of(" \t") + 1);
      std::string rest = line.substr(arr + 2);
      std::istringstream rs(rest);
      std::string to, rigidity;
      rs >> to >> rigidity;
      bool rigid;
      if (rigidity == "rigid")
        rigid = true;
      else if (rigidity == "flexible")
        rigid = false;
      else
        bad("rigidity must be 'flexible' or 'rigid'");
      if (!lex.ctx.hasSort(from) || !lex.ctx.hasSort(to)) bad("undeclared sort in coercion");
      TypePtr want = arrow(baseSort(from), baseSort(to));
      auto cit = lex.ctx.consts.find(name);
      if (cit == lex.ctx.consts.end())
        fail("TypeErrorInEntry", "'" + current->word + "': coercion '" + name +
                                     "' is not a declared constant");
      if (!alphaEq(cit->second, want))
        fail("TypeErrorInEntry", "'" + current->word + "': coercion '" + name +
                                     "' has type " + show(cit->second) + ", expected " +
                                     show(want));
      current->coercions.push_back(
          {name, mkConst(name, want), baseSort(from), baseSort(to), rigid});
      continue;
    }
    if (line.rfind("det ", 0) == 0) {
      size_t eq = line.find('=');
      if (eq == std::string::npos) bad("expected '=' in det entry");
      std::string surface = line.substr(4, eq - 4);
      surface.erase(surface.find_last_not_of(" \t") + 1);
      std::istringstream rs(line.substr(eq + 1));
      std::string kind, gname;
      rs >> kind >> gname;
      DetEntry det;
      det.word = surface;
      if (kind == "epsilon")
        det.kind = DetKind::Epsilon;
      else if (kind == "tau")
        det.kind = DetKind::Tau;
      else if (kind == "iota")
        det.kind = DetKind::Iota;
      else if (kind == "generalized") {
        if (gname.empty()) bad("generalized determiner needs a constant name");
        det.kind = DetKind::Generalized;
        det.genName = gname;
        lex.ctx.declareConst(gname, hilbertType());
        lex.ctx.generalizedDets.insert(gname);
      } else {
        bad("determiner operator must be epsilon|tau|iota|generalized <name>");
      }
      lex.dets[surface] = det;
      current = nullptr;
      continue;
    }
    bad("unrecognized directive '" + line + "'");
  }

  // identity is an ordinary flexible coercion, competing like any other
  for (auto& [w, entry] : lex.entries) {
    if (entry.principalType->kind != SemType::Kind::Base) continue;
    const std::string& s = entry.principalType->name;
    Coercion id{"Id_" + s, mkLam("x", baseSort(s), mkVar("x", baseSort(s))),
                baseSort(s), baseSort(s), false};
    entry.coercions.insert(entry.coercions.begin(), std::move(id));
  }
  return lex;
}

// -- type-argument inference ------------------------------------------------

// Most specific first-order match of a Pi-type body against a concrete
// instance: unknowns are exactly the Pi-bound variables.
inline void matchTypeRec(const TypePtr& pattern, const TypePtr& concrete,
                         const std::set<std::string>& unknowns,
                         std::map<std::string, TypePtr>& subst) {
  if (pattern->kind == SemType::Kind::Var && unknowns.count(pattern->name)) {
    auto it = subst.find(pattern->name);
    if (it == subst.end()) {
      subst[pattern->name] = concrete;
      return;
    }
    if (!alphaEq(it->second, concrete))
      fail("NoMatch", "variable '" + pattern->name + "' matched against both " +
                          show(it->second) + " and " + show(concrete));
    return;
  }
  if (pattern->kind != concrete->kind)
    fail("NoMatch", "cannot match " + show(pattern) + " against " + show(concrete));
  switch (pattern->kind) {
    case SemType::Kind::Base:
      if (pattern->name != concrete->name)
        fail("NoMatch", "sort " + pattern->name + " vs " + concrete->name);
      return;
    case SemType::Kind::Prop:
    case SemType::Kind::Var:
      if (pattern->kind == SemType::Kind::Var && pattern->name != concrete->name)
        fail("NoMatch", "type variable mismatch");
      return;
    case SemType::Kind::Arrow:
      matchTypeRec(pattern->a, concrete->a, unknowns, subst);
      matchTypeRec(pattern->b, concrete->b, unknowns, subst);
      return;
    case SemType::Kind::Pi:
      fail("NoMatch", "nested Pi types are not matched");
  }
}

inline std::map<std::string, TypePtr> inferTypeArgs(const TypePtr& polyType,
                                                    const TypePtr& expectedInstance) {
  std::set<std::string> unknowns;
  TypePtr body = polyType;
  std::vector<std::string> order;
  while (body->kind == SemType::Kind::Pi) {
    unknowns.insert(body->name);
    order.push_back(body->name);
    body = body->a;
  }
  std::map<std::string, TypePtr> subst;
  matchTypeRec(body, expectedInstance, unknowns, subst);
  for (auto& v : order)
    if (!subst.count(v))
      fail("AmbiguousMatch", "type variable '" + v + "' left unconstrained");
  return subst;
}

// -- coercion resolution ----------------------------------------------------

// Coercions in the entry whose target is `to`, identity first then
// declaration order.
inline std::vector<Coercion> coercionsTo(const LexEntry& entry, const TypePtr& to) {
  std::vector<Coercion> out;
  for (auto& c : entry.coercions)
    if (alphaEq(c.to, to)) out.push_back(c);
  return out;
}

// All per-slot coercion assignments on one argument occurrence, rigid ones
// excluding every other coercion across slots.
inline std::vector<std::vector<Coercion>> assignCoercionSlots(
    const LexEntry& entry, const std::vector<TypePtr>& slotTargets) {
  std::vector<std::vector<Coercion>> perSlot;
  for (auto& t : slotTargets) {
    perSlot.push_back(coercionsTo(entry, t));
    if (perSlot.back().empty()) return {};
  }
  std::vector<std::vector<Coercion>> out;
  std::vector<size_t> digits(perSlot.size(), 0);
  while (true) {
    std::vector<Coercion> pick;
    for (size_t i = 0; i < perSlot.size(); ++i) pick.push_back(perSlot[i][digits[i]]);
    bool ok = true;
    for (auto& c : pick)
      if (c.rigid)
        for (auto& d : pick)
          if (d.name != c.name) ok = false;
    if (ok) out.push_back(pick);
    size_t i = 0;
    for (; i < digits.size(); ++i) {
      if (++digits[i] < perSlot[i].size()) break;
      digits[i] = 0;
    }
    if (i == digits.size()) break;
  }
  return out;
}

// Single-predication variant: candidate terms coercing the entry's principal
// term to the wanted type. Empty result means semantic rejection.
inline std::vector<TermPtr> resolveCoercions(const LexEntry& entry, const TypePtr& wanted) {
  std::vector<TermPtr> out;
  if (alphaEq(entry.principalType, wanted)) out.push_back(entry.principal);
  for (auto& c : entry.coercions) {
    if (!alphaEq(c.from, entry.principalType) || !alphaEq(c.to, wanted)) continue;
    if (c.name.rfind("Id_", 0) == 0) continue;  // identity already covered above
    out.push_back(mkApp(c.term, entry.principal));
  }
  return out;
}

// -- determiners ------------------------------------------------------------

struct DetApplication {
  TermPtr term;                           // eps{S} restriction etc.
  std::vector<FormulaPtr> presuppositions;
  bool evaluable = true;
};

// The Hilbert constant name for a determiner, with discourse indexing for
// repeated indefinites (eps, eps_2, eps_3, ...).
inline std::string detConstName(DetKind k, int index = 0) {
  switch (k) {
    case DetKind::Epsilon:
      return index > 1 ? "eps_" + std::to_string(index) : "eps";
    case DetKind::Tau:
      return "tau";
    case DetKind::Iota:
      return "iota";
    case DetKind::Generalized:
      fail("Internal", "generalized determiners carry their own constant name");
  }
  fail("Internal", "unreachable determiner kind");
}

inline DetApplication applyDeterminer(const TypingContext& ctx, const DetEntry& det,
                                      const TermPtr& restriction, int index = 0) {
  TypePtr rty = typeOf(ctx, restriction);
  if (rty->kind != SemType::Kind::Arrow || rty->a->kind != SemType::Kind::Base ||
      rty->b->kind != SemType::Kind::Prop)
    fail("NotAProperty", "determiner '" + det.word + "' needs a property S -> t, got " +
                             show(rty));
  const TypePtr& s = rty->a;

  std::string cname = det.kind == DetKind::Generalized ? det.genName
                                                       : detConstName(det.kind, index);
  TermPtr term = mkApp(mkTyApp(mkConst(cname, hilbertType()), s), restriction);

  DetApplication out;
  out.term = term;
  out.evaluable = det.kind != DetKind::Generalized;
  if (det.kind == DetKind::Epsilon || det.kind == DetKind::Iota) {
    // existence: restriction holds of the chosen element
    TermPtr exist = normalize(ctx, mkApp(restriction, term));
    out.presuppositions.push_back(readback(ctx, exist));
  }
  if (det.kind == DetKind::Iota) {
    // uniqueness: exists x. (R(x) /\ forall y. (R(y) -> y = x))
    TypePtr prop = arrow(s, propType());
    TermPtr x = mkVar("x", s), y = mkVar("y", s);
    TermPtr andC = mkConst("and", arrow(propType(), arrow(propType(), propType())));
    TermPtr impC = mkConst("implies", arrow(propType(), arrow(propType(), propType())));
    TermPtr eqC = mkConst("=", arrow(s, arrow(s, propType())));
    TermPtr inner = mkLam(
        "y", s, mkApp(mkApp(impC, mkApp(restriction, y)), mkApp(mkApp(eqC, y), x)));
    TermPtr body = mkApp(mkApp(andC, mkApp(restriction, x)),
                         mkApp(mkConst("forall", arrow(prop, propType())), inner));
    TermPtr uniq = mkApp(mkConst("exists", arrow(prop, propType())), mkLam("x", s, body));
    out.presuppositions.push_back(readback(ctx, normalize(ctx, uniq)));
  }
  return out;
}

}  // namespace mgl
