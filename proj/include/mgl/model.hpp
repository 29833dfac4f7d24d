#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mgl/formula.hpp"
#include "mgl/hilbert.hpp"

namespace mgl {

// Finite models with explicit extensional choice functions: the semantics of
// eps x.F is choice({a : F(a)}), of tau x.F the dual, of iota x.F the unique
// witness or Undefined. Undefined arguments make an atom false.

struct FiniteModel {
  std::vector<std::string> sortOrder;
  std::map<std::string, std::vector<std::string>> domains;  // declaration order

  std::map<std::string, std::string> constSort;
  std::map<std::string, std::string> constVal;

  struct Fun {
    std::vector<std::string> argSorts;
    std::string resultSort;
    std::map<std::vector<std::string>, std::string> table;
  };
  std::map<std::string, Fun> funs;

  struct PredExt {
    std::vector<std::string> argSorts;
    std::set<std::vector<std::string>> tuples;
  };
  std::map<std::string, PredExt> preds;
  std::vector<std::string> predOrder;

  // explicit entries; lookups fall back to the least-element default
  std::map<std::string, std::map<std::set<std::string>, std::string>> choice;

  const std::vector<std::string>& domain(const std::string& sort) const {
    auto it = domains.find(sort);
    if (it == domains.end()) fail("SignatureMismatch", "model has no sort '" + sort + "'");
    return it->second;
  }

  bool inDomain(const std::string& sort, const std::string& atom) const {
    for (auto& d : domain(sort))
      if (d == atom) return true;
    return false;
  }

  // choice(S) for nonempty S defaults to the least member in domain order;
  // choice({}) defaults to the least domain element
  std::string choose(const std::string& sort, const std::set<std::string>& subset) const {
    auto sit = choice.find(sort);
    if (sit != choice.end()) {
      auto it = sit->second.find(subset);
      if (it != sit->second.end()) return it->second;
    }
    const auto& dom = domain(sort);
    if (dom.empty()) fail("SignatureMismatch", "empty domain for sort '" + sort + "'");
    if (subset.empty()) return dom.front();
    for (auto& d : dom)
      if (subset.count(d)) return d;
    fail("SignatureMismatch", "choice subset contains non-domain atoms");
  }

  void addSort(const std::string& name, std::vector<std::string> dom) {
    if (dom.empty()) fail("ParseError", "sort '" + name + "' has an empty domain");
    if (!domains.count(name)) sortOrder.push_back(name);
    domains[name] = std::move(dom);
  }

  void addPred(const std::string& name, std::vector<std::string> argSorts,
               std::set<std::vector<std::string>> tuples) {
    if (!preds.count(name)) predOrder.push_back(name);
    preds[name] = {std::move(argSorts), std::move(tuples)};
  }
};

inline Signature modelSignature(const FiniteModel& m) {
  Signature sig;
  for (auto& s : m.sortOrder) sig.addSort(s);
  for (auto& [n, p] : m.preds) sig.preds[n] = p.argSorts;
  for (auto& [n, f] : m.funs) sig.funs[n] = {f.argSorts, f.resultSort};
  for (auto& [n, s] : m.constSort) sig.consts[n] = s;
  return sig;
}

// -- model file format ------------------------------------------------------
//   sort S = a b c
//   const k : S = a
//   fun f : S1 S2 -> S = a b -> c; ...
//   pred P : S1 S2 = {a b; c d}
//   choice S {a,b} -> a        (also: choice S {} -> a)

namespace detail {

inline std::vector<std::string> splitWords(const std::string& s, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (seps.find(c) != std::string::npos || isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline std::string trimWs(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

inline FiniteModel parseModel(const std::string& text) {
  FiniteModel m;
  std::istringstream in(text);
  std::string line;
  int lineNo = 0;
  auto bad = [&](const std::string& why) {
    fail("ParseError", "model line " + std::to_string(lineNo) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineNo;
    std::string s = detail::trimWs(line);
    if (s.empty() || s[0] == '#') continue;

    if (s.rfind("sort ", 0) == 0) {
      size_t eq = s.find('=');
      if (eq == std::string::npos) bad("expected '='");
      std::string name = detail::trimWs(s.substr(5, eq - 5));
      auto atoms = detail::splitWords(s.substr(eq + 1), ",");
      m.addSort(name, atoms);
      continue;
    }
    if (s.rfind("const ", 0) == 0) {
      size_t colon = s.find(':'), eq = s.find('=');
      if (colon == std::string::npos || eq == std::string::npos) bad("expected ':' and '='");
      std::string name = detail::trimWs(s.substr(6, colon - 6));
      std::string sort = detail::trimWs(s.substr(colon + 1, eq - colon - 1));
      std::string atom = detail::trimWs(s.substr(eq + 1));
      if (!m.inDomain(sort, atom)) bad("atom '" + atom + "' not in sort " + sort);
      m.constSort[name] = sort;
      m.constVal[name] = atom;
      continue;
    }
    if (s.rfind("fun ", 0) == 0) {
      size_t colon = s.find(':'), eq = s.find('=');
      if (colon == std::string::npos || eq == std::string::npos) bad("expected ':' and '='");
      std::string name = detail::trimWs(s.substr(4, colon - 4));
      std::string sig = s.substr(colon + 1, eq - colon - 1);
      size_t arr = sig.find("->");
      if (arr == std::string::npos) bad("expected '->' in function signature");
      FiniteModel::Fun fn;
      fn.argSorts = detail::splitWords(sig.substr(0, arr), "");
      fn.resultSort = detail::trimWs(sig.substr(arr + 2));
      // entries separated by ';', each `a b -> c`
      std::string rhs = s.substr(eq + 1);
      std::istringstream es(rhs);
      std::string ent;
      while (std::getline(es, ent, ';')) {
        ent = detail::trimWs(ent);
        if (ent.empty()) continue;
        size_t a = ent.find("->");
        if (a == std::string::npos) bad("expected '->' in function entry");
        auto args = detail::splitWords(ent.substr(0, a), ",");
        std::string res = detail::trimWs(ent.substr(a + 2));
        if (args.size() != fn.argSorts.size()) bad("function entry arity mismatch");
        fn.table[args] = res;
      }
      m.funs[name] = std::move(fn);
      continue;
    }
    if (s.rfind("pred ", 0) == 0) {
      size_t colon = s.find(':'), eq = s.find('=');
      if (colon == std::string::npos || eq == std::string::npos) bad("expected ':' and '='");
      std::string name = detail::trimWs(s.substr(5, colon - 5));
      auto argSorts = detail::splitWords(s.substr(colon + 1, eq - colon - 1), "");
      std::string ext = detail::trimWs(s.substr(eq + 1));
      if (ext.empty() || ext.front() != '{' || ext.back() != '}') bad("expected {...}");
      std::set<std::vector<std::string>> tuples;
      std::istringstream ts(ext.substr(1, ext.size() - 2));
      std::string tup;
      while (std::getline(ts, tup, ';')) {
        auto atoms = detail::splitWords(tup, ",");
        if (atoms.empty()) continue;
        if (atoms.size() != argSorts.size()) bad("tuple arity mismatch for '" + name + "'");
        for (size_t i = 0; i < atoms.size(); ++i)
          if (!m.inDomain(argSorts[i], atoms[i]))
            bad("atom '" + atoms[i] + "' not in sort " + argSorts[i]);
        tuples.insert(atoms);
      }
      m.addPred(name, argSorts, std::move(tuples));
      continue;
    }
    if (s.rfind("choice ", 0) == 0) {
      auto open = s.find('{');
      auto close = s.find('}');
      auto arr = s.find("->");
      if (open == std::string::npos || close == std::string::npos || arr == std::string::npos)
        bad("expected 'choice S {..} -> a'");
      std::string sort = detail::trimWs(s.substr(7, open - 7));
      auto atoms = detail::splitWords(s.substr(open + 1, close - open - 1), ",");
      std::string val = detail::trimWs(s.substr(arr + 2));
      std::set<std::string> subset(atoms.begin(), atoms.end());
      for (auto& a : subset)
        if (!m.inDomain(sort, a)) bad("atom '" + a + "' not in sort " + sort);
      if (!m.inDomain(sort, val)) bad("atom '" + val + "' not in sort " + sort);
      if (!subset.empty() && !subset.count(val))
        bad("inadmissible choice: '" + val + "' not in the subset");
      m.choice[sort][subset] = val;
      continue;
    }
    bad("unrecognized directive");
  }
  if (m.sortOrder.empty()) fail("ParseError", "model declares no sorts");
  return m;
}

inline std::string printModel(const FiniteModel& m) {
  std::ostringstream out;
  for (auto& s : m.sortOrder) {
    out << "sort " << s << " =";
    for (auto& a : m.domains.at(s)) out << " " << a;
    out << "\n";
  }
  for (auto& [n, s] : m.constSort)
    out << "const " << n << " : " << s << " = " << m.constVal.at(n) << "\n";
  for (auto& [n, f] : m.funs) {
    out << "fun " << n << " :";
    for (auto& a : f.argSorts) out << " " << a;
    out << " -> " << f.resultSort << " =";
    bool first = true;
    for (auto& [args, res] : f.table) {
      out << (first ? " " : "; ");
      first = false;
      for (size_t i = 0; i < args.size(); ++i) out << (i ? "," : "") << args[i];
      out << " -> " << res;
    }
    out << "\n";
  }
  for (auto& n : m.predOrder) {
    const auto& p = m.preds.at(n);
    out << "pred " << n << " :";
    for (auto& a : p.argSorts) out << " " << a;
    out << " = {";
    bool first = true;
    for (auto& tup : p.tuples) {
      if (!first) out << "; ";
      first = false;
      for (size_t i = 0; i < tup.size(); ++i) out << (i ? "," : "") << tup[i];
    }
    out << "}\n";
  }
  for (auto& [s, entries] : m.choice) {
    for (auto& [subset, val] : entries) {
      out << "choice " << s << " {";
      bool first = true;
      for (auto& a : subset) {
        if (!first) out << ",";
        first = false;
        out << a;
      }
      out << "} -> " << val << "\n";
    }
  }
  return out.str();
}

// -- evaluation -------------------------------------------------------------

using Env = std::map<std::string, std::string>;

inline bool evalInModel(const FiniteModel& m, const FormulaPtr& f, Env& env);

inline std::optional<std::string> evalTerm(const FiniteModel& m, const LTermPtr& t, Env& env) {
  switch (t->kind) {
    case LogicTerm::Kind::Const: {
      auto it = m.constVal.find(t->name);
      if (it != m.constVal.end()) return it->second;
      // atoms name themselves
      if (m.inDomain(t->sort, t->name)) return t->name;
      fail("SignatureMismatch", "constant '" + t->name + "' has no interpretation");
    }
    case LogicTerm::Kind::Var: {
      auto it = env.find(t->name);
      if (it == env.end()) fail("SignatureMismatch", "unbound variable '" + t->name + "'");
      return it->second;
    }
    case LogicTerm::Kind::FunApp: {
      auto it = m.funs.find(t->name);
      if (it == m.funs.end()) fail("SignatureMismatch", "unknown function '" + t->name + "'");
      std::vector<std::string> args;
      for (auto& a : t->args) {
        auto v = evalTerm(m, a, env);
        if (!v) return std::nullopt;
        args.push_back(*v);
      }
      auto e = it->second.table.find(args);
      if (e == it->second.table.end())
        fail("SignatureMismatch", "function '" + t->name + "' undefined on a tuple");
      return e->second;
    }
    case LogicTerm::Kind::Epsilon:
    case LogicTerm::Kind::Tau: {
      // tau has its own clause (dual satisfier set) so the duality law is a
      // genuine cross-check between two code paths
      bool wantTrue = t->kind == LogicTerm::Kind::Epsilon;
      std::set<std::string> sat;
      auto saved = env.count(t->name) ? std::optional<std::string>(env[t->name]) : std::nullopt;
      for (auto& d : m.domain(t->sort)) {
        env[t->name] = d;
        if (evalInModel(m, t->body, env) == wantTrue) sat.insert(d);
      }
      if (saved)
        env[t->name] = *saved;
      else
        env.erase(t->name);
      return m.choose(t->sort, sat);
    }
    case LogicTerm::Kind::Iota: {
      std::vector<std::string> sat;
      auto saved = env.count(t->name) ? std::optional<std::string>(env[t->name]) : std::nullopt;
      for (auto& d : m.domain(t->sort)) {
        env[t->name] = d;
        if (evalInModel(m, t->body, env)) sat.push_back(d);
      }
      if (saved)
        env[t->name] = *saved;
      else
        env.erase(t->name);
      if (sat.size() == 1) return sat.front();
      return std::nullopt;  // existence or uniqueness fails
    }
  }
  fail("Internal", "unreachable logic term kind");
}

inline bool evalInModel(const FiniteModel& m, const FormulaPtr& f, Env& env) {
  switch (f->kind) {
    case Formula::Kind::Pred: {
      auto it = m.preds.find(f->name);
      if (it == m.preds.end())
        fail("SignatureMismatch", "unknown predicate '" + f->name + "'");
      std::vector<std::string> args;
      for (auto& a : f->args) {
        auto v = evalTerm(m, a, env);
        if (!v) return false;  // undefined argument: atom is false
        args.push_back(*v);
      }
      return it->second.tuples.count(args) > 0;
    }
    case Formula::Kind::Equal: {
      auto l = evalTerm(m, f->args[0], env);
      if (!l) return false;
      auto r = evalTerm(m, f->args[1], env);
      return r && *l == *r;
    }
    case Formula::Kind::Not:
      return !evalInModel(m, f->l, env);
    case Formula::Kind::And:
      return evalInModel(m, f->l, env) && evalInModel(m, f->r, env);
    case Formula::Kind::Or:
      return evalInModel(m, f->l, env) || evalInModel(m, f->r, env);
    case Formula::Kind::Implies:
      return !evalInModel(m, f->l, env) || evalInModel(m, f->r, env);
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists: {
      bool want = f->kind == Formula::Kind::Exists;
      auto saved = env.count(f->name) ? std::optional<std::string>(env[f->name]) : std::nullopt;
      bool found = false;
      for (auto& d : m.domain(f->sort)) {
        env[f->name] = d;
        if (evalInModel(m, f->l, env) == want) {
          found = true;
          break;
        }
      }
      if (saved)
        env[f->name] = *saved;
      else
        env.erase(f->name);
      return found ? want : !want;
    }
  }
  fail("Internal", "unreachable formula kind");
}

inline bool evalInModel(const FiniteModel& m, const FormulaPtr& f) {
  Env env;
  return evalInModel(m, f, env);
}

inline std::optional<std::string> evalTerm(const FiniteModel& m, const LTermPtr& t) {
  Env env;
  return evalTerm(m, t, env);
}

// All admissible choice-function assignments for one domain: every nonempty
// subset mapped to one of its members, the empty set to the least element.
inline std::vector<std::map<std::set<std::string>, std::string>> allChoiceFunctions(
    const std::vector<std::string>& dom) {
  std::vector<std::set<std::string>> subsets;
  size_t n = dom.size();
  for (size_t mask = 1; mask < (size_t(1) << n); ++mask) {
    std::set<std::string> s;
    for (size_t i = 0; i < n; ++i)
      if (mask & (size_t(1) << i)) s.insert(dom[i]);
    subsets.push_back(std::move(s));
  }
  std::vector<std::map<std::set<std::string>, std::string>> out;
  std::vector<size_t> digits(subsets.size(), 0);
  while (true) {
    std::map<std::set<std::string>, std::string> cf;
    cf[{}] = dom.empty() ? std::string() : dom.front();
    for (size_t i = 0; i < subsets.size(); ++i) {
      auto it = subsets[i].begin();
      std::advance(it, digits[i]);
      cf[subsets[i]] = *it;
    }
    out.push_back(std::move(cf));
    size_t i = 0;
    for (; i < subsets.size(); ++i) {
      if (++digits[i] < subsets[i].size()) break;
      digits[i] = 0;
    }
    if (i == subsets.size()) break;
  }
  return out;
}

// -- exhaustive entailment search -------------------------------------------

struct EntailResult {
  std::optional<FiniteModel> counterModel;  // empty: none found up to maxSize
  int maxSize = 0;
};

namespace detail {

struct Odometer {
  std::vector<size_t> radices;
  std::vector<size_t> digits;

  explicit Odometer(std::vector<size_t> r) : radices(std::move(r)), digits(radices.size(), 0) {
    for (size_t x : radices)
      if (x == 0) fail("Internal", "zero radix");
  }
  bool next() {
    for (size_t i = 0; i < digits.size(); ++i) {
      if (++digits[i] < radices[i]) return true;
      digits[i] = 0;
    }
    return false;
  }
};

inline std::string atomName(size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "a" + std::to_string(i);
}

inline void inferSignatureT(const LTermPtr& t, Signature& sig);

inline void inferSignatureF(const FormulaPtr& f, Signature& sig) {
  switch (f->kind) {
    case Formula::Kind::Pred: {
      std::vector<std::string> argSorts;
      for (auto& a : f->args) {
        argSorts.push_back(a->sort);
        inferSignatureT(a, sig);
      }
      auto it = sig.preds.find(f->name);
      if (it == sig.preds.end())
        sig.preds[f->name] = argSorts;
      else if (it->second != argSorts)
        fail("SignatureMismatch", "predicate '" + f->name + "' used at two sorts");
      return;
    }
    case Formula::Kind::Equal:
      for (auto& a : f->args) inferSignatureT(a, sig);
      return;
    case Formula::Kind::Not:
      inferSignatureF(f->l, sig);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      inferSignatureF(f->l, sig);
      inferSignatureF(f->r, sig);
      return;
    default:
      sig.addSort(f->sort);
      inferSignatureF(f->l, sig);
      return;
  }
}

inline void inferSignatureT(const LTermPtr& t, Signature& sig) {
  sig.addSort(t->sort);
  switch (t->kind) {
    case LogicTerm::Kind::Const:
      sig.consts[t->name] = t->sort;
      return;
    case LogicTerm::Kind::Var:
      return;
    case LogicTerm::Kind::FunApp: {
      std::vector<std::string> argSorts;
      for (auto& a : t->args) {
        argSorts.push_back(a->sort);
        inferSignatureT(a, sig);
      }
      sig.funs[t->name] = {argSorts, t->sort};
      return;
    }
    default:
      inferSignatureF(t->body, sig);
      return;
  }
}

}  // namespace detail

inline EntailResult entailsFinite(const std::vector<FormulaPtr>& premises,
                                  const FormulaPtr& conclusion, int maxSize,
                                  uint64_t enumerationCap = 20'000'000) {
  Signature sig;
  for (auto& p : premises) detail::inferSignatureF(p, sig);
  detail::inferSignatureF(conclusion, sig);
  if (sig.sorts.empty()) sig.addSort("e");

  bool needChoice = hasHilbert(conclusion);
  for (auto& p : premises) needChoice = needChoice || hasHilbert(p);

  std::vector<std::string> sortNames = sig.sorts;
  std::vector<std::string> predNames;
  for (auto& [n, _] : sig.preds) predNames.push_back(n);
  std::vector<std::string> constNames;
  for (auto& [n, _] : sig.consts) constNames.push_back(n);
  std::vector<std::string> funNames;
  for (auto& [n, _] : sig.funs) funNames.push_back(n);

  uint64_t counted = 0;

  // domain sizes, smallest first
  detail::Odometer sizes(std::vector<size_t>(sortNames.size(), size_t(maxSize)));
  do {
    FiniteModel base;
    for (size_t i = 0; i < sortNames.size(); ++i) {
      std::vector<std::string> dom;
      for (size_t j = 0; j <= sizes.digits[i]; ++j) dom.push_back(detail::atomName(j));
      base.addSort(sortNames[i], dom);
    }

    // constant interpretations
    std::vector<size_t> constRadix;
    for (auto& c : constNames) constRadix.push_back(base.domain(sig.consts[c]).size());
    detail::Odometer consts(constRadix.empty() ? std::vector<size_t>{1} : constRadix);
    do {
      FiniteModel mc = base;
      for (size_t i = 0; i < constNames.size(); ++i) {
        const std::string& s = sig.consts[constNames[i]];
        mc.constSort[constNames[i]] = s;
        mc.constVal[constNames[i]] = mc.domain(s)[consts.digits[i]];
      }

      // function tables
      std::vector<std::vector<std::vector<std::string>>> funInputs;
      std::vector<size_t> funRadix;
      for (auto& fn : funNames) {
        auto& [argSorts, resSort] = sig.funs[fn];
        std::vector<std::vector<std::string>> inputs{{}};
        for (auto& s : argSorts) {
          std::vector<std::vector<std::string>> next;
          for (auto& tup : inputs)
            for (auto& d : mc.domain(s)) {
              auto t2 = tup;
              t2.push_back(d);
              next.push_back(std::move(t2));
            }
          inputs = std::move(next);
        }
        size_t resN = mc.domain(resSort).size();
        for (size_t i = 0; i < inputs.size(); ++i) funRadix.push_back(resN);
        funInputs.push_back(std::move(inputs));
      }
      detail::Odometer funTab(funRadix.empty() ? std::vector<size_t>{1} : funRadix);
      do {
        FiniteModel mf = mc;
        {
          size_t d = 0;
          for (size_t i = 0; i < funNames.size(); ++i) {
            auto& [argSorts, resSort] = sig.funs[funNames[i]];
            FiniteModel::Fun fn{argSorts, resSort, {}};
            for (auto& tup : funInputs[i])
              fn.table[tup] = mf.domain(resSort)[funTab.digits[d++]];
            mf.funs[funNames[i]] = std::move(fn);
          }
        }

        // predicate extensions: one bit per possible tuple, empty first
        std::vector<std::vector<std::vector<std::string>>> predTuples;
        std::vector<size_t> predRadix;
        for (auto& pn : predNames) {
          auto& argSorts = sig.preds[pn];
          std::vector<std::vector<std::string>> tuples{{}};
          for (auto& s : argSorts) {
            std::vector<std::vector<std::string>> next;
            for (auto& tup : tuples)
              for (auto& d : mf.domain(s)) {
                auto t2 = tup;
                t2.push_back(d);
                next.push_back(std::move(t2));
              }
            tuples = std::move(next);
          }
          if (tuples.size() > 20) fail("SearchSpaceTooLarge", "predicate '" + pn + "' extension space");
          predRadix.push_back(size_t(1) << tuples.size());
          predTuples.push_back(std::move(tuples));
        }
        detail::Odometer exts(predRadix.empty() ? std::vector<size_t>{1} : predRadix);
        do {
          FiniteModel mp = mf;
          for (size_t i = 0; i < predNames.size(); ++i) {
            std::set<std::vector<std::string>> tuples;
            for (size_t b = 0; b < predTuples[i].size(); ++b)
              if (exts.digits[i] & (size_t(1) << b)) tuples.insert(predTuples[i][b]);
            mp.addPred(predNames[i], sig.preds[predNames[i]], std::move(tuples));
          }

          // choice functions, only when a Hilbert term occurs
          std::vector<std::pair<std::string, std::set<std::string>>> subsets;
          std::vector<size_t> chRadix;
          if (needChoice) {
            for (auto& s : sortNames) {
              const auto& dom = mp.domain(s);
              for (size_t mask = 1; mask < (size_t(1) << dom.size()); ++mask) {
                std::set<std::string> sub;
                for (size_t i = 0; i < dom.size(); ++i)
                  if (mask & (size_t(1) << i)) sub.insert(dom[i]);
                chRadix.push_back(sub.size());
                subsets.emplace_back(s, std::move(sub));
              }
            }
          }
          detail::Odometer choices(chRadix.empty() ? std::vector<size_t>{1} : chRadix);
          do {
            if (++counted > enumerationCap)
              fail("SearchSpaceTooLarge", "more than " + std::to_string(enumerationCap) +
                                              " candidate models");
            FiniteModel m = mp;
            if (needChoice) {
              for (size_t i = 0; i < subsets.size(); ++i) {
                auto it = subsets[i].second.begin();
                std::advance(it, choices.digits[i]);
                m.choice[subsets[i].first][subsets[i].second] = *it;
              }
              for (auto& s : sortNames) m.choice[s][{}] = m.domain(s).front();
            }
            bool ok = true;
            for (auto& p : premises)
              if (!evalInModel(m, p)) {
                ok = false;
                break;
              }
            if (ok && !evalInModel(m, conclusion)) return {m, maxSize};
          } while (!chRadix.empty() && choices.next());
        } while (!predRadix.empty() && exts.next());
      } while (!funRadix.empty() && funTab.next());
    } while (!constRadix.empty() && consts.next());
  } while (sizes.next());

  return {std::nullopt, maxSize};
}

}  // namespace mgl
