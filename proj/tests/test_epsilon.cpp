#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mgl/formula_parse.hpp"
#include "mgl/hilbert.hpp"
#include "mgl/model.hpp"

using namespace mgl;

// Parses a formula with x as a free variable (unbound identifiers otherwise
// read as constants).
static FormulaPtr openF(const std::string& s) {
  return parseFormula("forall x. (" + s + ")")->l;
}

static bool quantifierFree(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Pred:
    case Formula::Kind::Equal:
      return true;
    case Formula::Kind::Not:
      return quantifierFree(f->l);
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return quantifierFree(f->l) && quantifierFree(f->r);
    default:
      return false;
  }
}

TEST_CASE("tau elimination rewrites to the epsilon dual, innermost first") {
  FormulaPtr f = parseFormula("P(tau x:e. P(x))");
  CHECK(prettyPrint(tauFree(f)) == "P(eps x:e. ~P(x))");
  FormulaPtr g = parseFormula("P(tau x:e. Q(tau y:e. R(x, y)))");
  CHECK(prettyPrint(tauFree(g)) == "P(eps x:e. ~Q(eps y:e. ~R(x, y)))");
}

TEST_CASE("tau duality holds semantically") {
  // P(tau x. P(x)) true iff forall x. P(x)
  auto f = parseFormula("P(tau x. P(x))");
  auto all = parseFormula("forall x. P(x)");
  std::vector<std::string> dom = {"a", "b"};
  for (int mask = 0; mask < 4; ++mask) {
    FiniteModel m;
    m.addSort("e", dom);
    std::set<std::vector<std::string>> ext;
    if (mask & 1) ext.insert({"a"});
    if (mask & 2) ext.insert({"b"});
    m.addPred("P", {"e"}, ext);
    for (auto& ch : allChoiceFunctions(dom)) {
      m.choice["e"] = ch;
      CHECK(evalInModel(m, f) == evalInModel(m, all));
    }
  }
}

TEST_CASE("epsilon axiom: exists x.F equals F at the epsilon term") {
  // all one-sort models of size <= 3, two unary predicates, all admissible
  // choice functions, over a fixed family of 20 formulas
  std::vector<std::string> bodies = {
      "P(x)",
      "Q(x)",
      "~P(x)",
      "P(x) /\\ Q(x)",
      "P(x) \\/ Q(x)",
      "P(x) -> Q(x)",
      "~(P(x) /\\ Q(x))",
      "P(x) /\\ ~Q(x)",
      "~P(x) \\/ ~Q(x)",
      "x = x /\\ P(x)",
      "exists y. (P(y) /\\ Q(x))",
      "forall y. (P(y) -> Q(x))",
      "exists y. (R(x, y))",
      "forall y. (R(x, y) \\/ P(x))",
      "P(x) /\\ (Q(x) -> P(x))",
      "~(P(x) -> Q(x))",
      "(P(x) /\\ Q(x)) \\/ (~P(x) /\\ ~Q(x))",
      "exists y. (y = x /\\ P(y))",
      "P(eps y. Q(y)) /\\ Q(x)",
      "forall y. (y = x -> Q(y))",
  };
  long checked = 0;
  for (size_t n = 1; n <= 3; ++n) {
    std::vector<std::string> dom;
    for (size_t i = 0; i < n; ++i) dom.push_back(std::string(1, char('a' + i)));

    // enumerate predicate extensions as bitmasks
    std::vector<std::vector<std::string>> tuples1;
    std::vector<std::vector<std::string>> tuples2;
    for (auto& d : dom) tuples1.push_back({d});
    for (auto& d : dom)
      for (auto& e : dom) tuples2.push_back({d, e});

    auto choices = allChoiceFunctions(dom);
    for (size_t pm = 0; pm < (size_t(1) << n); ++pm)
      for (size_t qm = 0; qm < (size_t(1) << n); ++qm) {
        FiniteModel m;
        m.addSort("e", dom);
        std::set<std::vector<std::string>> pe, qe, re;
        for (size_t i = 0; i < n; ++i) {
          if (pm & (size_t(1) << i)) pe.insert(tuples1[i]);
          if (qm & (size_t(1) << i)) qe.insert(tuples1[i]);
        }
        // R fixed as the diagonal to keep the space small
        for (auto& d : dom) re.insert({d, d});
        m.addPred("P", {"e"}, pe);
        m.addPred("Q", {"e"}, qe);
        m.addPred("R", {"e", "e"}, re);
        for (auto& ch : choices) {
          m.choice["e"] = ch;
          for (auto& b : bodies) {
            FormulaPtr body = openF(b);
            FormulaPtr ex = existsF("x", "e", body);
            FormulaPtr inst =
                substInFormula(body, "x", epsilonTerm("x", "e", body));
            REQUIRE(evalInModel(m, ex) == evalInModel(m, inst));
            ++checked;
          }
        }
      }
  }
  CHECK(checked > 0);
}

TEST_CASE("translation round-trip on generated prenex-free formulas") {
  std::mt19937 rng(2024);
  auto pick = [&](int n) { return int(rng() % n); };

  // random FO formula of depth <= 3 over unary P,Q and binary R
  std::function<FormulaPtr(int, std::vector<std::string>&)> gen =
      [&](int depth, std::vector<std::string>& scope) -> FormulaPtr {
    int atomOnly = depth <= 0 || scope.size() > 4;
    int k = atomOnly ? pick(2) : pick(6);
    auto var = [&]() -> LTermPtr {
      if (scope.empty()) return lconst("c", "e");
      return lvar(scope[pick(int(scope.size()))], "e");
    };
    switch (k) {
      case 0:
        return pred(pick(2) ? "P" : "Q", {var()});
      case 1:
        return pred("R", {var(), var()});
      case 2:
        return notF(gen(depth - 1, scope));
      case 3:
        return andF(gen(depth - 1, scope), gen(depth - 1, scope));
      case 4:
        return orF(gen(depth - 1, scope), gen(depth - 1, scope));
      default: {
        std::string v = "v" + std::to_string(scope.size());
        scope.push_back(v);
        FormulaPtr body = gen(depth - 1, scope);
        scope.pop_back();
        // vacuous quantifiers are erased by the translation, so keep the
        // bound variable in use
        if (!freeVars(body).count(v)) body = andF(body, pred("P", {lvar(v, "e")}));
        return quantF(pick(2) ? Formula::Kind::Exists : Formula::Kind::ForAll, v, "e",
                      body);
      }
    }
  };

  int withQuantifier = 0;
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> scope;
    FormulaPtr f = gen(3, scope);
    FormulaPtr eps = foToEpsilon(f);
    CHECK(quantifierFree(eps));
    auto back = epsilonToFo(eps);
    REQUIRE(back.has_value());
    CHECK(alphaEq(*back, f));
    if (f->kind == Formula::Kind::Exists || f->kind == Formula::Kind::ForAll)
      ++withQuantifier;
  }
  CHECK(withQuantifier > 10);
}

TEST_CASE("deduction rule checking") {
  auto hyp = parseFormula("P(c)");

  SECTION("tau introduction from a generic variable") {
    InferenceStep s{InferenceRule::TauIntro, openF("P(x)"), "x",
                    parseFormula("P(tau x:e. P(x))")};
    CHECK(checkInference(s, {hyp}));
    // x free in a hypothesis: not generic
    CHECK(!checkInference(s, {openF("Q(x)")}));
    // wrong conclusion
    InferenceStep bad{InferenceRule::TauIntro, openF("P(x)"), "x",
                      parseFormula("Q(tau x:e. P(x))")};
    CHECK(!checkInference(bad, {}));
  }

  SECTION("epsilon introduction from any witness") {
    InferenceStep s{InferenceRule::EpsIntro, parseFormula("P(c)"), "",
                    parseFormula("P(eps x:e. P(x))")};
    CHECK(checkInference(s, {}));
    InferenceStep s2{InferenceRule::EpsIntro, parseFormula("R(c, c)"), "",
                     parseFormula("R(eps x:e. R(x, x), eps x:e. R(x, x))")};
    CHECK(checkInference(s2, {}));
    // near miss: premise uses two different witnesses for one hole
    InferenceStep bad{InferenceRule::EpsIntro, parseFormula("R(c, d)"), "",
                      parseFormula("R(eps x:e. R(x, x), eps x:e. R(x, x))")};
    CHECK(!checkInference(bad, {}));
  }

  SECTION("dual rules") {
    InferenceStep s{InferenceRule::EpsDualIntro, openF("P(x)"), "x",
                    parseFormula("P(eps x:e. ~P(x))")};
    CHECK(checkInference(s, {}));
    InferenceStep t{InferenceRule::TauDualIntro, parseFormula("P(c)"), "",
                    parseFormula("P(tau x:e. ~P(x))")};
    CHECK(checkInference(t, {}));
  }
}

TEST_CASE("iota semantics is unique-witness-or-undefined") {
  FiniteModel m;
  m.addSort("e", {"a", "b"});
  m.addPred("one", {"e"}, {{"a"}});
  m.addPred("none", {"e"}, {});
  m.addPred("two", {"e"}, {{"a"}, {"b"}});
  CHECK(evalTerm(m, parseLogicTerm("iota x. one(x)")) == std::optional<std::string>("a"));
  CHECK(!evalTerm(m, parseLogicTerm("iota x. none(x)")).has_value());
  CHECK(!evalTerm(m, parseLogicTerm("iota x. two(x)")).has_value());
}
