#include <catch2/catch_amalgamated.hpp>

#include "mgl/formula_parse.hpp"

using namespace mgl;

static Signature sig2() {
  Signature sig;
  sig.addSort("a");
  sig.addSort("b");
  sig.preds["P"] = {"a"};
  sig.preds["Q"] = {"b"};
  sig.preds["R"] = {"a", "b"};
  sig.funs["f"] = {{"a"}, "b"};
  sig.consts["c"] = "a";
  return sig;
}

TEST_CASE("formula parse/print round-trips") {
  for (const char* s : {
           "P(x)",
           "~P(x)",
           "P(x) /\\ Q(y)",
           "P(x) \\/ (Q(y) -> P(x))",
           "forall x:e. exists y:e. R(x, y)",
           "exists x:e. (P(x) /\\ (forall y:e. (P(y) -> y = x)))",
           "P(eps x:e. Q(x))",
           "P(tau x:e. P(x))",
           "P(iota x:e. P(x))",
       }) {
    FormulaPtr f = parseFormula(s);
    CHECK(prettyPrint(parseFormula(prettyPrint(f))) == prettyPrint(f));
  }
}

TEST_CASE("unicode printing") {
  FormulaPtr f = parseFormula("forall x:e. (P(x) -> ~Q(x))");
  CHECK(prettyPrint(f, PrintStyle::Unicode) == "∀x:e. (P(x) → ¬Q(x))");
  FormulaPtr g = parseFormula("P(eps x:e. Q(x))");
  CHECK(prettyPrint(g, PrintStyle::Unicode) == "P(ε x:e. Q(x))");
}

TEST_CASE("constant and function sorts resolve from the signature at parse time") {
  Signature sig = sig2();
  FormulaPtr f = parseFormula("forall x:a. exists y:b. R(x, y)", &sig);
  CHECK(prettyPrint(f) == "forall x:a. exists y:b. R(x, y)");
  checkWellSorted(sig, f);
  FormulaPtr g = parseFormula("Q(f(c))", &sig);
  checkWellSorted(sig, g);
}

TEST_CASE("ill-sorted formulas are rejected") {
  Signature sig = sig2();
  CHECK_THROWS_AS(checkWellSorted(sig, parseFormula("P(c) /\\ Q(c)", &sig)), Error);
  CHECK_THROWS_AS(checkWellSorted(sig, parseFormula("R(c)", &sig)), Error);
}

TEST_CASE("relativization round-trip") {
  // quantifiers over the sub-sort S move to its parent sort with a guard atom
  Signature sig;
  sig.addSort("a");
  sig.preds["S"] = {"a"};
  sig.preds["P"] = {"a"};
  FormulaPtr f = parseFormula("forall x:S. exists y:S. (P(x) /\\ P(y))");
  FormulaPtr rel = relativize(sig, f, "S");
  CHECK(prettyPrint(rel) ==
        "forall x:a. (S(x) -> (exists y:a. (S(y) /\\ (P(x) /\\ P(y)))))");
  CHECK(alphaEq(unrelativize(sig, rel, "S"), f));
  CHECK_THROWS_AS(relativize(sig, f, "nope"), Error);
}

TEST_CASE("hilbert binders print their indices") {
  FormulaPtr f = parseFormula("P(eps_2 x:e. P(x))");
  CHECK(prettyPrint(f) == "P(eps_2 x:e. P(x))");
}
