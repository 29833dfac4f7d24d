#include <catch2/catch_amalgamated.hpp>

#include "mgl/formula_parse.hpp"
#include "mgl/hilbert.hpp"
#include "mgl/model.hpp"
#include "mgl/normalize.hpp"
#include "mgl/readback.hpp"
#include "mgl/term_parse.hpp"

using namespace mgl;

static TypingContext basicCtx() {
  TypingContext ctx;
  ctx.declareSort("e");
  ctx.declareConst("Keith", baseSort("e"));
  ctx.declareConst("song", parseType("e -> t", ctx));
  ctx.declareConst("sang", parseType("e -> e -> t", ctx));
  return ctx;
}

TEST_CASE("type parsing and printing round-trips") {
  TypingContext ctx;
  ctx.declareSort("e");
  CHECK(show(parseType("e -> e -> t", ctx)) == "e -> e -> t");
  CHECK(show(parseType("(e -> t) -> t", ctx)) == "(e -> t) -> t");
  CHECK(show(parseType("Pi a. (a -> t) -> a", ctx)) == "Pi a. (a -> t) -> a");
}

TEST_CASE("beta reduction with trace") {
  auto ctx = basicCtx();
  TermPtr t = parseTerm("(\\x:e. sang x x) Keith", ctx);
  auto [nf, trace] = normalizeTerm(ctx, t, 100000, Strategy::leftmostOutermost(), true);
  CHECK(show(nf) == "sang Keith Keith");
  CHECK(trace.steps.size() == 1);
}

TEST_CASE("escaping type variable is rejected") {
  auto ctx = basicCtx();
  // /\a binding over a free x whose type mentions a
  TermPtr bad = mkTyLam("a", mkVar("x", typeVar("a")));
  CHECK_THROWS_AS(typeOf(ctx, bad), Error);
  // generalizing over a variable of unrelated type is fine
  CHECK_NOTHROW(typeOf(ctx, parseTerm("\\x:e. /\\a. x", ctx)));
  CHECK_NOTHROW(typeOf(ctx, parseTerm("/\\a. \\x:a. x", ctx)));
}

TEST_CASE("readback of a quantified sentence") {
  auto ctx = basicCtx();
  TermPtr t = parseTerm("exists (\\y:e. and (song y) (sang Keith y))", ctx);
  CHECK(prettyPrint(readback(ctx, t)) == "exists y:e. (song(y) /\\ sang(Keith, y))");
}

TEST_CASE("formula encoding inverts readback") {
  auto ctx = basicCtx();
  Signature sig;
  sig.addSort("e");
  sig.preds["song"] = {"e"};
  sig.preds["sang"] = {"e", "e"};
  sig.consts["Keith"] = "e";
  FormulaPtr f = parseFormula("exists y:e. (song(y) /\\ sang(Keith, y))", &sig);
  CHECK(alphaEq(readback(ctx, formulaToTerm(sig, f)), f));
}

TEST_CASE("forall-exists translation matches the stepped elimination") {
  FormulaPtr f = parseFormula("forall x. exists y. P(x, y)");
  CHECK(prettyPrint(foToEpsilon(f)) ==
        "P(tau x:e. P(x, eps y:e. P(tau x:e. P(x, y), y)), "
        "eps y:e. P(tau x:e. P(x, y), y))");
  auto back = epsilonToFo(foToEpsilon(f));
  REQUIRE(back.has_value());
  CHECK(alphaEq(*back, f));
}

TEST_CASE("epsilon formula without first-order equivalent") {
  FormulaPtr f = parseFormula("P(eps x. Q(x))");
  CHECK(!epsilonToFo(f).has_value());
}

TEST_CASE("model evaluation of epsilon and iota") {
  FiniteModel m = parseModel(
      "sort e = a b\n"
      "pred P : e = {a}\n"
      "pred king : e = {a; b}\n");
  CHECK(evalInModel(m, parseFormula("P(eps x. P(x))")));
  CHECK(!evalTerm(m, parseLogicTerm("iota x. king(x)")).has_value());
  CHECK(!evalInModel(m, parseFormula("P(iota x. king(x))")));
}

TEST_CASE("entailment search finds the expected counter-model") {
  auto p = parseFormula("P(eps x. Q(x))");
  auto res = entailsFinite({p}, parseFormula("Q(eps x. Q(x))"), 3);
  REQUIRE(res.counterModel.has_value());
  const FiniteModel& m = *res.counterModel;
  CHECK(m.domain("e").size() == 1);
  CHECK(evalInModel(m, p));
  CHECK(!evalInModel(m, parseFormula("Q(eps x. Q(x))")));

  auto res2 = entailsFinite({p}, parseFormula("P(eps x. P(x))"), 3);
  CHECK(!res2.counterModel.has_value());
}
