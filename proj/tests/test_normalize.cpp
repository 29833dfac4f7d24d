#include <catch2/catch_amalgamated.hpp>

#include "mgl/normalize.hpp"
#include "mgl/term_parse.hpp"

using namespace mgl;

static TypingContext ctx2() {
  TypingContext ctx;
  ctx.declareSort("e");
  ctx.declareConst("k", baseSort("e"));
  ctx.declareConst("P", parseType("e -> t", ctx));
  ctx.declareConst("R", parseType("e -> e -> t", ctx));
  return ctx;
}

TEST_CASE("trace lines carry index, rule and path") {
  auto ctx = ctx2();
  TermPtr t = parseTerm("(\\x:e. P x) ((\\y:e. y) k)", ctx);
  auto [nf, trace] = normalizeTerm(ctx, t, kDefaultFuel, Strategy::leftmostOutermost(), true);
  CHECK(show(nf) == "P k");
  std::string r = trace.render();
  CHECK(r.find("[1] beta @ ") != std::string::npos);
  CHECK(r.find("[2] beta @ ") != std::string::npos);
}

TEST_CASE("type-level redexes reduce and are traced as typeBeta") {
  auto ctx = ctx2();
  TermPtr t = parseTerm("(/\\a. \\x:a. x) {e} k", ctx);
  auto [nf, trace] = normalizeTerm(ctx, t, kDefaultFuel, Strategy::leftmostOutermost(), true);
  CHECK(show(nf) == "k");
  CHECK(trace.render().find("typeBeta") != std::string::npos);
}

TEST_CASE("strategies agree on the normal form") {
  auto ctx = ctx2();
  TermPtr t = parseTerm("(\\x:e. \\y:e. R x y) ((\\z:e. z) k) ((\\z:e. z) k)", ctx);
  TermPtr lo = normalizeTerm(ctx, t, kDefaultFuel, Strategy::leftmostOutermost()).first;
  TermPtr ri = normalizeTerm(ctx, t, kDefaultFuel, Strategy::rightmostInnermost()).first;
  CHECK(alphaEq(lo, ri));
  for (unsigned seed : {1u, 7u, 42u}) {
    TermPtr rnd = normalizeTerm(ctx, t, kDefaultFuel, Strategy::randomRedex(seed)).first;
    CHECK(alphaEq(lo, rnd));
  }
}

TEST_CASE("random strategy is deterministic for a fixed seed") {
  auto ctx = ctx2();
  TermPtr t = parseTerm("(\\x:e. \\y:e. R x y) ((\\z:e. z) k) ((\\z:e. z) k)", ctx);
  auto a = normalizeTerm(ctx, t, kDefaultFuel, Strategy::randomRedex(99), true);
  auto b = normalizeTerm(ctx, t, kDefaultFuel, Strategy::randomRedex(99), true);
  CHECK(a.second.render() == b.second.render());
}

TEST_CASE("fuel exhaustion raises an error") {
  auto ctx = ctx2();
  TermPtr t = parseTerm("(\\x:e. \\y:e. R x y) ((\\z:e. z) k) ((\\z:e. z) k)", ctx);
  CHECK_THROWS_AS(normalizeTerm(ctx, t, 1), Error);
}

TEST_CASE("normalization rejects ill-typed input") {
  auto ctx = ctx2();
  TermPtr bad = mkApp(mkConst("k", baseSort("e")), mkConst("k", baseSort("e")));
  CHECK_THROWS_AS(normalize(ctx, bad), Error);
}
