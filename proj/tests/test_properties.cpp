#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <random>

#include "mgl/normalize.hpp"
#include "mgl/readback.hpp"
#include "mgl/term_parse.hpp"

using namespace mgl;

namespace {

struct TermGen {
  TypingContext ctx;
  std::mt19937 rng;
  std::vector<TypePtr> pool;  // argument types drawn for applications

  explicit TermGen(unsigned seed) : rng(seed) {
    ctx.declareSort("e");
    ctx.declareConst("k1", baseSort("e"));
    ctx.declareConst("k2", baseSort("e"));
    ctx.declareConst("P", parseType("e -> t", ctx));
    ctx.declareConst("R", parseType("e -> e -> t", ctx));
    ctx.declareConst("f", parseType("e -> e", ctx));
    pool = {baseSort("e"), propType(), parseType("e -> e", ctx),
            parseType("e -> t", ctx)};
  }

  int pick(int n) { return int(rng() % unsigned(n)); }

  // closed-form fallback inhabitant of a type
  TermPtr inhabit(const TypePtr& ty) {
    switch (ty->kind) {
      case SemType::Kind::Base:
        return mkConst("k1", ty);
      case SemType::Kind::Prop:
        return mkApp(mkConst("P", parseType("e -> t", ctx)), mkConst("k1", baseSort("e")));
      case SemType::Kind::Arrow: {
        std::string v = "u" + std::to_string(pick(1000));
        return mkLam(v, ty->a, inhabit(ty->b));
      }
      default:
        fail("Internal", "generator does not inhabit this type");
    }
  }

  TermPtr gen(const TypePtr& ty, int budget,
              std::vector<std::pair<std::string, TypePtr>>& env) {
    if (budget <= 0) {
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (alphaEq(it->second, ty) && pick(2)) return mkVar(it->first, it->second);
      return inhabit(ty);
    }
    int k = pick(6);
    if (k <= 1) {
      // application at a pooled argument type; biased toward lambda functors
      TypePtr argTy = pool[pick(int(pool.size()))];
      TermPtr fun;
      if (pick(3)) {
        std::string v = "x" + std::to_string(env.size());
        env.emplace_back(v, argTy);
        TermPtr body = gen(ty, budget - 1, env);
        env.pop_back();
        fun = mkLam(v, argTy, body);
      } else {
        fun = gen(arrow(argTy, ty), budget - 1, env);
      }
      return mkApp(fun, gen(argTy, budget - 1, env));
    }
    if (k == 2 && ty->kind == SemType::Kind::Arrow) {
      std::string v = "x" + std::to_string(env.size());
      env.emplace_back(v, ty->a);
      TermPtr body = gen(ty->b, budget - 1, env);
      env.pop_back();
      return mkLam(v, ty->a, body);
    }
    if (k == 3) {
      // a type-level redex: the polymorphic identity at this type
      TermPtr id = mkTyLam("a", mkLam("z", typeVar("a"), mkVar("z", typeVar("a"))));
      return mkApp(mkTyApp(id, ty), gen(ty, budget - 1, env));
    }
    return gen(ty, 0, env);
  }

  TermPtr closed() {
    std::vector<std::pair<std::string, TypePtr>> env;
    return gen(pool[pick(int(pool.size()))], 4, env);
  }
};

}  // namespace

TEST_CASE("subject reduction and strategy agreement on generated terms") {
  TermGen g(20240517);
  int typeBetaSeen = 0;
  for (int i = 0; i < 1000; ++i) {
    TermPtr t = g.closed();
    TypePtr ty = typeOf(g.ctx, t);

    auto [lo, trace] =
        normalizeTerm(g.ctx, t, kDefaultFuel, Strategy::leftmostOutermost(), true);
    for (auto& step : trace.steps) {
      REQUIRE(alphaEq(typeOf(g.ctx, step.result), ty));
      if (step.rule == "typeBeta") ++typeBetaSeen;
    }

    TermPtr ri = normalizeTerm(g.ctx, t, kDefaultFuel, Strategy::rightmostInnermost()).first;
    REQUIRE(alphaEq(lo, ri));
    for (unsigned seed = 1; seed <= 5; ++seed) {
      TermPtr rnd = normalizeTerm(g.ctx, t, kDefaultFuel, Strategy::randomRedex(seed)).first;
      REQUIRE(alphaEq(lo, rnd));
    }
  }
  CHECK(typeBetaSeen > 0);
}

TEST_CASE("readback inverts the formula encoding on generated formulas") {
  Signature sig;
  sig.addSort("e");
  sig.addSort("u");
  sig.preds["P"] = {"e"};
  sig.preds["Q"] = {"u"};
  sig.preds["R"] = {"e", "u"};
  sig.funs["f"] = {{"e"}, "u"};
  sig.consts["c"] = "e";
  sig.consts["d"] = "u";

  TypingContext ctx;
  ctx.declareSort("e");
  ctx.declareSort("u");
  ctx.declareConst("c", baseSort("e"));
  ctx.declareConst("d", baseSort("u"));
  ctx.declareConst("f", arrow(baseSort("e"), baseSort("u")));
  ctx.declareConst("P", arrow(baseSort("e"), propType()));
  ctx.declareConst("Q", arrow(baseSort("u"), propType()));
  ctx.declareConst("R", arrow(baseSort("e"), arrow(baseSort("u"), propType())));

  std::mt19937 rng(424242);
  auto pick = [&](int n) { return int(rng() % unsigned(n)); };

  std::function<LTermPtr(const std::string&, std::vector<std::pair<std::string, std::string>>&)>
      genT = [&](const std::string& sort,
                 std::vector<std::pair<std::string, std::string>>& scope) -> LTermPtr {
    std::vector<std::string> vars;
    for (auto& [v, s] : scope)
      if (s == sort) vars.push_back(v);
    if (!vars.empty() && pick(2)) return lvar(vars[size_t(pick(int(vars.size())))], sort);
    if (sort == "u" && pick(2)) return funApp("f", {genT("e", scope)}, "u");
    return lconst(sort == "e" ? "c" : "d", sort);
  };

  std::function<FormulaPtr(int, std::vector<std::pair<std::string, std::string>>&)> genF =
      [&](int depth, std::vector<std::pair<std::string, std::string>>& scope) -> FormulaPtr {
    int k = depth <= 0 ? pick(3) : pick(8);
    switch (k) {
      case 0:
        return pred("P", {genT("e", scope)});
      case 1:
        return pred("R", {genT("e", scope), genT("u", scope)});
      case 2:
        return equalF(genT("e", scope), genT("e", scope));
      case 3:
        return notF(genF(depth - 1, scope));
      case 4:
        return andF(genF(depth - 1, scope), genF(depth - 1, scope));
      case 5:
        return orF(genF(depth - 1, scope), genF(depth - 1, scope));
      case 6:
        return impliesF(genF(depth - 1, scope), genF(depth - 1, scope));
      default: {
        std::string sort = pick(2) ? "e" : "u";
        std::string v = "v" + std::to_string(scope.size());
        scope.emplace_back(v, sort);
        FormulaPtr body = genF(depth - 1, scope);
        scope.pop_back();
        return quantF(pick(2) ? Formula::Kind::Exists : Formula::Kind::ForAll, v, sort,
                      body);
      }
    }
  };

  for (int i = 0; i < 500; ++i) {
    std::vector<std::pair<std::string, std::string>> scope;
    FormulaPtr f = genF(3, scope);
    TermPtr enc = formulaToTerm(sig, f);
    REQUIRE(alphaEq(readback(ctx, enc), f));
  }
}
