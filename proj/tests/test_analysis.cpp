#include <doctest.h>

#include "ipeg/analysis.hpp"
#include "ipeg/gen.hpp"
#include "ipeg/transform.hpp"
#include "support.hpp"

using namespace ipeg;
using namespace ipeg::testing;

TEST_SUITE_BEGIN("analysis");

namespace {

ApproxSet approx_of(const char* text, ApproxVariant v = ApproxVariant::baseline) {
  const Grammar g = G(text);
  return approximate(g, v).of(*g.start);
}

ApproxSet S(std::initializer_list<int> ns) {
  ApproxSet s;
  for (int n : ns) s.add(n);
  return s;
}

}  // namespace

TEST_CASE("approximation base clauses") {
  CHECK(approx_of("start <- \"a\";") == S({1, -1}));
  CHECK(approx_of("start <- eps;") == S({0}));
}

TEST_CASE("approximation of the guarded recursion") {
  // Fixpoint by hand: round 1 gives 0 via eps, round 2 gives 1 via aX;
  // -1 is impossible since eps never fails.
  const Grammar g = G("X <- \"a\" X / eps; start <- X;");
  CHECK(approximate(g).of_rule("X") == S({0, 1}));
}

TEST_CASE("negated nullable choice under both variants") {
  CHECK(approx_of("start <- !(\"a\" / eps);") == S({-1}));
  CHECK(approx_of("start <- !(\"a\" / eps);", ApproxVariant::clause0) ==
        S({-1, 0}));
}

TEST_CASE("clause0 table contains the baseline table") {
  gen::Rng rng(41);
  gen::GrammarCfg cfg;
  cfg.expr.with_star = true;
  cfg.expr.with_plus_opt = true;
  cfg.expr.total_rels_only = false;
  for (int trial = 0; trial < 150; ++trial) {
    const Grammar g = gen::random_grammar(rng, cfg);
    const ApproxTable base = approximate(g, ApproxVariant::baseline);
    const ApproxTable c0 = approximate(g, ApproxVariant::clause0);
    g.for_each_body([&](const Expr& e) {
      CHECK((base.of(e) | c0.of(e)) == c0.of(e));
      if (!c0.of(e).empty()) CHECK(c0.of(e).may_fail());
    });
  }
}

TEST_CASE("tables equal the depth-stratified derivation enumerator") {
  gen::Rng rng(42);
  gen::GrammarCfg cfg;
  cfg.rule_count = 2;
  cfg.expr.max_depth = 3;
  cfg.expr.with_star = true;
  cfg.expr.with_plus_opt = true;
  cfg.expr.total_rels_only = false;
  for (ApproxVariant v : {ApproxVariant::baseline, ApproxVariant::clause0}) {
    for (int trial = 0; trial < 60; ++trial) {
      const Grammar g = gen::random_grammar(rng, cfg);
      const ApproxTable table = approximate(g, v);
      ApproxOracle oracle(g, v);
      g.for_each_body([&](const Expr& e) {
        REQUIRE(table.of(e) == oracle.limit(e));
      });
    }
  }
  // Hand-checked fixtures as well.
  for (const char* text :
       {"X <- \"a\" X / eps; start <- X;", "X <- X; start <- X;",
        "start <- !(\"a\" / eps);", "start <- (\"a\" / eps)* \"b\";"}) {
    const Grammar g = G(text);
    for (ApproxVariant v : {ApproxVariant::baseline, ApproxVariant::clause0}) {
      const ApproxTable table = approximate(g, v);
      ApproxOracle oracle(g, v);
      g.for_each_body(
          [&](const Expr& e) { REQUIRE(table.of(e) == oracle.limit(e)); });
    }
  }
}

TEST_CASE("well-formedness verdicts from the paper") {
  SUBCASE("direct left recursion is rejected") {
    const Grammar g = G("X <- X; start <- X;");
    const WfTable wf = well_formed(g, approximate(g));
    CHECK_FALSE(wf.rule_ok("X"));
    CHECK_FALSE(wf.grammar_ok());
    CHECK(wf.witness(**g.find_rule("X")).find("recursion cycle") !=
          std::string::npos);
  }
  SUBCASE("guarded recursion is accepted") {
    const Grammar g = G("X <- \"a\" X / eps; start <- X;");
    CHECK(well_formed(g, approximate(g)).grammar_ok());
  }
  SUBCASE("safe recursion through a never-failing first branch") {
    const Grammar g = G("X <- eps / X; start <- X;");
    CHECK(well_formed(g, approximate(g)).grammar_ok());
  }
  SUBCASE("nullable repetition body is rejected") {
    const Grammar g = G("start <- (\"a\"?)*;");
    const WfTable wf = well_formed(g, approximate(g));
    CHECK_FALSE(wf.grammar_ok());
    CHECK(wf.first_failure().find("repetition") != std::string::npos);
  }
  SUBCASE("non-total relations under ind and loc are rejected") {
    const Grammar g = G("start <- ind(diff[..-1], \"a\");");
    const WfTable wf = well_formed(g, approximate(g));
    CHECK_FALSE(wf.grammar_ok());
    CHECK(wf.first_failure().find("Rel+") != std::string::npos);
  }
  SUBCASE("a subexpression may be non-well-formed even when unreachable "
          "from the verdict of its parent") {
    // X <- "a" X: the concatenation node is fine, the grammar is not.
    const Grammar g = G("X <- \"a\" X; start <- !X \"a\";");
    const WfTable wf = well_formed(g, approximate(g));
    CHECK(wf.rule_ok("X"));  // the rule body node itself
    CHECK_FALSE(wf.grammar_ok());
  }
}

TEST_CASE("the 3.5 rewrite breaks well-formedness under baseline only") {
  const Grammar g = G("X <- !(\"a\" / eps) X; start <- X;");
  CHECK(well_formed(g, approximate(g)).grammar_ok());

  const Grammar rewritten = make_disjoint(desugar(g));
  const WfTable wf_after = well_formed(rewritten, approximate(rewritten));
  CHECK_FALSE(wf_after.grammar_ok());
  CHECK(wf_after.first_failure().find("recursion cycle") !=
        std::string::npos);

  // Under clause0 the verdicts match before and after (both negative:
  // the lookahead may succeed empty, demanding X recursively).
  const WfTable before_c0 =
      well_formed(g, approximate(g, ApproxVariant::clause0));
  const Grammar rewritten_c0 = make_disjoint(desugar(g));
  const WfTable after_c0 =
      well_formed(rewritten_c0, approximate(rewritten_c0, ApproxVariant::clause0));
  CHECK(before_c0.rule_ok("X") == after_c0.rule_ok("X"));
}

TEST_CASE("well-formedness equals its derivation enumerator") {
  gen::Rng rng(43);
  gen::GrammarCfg cfg;
  cfg.rule_count = 2;
  cfg.expr.max_depth = 3;
  cfg.expr.with_star = true;
  cfg.expr.total_rels_only = false;
  for (int trial = 0; trial < 60; ++trial) {
    const Grammar g = gen::random_grammar(rng, cfg);
    const ApproxTable approx = approximate(g);
    const WfTable wf = well_formed(g, approx);
    WfOracle oracle(g, approx);
    g.for_each_body([&](const Expr& e) { REQUIRE(wf.of(e) == oracle.limit(e)); });
  }
}

TEST_CASE("consumption classification") {
  const Grammar g = G("start <- eps;");
  const ApproxTable t = approximate(g);
  CHECK(consumption_class(*mk_empty(), t) == Consumption::Never);
  CHECK(consumption_class(*mk_terminal("a"), t) == Consumption::Always);
  CHECK(consumption_class(*mk_choice(mk_terminal("a"), mk_empty()), t) ==
        Consumption::Mixed);
  CHECK(consumption_class(*mk_not(mk_terminal("a")), t) ==
        Consumption::Never);
  CHECK(consumption_class(*mk_fail(), t) == Consumption::Never);
}

TEST_CASE("approximation soundness on random concrete runs") {
  gen::Rng rng(44);
  gen::GrammarCfg cfg;
  cfg.expr.with_star = true;
  cfg.expr.with_plus_opt = true;
  cfg.expr.total_rels_only = false;  // soundness holds for any relations
  for (int trial = 0; trial < 400; ++trial) {
    const Grammar g = gen::random_grammar(rng, cfg);
    const ApproxTable table = approximate(g);
    const DiffRel mode = gen::random_rel(rng);
    const ParseState s = gen::random_state(
        rng, gen::random_tokens(rng, cfg.expr.terminals, 5, 6), 6);
    const Outcome o = parse_std(g, g.start, mode, s, 20000);
    const ApproxSet entry = table.of(*g.start);
    if (o.is_failure()) CHECK(entry.may_fail());
    if (o.is_success())
      CHECK((*o.state == s ? entry.may_empty() : entry.may_consume()));
  }
}

TEST_SUITE_END();
