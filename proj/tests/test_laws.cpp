#include <doctest.h>

#include "laws.hpp"

using namespace ipeg;
using namespace ipeg::testing;

TEST_SUITE_BEGIN("laws");

TEST_CASE("equivalence laws hold on randomized trials") {
  gen::Rng rng(61);
  for (const Law& law : law_suite()) {
    CAPTURE(law.name);
    const auto failure = run_law(law, rng, 120);
    if (failure) FAIL_CHECK(*failure);
  }
}

TEST_CASE("failure-unit laws used by --simplify") {
  gen::Rng rng(62);
  gen::ExprCfg cfg;
  cfg.max_depth = 3;
  cfg.with_star = true;
  for (int trial = 0; trial < 200; ++trial) {
    Grammar g = G("X0 <- \"a\"; start <- eps;");
    const ExprPtr p = gen::random_expr(rng, cfg);
    const DiffRel mode = gen::random_total_rel(rng);
    const ParseState s =
        gen::random_state(rng, gen::random_tokens(rng, {"a", "b", "c"}, 5, 6),
                          6);
    const ExprPtr F = mk_fail();
    for (const auto& [lhs, rhs] :
         {std::pair{mk_choice(F, p), p}, std::pair{mk_choice(p, F), p},
          std::pair{mk_seq(F, p), F}}) {
      const auto dis = law_disagreement(g, lhs, rhs, mode, s);
      if (dis) FAIL_CHECK(*dis);
    }
  }
}

TEST_SUITE_END();
