#include "ipeg/equiv.hpp"

#include <algorithm>

#include "ipeg/errors.hpp"
#include "ipeg/gen.hpp"

namespace ipeg {

EquivReport run_equiv(const Grammar& a, const Grammar& b,
                      const EquivOptions& opt) {
  const std::set<std::string> ta = a.terminals();
  const std::set<std::string> tb = b.terminals();
  std::vector<std::string> alphabet;
  std::set_union(ta.begin(), ta.end(), tb.begin(), tb.end(),
                 std::back_inserter(alphabet));
  if (!ta.empty() && !tb.empty()) {
    std::vector<std::string> shared;
    std::set_intersection(ta.begin(), ta.end(), tb.begin(), tb.end(),
                          std::back_inserter(shared));
    if (shared.empty())
      throw Error("grammars share no terminal alphabet");
  }

  EquivReport report;
  report.trials = opt.trials;
  report.seed = opt.seed;
  gen::Rng rng(opt.seed);
  for (std::uint64_t t = 0; t < opt.trials; ++t) {
    std::vector<Token> tokens =
        t % 10 < 3 ? gen::grammar_walk_tokens(rng, a, opt.max_len, opt.max_col)
                   : gen::random_tokens(rng, alphabet, opt.max_len,
                                        opt.max_col);
    const ParseState s = initial_state(tokens);
    const Outcome oa = parse_std(a, a.start, opt.mode, s, opt.fuel);
    const Outcome ob = parse_std(b, b.start, opt.mode, s, opt.fuel);
    if (!(oa == ob))
      report.disagreements.push_back(
          Disagreement{std::move(tokens), opt.mode, oa, ob});
  }

  // Canonical order so the report is independent of trial scheduling.
  std::sort(report.disagreements.begin(), report.disagreements.end(),
            [](const Disagreement& x, const Disagreement& y) {
              auto key = [](const Disagreement& d) {
                std::string k;
                for (const Token& t : d.input)
                  k += t.name + "@" + std::to_string(t.col) + " ";
                return k;
              };
              return key(x) < key(y);
            });
  return report;
}

}  // namespace ipeg
