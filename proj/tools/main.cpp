#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ipeg/dsl.hpp"
#include "ipeg/equiv.hpp"
#include "ipeg/errors.hpp"
#include "ipeg/gen.hpp"
#include "ipeg/json_io.hpp"
#include "ipeg/lex.hpp"
#include "ipeg/transform.hpp"

using nlohmann::json;

namespace {

constexpr int kExitFailureOutcome = 1;
constexpr int kExitFuel = 2;
constexpr int kExitUsage = 3;
constexpr int kExitNotWellFormed = 4;
constexpr int kExitAmbiguous = 5;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ipeg::Error("cannot read file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ipeg::DiffRel mode_from_flag(const std::string& text) {
  return ipeg::parse_rel(text);
}

std::uint64_t default_fuel() {
  if (const char* env = std::getenv("INDENT_PEG_FUEL")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return ipeg::kDefaultFuel;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

ipeg::ApproxVariant variant_from_flag(const std::string& v) {
  if (v == "baseline") return ipeg::ApproxVariant::baseline;
  if (v == "clause0") return ipeg::ApproxVariant::clause0;
  throw ipeg::Error("unknown variant '" + v + "'");
}

int cmd_parse(const std::string& grammar_file, const std::string& input_file,
              const std::string& mode_text, const std::string& format,
              std::uint64_t fuel, bool strict, bool force) {
  const ipeg::Grammar g = ipeg::parse_grammar_text(read_file(grammar_file));
  const ipeg::DiffRel mode = mode_from_flag(mode_text);
  if (g.requires_eq_mode && !(mode == ipeg::DiffRel::eq()) && !force) {
    std::cerr << "error: grammar requires token mode '=' with the alignment "
                 "flag down (see its '# requires:' header); pass "
                 "--token-mode eq or --force\n";
    return kExitUsage;
  }
  const auto tokens =
      ipeg::lex(read_file(input_file), g.terminals(),
                format == "raw" ? ipeg::InputFormat::Raw
                                : ipeg::InputFormat::Annotated);
  const ipeg::ParseState s = ipeg::initial_state(tokens);
  ipeg::Outcome o;
  if (strict) {
    const ipeg::ApproxTable approx = ipeg::approximate(g);
    o = ipeg::parse_strict(g, g.start, mode, s, approx, fuel);
  } else {
    o = ipeg::parse_std(g, g.start, mode, s, fuel);
  }
  json j = ipeg::outcome_to_json(o);
  j["schema"] = 1;
  emit(j);
  switch (o.kind) {
    case ipeg::Outcome::Kind::Success: return 0;
    case ipeg::Outcome::Kind::Failure: return kExitFailureOutcome;
    case ipeg::Outcome::Kind::FuelExhausted: return kExitFuel;
  }
  return kExitUsage;
}

int cmd_check(const std::string& grammar_file, const std::string& variant,
              bool as_json) {
  const ipeg::Grammar g = ipeg::parse_grammar_text(read_file(grammar_file));
  const ipeg::ApproxTable ap = ipeg::approximate(g, variant_from_flag(variant));
  const ipeg::WfTable wf = ipeg::well_formed(g, ap);
  if (as_json) {
    json j = ipeg::check_report_to_json(g, ap, wf);
    j["schema"] = 1;
    emit(j);
  } else {
    std::cout << "variant: " << variant << "\n";
    auto line = [&](const std::string& name, const ipeg::Expr& body) {
      std::cout << "  " << name << ": approx " << ap.of(body).to_string()
                << ", " << (wf.of(body) ? "well-formed" : "NOT well-formed");
      if (!wf.of(body)) std::cout << " [" << wf.witness(body) << "]";
      std::cout << "\n";
    };
    for (const auto& [name, body] : g.rules()) line(name, *body);
    line("start", *g.start);
    std::cout << (wf.grammar_ok() ? "grammar is well-formed\n"
                                  : "grammar is NOT well-formed\n");
    for (const std::string& w : ipeg::validate(g).warnings)
      std::cout << "warning: " << w << "\n";
  }
  return wf.grammar_ok() ? 0 : 1;
}

int cmd_transform(const std::string& grammar_file, const std::string& upto,
                  const std::string& variant, bool simplify,
                  const std::string& report_file) {
  const ipeg::Grammar g = ipeg::parse_grammar_text(read_file(grammar_file));
  const ipeg::PipelineResult r = ipeg::run_pipeline(
      g, ipeg::parse_stage(upto), variant_from_flag(variant), simplify);
  std::cout << ipeg::pretty_print(r.grammar);
  json report = ipeg::stage_report_to_json(r);
  report["schema"] = 1;
  if (report_file.empty())
    std::cerr << report.dump(2) << "\n";
  else
    std::ofstream(report_file) << report.dump(2) << "\n";
  return 0;
}

int cmd_equiv(const std::string& file_a, const std::string& file_b,
              std::uint64_t trials, std::uint64_t seed, std::size_t max_len,
              ipeg::Col max_col, const std::string& mode_text,
              std::uint64_t fuel) {
  const ipeg::Grammar a = ipeg::parse_grammar_text(read_file(file_a));
  const ipeg::Grammar b = ipeg::parse_grammar_text(read_file(file_b));
  ipeg::EquivOptions opt;
  opt.trials = trials;
  opt.seed = seed;
  opt.max_len = max_len;
  opt.max_col = max_col;
  opt.mode = mode_from_flag(mode_text);
  opt.fuel = fuel;
  const ipeg::EquivReport rep = ipeg::run_equiv(a, b, opt);
  json dis = json::array();
  for (const ipeg::Disagreement& d : rep.disagreements)
    dis.push_back({{"input", ipeg::tokens_to_json(d.input)},
                   {"mode", ipeg::format_rel(d.mode)},
                   {"outcome_a", ipeg::outcome_to_json(d.outcome_a)},
                   {"outcome_b", ipeg::outcome_to_json(d.outcome_b)}});
  emit(json{{"schema", 1},
            {"trials", rep.trials},
            {"seed", rep.seed},
            {"disagreements", std::move(dis)}});
  return rep.agreed() ? 0 : 1;
}

int cmd_show(const std::string& grammar_file, const std::string& format) {
  const ipeg::Grammar g = ipeg::parse_grammar_text(read_file(grammar_file));
  if (format == "json") {
    json j = ipeg::grammar_to_json(g);
    j["schema"] = 1;
    emit(j);
  } else {
    std::cout << ipeg::pretty_print(g);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"indentation-sensitive PEG toolkit"};
  app.require_subcommand(1);

  std::string grammar_file, input_file, grammar_b;
  std::string mode_text = "any";
  std::string format = "annotated";
  std::string variant = "baseline";
  std::string upto = "deloc";
  std::string show_format = "dsl";
  std::string report_file;
  std::uint64_t fuel = default_fuel();
  std::uint64_t trials = 1000, seed = 0;
  std::size_t max_len = 8;
  ipeg::Col max_col = 8;
  bool strict = false, force = false, as_json = false, simplify = false;

  auto* parse = app.add_subcommand("parse", "parse token input");
  parse->add_option("grammar", grammar_file)->required();
  parse->add_option("input", input_file)->required();
  parse->add_option("--token-mode", mode_text,
                    "token mode: eq|gt|ge|any|diff[lo..hi]");
  parse->add_option("--input-format", format)
      ->check(CLI::IsMember({"raw", "annotated"}));
  parse->add_option("--fuel", fuel, "derivation step budget");
  parse->add_flag("--strict", strict, "use the strict choice semantics");
  parse->add_flag("--force", force, "ignore the grammar's requires header");

  auto* check = app.add_subcommand("check", "approximation + well-formedness");
  check->add_option("grammar", grammar_file)->required();
  check->add_option("--variant", variant)
      ->check(CLI::IsMember({"baseline", "clause0"}));
  check->add_flag("--json", as_json);

  auto* transform =
      app.add_subcommand("transform", "run the elimination pipeline");
  transform->add_option("grammar", grammar_file)->required();
  transform->add_option("--upto", upto)
      ->check(CLI::IsMember({"desugar", "disjoint", "negnorm", "split",
                             "dealign", "deloc"}));
  transform->add_option("--variant", variant)
      ->check(CLI::IsMember({"baseline", "clause0"}));
  transform->add_flag("--simplify", simplify,
                      "prune always-failing choice branches");
  transform->add_option("--report", report_file,
                        "write the JSON stage report here instead of stderr");

  auto* equiv =
      app.add_subcommand("equiv", "seeded differential equivalence check");
  equiv->add_option("grammar_a", grammar_file)->required();
  equiv->add_option("grammar_b", grammar_b)->required();
  equiv->add_option("--trials", trials);
  equiv->add_option("--seed", seed);
  equiv->add_option("--max-len", max_len);
  equiv->add_option("--max-col", max_col);
  equiv->add_option("--token-mode", mode_text);
  equiv->add_option("--fuel", fuel);

  auto* show = app.add_subcommand("show", "pretty-print a grammar");
  show->add_option("grammar", grammar_file)->required();
  show->add_option("--format", show_format)
      ->check(CLI::IsMember({"dsl", "json"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (parse->parsed())
      return cmd_parse(grammar_file, input_file, mode_text, format, fuel,
                       strict, force);
    if (check->parsed()) return cmd_check(grammar_file, variant, as_json);
    if (transform->parsed())
      return cmd_transform(grammar_file, upto, variant, simplify, report_file);
    if (equiv->parsed())
      return cmd_equiv(grammar_file, grammar_b, trials, seed, max_len, max_col,
                       mode_text, fuel);
    if (show->parsed()) return cmd_show(grammar_file, show_format);
  } catch (const ipeg::NotWellFormed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotWellFormed;
  } catch (const ipeg::AmbiguousConsumption& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAmbiguous;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
