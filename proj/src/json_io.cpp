#include "ipeg/json_io.hpp"

#include "ipeg/dsl.hpp"

namespace ipeg {

using nlohmann::json;

json iset_to_json(const IndentSet& s) {
  json out = json::array();
  for (const auto& iv : s.intervals()) {
    json pair = json::array();
    pair.push_back(iv.lo);
    if (iv.hi)
      pair.push_back(*iv.hi);
    else
      pair.push_back(nullptr);
    out.push_back(std::move(pair));
  }
  return out;
}

json tokens_to_json(std::span<const Token> tokens) {
  json out = json::array();
  for (const Token& t : tokens) out.push_back({{"t", t.name}, {"col", t.col}});
  return out;
}

json outcome_to_json(const Outcome& o) {
  switch (o.kind) {
    case Outcome::Kind::Success:
      return {{"outcome", "success"},
              {"remaining", tokens_to_json(o.state->remaining())},
              {"indents", iset_to_json(o.state->indents)},
              {"align", o.state->align}};
    case Outcome::Kind::Failure:
      return {{"outcome", "failure"}};
    case Outcome::Kind::FuelExhausted:
      return {{"outcome", "fuel_exhausted"}, {"fuel", o.fuel_spent}};
  }
  return {};
}

json expr_to_json(const Expr& e) {
  json out{{"kind", kind_name(e.kind)}};
  switch (e.kind) {
    case ExprKind::Terminal:
    case ExprKind::NonTerminal:
      out["name"] = e.name;
      break;
    case ExprKind::Indent:
    case ExprKind::Loc:
      out["rel"] = format_rel(e.rel);
      out["inner"] = expr_to_json(*e.left);
      break;
    case ExprKind::Seq:
    case ExprKind::Choice:
      out["first"] = expr_to_json(*e.left);
      out["second"] = expr_to_json(*e.right);
      break;
    case ExprKind::Not:
    case ExprKind::Star:
    case ExprKind::Plus:
    case ExprKind::Opt:
    case ExprKind::Align:
      out["inner"] = expr_to_json(*e.left);
      break;
    case ExprKind::Empty:
      break;
  }
  return out;
}

json grammar_to_json(const Grammar& g) {
  json rules = json::array();
  for (const auto& [name, body] : g.rules())
    rules.push_back({{"name", name}, {"body", expr_to_json(*body)}});
  json out{{"rules", std::move(rules)}, {"start", expr_to_json(*g.start)}};
  if (g.requires_eq_mode) out["requires_eq_mode"] = true;
  return out;
}

json check_report_to_json(const Grammar& g, const ApproxTable& ap,
                          const WfTable& wf) {
  json rules = json::array();
  auto entry = [&](const std::string& name, const Expr& body) {
    json e{{"name", name},
           {"approx", ap.of(body).to_list()},
           {"wf", wf.of(body)}};
    if (!wf.of(body)) e["witness"] = wf.witness(body);
    return e;
  };
  for (const auto& [name, body] : g.rules())
    rules.push_back(entry(name, *body));
  rules.push_back(entry("start", *g.start));

  const ValidationReport v = validate(g);
  return {{"variant",
           ap.variant() == ApproxVariant::baseline ? "baseline" : "clause0"},
          {"well_formed", wf.grammar_ok()},
          {"rules", std::move(rules)},
          {"features",
           {{"repetition_free", v.repetition_free},
            {"alignment_free", v.alignment_free},
            {"position_free", v.position_free}}},
          {"warnings", v.warnings}};
}

json stage_report_to_json(const PipelineResult& r) {
  json stages = json::array();
  for (const StageMetrics& m : r.stages)
    stages.push_back({{"stage", stage_name(m.stage)},
                      {"rules", m.rule_count},
                      {"nodes", m.node_count}});
  return {{"variant",
           r.variant == ApproxVariant::baseline ? "baseline" : "clause0"},
          {"stages", std::move(stages)},
          {"requires_eq_mode", r.grammar.requires_eq_mode}};
}

}  // namespace ipeg
