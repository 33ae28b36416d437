#pragma once

#include <json.hpp>

#include "ipeg/analysis.hpp"
#include "ipeg/ast.hpp"
#include "ipeg/interp.hpp"
#include "ipeg/transform.hpp"

namespace ipeg {

/// `{"outcome":"success","remaining":[{"t":"b","col":3}],
///   "indents":[[0,1]],"align":false}` with null for an infinite
/// interval bound; `{"outcome":"failure"}`;
/// `{"outcome":"fuel_exhausted","fuel":N}`.
nlohmann::json outcome_to_json(const Outcome& o);

nlohmann::json iset_to_json(const IndentSet& s);
nlohmann::json tokens_to_json(std::span<const Token> tokens);
nlohmann::json expr_to_json(const Expr& e);
nlohmann::json grammar_to_json(const Grammar& g);

nlohmann::json check_report_to_json(const Grammar& g, const ApproxTable& ap,
                                    const WfTable& wf);
nlohmann::json stage_report_to_json(const PipelineResult& r);

}  // namespace ipeg
