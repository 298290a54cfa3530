#pragma once

#include <string>

#include <json.hpp>

#include "core/deployment.hpp"
#include "core/evaluate.hpp"
#include "core/scenario.hpp"

namespace slicer {

using Json = nlohmann::ordered_json;

// Canonical serializers: fixed key order so that parse -> serialize is
// byte-identical for any valid value.
Json scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const Json& j);

Json mcs_table_to_json(const McsTable& table);
McsTable mcs_table_from_json(const Json& j);

Json solution_to_json(const Deployment& deployment);
Json plan_to_json(const Deployment& deployment);
Deployment deployment_from_json(const Json& solution, const Json& plan);

Json report_to_json(const EvaluationReport& report);
EvaluationReport report_from_json(const Json& j);

GenerateParams generate_params_from_json(const Json& j);

// One "x,F" line per distribution step.
std::string metric_series_csv(const MetricSeries& series);

std::string dump_pretty(const Json& j);  // trailing newline included
Json parse_json(const std::string& text);  // wraps parse errors

}  // namespace slicer
