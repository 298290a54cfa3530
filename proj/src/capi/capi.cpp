#include "slicer/slicer.h"

#include <cstring>
#include <string>

#include "core/error.hpp"
#include "core/json_io.hpp"
#include "core/pipeline.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

slicer_status status_of(slicer::ErrorKind kind) {
  using slicer::ErrorKind;
  switch (kind) {
    case ErrorKind::invalid_argument:
      return SLICER_ERR_INVALID_ARGUMENT;
    case ErrorKind::parse:
      return SLICER_ERR_PARSE;
    case ErrorKind::validation:
      return SLICER_ERR_VALIDATION;
    case ErrorKind::infeasible:
      return SLICER_ERR_INFEASIBLE;
    case ErrorKind::io:
      return SLICER_ERR_IO;
    case ErrorKind::internal:
      return SLICER_ERR_INTERNAL;
  }
  return SLICER_ERR_INTERNAL;
}

template <typename Fn>
slicer_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SLICER_OK;
  } catch (const slicer::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SLICER_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return SLICER_ERR_INTERNAL;
  }
}

slicer_status require(bool condition, const char* message) {
  if (condition) return SLICER_OK;
  g_last_error = message;
  return SLICER_ERR_INVALID_ARGUMENT;
}

}  // namespace

struct slicer_scenario {
  slicer::Scenario value;
};

struct slicer_solution {
  slicer::Deployment deployment;
};

extern "C" {

const char* slicer_version(void) { return "1.0.0"; }

const char* slicer_last_error(void) { return g_last_error.c_str(); }

void slicer_string_free(char* text) { delete[] text; }

slicer_status slicer_scenario_generate(const char* params_json,
                                       slicer_scenario** out) {
  if (auto bad = require(params_json && out, "null argument")) return bad;
  return guarded([&] {
    auto params =
        slicer::generate_params_from_json(slicer::parse_json(params_json));
    *out = new slicer_scenario{slicer::generate_random_scenario(params)};
  });
}

slicer_status slicer_scenario_parse(const char* scenario_json,
                                    slicer_scenario** out) {
  if (auto bad = require(scenario_json && out, "null argument")) return bad;
  return guarded([&] {
    *out = new slicer_scenario{
        slicer::scenario_from_json(slicer::parse_json(scenario_json))};
  });
}

slicer_status slicer_scenario_serialize(const slicer_scenario* s,
                                        char** json_out) {
  if (auto bad = require(s && json_out, "null argument")) return bad;
  return guarded([&] {
    *json_out = dup_string(slicer::dump_pretty(slicer::scenario_to_json(s->value)));
  });
}

slicer_status slicer_scenario_validate(const slicer_scenario* s,
                                       char** report_json_out) {
  if (auto bad = require(s && report_json_out, "null argument")) return bad;
  return guarded([&] {
    const auto report = slicer::validate(s->value);
    slicer::Json j;
    j["violations"] = report.violations;
    j["warnings"] = report.warnings;
    *report_json_out = dup_string(slicer::dump_pretty(j));
  });
}

void slicer_scenario_free(slicer_scenario* s) { delete s; }

slicer_status slicer_solve(const slicer_scenario* s, const char* method,
                           slicer_solution** out) {
  if (auto bad = require(s && method && out, "null argument")) return bad;
  return guarded([&] {
    const auto models = slicer::build_capacity_models(s->value);
    *out = new slicer_solution{
        slicer::solve_with_method(s->value, method, models)};
  });
}

slicer_status slicer_solution_serialize(const slicer_solution* sol,
                                        char** json_out) {
  if (auto bad = require(sol && json_out, "null argument")) return bad;
  return guarded([&] {
    *json_out = dup_string(
        slicer::dump_pretty(slicer::solution_to_json(sol->deployment)));
  });
}

slicer_status slicer_solution_plan_serialize(const slicer_solution* sol,
                                             char** json_out) {
  if (auto bad = require(sol && json_out, "null argument")) return bad;
  return guarded([&] {
    *json_out =
        dup_string(slicer::dump_pretty(slicer::plan_to_json(sol->deployment)));
  });
}

slicer_status slicer_solution_parse(const char* solution_json,
                                    const char* plan_json,
                                    slicer_solution** out) {
  if (auto bad = require(solution_json && plan_json && out, "null argument")) {
    return bad;
  }
  return guarded([&] {
    *out = new slicer_solution{slicer::deployment_from_json(
        slicer::parse_json(solution_json), slicer::parse_json(plan_json))};
  });
}

void slicer_solution_free(slicer_solution* sol) { delete sol; }

slicer_status slicer_export_lp(const slicer_scenario* s, char** lp_text_out) {
  if (auto bad = require(s && lp_text_out, "null argument")) return bad;
  return guarded([&] {
    const auto models = slicer::build_capacity_models(s->value);
    *lp_text_out =
        dup_string(slicer::export_lp(slicer::build_problem(s->value, models)));
  });
}

slicer_status slicer_evaluate(const slicer_scenario* s,
                              const slicer_solution* sol,
                              const char* options_json,
                              char** report_json_out) {
  if (auto bad = require(s && sol && report_json_out, "null argument")) {
    return bad;
  }
  return guarded([&] {
    const auto models = slicer::build_capacity_models(s->value);
    auto report = slicer::analytic_evaluate(s->value, sol->deployment, models);
    bool simulate = false;
    double duration = 60.0;
    int runs = 5;
    std::uint64_t seed = s->value.rng_seed;
    if (options_json != nullptr && *options_json != '\0') {
      const auto options = slicer::parse_json(options_json);
      simulate = options.value("simulate", simulate);
      duration = options.value("duration", duration);
      runs = options.value("runs", runs);
      seed = options.value("seed", seed);
    }
    if (simulate) {
      slicer::simulate_packets(s->value, sol->deployment, models, duration,
                               runs, seed, report);
    }
    *report_json_out =
        dup_string(slicer::dump_pretty(slicer::report_to_json(report)));
  });
}

slicer_status slicer_verify_plan(const slicer_scenario* s,
                                 const slicer_solution* sol,
                                 char** report_json_out) {
  if (auto bad = require(s && sol && report_json_out, "null argument")) {
    return bad;
  }
  return guarded([&] {
    const auto models = slicer::build_capacity_models(s->value);
    slicer::Json j;
    j["violations"] = slicer::verify_plan(s->value, sol->deployment, models);
    *report_json_out = dup_string(slicer::dump_pretty(j));
  });
}

slicer_status slicer_compare(const char* const* report_jsons, size_t count,
                             char** csv_out) {
  if (auto bad = require(report_jsons && csv_out, "null argument")) return bad;
  return guarded([&] {
    std::vector<slicer::EvaluationReport> reports;
    for (size_t i = 0; i < count; ++i) {
      if (report_jsons[i] == nullptr) {
        slicer::raise_invalid("compare: null report");
      }
      reports.push_back(
          slicer::report_from_json(slicer::parse_json(report_jsons[i])));
    }
    *csv_out =
        dup_string(slicer::comparison_csv(slicer::compare(reports)));
  });
}

slicer_status slicer_report_distribution_csv(const char* report_json,
                                             const char* metric,
                                             char** csv_out) {
  if (auto bad = require(report_json && metric && csv_out, "null argument")) {
    return bad;
  }
  return guarded([&] {
    const auto report =
        slicer::report_from_json(slicer::parse_json(report_json));
    const auto it = report.distributions.find(metric);
    if (it == report.distributions.end()) {
      slicer::raise_invalid(std::string("report has no distribution '") +
                            metric + "'");
    }
    *csv_out = dup_string(slicer::metric_series_csv(it->second));
  });
}

slicer_status slicer_run_pipeline(const char* config_json,
                                  char** summary_json_out) {
  if (auto bad = require(config_json, "null argument")) return bad;
  slicer::PipelineOutcome outcome;
  const auto status = guarded([&] {
    outcome =
        slicer::run_pipeline(slicer::pipeline_config_from_json(config_json));
  });
  if (status != SLICER_OK) return status;
  if (summary_json_out != nullptr) {
    *summary_json_out = dup_string(slicer::outcome_to_json(outcome));
  }
  if (!outcome.ok) {
    g_last_error = "one or more methods produced no report";
    return SLICER_ERR_INFEASIBLE;
  }
  return SLICER_OK;
}

slicer_status slicer_run_sequence(const char* config_json, int k_max,
                                  double reconfig_period_s,
                                  char** summary_json_out) {
  if (auto bad = require(config_json, "null argument")) return bad;
  slicer::PipelineOutcome outcome;
  const auto status = guarded([&] {
    outcome = slicer::run_snapshot_sequence(
        slicer::pipeline_config_from_json(config_json), k_max,
        reconfig_period_s);
  });
  if (status != SLICER_OK) return status;
  if (summary_json_out != nullptr) {
    *summary_json_out = dup_string(slicer::outcome_to_json(outcome));
  }
  if (!outcome.ok) {
    g_last_error = "one or more snapshot methods produced no report";
    return SLICER_ERR_INFEASIBLE;
  }
  return SLICER_OK;
}

slicer_status slicer_default_mcs_table(const char* bers_json, char** json_out) {
  if (auto bad = require(json_out, "null argument")) return bad;
  return guarded([&] {
    std::vector<double> bers = {1e-5, 1e-10};
    if (bers_json != nullptr && *bers_json != '\0') {
      bers = slicer::parse_json(bers_json).get<std::vector<double>>();
    }
    *json_out = dup_string(slicer::dump_pretty(
        slicer::mcs_table_to_json(slicer::default_mcs_table(bers))));
  });
}

}  // extern "C"
