/* C interface of the slicing-aware flying network planner.
 *
 * All rich data crosses the boundary as JSON or CSV text; handles are
 * opaque. Every function returning slicer_status sets a thread-local
 * message retrievable through slicer_last_error() on failure. Strings
 * returned through out-parameters are heap-allocated and must be released
 * with slicer_string_free().
 */
#ifndef SLICER_H
#define SLICER_H

#include <stddef.h>

#if defined(_WIN32)
#define SLICER_API __declspec(dllexport)
#else
#define SLICER_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum slicer_status {
  SLICER_OK = 0,
  SLICER_ERR_INVALID_ARGUMENT = 1,
  SLICER_ERR_PARSE = 2,
  SLICER_ERR_VALIDATION = 3,
  SLICER_ERR_INFEASIBLE = 4,
  SLICER_ERR_IO = 5,
  SLICER_ERR_INTERNAL = 6
} slicer_status;

typedef struct slicer_scenario slicer_scenario; /* opaque */
typedef struct slicer_solution slicer_solution; /* opaque */

SLICER_API const char* slicer_version(void);

/* Message of the last failure on this thread; never NULL. */
SLICER_API const char* slicer_last_error(void);

SLICER_API void slicer_string_free(char* text);

/* --- scenarios ---------------------------------------------------------- */

/* params_json: generation parameters (users or occupancy_fraction, dims,
 * slices, rng_seed, ...). */
SLICER_API slicer_status slicer_scenario_generate(const char* params_json,
                                                  slicer_scenario** out);

SLICER_API slicer_status slicer_scenario_parse(const char* scenario_json,
                                               slicer_scenario** out);

SLICER_API slicer_status slicer_scenario_serialize(const slicer_scenario* s,
                                                   char** json_out);

/* {"violations": [...], "warnings": [...]} */
SLICER_API slicer_status slicer_scenario_validate(const slicer_scenario* s,
                                                  char** report_json_out);

SLICER_API void slicer_scenario_free(slicer_scenario* s);

/* --- solving ------------------------------------------------------------ */

/* method: "slicer" | "geometric_center" | "kmeans". A solution handle is
 * produced even when the instance is infeasible (status in its JSON). */
SLICER_API slicer_status slicer_solve(const slicer_scenario* s,
                                      const char* method,
                                      slicer_solution** out);

SLICER_API slicer_status slicer_solution_serialize(const slicer_solution* sol,
                                                   char** json_out);

/* Channel plan of the solution (packing result). */
SLICER_API slicer_status slicer_solution_plan_serialize(
    const slicer_solution* sol, char** json_out);

SLICER_API slicer_status slicer_solution_parse(const char* solution_json,
                                               const char* plan_json,
                                               slicer_solution** out);

SLICER_API void slicer_solution_free(slicer_solution* sol);

/* LP-format text of the exact placement MILP for external solvers. */
SLICER_API slicer_status slicer_export_lp(const slicer_scenario* s,
                                          char** lp_text_out);

/* --- evaluation --------------------------------------------------------- */

/* options_json (all optional): {"simulate": bool, "duration": s,
 * "runs": n, "seed": n}. Returns the evaluation report as JSON. */
SLICER_API slicer_status slicer_evaluate(const slicer_scenario* s,
                                         const slicer_solution* sol,
                                         const char* options_json,
                                         char** report_json_out);

/* Plan verification only: {"violations": [...]}. */
SLICER_API slicer_status slicer_verify_plan(const slicer_scenario* s,
                                            const slicer_solution* sol,
                                            char** report_json_out);

/* Per-method mean / 95% CI table over a common scenario set, as CSV. */
SLICER_API slicer_status slicer_compare(const char* const* report_jsons,
                                        size_t count, char** csv_out);

/* "x,F" rows of one distribution in an evaluation report. */
SLICER_API slicer_status slicer_report_distribution_csv(
    const char* report_json, const char* metric, char** csv_out);

/* --- pipeline ----------------------------------------------------------- */

/* config_json: {scenario_file | scenario | generate, methods, simulate,
 * sim_duration, sim_runs, out_dir, export_lp, mcs_table_file}. Writes all
 * artifact files; summary JSON reports per-method status. A nonzero
 * status is returned when any requested method failed to produce a report.
 */
SLICER_API slicer_status slicer_run_pipeline(const char* config_json,
                                             char** summary_json_out);

SLICER_API slicer_status slicer_run_sequence(const char* config_json,
                                             int k_max,
                                             double reconfig_period_s,
                                             char** summary_json_out);

/* Default IEEE 802.11ac MCS/SNR-threshold table as JSON. bers_json is an
 * optional array of BER targets, e.g. "[1e-5, 1e-10]"; NULL for defaults. */
SLICER_API slicer_status slicer_default_mcs_table(const char* bers_json,
                                                  char** json_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SLICER_H */
