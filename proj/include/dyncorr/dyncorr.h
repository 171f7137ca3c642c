/*
 * dyncorr C API.
 *
 * Every object crossing this boundary is an opaque handle created by a
 * dc_*_create / load / compute call and released with the matching dc_*_free.
 * Every call returns a dc_status; on failure dc_last_error() holds a message
 * for the calling thread until its next failing call. Strings and arrays
 * returned through out-parameters are owned by the handle they came from and
 * stay valid until that handle is freed.
 */
#ifndef DYNCORR_DYNCORR_H
#define DYNCORR_DYNCORR_H

#include <stddef.h>
#include <stdint.h>

#if defined _WIN32 || defined __CYGWIN__
#  ifdef DYNCORR_BUILDING_LIBRARY
#    define DYNCORR_API __declspec(dllexport)
#  else
#    define DYNCORR_API __declspec(dllimport)
#  endif
#elif defined(__GNUC__) && __GNUC__ >= 4
#  define DYNCORR_API __attribute__((visibility("default")))
#else
#  define DYNCORR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dc_status {
  DC_OK = 0,
  DC_ERR_INVALID_ARGUMENT = 1,
  DC_ERR_IO = 2,
  DC_ERR_PARSE = 3,
  DC_ERR_VALIDATION = 4,
  DC_ERR_OUT_OF_RANGE = 5,
  DC_ERR_MISMATCH = 6,
  DC_ERR_INFEASIBLE = 7,
  DC_ERR_INTERNAL = 8
} dc_status;

typedef enum dc_format { DC_FORMAT_CSV = 0, DC_FORMAT_BINARY = 1 } dc_format;

typedef enum dc_normalization { DC_NORMALIZATION_RAW = 0, DC_NORMALIZATION_MEAN = 1 } dc_normalization;

typedef struct dc_series_s* dc_series;
typedef struct dc_profile_s* dc_profile;
typedef struct dc_aggregate_s* dc_aggregate;
typedef struct dc_ledger_s* dc_ledger;
typedef struct dc_plan_s* dc_plan;
typedef struct dc_scenario_s* dc_scenario;
typedef struct dc_fixture_report_s* dc_fixture_report;

typedef struct dc_window_spec {
  size_t k;
  double degenerate_epsilon;
} dc_window_spec;

typedef struct dc_profile_options {
  size_t tile_width;
  unsigned threads; /* 0 = all hardware threads */
} dc_profile_options;

typedef struct dc_diagnostics {
  size_t zero_columns;
  double min_value;
  double max_value;
  uint64_t checksum;
} dc_diagnostics;

typedef struct dc_budget_verdict {
  int ok;
  int has_cap;
  double injected;
  double cap;
  double excess;
  double base_total;
  double combined_total;
} dc_budget_verdict;

typedef struct dc_ledger_totals {
  double total_base;
  double total_control;
  double total_delta;
} dc_ledger_totals;

typedef struct dc_fixture_summary {
  size_t rows;
  size_t flagged_rows;
  double max_row_discrepancy;
  double base_sum_discrepancy;
  double control_sum_discrepancy;
  double delta_sum_discrepancy;
  double identity_residual;
  int identity_holds;
} dc_fixture_summary;

typedef struct dc_fixture_row {
  int64_t t;
  double stated_delta;
  double recomputed_delta;
  double discrepancy;
  int flagged;
} dc_fixture_row;

DYNCORR_API const char* dc_version(void);
DYNCORR_API const char* dc_last_error(void);
DYNCORR_API const char* dc_status_name(dc_status status);

DYNCORR_API dc_window_spec dc_window_spec_default(void);
DYNCORR_API dc_profile_options dc_profile_options_default(void);

/* Series. values are row-major, n_periods x n_params. */
DYNCORR_API dc_status dc_series_create(size_t n_params, size_t n_periods, int64_t period_origin,
                                       const char* const* param_ids, const double* values,
                                       dc_series* out);
DYNCORR_API dc_status dc_series_load(const char* path, dc_format format, dc_series* out);
DYNCORR_API dc_status dc_series_write(dc_series series, const char* path, dc_format format);
DYNCORR_API dc_status dc_series_free(dc_series series);
DYNCORR_API dc_status dc_series_shape(dc_series series, size_t* n_params, size_t* n_periods,
                                      int64_t* period_origin);
DYNCORR_API dc_status dc_series_param_id(dc_series series, size_t column, const char** out);
DYNCORR_API dc_status dc_series_values(dc_series series, const double** out);
DYNCORR_API dc_status dc_series_diagnose(dc_series series, dc_diagnostics* out);
DYNCORR_API dc_status dc_series_require_aligned(dc_series base, dc_series control);
DYNCORR_API dc_format dc_format_for_path(const char* path);

/* Indicator profile. */
DYNCORR_API dc_status dc_profile_compute(dc_series series, const dc_window_spec* spec,
                                         const dc_profile_options* options, dc_profile* out);
DYNCORR_API dc_status dc_profile_free(dc_profile profile);
DYNCORR_API dc_status dc_profile_shape(dc_profile profile, size_t* n_instants, size_t* n_params);
DYNCORR_API dc_status dc_profile_instants(dc_profile profile, const int64_t** out);
DYNCORR_API dc_status dc_profile_values(dc_profile profile, const double** out);
DYNCORR_API dc_status dc_profile_degenerate_counts(dc_profile profile, const size_t** out);
DYNCORR_API dc_status dc_profile_total(dc_profile profile, double* out);
DYNCORR_API dc_status dc_profile_write_csv(dc_profile profile, dc_series series, const char* path);
DYNCORR_API dc_status dc_profile_write_plot_data(dc_profile profile, const char* path);

/* Mode aggregates and ledgers. */
DYNCORR_API dc_status dc_aggregate_compute(dc_profile profile, dc_normalization normalization,
                                           const char* mode_name, dc_aggregate* out);
DYNCORR_API dc_status dc_aggregate_free(dc_aggregate aggregate);
DYNCORR_API dc_status dc_aggregate_values(dc_aggregate aggregate, size_t* n_instants,
                                          const int64_t** instants, const double** v);
DYNCORR_API dc_status dc_aggregate_total(dc_aggregate aggregate, double* out);
DYNCORR_API dc_status dc_ledger_compare(dc_aggregate base, dc_aggregate control, dc_ledger* out);
DYNCORR_API dc_status dc_ledger_free(dc_ledger ledger);
DYNCORR_API dc_status dc_ledger_totals_get(dc_ledger ledger, dc_ledger_totals* out);
DYNCORR_API dc_status dc_ledger_rows(dc_ledger ledger, size_t* n_rows, const int64_t** instants,
                                     const double** delta);
DYNCORR_API dc_status dc_ledger_write_csv(dc_ledger ledger, const char* path);

/* Published-table fixture. cost_paths may be NULL. */
DYNCORR_API dc_status dc_fixture_verify(const char* path, dc_fixture_report* out);
DYNCORR_API dc_status dc_fixture_report_free(dc_fixture_report report);
DYNCORR_API dc_status dc_fixture_report_summary(dc_fixture_report report, dc_fixture_summary* out);
DYNCORR_API dc_status dc_fixture_report_row(dc_fixture_report report, size_t index,
                                            dc_fixture_row* out);
DYNCORR_API dc_status dc_fixture_report_text(dc_fixture_report report, const char* cost_paths,
                                             const char** out);

/* Overlay plans. */
DYNCORR_API dc_status dc_plan_load(const char* path, dc_plan* out);
DYNCORR_API dc_status dc_plan_replica(dc_plan* out);
DYNCORR_API dc_status dc_plan_free(dc_plan plan);
DYNCORR_API dc_status dc_plan_write(dc_plan plan, const char* path);
DYNCORR_API dc_status dc_plan_total_injected(dc_plan plan, double* out);
DYNCORR_API dc_status dc_plan_skill_count(dc_plan plan, size_t* out);
DYNCORR_API dc_status dc_plan_skill_cost(dc_plan plan, size_t skill, double* out);
DYNCORR_API dc_status dc_plan_set_budget_cap(dc_plan plan, double cap);
DYNCORR_API dc_status dc_plan_clear_budget_cap(dc_plan plan);
DYNCORR_API dc_status dc_plan_check_budget(dc_plan plan, double base_total, dc_budget_verdict* out);
DYNCORR_API dc_status dc_overlay_apply(dc_series base, dc_plan plan, dc_series* out);

/* Scenario generator. */
DYNCORR_API dc_status dc_scenario_load(const char* path, dc_scenario* out);
DYNCORR_API dc_status dc_scenario_replica(dc_scenario* out);
DYNCORR_API dc_status dc_scenario_free(dc_scenario scenario);
DYNCORR_API dc_status dc_scenario_set_seed(dc_scenario scenario, uint64_t seed);
DYNCORR_API dc_status dc_scenario_seed(dc_scenario scenario, uint64_t* out);
DYNCORR_API dc_status dc_scenario_zero_columns(dc_scenario scenario, size_t* out);
DYNCORR_API dc_status dc_scenario_generate(dc_scenario scenario, dc_series* out);

#ifdef __cplusplus
}
#endif

#endif /* DYNCORR_DYNCORR_H */
