#include "dyncorr/dyncorr.h"

#include <limits>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "dyncorr/correlation.hpp"
#include "dyncorr/error.hpp"
#include "dyncorr/ledger.hpp"
#include "dyncorr/overlay.hpp"
#include "dyncorr/scenario.hpp"
#include "dyncorr/series.hpp"

struct dc_series_s {
  dyncorr::ParameterSeries value;
};
struct dc_profile_s {
  dyncorr::IndicatorProfile value;
};
struct dc_aggregate_s {
  dyncorr::ModeAggregate value;
};
struct dc_ledger_s {
  dyncorr::ModeLedger value;
};
struct dc_plan_s {
  dyncorr::OverlayPlan value;
};
struct dc_scenario_s {
  dyncorr::ScenarioConfig value;
};
struct dc_fixture_report_s {
  dyncorr::FixtureReport value;
  std::string text;
};

namespace {

thread_local std::string g_last_error;

dc_status to_status(dyncorr::ErrorCode code) {
  using dyncorr::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return DC_ERR_INVALID_ARGUMENT;
    case ErrorCode::io: return DC_ERR_IO;
    case ErrorCode::parse: return DC_ERR_PARSE;
    case ErrorCode::validation: return DC_ERR_VALIDATION;
    case ErrorCode::out_of_range: return DC_ERR_OUT_OF_RANGE;
    case ErrorCode::mismatch: return DC_ERR_MISMATCH;
    case ErrorCode::infeasible: return DC_ERR_INFEASIBLE;
  }
  return DC_ERR_INTERNAL;
}

dc_status fail(dc_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
dc_status guarded(F&& body) {
  try {
    body();
    return DC_OK;
  } catch (const dyncorr::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(DC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(DC_ERR_INTERNAL, "unknown exception");
  }
}

#define DC_REQUIRE(cond, what)                                    \
  do {                                                            \
    if (!(cond)) return fail(DC_ERR_INVALID_ARGUMENT, (what));    \
  } while (0)

dyncorr::SeriesFormat to_format(dc_format format) {
  return format == DC_FORMAT_BINARY ? dyncorr::SeriesFormat::columnar_binary
                                    : dyncorr::SeriesFormat::csv;
}

dyncorr::WindowSpec to_spec(const dc_window_spec* spec) {
  dyncorr::WindowSpec out;
  if (spec != nullptr) {
    out.k = spec->k;
    out.degenerate_epsilon = spec->degenerate_epsilon;
  }
  return out;
}

}  // namespace

extern "C" {

const char* dc_version(void) { return DYNCORR_VERSION_STRING; }

const char* dc_last_error(void) { return g_last_error.c_str(); }

const char* dc_status_name(dc_status status) {
  switch (status) {
    case DC_OK: return "ok";
    case DC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case DC_ERR_IO: return "I/O error";
    case DC_ERR_PARSE: return "parse error";
    case DC_ERR_VALIDATION: return "validation error";
    case DC_ERR_OUT_OF_RANGE: return "out of range";
    case DC_ERR_MISMATCH: return "mismatch";
    case DC_ERR_INFEASIBLE: return "infeasible";
    case DC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

dc_window_spec dc_window_spec_default(void) {
  const dyncorr::WindowSpec spec;
  return {spec.k, spec.degenerate_epsilon};
}

dc_profile_options dc_profile_options_default(void) {
  const dyncorr::ProfileOptions options;
  return {options.tile_width, options.threads};
}

dc_status dc_series_create(size_t n_params, size_t n_periods, int64_t period_origin,
                           const char* const* param_ids, const double* values, dc_series* out) {
  DC_REQUIRE(out != nullptr, "out is null");
  DC_REQUIRE(param_ids != nullptr || n_params == 0, "param_ids is null");
  DC_REQUIRE(values != nullptr || n_params * n_periods == 0, "values is null");
  return guarded([&] {
    std::vector<std::string> ids;
    for (size_t j = 0; j < n_params; ++j) {
      if (param_ids[j] == nullptr) {
        throw dyncorr::Error(dyncorr::ErrorCode::invalid_argument, "null parameter id");
      }
      ids.emplace_back(param_ids[j]);
    }
    std::vector<double> table(values, values + n_params * n_periods);
    *out = new dc_series_s{dyncorr::ParameterSeries(std::move(ids), std::move(table), n_periods,
                                                    period_origin)};
  });
}

dc_status dc_series_load(const char* path, dc_format format, dc_series* out) {
  DC_REQUIRE(path != nullptr && out != nullptr, "null argument");
  return guarded([&] { *out = new dc_series_s{dyncorr::load_series(path, to_format(format))}; });
}

dc_status dc_series_write(dc_series series, const char* path, dc_format format) {
  DC_REQUIRE(series != nullptr && path != nullptr, "null argument");
  return guarded([&] { dyncorr::write_series(series->value, path, to_format(format)); });
}

dc_status dc_series_free(dc_series series) {
  delete series;
  return DC_OK;
}

dc_status dc_series_shape(dc_series series, size_t* n_params, size_t* n_periods,
                          int64_t* period_origin) {
  DC_REQUIRE(series != nullptr, "series is null");
  if (n_params) *n_params = series->value.n_params();
  if (n_periods) *n_periods = series->value.n_periods();
  if (period_origin) *period_origin = series->value.period_origin();
  return DC_OK;
}

dc_status dc_series_param_id(dc_series series, size_t column, const char** out) {
  DC_REQUIRE(series != nullptr && out != nullptr, "null argument");
  if (column >= series->value.n_params()) {
    return fail(DC_ERR_OUT_OF_RANGE, "column " + std::to_string(column) + " out of range");
  }
  *out = series->value.param_id(column).c_str();
  return DC_OK;
}

dc_status dc_series_values(dc_series series, const double** out) {
  DC_REQUIRE(series != nullptr && out != nullptr, "null argument");
  *out = series->value.values().data();
  return DC_OK;
}

dc_status dc_series_diagnose(dc_series series, dc_diagnostics* out) {
  DC_REQUIRE(series != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    const auto d = dyncorr::diagnose(series->value);
    *out = {d.zero_columns, d.min_value, d.max_value, d.checksum};
  });
}

dc_status dc_series_require_aligned(dc_series base, dc_series control) {
  DC_REQUIRE(base != nullptr && control != nullptr, "null argument");
  return guarded([&] { dyncorr::require_aligned(base->value, control->value); });
}

dc_format dc_format_for_path(const char* path) {
  if (path == nullptr) return DC_FORMAT_CSV;
  return dyncorr::format_for_path(path) == dyncorr::SeriesFormat::columnar_binary ? DC_FORMAT_BINARY
                                                                                   : DC_FORMAT_CSV;
}

dc_status dc_profile_compute(dc_series series, const dc_window_spec* spec,
                             const dc_profile_options* options, dc_profile* out) {
  DC_REQUIRE(series != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    dyncorr::ProfileOptions opts;
    if (options != nullptr) {
      opts.tile_width = options->tile_width;
      opts.threads = options->threads;
    }
    *out = new dc_profile_s{dyncorr::indicator_profile(series->value, to_spec(spec), opts)};
  });
}

dc_status dc_profile_free(dc_profile profile) {
  delete profile;
  return DC_OK;
}

dc_status dc_profile_shape(dc_profile profile, size_t* n_instants, size_t* n_params) {
  DC_REQUIRE(profile != nullptr, "profile is null");
  if (n_instants) *n_instants = profile->value.n_instants();
  if (n_params) *n_params = profile->value.n_params();
  return DC_OK;
}

dc_status dc_profile_instants(dc_profile profile, const int64_t** out) {
  DC_REQUIRE(profile != nullptr && out != nullptr, "null argument");
  *out = profile->value.instants().data();
  return DC_OK;
}

dc_status dc_profile_values(dc_profile profile, const double** out) {
  DC_REQUIRE(profile != nullptr && out != nullptr, "null argument");
  *out = profile->value.values().data();
  return DC_OK;
}

dc_status dc_profile_degenerate_counts(dc_profile profile, const size_t** out) {
  DC_REQUIRE(profile != nullptr && out != nullptr, "null argument");
  *out = profile->value.degenerate_counts().data();
  return DC_OK;
}

dc_status dc_profile_total(dc_profile profile, double* out) {
  DC_REQUIRE(profile != nullptr && out != nullptr, "null argument");
  *out = dyncorr::total_indicator(profile->value);
  return DC_OK;
}

dc_status dc_profile_write_csv(dc_profile profile, dc_series series, const char* path) {
  DC_REQUIRE(profile != nullptr && series != nullptr && path != nullptr, "null argument");
  return guarded([&] { dyncorr::write_profile_csv(profile->value, series->value, path); });
}

dc_status dc_profile_write_plot_data(dc_profile profile, const char* path) {
  DC_REQUIRE(profile != nullptr && path != nullptr, "null argument");
  return guarded([&] { dyncorr::write_plot_data_csv(profile->value, path); });
}

dc_status dc_aggregate_compute(dc_profile profile, dc_normalization normalization,
                               const char* mode_name, dc_aggregate* out) {
  DC_REQUIRE(profile != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    const auto norm = normalization == DC_NORMALIZATION_MEAN ? dyncorr::Normalization::mean
                                                             : dyncorr::Normalization::raw;
    *out = new dc_aggregate_s{
        dyncorr::period_aggregate(profile->value, norm, mode_name ? mode_name : "")};
  });
}

dc_status dc_aggregate_free(dc_aggregate aggregate) {
  delete aggregate;
  return DC_OK;
}

dc_status dc_aggregate_values(dc_aggregate aggregate, size_t* n_instants, const int64_t** instants,
                              const double** v) {
  DC_REQUIRE(aggregate != nullptr, "aggregate is null");
  if (n_instants) *n_instants = aggregate->value.instants.size();
  if (instants) *instants = aggregate->value.instants.data();
  if (v) *v = aggregate->value.v.data();
  return DC_OK;
}

dc_status dc_aggregate_total(dc_aggregate aggregate, double* out) {
  DC_REQUIRE(aggregate != nullptr && out != nullptr, "null argument");
  *out = aggregate->value.total;
  return DC_OK;
}

dc_status dc_ledger_compare(dc_aggregate base, dc_aggregate control, dc_ledger* out) {
  DC_REQUIRE(base != nullptr && control != nullptr && out != nullptr, "null argument");
  return guarded(
      [&] { *out = new dc_ledger_s{dyncorr::compare_modes(base->value, control->value)}; });
}

dc_status dc_ledger_free(dc_ledger ledger) {
  delete ledger;
  return DC_OK;
}

dc_status dc_ledger_totals_get(dc_ledger ledger, dc_ledger_totals* out) {
  DC_REQUIRE(ledger != nullptr && out != nullptr, "null argument");
  *out = {ledger->value.total_base, ledger->value.total_control, ledger->value.total_delta};
  return DC_OK;
}

dc_status dc_ledger_rows(dc_ledger ledger, size_t* n_rows, const int64_t** instants,
                         const double** delta) {
  DC_REQUIRE(ledger != nullptr, "ledger is null");
  if (n_rows) *n_rows = ledger->value.instants.size();
  if (instants) *instants = ledger->value.instants.data();
  if (delta) *delta = ledger->value.delta.data();
  return DC_OK;
}

dc_status dc_ledger_write_csv(dc_ledger ledger, const char* path) {
  DC_REQUIRE(ledger != nullptr && path != nullptr, "null argument");
  return guarded([&] { dyncorr::write_ledger_csv(ledger->value, path); });
}

dc_status dc_fixture_verify(const char* path, dc_fixture_report* out) {
  DC_REQUIRE(path != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    *out = new dc_fixture_report_s{dyncorr::verify_fixture(dyncorr::load_fixture(path)), {}};
  });
}

dc_status dc_fixture_report_free(dc_fixture_report report) {
  delete report;
  return DC_OK;
}

dc_status dc_fixture_report_summary(dc_fixture_report report, dc_fixture_summary* out) {
  DC_REQUIRE(report != nullptr && out != nullptr, "null argument");
  const auto& r = report->value;
  *out = {r.rows.size(),
          r.flagged_count(),
          r.max_row_discrepancy,
          r.base_sum_discrepancy(),
          r.control_sum_discrepancy(),
          r.delta_sum_discrepancy(),
          r.identity_residual,
          r.identity_holds ? 1 : 0};
  return DC_OK;
}

dc_status dc_fixture_report_row(dc_fixture_report report, size_t index, dc_fixture_row* out) {
  DC_REQUIRE(report != nullptr && out != nullptr, "null argument");
  if (index >= report->value.rows.size()) {
    return fail(DC_ERR_OUT_OF_RANGE, "fixture row " + std::to_string(index) + " out of range");
  }
  const auto& row = report->value.rows[index];
  *out = {row.t, row.stated_delta, row.recomputed_delta, row.discrepancy, row.flagged ? 1 : 0};
  return DC_OK;
}

dc_status dc_fixture_report_text(dc_fixture_report report, const char* cost_paths,
                                 const char** out) {
  DC_REQUIRE(report != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    std::optional<dyncorr::CostPaths> costs;
    if (cost_paths != nullptr) {
      costs = dyncorr::load_cost_paths(cost_paths);
    }
    report->text = dyncorr::format_fixture_report(report->value, costs);
    *out = report->text.c_str();
  });
}

dc_status dc_plan_load(const char* path, dc_plan* out) {
  DC_REQUIRE(path != nullptr && out != nullptr, "null argument");
  return guarded([&] { *out = new dc_plan_s{dyncorr::load_plan(path)}; });
}

dc_status dc_plan_replica(dc_plan* out) {
  DC_REQUIRE(out != nullptr, "out is null");
  return guarded([&] { *out = new dc_plan_s{dyncorr::replica_plan()}; });
}

dc_status dc_plan_free(dc_plan plan) {
  delete plan;
  return DC_OK;
}

dc_status dc_plan_write(dc_plan plan, const char* path) {
  DC_REQUIRE(plan != nullptr && path != nullptr, "null argument");
  return guarded([&] { dyncorr::write_plan(plan->value, path); });
}

dc_status dc_plan_total_injected(dc_plan plan, double* out) {
  DC_REQUIRE(plan != nullptr && out != nullptr, "null argument");
  *out = plan->value.total_injected();
  return DC_OK;
}

dc_status dc_plan_skill_count(dc_plan plan, size_t* out) {
  DC_REQUIRE(plan != nullptr && out != nullptr, "null argument");
  *out = plan->value.skills.n_skills();
  return DC_OK;
}

dc_status dc_plan_skill_cost(dc_plan plan, size_t skill, double* out) {
  DC_REQUIRE(plan != nullptr && out != nullptr, "null argument");
  return guarded([&] { *out = dyncorr::skill_cost(plan->value, skill); });
}

dc_status dc_plan_set_budget_cap(dc_plan plan, double cap) {
  DC_REQUIRE(plan != nullptr, "plan is null");
  if (!(cap >= 0.0) || cap == std::numeric_limits<double>::infinity()) {
    return fail(DC_ERR_INVALID_ARGUMENT, "budget cap must be finite and nonnegative");
  }
  plan->value.budget_cap = cap;
  return DC_OK;
}

dc_status dc_plan_clear_budget_cap(dc_plan plan) {
  DC_REQUIRE(plan != nullptr, "plan is null");
  plan->value.budget_cap.reset();
  return DC_OK;
}

dc_status dc_plan_check_budget(dc_plan plan, double base_total, dc_budget_verdict* out) {
  DC_REQUIRE(plan != nullptr && out != nullptr, "null argument");
  const auto v = dyncorr::check_budget(plan->value, base_total);
  *out = {v.ok ? 1 : 0, v.cap ? 1 : 0,   v.injected, v.cap.value_or(0.0),
          v.excess,     v.base_total, v.combined_total};
  return DC_OK;
}

dc_status dc_overlay_apply(dc_series base, dc_plan plan, dc_series* out) {
  DC_REQUIRE(base != nullptr && plan != nullptr && out != nullptr, "null argument");
  return guarded([&] { *out = new dc_series_s{dyncorr::apply_overlay(base->value, plan->value)}; });
}

dc_status dc_scenario_load(const char* path, dc_scenario* out) {
  DC_REQUIRE(path != nullptr && out != nullptr, "null argument");
  return guarded([&] { *out = new dc_scenario_s{dyncorr::load_scenario_config(path)}; });
}

dc_status dc_scenario_replica(dc_scenario* out) {
  DC_REQUIRE(out != nullptr, "out is null");
  return guarded([&] { *out = new dc_scenario_s{dyncorr::replica_config()}; });
}

dc_status dc_scenario_free(dc_scenario scenario) {
  delete scenario;
  return DC_OK;
}

dc_status dc_scenario_set_seed(dc_scenario scenario, uint64_t seed) {
  DC_REQUIRE(scenario != nullptr, "scenario is null");
  scenario->value.seed = seed;
  return DC_OK;
}

dc_status dc_scenario_seed(dc_scenario scenario, uint64_t* out) {
  DC_REQUIRE(scenario != nullptr && out != nullptr, "null argument");
  *out = scenario->value.seed;
  return DC_OK;
}

dc_status dc_scenario_zero_columns(dc_scenario scenario, size_t* out) {
  DC_REQUIRE(scenario != nullptr && out != nullptr, "null argument");
  *out = scenario->value.zero_column_count();
  return DC_OK;
}

dc_status dc_scenario_generate(dc_scenario scenario, dc_series* out) {
  DC_REQUIRE(scenario != nullptr && out != nullptr, "null argument");
  return guarded([&] { *out = new dc_series_s{dyncorr::generate_scenario(scenario->value)}; });
}

}  // extern "C"
