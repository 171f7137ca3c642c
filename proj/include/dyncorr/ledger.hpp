#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dyncorr/correlation.hpp"

namespace dyncorr {

enum class Normalization { raw, mean };

const char* to_string(Normalization normalization) noexcept;
std::optional<Normalization> parse_normalization(std::string_view text) noexcept;

// Per-instant mode value V(t) and its total.
struct ModeAggregate {
  std::string mode_name;
  std::vector<std::int64_t> instants;
  std::vector<double> v;
  Normalization normalization = Normalization::raw;
  double total = 0.0;
};

// Builds an aggregate from explicit values; total is summed in instant order.
ModeAggregate make_aggregate(std::string mode_name, std::vector<std::int64_t> instants,
                             std::vector<double> v, Normalization normalization);

// raw: V(t) = sum_i G_i(t); mean: the same divided by n_params.
ModeAggregate period_aggregate(const IndicatorProfile& profile, Normalization normalization,
                               std::string mode_name);

struct ModeLedger {
  std::string base_name;
  std::string control_name;
  Normalization normalization = Normalization::raw;
  std::vector<std::int64_t> instants;
  std::vector<double> v_base;
  std::vector<double> v_control;
  std::vector<double> delta;  // v_control - v_base
  double total_base = 0.0;
  double total_control = 0.0;
  double total_delta = 0.0;  // sum of delta, instants ascending
};

// Throws Error(mismatch) when instants or normalization differ.
ModeLedger compare_modes(const ModeAggregate& base, const ModeAggregate& control);

// `t,V_basic,V_control,delta` rows followed by a `Total` row.
std::string format_ledger_csv(const ModeLedger& ledger);
void write_ledger_csv(const ModeLedger& ledger, const std::string& path);

// A published mode table in ledger shape, with its stated deltas and totals.
struct FixtureRow {
  std::int64_t t = 0;
  double v_basic = 0.0;
  double v_control = 0.0;
  double delta = 0.0;
};

struct Fixture {
  std::vector<FixtureRow> rows;
  FixtureRow totals;
};

Fixture parse_fixture_csv(const std::string& text, const std::string& source = "<fixture>");
Fixture load_fixture(const std::string& path);

// Stated deltas are flagged when they differ from v_control - v_basic by more
// than this (i.e. they do not match at two decimals).
inline constexpr double kFixtureRowTolerance = 0.005;

struct FixtureRowCheck {
  std::int64_t t = 0;
  double stated_delta = 0.0;
  double recomputed_delta = 0.0;
  double discrepancy = 0.0;
  bool flagged = false;
};

struct FixtureReport {
  std::vector<FixtureRowCheck> rows;
  double max_row_discrepancy = 0.0;

  double stated_total_base = 0.0;
  double stated_total_control = 0.0;
  double stated_total_delta = 0.0;
  double column_sum_base = 0.0;
  double column_sum_control = 0.0;
  double column_sum_delta = 0.0;

  // |stated_total_base + stated_total_delta - stated_total_control|
  double identity_residual = 0.0;
  bool identity_holds = false;

  std::size_t flagged_count() const;
  double base_sum_discrepancy() const;
  double control_sum_discrepancy() const;
  double delta_sum_discrepancy() const;

  // Identity exact at two decimals, every row within row_tolerance and every
  // column sum within sum_tolerance of its stated total.
  bool passes(double row_tolerance, double sum_tolerance) const;
};

// All arithmetic is done in integer hundredths, the precision of the table.
FixtureReport verify_fixture(const Fixture& fixture);

// The two ways to arrive at total enterprise cost: base costs plus the
// additional intervention cost, versus a separately stated total. The paths
// are reported side by side; neither is corrected.
struct CostPaths {
  double base_costs = 0.0;
  double additional_costs = 0.0;
  double stated_total = 0.0;

  double summed_total() const { return base_costs + additional_costs; }
  double gap() const { return stated_total - summed_total(); }
  double stated_minus_base() const { return stated_total - base_costs; }
};

// kv file with keys base_costs, additional_costs, stated_total.
CostPaths load_cost_paths(const std::string& path);

std::string format_fixture_report(const FixtureReport& report,
                                  const std::optional<CostPaths>& costs = std::nullopt);

}  // namespace dyncorr
