#include "dyncorr/ledger.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>

#include "dyncorr/error.hpp"
#include "dyncorr/keyvalue.hpp"
#include "numeric_text.hpp"

namespace dyncorr {

const char* to_string(Normalization normalization) noexcept {
  return normalization == Normalization::raw ? "raw" : "mean";
}

std::optional<Normalization> parse_normalization(std::string_view text) noexcept {
  if (text == "raw") return Normalization::raw;
  if (text == "mean") return Normalization::mean;
  return std::nullopt;
}

ModeAggregate make_aggregate(std::string mode_name, std::vector<std::int64_t> instants,
                             std::vector<double> v, Normalization normalization) {
  if (instants.size() != v.size()) {
    throw Error(ErrorCode::invalid_argument, "aggregate has " + std::to_string(instants.size()) +
                                                 " instants but " + std::to_string(v.size()) +
                                                 " values");
  }
  ModeAggregate agg;
  agg.mode_name = std::move(mode_name);
  agg.instants = std::move(instants);
  agg.v = std::move(v);
  agg.normalization = normalization;
  for (double x : agg.v) {
    agg.total += x;
  }
  return agg;
}

ModeAggregate period_aggregate(const IndicatorProfile& profile, Normalization normalization,
                               std::string mode_name) {
  if (profile.n_instants() == 0) {
    throw Error(ErrorCode::invalid_argument, "indicator profile is empty");
  }
  std::vector<double> v(profile.n_instants(), 0.0);
  const double n = static_cast<double>(profile.n_params());
  for (std::size_t t = 0; t < profile.n_instants(); ++t) {
    double sum = 0.0;
    for (double g : profile.row(t)) {
      sum += g;
    }
    v[t] = normalization == Normalization::raw ? sum : sum / n;
  }
  return make_aggregate(std::move(mode_name), profile.instants(), std::move(v), normalization);
}

ModeLedger compare_modes(const ModeAggregate& base, const ModeAggregate& control) {
  if (base.normalization != control.normalization) {
    throw Error(ErrorCode::mismatch, std::string("normalization mismatch: base is ") +
                                         to_string(base.normalization) + ", control is " +
                                         to_string(control.normalization));
  }
  if (base.instants != control.instants) {
    throw Error(ErrorCode::mismatch, "instant mismatch: base has " +
                                         std::to_string(base.instants.size()) +
                                         " instants, control has " +
                                         std::to_string(control.instants.size()) +
                                         (base.instants.size() == control.instants.size()
                                              ? " with different labels"
                                              : ""));
  }
  ModeLedger ledger;
  ledger.base_name = base.mode_name;
  ledger.control_name = control.mode_name;
  ledger.normalization = base.normalization;
  ledger.instants = base.instants;
  ledger.v_base = base.v;
  ledger.v_control = control.v;
  ledger.delta.resize(base.v.size());
  for (std::size_t t = 0; t < base.v.size(); ++t) {
    ledger.delta[t] = control.v[t] - base.v[t];
    ledger.total_delta += ledger.delta[t];
  }
  ledger.total_base = base.total;
  ledger.total_control = control.total;
  return ledger;
}

std::string format_ledger_csv(const ModeLedger& ledger) {
  std::string out = "t,V_basic,V_control,delta\n";
  for (std::size_t t = 0; t < ledger.instants.size(); ++t) {
    out += std::to_string(ledger.instants[t]) + ',' + detail::format_double(ledger.v_base[t]) +
           ',' + detail::format_double(ledger.v_control[t]) + ',' +
           detail::format_double(ledger.delta[t]) + '\n';
  }
  out += "Total," + detail::format_double(ledger.total_base) + ',' +
         detail::format_double(ledger.total_control) + ',' +
         detail::format_double(ledger.total_delta) + '\n';
  return out;
}

void write_ledger_csv(const ModeLedger& ledger, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::io, "cannot write " + path);
  }
  out << format_ledger_csv(ledger);
  if (!out) {
    throw Error(ErrorCode::io, "write failed for " + path);
  }
}

Fixture parse_fixture_csv(const std::string& text, const std::string& source) {
  std::vector<std::string_view> lines;
  for (auto line : detail::split(text, '\n')) {
    line = detail::trim(line);
    if (!line.empty() && line.front() != '#') {
      lines.push_back(line);
    }
  }
  if (lines.empty()) {
    throw Error(ErrorCode::parse, source + ": empty fixture");
  }
  const auto header = detail::split(lines.front(), ',');
  const std::vector<std::string_view> expected = {"t", "V_basic", "V_control", "delta"};
  if (header.size() != expected.size() ||
      !std::equal(header.begin(), header.end(), expected.begin(),
                  [](std::string_view a, std::string_view b) { return detail::trim(a) == b; })) {
    throw Error(ErrorCode::parse, source + ": header must be `t,V_basic,V_control,delta`");
  }

  Fixture fixture;
  bool have_totals = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string where = source + ": line " + std::to_string(i + 1);
    if (have_totals) {
      throw Error(ErrorCode::parse, where + ": rows after the Total row");
    }
    const auto cells = detail::split(lines[i], ',');
    if (cells.size() != 4) {
      throw Error(ErrorCode::parse, where + ": expected 4 cells, got " + std::to_string(cells.size()));
    }
    FixtureRow row;
    double* targets[3] = {&row.v_basic, &row.v_control, &row.delta};
    for (int c = 0; c < 3; ++c) {
      auto value = detail::parse_double(cells[c + 1]);
      if (!value || !std::isfinite(*value)) {
        throw Error(ErrorCode::parse, where + ": bad number '" +
                                          std::string(detail::trim(cells[c + 1])) + "'");
      }
      *targets[c] = *value;
    }
    if (detail::trim(cells[0]) == "Total") {
      fixture.totals = row;
      have_totals = true;
      continue;
    }
    auto t = detail::parse_int(cells[0]);
    if (!t) {
      throw Error(ErrorCode::parse, where + ": bad period label '" +
                                        std::string(detail::trim(cells[0])) + "'");
    }
    if (!fixture.rows.empty() && *t != fixture.rows.back().t + 1) {
      throw Error(ErrorCode::parse, where + ": period " + std::to_string(*t) + " does not follow " +
                                        std::to_string(fixture.rows.back().t));
    }
    row.t = *t;
    fixture.rows.push_back(row);
  }
  if (!have_totals) {
    throw Error(ErrorCode::parse, source + ": missing Total row");
  }
  if (fixture.rows.empty()) {
    throw Error(ErrorCode::parse, source + ": no period rows");
  }
  return fixture;
}

Fixture load_fixture(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::io, "cannot open " + path);
  }
  return parse_fixture_csv(
      std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()), path);
}

namespace {

std::int64_t cents(double value) { return std::llround(value * 100.0); }
double from_cents(std::int64_t c) { return static_cast<double>(c) / 100.0; }

}  // namespace

std::size_t FixtureReport::flagged_count() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.flagged; }));
}

double FixtureReport::base_sum_discrepancy() const {
  return from_cents(std::llabs(cents(column_sum_base) - cents(stated_total_base)));
}
double FixtureReport::control_sum_discrepancy() const {
  return from_cents(std::llabs(cents(column_sum_control) - cents(stated_total_control)));
}
double FixtureReport::delta_sum_discrepancy() const {
  return from_cents(std::llabs(cents(column_sum_delta) - cents(stated_total_delta)));
}

bool FixtureReport::passes(double row_tolerance, double sum_tolerance) const {
  return identity_holds && max_row_discrepancy <= row_tolerance &&
         base_sum_discrepancy() <= sum_tolerance && control_sum_discrepancy() <= sum_tolerance &&
         delta_sum_discrepancy() <= sum_tolerance;
}

FixtureReport verify_fixture(const Fixture& fixture) {
  FixtureReport report;
  std::int64_t sum_base = 0;
  std::int64_t sum_control = 0;
  std::int64_t sum_delta = 0;
  long long max_diff = 0;
  for (const auto& row : fixture.rows) {
    const auto base = cents(row.v_basic);
    const auto control = cents(row.v_control);
    const auto stated = cents(row.delta);
    const auto recomputed = control - base;
    const auto diff = std::llabs(stated - recomputed);
    FixtureRowCheck check;
    check.t = row.t;
    check.stated_delta = from_cents(stated);
    check.recomputed_delta = from_cents(recomputed);
    check.discrepancy = from_cents(diff);
    check.flagged = check.discrepancy > kFixtureRowTolerance;
    report.rows.push_back(check);
    max_diff = std::max(max_diff, diff);
    sum_base += base;
    sum_control += control;
    sum_delta += stated;
  }
  report.max_row_discrepancy = from_cents(max_diff);
  report.column_sum_base = from_cents(sum_base);
  report.column_sum_control = from_cents(sum_control);
  report.column_sum_delta = from_cents(sum_delta);

  const auto total_base = cents(fixture.totals.v_basic);
  const auto total_control = cents(fixture.totals.v_control);
  const auto total_delta = cents(fixture.totals.delta);
  report.stated_total_base = from_cents(total_base);
  report.stated_total_control = from_cents(total_control);
  report.stated_total_delta = from_cents(total_delta);
  const auto residual = std::llabs(total_base + total_delta - total_control);
  report.identity_residual = from_cents(residual);
  report.identity_holds = residual == 0;
  return report;
}

CostPaths load_cost_paths(const std::string& path) {
  const auto doc = load_kv(path);
  CostPaths costs;
  const std::pair<const char*, double*> keys[] = {{"base_costs", &costs.base_costs},
                                                  {"additional_costs", &costs.additional_costs},
                                                  {"stated_total", &costs.stated_total}};
  for (const auto& [key, target] : keys) {
    const auto* entry = doc.root().find(key);
    if (entry == nullptr) {
      throw Error(ErrorCode::parse, path + ": missing `" + key + "`");
    }
    *target = kv_real(*entry);
  }
  return costs;
}

std::string format_fixture_report(const FixtureReport& report,
                                  const std::optional<CostPaths>& costs) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(2);
  out << "rows checked:            " << report.rows.size() << "\n";
  out << "rows flagged (> 0.005):  " << report.flagged_count() << "\n";
  for (const auto& row : report.rows) {
    if (row.flagged) {
      out << "  t=" << row.t << "  stated " << row.stated_delta << "  recomputed "
          << row.recomputed_delta << "  discrepancy " << row.discrepancy << "\n";
    }
  }
  out << "max row discrepancy:     " << report.max_row_discrepancy << "\n";
  out << "column sums vs totals:\n";
  out << "  V_basic   " << report.column_sum_base << " vs " << report.stated_total_base
      << "  (off by " << report.base_sum_discrepancy() << ")\n";
  out << "  V_control " << report.column_sum_control << " vs " << report.stated_total_control
      << "  (off by " << report.control_sum_discrepancy() << ")\n";
  out << "  delta     " << report.column_sum_delta << " vs " << report.stated_total_delta
      << "  (off by " << report.delta_sum_discrepancy() << ")\n";
  out << "total identity:          " << report.stated_total_base << " + "
      << report.stated_total_delta << " = " << report.stated_total_base + report.stated_total_delta
      << " vs " << report.stated_total_control << "  -> "
      << (report.identity_holds ? "holds" : "FAILS") << " (residual " << report.identity_residual
      << ")\n";
  if (costs) {
    out.precision(0);
    out << "cost paths (thousand rubles):\n";
    out << "  base + additional:     " << costs->base_costs << " + " << costs->additional_costs
        << " = " << costs->summed_total() << "\n";
    out << "  stated total:          " << costs->stated_total << "\n";
    out << "  stated - summed:       " << costs->gap() << "\n";
    out << "  stated - base:         " << costs->stated_minus_base() << "\n";
  }
  return out.str();
}

}  // namespace dyncorr
