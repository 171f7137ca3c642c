#include <fstream>

#include "dyncorr/correlation.hpp"
#include "dyncorr/error.hpp"
#include "numeric_text.hpp"

namespace dyncorr {

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::io, "cannot write " + path);
  }
  out << text;
  if (!out) {
    throw Error(ErrorCode::io, "write failed for " + path);
  }
}

}  // namespace

std::string format_profile_csv(const IndicatorProfile& profile, const ParameterSeries& series) {
  if (profile.n_params() != series.n_params()) {
    throw Error(ErrorCode::mismatch, "profile has " + std::to_string(profile.n_params()) +
                                         " columns but series has " +
                                         std::to_string(series.n_params()));
  }
  std::string out = "t";
  for (const auto& id : series.param_ids()) {
    out += ",G_";
    out += id;
  }
  out += '\n';

  std::vector<double> column_totals(profile.n_params(), 0.0);
  for (std::size_t t = 0; t < profile.n_instants(); ++t) {
    out += std::to_string(profile.instants()[t]);
    const auto row = profile.row(t);
    for (std::size_t j = 0; j < row.size(); ++j) {
      out += ',';
      out += detail::format_double(row[j]);
      column_totals[j] += row[j];
    }
    out += '\n';
  }
  out += "Total";
  for (double total : column_totals) {
    out += ',';
    out += detail::format_double(total);
  }
  out += '\n';
  return out;
}

std::string format_plot_data_csv(const IndicatorProfile& profile) {
  std::string out = "t,V_raw,V_mean,degenerate_count\n";
  const double n = static_cast<double>(profile.n_params());
  for (std::size_t t = 0; t < profile.n_instants(); ++t) {
    double v = 0.0;
    for (double g : profile.row(t)) {
      v += g;
    }
    out += std::to_string(profile.instants()[t]);
    out += ',';
    out += detail::format_double(v);
    out += ',';
    out += detail::format_double(v / n);
    out += ',';
    out += std::to_string(profile.degenerate_counts()[t]);
    out += '\n';
  }
  return out;
}

void write_profile_csv(const IndicatorProfile& profile, const ParameterSeries& series,
                       const std::string& path) {
  write_text(path, format_profile_csv(profile, series));
}

void write_plot_data_csv(const IndicatorProfile& profile, const std::string& path) {
  write_text(path, format_plot_data_csv(profile));
}

}  // namespace dyncorr
