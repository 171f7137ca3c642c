#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dyncorr {

enum class SeriesFormat { csv, columnar_binary };

// Picks columnar-binary for `.mdsc` paths and CSV otherwise.
SeriesFormat format_for_path(const std::string& path);

// The digital copy of an enterprise: one row per period, one column per
// financial parameter (thousand rubles per period). Immutable once built;
// the constructor enforces every invariant, so a live instance is always
// rectangular, finite and uniquely labelled.
class ParameterSeries {
 public:
  // `values` is row-major, n_periods x param_ids.size().
  ParameterSeries(std::vector<std::string> param_ids, std::vector<double> values,
                  std::size_t n_periods, std::int64_t period_origin = 1);

  std::size_t n_params() const noexcept { return param_ids_.size(); }
  std::size_t n_periods() const noexcept { return n_periods_; }
  std::int64_t period_origin() const noexcept { return period_origin_; }
  std::int64_t last_period() const noexcept {
    return period_origin_ + static_cast<std::int64_t>(n_periods_) - 1;
  }

  const std::vector<std::string>& param_ids() const noexcept { return param_ids_; }
  const std::string& param_id(std::size_t column) const { return param_ids_.at(column); }
  std::optional<std::size_t> column_index(const std::string& id) const;

  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> row(std::size_t row_index) const;
  double at(std::size_t row_index, std::size_t column) const {
    return values_[row_index * param_ids_.size() + column];
  }

  // Period label of a row and the inverse mapping.
  std::int64_t period_of_row(std::size_t row_index) const noexcept {
    return period_origin_ + static_cast<std::int64_t>(row_index);
  }
  std::optional<std::size_t> row_of_period(std::int64_t period) const noexcept;

  friend bool operator==(const ParameterSeries&, const ParameterSeries&) = default;

 private:
  std::vector<std::string> param_ids_;
  std::vector<double> values_;
  std::size_t n_periods_ = 0;
  std::int64_t period_origin_ = 1;
};

struct SeriesDiagnostics {
  std::size_t zero_columns = 0;
  double min_value = 0.0;
  double max_value = 0.0;
  // Independent of column order and of the on-disk format.
  std::uint64_t checksum = 0;
};

ParameterSeries load_series(const std::string& path, SeriesFormat format);
void write_series(const ParameterSeries& series, const std::string& path, SeriesFormat format);

// In-memory forms of the two file formats.
ParameterSeries parse_series_csv(const std::string& text, const std::string& source = "<csv>");
std::string format_series_csv(const ParameterSeries& series);
ParameterSeries decode_series_binary(std::span<const std::uint8_t> bytes,
                                     const std::string& source = "<binary>");
std::vector<std::uint8_t> encode_series_binary(const ParameterSeries& series);

SeriesDiagnostics diagnose(const ParameterSeries& series);

// Validates that two series can be compared period by period.
void require_aligned(const ParameterSeries& base, const ParameterSeries& control);

}  // namespace dyncorr
