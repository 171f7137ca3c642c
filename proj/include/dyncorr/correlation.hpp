#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dyncorr/series.hpp"

namespace dyncorr {

// Window over the k periods strictly before the analysis instant: the window
// for t holds rows t-1, ..., t-k. The current period never contributes.
struct WindowSpec {
  std::size_t k = 6;
  // A window column is degenerate when its sample standard deviation is at
  // most degenerate_epsilon * max(1, |window mean|).
  double degenerate_epsilon = 1e-12;

  void validate() const;
};

// First and last instants that have a full window inside the series. The last
// analyzable instant is the last observed period.
std::int64_t first_instant(const ParameterSeries& series, const WindowSpec& spec);
std::int64_t last_instant(const ParameterSeries& series, const WindowSpec& spec);

// Per-column z-scores of one window, stored column-contiguous with rows in
// chronological order (t-k first). Degenerate columns are all zeros.
class StandardizedWindow {
 public:
  StandardizedWindow() = default;
  StandardizedWindow(std::int64_t instant, std::size_t k, std::size_t n_params);

  std::int64_t instant() const noexcept { return instant_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t n_params() const noexcept { return n_params_; }

  std::span<const double> column(std::size_t j) const {
    return std::span<const double>(z_).subspan(j * k_, k_);
  }
  std::span<double> column(std::size_t j) { return std::span<double>(z_).subspan(j * k_, k_); }

  bool degenerate(std::size_t j) const { return mask_[j] != 0; }
  void set_degenerate(std::size_t j, bool flag) { mask_[j] = flag ? 1 : 0; }
  std::size_t degenerate_count() const noexcept;

  std::span<const double> z_scores() const noexcept { return z_; }

 private:
  std::int64_t instant_ = 0;
  std::size_t k_ = 0;
  std::size_t n_params_ = 0;
  std::vector<double> z_;
  std::vector<std::uint8_t> mask_;
};

// Standardizes the k rows before `t` with the window mean and the sample
// standard deviation (denominator k-1). Valid for
// origin + k <= t <= origin + n_periods.
StandardizedWindow standardize_window(const ParameterSeries& series, std::int64_t t,
                                      const WindowSpec& spec);

// Pearson coefficient of two window columns, clamped to [-1, 1]. Exactly 1 on
// the diagonal of a non-degenerate column and 0 whenever either side is
// degenerate. Symmetric bit for bit.
double pair_correlation(const StandardizedWindow& window, std::size_t i, std::size_t j);

// Integral indicator G_i = sum_j |r_ij| including j = i, summed in ascending j.
double indicator_row(const StandardizedWindow& window, std::size_t i);

struct ProfileOptions {
  std::size_t tile_width = 512;
  // 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;
};

class IndicatorProfile {
 public:
  IndicatorProfile() = default;
  IndicatorProfile(std::vector<std::int64_t> instants, std::size_t n_params);

  std::size_t n_instants() const noexcept { return instants_.size(); }
  std::size_t n_params() const noexcept { return n_params_; }
  const std::vector<std::int64_t>& instants() const noexcept { return instants_; }

  std::span<const double> row(std::size_t instant_index) const {
    return std::span<const double>(g_).subspan(instant_index * n_params_, n_params_);
  }
  std::span<double> row(std::size_t instant_index) {
    return std::span<double>(g_).subspan(instant_index * n_params_, n_params_);
  }
  double at(std::size_t instant_index, std::size_t column) const {
    return g_[instant_index * n_params_ + column];
  }
  std::span<const double> values() const noexcept { return g_; }

  const std::vector<std::size_t>& degenerate_counts() const noexcept { return degenerate_counts_; }
  std::vector<std::size_t>& degenerate_counts() noexcept { return degenerate_counts_; }

  friend bool operator==(const IndicatorProfile&, const IndicatorProfile&) = default;

 private:
  std::vector<std::int64_t> instants_;
  std::size_t n_params_ = 0;
  std::vector<double> g_;
  std::vector<std::size_t> degenerate_counts_;
};

// G_i(t) for one window, computed over column tiles of width
// options.tile_width. Scratch memory is O(tile_width) per worker plus one k x n
// transposed copy of the window; the full correlation matrix is never formed.
// Every G_i is accumulated in ascending j, so the output is bitwise independent
// of tile width and thread count and bitwise equal to indicator_row.
void window_indicators(const StandardizedWindow& window, std::span<double> out,
                       const ProfileOptions& options = {});

// G_i(t) at every analyzable instant. Requires n_periods >= k + 1.
IndicatorProfile indicator_profile(const ParameterSeries& series, const WindowSpec& spec,
                                   const ProfileOptions& options = {});

// Grand total G: instants ascending, columns ascending.
double total_indicator(const IndicatorProfile& profile);

// Incremental sweep over consecutive instants. Window sums are maintained
// with compensated summation so a step costs O(n) before re-standardization.
class SlidingWindow {
 public:
  SlidingWindow(const ParameterSeries& series, const WindowSpec& spec, std::int64_t t);

  const StandardizedWindow& current() const noexcept { return window_; }
  std::int64_t instant() const noexcept { return window_.instant(); }
  bool can_advance() const noexcept;

  // Moves to t + 1 and re-standardizes. Throws Error(out_of_range) past the
  // last analyzable instant.
  const StandardizedWindow& advance();

 private:
  struct Compensated {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x);
    double value() const { return sum + carry; }
  };

  void add_row(std::size_t row_index, double sign);
  void restandardize();

  const ParameterSeries* series_;
  WindowSpec spec_;
  std::vector<double> shift_;
  std::vector<Compensated> sum_;
  std::vector<Compensated> sum_sq_;
  StandardizedWindow window_;
};

// CSV exports: header `t,G_<param_id>,...` followed by one row per instant
// and a `Total` row of per-column sums; plot data `t,V_raw,V_mean,degenerate_count`.
std::string format_profile_csv(const IndicatorProfile& profile, const ParameterSeries& series);
std::string format_plot_data_csv(const IndicatorProfile& profile);
void write_profile_csv(const IndicatorProfile& profile, const ParameterSeries& series,
                       const std::string& path);
void write_plot_data_csv(const IndicatorProfile& profile, const std::string& path);

}  // namespace dyncorr
