#include "dyncorr/correlation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "dyncorr/error.hpp"

namespace dyncorr {

void WindowSpec::validate() const {
  if (k < 2) {
    throw Error(ErrorCode::invalid_argument,
                "window length k must be at least 2, got " + std::to_string(k));
  }
  if (!(degenerate_epsilon > 0.0) || !std::isfinite(degenerate_epsilon)) {
    throw Error(ErrorCode::invalid_argument, "degenerate_epsilon must be a positive finite number");
  }
}

std::int64_t first_instant(const ParameterSeries& series, const WindowSpec& spec) {
  return series.period_origin() + static_cast<std::int64_t>(spec.k);
}

std::int64_t last_instant(const ParameterSeries& series, const WindowSpec&) {
  return series.last_period();
}

StandardizedWindow::StandardizedWindow(std::int64_t instant, std::size_t k, std::size_t n_params)
    : instant_(instant), k_(k), n_params_(n_params), z_(k * n_params, 0.0), mask_(n_params, 0) {}

std::size_t StandardizedWindow::degenerate_count() const noexcept {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), std::uint8_t{1}));
}

StandardizedWindow standardize_window(const ParameterSeries& series, std::int64_t t,
                                      const WindowSpec& spec) {
  spec.validate();
  const auto k = spec.k;
  const std::int64_t lo = series.period_origin() + static_cast<std::int64_t>(k);
  const std::int64_t hi = series.last_period() + 1;
  if (t < lo || t > hi) {
    throw Error(ErrorCode::out_of_range, "window for t=" + std::to_string(t) +
                                             " is out of range; valid instants are " +
                                             std::to_string(lo) + ".." + std::to_string(hi));
  }
  const std::size_t n = series.n_params();
  const std::size_t first_row = static_cast<std::size_t>(t - series.period_origin()) - k;

  StandardizedWindow window(t, k, n);
  std::vector<double> mean(n, 0.0);
  std::vector<double> ss(n, 0.0);
  for (std::size_t l = 0; l < k; ++l) {
    const auto row = series.row(first_row + l);
    for (std::size_t j = 0; j < n; ++j) mean[j] += row[j];
  }
  const double kd = static_cast<double>(k);
  for (std::size_t j = 0; j < n; ++j) mean[j] /= kd;
  for (std::size_t l = 0; l < k; ++l) {
    const auto row = series.row(first_row + l);
    for (std::size_t j = 0; j < n; ++j) {
      const double d = row[j] - mean[j];
      ss[j] += d * d;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double sd = std::sqrt(ss[j] / (kd - 1.0));
    if (sd <= spec.degenerate_epsilon * std::max(1.0, std::abs(mean[j]))) {
      window.set_degenerate(j, true);
      continue;
    }
    auto z = window.column(j);
    for (std::size_t l = 0; l < k; ++l) {
      z[l] = (series.at(first_row + l, j) - mean[j]) / sd;
    }
  }
  return window;
}

namespace {

void check_column(const StandardizedWindow& window, std::size_t j) {
  if (j >= window.n_params()) {
    throw Error(ErrorCode::out_of_range, "column index " + std::to_string(j) +
                                             " out of range for " +
                                             std::to_string(window.n_params()) + " parameters");
  }
}

inline double clamp_unit(double r) { return std::clamp(r, -1.0, 1.0); }

}  // namespace

double pair_correlation(const StandardizedWindow& window, std::size_t i, std::size_t j) {
  check_column(window, i);
  check_column(window, j);
  if (window.degenerate(i) || window.degenerate(j)) {
    return 0.0;
  }
  if (i == j) {
    return 1.0;
  }
  const auto zi = window.column(i);
  const auto zj = window.column(j);
  double acc = 0.0;
  for (std::size_t l = 0; l < window.k(); ++l) {
    acc += zi[l] * zj[l];
  }
  return clamp_unit(acc / static_cast<double>(window.k() - 1));
}

double indicator_row(const StandardizedWindow& window, std::size_t i) {
  check_column(window, i);
  if (window.degenerate(i)) {
    return 0.0;
  }
  double g = 0.0;
  for (std::size_t j = 0; j < window.n_params(); ++j) {
    g += std::abs(pair_correlation(window, i, j));
  }
  return g;
}

IndicatorProfile::IndicatorProfile(std::vector<std::int64_t> instants, std::size_t n_params)
    : instants_(std::move(instants)),
      n_params_(n_params),
      g_(instants_.size() * n_params, 0.0),
      degenerate_counts_(instants_.size(), 0) {}

namespace {

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) {
    return requested;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Rows [row_begin, row_end) of the indicator vector. Column tiles are visited
// in ascending order and each row is reduced left to right within a tile, so
// the accumulation order of every G_i is j = 0, 1, ..., n-1.
void indicator_tile_rows(const StandardizedWindow& window, std::span<const double> zt,
                         std::size_t row_begin, std::size_t row_end, std::size_t tile,
                         std::vector<double>& scratch, std::span<double> out) {
  const std::size_t n = window.n_params();
  const std::size_t k = window.k();
  const double km1 = static_cast<double>(k - 1);

  for (std::size_t a = row_begin; a < row_end; ++a) {
    out[a] = 0.0;
  }
  for (std::size_t j0 = 0; j0 < n; j0 += tile) {
    const std::size_t width = std::min(tile, n - j0);
    for (std::size_t a = row_begin; a < row_end; ++a) {
      if (window.degenerate(a)) {
        continue;
      }
      double* dots = scratch.data();
      std::fill(dots, dots + width, 0.0);
      const auto za = window.column(a);
      for (std::size_t l = 0; l < k; ++l) {
        const double zal = za[l];
        const double* zt_l = zt.data() + l * n + j0;
        for (std::size_t b = 0; b < width; ++b) {
          dots[b] += zal * zt_l[b];
        }
      }
      double g = out[a];
      for (std::size_t b = 0; b < width; ++b) {
        const std::size_t j = j0 + b;
        double r;
        if (j == a) {
          r = 1.0;
        } else if (window.degenerate(j)) {
          r = 0.0;
        } else {
          r = clamp_unit(dots[b] / km1);
        }
        g += std::abs(r);
      }
      out[a] = g;
    }
  }
}

}  // namespace

void window_indicators(const StandardizedWindow& window, std::span<double> out,
                       const ProfileOptions& options) {
  const std::size_t n = window.n_params();
  const std::size_t k = window.k();
  if (out.size() != n) {
    throw Error(ErrorCode::invalid_argument, "indicator output has " + std::to_string(out.size()) +
                                                 " slots for " + std::to_string(n) + " parameters");
  }
  if (options.tile_width == 0) {
    throw Error(ErrorCode::invalid_argument, "tile width must be positive");
  }
  const std::size_t tile = std::min(options.tile_width, n);

  // Row-major copy (k x n) so the inner loop streams contiguous j.
  std::vector<double> zt(k * n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto z = window.column(j);
    for (std::size_t l = 0; l < k; ++l) zt[l * n + j] = z[l];
  }

  const std::size_t n_tiles = (n + tile - 1) / tile;
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(options.threads), n_tiles));

  std::atomic<std::size_t> next_tile{0};
  auto work = [&] {
    std::vector<double> scratch(tile);
    for (std::size_t t = next_tile.fetch_add(1); t < n_tiles; t = next_tile.fetch_add(1)) {
      const std::size_t begin = t * tile;
      indicator_tile_rows(window, zt, begin, std::min(n, begin + tile), tile, scratch, out);
    }
  };

  if (workers <= 1) {
    work();
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) {
    pool.emplace_back(work);
  }
  work();
}

IndicatorProfile indicator_profile(const ParameterSeries& series, const WindowSpec& spec,
                                   const ProfileOptions& options) {
  spec.validate();
  if (series.n_periods() < spec.k + 1) {
    throw Error(ErrorCode::validation, "series has " + std::to_string(series.n_periods()) +
                                           " periods; window k=" + std::to_string(spec.k) +
                                           " needs at least " + std::to_string(spec.k + 1));
  }
  std::vector<std::int64_t> instants;
  for (auto t = first_instant(series, spec); t <= last_instant(series, spec); ++t) {
    instants.push_back(t);
  }
  IndicatorProfile profile(instants, series.n_params());
  for (std::size_t idx = 0; idx < instants.size(); ++idx) {
    const auto window = standardize_window(series, instants[idx], spec);
    window_indicators(window, profile.row(idx), options);
    profile.degenerate_counts()[idx] = window.degenerate_count();
  }
  return profile;
}

double total_indicator(const IndicatorProfile& profile) {
  double total = 0.0;
  for (std::size_t t = 0; t < profile.n_instants(); ++t) {
    for (double g : profile.row(t)) {
      total += g;
    }
  }
  return total;
}

}  // namespace dyncorr
