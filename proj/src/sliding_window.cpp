#include <algorithm>
#include <cmath>

#include "dyncorr/correlation.hpp"
#include "dyncorr/error.hpp"

namespace dyncorr {

// Neumaier's variant: also correct when the addend dominates the running sum,
// which happens every time a large value leaves the window.
void SlidingWindow::Compensated::add(double x) {
  const double t = sum + x;
  if (std::abs(sum) >= std::abs(x)) {
    carry += (sum - t) + x;
  } else {
    carry += (x - t) + sum;
  }
  sum = t;
}

SlidingWindow::SlidingWindow(const ParameterSeries& series, const WindowSpec& spec, std::int64_t t)
    : series_(&series), spec_(spec) {
  spec_.validate();
  const auto lo = first_instant(series, spec_);
  const auto hi = last_instant(series, spec_);
  if (t < lo || t > hi) {
    throw Error(ErrorCode::out_of_range, "sliding window cannot start at t=" + std::to_string(t) +
                                             "; analyzable instants are " + std::to_string(lo) +
                                             ".." + std::to_string(hi));
  }
  const std::size_t n = series.n_params();
  const std::size_t first_row = static_cast<std::size_t>(t - series.period_origin()) - spec_.k;

  // Sums are kept relative to a per-column anchor to limit cancellation in
  // sum_sq - sum^2 / k.
  const auto anchor = series.row(first_row);
  shift_.assign(anchor.begin(), anchor.end());
  sum_.assign(n, {});
  sum_sq_.assign(n, {});
  for (std::size_t l = 0; l < spec_.k; ++l) {
    add_row(first_row + l, 1.0);
  }
  window_ = StandardizedWindow(t, spec_.k, n);
  restandardize();
}

bool SlidingWindow::can_advance() const noexcept {
  return window_.instant() < last_instant(*series_, spec_);
}

const StandardizedWindow& SlidingWindow::advance() {
  if (!can_advance()) {
    throw Error(ErrorCode::out_of_range, "cannot advance past the last analyzable instant t=" +
                                             std::to_string(last_instant(*series_, spec_)));
  }
  const std::int64_t t = window_.instant();
  const auto leaving = static_cast<std::size_t>(t - series_->period_origin()) - spec_.k;
  const auto entering = static_cast<std::size_t>(t - series_->period_origin());
  add_row(leaving, -1.0);
  add_row(entering, 1.0);
  window_ = StandardizedWindow(t + 1, spec_.k, series_->n_params());
  restandardize();
  return window_;
}

void SlidingWindow::add_row(std::size_t row_index, double sign) {
  const auto row = series_->row(row_index);
  for (std::size_t j = 0; j < row.size(); ++j) {
    const double d = row[j] - shift_[j];
    sum_[j].add(sign * d);
    sum_sq_[j].add(sign * d * d);
  }
}

void SlidingWindow::restandardize() {
  const std::size_t k = spec_.k;
  const double kd = static_cast<double>(k);
  const std::size_t first_row =
      static_cast<std::size_t>(window_.instant() - series_->period_origin()) - k;

  for (std::size_t j = 0; j < series_->n_params(); ++j) {
    const double s = sum_[j].value();
    const double q = sum_sq_[j].value();
    const double mean = shift_[j] + s / kd;
    const double sd = std::sqrt(std::max(0.0, (q - s * s / kd) / (kd - 1.0)));

    // Residual carries can leave a tiny positive variance on a column that
    // has become exactly constant, so check constancy directly as well.
    const double first = series_->at(first_row, j);
    bool constant = true;
    for (std::size_t l = 1; l < k && constant; ++l) {
      constant = series_->at(first_row + l, j) == first;
    }
    if (constant || sd <= spec_.degenerate_epsilon * std::max(1.0, std::abs(mean))) {
      window_.set_degenerate(j, true);
      continue;
    }
    auto z = window_.column(j);
    for (std::size_t l = 0; l < k; ++l) {
      z[l] = (series_->at(first_row + l, j) - mean) / sd;
    }
  }
}

}  // namespace dyncorr
