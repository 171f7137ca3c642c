#pragma once
// Reference implementations used only by the tests. They work on raw values
// with the textbook two-pass Pearson formula and share no code with the
// engine, so agreement is meaningful.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dyncorr/series.hpp"

namespace oracle {

// Rows t-1 .. t-k of column j, oldest first.
inline std::vector<double> window_column(const dyncorr::ParameterSeries& s, std::int64_t t,
                                         std::size_t k, std::size_t j) {
  std::vector<double> out;
  for (std::size_t l = k; l >= 1; --l) {
    const auto row = static_cast<std::size_t>(t - static_cast<std::int64_t>(l) - s.period_origin());
    out.push_back(s.at(row, j));
  }
  return out;
}

inline double mean(const std::vector<double>& x) {
  double m = 0.0;
  for (double v : x) m += v;
  return m / static_cast<double>(x.size());
}

inline bool degenerate(const std::vector<double>& x, double eps = 1e-12) {
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  const double sd = std::sqrt(ss / static_cast<double>(x.size() - 1));
  return sd <= eps * std::max(1.0, std::fabs(m));
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (degenerate(x) || degenerate(y)) return 0.0;
  const double mx = mean(x), my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t l = 0; l < x.size(); ++l) {
    sxy += (x[l] - mx) * (y[l] - my);
    sxx += (x[l] - mx) * (x[l] - mx);
    syy += (y[l] - my) * (y[l] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

// G_i(t) for every column, O(n^2 k).
inline std::vector<double> indicators(const dyncorr::ParameterSeries& s, std::int64_t t, std::size_t k) {
  const std::size_t n = s.n_params();
  std::vector<std::vector<double>> cols;
  for (std::size_t j = 0; j < n; ++j) cols.push_back(window_column(s, t, k, j));
  std::vector<double> g(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      g[i] += std::fabs(i == j ? (degenerate(cols[i]) ? 0.0 : 1.0) : pearson(cols[i], cols[j]));
    }
  }
  return g;
}

inline std::vector<std::string> ids(std::size_t n, const char* prefix = "c") {
  std::vector<std::string> out;
  for (std::size_t j = 0; j < n; ++j) out.push_back(prefix + std::to_string(j));
  return out;
}

inline dyncorr::ParameterSeries random_series(std::size_t n, std::size_t periods, std::uint64_t seed,
                                              std::int64_t origin = 1) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> level(-50.0, 150.0);
  std::vector<double> base(n);
  for (auto& b : base) b = level(rng);
  std::vector<double> values(n * periods);
  for (std::size_t r = 0; r < periods; ++r) {
    for (std::size_t j = 0; j < n; ++j) values[r * n + j] = base[j] + 10.0 * normal(rng);
  }
  return dyncorr::ParameterSeries(ids(n), std::move(values), periods, origin);
}

}  // namespace oracle
