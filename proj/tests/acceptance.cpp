// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance            run every criterion
//   acceptance 2 5        run only criteria 2 and 5
//
// Exit status is 0 only when every selected criterion passes.

#include <sys/resource.h>
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dyncorr/correlation.hpp"
#include "dyncorr/ledger.hpp"
#include "dyncorr/overlay.hpp"
#include "dyncorr/scenario.hpp"
#include "oracle.hpp"
#include "test_support.hpp"

using namespace dyncorr;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

int run_cli(const std::string& args, const TempDir& dir) {
  const std::string cmd = "cd '" + dir.path().string() + "' && '" + DYNCORR_CLI_PATH + "' " + args +
                          " >'" + dir.file("cli.out") + "' 2>'" + dir.file("cli.err") + "'";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t q = 0; q < a.size(); ++q) worst = std::max(worst, std::fabs(a[q] - b[q]));
  return worst;
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

// 1. Fixture arithmetic on the shipped table.
Outcome fixture_arithmetic() {
  TempDir dir;
  const auto start = Clock::now();
  const int status = run_cli("verify-fixture --fixture '" + std::string(DYNCORR_DATA_DIR) + "/table1.csv'", dir);
  const double elapsed = seconds_since(start);

  const auto report = verify_fixture(load_fixture(std::string(DYNCORR_DATA_DIR) + "/table1.csv"));
  const bool ok = status == 0 && report.rows.size() == 57 && report.identity_holds &&
                  report.max_row_discrepancy <= 0.015 && report.base_sum_discrepancy() <= 0.3 &&
                  report.control_sum_discrepancy() <= 0.3 && report.delta_sum_discrepancy() <= 0.3 &&
                  elapsed < 1.0;
  return {ok, fmt("exit %d, %zu rows, identity %s (residual %.2f), max row diff %.2f (<= 0.015), "
                  "column sums off by %.2f/%.2f/%.2f (<= 0.3), %zu rows flagged, %.3f s (< 1 s)",
                  status, report.rows.size(), report.identity_holds ? "holds" : "FAILS",
                  report.identity_residual, report.max_row_discrepancy, report.base_sum_discrepancy(),
                  report.control_sum_discrepancy(), report.delta_sum_discrepancy(),
                  report.flagged_count(), elapsed)};
}

// 2. Blocked engine vs the naive double loop.
Outcome oracle_equivalence() {
  const auto start = Clock::now();
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::size_t> n_dist(1, 100);
  const std::size_t ks[] = {2, 6, 12};
  double worst = 0.0;
  int instances = 0;
  for (int rep = 0; rep < 24; ++rep) {
    const std::size_t k = ks[rep % 3];
    const std::size_t n = n_dist(rng);
    const std::size_t periods = std::uniform_int_distribution<std::size_t>(k + 1, 80)(rng);
    const auto series = oracle::random_series(n, periods, rng());
    WindowSpec spec;
    spec.k = k;
    const auto profile = indicator_profile(series, spec, {std::size_t{1} + rng() % 64, 0});
    for (std::size_t ti = 0; ti < profile.n_instants(); ++ti) {
      const auto g = oracle::indicators(series, profile.instants()[ti], k);
      worst = std::max(worst, max_abs_diff(g, profile.row(ti)));
    }
    ++instances;
  }
  const double elapsed = seconds_since(start);
  return {instances >= 20 && worst <= 1e-10 && elapsed < 30.0,
          fmt("%d instances (n <= 100, T <= 80, k in {2,6,12}), max |diff| %.3g (<= 1e-10), %.2f s (< 30 s)",
              instances, worst, elapsed)};
}

// 3. Affine rescaling of random columns.
Outcome affine_invariance() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> magnitude(0.1, 10.0);
  std::uniform_real_distribution<double> offset(-1000.0, 1000.0);
  std::bernoulli_distribution coin(0.5);
  double worst = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t n = 10 + rng() % 60;
    const std::size_t periods = 20 + rng() % 40;
    const auto series = oracle::random_series(n, periods, rng());
    std::vector<double> v(series.values().begin(), series.values().end());
    for (std::size_t c = 0; c < n; ++c) {
      if (!coin(rng)) continue;
      const double a = magnitude(rng) * (coin(rng) ? 1.0 : -1.0);
      const double b = offset(rng);
      for (std::size_t r = 0; r < periods; ++r) v[r * n + c] = a * v[r * n + c] + b;
    }
    const ParameterSeries scaled(series.param_ids(), v, periods);
    const auto p = indicator_profile(series, WindowSpec{});
    const auto q = indicator_profile(scaled, WindowSpec{});
    worst = std::max(worst, max_abs_diff(p.values(), q.values()));
  }
  return {worst <= 1e-9, fmt("10 instances, max |dG| %.3g (<= 1e-9)", worst)};
}

// 4. Bitwise determinism across tile widths and thread counts.
Outcome determinism() {
  const unsigned max_threads = std::max(1u, std::thread::hardware_concurrency());
  const std::vector<ParameterSeries> inputs = {generate_scenario(replica_config()),
                                               oracle::random_series(700, 9, 5)};
  int combos = 0;
  bool identical = true;
  for (const auto& series : inputs) {
    const auto ref = indicator_profile(series, WindowSpec{}, {512, 1});
    for (std::size_t b : {1u, 64u, 512u}) {
      for (unsigned t : {1u, 4u, max_threads}) {
        identical = identical && indicator_profile(series, WindowSpec{}, {b, t}) == ref;
        ++combos;
      }
    }
  }
  return {identical, fmt("%d runs over tile widths {1,64,512} x threads {1,4,%u}: %s", combos, max_threads,
                         identical ? "bitwise identical" : "DIFFER")};
}

// 5. Incremental sweep vs from-scratch windows.
Outcome incremental_equivalence() {
  const auto series = oracle::random_series(50, 60, 4242);
  const WindowSpec spec;
  const auto profile = indicator_profile(series, spec);
  SlidingWindow sw(series, spec, first_instant(series, spec));
  double worst_z = 0.0, worst_g = 0.0;
  std::size_t steps = 0;
  for (std::size_t ti = 0;; ++ti) {
    const auto scratch = standardize_window(series, sw.instant(), spec);
    worst_z = std::max(worst_z, max_abs_diff(scratch.z_scores(), sw.current().z_scores()));
    std::vector<double> g(50);
    window_indicators(sw.current(), g);
    worst_g = std::max(worst_g, max_abs_diff(g, profile.row(ti)));
    ++steps;
    if (!sw.can_advance()) break;
    sw.advance();
  }
  return {steps == profile.n_instants() && worst_z <= 1e-10 && worst_g <= 1e-10,
          fmt("60x50, %zu instants, max |dz| %.3g, max |dG| %.3g (<= 1e-10)", steps, worst_z, worst_g)};
}

// 6. Empty overlay plan through the whole pipeline.
Outcome null_intervention() {
  const auto base = generate_scenario(replica_config());
  const auto control = apply_overlay(base, OverlayPlan{});
  const auto ledger =
      compare_modes(period_aggregate(indicator_profile(base, WindowSpec{}), Normalization::raw, "basic"),
                    period_aggregate(indicator_profile(control, WindowSpec{}), Normalization::raw, "control"));
  bool all_zero = true;
  for (double d : ledger.delta) all_zero = all_zero && d == 0.0;
  return {all_zero && ledger.total_delta == 0.0,
          fmt("%zu rows, total_delta = %.17g (exactly 0 required)", ledger.delta.size(), ledger.total_delta)};
}

// 7. Replica plan cost and budget enforcement.
Outcome replica_plan_budget() {
  const double total = replica_plan().total_injected();
  TempDir dir;
  const int status = run_cli("pipeline --budget-cap 9000 --enforce-budget --out run", dir);
  return {total == 9060.0 && status == 3,
          fmt("total injected %.2f (exactly 9060), pipeline with cap 9000 --enforce-budget exit %d (3)", total,
              status)};
}

long peak_rss_kb() {
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return usage.ru_maxrss;
}

// 8. Desk-scale performance.
Outcome performance() {
  ScenarioConfig config;
  config.n_params = 20000;
  config.n_periods = 7;
  config.warmup = 6;
  config.seed = 8;
  const auto series = generate_scenario(config);
  const WindowSpec spec;
  const auto window = standardize_window(series, first_instant(series, spec), spec);
  std::vector<double> g1(series.n_params()), g8(series.n_params());

  auto start = Clock::now();
  window_indicators(window, g1, {512, 1});
  const double single = seconds_since(start);
  start = Clock::now();
  window_indicators(window, g8, {512, 8});
  const double eight = seconds_since(start);

  const double speedup = single / eight;
  const double rss_gb = static_cast<double>(peak_rss_kb()) / (1024.0 * 1024.0);
  const bool same = g1 == g8;
  const unsigned cores = std::thread::hardware_concurrency();
  const bool ok = single <= 30.0 && speedup >= 3.0 && rss_gb < 2.0 && same;
  return {ok, fmt("n=20000 k=6 one instant: 1 thread %.2f s (<= 30 s), 8 threads %.2f s, speedup %.2fx "
                  "(>= 3x; %u hardware thread%s available), peak RSS %.3f GB (< 2 GB), results %s",
                  single, eight, speedup, cores, cores == 1 ? "" : "s", rss_gb,
                  same ? "bitwise equal" : "DIFFER")};
}

// 9. Identically-zero columns.
Outcome degenerate_handling() {
  ScenarioConfig config;
  config.n_params = 100;
  config.n_periods = 40;
  config.sparsity = 0.3;
  config.seed = 99;
  config.department_blocks = {{20, 0.8}, {20, 0.6}};
  const auto series = generate_scenario(config);
  const auto profile = indicator_profile(series, WindowSpec{});
  std::size_t zero_cols = 0;
  bool exact = true;
  for (std::size_t c = 0; c < series.n_params(); ++c) {
    bool all_zero = true;
    for (std::size_t r = 0; r < series.n_periods(); ++r) all_zero = all_zero && series.at(r, c) == 0.0;
    if (!all_zero) continue;
    ++zero_cols;
    for (std::size_t t = 0; t < profile.n_instants(); ++t) exact = exact && profile.at(t, c) == 0.0;
  }
  return {zero_cols == 30 && exact,
          fmt("%zu of 100 columns identically zero, G = 0 exactly at all %zu instants: %s", zero_cols,
              profile.n_instants(), exact ? "yes" : "NO")};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "fixture arithmetic", fixture_arithmetic},
      {2, "oracle equivalence", oracle_equivalence},
      {3, "affine invariance", affine_invariance},
      {4, "determinism", determinism},
      {5, "incremental equivalence", incremental_equivalence},
      {6, "null-intervention identity", null_intervention},
      {7, "replica plan budget", replica_plan_budget},
      {8, "performance", performance},
      {9, "degenerate handling", degenerate_handling},
  };

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    Outcome outcome;
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    std::printf("[%s] %d. %s: %s\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name, outcome.detail.c_str());
    std::fflush(stdout);
    failures += outcome.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
