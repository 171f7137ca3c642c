// dyncorr command-line front end. Talks to the engine only through the C API.

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dyncorr/dyncorr.h"

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitBudget = 3;

struct CliFailure {
  int exit_code;
  std::string message;
};

void check(dc_status status, const std::string& context) {
  if (status != DC_OK) {
    throw CliFailure{kExitData, context + ": " + dc_last_error()};
  }
}

template <typename Handle, dc_status (*Free)(Handle)>
struct HandleDeleter {
  void operator()(Handle h) const { Free(h); }
};

using Series = std::unique_ptr<dc_series_s, HandleDeleter<dc_series, dc_series_free>>;
using Profile = std::unique_ptr<dc_profile_s, HandleDeleter<dc_profile, dc_profile_free>>;
using Aggregate = std::unique_ptr<dc_aggregate_s, HandleDeleter<dc_aggregate, dc_aggregate_free>>;
using Ledger = std::unique_ptr<dc_ledger_s, HandleDeleter<dc_ledger, dc_ledger_free>>;
using Plan = std::unique_ptr<dc_plan_s, HandleDeleter<dc_plan, dc_plan_free>>;
using Scenario = std::unique_ptr<dc_scenario_s, HandleDeleter<dc_scenario, dc_scenario_free>>;
using Report =
    std::unique_ptr<dc_fixture_report_s, HandleDeleter<dc_fixture_report, dc_fixture_report_free>>;

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, value);
  return buf;
}

// Options shared by every subcommand that computes indicator profiles.
struct EngineFlags {
  std::size_t k = 6;
  std::string normalization = "raw";
  std::size_t tile_width = 512;
  std::optional<unsigned> threads;

  void attach(CLI::App* cmd) {
    cmd->add_option("--k", k, "Window length in periods (>= 2)")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20))
        ->capture_default_str();
    cmd->add_option("--normalization", normalization, "raw or mean")
        ->check(CLI::IsMember({"raw", "mean"}))
        ->capture_default_str();
    cmd->add_option("--tile-width", tile_width, "Column tile width for the blocked engine")
        ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20))
        ->capture_default_str();
    cmd->add_option("--threads", threads, "Worker threads (default: DYNCORR_THREADS or all cores)")
        ->check(CLI::Range(1u, 4096u));
  }

  unsigned resolved_threads() const {
    if (threads) return *threads;
    if (const char* env = std::getenv("DYNCORR_THREADS")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end == env || *end != '\0' || v < 1 || v > 4096) {
        throw CliFailure{kExitUsage, std::string("DYNCORR_THREADS must be an integer in [1, 4096], got '") +
                                         env + "'"};
      }
      return static_cast<unsigned>(v);
    }
    return 0;
  }

  dc_window_spec spec() const {
    auto s = dc_window_spec_default();
    s.k = k;
    return s;
  }
  dc_profile_options options() const { return {tile_width, resolved_threads()}; }
  dc_normalization norm() const {
    return normalization == "mean" ? DC_NORMALIZATION_MEAN : DC_NORMALIZATION_RAW;
  }

  json to_json() const {
    const auto s = spec();
    return {{"k", s.k},
            {"convention", "previous-k"},
            {"degenerate_epsilon", s.degenerate_epsilon},
            {"tile_width", tile_width},
            {"threads", resolved_threads()}};
  }
};

class Manifest {
 public:
  explicit Manifest(std::string command)
      : start_(std::chrono::steady_clock::now()) {
    doc_["command"] = std::move(command);
    doc_["tool_version"] = dc_version();
    doc_["inputs"] = json::array();
    doc_["outputs"] = json::array();
  }

  void input(const std::string& path, std::optional<std::uint64_t> checksum = std::nullopt) {
    json entry = {{"path", path}};
    if (checksum) entry["checksum"] = hex64(*checksum);
    doc_["inputs"].push_back(entry);
  }
  void output(const std::string& path) { doc_["outputs"].push_back(path); }
  json& operator[](const char* key) { return doc_[key]; }

  void write(const std::string& path) {
    doc_["duration_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw CliFailure{kExitData, "cannot write manifest " + path};
    out << doc_.dump(2) << "\n";
  }

 private:
  json doc_;
  std::chrono::steady_clock::time_point start_;
};

std::string strip_suffix(const std::string& path, const std::string& suffix) {
  if (path.size() > suffix.size() &&
      path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return path.substr(0, path.size() - suffix.size());
  }
  return path;
}

void refuse_overwrite(const std::string& output, const std::vector<std::string>& inputs) {
  std::error_code ec;
  const auto out = fs::weakly_canonical(output, ec);
  for (const auto& in : inputs) {
    if (in.empty()) continue;
    std::error_code ec2;
    if (!ec && fs::weakly_canonical(in, ec2) == out && !ec2) {
      throw CliFailure{kExitUsage, "output " + output + " would overwrite input " + in};
    }
  }
}

Series load_series(const std::string& path) {
  dc_series raw = nullptr;
  check(dc_series_load(path.c_str(), dc_format_for_path(path.c_str()), &raw), "loading " + path);
  return Series(raw);
}

std::uint64_t checksum(const Series& series) {
  dc_diagnostics d{};
  check(dc_series_diagnose(series.get(), &d), "diagnosing series");
  return d.checksum;
}

Profile compute_profile(const Series& series, const EngineFlags& flags, const std::string& what) {
  const auto spec = flags.spec();
  const auto options = flags.options();
  dc_profile raw = nullptr;
  check(dc_profile_compute(series.get(), &spec, &options, &raw), "profiling " + what);
  return Profile(raw);
}

Aggregate aggregate(const Profile& profile, const EngineFlags& flags, const char* name) {
  dc_aggregate raw = nullptr;
  check(dc_aggregate_compute(profile.get(), flags.norm(), name, &raw), "aggregating");
  return Aggregate(raw);
}

Plan load_plan(const std::optional<std::string>& path) {
  dc_plan raw = nullptr;
  if (path) {
    check(dc_plan_load(path->c_str(), &raw), "loading plan " + *path);
  } else {
    check(dc_plan_replica(&raw), "building replica plan");
  }
  return Plan(raw);
}

double series_total(const Series& series) {
  std::size_t n = 0, periods = 0;
  check(dc_series_shape(series.get(), &n, &periods, nullptr), "reading series shape");
  const double* values = nullptr;
  check(dc_series_values(series.get(), &values), "reading series values");
  double total = 0.0;
  for (std::size_t i = 0; i < n * periods; ++i) total += values[i];
  return total;
}

// Prints the verdict; returns true when the run must stop on a violation.
bool report_budget(const Plan& plan, double base_total, bool enforce, Manifest* manifest) {
  dc_budget_verdict v{};
  check(dc_plan_check_budget(plan.get(), base_total, &v), "checking budget");
  std::printf("injected cost C(X): %.2f", v.injected);
  if (v.has_cap) {
    std::printf("  cap C: %.2f  -> %s", v.cap, v.ok ? "OK" : "VIOLATION");
    if (!v.ok) std::printf(" (excess %.2f)", v.excess);
  } else {
    std::printf("  (no cap)");
  }
  std::printf("\n");
  if (manifest) {
    (*manifest)["budget"] = {{"injected", v.injected},
                             {"cap", v.has_cap ? json(v.cap) : json(nullptr)},
                             {"ok", v.ok != 0},
                             {"excess", v.excess}};
  }
  std::fflush(stdout);
  if (!v.ok && enforce) {
    std::fprintf(stderr, "budget violation: injected %.2f exceeds cap %.2f by %.2f\n", v.injected,
                 v.cap, v.excess);
    return true;
  }
  return false;
}

// ---------------------------------------------------------------- analyze

int run_analyze(const std::string& input, const std::string& out, const EngineFlags& flags) {
  const std::string stem = strip_suffix(out, ".csv");
  const std::string plot = stem + ".plot.csv";
  for (const auto& path : {out, plot, stem + ".manifest.json"}) refuse_overwrite(path, {input});
  Manifest manifest("analyze");
  auto series = load_series(input);
  manifest.input(input, checksum(series));
  auto profile = compute_profile(series, flags, input);

  check(dc_profile_write_csv(profile.get(), series.get(), out.c_str()), "writing " + out);
  check(dc_profile_write_plot_data(profile.get(), plot.c_str()), "writing " + plot);
  manifest.output(out);
  manifest.output(plot);

  auto agg = aggregate(profile, flags, "analysis");
  double g_total = 0.0, v_total = 0.0;
  std::size_t instants = 0;
  check(dc_profile_total(profile.get(), &g_total), "totalling profile");
  check(dc_aggregate_total(agg.get(), &v_total), "totalling aggregate");
  check(dc_profile_shape(profile.get(), &instants, nullptr), "reading profile");

  manifest["window"] = flags.to_json();
  manifest["normalization"] = flags.normalization;
  manifest["total_indicator"] = g_total;
  manifest["total_v"] = v_total;
  const std::string manifest_path = stem + ".manifest.json";
  manifest.write(manifest_path);

  std::printf("instants: %zu\ntotal G: %.6f\ntotal V (%s): %.6f\nwrote %s, %s, %s\n", instants,
              g_total, flags.normalization.c_str(), v_total, out.c_str(), plot.c_str(),
              manifest_path.c_str());
  return kExitOk;
}

// ---------------------------------------------------------------- compare

struct LedgerRun {
  Ledger ledger;
  Profile base_profile;
  Profile control_profile;
};

LedgerRun build_ledger(const Series& base, const Series& control, const EngineFlags& flags) {
  check(dc_series_require_aligned(base.get(), control.get()), "comparing modes");
  auto pb = compute_profile(base, flags, "base mode");
  auto pc = compute_profile(control, flags, "control mode");
  auto ab = aggregate(pb, flags, "basic");
  auto ac = aggregate(pc, flags, "control");
  dc_ledger raw = nullptr;
  check(dc_ledger_compare(ab.get(), ac.get(), &raw), "comparing modes");
  return {Ledger(raw), std::move(pb), std::move(pc)};
}

void write_ledger_outputs(const LedgerRun& run, const std::string& ledger_path,
                          const std::string& plot_stem, Manifest& manifest) {
  check(dc_ledger_write_csv(run.ledger.get(), ledger_path.c_str()), "writing " + ledger_path);
  const std::string plot_base = plot_stem + "base.plot.csv";
  const std::string plot_control = plot_stem + "control.plot.csv";
  check(dc_profile_write_plot_data(run.base_profile.get(), plot_base.c_str()), "writing " + plot_base);
  check(dc_profile_write_plot_data(run.control_profile.get(), plot_control.c_str()),
        "writing " + plot_control);
  manifest.output(ledger_path);
  manifest.output(plot_base);
  manifest.output(plot_control);

  dc_ledger_totals totals{};
  check(dc_ledger_totals_get(run.ledger.get(), &totals), "reading ledger totals");
  std::size_t rows = 0;
  check(dc_ledger_rows(run.ledger.get(), &rows, nullptr, nullptr), "reading ledger rows");
  manifest["ledger"] = {{"rows", rows},
                        {"total_base", totals.total_base},
                        {"total_control", totals.total_control},
                        {"total_delta", totals.total_delta}};
  std::printf("rows: %zu\nV_basic total:   %.6f\nV_control total: %.6f\ndelta V total:   %.6f\n",
              rows, totals.total_base, totals.total_control, totals.total_delta);
}

int run_compare(const std::string& base_path, const std::string& control_path,
                const std::string& out, const EngineFlags& flags) {
  const std::string stem = strip_suffix(out, ".csv");
  for (const auto& path : {out, stem + ".base.plot.csv", stem + ".control.plot.csv", stem + ".manifest.json"}) {
    refuse_overwrite(path, {base_path, control_path});
  }
  Manifest manifest("compare");
  auto base = load_series(base_path);
  auto control = load_series(control_path);
  manifest.input(base_path, checksum(base));
  manifest.input(control_path, checksum(control));
  auto run = build_ledger(base, control, flags);

  manifest["window"] = flags.to_json();
  manifest["normalization"] = flags.normalization;
  write_ledger_outputs(run, out, stem + ".", manifest);
  manifest.write(stem + ".manifest.json");
  return kExitOk;
}

// ---------------------------------------------------------------- overlay

int run_overlay(const std::string& input, const std::optional<std::string>& plan_path,
                const std::optional<double>& cap, bool enforce, const std::string& out) {
  const std::string manifest_path =
      strip_suffix(strip_suffix(out, ".csv"), ".mdsc") + ".manifest.json";
  refuse_overwrite(out, {input, plan_path.value_or("")});
  refuse_overwrite(manifest_path, {input, plan_path.value_or("")});
  Manifest manifest("overlay");
  auto base = load_series(input);
  manifest.input(input, checksum(base));
  auto plan = load_plan(plan_path);
  manifest.input(plan_path.value_or("<replica plan>"));
  if (cap) check(dc_plan_set_budget_cap(plan.get(), *cap), "setting budget cap");

  if (report_budget(plan, series_total(base), enforce, &manifest)) {
    return kExitBudget;
  }
  dc_series raw = nullptr;
  check(dc_overlay_apply(base.get(), plan.get(), &raw), "applying overlay");
  Series control(raw);
  check(dc_series_write(control.get(), out.c_str(), dc_format_for_path(out.c_str())), "writing " + out);
  manifest.output(out);
  manifest["output_checksum"] = hex64(checksum(control));
  manifest.write(manifest_path);
  std::printf("wrote %s\n", out.c_str());
  return kExitOk;
}

// ---------------------------------------------------------------- generate

Scenario load_scenario(const std::optional<std::string>& config, const std::optional<std::uint64_t>& seed) {
  dc_scenario raw = nullptr;
  if (config) {
    check(dc_scenario_load(config->c_str(), &raw), "loading scenario " + *config);
  } else {
    check(dc_scenario_replica(&raw), "building replica scenario");
  }
  Scenario scenario(raw);
  if (seed) check(dc_scenario_set_seed(scenario.get(), *seed), "setting seed");
  return scenario;
}

Series generate(const Scenario& scenario) {
  dc_series raw = nullptr;
  check(dc_scenario_generate(scenario.get(), &raw), "generating scenario");
  return Series(raw);
}

int run_generate(const std::optional<std::string>& config, const std::optional<std::uint64_t>& seed,
                 const std::string& out) {
  const std::string stem = strip_suffix(strip_suffix(out, ".csv"), ".mdsc");
  const std::string csv = stem + ".csv";
  const std::string bin = stem + ".mdsc";
  refuse_overwrite(csv, {config.value_or("")});
  refuse_overwrite(bin, {config.value_or("")});

  Manifest manifest("generate");
  manifest.input(config.value_or("<replica scenario>"));
  auto scenario = load_scenario(config, seed);
  auto series = generate(scenario);
  check(dc_series_write(series.get(), csv.c_str(), DC_FORMAT_CSV), "writing " + csv);
  check(dc_series_write(series.get(), bin.c_str(), DC_FORMAT_BINARY), "writing " + bin);
  manifest.output(csv);
  manifest.output(bin);

  std::uint64_t used_seed = 0;
  std::size_t zero_columns = 0;
  check(dc_scenario_seed(scenario.get(), &used_seed), "reading seed");
  check(dc_scenario_zero_columns(scenario.get(), &zero_columns), "reading sparsity");
  dc_diagnostics d{};
  check(dc_series_diagnose(series.get(), &d), "diagnosing series");
  manifest["seed"] = used_seed;
  manifest["output_checksum"] = hex64(d.checksum);
  manifest["zero_columns"] = d.zero_columns;
  manifest.write(stem + ".manifest.json");

  std::size_t n = 0, periods = 0;
  std::int64_t origin = 0;
  check(dc_series_shape(series.get(), &n, &periods, &origin), "reading shape");
  std::printf("generated %zu periods (t=%" PRId64 "..%" PRId64 ") x %zu parameters, seed %" PRIu64
              ", %zu zero columns (configured %zu), checksum %s\nwrote %s, %s\n",
              periods, origin, origin + static_cast<std::int64_t>(periods) - 1, n, used_seed,
              d.zero_columns, zero_columns, hex64(d.checksum).c_str(), csv.c_str(), bin.c_str());
  return kExitOk;
}

// ---------------------------------------------------------------- pipeline

int run_pipeline(const std::optional<std::string>& config, const std::optional<std::string>& plan_path,
                 const std::optional<std::uint64_t>& seed, const std::optional<double>& cap,
                 bool enforce, const EngineFlags& flags, const std::string& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw CliFailure{kExitData, "cannot create output directory " + out_dir + ": " + ec.message()};

  Manifest manifest("pipeline");
  auto scenario = load_scenario(config, seed);
  auto plan = load_plan(plan_path);
  if (cap) check(dc_plan_set_budget_cap(plan.get(), *cap), "setting budget cap");
  manifest.input(config.value_or("<replica scenario>"));
  manifest.input(plan_path.value_or("<replica plan>"));

  auto base = generate(scenario);
  if (report_budget(plan, series_total(base), enforce, &manifest)) {
    return kExitBudget;
  }
  dc_series raw = nullptr;
  check(dc_overlay_apply(base.get(), plan.get(), &raw), "applying overlay");
  Series control(raw);

  auto run = build_ledger(base, control, flags);
  const std::string prefix = (fs::path(out_dir) / "").string();
  std::uint64_t used_seed = 0;
  check(dc_scenario_seed(scenario.get(), &used_seed), "reading seed");
  manifest["seed"] = used_seed;
  manifest["window"] = flags.to_json();
  manifest["normalization"] = flags.normalization;
  manifest["base_checksum"] = hex64(checksum(base));
  manifest["control_checksum"] = hex64(checksum(control));
  write_ledger_outputs(run, prefix + "ledger.csv", prefix, manifest);
  manifest.write(prefix + "manifest.json");
  return kExitOk;
}

// ---------------------------------------------------------------- verify-fixture

int run_verify_fixture(const std::string& fixture, std::optional<std::string> costs,
                       const std::optional<std::string>& out) {
  if (out) refuse_overwrite(*out, {fixture, costs.value_or("")});
  if (!costs) {
    const auto sibling = fs::path(fixture).parent_path() / "cost_totals.txt";
    if (fs::exists(sibling)) costs = sibling.string();
  }
  dc_fixture_report raw = nullptr;
  check(dc_fixture_verify(fixture.c_str(), &raw), "verifying " + fixture);
  Report report(raw);
  const char* text = nullptr;
  check(dc_fixture_report_text(report.get(), costs ? costs->c_str() : nullptr, &text),
        "formatting report");
  std::fputs(text, stdout);
  if (out) {
    std::ofstream file(*out, std::ios::trunc);
    if (!file) throw CliFailure{kExitData, "cannot write " + *out};
    file << text;
  }

  dc_fixture_summary s{};
  check(dc_fixture_report_summary(report.get(), &s), "summarizing report");
  const bool ok = s.identity_holds && s.max_row_discrepancy <= 0.015 &&
                  s.base_sum_discrepancy <= 0.3 && s.control_sum_discrepancy <= 0.3 &&
                  s.delta_sum_discrepancy <= 0.3;
  std::printf("fixture %s\n", ok ? "consistent within rounding" : "INCONSISTENT");
  return ok ? kExitOk : kExitData;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sliding-window correlation indicators for enterprise digital copies"};
  app.set_version_flag("--version", std::string(dc_version()));
  app.require_subcommand(1);

  EngineFlags analyze_flags, compare_flags, pipeline_flags;
  std::string input, out, base_path, control_path, fixture = "data/table1.csv";
  std::optional<std::string> plan_path, config_path, costs_path, report_out;
  std::optional<std::uint64_t> seed;
  std::optional<double> budget_cap;
  bool enforce = false;

  auto* analyze = app.add_subcommand("analyze", "Indicator profile of one series");
  analyze->add_option("--input", input, "Series file (.csv or .mdsc)")->required()->check(CLI::ExistingFile);
  analyze->add_option("--out", out, "Profile CSV; plot data and manifest are written beside it")->required();
  analyze_flags.attach(analyze);

  auto* compare = app.add_subcommand("compare", "Ledger of base vs control mode");
  compare->add_option("--base", base_path, "Base-mode series")->required()->check(CLI::ExistingFile);
  compare->add_option("--control", control_path, "Control-mode series")->required()->check(CLI::ExistingFile);
  compare->add_option("--out", out, "Ledger CSV")->default_val("ledger.csv");
  compare_flags.attach(compare);

  auto* overlay = app.add_subcommand("overlay", "Apply an overlay plan to a base series");
  overlay->add_option("--input", input, "Base series")->required()->check(CLI::ExistingFile);
  overlay->add_option("--plan", plan_path, "Plan file (default: built-in replica plan)")->check(CLI::ExistingFile);
  overlay->add_option("--budget-cap", budget_cap, "Override the plan's budget cap")->check(CLI::NonNegativeNumber);
  overlay->add_flag("--enforce-budget", enforce, "Exit with status 3 on a budget violation");
  overlay->add_option("--out", out, "Control series (.csv or .mdsc)")->required();

  auto* gen = app.add_subcommand("generate", "Generate a synthetic scenario (CSV and columnar-binary)");
  gen->add_option("--config", config_path, "Scenario config (default: replica scenario)")->check(CLI::ExistingFile);
  gen->add_option("--seed", seed, "Override the config seed");
  gen->add_option("--out", out, "Output stem; writes <stem>.csv and <stem>.mdsc")->default_val("scenario");

  auto* pipeline = app.add_subcommand("pipeline", "Generate, overlay, profile and compare in one run");
  pipeline->add_option("--config", config_path, "Scenario config (default: replica scenario)")->check(CLI::ExistingFile);
  pipeline->add_option("--plan", plan_path, "Plan file (default: built-in replica plan)")->check(CLI::ExistingFile);
  pipeline->add_option("--seed", seed, "Override the config seed");
  pipeline->add_option("--budget-cap", budget_cap, "Override the plan's budget cap")->check(CLI::NonNegativeNumber);
  pipeline->add_flag("--enforce-budget", enforce, "Exit with status 3 on a budget violation");
  pipeline->add_option("--out", out, "Output directory")->default_val("pipeline_out");
  pipeline_flags.attach(pipeline);

  auto* verify = app.add_subcommand("verify-fixture", "Check the arithmetic of a published mode table");
  verify->add_option("--fixture", fixture, "Fixture CSV")->capture_default_str()->check(CLI::ExistingFile);
  verify->add_option("--costs", costs_path, "Cost totals file (default: cost_totals.txt beside the fixture)")
      ->check(CLI::ExistingFile);
  verify->add_option("--out", report_out, "Also write the report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*analyze) return run_analyze(input, out, analyze_flags);
    if (*compare) return run_compare(base_path, control_path, out, compare_flags);
    if (*overlay) return run_overlay(input, plan_path, budget_cap, enforce, out);
    if (*gen) return run_generate(config_path, seed, out);
    if (*pipeline) return run_pipeline(config_path, plan_path, seed, budget_cap, enforce, pipeline_flags, out);
    if (*verify) return run_verify_fixture(fixture, costs_path, report_out);
  } catch (const CliFailure& failure) {
    std::cerr << "error: " << failure.message << "\n";
    if (failure.exit_code == kExitUsage) std::cerr << "\n" << app.help();
    return failure.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
