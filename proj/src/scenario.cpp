#include "dyncorr/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>

#include "dyncorr/error.hpp"
#include "dyncorr/keyvalue.hpp"
#include "numeric_text.hpp"

namespace dyncorr {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Xoshiro256ss::Xoshiro256ss(std::uint64_t seed) {
  std::uint64_t state = seed;
  for (auto& word : s_) {
    word = splitmix64(state);
  }
}

std::uint64_t Xoshiro256ss::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256ss::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Xoshiro256ss::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * scale;
  has_spare_ = true;
  return u * scale;
}

void ScenarioConfig::validate() const {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::invalid_argument, what); };
  if (n_params == 0) bad("n_params must be positive");
  if (n_periods == 0) bad("n_periods must be positive");
  if (warmup >= n_periods) {
    bad("warmup (" + std::to_string(warmup) + ") must be smaller than n_periods (" +
        std::to_string(n_periods) + ")");
  }
  if (seasonal_period == 0) bad("seasonal_period must be positive");
  if (!std::isfinite(seasonal_amplitude) || seasonal_amplitude < 0.0) {
    bad("seasonal_amplitude must be finite and nonnegative");
  }
  if (!std::isfinite(noise_scale) || noise_scale < 0.0) bad("noise_scale must be finite and nonnegative");
  if (!(sparsity >= 0.0 && sparsity < 1.0)) bad("sparsity must lie in [0, 1)");
  if (!std::isfinite(baseline)) bad("baseline must be finite");
  if (!std::isfinite(variation) || variation < 0.0) bad("variation must be finite and nonnegative");
  for (const auto& block : department_blocks) {
    if (block.size == 0) bad("department blocks must be non-empty");
    if (!(block.coupling >= 0.0 && block.coupling <= 1.0)) bad("block coupling must lie in [0, 1]");
  }
}

std::size_t ScenarioConfig::zero_column_count() const noexcept {
  return static_cast<std::size_t>(std::floor(sparsity * static_cast<double>(n_params) + 0.5));
}

namespace {

// Seasonal term plus a stationary unit-variance AR(1), one value per period.
std::vector<double> latent_factor(Xoshiro256ss& rng, const ScenarioConfig& config) {
  constexpr double kPhi = 0.5;
  const double innovation = std::sqrt(1.0 - kPhi * kPhi);
  const double phase = 2.0 * std::numbers::pi * rng.uniform();
  const double omega = 2.0 * std::numbers::pi / static_cast<double>(config.seasonal_period);
  std::vector<double> f(config.n_periods);
  double ar = rng.normal();
  for (std::size_t r = 0; r < config.n_periods; ++r) {
    if (r > 0) {
      ar = kPhi * ar + innovation * rng.normal();
    }
    const double t = static_cast<double>(config.period_origin() + static_cast<std::int64_t>(r));
    f[r] = config.seasonal_amplitude * std::sin(omega * t + phase) + ar;
  }
  return f;
}

std::string column_name(std::size_t index, std::size_t n_params) {
  std::size_t width = 4;
  for (std::size_t limit = 10000; limit < n_params; limit *= 10) ++width;
  std::string digits = std::to_string(index);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return "p" + digits;
}

}  // namespace

ParameterSeries generate_scenario(const ScenarioConfig& config) {
  config.validate();
  const std::size_t n = config.n_params;
  const std::size_t periods = config.n_periods;
  const std::size_t named = config.named_columns.size();

  std::size_t blocked = 0;
  for (const auto& block : config.department_blocks) blocked += block.size;
  if (named + blocked > n) {
    throw Error(ErrorCode::infeasible, "infeasible block layout: " + std::to_string(named) +
                                           " named columns plus " + std::to_string(blocked) +
                                           " block columns exceed n_params=" + std::to_string(n));
  }
  const std::size_t free_begin = named + blocked;
  const std::size_t zero_count = config.zero_column_count();
  if (zero_count > n - free_begin) {
    throw Error(ErrorCode::infeasible,
                "infeasible block layout: " + std::to_string(zero_count) +
                    " sparse columns requested but only " + std::to_string(n - free_begin) +
                    " unnamed free columns exist");
  }

  std::vector<std::string> ids(n);
  for (std::size_t c = 0; c < n; ++c) {
    ids[c] = c < named ? config.named_columns[c] : column_name(c, n);
  }

  Xoshiro256ss rng(config.seed);

  // Draw order is part of the format: block factors, then per-column state,
  // then the sparse-column shuffle.
  std::vector<std::vector<double>> block_factor;
  for (std::size_t b = 0; b < config.department_blocks.size(); ++b) {
    block_factor.push_back(latent_factor(rng, config));
  }

  std::vector<double> values(n * periods, 0.0);
  std::size_t block = 0;
  std::size_t block_end = named + (config.department_blocks.empty() ? 0 : config.department_blocks[0].size);
  for (std::size_t c = 0; c < n; ++c) {
    while (block < config.department_blocks.size() && c >= block_end) {
      ++block;
      if (block < config.department_blocks.size()) block_end += config.department_blocks[block].size;
    }
    const bool in_block = c >= named && c < free_begin;
    const double base = config.baseline * (0.5 + rng.uniform());
    const auto own = latent_factor(rng, config);
    const double rho = in_block ? config.department_blocks[block].coupling : 0.0;
    const double idio = std::sqrt(1.0 - rho * rho);
    for (std::size_t r = 0; r < periods; ++r) {
      double latent = idio * own[r];
      if (in_block) latent += rho * block_factor[block][r];
      values[r * n + c] = base * (1.0 + config.variation * latent) + config.noise_scale * rng.normal();
    }
  }

  std::vector<std::size_t> candidates;
  for (std::size_t c = free_begin; c < n; ++c) candidates.push_back(c);
  for (std::size_t i = 0; i < zero_count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.next() % (candidates.size() - i));
    std::swap(candidates[i], candidates[j]);
    for (std::size_t r = 0; r < periods; ++r) {
      values[r * n + candidates[i]] = 0.0;
    }
  }

  return ParameterSeries(std::move(ids), std::move(values), periods, config.period_origin());
}

namespace {

std::size_t kv_count(const KvEntry& entry) {
  const auto v = kv_integer(entry);
  if (v < 0) {
    throw Error(ErrorCode::parse, "line " + std::to_string(entry.line) + ": `" + entry.key +
                                      "` must be nonnegative");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

ScenarioConfig parse_scenario_config(const std::string& text, const std::string& source) {
  const auto doc = parse_kv(text, source);
  ScenarioConfig config;
  for (const auto& entry : doc.root().entries) {
    const auto& key = entry.key;
    if (key == "n_params") config.n_params = kv_count(entry);
    else if (key == "n_periods") config.n_periods = kv_count(entry);
    else if (key == "warmup") config.warmup = kv_count(entry);
    else if (key == "seed") {
      const auto text = detail::trim(entry.value);
      std::uint64_t seed = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
      if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error(ErrorCode::parse, source + ":" + std::to_string(entry.line) +
                                          ": `seed` expects an unsigned 64-bit integer");
      }
      config.seed = seed;
    } else if (key == "seasonal_period") config.seasonal_period = kv_count(entry);
    else if (key == "seasonal_amplitude") config.seasonal_amplitude = kv_real(entry);
    else if (key == "noise_scale") config.noise_scale = kv_real(entry);
    else if (key == "sparsity") config.sparsity = kv_real(entry);
    else if (key == "baseline") config.baseline = kv_real(entry);
    else if (key == "variation") config.variation = kv_real(entry);
    else if (key == "named_columns") config.named_columns = kv_list(entry);
    else {
      throw Error(ErrorCode::parse, source + ":" + std::to_string(entry.line) + ": unknown key `" +
                                        key + "`");
    }
  }
  for (std::size_t s = 1; s < doc.sections.size(); ++s) {
    const auto& section = doc.sections[s];
    if (section.name != "block") {
      throw Error(ErrorCode::parse, source + ":" + std::to_string(section.line) +
                                        ": unknown section [" + section.name + "]");
    }
    DepartmentBlock block;
    bool have_size = false;
    for (const auto& entry : section.entries) {
      if (entry.key == "size") {
        block.size = kv_count(entry);
        have_size = true;
      } else if (entry.key == "coupling") {
        block.coupling = kv_real(entry);
      } else {
        throw Error(ErrorCode::parse, source + ":" + std::to_string(entry.line) +
                                          ": unknown key `" + entry.key + "`");
      }
    }
    if (!have_size) {
      throw Error(ErrorCode::parse,
                  source + ":" + std::to_string(section.line) + ": [block] is missing `size`");
    }
    config.department_blocks.push_back(block);
  }
  config.validate();
  return config;
}

ScenarioConfig load_scenario_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::io, "cannot open " + path);
  }
  return parse_scenario_config(
      std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()), path);
}

std::string format_scenario_config(const ScenarioConfig& config) {
  std::string out;
  out += "n_params = " + std::to_string(config.n_params) + "\n";
  out += "n_periods = " + std::to_string(config.n_periods) + "\n";
  out += "warmup = " + std::to_string(config.warmup) + "\n";
  out += "seed = " + std::to_string(config.seed) + "\n";
  out += "seasonal_period = " + std::to_string(config.seasonal_period) + "\n";
  out += "seasonal_amplitude = " + detail::format_double(config.seasonal_amplitude) + "\n";
  out += "noise_scale = " + detail::format_double(config.noise_scale) + "\n";
  out += "sparsity = " + detail::format_double(config.sparsity) + "\n";
  out += "baseline = " + detail::format_double(config.baseline) + "\n";
  out += "variation = " + detail::format_double(config.variation) + "\n";
  if (!config.named_columns.empty()) {
    out += "named_columns = ";
    for (std::size_t i = 0; i < config.named_columns.size(); ++i) {
      out += (i ? ", " : "") + config.named_columns[i];
    }
    out += "\n";
  }
  for (const auto& block : config.department_blocks) {
    out += "\n[block]\nsize = " + std::to_string(block.size) +
           "\ncoupling = " + detail::format_double(block.coupling) + "\n";
  }
  return out;
}

const std::vector<std::string>& replica_cost_lines() {
  static const std::vector<std::string> lines = {
      "wages", "business_trips", "taxes", "training", "office", "communications", "org_technics"};
  return lines;
}

ScenarioConfig replica_config() {
  ScenarioConfig config;
  config.n_params = 200;
  config.n_periods = 63;
  config.warmup = 6;
  config.seed = 7799;
  config.seasonal_period = 12;
  config.seasonal_amplitude = 1.0;
  config.noise_scale = 1.0;
  config.sparsity = 0.1;
  config.baseline = 100.0;
  config.variation = 0.2;
  // Economic, production, logistics, finance, accounting, sales, marketing.
  for (double coupling : {0.9, 0.8, 0.85, 0.7, 0.75, 0.8, 0.6}) {
    config.department_blocks.push_back({20, coupling});
  }
  config.named_columns = replica_cost_lines();
  return config;
}

OverlayPlan replica_plan() {
  OverlayPlan plan;
  plan.budget_cap = 9060.0;
  plan.skills.process_ids = replica_cost_lines();
  plan.skills.skill_ids = {"risk_assessment", "treatment_plan", "policies_procedures",
                           "control_monitoring", "process_monitoring"};
  // Columns: wages, business_trips, taxes, training, office, communications, org_technics.
  plan.skills.compliance = {
      1, 1, 0, 1, 0, 0, 0,  //
      1, 0, 0, 1, 1, 0, 0,  //
      1, 0, 1, 1, 1, 0, 0,  //
      0, 0, 1, 1, 0, 1, 1,  //
      1, 1, 0, 1, 1, 0, 0,
  };
  plan.costs.costs = {
      300, 300, 0,   900, 0,   0,   250,   //
      240, 0,   0,   700, 200, 0,   0,     //
      200, 0,   300, 800, 200, 100, 0,     //
      0,   0,   300, 600, 0,   720, 1500,  //
      400, 600, 0,   600, 200, 0,   0,
  };
  plan.schedule = {
      {"training", 1, 18, 200.0},      {"business_trips", 1, 6, 150.0},
      {"org_technics", 1, 3, 500.0},   {"communications", 1, 12, 60.0},
      {"wages", 1, 57, 20.0},          {"taxes", 1, 24, 25.0},
      {"office", 1, 24, 25.0},
  };
  return plan;
}

}  // namespace dyncorr
