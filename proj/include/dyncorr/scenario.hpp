#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dyncorr/overlay.hpp"
#include "dyncorr/series.hpp"

namespace dyncorr {

// xoshiro256** 1.0 seeded through splitmix64. The integer stream is fully
// specified and identical on every platform.
class Xoshiro256ss {
 public:
  explicit Xoshiro256ss(std::uint64_t seed);

  std::uint64_t next();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Standard normal via the Marsaglia polar method; one spare value cached.
  double normal();

 private:
  std::array<std::uint64_t, 4> s_{};
  bool has_spare_ = false;
  double spare_ = 0.0;
};

struct DepartmentBlock {
  std::size_t size = 0;
  // Weight of the shared latent factor, in [0, 1].
  double coupling = 0.0;
};

// Synthetic enterprise. Column c at period t:
//
//   block column: base_c * (1 + variation * (rho * f_b(t) + sqrt(1 - rho^2) * u_c(t))) + noise
//   free column:  base_c * (1 + variation * u_c(t)) + noise
//   sparse column: 0
//
// f_b and u_c are latent factors seasonal_amplitude * sin(2 pi t / P + phase)
// plus a unit-variance AR(1) (phi = 0.5); base_c = baseline * U[0.5, 1.5);
// noise = noise_scale * N(0, 1).
//
// Layout: named columns first (free), then department blocks in order, then
// the remaining free columns. Sparse columns are drawn from the unnamed free
// columns.
struct ScenarioConfig {
  std::size_t n_params = 200;
  std::size_t n_periods = 63;
  // Periods before t = 1; the series origin is 1 - warmup.
  std::size_t warmup = 6;
  std::uint64_t seed = 1;
  std::size_t seasonal_period = 12;
  double seasonal_amplitude = 1.0;
  double noise_scale = 1.0;
  double sparsity = 0.0;
  double baseline = 100.0;
  double variation = 0.2;
  std::vector<DepartmentBlock> department_blocks;
  std::vector<std::string> named_columns;

  void validate() const;
  std::int64_t period_origin() const noexcept { return 1 - static_cast<std::int64_t>(warmup); }
  // round(sparsity * n_params)
  std::size_t zero_column_count() const noexcept;
};

ParameterSeries generate_scenario(const ScenarioConfig& config);

// Config files share the key = value grammar of plan files:
//
//   n_params = 200
//   seed = 7799
//   named_columns = wages, training
//   [block]
//   size = 20
//   coupling = 0.8
ScenarioConfig parse_scenario_config(const std::string& text, const std::string& source = "<config>");
ScenarioConfig load_scenario_config(const std::string& path);
std::string format_scenario_config(const ScenarioConfig& config);

// Names of the cost lines carried by the replica scenario and plan.
const std::vector<std::string>& replica_cost_lines();

// Desk-scale stand-in for the enterprise: 200 parameters, 63 periods
// (6 warm-up + 57 analyzable at k = 6), seven coupled departments.
ScenarioConfig replica_config();

// Standard-implementation costs over the seven cost lines, 9,060 in total,
// all scheduled from period 1. Budget cap 9,060.
OverlayPlan replica_plan();

}  // namespace dyncorr
