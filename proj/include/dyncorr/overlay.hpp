#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dyncorr/series.hpp"

namespace dyncorr {

// Binary compliance of skills (rows) against business processes (columns).
struct SkillMatrix {
  std::vector<std::string> skill_ids;
  std::vector<std::string> process_ids;
  std::vector<std::uint8_t> compliance;  // skill-major, entries 0 or 1

  std::size_t n_skills() const noexcept { return skill_ids.size(); }
  std::size_t n_processes() const noexcept { return process_ids.size(); }
  std::uint8_t at(std::size_t skill, std::size_t process) const {
    return compliance[skill * process_ids.size() + process];
  }
};

// Cost of each skill for each process, thousand rubles. Same shape as the
// skill matrix.
struct CostAssignment {
  std::vector<double> costs;  // skill-major

  double at(std::size_t skill, std::size_t process, std::size_t n_processes) const {
    return costs[skill * n_processes + process];
  }
};

// `amount` is added to `target` in every period start..end inclusive.
struct Injection {
  std::string target;
  std::int64_t start = 1;
  std::int64_t end = 1;
  double amount = 0.0;

  std::int64_t period_count() const noexcept { return end - start + 1; }
  double total() const noexcept { return amount * static_cast<double>(period_count()); }
};

struct OverlayPlan {
  SkillMatrix skills;
  CostAssignment costs;
  std::vector<Injection> schedule;
  std::optional<double> budget_cap;

  // Shape and sign checks that do not need a series.
  void validate() const;
  // Additionally checks targets, process ids and periods against `series`.
  void validate_against(const ParameterSeries& series) const;

  // Sum over the schedule of amount x period count, in schedule order.
  double total_injected() const;
};

// sum_j compliance[skill][j] * cost[skill][j]
double skill_cost(const OverlayPlan& plan, std::size_t skill);
double total_skill_cost(const OverlayPlan& plan);

// New series equal to `base` plus the scheduled injections. `base` is untouched.
ParameterSeries apply_overlay(const ParameterSeries& base, const OverlayPlan& plan);

// Concatenates schedules; skills come from `first`. The cap is the smaller of
// the two caps when both are set.
OverlayPlan merge_plans(const OverlayPlan& first, const OverlayPlan& second);

struct BudgetVerdict {
  bool ok = true;
  double injected = 0.0;  // C(X): overlay costs only
  std::optional<double> cap;
  double excess = 0.0;  // injected - cap when over budget, else 0
  double base_total = 0.0;
  double combined_total = 0.0;  // base_total + injected
};

// OK when no cap is set or injected <= cap.
BudgetVerdict check_budget(const OverlayPlan& plan, double base_total);

// Plan files. Grammar:
//
//   budget_cap = <real>                (optional, before any section)
//   [processes]
//   ids = <id>, <id>, ...
//   [skill <skill_id>]                 (repeatable; needs [processes])
//   compliance = <0|1>, ...            (one per process)
//   cost = <real>, ...                 (one per process)
//   [inject]                           (repeatable)
//   target = <param_id>
//   start = <period>
//   end = <period>
//   amount = <real>
OverlayPlan parse_plan(const std::string& text, const std::string& source = "<plan>");
OverlayPlan load_plan(const std::string& path);
std::string format_plan(const OverlayPlan& plan);
void write_plan(const OverlayPlan& plan, const std::string& path);

}  // namespace dyncorr
