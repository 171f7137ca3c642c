#include "dyncorr/overlay.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <set>

#include "dyncorr/error.hpp"
#include "dyncorr/keyvalue.hpp"
#include "numeric_text.hpp"

namespace dyncorr {

namespace {

void check_unique(const std::vector<std::string>& ids, const char* what) {
  std::set<std::string> seen;
  for (const auto& id : ids) {
    if (id.empty()) {
      throw Error(ErrorCode::validation, std::string("empty ") + what + " id");
    }
    if (!seen.insert(id).second) {
      throw Error(ErrorCode::validation, std::string("duplicate ") + what + " id '" + id + "'");
    }
  }
}

}  // namespace

void OverlayPlan::validate() const {
  check_unique(skills.skill_ids, "skill");
  check_unique(skills.process_ids, "process");
  const std::size_t cells = skills.n_skills() * skills.n_processes();
  if (skills.compliance.size() != cells) {
    throw Error(ErrorCode::validation, "compliance table has " +
                                           std::to_string(skills.compliance.size()) +
                                           " entries, expected " + std::to_string(cells));
  }
  if (costs.costs.size() != cells) {
    throw Error(ErrorCode::validation, "cost table has " + std::to_string(costs.costs.size()) +
                                           " entries, expected " + std::to_string(cells));
  }
  for (auto v : skills.compliance) {
    if (v > 1) {
      throw Error(ErrorCode::validation, "compliance entries must be 0 or 1");
    }
  }
  for (double c : costs.costs) {
    if (!std::isfinite(c) || c < 0.0) {
      throw Error(ErrorCode::validation, "skill costs must be finite and nonnegative");
    }
  }
  for (const auto& inj : schedule) {
    if (inj.start > inj.end) {
      throw Error(ErrorCode::validation, "injection into '" + inj.target + "' starts at " +
                                             std::to_string(inj.start) + " after its end " +
                                             std::to_string(inj.end));
    }
    if (!std::isfinite(inj.amount) || inj.amount < 0.0) {
      throw Error(ErrorCode::validation,
                  "injection into '" + inj.target + "' has a negative or non-finite amount");
    }
  }
  if (budget_cap && (!std::isfinite(*budget_cap) || *budget_cap < 0.0)) {
    throw Error(ErrorCode::validation, "budget_cap must be finite and nonnegative");
  }
}

void OverlayPlan::validate_against(const ParameterSeries& series) const {
  validate();
  for (const auto& id : skills.process_ids) {
    if (!series.column_index(id)) {
      throw Error(ErrorCode::validation, "process '" + id + "' is not a parameter of the series");
    }
  }
  for (const auto& inj : schedule) {
    if (!series.column_index(inj.target)) {
      throw Error(ErrorCode::validation, "unknown injection target '" + inj.target + "'");
    }
    if (!series.row_of_period(inj.start) || !series.row_of_period(inj.end)) {
      throw Error(ErrorCode::out_of_range,
                  "injection into '" + inj.target + "' over periods " + std::to_string(inj.start) +
                      ".." + std::to_string(inj.end) + " exceeds the series range " +
                      std::to_string(series.period_origin()) + ".." +
                      std::to_string(series.last_period()));
    }
  }
}

double OverlayPlan::total_injected() const {
  double total = 0.0;
  for (const auto& inj : schedule) {
    total += inj.total();
  }
  return total;
}

double skill_cost(const OverlayPlan& plan, std::size_t skill) {
  if (skill >= plan.skills.n_skills()) {
    throw Error(ErrorCode::out_of_range, "skill index " + std::to_string(skill) +
                                             " out of range for " +
                                             std::to_string(plan.skills.n_skills()) + " skills");
  }
  const std::size_t p = plan.skills.n_processes();
  double cost = 0.0;
  for (std::size_t j = 0; j < p; ++j) {
    if (plan.skills.at(skill, j) != 0) {
      cost += plan.costs.at(skill, j, p);
    }
  }
  return cost;
}

double total_skill_cost(const OverlayPlan& plan) {
  double total = 0.0;
  for (std::size_t i = 0; i < plan.skills.n_skills(); ++i) {
    total += skill_cost(plan, i);
  }
  return total;
}

ParameterSeries apply_overlay(const ParameterSeries& base, const OverlayPlan& plan) {
  plan.validate_against(base);
  if (plan.schedule.empty()) {
    return base;
  }
  std::vector<double> values(base.values().begin(), base.values().end());
  const std::size_t n = base.n_params();
  for (const auto& inj : plan.schedule) {
    const std::size_t column = *base.column_index(inj.target);
    const std::size_t first = *base.row_of_period(inj.start);
    const std::size_t last = *base.row_of_period(inj.end);
    for (std::size_t r = first; r <= last; ++r) {
      values[r * n + column] += inj.amount;
    }
  }
  return ParameterSeries(base.param_ids(), std::move(values), base.n_periods(),
                         base.period_origin());
}

OverlayPlan merge_plans(const OverlayPlan& first, const OverlayPlan& second) {
  OverlayPlan merged = first;
  merged.schedule.insert(merged.schedule.end(), second.schedule.begin(), second.schedule.end());
  if (second.budget_cap) {
    merged.budget_cap =
        first.budget_cap ? std::min(*first.budget_cap, *second.budget_cap) : *second.budget_cap;
  }
  return merged;
}

BudgetVerdict check_budget(const OverlayPlan& plan, double base_total) {
  BudgetVerdict verdict;
  verdict.injected = plan.total_injected();
  verdict.cap = plan.budget_cap;
  verdict.base_total = base_total;
  verdict.combined_total = base_total + verdict.injected;
  if (plan.budget_cap && verdict.injected > *plan.budget_cap) {
    verdict.ok = false;
    verdict.excess = verdict.injected - *plan.budget_cap;
  }
  return verdict;
}

namespace {

[[noreturn]] void plan_error(const std::string& source, std::size_t line, const std::string& what) {
  throw Error(ErrorCode::parse, source + ":" + std::to_string(line) + ": " + what);
}

const KvEntry& required(const KvSection& section, const char* key, const std::string& source) {
  const auto* entry = section.find(key);
  if (entry == nullptr) {
    plan_error(source, section.line, "[" + section.name + "] is missing `" + key + "`");
  }
  return *entry;
}

void reject_unknown_keys(const KvSection& section, std::initializer_list<std::string_view> allowed,
                         const std::string& source) {
  for (const auto& entry : section.entries) {
    if (std::find(allowed.begin(), allowed.end(), entry.key) == allowed.end()) {
      plan_error(source, entry.line, "unknown key `" + entry.key + "`");
    }
  }
}

}  // namespace

OverlayPlan parse_plan(const std::string& text, const std::string& source) {
  const auto doc = parse_kv(text, source);
  OverlayPlan plan;

  reject_unknown_keys(doc.root(), {"budget_cap"}, source);
  if (const auto* cap = doc.root().find("budget_cap")) {
    plan.budget_cap = kv_real(*cap);
  }

  bool have_processes = false;
  for (std::size_t s = 1; s < doc.sections.size(); ++s) {
    const auto& section = doc.sections[s];
    if (section.name == "processes") {
      if (have_processes) {
        plan_error(source, section.line, "[processes] declared twice");
      }
      if (!plan.skills.skill_ids.empty()) {
        plan_error(source, section.line, "[processes] must precede every [skill]");
      }
      reject_unknown_keys(section, {"ids"}, source);
      plan.skills.process_ids = kv_list(required(section, "ids", source));
      have_processes = true;
    } else if (section.name == "skill") {
      if (!have_processes) {
        plan_error(source, section.line, "[skill] needs a preceding [processes] section");
      }
      if (section.argument.empty()) {
        plan_error(source, section.line, "[skill] needs an id, e.g. [skill risk_assessment]");
      }
      reject_unknown_keys(section, {"compliance", "cost"}, source);
      const auto& compliance_entry = required(section, "compliance", source);
      const auto& cost_entry = required(section, "cost", source);
      const auto flags = kv_list(compliance_entry);
      const auto cost = kv_real_list(cost_entry);
      const std::size_t p = plan.skills.n_processes();
      if (flags.size() != p) {
        plan_error(source, compliance_entry.line,
                   "expected " + std::to_string(p) + " compliance flags, got " +
                       std::to_string(flags.size()));
      }
      if (cost.size() != p) {
        plan_error(source, cost_entry.line,
                   "expected " + std::to_string(p) + " costs, got " + std::to_string(cost.size()));
      }
      for (const auto& flag : flags) {
        if (flag != "0" && flag != "1") {
          plan_error(source, compliance_entry.line, "compliance flags must be 0 or 1, got '" + flag + "'");
        }
        plan.skills.compliance.push_back(flag == "1" ? 1 : 0);
      }
      plan.skills.skill_ids.push_back(section.argument);
      plan.costs.costs.insert(plan.costs.costs.end(), cost.begin(), cost.end());
    } else if (section.name == "inject") {
      reject_unknown_keys(section, {"target", "start", "end", "amount"}, source);
      Injection inj;
      inj.target = required(section, "target", source).value;
      inj.start = kv_integer(required(section, "start", source));
      inj.end = kv_integer(required(section, "end", source));
      inj.amount = kv_real(required(section, "amount", source));
      plan.schedule.push_back(std::move(inj));
    } else {
      plan_error(source, section.line, "unknown section [" + section.name + "]");
    }
  }
  plan.validate();
  return plan;
}

OverlayPlan load_plan(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::io, "cannot open " + path);
  }
  return parse_plan(std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()),
                    path);
}

std::string format_plan(const OverlayPlan& plan) {
  auto join = [](const auto& items, auto&& render) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) out += ", ";
      out += render(items[i]);
    }
    return out;
  };
  std::string out;
  if (plan.budget_cap) {
    out += "budget_cap = " + detail::format_double(*plan.budget_cap) + "\n";
  }
  if (!plan.skills.process_ids.empty()) {
    out += "\n[processes]\nids = " +
           join(plan.skills.process_ids, [](const std::string& s) { return s; }) + "\n";
  }
  const std::size_t p = plan.skills.n_processes();
  for (std::size_t i = 0; i < plan.skills.n_skills(); ++i) {
    std::vector<int> flags;
    std::vector<double> cost;
    for (std::size_t j = 0; j < p; ++j) {
      flags.push_back(plan.skills.at(i, j));
      cost.push_back(plan.costs.at(i, j, p));
    }
    out += "\n[skill " + plan.skills.skill_ids[i] + "]\n";
    out += "compliance = " + join(flags, [](int f) { return std::to_string(f); }) + "\n";
    out += "cost = " + join(cost, [](double c) { return detail::format_double(c); }) + "\n";
  }
  for (const auto& inj : plan.schedule) {
    out += "\n[inject]\ntarget = " + inj.target + "\nstart = " + std::to_string(inj.start) +
           "\nend = " + std::to_string(inj.end) + "\namount = " + detail::format_double(inj.amount) +
           "\n";
  }
  return out;
}

void write_plan(const OverlayPlan& plan, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::io, "cannot write " + path);
  }
  out << format_plan(plan);
}

}  // namespace dyncorr
