#include <numeric>

#include "doctest.h"
#include "dyncorr/correlation.hpp"
#include "dyncorr/error.hpp"
#include "dyncorr/ledger.hpp"
#include "dyncorr/overlay.hpp"
#include "dyncorr/scenario.hpp"
#include "oracle.hpp"
#include "test_support.hpp"

using namespace dyncorr;

namespace {

OverlayPlan one_skill(std::vector<std::uint8_t> compliance, std::vector<double> costs) {
  OverlayPlan plan;
  plan.skills.skill_ids = {"s"};
  for (std::size_t j = 0; j < compliance.size(); ++j) plan.skills.process_ids.push_back("p" + std::to_string(j));
  plan.skills.compliance = std::move(compliance);
  plan.costs.costs = std::move(costs);
  return plan;
}

OverlayPlan injecting(double amount, std::int64_t periods, std::optional<double> cap) {
  OverlayPlan plan;
  plan.schedule.push_back({"training", 1, periods, amount});
  plan.budget_cap = cap;
  return plan;
}

}  // namespace

TEST_CASE("skill cost") {
  CHECK(skill_cost(one_skill({0, 0, 0}, {10, 20, 30}), 0) == 0.0);
  CHECK(skill_cost(one_skill({1, 0, 1}, {10, 20, 30}), 0) == 40.0);
  CHECK(skill_cost(one_skill({1, 1, 1}, {10, 20, 30}), 0) == 60.0);
  CHECK_THROWS_AS(skill_cost(one_skill({1, 1, 1}, {10, 20, 30}), 1), Error);
}

TEST_CASE("skill cost agrees with a brute-force loop on random tables") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> bit(0, 1);
  std::uniform_real_distribution<double> cost(0.0, 1000.0);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<std::uint8_t> c(9);
    std::vector<double> k(9);
    double expected = 0.0;
    for (int j = 0; j < 9; ++j) {
      c[j] = static_cast<std::uint8_t>(bit(rng));
      k[j] = cost(rng);
      if (c[j]) expected += k[j];
    }
    CHECK(skill_cost(one_skill(c, k), 0) == doctest::Approx(expected).epsilon(1e-15));
  }
}

TEST_CASE("plan validation") {
  CHECK_THROWS_AS(one_skill({2, 0}, {1, 1}).validate(), Error);
  CHECK_THROWS_AS(one_skill({1, 0}, {-1, 1}).validate(), Error);
  CHECK_THROWS_AS(one_skill({1, 0}, {1}).validate(), Error);
  CHECK_THROWS_AS(injecting(-1, 3, std::nullopt).validate(), Error);
  CHECK_THROWS_AS(injecting(1, 3, -5.0).validate(), Error);
  OverlayPlan backwards;
  backwards.schedule.push_back({"a", 5, 2, 1.0});
  CHECK_THROWS_AS(backwards.validate(), Error);
}

TEST_CASE("apply: empty schedule leaves the base bitwise identical") {
  const auto base = oracle::random_series(6, 12, 3);
  CHECK(apply_overlay(base, OverlayPlan{}) == base);
}

TEST_CASE("apply: 100 into training for periods 1..6 touches exactly those cells") {
  std::vector<std::string> ids = {"wages", "training", "office"};
  const auto raw = oracle::random_series(3, 12, 4, -2);
  const ParameterSeries base(ids, std::vector<double>(raw.values().begin(), raw.values().end()), 12, -2);
  const auto control = apply_overlay(base, injecting(100, 6, std::nullopt));
  std::size_t changed = 0;
  for (std::size_t r = 0; r < 12; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      const double diff = control.at(r, c) - base.at(r, c);
      const auto t = base.period_of_row(r);
      if (c == 1 && t >= 1 && t <= 6) {
        CHECK(diff == doctest::Approx(100.0).epsilon(1e-12));
        ++changed;
      } else {
        CHECK(diff == 0.0);
      }
    }
  }
  CHECK(changed == 6);
}

TEST_CASE("apply: unknown targets and out-of-range periods are rejected") {
  const ParameterSeries base({"a"}, std::vector<double>(5, 1.0), 5);
  OverlayPlan plan;
  plan.schedule.push_back({"nope", 1, 2, 1.0});
  CHECK_THROWS_AS(apply_overlay(base, plan), Error);
  plan.schedule[0] = {"a", 4, 6, 1.0};
  CHECK_THROWS_AS(apply_overlay(base, plan), Error);
}

TEST_CASE("replica plan") {
  const auto plan = replica_plan();
  CHECK(plan.total_injected() == 9060.0);
  CHECK(total_skill_cost(plan) == 9060.0);
  REQUIRE(plan.budget_cap.has_value());
  CHECK(*plan.budget_cap == 9060.0);
  for (const auto& inj : plan.schedule) CHECK(inj.start >= 1);
  CHECK(plan.skills.process_ids == replica_cost_lines());

  const auto base = generate_scenario(replica_config());
  CHECK_NOTHROW(plan.validate_against(base));
  const auto control = apply_overlay(base, plan);
  double added = 0.0;
  for (std::size_t q = 0; q < base.values().size(); ++q) added += control.values()[q] - base.values()[q];
  CHECK(added == doctest::Approx(9060.0).epsilon(1e-12));
  CHECK(check_budget(plan, 0.0).ok);
}

TEST_CASE("budget verdicts") {
  CHECK(check_budget(OverlayPlan{}, 0.0).ok);
  CHECK(check_budget(injecting(0, 3, 0.0), 5.0).ok);

  const auto over = check_budget(injecting(151, 60, 9000.0), 1000.0);
  CHECK(over.injected == 9060.0);
  CHECK_FALSE(over.ok);
  CHECK(over.excess == 60.0);
  CHECK(over.base_total == 1000.0);
  CHECK(over.combined_total == 10060.0);

  const auto boundary = check_budget(injecting(151, 60, 9060.0), 0.0);
  CHECK(boundary.ok);
  CHECK(boundary.excess == 0.0);

  CHECK(check_budget(injecting(151, 60, std::nullopt), 0.0).ok);
}

TEST_CASE("merge keeps the tighter cap and concatenates schedules") {
  const auto merged = merge_plans(injecting(1, 2, 10.0), injecting(2, 3, 5.0));
  CHECK(merged.schedule.size() == 2);
  CHECK(merged.budget_cap == 5.0);
  CHECK(merged.total_injected() == 8.0);
  CHECK(merge_plans(injecting(1, 2, std::nullopt), injecting(1, 2, 7.0)).budget_cap == 7.0);
}

TEST_CASE("plan files round-trip and match the built-in replica plan") {
  const auto shipped = load_plan(std::string(DYNCORR_DATA_DIR) + "/replica_plan.txt");
  const auto built = replica_plan();
  CHECK(format_plan(shipped) == format_plan(built));
  CHECK(format_plan(parse_plan(format_plan(built))) == format_plan(built));

  const auto empty = load_plan(std::string(DYNCORR_DATA_DIR) + "/empty_plan.txt");
  CHECK(empty.schedule.empty());
  CHECK(empty.total_injected() == 0.0);

  TempDir dir;
  write_plan(built, dir.file("p.txt"));
  CHECK(format_plan(load_plan(dir.file("p.txt"))) == format_plan(built));
}

TEST_CASE("plan parser rejects malformed input") {
  CHECK_THROWS_AS(parse_plan("bogus = 1\n"), Error);
  CHECK_THROWS_AS(parse_plan("[unknown]\n"), Error);
  CHECK_THROWS_AS(parse_plan("[skill s]\ncompliance = 1\ncost = 1\n"), Error);
  CHECK_THROWS_AS(parse_plan("[processes]\nids = a, b\n[skill s]\ncompliance = 1\ncost = 1, 2\n"), Error);
  CHECK_THROWS_AS(parse_plan("[inject]\ntarget = a\nstart = 1\nend = 2\n"), Error);
  CHECK_THROWS_AS(parse_plan("[inject]\ntarget = a\nstart = 1\nend = 2\namount = x\n"), Error);
  CHECK_THROWS_AS(load_plan("/nonexistent/plan.txt"), Error);
  const auto ok = parse_plan("budget_cap = 5\n[inject]\ntarget = a\nstart = 2\nend = 3\namount = 1.5\n");
  CHECK(ok.total_injected() == 3.0);
  CHECK(ok.budget_cap == 5.0);
}

TEST_CASE("pipeline with an empty plan has zero delta everywhere") {
  const auto base = generate_scenario(replica_config());
  const auto control = apply_overlay(base, OverlayPlan{});
  const auto pb = indicator_profile(base, WindowSpec{});
  const auto pc = indicator_profile(control, WindowSpec{});
  const auto ledger = compare_modes(period_aggregate(pb, Normalization::raw, "basic"),
                                    period_aggregate(pc, Normalization::raw, "control"));
  for (double d : ledger.delta) CHECK(d == 0.0);
  CHECK(ledger.total_delta == 0.0);
}
