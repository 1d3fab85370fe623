#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "support.hpp"

using namespace treescale;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CampaignConfig config(const std::string& id, TreeParams p, long trials, std::uint64_t seed = 17) {
  CampaignConfig c;
  c.id = id;
  c.tree = p;
  c.trials = trials;
  c.seed = seed;
  return c;
}

TEST(Rng, TrialSeedsAreIndependentOfOrder) {
  EXPECT_EQ(trial_seed(5, 3), trial_seed(5, 3));
  EXPECT_NE(trial_seed(5, 3), trial_seed(5, 4));
  EXPECT_NE(trial_seed(5, 3), trial_seed(6, 3));
  Rng a(trial_seed(9, 0)), b(trial_seed(9, 0));
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.uniform(0, 1000), b.uniform(0, 1000));
}

TEST(Json, AutomorphismRoundTripIsExact) {
  for (TreeParams p : {TreeParams{2, 2, 1}, TreeParams{3, 3, 1}, TreeParams{2, 3, 1}}) {
    Rng rng(71);
    Sampler s(p, rng);
    for (int i = 0; i < 200; ++i) {
      Automorphism g = s.composite(4);
      json j = to_json(g);
      Automorphism back = automorphism_from_json(j, p);
      ASSERT_EQ(to_json(back).dump(), j.dump());
      ASSERT_TRUE(oracle::agree_on_ball(back, g, 4));
    }
  }
  json hnn = to_json(HnnElement{{{-3, 1}, {2, 2}}, -4, 3});
  EXPECT_EQ(to_json(hnn_from_json(hnn)).dump(), hnn.dump());
}

TEST(Json, SpecsAndEndsRoundTrip) {
  Tree t({2, 2, 1});
  Rng rng(72);
  Sampler s(t.params(), rng);
  for (int k = 0; k < 5; ++k) {
    SemigroupSpec sp = s.spec(k);
    EXPECT_EQ(to_json(spec_from_json(to_json(sp), t)).dump(), to_json(sp).dump());
  }
  End e(Word{0, 2}, Word{1, 2});
  EXPECT_EQ(end_from_json(to_json(e)), e);
}

TEST(Json, MalformedInputRaisesParseError) {
  TreeParams p{2, 2, 1};
  EXPECT_THROW(automorphism_from_json(json::parse(R"({"type":"warp"})"), p), parse_error);
  EXPECT_THROW(automorphism_from_json(json::parse(R"({"type":"spineShift"})"), p), parse_error);
  EXPECT_THROW(automorphism_from_json(json::parse(R"({"type":"spineShift","m":"x"})"), p), parse_error);
  EXPECT_THROW(parse_json_text("{"), parse_error);
  EXPECT_THROW(vertex_from_json(json::parse("3")), parse_error);
  EXPECT_THROW(params_from_json(json::parse(R"({"qE":1,"qO":2})")), representation_error);
}

TEST(Json, BigIntegersAreDecimalStrings) {
  BigInt x = 1;
  for (int i = 0; i < 100; ++i) x *= 3;
  EXPECT_EQ(to_decimal(x).size(), 48u);
  EXPECT_EQ(to_decimal(BigRational(6, 4)), "3/2");
}

TEST(Campaign, EveryCampaignPassesOnSmallRuns) {
  for (TreeParams p : {TreeParams{2, 2, 1}, TreeParams{3, 3, 1}, TreeParams{2, 3, 1}}) {
    for (const auto& c : campaigns()) {
      json rep = run_campaign(config(c.id, p, 10));
      EXPECT_EQ(rep["failCount"], 0) << c.id << " " << rep["failures"].dump();
      EXPECT_EQ(rep["inconclusiveCount"], 0) << c.id;
      EXPECT_EQ(rep["passCount"].get<long>() + rep["failCount"].get<long>() + rep["inconclusiveCount"].get<long>(), 10);
    }
  }
}

TEST(Campaign, ReportsAreByteIdentical) {
  CampaignConfig c = config("POWER_LAW", {2, 3, 1}, 1, 99);
  EXPECT_EQ(run_campaign(c).dump(), run_campaign(c).dump());
  c.trials = 5;
  EXPECT_EQ(run_campaign(c).dump(), run_campaign(c).dump());
  EXPECT_EQ(run_campaign(c)["seed"], "99");
  EXPECT_FALSE(run_campaign(c).contains("wallTimeMs"));
}

TEST(Campaign, ConfigValidation) {
  EXPECT_THROW(run_campaign(config("NO_SUCH", {2, 2, 1}, 1)), parse_error);
  EXPECT_THROW(run_campaign(config("POWER_LAW", {2, 2, 1}, 0)), representation_error);
  CampaignConfig c = config_from_json(json::parse(
      R"({"campaign":"AXIS_DETECT","tree":{"qE":2,"qO":3},"trials":7,"seed":"18446744073709551615",
          "windowRadius":5,"oracleBudget":{"maxRadius":2}})"));
  EXPECT_EQ(c.id, "AXIS_DETECT");
  EXPECT_EQ(c.tree.qO, 3);
  EXPECT_EQ(c.trials, 7);
  EXPECT_EQ(c.seed, 18446744073709551615ull);
  EXPECT_EQ(c.window_radius, 5);
  EXPECT_EQ(c.budget.max_radius, 2);
  EXPECT_EQ(c.budget.max_q, 3);
}

TEST(Campaign, FailuresReplayFromTheirInput) {
  const Campaign& c = find_campaign("LENGTH_ADD_DISJOINT");
  CampaignConfig cfg = config(c.id, {2, 2, 1}, 1);
  Rng rng(trial_seed(4, 0));
  json input = c.generate(cfg, rng);
  EXPECT_EQ(replay(c, input, cfg).outcome, Outcome::pass);
  input["bridge"] = input["bridge"].get<long>() + 1;
  TrialResult r = replay(c, input, cfg);
  EXPECT_EQ(r.outcome, Outcome::fail);
  EXPECT_FALSE(r.detail.empty());
  input.erase("t1");
  EXPECT_EQ(replay(c, input, cfg).outcome, Outcome::fail);
}

TEST(Campaign, BudgetExhaustionIsInconclusive) {
  json rep = run_campaign(config("SCALE_FORMULA_VS_ORACLE", {4, 4, 1}, 3));
  EXPECT_EQ(rep["inconclusiveCount"], 3);
  EXPECT_EQ(rep["passCount"], 0);
  EXPECT_EQ(rep["failCount"], 0);
}

TEST(Dot, DepthOneBall) {
  Tree t({2, 3, 1});
  std::string dot = export_dot(t, 1);
  EXPECT_EQ(dot.rfind("digraph T {", 0), 0u);
  EXPECT_EQ(static_cast<int>(std::count(dot.begin(), dot.end(), '>')), 3);  // qE + 1 edges
  EXPECT_EQ(dot, export_dot(t, 1));
  EXPECT_THROW(export_dot(t, 9), oracle_budget_error);
}

TEST(Dot, SpineShiftGoldenFile) {
  TreeParams p{2, 2, 1};
  std::string dot = export_dot(Tree(p), 2, {min_set_overlay(Automorphism::spine_shift(p, 2), 2)});
  EXPECT_EQ(dot, read_file(std::string(TREESCALE_TEST_DIR) + "/golden/spine_shift_2_depth2.dot"));
}

}  // namespace
