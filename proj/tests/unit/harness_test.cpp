#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cbgame/errors.hpp"
#include "cbgame/harness.hpp"

using namespace cbgame;

namespace {

TrialConfig small_config() {
  TrialConfig cfg;
  cfg.n_values = {40};
  cfg.p_values = {0.05, 0.4};
  cfg.trials = 3;
  cfg.seed_base = 9;
  cfg.connector = "greedy-degree";
  cfg.breaker = "paper-breaker";
  return cfg;
}

std::string summary_text(const TrialResults& r) {
  std::ostringstream out;
  write_summary_csv(out, r.summaries);
  return out.str();
}

std::string records_text(const TrialResults& r) {
  std::ostringstream out;
  write_records_csv(out, r.records);
  return out.str();
}

CellSummary row(int n, double p, int wins, int trials = 10) {
  CellSummary s;
  s.n = n;
  s.p = p;
  s.trials = trials;
  s.connector_wins = wins;
  s.breaker_wins = trials - wins;
  return s;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string run_cli(const std::string& args) {
  const auto out = std::filesystem::temp_directory_path() / "cbgame_cli_test.out";
  const std::string cmd = std::string(CBGAME_CLI_PATH) + " " + args + " > " + out.string();
  EXPECT_EQ(std::system(cmd.c_str()), 0) << cmd;
  return slurp(out.string());
}

}  // namespace

TEST(Harness, GridShape) {
  const auto r = run_trials(small_config());
  ASSERT_EQ(r.records.size(), 6u);
  ASSERT_EQ(r.summaries.size(), 2u);
  EXPECT_EQ(r.summaries[0].p, 0.05);
  EXPECT_EQ(r.summaries[1].p, 0.4);
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    EXPECT_EQ(r.records[i].trial, static_cast<int>(i % 3));
  }
}

TEST(Harness, Deterministic) {
  const auto a = run_trials(small_config());
  const auto b = run_trials(small_config());
  EXPECT_EQ(summary_text(a), summary_text(b));
  EXPECT_EQ(records_text(a), records_text(b));
}

TEST(Harness, ThreadCountDoesNotMatter) {
  auto cfg = small_config();
  cfg.trials = 5;
  const auto one = run_trials(cfg);
  cfg.threads = 4;
  const auto four = run_trials(cfg);
  EXPECT_EQ(summary_text(one), summary_text(four));
  EXPECT_EQ(records_text(one), records_text(four));
}

TEST(Harness, SummaryMatchesRecords) {
  auto cfg = small_config();
  cfg.connector = "random";
  cfg.breaker = "random";
  cfg.p_values = {0.1, 0.3, 0.9};
  const auto r = run_trials(cfg);
  const auto again = summarize(r.records);
  ASSERT_EQ(again.size(), r.summaries.size());
  for (std::size_t i = 0; i < again.size(); ++i) {
    int wins = 0;
    for (const auto& rec : r.records) {
      if (rec.p == again[i].p && rec.winner == Role::Connector) ++wins;
    }
    EXPECT_EQ(again[i].connector_wins, wins);
    EXPECT_EQ(again[i].connector_wins + again[i].breaker_wins, again[i].trials);
    EXPECT_EQ(again[i].connector_wins, r.summaries[i].connector_wins);
  }
}

TEST(Harness, EmptyGraphNeverWon) {
  auto cfg = small_config();
  cfg.p_values = {0.0};
  const auto r = run_trials(cfg);
  EXPECT_EQ(r.summaries.front().connector_fraction(), 0.0);
  for (const auto& rec : r.records) EXPECT_FALSE(rec.connected);
}

TEST(Harness, DisconnectedNotWon) {
  auto cfg = small_config();
  cfg.connector = "greedy-degree";
  cfg.breaker = "random";
  cfg.p_values = {0.03, 0.08};
  cfg.trials = 10;
  for (const auto& rec : run_trials(cfg).records) {
    if (!rec.connected) {
      EXPECT_EQ(rec.winner, Role::Breaker);
    }
  }
}

TEST(Harness, TrialSeeds) {
  const auto cfg = small_config();
  EXPECT_EQ(trial_seed(cfg, 0), trial_seed(cfg, 0));
  EXPECT_NE(trial_seed(cfg, 0), trial_seed(cfg, 1));
  const auto r = run_trials(cfg);
  for (const auto& rec : r.records) EXPECT_EQ(rec.seed, trial_seed(cfg, rec.trial));
}

TEST(Harness, GridFromExponents) {
  TrialConfig cfg;
  cfg.n_values = {100, 1000};
  cfg.p_exponents = {0.5};
  cfg.p_values.clear();
  const auto cells = expand_grid(cfg);
  ASSERT_EQ(cells.size(), 2u);
  EXPECT_NEAR(cells[0].p, 0.1, 1e-12);
  EXPECT_NEAR(cells[1].p, std::pow(1000.0, -0.5), 1e-12);
  cfg.p_exponents.clear();
  cfg.eps_values = {0.0};
  EXPECT_NEAR(expand_grid(cfg)[1].p, 0.01, 1e-12);
}

TEST(Threshold, Bracket) {
  const auto est = threshold_scan({row(100, 0.01, 1), row(100, 0.1, 9)});
  ASSERT_EQ(est.size(), 1u);
  ASSERT_TRUE(est[0].p_cross.has_value());
  EXPECT_NEAR(*est[0].p_cross, std::sqrt(0.01 * 0.1), 1e-12);
  EXPECT_NEAR(*est[0].exponent, std::log(*est[0].p_cross) / std::log(100.0), 1e-12);
}

TEST(Threshold, FlatRowHasNone) {
  const auto est = threshold_scan({row(50, 0.1, 2), row(50, 0.2, 2), row(50, 0.3, 3)});
  ASSERT_EQ(est.size(), 1u);
  EXPECT_FALSE(est[0].p_cross.has_value());
  EXPECT_FALSE(est[0].exponent.has_value());
}

TEST(Threshold, ExactMiddle) {
  const auto est = threshold_scan({row(80, 0.01, 2), row(80, 0.05, 5), row(80, 0.2, 8)});
  ASSERT_TRUE(est[0].p_cross.has_value());
  EXPECT_NEAR(*est[0].p_cross, 0.05, 1e-12);
}

TEST(Threshold, SkipsZeroAndSplitsByN) {
  const auto est = threshold_scan({row(10, 0.0, 0), row(10, 0.5, 10), row(20, 0.1, 0), row(20, 0.4, 10)});
  ASSERT_EQ(est.size(), 2u);
  EXPECT_FALSE(est[0].p_cross.has_value());
  EXPECT_EQ(est[1].n, 20);
  EXPECT_NEAR(*est[1].p_cross, 0.2, 1e-12);
}

TEST(Config, ParseAndApply) {
  std::istringstream in("# grid\nn = 50,60\n\np=0.1, 0.2\ntrials=4\nfirst=breaker\nverify_B=true\n");
  TrialConfig cfg;
  apply_settings(cfg, parse_config(in));
  EXPECT_EQ(cfg.n_values, (std::vector<int>{50, 60}));
  EXPECT_EQ(cfg.p_values, (std::vector<double>{0.1, 0.2}));
  EXPECT_EQ(cfg.trials, 4);
  EXPECT_EQ(cfg.first, Role::Breaker);
  EXPECT_TRUE(cfg.verify_B);
  EXPECT_NO_THROW(validate(cfg));
}

TEST(Config, FullRangeSeed) {
  TrialConfig cfg;
  apply_setting(cfg, "seed", "13877614986023876344");
  EXPECT_EQ(cfg.seed_base, 13877614986023876344ULL);
  EXPECT_THROW(apply_setting(cfg, "seed", "-3"), ParameterError);
}

TEST(Harness, RecordReplaysAlone) {
  auto cfg = small_config();
  cfg.connector = "paper-connector";
  const auto r = run_trials(cfg);
  for (const auto& rec : r.records) {
    auto g = std::make_shared<const Graph>(gen_gnp(rec.n, rec.p, rec.seed));
    auto c = make_strategy(cfg.connector, Role::Connector, strategy_options(cfg));
    auto b = make_strategy(cfg.breaker, Role::Breaker, strategy_options(cfg));
    GameOptions opt;
    opt.seed = rec.seed;
    const GameResult game = run_game(g, *c, *b, opt);
    EXPECT_EQ(game.winner, rec.winner);
    EXPECT_EQ(game.rounds, rec.rounds);
  }
}

TEST(Config, Errors) {
  std::istringstream no_eq("n 50\n");
  EXPECT_THROW(parse_config(no_eq), ParameterError);
  TrialConfig cfg;
  EXPECT_THROW(apply_setting(cfg, "colour", "blue"), ParameterError);
  EXPECT_THROW(apply_setting(cfg, "trials", "many"), ParameterError);
  EXPECT_THROW(apply_setting(cfg, "first", "nobody"), ParameterError);
  EXPECT_THROW(parse_config_file("/nonexistent/cbgame.cfg"), IoError);

  cfg.p_values = {1.5};
  EXPECT_THROW(validate(cfg), ParameterError);
  cfg.p_values = {0.5};
  cfg.p_exponents = {0.5};
  EXPECT_THROW(validate(cfg), ParameterError);
  cfg.p_exponents.clear();
  cfg.start_vertex = 500;
  EXPECT_THROW(validate(cfg), ParameterError);
  cfg.start_vertex = 0;
  cfg.structure_mode = "guess";
  EXPECT_THROW(validate(cfg), ParameterError);
}

TEST(Sweep, UnwritablePath) {
  auto cfg = small_config();
  cfg.output_path = "/nonexistent/dir/summary.csv";
  EXPECT_THROW(run_sweep(cfg), IoError);
}

TEST(Sweep, WritesFiles) {
  auto cfg = small_config();
  const auto dir = std::filesystem::temp_directory_path();
  cfg.output_path = (dir / "cbgame_summary_test.csv").string();
  cfg.records_path = (dir / "cbgame_records_test.csv").string();
  const auto r = run_sweep(cfg);
  EXPECT_EQ(slurp(cfg.output_path), summary_text(r));
  EXPECT_EQ(slurp(cfg.records_path), records_text(r));
  EXPECT_EQ(slurp(cfg.output_path).rfind("n,p,trials,connector_wins", 0), 0u);
}

TEST(Cli, RepeatsByteForByte) {
  const std::string sweep = "sweep --n 30 --p 0.2,0.5 --trials 2 --connector greedy-degree --breaker random --seed 4";
  const std::string first = run_cli(sweep);
  EXPECT_FALSE(first.empty());
  EXPECT_EQ(first, run_cli(sweep));
  const std::string play = "play --n 30 --p 0.3 --seed 8 --report";
  const std::string game = run_cli(play);
  EXPECT_FALSE(game.empty());
  EXPECT_EQ(game, run_cli(play));
}

TEST(Cli, RejectsUnknownStrategy) {
  const std::string cmd = std::string(CBGAME_CLI_PATH) + " play --connector nobody > /dev/null 2>&1";
  EXPECT_NE(std::system(cmd.c_str()), 0);
}
