#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cbgame/game.hpp"
#include "cbgame/strategies.hpp"

namespace cbgame {

struct TrialConfig {
  std::vector<int> n_values{100};
  /// Grid p values come from exactly one of these lists: p itself, exponents
  /// e with p = n^(-e), or offsets eps with p = n^(-2/3 + eps).
  std::vector<double> p_values;
  std::vector<double> p_exponents;
  std::vector<double> eps_values;
  int trials = 10;
  std::uint64_t seed_base = 1;
  std::string connector = "paper-connector";
  std::string breaker = "paper-breaker";
  int m = 2;
  int b = 2;
  Vertex start_vertex = 0;
  Role first = Role::Connector;
  std::string output_path;   // summary CSV; empty writes nothing
  std::string records_path;  // per-trial CSV; empty writes nothing
  bool verify_B = false;     // re-check B1-B4 for Breaker's target
  bool verify_Hn = false;
  int k_cap = 4;
  long long expansion_cap = 1'000'000;
  int size_target_override = 0;
  std::string structure_mode = "search";
  int threads = 1;
};

/// Throws ParameterError on an invalid config.
void validate(const TrialConfig& cfg);

struct Cell {
  int n = 0;
  double p = 0;
};

/// Cells in n-major order, p in list order.
std::vector<Cell> expand_grid(const TrialConfig& cfg);

struct TrialRecord {
  int n = 0;
  double p = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  Role winner = Role::Breaker;
  EndReason reason = EndReason::BoardExhausted;
  int rounds = 0;
  int breaker_flags = 0;
  int breaker_target = -1;
  bool candidate_verified = false;
  bool isolation_held = false;  // Breaker's target never joined V_C
  bool connected = false;
  std::map<std::string, bool> properties;
};

struct CellSummary {
  int n = 0;
  double p = 0;
  int trials = 0;
  int connector_wins = 0;
  int breaker_wins = 0;
  int forfeits = 0;
  double mean_rounds = 0;

  double connector_fraction() const { return trials > 0 ? static_cast<double>(connector_wins) / trials : 0.0; }
};

struct TrialResults {
  std::vector<TrialRecord> records;  // sorted by (cell, trial)
  std::vector<CellSummary> summaries;
};

/// Seed of trial t: mix_seed(seed_base, t). The graph and both strategies
/// derive from it, so every trial replays on its own.
std::uint64_t trial_seed(const TrialConfig& cfg, int trial);

StrategyOptions strategy_options(const TrialConfig& cfg);

/// One trial on a fresh G(n,p).
TrialRecord run_trial(const TrialConfig& cfg, const Cell& cell, int trial);

TrialResults run_trials(const TrialConfig& cfg);
std::vector<CellSummary> summarize(const std::vector<TrialRecord>& records);

void write_summary_csv(std::ostream& out, const std::vector<CellSummary>& rows);
void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& rows);

/// Opens every output file first (IoError before any trial runs), then runs
/// the grid and writes both CSVs.
TrialResults run_sweep(const TrialConfig& cfg);

struct ThresholdEstimate {
  int n = 0;
  std::optional<double> p_cross;
  std::optional<double> exponent;  // ln p_cross / ln n
};

/// Per n, the first bracket where the Connector win fraction goes from below
/// 0.5 to at least 0.5, interpolated linearly in ln p. Cells with p = 0 are
/// skipped.
std::vector<ThresholdEstimate> threshold_scan(const std::vector<CellSummary>& summaries);

/// key=value lines; blank lines and '#' comments ignored. Throws
/// ParameterError on a malformed line.
std::map<std::string, std::string> parse_config(std::istream& in);
std::map<std::string, std::string> parse_config_file(const std::string& path);

/// Applies one key (as in the config file) to cfg. Lists are comma
/// separated. Throws ParameterError on an unknown key or bad value.
void apply_setting(TrialConfig& cfg, const std::string& key, const std::string& value);
void apply_settings(TrialConfig& cfg, const std::map<std::string, std::string>& settings);

/// "%.10g", the form p takes in every CSV.
std::string format_p(double p);

}  // namespace cbgame
