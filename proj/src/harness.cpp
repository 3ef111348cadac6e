#include "cbgame/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "cbgame/errors.hpp"
#include "cbgame/random.hpp"
#include "cbgame/verifier.hpp"

namespace cbgame {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  throw ParameterError("bad number '" + v + "' for " + key);
}

long long to_integer(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long d = std::stoll(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  throw ParameterError("bad integer '" + v + "' for " + key);
}

// Seeds span the full 64-bit range written to the records CSV.
std::uint64_t to_seed(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    if (!v.empty() && v[0] != '-') {
      const unsigned long long d = std::stoull(v, &used);
      if (used == v.size()) return d;
    }
  } catch (const std::exception&) {
  }
  throw ParameterError("bad seed '" + v + "' for " + key);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ParameterError("bad flag '" + v + "' for " + key);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

}  // namespace

void validate(const TrialConfig& cfg) {
  if (cfg.n_values.empty()) throw ParameterError("no n values");
  for (int n : cfg.n_values) {
    if (n < 1) throw ParameterError("n must be positive");
  }
  const int lists = (!cfg.p_values.empty()) + (!cfg.p_exponents.empty()) + (!cfg.eps_values.empty());
  if (lists != 1) throw ParameterError("give exactly one of p, p_exponent, eps");
  for (double p : cfg.p_values) {
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("p must lie in [0,1]");
  }
  if (cfg.trials < 1) throw ParameterError("trials must be at least 1");
  if (cfg.m < 1 || cfg.b < 1) throw ParameterError("biases must be at least 1");
  if (cfg.threads < 1) throw ParameterError("threads must be at least 1");
  for (int n : cfg.n_values) {
    if (cfg.start_vertex < 0 || cfg.start_vertex >= n) throw ParameterError("start vertex out of range");
  }
  if (cfg.structure_mode != "search" && cfg.structure_mode != "decompose") {
    throw ParameterError("structure_mode must be search or decompose");
  }
  make_strategy(cfg.connector, Role::Connector, strategy_options(cfg));
  make_strategy(cfg.breaker, Role::Breaker, strategy_options(cfg));
}

std::vector<Cell> expand_grid(const TrialConfig& cfg) {
  std::vector<Cell> out;
  for (int n : cfg.n_values) {
    const double nd = static_cast<double>(n);
    for (double p : cfg.p_values) out.push_back({n, p});
    for (double e : cfg.p_exponents) out.push_back({n, std::min(1.0, std::pow(nd, -e))});
    for (double eps : cfg.eps_values) out.push_back({n, std::min(1.0, std::pow(nd, -2.0 / 3.0 + eps))});
  }
  return out;
}

std::uint64_t trial_seed(const TrialConfig& cfg, int trial) {
  return mix_seed(cfg.seed_base, static_cast<std::uint64_t>(trial));
}

StrategyOptions strategy_options(const TrialConfig& cfg) {
  StrategyOptions o;
  o.connector.k_cap = cfg.k_cap;
  o.connector.expansion_cap = cfg.expansion_cap;
  o.connector.size_target_override = cfg.size_target_override;
  o.connector.structure_mode = cfg.structure_mode == "decompose" ? StructureMode::Decompose : StructureMode::Search;
  return o;
}

TrialRecord run_trial(const TrialConfig& cfg, const Cell& cell, int trial) {
  TrialRecord r;
  r.n = cell.n;
  r.p = cell.p;
  r.trial = trial;
  r.seed = trial_seed(cfg, trial);
  auto graph = std::make_shared<const Graph>(gen_gnp(cell.n, cell.p, r.seed));
  r.connected = is_connected(*graph);

  const auto options = strategy_options(cfg);
  auto connector = make_strategy(cfg.connector, Role::Connector, options);
  auto breaker = make_strategy(cfg.breaker, Role::Breaker, options);
  GameOptions game;
  game.m = cfg.m;
  game.b = cfg.b;
  game.start_vertex = cfg.start_vertex;
  game.first = cfg.first;
  game.seed = r.seed;
  const GameResult result = run_game(graph, *connector, *breaker, game);

  r.winner = result.winner;
  r.reason = result.reason;
  r.rounds = result.rounds;
  const StrategyReport rep = breaker->report();
  r.breaker_flags = rep.failure_flags;
  r.candidate_verified = rep.verified;
  if (rep.target) {
    r.breaker_target = *rep.target;
    // V_C only grows, so the final state decides every earlier one.
    r.isolation_held = !result.final_state.in_vc(*rep.target);
  }
  if (cfg.verify_B && rep.target) {
    const auto M = result.initial.vc_sorted();
    r.properties["B"] = check_B(*graph, build_bad_set(*graph, *rep.target), M).hard_hold();
  }
  if (cfg.verify_Hn) r.properties["Hn"] = check_Hn(*graph).all_hold();
  return r;
}

TrialResults run_trials(const TrialConfig& cfg) {
  validate(cfg);
  const auto cells = expand_grid(cfg);
  const std::size_t total = cells.size() * static_cast<std::size_t>(cfg.trials);
  TrialResults out;
  out.records.resize(total);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < total; i += stride) {
      const auto c = i / static_cast<std::size_t>(cfg.trials);
      const int t = static_cast<int>(i % static_cast<std::size_t>(cfg.trials));
      out.records[i] = run_trial(cfg, cells[c], t);
    }
  };
  const auto threads = std::min<std::size_t>(static_cast<std::size_t>(cfg.threads), std::max<std::size_t>(total, 1));
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (std::size_t w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          work(w, threads);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  out.summaries = summarize(out.records);
  return out;
}

std::vector<CellSummary> summarize(const std::vector<TrialRecord>& records) {
  std::vector<CellSummary> out;
  std::vector<long long> round_sums;
  for (const TrialRecord& r : records) {
    if (out.empty() || out.back().n != r.n || out.back().p != r.p) {
      out.push_back(CellSummary{r.n, r.p});
      round_sums.push_back(0);
    }
    CellSummary& s = out.back();
    ++s.trials;
    if (r.winner == Role::Connector) {
      ++s.connector_wins;
    } else {
      ++s.breaker_wins;
    }
    if (r.reason == EndReason::Forfeit) ++s.forfeits;
    round_sums.back() += r.rounds;
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].mean_rounds = static_cast<double>(round_sums[i]) / out[i].trials;
  }
  return out;
}

std::string format_p(double p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", p);
  return buf;
}

void write_summary_csv(std::ostream& out, const std::vector<CellSummary>& rows) {
  out << "n,p,trials,connector_wins,breaker_wins,forfeits,mean_rounds\n";
  char buf[64];
  for (const CellSummary& s : rows) {
    std::snprintf(buf, sizeof buf, "%.4f", s.mean_rounds);
    out << s.n << ',' << format_p(s.p) << ',' << s.trials << ',' << s.connector_wins << ',' << s.breaker_wins << ','
        << s.forfeits << ',' << buf << '\n';
  }
}

void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& rows) {
  out << "n,p,trial,seed,winner,reason,rounds,breaker_flags,breaker_target,candidate_verified,isolation_held,"
         "connected,properties\n";
  for (const TrialRecord& r : rows) {
    std::string props;
    for (const auto& [name, ok] : r.properties) {
      if (!props.empty()) props += ';';
      props += name + "=" + (ok ? "1" : "0");
    }
    out << r.n << ',' << format_p(r.p) << ',' << r.trial << ',' << r.seed << ',' << role_name(r.winner) << ','
        << reason_name(r.reason) << ',' << r.rounds << ',' << r.breaker_flags << ',' << r.breaker_target << ','
        << int(r.candidate_verified) << ',' << int(r.isolation_held) << ',' << int(r.connected) << ',' << props
        << '\n';
  }
}

TrialResults run_sweep(const TrialConfig& cfg) {
  validate(cfg);
  std::optional<std::ofstream> summary, records;
  if (!cfg.output_path.empty()) summary.emplace(open_output(cfg.output_path));
  if (!cfg.records_path.empty()) records.emplace(open_output(cfg.records_path));
  TrialResults results = run_trials(cfg);
  if (summary) {
    write_summary_csv(*summary, results.summaries);
    if (!*summary) throw IoError("failed writing " + cfg.output_path);
  }
  if (records) {
    write_records_csv(*records, results.records);
    if (!*records) throw IoError("failed writing " + cfg.records_path);
  }
  return results;
}

std::vector<ThresholdEstimate> threshold_scan(const std::vector<CellSummary>& summaries) {
  std::map<int, std::vector<const CellSummary*>> by_n;
  for (const CellSummary& s : summaries) {
    if (s.p > 0 && s.trials > 0) by_n[s.n].push_back(&s);
  }
  std::vector<ThresholdEstimate> out;
  for (auto& [n, cells] : by_n) {
    std::stable_sort(cells.begin(), cells.end(), [](const CellSummary* a, const CellSummary* b) { return a->p < b->p; });
    ThresholdEstimate est;
    est.n = n;
    for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
      const double f0 = cells[i]->connector_fraction();
      const double f1 = cells[i + 1]->connector_fraction();
      if (!(f0 < 0.5 && f1 >= 0.5)) continue;
      const double t = (0.5 - f0) / (f1 - f0);
      const double lp = std::log(cells[i]->p) + t * (std::log(cells[i + 1]->p) - std::log(cells[i]->p));
      est.p_cross = std::exp(lp);
      if (n > 1) est.exponent = lp / std::log(static_cast<double>(n));
      break;
    }
    out.push_back(est);
  }
  return out;
}

std::map<std::string, std::string> parse_config(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParameterError("config line " + std::to_string(lineno) + " has no '='");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ParameterError("config line " + std::to_string(lineno) + " has an empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  return parse_config(in);
}

void apply_setting(TrialConfig& cfg, const std::string& key, const std::string& value) {
  auto doubles = [&] {
    std::vector<double> out;
    for (const auto& item : split_list(value)) out.push_back(to_double(key, item));
    return out;
  };
  if (key == "n") {
    cfg.n_values.clear();
    for (const auto& item : split_list(value)) cfg.n_values.push_back(static_cast<int>(to_integer(key, item)));
  } else if (key == "p") {
    cfg.p_values = doubles();
  } else if (key == "p_exponent") {
    cfg.p_exponents = doubles();
  } else if (key == "eps") {
    cfg.eps_values = doubles();
  } else if (key == "trials") {
    cfg.trials = static_cast<int>(to_integer(key, value));
  } else if (key == "seed") {
    cfg.seed_base = to_seed(key, value);
  } else if (key == "connector") {
    cfg.connector = value;
  } else if (key == "breaker") {
    cfg.breaker = value;
  } else if (key == "m") {
    cfg.m = static_cast<int>(to_integer(key, value));
  } else if (key == "b") {
    cfg.b = static_cast<int>(to_integer(key, value));
  } else if (key == "start") {
    cfg.start_vertex = static_cast<Vertex>(to_integer(key, value));
  } else if (key == "first") {
    if (value == "connector" || value == "C") {
      cfg.first = Role::Connector;
    } else if (value == "breaker" || value == "B") {
      cfg.first = Role::Breaker;
    } else {
      throw ParameterError("first must be connector or breaker");
    }
  } else if (key == "output") {
    cfg.output_path = value;
  } else if (key == "records") {
    cfg.records_path = value;
  } else if (key == "verify_B") {
    cfg.verify_B = to_bool(key, value);
  } else if (key == "verify_Hn") {
    cfg.verify_Hn = to_bool(key, value);
  } else if (key == "k_cap") {
    cfg.k_cap = static_cast<int>(to_integer(key, value));
  } else if (key == "expansion_cap") {
    cfg.expansion_cap = to_integer(key, value);
  } else if (key == "size_target_override") {
    cfg.size_target_override = static_cast<int>(to_integer(key, value));
  } else if (key == "structure_mode") {
    cfg.structure_mode = value;
  } else if (key == "threads") {
    cfg.threads = static_cast<int>(to_integer(key, value));
  } else {
    throw ParameterError("unknown config key '" + key + "'");
  }
}

void apply_settings(TrialConfig& cfg, const std::map<std::string, std::string>& settings) {
  for (const auto& [key, value] : settings) apply_setting(cfg, key, value);
}

}  // namespace cbgame
