// cbgame: play, sweep, verify, solve and threshold on Connector-Breaker games.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cbgame/breaker.hpp"
#include "cbgame/decomposition.hpp"
#include "cbgame/errors.hpp"
#include "cbgame/graph.hpp"
#include "cbgame/harness.hpp"
#include "cbgame/random.hpp"
#include "cbgame/solver.hpp"
#include "cbgame/verifier.hpp"

namespace {

using namespace cbgame;

std::string in_output_dir(const std::string& path) {
  if (path.empty() || path == "-") return path;
  const char* dir = std::getenv("CBGAME_OUTPUT_DIR");
  if (!dir || !*dir || std::filesystem::path(path).is_absolute()) return path;
  return (std::filesystem::path(dir) / path).string();
}

std::vector<Vertex> parse_vertices(const std::string& text) {
  std::vector<Vertex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ParameterError("bad vertex '" + item + "'");
    }
  }
  return out;
}

// Settings given on the command line, applied over the config file.
struct Overrides {
  std::map<std::string, std::string> values;

  void add(CLI::App* app, const std::string& key, const std::string& help) {
    app->add_option_function<std::string>(
        "--" + key, [this, key](const std::string& v) { values[key] = v; }, help);
  }
};

TrialConfig load_config(const std::string& config_path, const Overrides& overrides) {
  TrialConfig cfg;
  if (!config_path.empty()) apply_settings(cfg, parse_config_file(config_path));
  apply_settings(cfg, overrides.values);
  cfg.output_path = in_output_dir(cfg.output_path);
  cfg.records_path = in_output_dir(cfg.records_path);
  return cfg;
}

std::shared_ptr<const Graph> load_or_generate(const std::string& graph_path, int n, double p, std::uint64_t seed) {
  if (!graph_path.empty()) return std::make_shared<const Graph>(read_edge_list_file(graph_path));
  return std::make_shared<const Graph>(gen_gnp(n, p, seed));
}

nlohmann::ordered_json report_json(const StrategyReport& r) {
  nlohmann::ordered_json j;
  j["failure_flags"] = r.failure_flags;
  j["target"] = r.target ? nlohmann::ordered_json(*r.target) : nlohmann::ordered_json(nullptr);
  j["verified"] = r.verified;
  j["source"] = r.source;
  j["counters"] = r.counters;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Connector-Breaker games on random graphs"};
  app.require_subcommand(1);

  // play
  auto* play = app.add_subcommand("play", "Play one game and print its transcript as JSON lines");
  std::string play_graph, play_config;
  Overrides play_set;
  bool play_report = false;
  play->add_option("--graph", play_graph, "Edge-list file (otherwise G(n,p) from --n, --p, --seed)");
  play->add_option("--config", play_config, "key=value config file");
  for (const char* key : {"n", "p", "seed", "connector", "breaker", "m", "b", "start", "first", "k_cap",
                          "expansion_cap", "size_target_override", "structure_mode"}) {
    play_set.add(play, key, std::string("Same as the config key ") + key);
  }
  play->add_flag("--report", play_report, "Append a line with both strategy reports");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a grid of trials and write CSV");
  std::string sweep_config;
  Overrides sweep_set;
  sweep->add_option("--config", sweep_config, "key=value config file");
  for (const char* key : {"n", "p", "p_exponent", "eps", "trials", "seed", "connector", "breaker", "m", "b", "start",
                          "first", "output", "records", "verify_B", "verify_Hn", "k_cap", "expansion_cap",
                          "size_target_override", "structure_mode", "threads"}) {
    sweep_set.add(sweep, key, std::string("Same as the config key ") + key);
  }

  // threshold
  auto* threshold = app.add_subcommand("threshold", "Estimate the 0.5 crossing from a summary CSV");
  std::string summary_path;
  threshold->add_option("summary", summary_path, "Summary CSV written by sweep")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "Check a property family on a graph and print a JSON report");
  std::string verify_graph, family, m_text, cand_text;
  int vx = -1, vt = 7, vk = 3, cell_size = 0, target = 0;
  double veps = 0;
  std::uint64_t vseed = 1;
  verify->add_option("--graph", verify_graph, "Edge-list file")->required();
  verify->add_option("--family", family, "B, P, D or Hn")->required()->check(CLI::IsMember({"B", "P", "D", "Hn"}));
  verify->add_option("--x", vx, "Target vertex (B, D); B picks one with find_candidate when omitted");
  verify->add_option("--M", m_text, "Comma-separated vertex set M (B, P)");
  verify->add_option("--candidates", cand_text, "Comma-separated candidates (P); sampled when omitted");
  verify->add_option("--t", vt, "Candidate count (B, P)");
  verify->add_option("--k", vk, "Levels (D)");
  verify->add_option("--cell-size", cell_size, "Vertices per cell (D), 0 = as many as fit");
  verify->add_option("--target", target, "M-set size target per level (D), 0 = none");
  verify->add_option("--eps", veps, "Density exponent (P, D); D defaults to the one matched to k");
  verify->add_option("--seed", vseed, "Seed for sampling and partitioning");

  // solve
  auto* solve = app.add_subcommand("solve", "Exact winner on a tiny board");
  std::string solve_graph, first = "connector", goal = "spanning";
  int sm = 1, sb = 1, sstart = -1, max_edges = 16;
  solve->add_option("--graph", solve_graph, "Edge-list file")->required();
  solve->add_option("--m", sm, "Connector bias");
  solve->add_option("--b", sb, "Breaker bias");
  solve->add_option("--first", first, "connector or breaker")->check(CLI::IsMember({"connector", "breaker"}));
  solve->add_option("--goal", goal, "spanning or reach:<x>");
  solve->add_option("--start", sstart, "Start vertex (none by default)");
  solve->add_option("--max-edges", max_edges, "Board size guard");

  // gen
  auto* gen = app.add_subcommand("gen", "Write a G(n,p) edge list to stdout");
  int gn = 10;
  double gp = 0.5;
  std::uint64_t gseed = 1;
  gen->add_option("--n", gn, "Vertices")->required();
  gen->add_option("--p", gp, "Edge probability")->required();
  gen->add_option("--seed", gseed, "Seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (play->parsed()) {
      TrialConfig cfg = load_config(play_config, play_set);
      const double p = cfg.p_values.empty() ? 0.5 : cfg.p_values.front();
      auto graph = load_or_generate(play_graph, cfg.n_values.front(), p, cfg.seed_base);
      const auto options = strategy_options(cfg);
      auto connector = make_strategy(cfg.connector, Role::Connector, options);
      auto breaker = make_strategy(cfg.breaker, Role::Breaker, options);
      GameOptions game;
      game.m = cfg.m;
      game.b = cfg.b;
      game.start_vertex = cfg.start_vertex;
      game.first = cfg.first;
      game.seed = cfg.seed_base;
      graph->check_vertex(cfg.start_vertex);
      const GameResult result = run_game(graph, *connector, *breaker, game);
      write_transcript_jsonl(std::cout, result);
      if (play_report) {
        nlohmann::ordered_json j;
        j["connector"] = report_json(connector->report());
        j["breaker"] = report_json(breaker->report());
        j["note"] = result.note;
        std::cout << j.dump() << '\n';
      }
    } else if (sweep->parsed()) {
      TrialConfig cfg = load_config(sweep_config, sweep_set);
      const bool to_stdout = cfg.output_path.empty();
      const TrialResults results = run_sweep(cfg);
      if (to_stdout) write_summary_csv(std::cout, results.summaries);
    } else if (threshold->parsed()) {
      std::ifstream in(summary_path);
      if (!in) throw IoError("cannot read " + summary_path);
      std::string line;
      std::getline(in, line);
      std::vector<CellSummary> rows;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string f;
        std::vector<std::string> fields;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (fields.size() < 7) throw ParameterError("summary line has too few columns: " + line);
        CellSummary s;
        s.n = std::stoi(fields[0]);
        s.p = std::stod(fields[1]);
        s.trials = std::stoi(fields[2]);
        s.connector_wins = std::stoi(fields[3]);
        s.breaker_wins = std::stoi(fields[4]);
        s.forfeits = std::stoi(fields[5]);
        s.mean_rounds = std::stod(fields[6]);
        rows.push_back(s);
      }
      std::cout << "n,p_cross,exponent\n";
      for (const auto& est : threshold_scan(rows)) {
        std::cout << est.n << ',' << (est.p_cross ? format_p(*est.p_cross) : "none") << ','
                  << (est.exponent ? format_p(*est.exponent) : "none") << '\n';
      }
    } else if (verify->parsed()) {
      const Graph g = read_edge_list_file(verify_graph);
      const auto M = parse_vertices(m_text);
      nlohmann::json out;
      if (family == "Hn") {
        out = check_Hn(g).to_json();
      } else if (family == "B") {
        if (vx < 0) {
          auto found = find_candidate(g, M, vt, vseed);
          if (!found) {
            out = {{"family", "B"}, {"candidate", nullptr}};
          } else {
            out = check_B(g, found->dec, M).to_json();
          }
        } else {
          out = check_B(g, build_bad_set(g, vx), M).to_json();
        }
      } else if (family == "P") {
        if (!(veps > 0)) throw ParameterError("family P needs --eps > 0");
        auto cands = parse_vertices(cand_text);
        if (cands.empty()) {
          auto in_m = vertex_mask(g.num_vertices(), M);
          for (Vertex v = 0; v < g.num_vertices(); ++v) {
            if (!in_m[static_cast<std::size_t>(v)]) cands.push_back(v);
          }
          Rng rng(vseed);
          rng.shuffle(cands);
          cands.resize(std::min(cands.size(), static_cast<std::size_t>(vt)));
        }
        out = check_P(g, build_successive(g, cands), veps).to_json();
      } else {
        if (vx < 0) throw ParameterError("family D needs --x");
        const double eps = veps > 0 ? veps : epsilon_for_levels(std::max(vk, 2));
        auto cells = random_partition(g.num_vertices(), vx, vk, {}, cell_size, mix_seed(vseed, 0));
        std::vector<int> targets(static_cast<std::size_t>(vk), target);
        auto dec = decompose(g, vx, cells, vk, targets, mix_seed(vseed, 1));
        if (!dec) {
          out = {{"family", "D"}, {"decomposed", false}};
        } else {
          out = check_D(g, *dec, eps).to_json();
          std::map<Vertex, TreeEmbedding> trees;
          for (int l = 1; l <= 4; ++l) {
            for (Vertex v : dec->m_set(vk, 1, l)) {
              if (auto t = extract_tree(*dec, v, l)) trees.emplace(v, *t);
            }
          }
          out["trees"] = check_T(*dec, trees).to_json();
          out["decomposed"] = true;
        }
      }
      std::cout << out.dump(2) << '\n';
    } else if (solve->parsed()) {
      const Graph g = read_edge_list_file(solve_graph);
      SolveOptions opt;
      opt.m = sm;
      opt.b = sb;
      opt.first = first == "connector" ? Role::Connector : Role::Breaker;
      if (goal == "spanning") {
        opt.goal = Goal::spanning();
      } else if (goal.rfind("reach:", 0) == 0) {
        opt.goal = Goal::reach(std::stoi(goal.substr(6)));
      } else {
        throw ParameterError("goal must be spanning or reach:<x>");
      }
      if (sstart >= 0) opt.start_vertex = sstart;
      opt.max_edges = max_edges;
      const SolveResult r = solve_exact_detailed(g, opt);
      nlohmann::ordered_json j;
      j["winner"] = role_name(r.winner);
      j["positions"] = r.positions;
      std::cout << j.dump() << '\n';
    } else if (gen->parsed()) {
      write_edge_list(std::cout, gen_gnp(gn, gp, gseed));
    }
  } catch (const cbgame::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
