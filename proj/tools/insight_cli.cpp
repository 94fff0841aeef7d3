// insight: run simulated selection experiments, export score tables and
// serve selections to an external training loop.
//
//   insight simulate <config.json> [--log PATH] [--header PATH]
//   insight score --checkpoint PATH [--config PATH] [--out PATH]
//   insight score --grid --phi LIST --n LIST [--config PATH] [--out PATH]
//   insight serve --checkpoint PATH --config PATH
//   insight init-checkpoint --config PATH --out PATH
//
// Exit status: 0 success, 2 invalid configuration, 3 runtime failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "insight/config.hpp"
#include "insight/experiment.hpp"
#include "insight/io.hpp"
#include "insight/protocol.hpp"

namespace {

constexpr int kExitInvalidConfig = 2;
constexpr int kExitRuntime = 3;

// "0.1,0.5,0.9" or "start:stop:step" (inclusive of stop within 1e-9).
std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  if (const auto first = text.find(':'); first != std::string::npos) {
    const auto second = text.find(':', first + 1);
    if (second == std::string::npos) throw std::invalid_argument("range must be start:stop:step");
    const double start = std::stod(text.substr(0, first));
    const double stop = std::stod(text.substr(first + 1, second - first - 1));
    const double step = std::stod(text.substr(second + 1));
    if (!(step > 0.0)) throw std::invalid_argument("range step must be > 0");
    for (int i = 0;; ++i) {
      const double v = start + i * step;
      if (v > stop + 1e-9) break;
      values.push_back(v);
    }
    return values;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
  return values;
}

void write_text_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    insight::write_file_atomic(path, text);
  }
}

int cmd_simulate(const std::string& config_path, const std::string& log_override,
                 const std::string& header_override) {
  insight::ExperimentConfig cfg = insight::load_config(config_path);
  if (!log_override.empty()) cfg.output.log = log_override;
  if (!header_override.empty()) cfg.output.header = header_override;

  const insight::ExperimentResult result = insight::run_experiment(cfg);

  std::ostringstream csv, header;
  insight::write_log_csv(result.log, csv);
  insight::write_log_header(cfg, result.log, header);
  insight::write_file_atomic(cfg.output.log, csv.str());
  insight::write_file_atomic(cfg.output.header, header.str());
  if (!cfg.output.rounds.empty()) {
    std::ostringstream rounds;
    for (const auto& round : result.rounds) rounds << insight::to_jsonl(round) << '\n';
    insight::write_file_atomic(cfg.output.rounds, rounds.str());
  }
  return 0;
}

int cmd_score(const std::string& checkpoint_path, const std::string& config_path, bool grid,
              const std::string& phi_list, const std::string& n_list, const std::string& out) {
  insight::AcquisitionConfig acq;
  if (!config_path.empty()) acq = insight::load_config(config_path).acquisition;

  std::ostringstream table;
  if (grid) {
    std::vector<insight::GridRow> rows;
    for (double n : parse_list(n_list)) {
      for (double phi : parse_list(phi_list)) rows.push_back(insight::grid_row(phi, n, acq));
    }
    insight::write_grid_table(rows, table);
  } else {
    const insight::ItemPool pool =
        insight::pool_from_checkpoint(insight::load_checkpoint(checkpoint_path));
    std::vector<insight::ScoreRow> rows;
    rows.reserve(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
      rows.push_back(insight::score_row(pool.ids()[i], pool.beliefs()[i], acq));
    }
    insight::write_score_table(rows, table);
  }
  write_text_output(out, table.str());
  return 0;
}

int cmd_serve(const std::string& checkpoint_path, const std::string& config_path) {
  const insight::ExperimentConfig cfg = insight::load_config(config_path);
  const insight::BeliefCheckpoint ckpt = insight::load_checkpoint(checkpoint_path);
  insight::ServeSession session(insight::pool_from_checkpoint(ckpt), cfg, ckpt.step);
  insight::run_serve(session, std::cin, std::cout);
  return 0;
}

int cmd_init_checkpoint(const std::string& config_path, const std::string& out) {
  const insight::ExperimentConfig cfg = insight::load_config(config_path);
  const auto pool =
      insight::ItemPool::uniform_prior(cfg.pool_size, cfg.prior_alpha, cfg.prior_beta);
  insight::save_checkpoint(insight::make_checkpoint(pool, 0, insight::config_digest(cfg)), out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Information-guided data selection for RL training"};
  app.require_subcommand(1);

  std::string sim_config, sim_log, sim_header;
  auto* simulate = app.add_subcommand("simulate", "Run a simulated selection experiment");
  simulate->add_option("config", sim_config, "Experiment config (flat JSON)")->required();
  simulate->add_option("--log", sim_log, "Override output.log");
  simulate->add_option("--header", sim_header, "Override output.header");

  std::string score_ckpt, score_config, score_out = "-", phi_list = "0.1:0.9:0.1",
                                                       n_list = "2,10,100";
  bool grid = false;
  auto* score = app.add_subcommand("score", "Export a score table for a checkpoint or a grid");
  score->add_option("--checkpoint", score_ckpt, "Belief checkpoint");
  score->add_option("--config", score_config, "Config supplying eta, mu, mi_rollouts");
  score->add_flag("--grid", grid, "Score a (mean, evidence) lattice instead of a checkpoint");
  score->add_option("--phi", phi_list, "Grid means: comma list or start:stop:step");
  score->add_option("--n", n_list, "Grid evidence values: comma list or start:stop:step");
  score->add_option("--out", score_out, "Output CSV path ('-' for stdout)");

  std::string serve_ckpt, serve_config;
  auto* serve = app.add_subcommand("serve", "Serve selections over stdin/stdout");
  serve->add_option("--checkpoint", serve_ckpt, "Initial belief checkpoint")->required();
  serve->add_option("--config", serve_config, "Config")->required();

  std::string init_config, init_out;
  auto* init = app.add_subcommand("init-checkpoint", "Write a prior-only checkpoint");
  init->add_option("--config", init_config, "Config")->required();
  init->add_option("--out", init_out, "Checkpoint path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) return cmd_simulate(sim_config, sim_log, sim_header);
    if (*score) {
      if (!grid && score_ckpt.empty()) {
        std::cerr << "score: --checkpoint or --grid is required\n";
        return kExitRuntime;
      }
      return cmd_score(score_ckpt, score_config, grid, phi_list, n_list, score_out);
    }
    if (*serve) return cmd_serve(serve_ckpt, serve_config);
    if (*init) return cmd_init_checkpoint(init_config, init_out);
  } catch (const insight::ConfigError& e) {
    std::cerr << "invalid config: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
