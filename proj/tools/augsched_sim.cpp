//
// Project augsched - Copyright 2026 The augsched Authors.
// SPDX-License-Identifier: Apache-2.0
//

// Runs lambda sweeps of the augmentation scheduler or the maximal-matching
// baseline and writes one CSV row per (lambda, seed).

#include <algorithm>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "augsched/experiment.hpp"

namespace {

std::vector<double> parse_lambda_list(const std::string &text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used == 0 || used != item.size())
      throw std::invalid_argument("bad lambda value '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Slotted simulation of distributed augmentation scheduling"};

  augsched::ExperimentConfig cfg;
  std::string graph = "grid:11x11";
  std::string algo = "aug";
  std::string preset = "fig5";
  std::string lambdas;
  std::int64_t warmup = -1;
  double phase_time = -1.0;
  double cycle_time = -1.0;
  std::string trace;
  cfg.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  app.add_option("--graph", graph, "grid:<R>x<C> or file:<path>")
      ->capture_default_str();
  app.add_option("--algo", algo, "aug or mm")
      ->check(CLI::IsMember({"aug", "mm"}))
      ->capture_default_str();
  app.add_option("--k", cfg.k, "maximum augmentation size")->capture_default_str();
  app.add_option("--p", cfg.p, "seed probability")->capture_default_str();
  app.add_option("--preset", preset, "load direction: fig5, fig6 or uniform")
      ->check(CLI::IsMember({"fig5", "fig6", "uniform"}))
      ->capture_default_str();
  app.add_option("--lambda", lambdas, "comma-separated load scales")->required();
  app.add_option("--slots", cfg.horizon, "slots per run")->capture_default_str();
  app.add_option("--warmup", warmup, "slots excluded from averages (default 20%)");
  app.add_option("--seed", cfg.seed, "first rng seed")->capture_default_str();
  app.add_option("--seeds", cfg.seed_count, "number of consecutive seeds")
      ->capture_default_str();
  app.add_option("--out", cfg.out, "metrics CSV path")->required();
  app.add_flag("--append", "append to --out instead of overwriting");
  app.add_option("--trace", trace, "handshake trace of the first run");
  app.add_option("--trace-slots", cfg.trace_slots, "slots to trace")
      ->capture_default_str();
  app.add_option("--phase-time", phase_time, "length of one control phase");
  app.add_option("--cycle-time", cycle_time, "length of one scheduling cycle");
  app.add_option("--slope-threshold", cfg.slope_threshold,
                 "stability cutoff in packets/slot")
      ->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.graph = augsched::GraphSource::parse(graph);
    cfg.algorithm = augsched::parse_algorithm(algo);
    cfg.preset = augsched::parse_preset(preset);
    cfg.lambdas = parse_lambda_list(lambdas);
    if (warmup >= 0)
      cfg.warmup = warmup;
    if (phase_time >= 0.0)
      cfg.phase_time = phase_time;
    if (cycle_time >= 0.0)
      cfg.cycle_time = cycle_time;
    if (!trace.empty())
      cfg.trace = trace;
    cfg.validate();

    const auto rows = augsched::run_sweep(cfg);
    if (app.count("--append"))
      augsched::append_metrics(rows, cfg.out);
    else
      augsched::write_metrics(rows, cfg.out);

    for (const auto &r : rows)
      std::cerr << "lambda=" << r.lambda << " seed=" << r.seed
                << " avg_backlog=" << r.avg_total_backlog
                << " slope=" << r.backlog_slope
                << (r.stable ? " stable" : " UNSTABLE") << '\n';
  } catch (const std::exception &e) {
    std::cerr << "augsched-sim: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
