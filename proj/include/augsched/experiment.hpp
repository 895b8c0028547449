//
// Project augsched - Copyright 2026 The augsched Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AUGSCHED_EXPERIMENT_HPP_
#define AUGSCHED_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "augsched/graph.hpp"
#include "augsched/traffic.hpp"

namespace augsched {

enum class Algorithm { kAug, kMm };
enum class LoadPreset { kFig5, kFig6, kUniform };

std::string_view to_string(Algorithm a);
std::string_view to_string(LoadPreset p);
Algorithm parse_algorithm(std::string_view s);
LoadPreset parse_preset(std::string_view s);

// "grid:<rows>x<cols>" or "file:<path>".
struct GraphSource {
  int rows = 0;
  int cols = 0;
  std::filesystem::path file;

  bool is_grid() const noexcept { return rows > 0; }
  static GraphSource parse(std::string_view spec);
  static GraphSource grid(int rows, int cols) { return {rows, cols, {}}; }
};

inline constexpr double kDefaultSlopeThreshold = 0.01;

struct ExperimentConfig {
  GraphSource graph = GraphSource::grid(11, 11);
  Algorithm algorithm = Algorithm::kAug;
  int k = 2;
  double p = 0.2;
  LoadPreset preset = LoadPreset::kFig5;
  std::vector<double> lambdas;
  std::int64_t horizon = 100000;
  std::optional<std::int64_t> warmup;  // default: a fifth of the horizon
  std::uint64_t seed = 1;
  int seed_count = 1;
  std::filesystem::path out;
  std::optional<std::filesystem::path> trace;
  int trace_slots = 10;
  std::optional<double> phase_time;
  std::optional<double> cycle_time;
  double slope_threshold = kDefaultSlopeThreshold;
  int threads = 1;

  std::int64_t effective_warmup() const {
    return warmup.value_or(horizon / 5);
  }
  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct MetricsRow {
  double lambda = 0.0;
  Algorithm algorithm = Algorithm::kAug;
  int k = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::int64_t horizon = 0;
  double avg_total_backlog = 0.0;
  Weight final_total_backlog = 0;
  double backlog_slope = 0.0;
  bool stable = true;
  std::optional<double> control_overhead_fraction;

  friend bool operator==(const MetricsRow &, const MetricsRow &) = default;
};

struct RunResult {
  MetricsRow row;
  std::vector<Weight> backlog;  // total backlog after each slot
};

struct Stability {
  bool stable;
  double slope;
};

// Least-squares slope over the final half of the series; stable iff
// |slope| < threshold. Needs at least four samples.
Stability classify_stability(std::span<const double> series,
                             double slope_threshold = kDefaultSlopeThreshold);
Stability classify_stability(std::span<const Weight> series,
                             double slope_threshold = kDefaultSlopeThreshold);

// Share of a scheduling cycle spent in the 4k+2 control phases.
double overhead_fraction(int k, double phase_time, double cycle_time);

Graph resolve_graph(const GraphSource &source);
ArrivalProcess resolve_load(const ExperimentConfig &cfg, const Graph &g,
                            double lambda);

// One (lambda, seed) run. When trace is set, the handshake trace of the first
// cfg.trace_slots control parts is written to it.
RunResult run_simulation(const ExperimentConfig &cfg, const Graph &g,
                         double lambda, std::uint64_t seed,
                         std::ostream *trace = nullptr);
RunResult run_simulation(const ExperimentConfig &cfg, double lambda,
                         std::uint64_t seed);

// Every lambda x seed combination, ordered by (lambda, seed).
std::vector<MetricsRow> run_sweep(const ExperimentConfig &cfg);

inline constexpr std::string_view kMetricsHeader =
    "lambda,algorithm,k,p,seed,horizon,avg_total_backlog,final_total_backlog,"
    "backlog_slope,stable,control_overhead_fraction";

std::string format_metrics(std::span<const MetricsRow> rows);
std::vector<MetricsRow> parse_metrics(std::string_view csv);

// Truncates and writes header plus rows.
void write_metrics(std::span<const MetricsRow> rows,
                   const std::filesystem::path &path);
// Adds rows to an existing metrics file, writing the header only if the file
// is new or empty. Refuses files with a different header.
void append_metrics(std::span<const MetricsRow> rows,
                    const std::filesystem::path &path);
std::vector<MetricsRow> read_metrics(const std::filesystem::path &path);

}  // namespace augsched

#endif  // AUGSCHED_EXPERIMENT_HPP_
