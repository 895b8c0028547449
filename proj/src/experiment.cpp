//
// Project augsched - Copyright 2026 The augsched Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "augsched/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "augsched/baseline.hpp"
#include "augsched/protocol.hpp"
#include "augsched/random.hpp"

namespace augsched {

std::string_view to_string(Algorithm a) {
  return a == Algorithm::kAug ? "aug" : "mm";
}

std::string_view to_string(LoadPreset p) {
  switch (p) {
  case LoadPreset::kFig5:
    return "fig5";
  case LoadPreset::kFig6:
    return "fig6";
  case LoadPreset::kUniform:
    return "uniform";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view s) {
  if (s == "aug")
    return Algorithm::kAug;
  if (s == "mm")
    return Algorithm::kMm;
  throw std::invalid_argument("unknown algorithm '" + std::string(s) + "'");
}

LoadPreset parse_preset(std::string_view s) {
  if (s == "fig5")
    return LoadPreset::kFig5;
  if (s == "fig6")
    return LoadPreset::kFig6;
  if (s == "uniform")
    return LoadPreset::kUniform;
  throw std::invalid_argument("unknown load preset '" + std::string(s) + "'");
}

GraphSource GraphSource::parse(std::string_view spec) {
  if (spec.starts_with("file:")) {
    GraphSource src;
    src.file = std::string(spec.substr(5));
    if (src.file.empty())
      throw std::invalid_argument("empty graph file path");
    return src;
  }
  if (spec.starts_with("grid:")) {
    const std::string_view dims = spec.substr(5);
    const auto x = dims.find('x');
    int rows = 0;
    int cols = 0;
    if (x != std::string_view::npos) {
      auto r1 = std::from_chars(dims.data(), dims.data() + x, rows);
      auto r2 = std::from_chars(dims.data() + x + 1, dims.data() + dims.size(), cols);
      if (r1.ec == std::errc{} && r1.ptr == dims.data() + x &&
          r2.ec == std::errc{} && r2.ptr == dims.data() + dims.size() &&
          rows >= 2 && cols >= 2)
        return grid(rows, cols);
    }
  }
  throw std::invalid_argument("graph source must be grid:<R>x<C> or file:<path>, got '" +
                              std::string(spec) + "'");
}

void ExperimentConfig::validate() const {
  auto bad = [](const std::string &msg) { throw std::invalid_argument(msg); };
  if (horizon <= 0)
    bad("slots must be positive");
  const std::int64_t w = effective_warmup();
  if (w < 0 || w >= horizon)
    bad("warmup must lie in [0, slots)");
  if (algorithm == Algorithm::kAug) {
    if (k < 1)
      bad("k must be at least 1");
    if (!(p > 0.0 && p < 1.0))
      bad("p must lie in (0,1)");
  }
  if (lambdas.empty())
    bad("at least one lambda is required");
  for (double l : lambdas)
    if (!(l >= 0.0) || !std::isfinite(l))
      bad("lambda values must be finite and nonnegative");
  if (seed_count < 1)
    bad("seed count must be at least 1");
  if (threads < 1)
    bad("threads must be at least 1");
  if (!(slope_threshold > 0.0))
    bad("slope threshold must be positive");
  if (phase_time.has_value() != cycle_time.has_value())
    bad("phase time and cycle time must be given together");
  if (preset != LoadPreset::kUniform && !graph.is_grid())
    bad("fig5/fig6 presets need a grid graph");
  if (trace_slots < 0)
    bad("trace slots must be nonnegative");
}

namespace {

double least_squares_slope(std::span<const double> y) {
  const double n = static_cast<double>(y.size());
  const double mean_x = (n - 1.0) / 2.0;
  double mean_y = 0.0;
  for (double v : y)
    mean_y += v;
  mean_y /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double dx = static_cast<double>(i) - mean_x;
    sxy += dx * (y[i] - mean_y);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace

Stability classify_stability(std::span<const double> series,
                             double slope_threshold) {
  if (series.size() < 4)
    throw std::invalid_argument("stability needs at least four samples");
  const auto tail = series.subspan(series.size() / 2);
  const double slope = least_squares_slope(tail);
  return {std::abs(slope) < slope_threshold, slope};
}

Stability classify_stability(std::span<const Weight> series,
                             double slope_threshold) {
  std::vector<double> d(series.begin(), series.end());
  return classify_stability(std::span<const double>(d), slope_threshold);
}

double overhead_fraction(int k, double phase_time, double cycle_time) {
  if (k < 1)
    throw std::domain_error("k must be at least 1");
  if (phase_time < 0.0)
    throw std::domain_error("phase time must be nonnegative");
  const double control = (4.0 * k + 2.0) * phase_time;
  if (cycle_time < control || cycle_time <= 0.0)
    throw std::domain_error("cycle is shorter than the control part");
  return control / cycle_time;
}

Graph resolve_graph(const GraphSource &source) {
  if (source.is_grid())
    return build_grid(source.rows, source.cols).graph;
  return load_graph(source.file);
}

ArrivalProcess resolve_load(const ExperimentConfig &cfg, const Graph &g,
                            double lambda) {
  switch (cfg.preset) {
  case LoadPreset::kUniform:
    return uniform_load_vector(g, lambda);
  case LoadPreset::kFig5:
  case LoadPreset::kFig6: {
    if (!cfg.graph.is_grid())
      throw std::invalid_argument("fig5/fig6 presets need a grid graph");
    const GridGraph grid = build_grid(cfg.graph.rows, cfg.graph.cols);
    return grid_load_vector(grid,
                            cfg.preset == LoadPreset::kFig5 ? kFig5Direction
                                                            : kFig6Direction,
                            lambda);
  }
  }
  throw std::logic_error("unhandled load preset");
}

RunResult run_simulation(const ExperimentConfig &cfg, const Graph &g,
                         double lambda, std::uint64_t seed,
                         std::ostream *trace) {
  cfg.validate();
  const ArrivalProcess load = resolve_load(cfg, g, lambda);
  if (load.size() != static_cast<std::size_t>(g.link_count()))
    throw std::invalid_argument("load vector does not match the graph");

  RandomStream rng = make_stream(seed);
  const std::int64_t warmup = cfg.effective_warmup();
  QueueVector q(static_cast<std::size_t>(g.link_count()));
  Matching schedule;
  std::vector<Weight> arrivals;

  RunResult result;
  result.backlog.reserve(static_cast<std::size_t>(cfg.horizon));
  double backlog_sum = 0.0;

  for (std::int64_t t = 0; t < cfg.horizon; ++t) {
    if (cfg.algorithm == Algorithm::kAug) {
      ControlOutcome outcome = run_control_part(g, q, schedule, cfg.k, cfg.p, rng);
      if (trace && t < cfg.trace_slots)
        *trace << "# slot " << t << '\n' << format_trace(outcome.trace);
      schedule = std::move(outcome.new_matching);
    } else {
      schedule = maximal_matching(g, q, rng);
    }
    const auto active = mask_zero_queues(schedule, q);
    sample_arrivals(load, rng, arrivals);
    q = step_queues(q, arrivals, active);

    const Weight total = q.total();
    result.backlog.push_back(total);
    if (t >= warmup)
      backlog_sum += static_cast<double>(total);
  }

  MetricsRow &row = result.row;
  row.lambda = lambda;
  row.algorithm = cfg.algorithm;
  row.k = cfg.algorithm == Algorithm::kAug ? cfg.k : 0;
  row.p = cfg.algorithm == Algorithm::kAug ? cfg.p : 0.0;
  row.seed = seed;
  row.horizon = cfg.horizon;
  row.avg_total_backlog = backlog_sum / static_cast<double>(cfg.horizon - warmup);
  row.final_total_backlog = result.backlog.back();
  const Stability st = result.backlog.size() >= 4
                           ? classify_stability(std::span<const Weight>(result.backlog),
                                                cfg.slope_threshold)
                           : Stability{true, 0.0};
  row.backlog_slope = st.slope;
  row.stable = st.stable;
  if (cfg.algorithm == Algorithm::kAug && cfg.phase_time && cfg.cycle_time)
    row.control_overhead_fraction =
        overhead_fraction(cfg.k, *cfg.phase_time, *cfg.cycle_time);
  return result;
}

RunResult run_simulation(const ExperimentConfig &cfg, double lambda,
                         std::uint64_t seed) {
  return run_simulation(cfg, resolve_graph(cfg.graph), lambda, seed);
}

std::vector<MetricsRow> run_sweep(const ExperimentConfig &cfg) {
  cfg.validate();
  std::vector<double> lambdas = cfg.lambdas;
  std::sort(lambdas.begin(), lambdas.end());

  struct Job {
    double lambda;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (double l : lambdas)
    for (int s = 0; s < cfg.seed_count; ++s)
      jobs.push_back({l, cfg.seed + static_cast<std::uint64_t>(s)});

  const Graph g = resolve_graph(cfg.graph);
  std::ofstream trace_file;
  if (cfg.trace) {
    trace_file.open(*cfg.trace);
    if (!trace_file)
      throw std::runtime_error("cannot open trace file " + cfg.trace->string());
  }

  std::vector<MetricsRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        // Only the first job is traced.
        std::ostream *trace = (i == 0 && cfg.trace) ? &trace_file : nullptr;
        rows[i] = run_simulation(cfg, g, jobs[i].lambda, jobs[i].seed, trace).row;
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure)
          failure = std::current_exception();
      }
    }
  };

  const int n_threads =
      std::max(1, std::min<int>(cfg.threads, static_cast<int>(jobs.size())));
  std::vector<std::jthread> pool;
  for (int i = 1; i < n_threads; ++i)
    pool.emplace_back(worker);
  worker();
  pool.clear();
  if (failure)
    std::rethrow_exception(failure);
  return rows;
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <typename T> T parse_number(std::string_view s, std::string_view field) {
  T v{};
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw std::invalid_argument("bad value '" + std::string(s) + "' in column " +
                                std::string(field));
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos)
      break;
    start = pos + 1;
  }
  return out;
}

void write_rows(std::ostream &out, std::span<const MetricsRow> rows) {
  for (const MetricsRow &r : rows) {
    out << fmt_double(r.lambda) << ',' << to_string(r.algorithm) << ',' << r.k
        << ',' << fmt_double(r.p) << ',' << r.seed << ',' << r.horizon << ','
        << fmt_double(r.avg_total_backlog) << ',' << r.final_total_backlog << ','
        << fmt_double(r.backlog_slope) << ',' << (r.stable ? "true" : "false")
        << ',';
    if (r.control_overhead_fraction)
      out << fmt_double(*r.control_overhead_fraction);
    out << '\n';
  }
}

}  // namespace

std::string format_metrics(std::span<const MetricsRow> rows) {
  std::ostringstream out;
  out << kMetricsHeader << '\n';
  write_rows(out, rows);
  return out.str();
}

std::vector<MetricsRow> parse_metrics(std::string_view csv) {
  std::vector<MetricsRow> rows;
  bool header = true;
  for (std::string_view line : split(csv, '\n')) {
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    if (line.empty())
      continue;
    if (header) {
      if (line != kMetricsHeader)
        throw std::invalid_argument("unexpected metrics header '" +
                                    std::string(line) + "'");
      header = false;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 11)
      throw std::invalid_argument("metrics row needs 11 fields: '" +
                                  std::string(line) + "'");
    MetricsRow r;
    r.lambda = parse_number<double>(f[0], "lambda");
    r.algorithm = parse_algorithm(f[1]);
    r.k = parse_number<int>(f[2], "k");
    r.p = parse_number<double>(f[3], "p");
    r.seed = parse_number<std::uint64_t>(f[4], "seed");
    r.horizon = parse_number<std::int64_t>(f[5], "horizon");
    r.avg_total_backlog = parse_number<double>(f[6], "avg_total_backlog");
    r.final_total_backlog = parse_number<Weight>(f[7], "final_total_backlog");
    r.backlog_slope = parse_number<double>(f[8], "backlog_slope");
    if (f[9] != "true" && f[9] != "false")
      throw std::invalid_argument("bad value '" + std::string(f[9]) +
                                  "' in column stable");
    r.stable = f[9] == "true";
    if (!f[10].empty())
      r.control_overhead_fraction =
          parse_number<double>(f[10], "control_overhead_fraction");
    rows.push_back(r);
  }
  if (header)
    throw std::invalid_argument("metrics file has no header");
  return rows;
}

void write_metrics(std::span<const MetricsRow> rows,
                   const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << format_metrics(rows);
  if (!out.flush())
    throw std::runtime_error("write to " + path.string() + " failed");
}

void append_metrics(std::span<const MetricsRow> rows,
                    const std::filesystem::path &path) {
  std::error_code ec;
  const bool fresh =
      !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
  if (!fresh) {
    std::ifstream in(path, std::ios::binary);
    std::string first;
    std::getline(in, first);
    if (!first.empty() && first.back() == '\r')
      first.pop_back();
    if (first != kMetricsHeader)
      throw std::runtime_error(path.string() + " has a different header");
  }
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out)
    throw std::runtime_error("cannot open " + path.string() + " for appending");
  if (fresh)
    out << kMetricsHeader << '\n';
  write_rows(out, rows);
  if (!out.flush())
    throw std::runtime_error("write to " + path.string() + " failed");
}

std::vector<MetricsRow> read_metrics(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_metrics(buf.str());
  } catch (const std::invalid_argument &e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

}  // namespace augsched
