//
// Project augsched - Copyright 2026 The augsched Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "augsched/baseline.hpp"
#include "augsched/decomposition.hpp"
#include "augsched/experiment.hpp"
#include "augsched/oracle.hpp"
#include "augsched/protocol.hpp"
#include "augsched/traffic.hpp"

namespace py = pybind11;
using namespace augsched;

namespace {

std::vector<LinkId> to_list(const Matching &m) {
  return {m.links().begin(), m.links().end()};
}

AugmentationKind parse_kind(const std::string &kind) {
  if (kind == "path")
    return AugmentationKind::kPath;
  if (kind == "cycle")
    return AugmentationKind::kCycle;
  throw py::value_error("augmentation kind must be 'path' or 'cycle'");
}

const char *kind_name(AugmentationKind k) {
  return k == AugmentationKind::kCycle ? "cycle" : "path";
}

py::dict row_dict(const MetricsRow &r) {
  py::dict d;
  d["lambda"] = r.lambda;
  d["algorithm"] = std::string(to_string(r.algorithm));
  d["k"] = r.k;
  d["p"] = r.p;
  d["seed"] = r.seed;
  d["horizon"] = r.horizon;
  d["avg_total_backlog"] = r.avg_total_backlog;
  d["final_total_backlog"] = r.final_total_backlog;
  d["backlog_slope"] = r.backlog_slope;
  d["stable"] = r.stable;
  d["control_overhead_fraction"] = r.control_overhead_fraction;
  return d;
}

ExperimentConfig make_config(const std::string &graph, const std::string &algorithm,
                             int k, double p, const std::string &preset,
                             std::vector<double> lambdas, std::int64_t horizon,
                             std::optional<std::int64_t> warmup, std::uint64_t seed,
                             int seeds, double slope_threshold, int threads) {
  ExperimentConfig cfg;
  cfg.graph = GraphSource::parse(graph);
  cfg.algorithm = parse_algorithm(algorithm);
  cfg.k = k;
  cfg.p = p;
  cfg.preset = parse_preset(preset);
  cfg.lambdas = std::move(lambdas);
  cfg.horizon = horizon;
  cfg.warmup = warmup;
  cfg.seed = seed;
  cfg.seed_count = seeds;
  cfg.slope_threshold = slope_threshold;
  cfg.threads = threads;
  cfg.validate();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Distributed augmentation scheduling under node-exclusive interference";

  py::class_<Graph>(m, "Graph")
      .def(py::init<NodeId>(), py::arg("node_count"))
      .def("add_link", &Graph::add_link, py::arg("u"), py::arg("v"))
      .def_property_readonly("node_count", &Graph::node_count)
      .def_property_readonly("link_count", &Graph::link_count)
      .def_property_readonly("max_degree", &Graph::max_degree)
      .def("link", [](const Graph &g, LinkId e) {
        const Link &l = g.link(e);
        return py::make_tuple(l.u, l.v);
      })
      .def("links", [](const Graph &g) {
        std::vector<std::pair<NodeId, NodeId>> out;
        for (const Link &l : g.links())
          out.emplace_back(l.u, l.v);
        return out;
      })
      .def("degree", &Graph::degree)
      .def("find_link", [](const Graph &g, NodeId u, NodeId v) -> std::optional<LinkId> {
        const LinkId e = g.find_link(u, v);
        if (e == kNoLink)
          return std::nullopt;
        return e;
      })
      .def("__repr__", [](const Graph &g) {
        return "<Graph nodes=" + std::to_string(g.node_count()) +
               " links=" + std::to_string(g.link_count()) + ">";
      });

  m.def("grid", [](int rows, int cols) { return build_grid(rows, cols).graph; },
        py::arg("rows"), py::arg("cols"));
  m.def("parse_graph", [](const std::string &text) { return parse_graph(text); });
  m.def("load_graph", &load_graph);
  m.def("format_graph", &format_graph);

  m.def("is_matching", [](const Graph &g, std::vector<LinkId> links) {
    return is_matching(g, Matching(std::move(links)));
  });
  m.def("matching_weight", [](std::vector<LinkId> links, std::vector<Weight> q) {
    return matching_weight(Matching(std::move(links)), QueueVector(std::move(q)));
  });
  m.def(
      "augmentation_gain",
      [](const Graph &g, std::vector<LinkId> links, std::vector<LinkId> base,
         std::vector<Weight> q, const std::string &kind) {
        return augmentation_gain(g, Augmentation{parse_kind(kind), std::move(links)},
                                 Matching(std::move(base)), QueueVector(std::move(q)));
      },
      py::arg("graph"), py::arg("links"), py::arg("base"), py::arg("q"),
      py::arg("kind") = "path");
  m.def(
      "apply_augmentation",
      [](const Graph &g, std::vector<LinkId> base, std::vector<LinkId> links,
         const std::string &kind) {
        return to_list(apply_augmentation(g, Matching(std::move(base)),
                                          Augmentation{parse_kind(kind), std::move(links)}));
      },
      py::arg("graph"), py::arg("base"), py::arg("links"), py::arg("kind") = "path");

  m.def("max_weight_matching", [](const Graph &g, std::vector<Weight> q) {
    const OracleResult r = max_weight_matching(g, QueueVector(std::move(q)));
    return py::make_tuple(to_list(r.optimal_matching), r.optimal_weight);
  });
  m.def("build_target_set", [](const Graph &g, std::vector<LinkId> current,
                               std::vector<Weight> q, int k) {
    std::vector<std::pair<std::string, std::vector<LinkId>>> out;
    for (const Augmentation &a :
         build_target_set(g, Matching(std::move(current)), QueueVector(std::move(q)), k))
      out.emplace_back(kind_name(a.kind), a.links);
    return out;
  });
  m.def("delta_lower_bound", &delta_lower_bound, py::arg("p"), py::arg("nodes"),
        py::arg("k"), py::arg("max_degree"));

  m.def(
      "run_control_part",
      [](const Graph &g, std::vector<Weight> q, std::vector<LinkId> prev, int k, double p,
         std::uint64_t seed) {
        RandomStream rng = make_stream(seed);
        const QueueVector queues(std::move(q));
        const Matching base(std::move(prev));
        const ControlOutcome out = run_control_part(g, queues, base, k, p, rng);
        py::list augs;
        for (const AugmentationBuild &a : out.augmentations) {
          py::dict d;
          d["seed"] = a.seed_node;
          d["kind"] = kind_name(a.kind);
          d["links"] = a.links;
          d["gain"] = a.running_gain;
          d["switched"] = a.switched();
          d["terminus"] = a.terminus();
          augs.append(d);
        }
        py::dict d;
        d["new_matching"] = to_list(out.new_matching);
        d["augmentations"] = augs;
        d["phase_count"] = out.trace.phase_count;
        d["trace"] = format_trace(out.trace);
        d["transmissions"] = control_transmissions(out.trace, g.node_count());
        return d;
      },
      py::arg("graph"), py::arg("q"), py::arg("prev"), py::arg("k"), py::arg("p"),
      py::arg("seed"));

  m.def(
      "maximal_matching",
      [](const Graph &g, std::vector<Weight> q, std::uint64_t seed) {
        RandomStream rng = make_stream(seed);
        return to_list(maximal_matching(g, QueueVector(std::move(q)), rng));
      },
      py::arg("graph"), py::arg("q"), py::arg("seed"));

  m.def(
      "classify_stability",
      [](std::vector<double> series, double threshold) {
        const Stability s = classify_stability(series, threshold);
        return py::make_tuple(s.stable, s.slope);
      },
      py::arg("series"), py::arg("slope_threshold") = kDefaultSlopeThreshold);
  m.def("overhead_fraction", &overhead_fraction, py::arg("k"), py::arg("phase_time"),
        py::arg("cycle_time"));

  m.def(
      "simulate",
      [](double lam, const std::string &graph, const std::string &algorithm, int k,
         double p, const std::string &preset, std::int64_t horizon,
         std::optional<std::int64_t> warmup, std::uint64_t seed, double slope_threshold) {
        const ExperimentConfig cfg = make_config(graph, algorithm, k, p, preset, {lam},
                                                 horizon, warmup, seed, 1, slope_threshold, 1);
        RunResult r;
        {
          py::gil_scoped_release release;
          r = run_simulation(cfg, lam, seed);
        }
        py::dict d = row_dict(r.row);
        d["backlog"] = r.backlog;
        return d;
      },
      py::arg("lam"), py::arg("graph") = "grid:11x11", py::arg("algorithm") = "aug",
      py::arg("k") = 2, py::arg("p") = 0.2, py::arg("preset") = "fig5",
      py::arg("horizon") = 100000, py::arg("warmup") = py::none(), py::arg("seed") = 1,
      py::arg("slope_threshold") = kDefaultSlopeThreshold);

  m.def(
      "sweep",
      [](std::vector<double> lambdas, const std::string &graph, const std::string &algorithm,
         int k, double p, const std::string &preset, std::int64_t horizon,
         std::optional<std::int64_t> warmup, std::uint64_t seed, int seeds,
         double slope_threshold, int threads) {
        const ExperimentConfig cfg =
            make_config(graph, algorithm, k, p, preset, std::move(lambdas), horizon, warmup,
                        seed, seeds, slope_threshold, threads);
        std::vector<MetricsRow> rows;
        {
          py::gil_scoped_release release;
          rows = run_sweep(cfg);
        }
        return format_metrics(rows);
      },
      py::arg("lambdas"), py::arg("graph") = "grid:11x11", py::arg("algorithm") = "aug",
      py::arg("k") = 2, py::arg("p") = 0.2, py::arg("preset") = "fig5",
      py::arg("horizon") = 100000, py::arg("warmup") = py::none(), py::arg("seed") = 1,
      py::arg("seeds") = 1, py::arg("slope_threshold") = kDefaultSlopeThreshold,
      py::arg("threads") = 1);

  m.attr("METRICS_HEADER") = std::string(kMetricsHeader);
}
