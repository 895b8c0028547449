#
# Project augsched - Copyright 2026 The augsched Authors.
# SPDX-License-Identifier: Apache-2.0
#

"""Distributed augmentation scheduling under node-exclusive interference."""

from ._core import (
    METRICS_HEADER,
    Graph,
    apply_augmentation,
    augmentation_gain,
    build_target_set,
    classify_stability,
    delta_lower_bound,
    format_graph,
    grid,
    is_matching,
    load_graph,
    matching_weight,
    max_weight_matching,
    maximal_matching,
    overhead_fraction,
    parse_graph,
    run_control_part,
    simulate,
    sweep,
)

__all__ = [
    "METRICS_HEADER",
    "Graph",
    "apply_augmentation",
    "augmentation_gain",
    "build_target_set",
    "classify_stability",
    "delta_lower_bound",
    "format_graph",
    "grid",
    "is_matching",
    "load_graph",
    "matching_weight",
    "max_weight_matching",
    "maximal_matching",
    "overhead_fraction",
    "parse_graph",
    "run_control_part",
    "simulate",
    "sweep",
]
