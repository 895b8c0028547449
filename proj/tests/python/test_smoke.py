#
# Project augsched - Copyright 2026 The augsched Authors.
# SPDX-License-Identifier: Apache-2.0
#

import pytest

import augsched


def example_path():
    g = augsched.Graph(5)
    for u in range(4):
        g.add_link(u, u + 1)
    return g


def test_grid_counts():
    g = augsched.grid(11, 11)
    assert (g.node_count, g.link_count) == (121, 220)
    assert g.find_link(0, 1) == 0
    assert g.find_link(0, 12) is None


def test_graph_text_round_trip():
    g = augsched.parse_graph("nodes 3\nlink 0 1\nlink 1 2\n")
    assert g.links() == [(0, 1), (1, 2)]
    assert augsched.parse_graph(augsched.format_graph(g)).links() == g.links()
    with pytest.raises(ValueError):
        augsched.parse_graph("link 0 1\n")


def test_gain_and_apply():
    g = example_path()
    assert augsched.is_matching(g, [0, 2])
    assert not augsched.is_matching(g, [0, 1])
    assert augsched.augmentation_gain(g, [0, 1, 2, 3], [0, 2], [2, 4, 1, 5]) == 6
    assert augsched.apply_augmentation(g, [0, 2], [0, 1, 2, 3]) == [1, 3]
    assert augsched.matching_weight([1, 3], [2, 4, 1, 5]) == 9


def test_target_set_bound():
    g = example_path()
    q = [1, 7, 1, 7]
    links, opt = augsched.max_weight_matching(g, q)
    assert opt == 14
    for k in (1, 2, 3):
        base = [0, 2]
        for kind, aug in augsched.build_target_set(g, base, q, k):
            base = augsched.apply_augmentation(g, base, aug, kind)
        assert (k + 2) * augsched.matching_weight(base, q) >= k * opt


def test_control_part():
    g = augsched.grid(4, 4)
    q = list(range(g.link_count))
    out = augsched.run_control_part(g, q, [], k=2, p=0.5, seed=3)
    assert augsched.is_matching(g, out["new_matching"])
    assert out["phase_count"] == 10
    assert max(out["transmissions"]) <= 3
    assert out == augsched.run_control_part(g, q, [], k=2, p=0.5, seed=3)


def test_simulate_and_sweep():
    r = augsched.simulate(0.3, graph="grid:4x4", horizon=2000, seed=2)
    assert len(r["backlog"]) == 2000
    assert r["avg_total_backlog"] >= 0
    csv = augsched.sweep([0.2, 0.4], graph="grid:4x4", algorithm="mm", horizon=1000, seeds=2)
    lines = csv.strip().split("\n")
    assert lines[0] == augsched.METRICS_HEADER
    assert len(lines) == 5
    with pytest.raises(ValueError):
        augsched.simulate(0.3, k=0)


def test_small_helpers():
    assert augsched.delta_lower_bound(0.5, 1, 1, 1) == 0.5
    assert augsched.overhead_fraction(1, 1.0, 12.0) == 0.5
    assert augsched.classify_stability([1.0] * 10) == (True, 0.0)
    g = example_path()
    m = augsched.maximal_matching(g, [1, 1, 1, 1], seed=1)
    assert augsched.is_matching(g, m)
