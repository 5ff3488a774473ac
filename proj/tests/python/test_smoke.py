import math

import pytest

import edgewalk as ew


def test_generator():
    g = ew.Multigraph.configuration_model(100, 3, 7)
    assert g.n == 100
    assert g.edge_count == 150
    assert all(g.mate(g.mate(p)) == p for p in range(g.point_count))
    assert g.to_text().startswith("100 3\n")


def test_odd_point_count_rejected():
    with pytest.raises(ValueError):
        ew.Multigraph.configuration_model(3, 3, 1)


def test_triangle_cover():
    tri = ew.Multigraph.from_edges(3, [(0, 1), (1, 2), (2, 0)])
    rec = ew.run_walk(tri, seed=4)
    assert rec.edge_cover == 3
    assert rec.milestones == [0, 1, 2]
    assert rec.stop_reason == "reached"


def test_exposure_walk_and_census():
    n, r = 2000, 3
    rec = ew.run_walk_exposure(n, r, seed=3)
    assert rec.vertex_cover is not None
    assert rec.vertex_cover <= rec.edge_cover
    t = ew.t_for_delta(n, r, 0.1)
    s = ew.colour_snapshot(rec, t)
    assert sum(i * x for i, x in enumerate(s.x)) == r * n - 2 * t
    assert s.x1_green + s.x1_blue == s.x[1]
    with pytest.raises(IndexError):
        ew.colour_snapshot(rec, r * n)


def test_class_round_trip():
    n, r = 1000, 3
    rec = ew.run_walk_exposure(n, r, seed=11)
    t = ew.t_for_delta(n, r, 0.05)
    cls = ew.extract_class(rec, t)
    other = ew.resample_walk(cls, 5)
    assert ew.extract_class(other, t) == cls
    assert ew.walk_log_probability(other, t) == pytest.approx(ew.walk_log_probability(rec, t))


def test_set_statistics():
    assert len(ew.enumerate_L(3)) == 3
    assert len(ew.enumerate_L(5)) == 11
    deltas, ts = ew.delta_schedule(10_000, 3)
    assert ts[1] == 10057
    assert deltas == sorted(deltas, reverse=True)
    n = 10_000
    assert ew.exact_unvisited_probability(n, 3, 0) == pytest.approx((1 - 1 / n) * (1 - 3 / (3 * n - 1)))


def test_spectral():
    k4 = ew.Multigraph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    assert ew.second_eigenvalue(k4) == pytest.approx(1 / 3)
    assert ew.stationary_hitting(k4, [0]) == pytest.approx(9 / 4)
    assert ew.hitting_upper_bound(100, 100, 0.0) == pytest.approx(1.0)


def test_scenario_csv():
    text = ew.run_scenario("n = 200, 400\nseeds = 2\ndeltas = 0.1\n", workers=2)
    lines = text.strip().splitlines()
    assert lines[0].startswith("n,seed_index,seed,C_V,C_E")
    assert len(lines) == 5
    assert ew.theoretical_constant("biased", 3, "edge") == pytest.approx(1.5)
    assert math.isnan(ew.theoretical_constant("biased", 4))
