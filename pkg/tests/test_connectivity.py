import math
import random

import pytest

from diskconn import DiskConnectivity, GeneratorConfig, Point, generate
from diskconn.cli import awnn_envelope
from diskconn.oracle import BruteForceOracle


def test_first_insert():
    dc = DiskConnectivity()
    sid, rep = dc.insert((0, 0), 1)
    assert sid == 0 and rep.merged == 0
    assert dc.component_count() == 1


def test_merge_scenario():
    dc = DiskConnectivity()
    dc.insert(Point(0, 0), 1)
    dc.insert(Point(10, 0), 1)
    assert dc.component_count() == 2
    assert not dc.connected(0, 1)
    sid, rep = dc.insert(Point(5, 0), 4.2)
    assert sid == 2
    assert dc.component_count() == 1
    assert dc.connected(0, 1)
    assert len(rep.intersected_components) == 2


def test_reflexive_and_isolated():
    dc = DiskConnectivity()
    dc.insert((0, 0), 1)
    dc.insert((5, 5), 1)
    assert dc.connected(0, 0)
    assert not dc.connected(0, 1)


def test_tangency_chain():
    dc = DiskConnectivity()
    for x in (0, 2, 4):
        dc.insert((x, 0), 1)
    assert dc.connected(0, 2)
    assert dc.component_count() == 1


def test_disjoint_inserts_count():
    dc = DiskConnectivity()
    assert dc.component_count() == 0
    for x in (0, 10, 20):
        dc.insert((x, 0), 1)
    assert dc.component_count() == 3


@pytest.mark.parametrize(
    "center, radius",
    [((math.nan, 0), 1), ((0, math.inf), 1), ((0, 0), 0), ((0, 0), -2), ((0, 0), math.nan)],
)
def test_invalid_input_rejected_without_mutation(center, radius):
    dc = DiskConnectivity()
    dc.insert((0, 0), 1)
    with pytest.raises(ValueError):
        dc.insert(center, radius)
    assert len(dc) == 1
    assert dc.snapshot_stats().insertions == 1
    assert dc.insert((50, 50), 1)[0] == 1


def test_unknown_id_query_rejected():
    dc = DiskConnectivity()
    dc.insert((0, 0), 1)
    with pytest.raises(KeyError):
        dc.connected(0, 4)


def test_stats_empty_and_first_insert():
    dc = DiskConnectivity()
    assert all(v == 0 for v in dc.snapshot_stats().as_dict().values())
    dc.insert((0, 0), 1)
    st = dc.snapshot_stats()
    assert st.awnn_inserts == st.height + 1 == 1
    assert st.sites_moved == 0


@pytest.mark.parametrize("preset", ["uniform", "heavy_tail", "clustered", "tangent_chain"])
def test_matches_oracle_after_every_insert(preset):
    cfg = GeneratorConfig(preset=preset, n=300, seed=11)
    rng = random.Random(0)
    dc = DiskConnectivity()
    oracle = BruteForceOracle()
    for s in generate(cfg):
        sid, _ = dc.insert(s.center, s.radius)
        assert sid == s.id
        oracle.insert(s)
        assert dc.component_count() == oracle.component_count()
        for _ in range(10):
            a, b = rng.randrange(sid + 1), rng.randrange(sid + 1)
            assert dc.connected(a, b) == oracle.connected(a, b)
    assert dc.audit() == []


@pytest.mark.parametrize("seed", range(3))
def test_counter_bounds(seed):
    n = 600
    dc = DiskConnectivity("tiered")
    for s in generate(GeneratorConfig(preset="clustered", n=n, seed=seed)):
        dc.insert(s.center, s.radius)
    st = dc.snapshot_stats()
    assert st.sites_moved <= n * math.floor(math.log2(n))
    assert st.awnn_inserts + st.awnn_deletes <= awnn_envelope(n)


def test_stats_are_monotone():
    dc = DiskConnectivity()
    prev = dc.snapshot_stats().as_dict()
    for s in generate(GeneratorConfig(preset="heavy_tail", n=200, seed=2)):
        dc.insert(s.center, s.radius)
        dc.connected(0, s.id)
        cur = dc.snapshot_stats().as_dict()
        for key in cur:
            if key != "components":
                assert cur[key] >= prev[key], key
        prev = cur
