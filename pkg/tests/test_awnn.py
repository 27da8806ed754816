import math

import pytest
from hypothesis import strategies as st
from hypothesis.stateful import RuleBasedStateMachine, invariant, precondition, rule

from diskconn.awnn import AwnnEntry, ScanAwnn, TieredAwnn, awnn_factory
from diskconn.geometry import Point, Site

from _models import run_awnn_model, scan_nearest

BACKENDS = ["scan", "tiered"]


def entry(i, x, y, w):
    return AwnnEntry(i, Point(x, y), w)


@pytest.fixture(params=BACKENDS)
def awnn(request):
    return awnn_factory(request.param)()


def test_entry_weight_is_negated_radius():
    e = AwnnEntry.from_site(Site.at(4, 1, 2, 3.5))
    assert (e.site_id, e.weight) == (4, -3.5)


def test_insert_sizes(awnn):
    assert len(awnn) == 0
    awnn.insert(entry(0, 0, 0, -1))
    assert len(awnn) == 1
    awnn.insert(entry(1, 1, 0, -1))
    assert len(awnn) == 2


def test_duplicate_insert_rejected(awnn):
    awnn.insert(entry(0, 0, 0, -1))
    with pytest.raises(KeyError):
        awnn.insert(entry(0, 5, 5, -2))
    assert len(awnn) == 1
    assert awnn.nearest(Point(5, 5))[0] == 0
    assert awnn.inserts == 1


def test_delete(awnn):
    awnn.insert(entry(0, 0, 0, -1))
    awnn.delete(0)
    assert len(awnn) == 0
    assert awnn.nearest(Point(0, 0)) is None


def test_delete_absent_rejected(awnn):
    with pytest.raises(KeyError):
        awnn.delete(3)
    assert len(awnn) == 0 and awnn.deletes == 0


def test_delete_redirects_queries(awnn):
    awnn.insert(entry(0, 0, 0, -1))
    awnn.insert(entry(1, 9, 0, -1))
    awnn.delete(0)
    assert awnn.nearest(Point(0, 0)) == (1, 8.0)


def test_empty_query(awnn):
    assert awnn.nearest(Point(1, 2)) is None
    assert awnn.queries == 1


def test_heavier_weight_wins(awnn):
    # direct evaluation: -1 for the first entry, 5 - 10 = -5 for the second
    awnn.insert(entry(0, 0, 0, -1))
    awnn.insert(entry(1, 5, 0, -10))
    assert awnn.nearest(Point(0, 0)) == (1, -5.0)


def test_tie_goes_to_smallest_id(awnn):
    awnn.insert(entry(7, 0, 0, -1))
    awnn.insert(entry(3, 0, 0, -1))
    assert awnn.nearest(Point(1, 1)) == (3, math.sqrt(2) - 1)


def test_unknown_backend():
    with pytest.raises(ValueError):
        awnn_factory("voronoi")


def test_factory_passthrough():
    assert awnn_factory(ScanAwnn) is ScanAwnn


def test_tiered_levels_follow_binary_counter():
    t = TieredAwnn()
    for i in range(11):
        t.insert(entry(i, i, 0, -1))
    occupied = [b is not None for b in t._levels]
    assert occupied == [True, True, False, True]  # 11 = 0b1011


def test_tiered_rebuilds_when_tombstones_dominate():
    t = TieredAwnn()
    for i in range(16):
        t.insert(entry(i, i, 0, -1))
    for i in range(5):
        t.delete(i)
    assert t.rebuilds == 0 and t.tombstones == 5
    t.delete(5)  # 6 tombstones > 10 / 2
    assert t.rebuilds == 1 and t.tombstones == 0
    assert sorted(t.ids()) == list(range(6, 16))
    assert t.nearest(Point(0, 0)) == (6, 5.0)


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("seed", range(3))
def test_random_operations_match_scan_model(backend, seed):
    assert run_awnn_model(backend, 1500, seed) == 0


coords = st.one_of(st.integers(-3, 3).map(float), st.floats(-100, 100))
weights = st.one_of(st.sampled_from([-0.5, -1.0, -2.0]), st.floats(-50, -1e-3))


class AwnnMachine(RuleBasedStateMachine):
    backend = "scan"

    def __init__(self):
        super().__init__()
        self.awnn = awnn_factory(self.backend)()
        self.model = {}
        self.next_id = 0

    @rule(x=coords, y=coords, w=weights)
    def insert(self, x, y, w):
        self.awnn.insert(entry(self.next_id, x, y, w))
        self.model[self.next_id] = (x, y, w)
        self.next_id += 1

    @precondition(lambda self: self.model)
    @rule(data=st.data())
    def delete(self, data):
        sid = data.draw(st.sampled_from(sorted(self.model)))
        self.awnn.delete(sid)
        del self.model[sid]

    @rule(x=coords, y=coords)
    def nearest(self, x, y):
        assert self.awnn.nearest(Point(x, y)) == scan_nearest(self.model, x, y)

    @invariant()
    def same_contents(self):
        assert len(self.awnn) == len(self.model)
        assert set(self.awnn.ids()) == set(self.model)


class TieredMachine(AwnnMachine):
    backend = "tiered"


TestScanAwnnStateful = AwnnMachine.TestCase
TestTieredAwnnStateful = TieredMachine.TestCase
