"""Shadow models shared by unit and acceptance tests."""

import math
import random

from diskconn.awnn import AwnnEntry, awnn_factory
from diskconn.dsu import DsuForest
from diskconn.geometry import Point


def scan_nearest(entries: dict, qx: float, qy: float):
    """Exhaustive scan over ``{id: (x, y, w)}``; smallest id wins ties."""
    best = None
    for sid in sorted(entries):
        x, y, w = entries[sid]
        dx = qx - x
        dy = qy - y
        val = math.sqrt(dx * dx + dy * dy) + w
        if best is None or val < best[1]:
            best = (sid, val)
    return best


def _coord(rng):
    # half the time on a coarse grid so exact ties actually occur
    return float(rng.randint(-4, 4)) if rng.random() < 0.5 else rng.uniform(-50, 50)


def run_awnn_model(backend: str, ops: int, seed: int) -> int:
    """Interleaved insert/delete/nearest against the scan model; return mismatches."""
    rng = random.Random(seed)
    awnn = awnn_factory(backend)()
    model: dict[int, tuple[float, float, float]] = {}
    next_id = 0
    bad = 0
    for _ in range(ops):
        r = rng.random()
        if r < 0.4 or not model:
            w = -float(rng.choice([0.5, 1, 2])) if rng.random() < 0.5 else -rng.uniform(0.01, 20)
            entry = AwnnEntry(next_id, Point(_coord(rng), _coord(rng)), w)
            awnn.insert(entry)
            model[next_id] = (entry.center.x, entry.center.y, w)
            next_id += 1
        elif r < 0.65:
            sid = rng.choice(list(model))
            awnn.delete(sid)
            del model[sid]
        elif r < 0.7:
            # contract violations leave the structure untouched
            size = len(awnn)
            try:
                if rng.random() < 0.5:
                    awnn.insert(AwnnEntry(rng.choice(list(model)), Point(0.0, 0.0), -1.0))
                else:
                    awnn.delete(next_id + 1)
                bad += 1
            except KeyError:
                pass
            bad += len(awnn) != size
        else:
            qx, qy = _coord(rng), _coord(rng)
            bad += awnn.nearest(Point(qx, qy)) != scan_nearest(model, qx, qy)
        bad += len(awnn) != len(model) or set(awnn.ids()) != set(model)
    return bad


def run_dsu_model(ops: int, seed: int) -> int:
    """Random make_set/union/find against a label array; return mismatches."""
    rng = random.Random(seed)
    d = DsuForest()
    label: list[int] = []
    bad = 0
    for _ in range(ops):
        kind = rng.random()
        if kind < 0.25 or len(label) < 2:
            d.make_set(len(label))
            label.append(len(label))
        elif kind < 0.6:
            a, b = rng.randrange(len(label)), rng.randrange(len(label))
            d.union(a, b)
            la, lb = label[a], label[b]
            if la != lb:
                label = [la if x == lb else x for x in label]
        else:
            a, b = rng.randrange(len(label)), rng.randrange(len(label))
            bad += (d.find(a) == d.find(b)) != (label[a] == label[b])
        bad += d.set_count != len(set(label))
    return bad
