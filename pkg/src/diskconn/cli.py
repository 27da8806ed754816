"""Command-line harness: replay site scripts, check against the oracle, benchmark.

Script protocol, one command per line (blank lines and ``#`` comments are
skipped)::

    ADD <x> <y> <r>          -> id=<k> merged=<m> moved=<c>
    QUERY <i> <j>            -> connected | separate
    COMPONENTS               -> <count>
    STATS                    -> key=value lines
    CHECK                    -> ok | violation/mismatch lines
    GEN <preset> <n> <seed>  -> one ADD result line per generated site

Exit status is 0 when every line parsed and every CHECK passed, 1 otherwise,
2 for bad command-line usage.
"""

from __future__ import annotations

import argparse
import csv
import math
import re
import sys
import time
from dataclasses import dataclass
from typing import IO, Iterable, Iterator, Sequence

import numpy as np

from .connectivity import DiskConnectivity
from .geometry import Site
from .oracle import PRESETS, BruteForceOracle, GeneratorConfig, generate, same_partition

__all__ = [
    "Command",
    "ScriptError",
    "parse_command",
    "ScriptRunner",
    "run_script",
    "run_benchmark",
    "run_sweep",
    "floor_log2",
    "ceil_log2",
    "main",
]

FULL_CHECK_LIMIT = 2000
SAMPLED_PAIRS = 1000

_NUMBER = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?\Z")
_INT = re.compile(r"\d+\Z")


class ScriptError(ValueError):
    pass


@dataclass(frozen=True)
class Command:
    op: str
    args: tuple = ()


def _real(tok: str) -> float:
    if not _NUMBER.match(tok):
        raise ScriptError(f"not a number: {tok!r}")
    value = float(tok)
    if not math.isfinite(value):
        raise ScriptError(f"not finite: {tok!r}")
    return value


def _count(tok: str) -> int:
    if not _INT.match(tok):
        raise ScriptError(f"not a nonnegative integer: {tok!r}")
    return int(tok)


_ARITY = {"ADD": 3, "QUERY": 2, "COMPONENTS": 0, "STATS": 0, "CHECK": 0, "GEN": 3}


def parse_command(line: str) -> Command | None:
    """Parse one script line; None for blank or comment lines."""
    body = line.split("#", 1)[0]
    tokens = body.split()
    if not tokens:
        return None
    op, rest = tokens[0], tokens[1:]
    if op not in _ARITY:
        raise ScriptError(f"unknown command {op!r}")
    if len(rest) != _ARITY[op]:
        raise ScriptError(f"{op} takes {_ARITY[op]} arguments, got {len(rest)}")
    if op == "ADD":
        x, y, r = (_real(t) for t in rest)
        if r <= 0:
            raise ScriptError(f"radius must be > 0, got {rest[2]}")
        return Command(op, (x, y, r))
    if op == "QUERY":
        return Command(op, (_count(rest[0]), _count(rest[1])))
    if op == "GEN":
        if rest[0] not in PRESETS:
            raise ScriptError(f"unknown preset {rest[0]!r}")
        return Command(op, (rest[0], _count(rest[1]), _count(rest[2])))
    return Command(op)


class ScriptRunner:
    """Executes commands against a structure and a shadow brute-force oracle."""

    def __init__(self, awnn: str = "scan") -> None:
        self.dc = DiskConnectivity(awnn)
        self.oracle = BruteForceOracle()
        self.failed_checks = 0

    def _add(self, x: float, y: float, r: float) -> str:
        sid, report = self.dc.insert((x, y), r)
        self.oracle.insert(Site.at(sid, x, y, r))
        return f"id={sid} merged={report.merged} moved={report.sites_moved}"

    def execute(self, cmd: Command) -> list[str]:
        if cmd.op == "ADD":
            return [self._add(*cmd.args)]
        if cmd.op == "QUERY":
            a, b = cmd.args
            n = len(self.dc)
            for i in (a, b):
                if i >= n:
                    raise ScriptError(f"unknown site id {i}")
            return ["connected" if self.dc.connected(a, b) else "separate"]
        if cmd.op == "COMPONENTS":
            return [str(self.dc.component_count())]
        if cmd.op == "STATS":
            return [f"{k}={v}" for k, v in self.dc.snapshot_stats().as_dict().items()]
        if cmd.op == "CHECK":
            return self.check()
        if cmd.op == "GEN":
            preset, n, seed = cmd.args
            try:
                cfg = GeneratorConfig(preset=preset, n=n, seed=seed)
            except ValueError as exc:
                raise ScriptError(str(exc)) from None
            return [self._add(s.x, s.y, s.radius) for s in generate(cfg)]
        raise ScriptError(f"unhandled command {cmd.op}")

    def check(self) -> list[str]:
        out: list[str] = []
        problems: list[str] = []
        for v in self.dc.audit():
            problems.append(f"violation {v.kind}: {v.message}")
        n = len(self.oracle)
        dsu = self.dc.dsu
        if n <= FULL_CHECK_LIMIT:
            ours = [dsu.find(s.id) for s in self.oracle.sites]
            theirs = self.oracle.labels()
            if not same_partition(ours, theirs):
                ours_arr = np.asarray(ours)
                for i in range(n):
                    diff = (ours_arr == ours_arr[i]) != (theirs == theirs[i])
                    if diff.any():
                        j = int(np.flatnonzero(diff)[0])
                        problems.append(self._mismatch(i, j))
                        break
        else:
            out.append(f"check: {n} sites exceed {FULL_CHECK_LIMIT}, sampling {SAMPLED_PAIRS} pairs")
            rng = np.random.Generator(np.random.PCG64(n))
            for a, b in rng.integers(0, n, size=(SAMPLED_PAIRS, 2)).tolist():
                if dsu.connected(a, b) != self.oracle.connected(a, b):
                    problems.append(self._mismatch(a, b))
                    break
        if problems:
            self.failed_checks += 1
            return out + problems
        return out + ["ok"]

    def _mismatch(self, a: int, b: int) -> str:
        ours = "connected" if self.dc.dsu.connected(a, b) else "separate"
        theirs = "connected" if self.oracle.connected(a, b) else "separate"
        return f"mismatch {a} {b}: structure={ours} oracle={theirs}"


def run_script(lines: Iterable[str], awnn: str = "scan") -> tuple[list[str], int]:
    """Run a script; return output lines and exit code."""
    runner = ScriptRunner(awnn)
    out: list[str] = []
    for lineno, line in enumerate(lines, start=1):
        try:
            cmd = parse_command(line)
            if cmd is not None:
                out.extend(runner.execute(cmd))
        except (ScriptError, ValueError, KeyError) as exc:
            reason = exc.args[0] if exc.args else type(exc).__name__
            out.append(f"error line {lineno}: {reason}")
            return out, 1
    return out, 1 if runner.failed_checks else 0


def floor_log2(n: int) -> int:
    return n.bit_length() - 1 if n > 0 else 0


def ceil_log2(n: int) -> int:
    return (n - 1).bit_length() if n > 1 else 0


def awnn_envelope(n: int) -> int:
    """Upper bound on AWNN inserts + deletes over ``n`` insertions."""
    return 4 * n * (1 + ceil_log2(n)) ** 2


def run_benchmark(
    cfg: GeneratorConfig,
    compare_naive: bool = False,
    awnn: str = "scan",
    csv_file: IO[str] | None = None,
) -> dict[str, object]:
    """Build the structure over ``generate(cfg)`` and report its counters.

    With ``compare_naive`` the all-pairs incremental oracle is timed too.
    ``csv_file`` receives one row of cumulative counters per insertion.
    """
    sites = generate(cfg)
    n = len(sites)
    dc = DiskConnectivity(awnn)
    writer = None
    if csv_file is not None:
        writer = csv.writer(csv_file, lineterminator="\n")
        writer.writerow([
            "step", "id", "merged", "moved", "height", "components",
            "awnn_inserts", "awnn_deletes", "awnn_queries",
        ])
    t0 = time.perf_counter()
    for step, s in enumerate(sites):
        sid, rep = dc.insert(s.center, s.radius)
        if writer is not None:
            st = dc.tree.stats
            writer.writerow([
                step, sid, rep.merged, rep.sites_moved, dc.tree.height,
                dc.component_count(), st.awnn_inserts, st.awnn_deletes, st.awnn_queries,
            ])
    wall = time.perf_counter() - t0
    stats = dc.snapshot_stats()

    updates = stats.awnn_inserts + stats.awnn_deletes
    log_floor = floor_log2(n)
    log_ceil = ceil_log2(n)
    envelope = awnn_envelope(n)
    quarter = n * n / 4
    report: dict[str, object] = {
        "preset": cfg.preset,
        "n": n,
        "seed": cfg.seed,
        "awnn": awnn,
        "components": stats.components,
        "height": stats.height,
        "expansions": stats.expansions,
        "sites_moved": stats.sites_moved,
        "max_site_moves": stats.max_site_moves,
        "move_bound": n * log_floor,
        "per_site_move_bound": log_floor,
        "move_bound_ok": stats.sites_moved <= n * log_floor and stats.max_site_moves <= log_floor,
        "awnn_inserts": stats.awnn_inserts,
        "awnn_deletes": stats.awnn_deletes,
        "awnn_queries": stats.awnn_queries,
        "awnn_updates": updates,
        "awnn_envelope": envelope,
        "awnn_envelope_ok": updates <= envelope,
        "awnn_leading_constant": updates / (n * (1 + log_ceil) ** 2) if n else 0.0,
        "query_ratio": stats.awnn_queries / quarter if n else 0.0,
        "wall_time_s": round(wall, 6),
    }
    if compare_naive:
        oracle = BruteForceOracle()
        t0 = time.perf_counter()
        oracle.extend(sites)
        report["naive_pair_tests"] = oracle.pair_tests
        report["naive_wall_time_s"] = round(time.perf_counter() - t0, 6)
        report["naive_components"] = oracle.component_count()
    return report


SWEEP_COLUMNS = (
    "n", "awnn_queries", "quarter_n_squared", "query_ratio",
    "awnn_inserts", "awnn_deletes", "sites_moved", "height", "components", "wall_time_s",
)


def run_sweep(
    ns: Sequence[int],
    preset: str = "uniform",
    seed: int = 42,
    awnn: str = "scan",
    csv_file: IO[str] | None = None,
) -> list[dict[str, object]]:
    """Benchmark each size in ``ns``; optionally write the table as CSV."""
    rows = []
    for n in ns:
        rep = run_benchmark(GeneratorConfig(preset=preset, n=n, seed=seed), awnn=awnn)
        rows.append({
            "n": n,
            "awnn_queries": rep["awnn_queries"],
            "quarter_n_squared": n * n / 4,
            "query_ratio": rep["query_ratio"],
            "awnn_inserts": rep["awnn_inserts"],
            "awnn_deletes": rep["awnn_deletes"],
            "sites_moved": rep["sites_moved"],
            "height": rep["height"],
            "components": rep["components"],
            "wall_time_s": rep["wall_time_s"],
        })
    if csv_file is not None:
        writer = csv.DictWriter(csv_file, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return rows


def format_report(report: dict[str, object]) -> Iterator[str]:
    for key, value in report.items():
        if isinstance(value, bool):
            value = str(value).lower()
        yield f"{key}={value!r}" if isinstance(value, float) else f"{key}={value}"


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="diskconn",
        description="Incremental disk-graph connectivity: script runner and benchmark.",
    )
    p.add_argument("--script", metavar="FILE", help="read commands from FILE instead of stdin")
    p.add_argument("--bench", metavar="PRESET", choices=PRESETS, help="benchmark a generated instance")
    p.add_argument("--n", type=int, default=1000, help="instance size for --bench")
    p.add_argument("--seed", type=int, default=42, help="generator seed for --bench")
    p.add_argument("--sweep", metavar="N1,N2,...", help="benchmark several sizes, emit a CSV table")
    p.add_argument("--compare-naive", action="store_true", help="also time the all-pairs baseline")
    p.add_argument("--csv", metavar="FILE", help="write per-insertion counters (or sweep table) here")
    p.add_argument("--awnn", choices=("scan", "tiered"), default="scan", help="AWNN backend")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.bench is None:
        if args.sweep or args.compare_naive or args.csv:
            parser.error("--sweep, --compare-naive and --csv need --bench")
        if args.script:
            with open(args.script, encoding="utf-8") as fh:
                lines, code = run_script(fh, args.awnn)
        else:
            lines, code = run_script(sys.stdin, args.awnn)
        for line in lines:
            print(line)
        return code

    csv_fh = open(args.csv, "w", encoding="utf-8", newline="") if args.csv else None
    try:
        if args.sweep:
            try:
                ns = [int(tok) for tok in args.sweep.split(",") if tok]
                for n in ns:
                    GeneratorConfig(preset=args.bench, n=n, seed=args.seed)
            except ValueError as exc:
                parser.error(f"bad --sweep: {exc}")
            rows = run_sweep(ns, args.bench, args.seed, args.awnn, csv_fh)
            if csv_fh is None:
                writer = csv.DictWriter(sys.stdout, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
                writer.writeheader()
                writer.writerows(rows)
            ratios = [row["query_ratio"] for row in rows]
            return 0 if all(a > b for a, b in zip(ratios, ratios[1:])) else 1
        try:
            cfg = GeneratorConfig(preset=args.bench, n=args.n, seed=args.seed)
        except ValueError as exc:
            parser.error(str(exc))
        report = run_benchmark(cfg, args.compare_naive, args.awnn, csv_fh)
    finally:
        if csv_fh is not None:
            csv_fh.close()
    for line in format_report(report):
        print(line)
    return 0 if report["move_bound_ok"] and report["awnn_envelope_ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
