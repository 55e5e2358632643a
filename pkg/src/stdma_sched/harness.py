"""Random deployments, experiment presets, Monte Carlo runs and CSV output."""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace
from statistics import fmean
from typing import Callable, Sequence

from .baseline import graph_based_link_schedule
from .cfls import conflict_free_link_schedule
from .graph import build_two_tier_graph, forest_count
from .model import Network, RadioParams, Schedule, build_network
from .radio import FadingParams, comm_range, interference_range, sample_gains, sinr
from .rng import Rng, derive_seed
from .verify import spatial_reuse

CSV_COLUMNS = (
    "preset",
    "n_nodes",
    "trial",
    "seed",
    "algorithm",
    "fading",
    "num_comm_edges",
    "forest_count",
    "num_slots",
    "spatial_reuse",
)

ALGORITHMS: dict[str, Callable] = {
    "cfls": lambda net, g, rp, rng: conflict_free_link_schedule(net, g, rp, rng),
    "graph-baseline": lambda net, g, rp, rng: graph_based_link_schedule(net, g, rng),
}


@dataclass(frozen=True)
class ExperimentPreset:
    name: str
    R: float
    power_mw: float
    noise_dbm: float
    gamma_c_db: float
    gamma_i_db: float
    alpha: float
    node_counts: tuple[int, ...]
    trials: int = 200
    fading: FadingParams | None = None

    def __post_init__(self):
        if not self.node_counts or list(self.node_counts) != sorted(self.node_counts):
            raise ValueError("node_counts must be non-empty and ascending")
        if self.trials < 1:
            raise ValueError("trials must be positive")

    @property
    def radio(self) -> RadioParams:
        return RadioParams.from_db(self.power_mw, self.noise_dbm, self.gamma_c_db, self.gamma_i_db, self.alpha)


PRESETS = {
    "exp1": ExperimentPreset("exp1", 500.0, 10.0, -90.0, 20.0, 10.0, 4.0, tuple(range(30, 111, 5))),
    "exp2": ExperimentPreset("exp2", 700.0, 15.0, -85.0, 15.0, 7.0, 4.0, tuple(range(70, 151, 5))),
}


@dataclass(frozen=True)
class TrialRecord:
    preset: str
    n_nodes: int
    trial: int
    seed: int
    algorithm: str
    fading: bool
    num_comm_edges: int
    forest_count: int
    num_slots: int
    spatial_reuse: float


def generate_network(n: int, R: float, rng: Rng) -> Network:
    """``n`` points uniform on the disc of radius ``R`` centred at the origin."""
    if n < 2 or not R > 0:
        raise ValueError("need n >= 2 and R > 0")
    pts: list[tuple[float, float]] = []
    seen = set()
    while len(pts) < n:
        r = R * math.sqrt(rng.random())
        theta = 2.0 * math.pi * rng.random()
        p = (r * math.cos(theta), r * math.sin(theta))
        if p not in seen:  # a duplicate would make SINR undefined; redraw it
            seen.add(p)
            pts.append(p)
    return build_network(pts)


def trial_seed(master_seed: int, preset: str, n: int, trial: int) -> int:
    return derive_seed(master_seed, preset, n, trial)


def run_trial(
    preset: ExperimentPreset, n: int, trial: int, seed: int, algorithms: Sequence[str]
) -> list[TrialRecord]:
    rp = preset.radio
    net = generate_network(n, preset.R, Rng(seed))
    g = build_two_tier_graph(net, rp)
    n_edges = len(g.comm_edges)
    theta = forest_count(g)
    gains = sample_gains(Rng(derive_seed(seed, "fade")), n, preset.fading) if preset.fading else None

    records = []
    for name in algorithms:
        schedule: Schedule = ALGORITHMS[name](net, g, rp, Rng(derive_seed(seed, "label")))
        base = dict(
            preset=preset.name, n_nodes=n, trial=trial, seed=seed, algorithm=name,
            num_comm_edges=n_edges, forest_count=theta, num_slots=schedule.num_slots,
        )
        # a network with no links yields an empty schedule; its reuse is recorded as 0
        def sigma(gm):
            return spatial_reuse(net, schedule, rp, gm) if schedule.num_slots else 0.0

        records.append(TrialRecord(fading=False, spatial_reuse=sigma(None), **base))
        if gains is not None:
            records.append(TrialRecord(fading=True, spatial_reuse=sigma(gains), **base))
    return records


def _run_trial_safe(args):
    preset, n, trial, seed, algorithms = args
    try:
        return run_trial(preset, n, trial, seed, algorithms)
    except Exception as exc:
        raise RuntimeError(f"trial failed: preset={preset.name} n={n} trial={trial} seed={seed}: {exc}") from exc


def run_experiment(
    preset: ExperimentPreset,
    algorithms: Sequence[str] = ("cfls", "graph-baseline"),
    master_seed: int = 0,
    workers: int = 1,
) -> list[TrialRecord]:
    """Run every (n, trial) of ``preset``; records come back ordered by (n, trial, algorithm)."""
    for name in algorithms:
        if name not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {name!r}; choose from {sorted(ALGORITHMS)}")
    jobs = [
        (preset, n, t, trial_seed(master_seed, preset.name, n, t), tuple(algorithms))
        for n in preset.node_counts
        for t in range(preset.trials)
    ]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            chunks = list(pool.map(_run_trial_safe, jobs, chunksize=8))
    else:
        chunks = [_run_trial_safe(job) for job in jobs]
    return [r for chunk in chunks for r in chunk]


def records_to_csv(records: Sequence[TrialRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        row = asdict(r)
        row["fading"] = int(r.fading)
        row["spatial_reuse"] = repr(float(r.spatial_reuse))
        writer.writerow([row[c] for c in CSV_COLUMNS])
    return buf.getvalue()


def read_csv(text: str) -> list[TrialRecord]:
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        out.append(
            TrialRecord(
                preset=row["preset"], n_nodes=int(row["n_nodes"]), trial=int(row["trial"]),
                seed=int(row["seed"]), algorithm=row["algorithm"], fading=row["fading"] == "1",
                num_comm_edges=int(row["num_comm_edges"]), forest_count=int(row["forest_count"]),
                num_slots=int(row["num_slots"]), spatial_reuse=float(row["spatial_reuse"]),
            )
        )
    return out


def summarize(records: Sequence[TrialRecord]) -> list[dict]:
    """Mean spatial reuse, slots, edges and forests per (n, algorithm, fading)."""
    groups: dict[tuple, list[TrialRecord]] = {}
    for r in records:
        groups.setdefault((r.n_nodes, r.algorithm, r.fading), []).append(r)
    rows = []
    for (n, algo, fading), rs in sorted(groups.items()):
        rows.append(
            dict(
                n_nodes=n, algorithm=algo, fading=fading, trials=len(rs),
                mean_spatial_reuse=fmean(r.spatial_reuse for r in rs),
                mean_slots=fmean(r.num_slots for r in rs),
                mean_comm_edges=fmean(r.num_comm_edges for r in rs),
                mean_forests=fmean(r.forest_count for r in rs),
            )
        )
    return rows


# worked examples: coordinates, active links and expected receiver SINRs in dB
FIG1_COORDS = [(-360, 0), (-450, 0), (90, 0), (0, 0), (360, 0), (450, 0)]
FIG1_LINKS = [(1, 2), (3, 4), (5, 6)]
FIG1_SINR_DB = [21.26, 18.42, 19.74]
FIG2_COORDS = [(0, 0), (50, 0), (220, 0), (170, 0)]
FIG2_LINKS = [(1, 2), (3, 4)]
FIG2_SINR_DB = [20.91, 20.91]
SINR_TOL_DB = 0.01
RANGE_TOL_M = 0.05
EXPECTED_RANGES = {"exp1": (100.0, 177.8), "exp2": (110.7, 175.4)}


@dataclass(frozen=True)
class Check:
    name: str
    expected: float
    actual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return abs(self.actual - self.expected) <= self.tolerance


def run_paper_examples() -> list[Check]:
    rp = PRESETS["exp1"].radio
    checks = []
    for fig, coords, links, expected in (
        ("fig1", FIG1_COORDS, FIG1_LINKS, FIG1_SINR_DB),
        ("fig2", FIG2_COORDS, FIG2_LINKS, FIG2_SINR_DB),
    ):
        net = build_network(coords)
        txs = {t for t, _ in links}
        for (t, r), want in zip(links, expected):
            got = 10.0 * math.log10(sinr(r, t, txs - {t}, net, rp))
            checks.append(Check(f"{fig} SINR at receiver {r} (dB)", want, got, SINR_TOL_DB))
    for name, (rc, ri) in EXPECTED_RANGES.items():
        prp = PRESETS[name].radio
        checks.append(Check(f"{name} R_c (m)", rc, comm_range(prp), RANGE_TOL_M))
        checks.append(Check(f"{name} R_i (m)", ri, interference_range(prp), RANGE_TOL_M))
    return checks


def format_checks(checks: Sequence[Check]) -> str:
    lines = [f"{'check':34s} {'expected':>10s} {'actual':>10s}  result"]
    for c in checks:
        lines.append(f"{c.name:34s} {c.expected:10.3f} {c.actual:10.3f}  {'PASS' if c.passed else 'FAIL'}")
    return "\n".join(lines)


def with_overrides(
    preset: ExperimentPreset,
    trials: int | None = None,
    node_counts: Sequence[int] | None = None,
    fading: FadingParams | None = None,
) -> ExperimentPreset:
    changes = {}
    if trials is not None:
        changes["trials"] = trials
    if node_counts is not None:
        changes["node_counts"] = tuple(node_counts)
    if fading is not None:
        changes["fading"] = fading
    return replace(preset, **changes)
