"""Schedule validation, spatial reuse and an exhaustive optimum for tiny instances.

The checks in :func:`verify_schedule` and the brute-force search recompute
distances, ranges and SINR from the raw coordinates with plain ``math``; they
do not reuse the graph predicates or the vectorized SINR used by the
schedulers, so agreement between the two is a meaningful cross-check.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Literal, Sequence

from .model import Link, Network, RadioParams, Schedule
from .radio import GainMatrix, power_matrix, slot_sinr

ViolationKind = Literal["operational", "range", "exhaustive", "sinr"]


@dataclass(frozen=True)
class LinkOutcome:
    link: Link
    sinr_db: float | None  # None when the link is malformed
    success: bool


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    slot: int | None  # 0-based slot index, None for schedule-wide problems
    links: tuple[Link, ...]
    detail: str

    def to_dict(self):
        return {
            "kind": self.kind,
            "slot": self.slot,
            "links": [{"tx": l.tx, "rx": l.rx} for l in self.links],
            "detail": self.detail,
        }


@dataclass
class EvaluationReport:
    spatial_reuse: float
    slots: list[list[LinkOutcome]]
    violations: list[Violation] = field(default_factory=list)

    @property
    def num_slots(self) -> int:
        return len(self.slots)

    @property
    def ok(self) -> bool:
        return not self.violations

    def violations_of(self, kind: ViolationKind) -> list[Violation]:
        return [v for v in self.violations if v.kind == kind]

    def to_dict(self) -> dict:
        return {
            "spatial_reuse": self.spatial_reuse,
            "num_slots": self.num_slots,
            "violations": [v.to_dict() for v in self.violations],
            "slots": [
                [{"tx": o.link.tx, "rx": o.link.rx, "sinr_db": o.sinr_db, "success": o.success} for o in slot]
                for slot in self.slots
            ],
        }


def _point(net: Network, j: int) -> tuple[float, float]:
    x, y = net.coords[j - 1]
    return float(x), float(y)


def _comm_range(rp: RadioParams) -> float:
    return math.pow(rp.power_watts / (rp.noise_watts * rp.gamma_c_linear), 1.0 / rp.alpha)


def _slot_sinrs(net: Network, rp: RadioParams, links: Sequence[Link]) -> list[float]:
    """Linear SINR of each link with all others in ``links`` transmitting."""
    out = []
    for j, (t, r) in enumerate(links):
        pr = _point(net, r)
        signal = rp.power_watts / math.pow(math.dist(_point(net, t), pr), rp.alpha)
        noise = rp.noise_watts
        for k, (tk, _) in enumerate(links):
            if k == j:
                continue
            d = math.dist(_point(net, tk), pr)
            if d == 0.0:  # receiver is itself transmitting
                noise = math.inf
                break
            noise += rp.power_watts / math.pow(d, rp.alpha)
        out.append(signal / noise)
    return out


def verify_schedule(net: Network, g, schedule: Schedule, rp: RadioParams) -> EvaluationReport:
    """Check the operational, range, exhaustive and SINR constraints.

    ``g`` is accepted for interface symmetry but not consulted; in-range
    pairs are recomputed from coordinates. Malformed links (unknown node or
    tx == rx) become violations, neither succeed nor interfere.
    """
    rc = _comm_range(rp)
    violations: list[Violation] = []
    outcomes: list[list[LinkOutcome]] = []
    counts: Counter[Link] = Counter()

    for i, slot in enumerate(schedule.slots):
        uses = Counter()
        for l in slot:
            uses.update([l.tx, l.rx])
        for node, c in sorted(uses.items()):
            if c > 1:
                bad = tuple(l for l in slot if node in (l.tx, l.rx))
                violations.append(Violation("operational", i, bad, f"node {node} used {c} times in slot"))

        valid = []
        for l in slot:
            counts[l] += 1
            if not (net.has_node(l.tx) and net.has_node(l.rx)):
                violations.append(Violation("range", i, (l,), f"unknown node id in {l}"))
            elif l.tx != l.rx:
                d = math.dist(_point(net, l.tx), _point(net, l.rx))
                if not d <= rc:
                    violations.append(Violation("range", i, (l,), f"distance {d:.3f} m exceeds R_c {rc:.3f} m"))
                valid.append(l)

        values = dict(zip(valid, _slot_sinrs(net, rp, valid)))
        row = []
        for l in slot:
            if l not in values:
                row.append(LinkOutcome(l, None, False))
                continue
            s = values[l]
            ok = s >= rp.gamma_c_linear
            sinr_db = 10.0 * math.log10(s) if s > 0 else -math.inf
            row.append(LinkOutcome(l, sinr_db, ok))
            if not ok:
                violations.append(
                    Violation("sinr", i, (l,), f"SINR {sinr_db:.2f} dB below {10 * math.log10(rp.gamma_c_linear):.2f} dB")
                )
        outcomes.append(row)

    for j in net.node_ids:
        for k in net.node_ids:
            if j != k and math.dist(_point(net, j), _point(net, k)) <= rc and counts[Link(j, k)] == 0:
                violations.append(Violation("exhaustive", None, (Link(j, k),), f"in-range link {j}->{k} never scheduled"))
    for l, c in sorted(counts.items()):
        if c > 1:
            violations.append(Violation("exhaustive", None, (l,), f"link {l} scheduled {c} times"))

    successes = sum(o.success for row in outcomes for o in row)
    sigma = successes / len(outcomes) if outcomes else 0.0
    return EvaluationReport(sigma, outcomes, violations)


def spatial_reuse(net: Network, schedule: Schedule, rp: RadioParams, gains: GainMatrix | None = None) -> float:
    """Successful receptions per slot, with faded channel gains if given."""
    if schedule.num_slots == 0:
        raise ValueError("spatial reuse is undefined for an empty schedule")
    pmat = power_matrix(net, rp, gains)
    ok = sum(int((slot_sinr(slot, pmat, rp.noise_watts) >= rp.gamma_c_linear).sum()) for slot in schedule.slots)
    return ok / schedule.num_slots


def _set_partitions(items: list) -> Iterator[list[list]]:
    """All set partitions of ``items`` in restricted-growth order."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


class InstanceTooLarge(ValueError):
    pass


def optimal_schedule_bruteforce(net: Network, g, rp: RadioParams, max_edges: int = 8) -> Schedule:
    """Exhaustive search for the valid schedule with the highest spatial reuse.

    Every set partition of the communication links is tried. Since all links
    of a valid schedule succeed, the best one uses the fewest slots; ties go
    to the lexicographically smallest canonical form.
    """
    rc = _comm_range(rp)
    edges = sorted(
        Link(j, k)
        for j in net.node_ids
        for k in net.node_ids
        if j != k and math.dist(_point(net, j), _point(net, k)) <= rc
    )
    if len(edges) > max_edges:
        raise InstanceTooLarge(f"{len(edges)} communication links exceed the brute-force limit of {max_edges}")

    cache: dict[tuple[Link, ...], bool] = {}

    def block_ok(block: tuple[Link, ...]) -> bool:
        if block not in cache:
            nodes = [v for l in block for v in l]
            cache[block] = len(nodes) == len(set(nodes)) and all(
                s >= rp.gamma_c_linear for s in _slot_sinrs(net, rp, block)
            )
        return cache[block]

    best = None
    for part in _set_partitions(edges):
        canon = tuple(sorted(tuple(sorted(b)) for b in part))
        if best is not None and (len(canon), canon) >= (len(best), best):
            continue
        if all(block_ok(b) for b in canon):
            best = canon
    return Schedule(best or ())
