"""ConflictFreeLinkSchedule: forest-ordered first-fit edge coloring under SINR."""

from __future__ import annotations

import numpy as np

from .graph import (
    TwoTierGraph,
    decompose_into_oriented_forests,
    labeled_edge_order,
    random_labeling,
)
from .model import Link, Network, RadioParams, Schedule
from .radio import power_matrix, slot_sinr
from .rng import Rng

Coloring = dict[Link, int]


class Palette:
    """Colors 1..C with their member links, kept in insertion order.

    Alongside the members, each color keeps a running interference sum per
    receiver so most infeasible colors are rejected without a full SINR pass.
    """

    def __init__(self, pmat: np.ndarray):
        self.pmat = pmat
        self._p = pmat.tolist()
        self.members: list[list[Link]] = []
        self.nodes: list[set[int]] = []
        self.intf: list[list[float]] = []

    @classmethod
    def from_coloring(cls, coloring: Coloring, pmat: np.ndarray) -> "Palette":
        palette = cls(pmat)
        for link, color in sorted(coloring.items(), key=lambda kv: kv[1]):
            while len(palette) < color - 1:
                palette._new_color()
            palette.add(link, color)
        return palette

    def __len__(self):
        return len(self.members)

    def _new_color(self):
        self.members.append([])
        self.nodes.append(set())
        self.intf.append([])

    def add(self, link: Link, color: int) -> None:
        if color == len(self) + 1:
            self._new_color()
        i = color - 1
        p = self._p
        row = p[link.tx - 1]
        intf = self.intf[i]
        for k, h in enumerate(self.members[i]):
            intf[k] += row[h.rx - 1]
        intf.append(sum(p[h.tx - 1][link.rx - 1] for h in self.members[i]))
        self.members[i].append(link)
        self.nodes[i].update(link)

    def likely_fits(self, x: Link, i: int, noise: float, gamma: float) -> bool:
        """Cheap screen from the running sums; False only on a clear failure."""
        p = self._p
        slack = gamma * (1.0 - 1e-9)
        row = p[x.tx - 1]
        for h, intf in zip(self.members[i], self.intf[i]):
            if p[h.tx - 1][h.rx - 1] < slack * (noise + intf + row[h.rx - 1]):
                return False
        own = sum(p[h.tx - 1][x.rx - 1] for h in self.members[i])
        return row[x.rx - 1] >= slack * (noise + own)

    def to_schedule(self) -> Schedule:
        return Schedule(tuple(tuple(m) for m in self.members))


def _first_fit(x: Link, palette: Palette, rp: RadioParams) -> int:
    noise, gamma = rp.noise_watts, rp.gamma_c_linear
    for i, (members, nodes) in enumerate(zip(palette.members, palette.nodes)):
        if x.tx in nodes or x.rx in nodes:
            continue  # primary conflict with an edge of this color
        if not palette.likely_fits(x, i, noise, gamma):
            continue
        # tentative assignment, kept only if every receiver clears the threshold
        if np.all(slot_sinr(members + [x], palette.pmat, noise) >= gamma):
            return i + 1
    return len(palette) + 1


def first_conflict_free_color(
    x: Link, partial: Coloring, net: Network, g: TwoTierGraph, rp: RadioParams
) -> int:
    """Lowest existing color that ``x`` can join without a primary conflict
    and with every receiver of the enlarged color at SINR >= gamma_c;
    otherwise a new color ``|C| + 1``."""
    if x in partial:
        raise ValueError(f"{x} is already colored")
    return _first_fit(x, Palette.from_coloring(partial, power_matrix(net, rp)), rp)


def conflict_free_link_schedule(net: Network, g: TwoTierGraph, rp: RadioParams, rng: Rng) -> Schedule:
    labels = random_labeling(net.n, rng)
    forests = decompose_into_oriented_forests(g)
    palette = Palette(power_matrix(net, rp))
    for x in labeled_edge_order(forests, labels):
        palette.add(x, _first_fit(x, palette, rp))
    return palette.to_schedule()


def schedule_to_coloring(schedule: Schedule) -> Coloring:
    return {link: i + 1 for i, slot in enumerate(schedule.slots) for link in slot}
