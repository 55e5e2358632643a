"""Graph-based baseline in the style of arboreal link scheduling.

Uses the same random labels and forest order as CFLS, but a color is
acceptable when no member has a primary or secondary edge conflict with the
new edge. SINR is never consulted, so its schedules may fail at evaluation.
"""

from __future__ import annotations

from .graph import (
    TwoTierGraph,
    decompose_into_oriented_forests,
    has_primary_conflict,
    has_secondary_conflict,
    labeled_edge_order,
    random_labeling,
)
from .model import Link, Network, Schedule
from .rng import Rng


def graph_based_link_schedule(net: Network, g: TwoTierGraph, rng: Rng) -> Schedule:
    labels = random_labeling(net.n, rng)
    forests = decompose_into_oriented_forests(g)
    colors: list[list[Link]] = []
    for x in labeled_edge_order(forests, labels):
        for members in colors:
            if not any(has_primary_conflict(x, h) or has_secondary_conflict(x, h, g) for h in members):
                members.append(x)
                break
        else:
            colors.append([x])
    return Schedule(tuple(tuple(c) for c in colors))
