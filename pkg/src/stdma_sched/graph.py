"""Two-tier communication/interference graph, edge conflicts, random labels
and the breadth-first split of the communication graph into oriented forests."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Literal

import numpy as np

from .model import Link, Network, RadioParams
from .radio import comm_range, interference_range
from .rng import Rng


@dataclass(frozen=True)
class TwoTierGraph:
    n: int
    comm_edges: frozenset[Link]
    intf_edges: frozenset[Link]

    def __post_init__(self):
        if self.comm_edges & self.intf_edges:
            raise ValueError("communication and interference edges must be disjoint")
        for edges in (self.comm_edges, self.intf_edges):
            for e in edges:
                if Link(e.rx, e.tx) not in edges:
                    raise ValueError(f"edge {e} has no reverse twin")

    def has_edge(self, tx: int, rx: int) -> bool:
        """True if any (communication or interference) edge tx -> rx exists."""
        e = Link(tx, rx)
        return e in self.comm_edges or e in self.intf_edges

    def sorted_comm_edges(self) -> list[Link]:
        return sorted(self.comm_edges)

    def to_edge_list(self) -> str:
        lines = [f"{e.tx} {e.rx} C" for e in sorted(self.comm_edges)]
        lines += [f"{e.tx} {e.rx} I" for e in sorted(self.intf_edges)]
        return "".join(line + "\n" for line in lines)

    @classmethod
    def from_edge_list(cls, n: int, text: str) -> "TwoTierGraph":
        comm, intf = set(), set()
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            try:
                tx, rx, kind = line.split()
                target = {"C": comm, "I": intf}[kind]
                target.add(Link(int(tx), int(rx)))
            except (ValueError, KeyError):
                raise ValueError(f"line {lineno}: expected 'tx rx C|I', got {line!r}") from None
        return cls(n, frozenset(comm), frozenset(intf))


def build_two_tier_graph(net: Network, rp: RadioParams) -> TwoTierGraph:
    rc, ri = comm_range(rp), interference_range(rp)
    d = net.distances
    j, k = np.nonzero(~np.eye(net.n, dtype=bool))
    dist = d[j, k]
    comm = frozenset(Link(int(a) + 1, int(b) + 1) for a, b, x in zip(j, k, dist) if x <= rc)
    intf = frozenset(Link(int(a) + 1, int(b) + 1) for a, b, x in zip(j, k, dist) if rc < x <= ri)
    return TwoTierGraph(net.n, comm, intf)


def has_primary_conflict(a: Link, b: Link) -> bool:
    return bool({a.tx, a.rx} & {b.tx, b.rx})


def has_secondary_conflict(a: Link, b: Link, g: TwoTierGraph) -> bool:
    """Either transmitter reaches the other link's receiver through any graph edge.

    Only meaningful when the two links have no primary conflict.
    """
    return g.has_edge(a.tx, b.rx) or g.has_edge(b.tx, a.rx)


def random_labeling(v: int, rng: Rng) -> tuple[int, ...]:
    """Random bijection vertex -> label; ``labels[j - 1]`` is the label of vertex j."""
    if v < 1:
        raise ValueError("need at least one vertex")
    return tuple(rng.permutation(v))


@dataclass(frozen=True)
class OrientedForest:
    edges: tuple[Link, ...]
    orientation: Literal["out", "in"]

    def __post_init__(self):
        if self.orientation not in ("out", "in"):
            raise ValueError(f"orientation must be 'out' or 'in', got {self.orientation!r}")
        # out: one incoming edge per vertex at most; in: one outgoing edge
        ends = [e.rx if self.orientation == "out" else e.tx for e in self.edges]
        if len(ends) != len(set(ends)):
            raise ValueError(f"{self.orientation}-oriented forest has a vertex with two {self.orientation}-edges")

    def keyed_vertex(self, e: Link) -> int:
        """The vertex whose label selects ``e``: head for out-forests, tail for in-forests."""
        return e.rx if self.orientation == "out" else e.tx


def undirected_bfs_forests(g: TwoTierGraph) -> list[list[tuple[int, int]]]:
    """Split the undirected communication graph into spanning forests.

    Each round runs BFS over the remaining edges, rooting at the lowest
    unvisited vertex and visiting neighbours in ascending id. Tree edges are
    returned as (parent, child) and removed before the next round.
    """
    adj: dict[int, set[int]] = {}
    for e in g.comm_edges:
        adj.setdefault(e.tx, set()).add(e.rx)
    forests = []
    while any(adj.values()):
        visited: set[int] = set()
        tree = []
        for root in sorted(adj):
            if root in visited or not adj[root]:
                continue
            visited.add(root)
            queue = deque([root])
            while queue:
                u = queue.popleft()
                for w in sorted(adj[u]):
                    if w not in visited:
                        visited.add(w)
                        tree.append((u, w))
                        queue.append(w)
        for u, w in tree:
            adj[u].discard(w)
            adj[w].discard(u)
        forests.append(tree)
    return forests


def decompose_into_oriented_forests(g: TwoTierGraph) -> list[OrientedForest]:
    forests = []
    for tree in undirected_bfs_forests(g):
        forests.append(OrientedForest(tuple(Link(p, c) for p, c in tree), "out"))
        forests.append(OrientedForest(tuple(Link(c, p) for p, c in tree), "in"))
    return forests


def forest_count(g: TwoTierGraph) -> int:
    """Number of undirected BFS forests: an upper bound on the graph thickness."""
    return len(undirected_bfs_forests(g))


def labeled_edge_order(forests: list[OrientedForest], labels: tuple[int, ...]) -> Iterator[Link]:
    """Yield edges forest by forest, and within a forest by ascending label of the keyed vertex.

    Labels with no associated edge in a forest (e.g. roots of an out-forest) are skipped.
    """
    for forest in forests:
        by_label = {labels[forest.keyed_vertex(e) - 1]: e for e in forest.edges}
        for j in range(1, len(labels) + 1):
            if j in by_label:
                yield by_label[j]
