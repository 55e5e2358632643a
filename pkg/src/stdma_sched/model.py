"""Core domain types, unit conversions and JSON (de)serialization.

Internal units are SI: watts, meters, linear power ratios. dB, dBm and mW
only appear in the ``from_db``/``to_dict`` boundary helpers.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, NamedTuple

import numpy as np


def _finite(x, name="value"):
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"{name} must be finite, got {x}")
    return x


def db_to_linear(x_db: float) -> float:
    return 10.0 ** (_finite(x_db, "x_db") / 10.0)


def linear_to_db(x: float) -> float:
    x = _finite(x, "x")
    if x <= 0:
        raise ValueError(f"cannot express non-positive ratio {x} in dB")
    return 10.0 * math.log10(x)


def dbm_to_watts(x_dbm: float) -> float:
    return 10.0 ** (_finite(x_dbm, "x_dbm") / 10.0) / 1000.0


def watts_to_dbm(w: float) -> float:
    return linear_to_db(w * 1000.0)


@dataclass(frozen=True)
class RadioParams:
    """Uniform transmit power, noise power, the two SINR thresholds and the path-loss exponent."""

    power_watts: float
    noise_watts: float
    gamma_c_linear: float
    gamma_i_linear: float
    alpha: float

    def __post_init__(self):
        for name in ("power_watts", "noise_watts", "gamma_c_linear", "gamma_i_linear", "alpha"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be positive and finite, got {value}")
        if not self.gamma_i_linear < self.gamma_c_linear:
            raise ValueError(
                f"interference threshold ({self.gamma_i_linear}) must be below "
                f"communication threshold ({self.gamma_c_linear})"
            )

    @classmethod
    def from_db(cls, power_mw, noise_dbm, gamma_c_db, gamma_i_db, alpha):
        return cls(
            power_watts=_finite(power_mw, "power_mw") / 1000.0,
            noise_watts=dbm_to_watts(noise_dbm),
            gamma_c_linear=db_to_linear(gamma_c_db),
            gamma_i_linear=db_to_linear(gamma_i_db),
            alpha=_finite(alpha, "alpha"),
        )

    @classmethod
    def from_dict(cls, d: dict) -> "RadioParams":
        missing = {"power_mw", "noise_dbm", "gamma_c_db", "gamma_i_db", "alpha"} - d.keys()
        if missing:
            raise ValueError(f"params missing keys: {sorted(missing)}")
        return cls.from_db(d["power_mw"], d["noise_dbm"], d["gamma_c_db"], d["gamma_i_db"], d["alpha"])

    def to_dict(self) -> dict:
        return {
            "power_mw": self.power_watts * 1000.0,
            "noise_dbm": watts_to_dbm(self.noise_watts),
            "gamma_c_db": linear_to_db(self.gamma_c_linear),
            "gamma_i_db": linear_to_db(self.gamma_i_linear),
            "alpha": self.alpha,
        }


class Link(NamedTuple):
    """Directed transmitter -> receiver pair of 1-based node ids.

    ``tx != rx`` is not enforced here so that malformed schedules can be
    loaded and reported by the verifier instead of crashing the loader.
    """

    tx: int
    rx: int

    def __str__(self):
        return f"{self.tx}->{self.rx}"


@dataclass(frozen=True, eq=False)
class Network:
    """Node coordinates in meters; node ``j`` lives at row ``j - 1``."""

    coords: np.ndarray
    distances: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        coords = np.array(self.coords, dtype=float)
        if coords.ndim != 2 or coords.shape[1] != 2:
            raise ValueError(f"coords must have shape (n, 2), got {coords.shape}")
        if len(coords) < 2:
            raise ValueError("a network needs at least 2 nodes")
        if not np.all(np.isfinite(coords)):
            raise ValueError("coordinates must be finite")
        diff = coords[:, None, :] - coords[None, :, :]
        dist = np.hypot(diff[..., 0], diff[..., 1])
        off = dist + np.eye(len(coords))
        if np.any(off == 0):
            j, k = map(int, np.argwhere(off == 0)[0])
            raise ValueError(f"nodes {j + 1} and {k + 1} share coordinates {tuple(coords[j])}")
        coords.setflags(write=False)
        dist.setflags(write=False)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "distances", dist)

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def node_ids(self) -> range:
        return range(1, self.n + 1)

    def distance(self, j: int, k: int) -> float:
        return float(self.distances[j - 1, k - 1])

    def has_node(self, j) -> bool:
        return isinstance(j, (int, np.integer)) and 1 <= j <= self.n

    def to_dict(self) -> dict:
        return {"nodes": [{"id": i + 1, "x": float(x), "y": float(y)} for i, (x, y) in enumerate(self.coords)]}

    @classmethod
    def from_dict(cls, d: dict) -> "Network":
        nodes = sorted(d["nodes"], key=lambda node: node["id"])
        ids = [node["id"] for node in nodes]
        if ids != list(range(1, len(ids) + 1)):
            raise ValueError(f"node ids must be exactly 1..N, got {ids}")
        return cls(np.array([[node["x"], node["y"]] for node in nodes], dtype=float))


def build_network(coords: Iterable[tuple[float, float]]) -> Network:
    return Network(np.asarray(list(coords), dtype=float))


@dataclass(frozen=True)
class Schedule:
    """Ordered slots of links. Empty slots are dropped on construction."""

    slots: tuple[tuple[Link, ...], ...]

    def __post_init__(self):
        slots = tuple(tuple(Link(int(t), int(r)) for t, r in slot) for slot in self.slots)
        object.__setattr__(self, "slots", tuple(s for s in slots if s))

    @property
    def num_slots(self) -> int:
        return len(self.slots)

    def links(self) -> list[Link]:
        return [link for slot in self.slots for link in slot]

    def to_dict(self) -> dict:
        return {"slots": [[{"tx": l.tx, "rx": l.rx} for l in slot] for slot in self.slots]}

    @classmethod
    def from_dict(cls, d: dict) -> "Schedule":
        return cls(tuple(tuple(Link(e["tx"], e["rx"]) for e in slot) for slot in d["slots"]))


def load_json(path) -> dict:
    return json.loads(Path(path).read_text())


def dump_json(obj: dict, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2) + "\n")
