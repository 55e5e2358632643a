"""Path-loss power, SINR/SNR, the two ranges, and fading/shadowing gains."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .model import Link, Network, RadioParams
from .rng import Rng


def received_power(p: float, d: float, alpha: float) -> float:
    if not d > 0:
        raise ValueError(f"distance must be positive, got {d}")
    return p / d**alpha


def comm_range(rp: RadioParams) -> float:
    return (rp.power_watts / (rp.noise_watts * rp.gamma_c_linear)) ** (1.0 / rp.alpha)


def interference_range(rp: RadioParams) -> float:
    return (rp.power_watts / (rp.noise_watts * rp.gamma_i_linear)) ** (1.0 / rp.alpha)


def snr(tx: int, rx: int, net: Network, rp: RadioParams) -> float:
    if tx == rx:
        raise ValueError("transmitter and receiver must differ")
    return received_power(rp.power_watts, net.distance(tx, rx), rp.alpha) / rp.noise_watts


def _check_sinr_args(rx, tx, other_txs):
    if tx == rx:
        raise ValueError("transmitter and receiver must differ")
    if rx in other_txs:
        raise ValueError(f"receiver {rx} is also transmitting")
    if tx in other_txs:
        raise ValueError(f"transmitter {tx} listed among interferers")


def sinr(rx: int, tx: int, other_txs: Iterable[int], net: Network, rp: RadioParams) -> float:
    """Linear SINR at ``rx`` for the wanted signal from ``tx`` with ``other_txs`` active."""
    others = set(other_txs)
    _check_sinr_args(rx, tx, others)
    signal = received_power(rp.power_watts, net.distance(tx, rx), rp.alpha)
    intf = sum(received_power(rp.power_watts, net.distance(k, rx), rp.alpha) for k in sorted(others))
    return signal / (rp.noise_watts + intf)


@dataclass(frozen=True)
class FadingParams:
    sigma_v_sq: float = 1.0  # mean of the exponential Rayleigh power gain
    sigma_w: float = 1.0  # std of the Gaussian shadowing exponent

    def __post_init__(self):
        if not (self.sigma_v_sq > 0 and self.sigma_w > 0):
            raise ValueError("fading parameters must be positive")


@dataclass(frozen=True, eq=False)
class GainMatrix:
    """Per ordered pair gains: ``v[k-1, l-1]`` and ``w[k-1, l-1]`` for path k -> l."""

    v: np.ndarray
    w: np.ndarray

    def __post_init__(self):
        v = np.array(self.v, dtype=float)
        w = np.array(self.w, dtype=float)
        if v.shape != w.shape or v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ValueError("v and w must be equal square matrices")
        if not (np.all(np.isfinite(v)) and np.all(v >= 0) and np.all(np.isfinite(w))):
            raise ValueError("v must be finite and non-negative, w finite")
        v.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "w", w)

    @classmethod
    def unit(cls, n: int) -> "GainMatrix":
        return cls(np.ones((n, n)), np.zeros((n, n)))

    def factor(self) -> np.ndarray:
        # 10**w, not 10**(w/10): the shadowing exponent is used as written in the model
        return self.v * 10.0**self.w


def sample_gains(rng: Rng, n: int, fp: FadingParams) -> GainMatrix:
    if n < 2:
        raise ValueError("need at least 2 nodes")
    v = rng.exponential(fp.sigma_v_sq, n * n).reshape(n, n)
    w = rng.normal(fp.sigma_w, n * n).reshape(n, n)
    np.fill_diagonal(v, 0.0)
    np.fill_diagonal(w, 0.0)
    return GainMatrix(v, w)


def faded_sinr(rx, tx, other_txs, net: Network, rp: RadioParams, gains: GainMatrix) -> float:
    others = set(other_txs)
    _check_sinr_args(rx, tx, others)

    def path(k):
        p = received_power(rp.power_watts, net.distance(k, rx), rp.alpha)
        return p * gains.v[k - 1, rx - 1] * 10.0 ** gains.w[k - 1, rx - 1]

    intf = sum(path(k) for k in sorted(others))
    return path(tx) / (rp.noise_watts + intf)


def power_matrix(net: Network, rp: RadioParams, gains: GainMatrix | None = None) -> np.ndarray:
    """``M[k-1, l-1]`` = power received at l from k; diagonal is zero."""
    d = net.distances.copy()
    np.fill_diagonal(d, 1.0)
    m = rp.power_watts / d**rp.alpha
    if gains is not None:
        m = m * gains.factor()
    np.fill_diagonal(m, 0.0)
    return m


def slot_sinr(links: Sequence[Link], pmat: np.ndarray, noise_watts: float) -> np.ndarray:
    """Linear SINR at every receiver when all ``links`` transmit together.

    ``pmat`` comes from :func:`power_matrix`. The links must be node-disjoint.
    """
    tx = np.fromiter((l.tx - 1 for l in links), dtype=np.intp, count=len(links))
    rx = np.fromiter((l.rx - 1 for l in links), dtype=np.intp, count=len(links))
    cross = pmat[np.ix_(tx, rx)]
    signal = cross.diagonal().copy()
    np.fill_diagonal(cross, 0.0)
    return signal / (noise_watts + cross.sum(axis=0))


def to_db(x: float) -> float:
    return 10.0 * math.log10(x) if x > 0 else -math.inf
