import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stdma_sched import (
    FadingParams,
    GainMatrix,
    RadioParams,
    Rng,
    build_network,
    comm_range,
    faded_sinr,
    interference_range,
    linear_to_db,
    received_power,
    sample_gains,
    sinr,
    snr,
)
from stdma_sched.radio import power_matrix, slot_sinr


def test_received_power():
    # 90**4 = 65_610_000
    assert received_power(0.01, 90, 4) == pytest.approx(1.524158e-10, rel=1e-6)
    assert received_power(1, 1, 4) == 1
    assert received_power(0.01, 100, 4) == pytest.approx(1e-10, rel=1e-12)
    with pytest.raises(ValueError):
        received_power(1, 0, 4)


@pytest.mark.parametrize("rx, tx, others, want_db", [(2, 1, {3, 5}, 21.26), (4, 3, {1, 5}, 18.42), (6, 5, {1, 3}, 19.74)])
def test_fig1_sinr(fig1, exp1, rx, tx, others, want_db):
    assert linear_to_db(sinr(rx, tx, others, fig1, exp1)) == pytest.approx(want_db, abs=0.01)


def test_fig2_sinr(fig2, exp1):
    assert linear_to_db(sinr(2, 1, {3}, fig2, exp1)) == pytest.approx(20.91, abs=0.01)
    assert linear_to_db(sinr(4, 3, {1}, fig2, exp1)) == pytest.approx(20.91, abs=0.01)


def test_sinr_argument_checks(fig1, exp1):
    with pytest.raises(ValueError):
        sinr(1, 1, set(), fig1, exp1)
    with pytest.raises(ValueError):
        sinr(2, 1, {2}, fig1, exp1)
    with pytest.raises(ValueError):
        sinr(2, 1, {1}, fig1, exp1)


def test_snr(exp1):
    net = build_network([(0, 0), (100, 0), (190, 0)])
    assert snr(1, 2, net, exp1) == pytest.approx(100.0, rel=1e-12)
    assert snr(2, 3, net, exp1) == pytest.approx(0.01 / (1e-12 * 90**4), rel=1e-12)
    assert linear_to_db(snr(2, 3, net, exp1)) == pytest.approx(21.83, abs=0.01)
    assert sinr(2, 1, set(), net, exp1) == snr(1, 2, net, exp1)


def test_ranges(exp1, exp2):
    assert comm_range(exp1) == pytest.approx(100.0, abs=1e-9)
    assert interference_range(exp1) == pytest.approx(177.8, abs=0.05)
    assert comm_range(exp2) == pytest.approx(110.7, abs=0.05)
    assert interference_range(exp2) == pytest.approx(175.4, abs=0.05)
    unit = RadioParams(1.0, 1.0, 1.0000001, 0.5, 3.0)
    assert comm_range(unit) == pytest.approx(1.0, rel=1e-6)


radio_params = st.builds(
    lambda p, n, gc, gi_frac, a: RadioParams(p, n, gc, gc * gi_frac, a),
    st.floats(1e-4, 1.0),
    st.floats(1e-15, 1e-9),
    st.floats(1.01, 1e4),
    st.floats(0.01, 0.99),
    st.floats(2.0, 6.0),
)


@given(radio_params)
def test_range_properties(rp):
    rc = comm_range(rp)
    assert rc < interference_range(rp)
    net = build_network([(0, 0), (rc, 0)])
    assert snr(1, 2, net, rp) == pytest.approx(rp.gamma_c_linear, rel=1e-9)


@settings(max_examples=50)
@given(st.integers(0, 2**32))
def test_adding_interferer_decreases_sinr(seed):
    rng = Rng(seed)
    pts = list(zip(rng.random(6) * 300, rng.random(6) * 300))
    net = build_network(pts)
    rp = RadioParams.from_db(10, -90, 20, 10, 4)
    others = set()
    prev = sinr(2, 1, others, net, rp)
    for k in (3, 4, 5, 6):
        others.add(k)
        cur = sinr(2, 1, others, net, rp)
        assert cur < prev
        prev = cur


def test_faded_unit_gains_equal_sinr(exp1):
    rng = Rng(99)
    for _ in range(1000):
        net = build_network(list(zip(rng.random(5) * 400, rng.random(5) * 400)))
        unit = GainMatrix.unit(5)
        a = sinr(2, 1, {3, 5}, net, exp1)
        b = faded_sinr(2, 1, {3, 5}, net, exp1, unit)
        assert b == pytest.approx(a, rel=1e-12)


def test_faded_deep_fade_and_doubling(fig1, exp1):
    v = np.ones((6, 6))
    v[0, 1] = 0.0
    assert faded_sinr(2, 1, {3, 5}, fig1, exp1, GainMatrix(v, np.zeros((6, 6)))) == 0.0
    v[0, 1] = 2.0
    got = linear_to_db(faded_sinr(2, 1, {3, 5}, fig1, exp1, GainMatrix(v, np.zeros((6, 6)))))
    assert got == pytest.approx(24.27, abs=0.02)
    assert got == pytest.approx(linear_to_db(sinr(2, 1, {3, 5}, fig1, exp1)) + 10 * math.log10(2), abs=1e-9)


def test_shadowing_exponent_is_literal(fig1, exp1):
    w = np.zeros((6, 6))
    w[0, 1] = 1.0  # one unit of W multiplies the signal by 10, i.e. +10 dB
    got = faded_sinr(2, 1, {3, 5}, fig1, exp1, GainMatrix(np.ones((6, 6)), w))
    assert got == pytest.approx(10 * sinr(2, 1, {3, 5}, fig1, exp1), rel=1e-12)


def test_sample_gains_statistics():
    g = sample_gains(Rng(1), 317, FadingParams(1.0, 1.0))
    off = ~np.eye(317, dtype=bool)
    v, w = g.v[off], g.w[off]
    assert len(v) > 100_000
    assert v.mean() == pytest.approx(1.0, abs=0.02)
    assert w.var() == pytest.approx(1.0, abs=0.02)
    assert w.mean() == pytest.approx(0.0, abs=0.02)
    assert np.all(v >= 0)
    # ordered pairs are drawn independently
    assert not np.allclose(g.v, g.v.T)
    assert abs(np.corrcoef(g.v[off], g.v.T[off])[0, 1]) < 0.02


def test_sample_gains_deterministic():
    a = sample_gains(Rng(5), 10, FadingParams())
    b = sample_gains(Rng(5), 10, FadingParams())
    assert np.array_equal(a.v, b.v) and np.array_equal(a.w, b.w)


def test_fading_params_positive():
    with pytest.raises(ValueError):
        FadingParams(0.0, 1.0)
    with pytest.raises(ValueError):
        GainMatrix(-np.ones((2, 2)), np.zeros((2, 2)))


def test_slot_sinr_matches_scalar(fig1, exp1):
    from stdma_sched import Link

    links = [Link(1, 2), Link(3, 4), Link(5, 6)]
    vec = slot_sinr(links, power_matrix(fig1, exp1), exp1.noise_watts)
    for (t, r), got in zip(links, vec):
        others = {l.tx for l in links} - {t}
        assert got == pytest.approx(sinr(r, t, others, fig1, exp1), rel=1e-12)


def test_slot_sinr_with_gains_matches_scalar(fig1, exp1):
    from stdma_sched import Link

    gains = sample_gains(Rng(4), 6, FadingParams())
    links = [Link(1, 2), Link(3, 4), Link(5, 6)]
    vec = slot_sinr(links, power_matrix(fig1, exp1, gains), exp1.noise_watts)
    for (t, r), got in zip(links, vec):
        others = {l.tx for l in links} - {t}
        assert got == pytest.approx(faded_sinr(r, t, others, fig1, exp1, gains), rel=1e-12)
