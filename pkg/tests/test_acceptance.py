"""Exit criteria. Each test records one PASS/FAIL line, printed in the terminal summary."""

import time
from statistics import fmean

import pytest
from scipy import stats

from stdma_sched import (
    Rng,
    build_two_tier_graph,
    conflict_free_link_schedule,
    derive_seed,
    optimal_schedule_bruteforce,
    spatial_reuse,
    verify_schedule,
)
from stdma_sched.cli import main
from stdma_sched.harness import PRESETS, generate_network, run_experiment, run_paper_examples, with_overrides
from stdma_sched.radio import FadingParams

from .conftest import ACCEPTANCE_LINES

EXP1 = PRESETS["exp1"]
COMPARE_NODES = (70, 90, 110)
COMPARE_TRIALS = 200


def record(number, title, passed, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] {number}. {title}: {detail}")
    assert passed, detail


@pytest.fixture(scope="module")
def comparison_records():
    preset = with_overrides(EXP1, trials=COMPARE_TRIALS, node_counts=COMPARE_NODES, fading=FadingParams(1.0, 1.0))
    return run_experiment(preset, master_seed=2024)


def _means(records, algorithm, fading):
    out = {}
    for n in COMPARE_NODES:
        out[n] = [r.spatial_reuse for r in records if r.n_nodes == n and r.algorithm == algorithm and r.fading == fading]
    return out


def test_1_worked_examples():
    start = time.perf_counter()
    checks = run_paper_examples()
    code = main(["verify-paper"])
    elapsed = time.perf_counter() - start
    worst = max(abs(c.actual - c.expected) / c.tolerance for c in checks)
    passed = code == 0 and all(c.passed for c in checks) and elapsed < 1.0
    record(1, "worked-example regression", passed,
           f"{len(checks)} checks, worst error {worst:.2f} of tolerance, {elapsed:.3f} s")


def test_2_cfls_conflict_free():
    rp = EXP1.radio
    violations = 0
    disagreements = 0
    n_nets = 500
    for i in range(n_nets):
        n = (30, 70, 110)[i % 3]
        seed = derive_seed("accept-2", i)
        net = generate_network(n, EXP1.R, Rng(seed))
        g = build_two_tier_graph(net, rp)
        s = conflict_free_link_schedule(net, g, rp, Rng(derive_seed(seed, "label")))
        report = verify_schedule(net, g, s, rp)
        violations += len(report.violations)
        if s.num_slots and report.spatial_reuse != spatial_reuse(net, s, rp):
            disagreements += 1
    record(2, "CFLS passes independent verifier", violations == 0 and disagreements == 0,
           f"{n_nets} networks (N in 30/70/110), {violations} violations, {disagreements} verifier/scheduler disagreements")


def _small_instances(count):
    rp = EXP1.radio
    i = 0
    while count:
        rng = Rng(derive_seed("accept-3", i))
        i += 1
        net = generate_network(3 + rng.below(4), 150.0, rng)
        g = build_two_tier_graph(net, rp)
        if 1 <= len(g.comm_edges) <= 8:
            count -= 1
            yield net, g, rng


def test_3_oracle_dominance():
    rp = EXP1.radio
    worse = optimal_hits = 0
    dirty = 0
    for net, g, rng in _small_instances(200):
        best = optimal_schedule_bruteforce(net, g, rp)
        s = conflict_free_link_schedule(net, g, rp, rng)
        dirty += (not verify_schedule(net, g, best, rp).ok) + (not verify_schedule(net, g, s, rp).ok)
        ours, opt = spatial_reuse(net, s, rp), spatial_reuse(net, best, rp)
        worse += ours > opt
        optimal_hits += ours == opt
    passed = worse == 0 and optimal_hits >= 1 and dirty == 0
    record(3, "oracle dominance", passed,
           f"200 instances, CFLS above optimum {worse}x, at optimum {optimal_hits}x, unclean schedules {dirty}")


def test_4_identity(comparison_records):
    cfls = [r for r in comparison_records if r.algorithm == "cfls" and not r.fading]
    bad = [r for r in cfls if r.num_slots and r.spatial_reuse != r.num_comm_edges / r.num_slots]
    bad += [r for r in cfls if not r.num_slots and r.num_comm_edges]
    record(4, "sigma * C = |E_c| for CFLS", not bad, f"{len(cfls)} records, {len(bad)} mismatches")


def test_5_cfls_beats_baseline(comparison_records):
    cfls = _means(comparison_records, "cfls", False)
    base = _means(comparison_records, "graph-baseline", False)
    parts, passed = [], True
    for n in COMPARE_NODES:
        a, b = fmean(cfls[n]), fmean(base[n])
        p = stats.ttest_rel(cfls[n], base[n], alternative="greater").pvalue
        passed &= a > b and p < 0.01
        parts.append(f"N={n}: {a:.3f} vs {b:.3f} (+{100 * (a / b - 1):.1f}%, p={p:.1e})")
    record(5, "CFLS spatial reuse above graph baseline", passed, "; ".join(parts))


def test_6_fading_degradation(comparison_records):
    parts, passed = [], True
    for algo in ("cfls", "graph-baseline"):
        clear = _means(comparison_records, algo, False)
        faded = _means(comparison_records, algo, True)
        for n in COMPARE_NODES:
            a, b = fmean(clear[n]), fmean(faded[n])
            reduction = 1 - b / a
            ok = b < a and 0.10 <= reduction <= 0.50
            passed &= ok
            parts.append(f"{algo} N={n}: -{100 * reduction:.1f}%{'' if ok else ' (out of band)'}")
    record(6, "fading reduces spatial reuse by 10-50%", passed, "; ".join(parts))


def test_7_determinism(tmp_path):
    args = ["experiment", "--preset", "exp1", "--fading", "--trials", "10", "--nodes", "30,70,110", "--seed", "77"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(args + ["--out", str(a)])
    main(args + ["--out", str(b)])
    same = a.read_bytes() == b.read_bytes()
    record(7, "byte-identical results.csv", same, f"{len(a.read_bytes())} bytes, identical={same}")


def test_8_runtime():
    rp = EXP1.radio
    net = generate_network(110, EXP1.R, Rng(derive_seed("accept-8")))
    start = time.perf_counter()
    g = build_two_tier_graph(net, rp)
    s = conflict_free_link_schedule(net, g, rp, Rng(1))
    elapsed = time.perf_counter() - start
    record(8, "CFLS on N=110 under 2 s", elapsed < 2.0, f"{elapsed:.3f} s for {len(g.comm_edges)} links, {s.num_slots} slots")
