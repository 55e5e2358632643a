"""Command line entry point: ``stdma <subcommand> ...``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import harness
from .graph import build_two_tier_graph
from .model import Network, RadioParams, Schedule, dump_json, load_json
from .radio import FadingParams, sample_gains
from .rng import Rng
from .verify import InstanceTooLarge, optimal_schedule_bruteforce, spatial_reuse, verify_schedule


def _load(args):
    net = Network.from_dict(load_json(args.net))
    rp = RadioParams.from_dict(load_json(args.params))
    return net, rp


def cmd_gen(args):
    net = harness.generate_network(args.nodes, args.radius, Rng(args.seed))
    dump_json(net.to_dict(), args.out)


def cmd_graph(args):
    net, rp = _load(args)
    Path(args.out).write_text(build_two_tier_graph(net, rp).to_edge_list())


def cmd_schedule(args):
    net, rp = _load(args)
    g = build_two_tier_graph(net, rp)
    schedule = harness.ALGORITHMS[args.algo](net, g, rp, Rng(args.seed))
    dump_json(schedule.to_dict(), args.out)
    print(f"{args.algo}: {len(g.comm_edges)} links in {schedule.num_slots} slots", file=sys.stderr)


def cmd_evaluate(args):
    net, rp = _load(args)
    schedule = Schedule.from_dict(load_json(args.schedule))
    report = verify_schedule(net, build_two_tier_graph(net, rp), schedule, rp)
    out = report.to_dict()
    if args.fading:
        gains = sample_gains(Rng(args.seed), net.n, FadingParams(args.sigma_v**2, args.sigma_w))
        out["spatial_reuse_fading"] = spatial_reuse(net, schedule, rp, gains) if schedule.num_slots else 0.0
    dump_json(out, args.out)
    print(f"spatial reuse {report.spatial_reuse:.4f}, {len(report.violations)} violation(s)", file=sys.stderr)
    return 0 if report.ok else 1


def cmd_experiment(args):
    preset = harness.with_overrides(
        harness.PRESETS[args.preset],
        trials=args.trials,
        node_counts=[int(x) for x in args.nodes.split(",")] if args.nodes else None,
        fading=FadingParams(args.sigma_v**2, args.sigma_w) if args.fading else None,
    )
    records = harness.run_experiment(preset, args.algos.split(","), args.seed, workers=args.workers)
    Path(args.out).write_text(harness.records_to_csv(records))
    for row in harness.summarize(records):
        print(
            f"n={row['n_nodes']:4d} {row['algorithm']:15s} fading={int(row['fading'])} "
            f"sigma={row['mean_spatial_reuse']:.3f} slots={row['mean_slots']:.1f} "
            f"edges={row['mean_comm_edges']:.1f} forests={row['mean_forests']:.2f}",
            file=sys.stderr,
        )


def cmd_oracle(args):
    net, rp = _load(args)
    try:
        schedule = optimal_schedule_bruteforce(net, build_two_tier_graph(net, rp), rp, args.max_edges)
    except InstanceTooLarge as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    dump_json(schedule.to_dict(), args.out)


def cmd_verify_paper(args):
    checks = harness.run_paper_examples()
    print(harness.format_checks(checks))
    return 0 if all(c.passed for c in checks) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stdma", description="SINR-aware STDMA link scheduling")
    sub = p.add_subparsers(dest="command", required=True)

    def net_params(sp):
        sp.add_argument("--net", required=True)
        sp.add_argument("--params", required=True)

    sp = sub.add_parser("gen", help="random uniform-disc network")
    sp.add_argument("--nodes", type=int, required=True)
    sp.add_argument("--radius", type=float, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("graph", help="dump the two-tier graph as an edge list")
    net_params(sp)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_graph)

    sp = sub.add_parser("schedule", help="compute a link schedule")
    net_params(sp)
    sp.add_argument("--algo", choices=sorted(harness.ALGORITHMS), default="cfls")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_schedule)

    sp = sub.add_parser("evaluate", help="verify a schedule and compute spatial reuse")
    net_params(sp)
    sp.add_argument("--schedule", required=True)
    sp.add_argument("--fading", action="store_true")
    sp.add_argument("--sigma-v", type=float, default=1.0)
    sp.add_argument("--sigma-w", type=float, default=1.0)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_evaluate)

    sp = sub.add_parser("experiment", help="Monte Carlo spatial-reuse experiment")
    sp.add_argument("--preset", choices=sorted(harness.PRESETS), required=True)
    sp.add_argument("--fading", action="store_true")
    sp.add_argument("--sigma-v", type=float, default=1.0)
    sp.add_argument("--sigma-w", type=float, default=1.0)
    sp.add_argument("--trials", type=int)
    sp.add_argument("--nodes", help="comma-separated node counts overriding the preset")
    sp.add_argument("--algos", default="cfls,graph-baseline")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_experiment)

    sp = sub.add_parser("oracle", help="brute-force optimal schedule for tiny networks")
    net_params(sp)
    sp.add_argument("--max-edges", type=int, default=8)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("verify-paper", help="recompute the worked examples and ranges")
    sp.set_defaults(func=cmd_verify_paper)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args) or 0


if __name__ == "__main__":
    sys.exit(main())
