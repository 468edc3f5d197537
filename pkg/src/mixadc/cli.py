"""Command-line interface: ``mixadc <subcommand> ...``.

Subcommands: gen-channel, allocate, enumerate, sweep, verify-report.
"""

import argparse
import logging
import sys

from .allocation import (
    BudgetTooSmall,
    GaParams,
    PowerModel,
    enumerate_bset,
    full_search,
    ga_search,
)
from .channel import DEFAULT_KAPPA, gen_ill_conditioned, gen_rayleigh, load_channel, save_channel
from .report import (
    atomic_write,
    csv_to_report,
    format_bits,
    load_config,
    plot_data_to_csv,
    report_to_csv,
    sweep_config,
)
from .simulation import SCHEMES, check_ordering, run_sweep

log = logging.getLogger("mixadc")


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _power_model(args):
    return PowerModel(c=args.c, f_s=args.fs, p_adc=args.budget)


def cmd_gen_channel(args):
    if args.model == "rayleigh":
        ch = gen_rayleigh(args.n, args.seed)
    else:
        if args.n < 2:
            raise SystemExit("gen-channel: --n must be >= 2 for ill-conditioned channels")
        ch = gen_ill_conditioned(args.n, args.kappa, args.seed)
    save_channel(ch, args.out)
    print(f"kappa = {ch.kappa:.6f}")
    return 0


def cmd_allocate(args):
    ch = load_channel(args.channel)
    p_u = 10.0 ** (args.snr_db / 10.0)
    pm = _power_model(args).for_paths(ch.n)
    if args.method == "full":
        out = full_search(ch, p_u, 1.0, pm)
    else:
        overrides = {k: v for k, v in (("k", args.k), ("l", args.l), ("t", args.t),
                                       ("p_cross", args.p_cross), ("p_mut", args.p_mut))
                     if v is not None}
        ga = GaParams.defaults(ch.n, seed=args.seed, **overrides)
        out = ga_search(ch, p_u, 1.0, pm, ga)
    if args.format == "csv":
        print("method,b_star,j_star,evaluations,halted_by")
        print(f"{args.method},{format_bits(out.b_star)},{out.j_star!r},"
              f"{out.evaluations},{out.halted_by}")
    else:
        print(f"b*          = {format_bits(out.b_star)}")
        print(f"J(b*)       = {out.j_star:.6g}")
        print(f"evaluations = {out.evaluations}")
        print(f"halted_by   = {out.halted_by}")
    return 0


def cmd_enumerate(args):
    pm = _power_model(args)
    bset = enumerate_bset(args.n, pm)
    if args.list:
        for b in bset:
            print(format_bits(b))
    if args.format == "csv":
        print(f"n,budget,count\n{args.n},{pm.for_paths(args.n).p_adc!r},{len(bset)}")
    else:
        print(len(bset))
    return 0


def cmd_sweep(args):
    doc = load_config(args.config) if args.config else {}
    flags = {
        "n": args.n, "trials": args.trials, "symbols_per_trial": args.symbols,
        "snr_db_grid": args.snr_db, "schemes": args.schemes, "seed": args.seed,
        "kappa_target": args.kappa, "channel_model": args.model,
        "fixed_channel": True if args.fixed_channel else None,
        "ga_k": args.k, "ga_l": args.l, "ga_t": args.t,
        "out": args.out, "plot_out": args.plot_out, "workers": args.workers,
    }
    doc.update({k: v for k, v in flags.items() if v is not None})
    out = doc.pop("out", None) or "sweep.csv"
    plot_out = doc.pop("plot_out", None)
    workers = doc.pop("workers", None) or 1
    doc.pop("verbose", None)
    cfg = sweep_config(doc)
    log.info("sweep: n=%d trials=%d snr=%s", cfg.n, cfg.trials, cfg.snr_db_grid)
    report = run_sweep(cfg, workers=workers)
    # everything is computed before any file is touched
    text = report_to_csv(report)
    plot_text = plot_data_to_csv(report) if plot_out else None
    atomic_write(out, text)
    if plot_text is not None:
        atomic_write(plot_out, plot_text)
    if args.format == "csv":
        sys.stdout.write(text)
    else:
        print(f"{'scheme':<12} {'snr_db':>7} {'mse':>12} {'mse_mc':>12}  b_chosen")
        for r in report.rows:
            print(f"{r.scheme:<12} {r.snr_db:>7g} {r.mse_closed_form:>12.5g} "
                  f"{r.mse_empirical:>12.5g}  {format_bits(r.b_chosen)}")
    return 0


def cmd_verify_report(args):
    with open(args.report, encoding="utf-8") as fh:
        report = csv_to_report(fh.read())
    problems = check_ordering(report, tol=args.tol)
    for p in problems:
        print(f"FAIL {p}")
    if problems:
        return 1
    print(f"OK ordering holds at {len({r.snr_db for r in report.rows})} SNR points")
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--format", choices=("human", "csv"), default="human")
    common.add_argument("-v", "--verbose", action="store_true")

    power = argparse.ArgumentParser(add_help=False)
    power.add_argument("--budget", type=float, default=None,
                       help="ADC power budget (default: all paths at 2 bits)")
    power.add_argument("--c", type=float, default=1.0, help="power per conversion step")
    power.add_argument("--fs", type=float, default=1.0, help="sampling rate")

    ga = argparse.ArgumentParser(add_help=False)
    ga.add_argument("--k", type=int, default=None, help="initial population")
    ga.add_argument("--l", type=int, default=None, help="max generations")
    ga.add_argument("--t", type=float, default=None, help="fitness threshold")

    parser = argparse.ArgumentParser(prog="mixadc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-channel", parents=[common], help="generate a channel file")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--kappa", type=float, default=DEFAULT_KAPPA)
    p.add_argument("--model", choices=("ill-conditioned", "rayleigh"),
                   default="ill-conditioned")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen_channel)

    p = sub.add_parser("allocate", parents=[common, power, ga],
                       help="search the best bit allocation for a channel")
    p.add_argument("--channel", required=True)
    p.add_argument("--snr-db", type=float, required=True)
    p.add_argument("--method", choices=("full", "ga"), default="ga")
    p.add_argument("--p-cross", type=float, default=None)
    p.add_argument("--p-mut", type=float, default=None)
    p.set_defaults(func=cmd_allocate)

    p = sub.add_parser("enumerate", parents=[common, power],
                       help="count the power-feasible allocations")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("sweep", parents=[common, ga], help="run an MSE-vs-SNR sweep")
    p.add_argument("--config")
    p.add_argument("--n", type=_positive_int)
    p.add_argument("--trials", type=_positive_int)
    p.add_argument("--symbols", type=_positive_int)
    p.add_argument("--snr-db", type=float, nargs="+")
    p.add_argument("--schemes", nargs="+", choices=SCHEMES)
    p.add_argument("--kappa", type=float)
    p.add_argument("--model", choices=("synthetic-ill-conditioned", "rayleigh"))
    p.add_argument("--fixed-channel", action="store_true")
    p.add_argument("--workers", type=_positive_int)
    p.add_argument("--out", help="report CSV (default sweep.csv)")
    p.add_argument("--plot-out", help="long-format plot data CSV")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify-report", parents=[common],
                       help="check the MSE ordering across schemes in a report")
    p.add_argument("report")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_verify_report)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command in ("gen-channel", "allocate") and args.seed is None:
        args.seed = 0
    try:
        return args.func(args)
    except (OSError, ValueError, BudgetTooSmall, RuntimeError) as exc:
        print(f"mixadc {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
