"""Command-line interface: benchmarks, HI verification, and the demo.

Exit codes: 0 success, 2 usage error (argparse), 1 runtime error.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import bench
from .dynamics import CutoffSimulator, counterexample_structures
from .hiverify import (
    amortized_counterexample_check,
    detour_strategy,
    pure_insert_strategy,
    shi_check,
    whi_check,
)
from .pairing import PairedDict
from .structures import ZipZipTree
from .thresholding import ThresholdedDict


def _int_list(text):
    return [int(x) for x in text.split(",") if x]


def _float_list(text):
    return [float(x) for x in text.split(",") if x]


def _structures(text):
    names = [x.strip() for x in text.split(",") if x.strip()]
    for name in names:
        if name not in bench.STRUCTURE_NAMES:
            raise argparse.ArgumentTypeError(
                "unknown structure %r (choose from %s)"
                % (name, ", ".join(bench.STRUCTURE_NAMES))
            )
    return names


def _add_common(p):
    p.add_argument("--n", type=int, default=2000)
    p.add_argument("--n-list", type=_int_list, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--alpha-list", type=_float_list, default=None)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--gamma", type=float, default=1.0,
                   help="paired search budget coefficient (presets: 1.3863, 3.82)")
    p.add_argument("--queries", type=int, default=100_000)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--structures", type=_structures,
                   default=list(bench.STRUCTURE_NAMES))
    p.add_argument("--csv", default=None, metavar="PATH")
    p.add_argument("--svg", default=None, metavar="PATH")


def build_parser():
    parser = argparse.ArgumentParser(prog="hidict")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bench", help="comparison-count benchmarks")
    bsub = b.add_subparsers(dest="test", required=True)
    for name in ("zipf-param", "noisy-zipf", "inverse-power", "size"):
        _add_common(bsub.add_parser(name))

    v = sub.add_parser("verify", help="history-independence verification")
    vsub = v.add_subparsers(dest="mode", required=True)
    vs = vsub.add_parser("shi")
    vs.add_argument("--universe", type=int, default=128)
    vs.add_argument("--trials", type=int, default=1000)
    vs.add_argument("--seed", type=int, default=0)
    vw = vsub.add_parser("whi")
    vw.add_argument("--n-list", type=_int_list, default=[5, 16, 33])
    vw.add_argument("--samples", type=int, default=10_000)
    vw.add_argument("--seed", type=int, default=0)

    d = sub.add_parser("demo", help="demonstrations")
    dsub = d.add_subparsers(dest="demo", required=True)
    dc = dsub.add_parser("counterexample")
    dc.add_argument("--seed", type=int, default=0)
    return parser


def _emit(rows, args):
    for r in rows:
        print("%s %s n=%d alpha=%g delta=%g avg=%.4f max=%d nodes=%d"
              % (r.test, r.structure, r.n, r.alpha, r.delta,
                 r.avg_comparisons, r.max_comparisons, r.nodes))
    if args.csv:
        bench.emit_csv(rows, args.csv)
        print("wrote %s" % args.csv)
    if args.svg:
        chart = "line" if rows and rows[0].test in ("noisy-zipf", "inverse-power", "size") else "bar"
        bench.emit_svg(rows, args.svg, chart)
        print("wrote %s" % args.svg)


def _cmd_bench(args):
    if args.test == "zipf-param":
        alphas = args.alpha_list or ([args.alpha] if args.alpha is not None else [1.0, 2.0, 3.0])
        rows = bench.run_zipf_param(args.structures, alphas, n=args.n,
                                    queries=args.queries, trials=args.trials,
                                    master_seed=args.seed, gamma=args.gamma)
    elif args.test == "noisy-zipf":
        rows = bench.run_noisy_zipf(
            args.structures, args.n_list or bench.DEFAULT_N_LIST,
            alpha=args.alpha if args.alpha is not None else 2.0,
            delta=args.delta if args.delta is not None else 0.9,
            queries=args.queries, trials=args.trials,
            master_seed=args.seed, gamma=args.gamma)
    elif args.test == "inverse-power":
        rows = bench.run_inverse_power(
            args.structures, args.n_list or bench.DEFAULT_N_LIST,
            alpha=args.alpha if args.alpha is not None else 1.01,
            delta=args.delta if args.delta is not None else 0.9,
            queries=args.queries, trials=args.trials,
            master_seed=args.seed, gamma=args.gamma)
    else:
        rows = bench.run_size(args.structures, args.n_list or bench.DEFAULT_N_LIST,
                              master_seed=args.seed, gamma=args.gamma)
    _emit(rows, args)
    return 0


def _cmd_verify_shi(args):
    factories = {
        "zipzip": lambda: ZipZipTree(args.seed),
        "threshold-zipzip": lambda: ThresholdedDict(args.seed, capacity=2 * args.universe),
        "paired-zipzip": lambda: PairedDict(args.seed, capacity=2 * args.universe),
    }
    ok = True
    for name, factory in factories.items():
        exhaustive = shi_check(factory, 6, 0, args.seed)
        randomized = shi_check(factory, args.universe, args.trials, args.seed)
        mism = exhaustive.mismatches + randomized.mismatches
        trials = exhaustive.trials + randomized.trials
        ok = ok and mism == 0
        print("shi %-18s trials=%d mismatches=%d %s"
              % (name, trials, mism, "PASS" if mism == 0 else "FAIL"))
    neg = amortized_counterexample_check(args.seed)
    neg_ok = neg.mismatches >= 1
    ok = ok and neg_ok
    print("shi negative-control mismatches=%d %s"
          % (neg.mismatches, "PASS" if neg_ok else "FAIL"))
    print("RESULT verify-shi pass=%s" % str(ok).lower())
    return 0 if ok else 1


def _cmd_verify_whi(args):
    ok = True
    factory = lambda s: CutoffSimulator("whi", random.Random(s))
    for n in args.n_list:
        report = whi_check(factory, n, args.samples,
                           [pure_insert_strategy(n), detour_strategy(n, 1),
                            detour_strategy(n, 3)], args.seed)
        ok = ok and report.passed
        print("whi n=%d samples=%d tv=%.4f %s"
              % (n, args.samples, report.tv_distance,
                 "PASS" if report.passed else "FAIL"))
    print("RESULT verify-whi pass=%s" % str(ok).lower())
    return 0 if ok else 1


def _cmd_demo(args):
    x, y = counterexample_structures(args.seed)
    print("trace X: insert 1,2,3,4 then delete 4 -> n=%d N=%d" % (x.n, x.N))
    print("trace Y: insert 1,2,3             -> n=%d N=%d" % (y.n, y.N))
    print("contents equal: %s" % (sorted(x.keys()) == sorted(y.keys())))
    print("fingerprints equal: %s" % (x.fingerprint() == y.fingerprint()))
    print("the cutoff (and the stored weights it implies) leaks the history")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "bench":
            return _cmd_bench(args)
        if args.command == "verify":
            return _cmd_verify_shi(args) if args.mode == "shi" else _cmd_verify_whi(args)
        return _cmd_demo(args)
    except Exception as exc:  # runtime failures -> exit 1 with a message
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
