"""Experiment runner: exchange / dof / eavesdrop subcommands.

Output is plain CSV with a ``#``-prefixed manifest block (config echo,
master seed, version, resample count, wall time) so any row can be
reproduced from the file alone.

Exit codes: 0 ok, 2 bad flags or unusable grid, 3 numeric failure after
the resample cap.
"""

import argparse
import io
import sys
import time

import numpy as np

from . import __version__, channel, decryption, metrics, pipeline
from .errors import InsufficientGrid, MaxResamplesExceeded

EXIT_BAD_FLAGS = 2
EXIT_NUMERIC = 3


def _add_common(p):
    p.add_argument("--users", "-K", type=int, default=4)
    p.add_argument("--antennas", "-M", type=int, default=0,
                   help="antennas per node (default K-1)")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--payload-bits", type=int, default=64, metavar="L")
    p.add_argument("--noise-variance", type=float, default=1.0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", type=str, default=None, metavar="PATH")


def build_parser():
    ap = argparse.ArgumentParser(prog="kwayrelay")
    sub = ap.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("exchange", help="full aligned-scheme exchange trials")
    _add_common(ex)
    ex.add_argument("--snr-db", type=float, default=40.0)

    dof = sub.add_parser("dof", help="sum-rate SNR sweep and slope fit")
    _add_common(dof)
    dof.add_argument("--scheme", choices=("aligned", "tdma"), default="aligned")
    dof.add_argument("--snr-start", type=float, default=40.0)
    dof.add_argument("--snr-stop", type=float, default=60.0)
    dof.add_argument("--step", type=float, default=5.0)

    ev = sub.add_parser("eavesdrop", help="keyless-observer ambiguity report")
    _add_common(ev)
    ev.add_argument("--with-key", type=int, default=None, metavar="USER",
                    help="sanity inversion: give the observer user's key")
    return ap


def _manifest(out, args, extra):
    cfgpairs = sorted(vars(args).items())
    out.write("# kwayrelay %s\n" % __version__)
    out.write("# config: %s\n" % " ".join("%s=%s" % kv for kv in cfgpairs
                                          if kv[0] != "out"))
    for k, v in extra.items():
        out.write("# %s: %s\n" % (k, v))


def _emit(args, render):
    buf = io.StringIO()
    render(buf)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())


def cmd_exchange(args):
    cfg = channel.SimConfig(K=args.users, M=args.antennas or args.users - 1,
                            snr=10.0 ** (args.snr_db / 10.0),
                            master_seed=args.seed, trials=args.trials,
                            noise_variance=args.noise_variance,
                            payload_bits=args.payload_bits)
    t0 = time.time()
    results = pipeline.run_trials(cfg, threads=args.threads)
    k = cfg.K
    wrong = np.zeros((k, k), dtype=np.int64)
    for r in results:
        wrong += ~r.message_ok
    resamples = sum(r.resamples for r in results)

    def render(out):
        _manifest(out, args, {
            "master_seed": cfg.master_seed,
            "resamples": resamples,
            "mer_overall": float(wrong[~np.eye(k, dtype=bool)].sum()
                                 / (cfg.trials * k * (k - 1))),
            "wall_time_s": round(time.time() - t0, 3),
        })
        out.write("trial,user,source,bits_total,bits_wrong,recovered_ok\n")
        for r in results:
            for j in range(k):
                for i in range(k):
                    if i == j:
                        continue
                    out.write("%d,%d,%d,%d,%d,%d\n" % (
                        r.trial, j, i, cfg.payload_bits,
                        r.bits_wrong[j, i], int(r.message_ok[j, i])))

    _emit(args, render)
    return 0


def cmd_dof(args):
    grid = list(np.arange(args.snr_start, args.snr_stop + 1e-9, args.step))
    m = args.antennas or args.users - 1
    t0 = time.time()
    try:
        est, resamples = pipeline.dof_curve(
            args.scheme, args.users, m, grid, args.trials, args.seed,
            noise_variance=args.noise_variance, threads=args.threads)
    except InsufficientGrid as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_BAD_FLAGS

    def render(out):
        _manifest(out, args, {
            "master_seed": args.seed,
            "slope": "%.6f" % est.slope,
            "wall_time_s": round(time.time() - t0, 3),
        })
        out.write("snr_db,scheme,sum_rate,resamples\n")
        for snr_db, rate, rs in zip(est.snr_grid_db, est.sum_rates, resamples):
            out.write("%g,%s,%.6f,%d\n" % (snr_db, est.scheme, rate, rs))

    _emit(args, render)
    return 0


def cmd_eavesdrop(args):
    rng = channel.make_rng(args.seed, 0, channel.TAG_MESSAGES)
    k = args.users
    messages = rng.integers(0, 2, size=(k, args.payload_bits)).astype(np.uint8)
    chain = decryption.build_chain(messages)
    known_user = args.with_key
    known_message = messages[known_user] if known_user is not None else None
    rep = decryption.eavesdrop_ambiguity(chain, known_user=known_user,
                                         known_message=known_message)

    def render(out):
        _manifest(out, args, {"master_seed": args.seed})
        counts = np.unique(rep.consistent_per_bit)
        out.write("consistent tuples per bit: %s\n"
                  % ("/".join(str(c) for c in counts)))
        out.write("messages determined: %d\n" % rep.determined_messages)
        out.write("consistent tuples complementary: %s\n" % rep.complementary)

    _emit(args, render)
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    handlers = {"exchange": cmd_exchange, "dof": cmd_dof,
                "eavesdrop": cmd_eavesdrop}
    try:
        return handlers[args.command](args)
    except MaxResamplesExceeded as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
