"""Command-line entry points for golden-file emission."""

from __future__ import annotations

import argparse
import sys

from .emit import emit_drug_ranking, emit_logp_golden, emit_unique_counts
from .stack import abort_if_missing


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="oracle-harness",
        description="Emit golden files from the reference stack")
    sub = parser.add_subparsers(dest="command", required=True)

    p_counts = sub.add_parser("counts", help="unique canonical counts per k")
    p_counts.add_argument("--vocab", default="table_2_3")
    p_counts.add_argument("--k", type=int, nargs="+", required=True)
    p_counts.add_argument("--out", required=True)

    p_logp = sub.add_parser("logp", help="per-molecule reference logP")
    p_logp.add_argument("--vocab", default="table_2_3")
    p_logp.add_argument("--k", type=int, required=True)
    p_logp.add_argument("--out", required=True)

    p_rank = sub.add_parser("drugrank",
                            help="reference drug-design ranking")
    p_rank.add_argument("--vocab", default="table_2_3")
    p_rank.add_argument("--k", type=int, required=True)
    p_rank.add_argument("--alpha", type=float, default=2.0)
    p_rank.add_argument("--beta", type=float, default=1.0)
    p_rank.add_argument("--top", type=int, default=500)
    p_rank.add_argument("--out", required=True)

    args = parser.parse_args(argv)
    stack = abort_if_missing()
    if args.command == "counts":
        counts = emit_unique_counts(stack, args.vocab, args.k, args.out)
        for k, c in zip(args.k, counts):
            print(f"k={k}: {c}")
    elif args.command == "logp":
        rows = emit_logp_golden(stack, args.vocab, args.k, args.out)
        print(f"k={args.k}: {rows} molecules")
    else:
        rows = emit_drug_ranking(stack, args.vocab, args.k, args.out,
                                 alpha=args.alpha, beta=args.beta,
                                 top=args.top)
        print(f"k={args.k}: top {rows} ranked")
    return 0


if __name__ == "__main__":
    sys.exit(main())
