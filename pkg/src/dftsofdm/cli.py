"""Command-line entry point: ber, papr, channel-dump, and verify subcommands."""
from __future__ import annotations

import argparse
import sys

from .harness import dump_channel, parse_config, run_ber_sweep, run_papr_experiment, verify_comparison_study, write_results


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dftsofdm",
        description="Coherent optical DFT-spread OFDM link simulator (PDM, per-tone MMSE).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ber = sub.add_parser("ber", help="run a BER sweep and write a CSV")
    p_ber.add_argument("--config", required=True)
    p_ber.add_argument("--out", required=True)

    p_papr = sub.add_parser("papr", help="run the PAPR CCDF experiment and write a CSV")
    p_papr.add_argument("--config", required=True)
    p_papr.add_argument("--out", required=True)

    p_dump = sub.add_parser("channel-dump", help="serialize one random link realization")
    p_dump.add_argument("--config", required=True)
    p_dump.add_argument("--seed", required=True, type=int)
    p_dump.add_argument("--out", required=True)

    p_verify = sub.add_parser("verify", help="run the comparison suite; exit 0 when it passes")
    p_verify.add_argument("--config", required=True)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = parse_config(args.config)
        if args.command == "ber":
            write_results(run_ber_sweep(cfg), args.out)
        elif args.command == "papr":
            write_results(run_papr_experiment(cfg), args.out)
        elif args.command == "channel-dump":
            dump_channel(cfg, args.seed, args.out)
        elif args.command == "verify":
            passed, lines = verify_comparison_study(cfg)
            for line in lines:
                print(line)
            return 0 if passed else 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
