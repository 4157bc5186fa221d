#!/usr/bin/env python3
"""Classify a channel and export sampled private states as CSV.

Convenience wrapper over the classify subcommand for batch plotting: runs
the classifier on each requested named channel and writes one CSV per
channel into the output directory.

    python3 scripts/export_bloch_samples.py --outdir /tmp/bloch --count 256
"""

import argparse
import io
import json
import tempfile
from contextlib import redirect_stdout
from pathlib import Path

from pqclab.cli import main as cli_main

QUBIT_CHANNELS = ("identity", "completely_depolarizing", "dephasing_z")


def run(outdir: Path, count: int, names: list[str]) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    for name in names:
        with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
            json.dump({"kind": "named", "name": name}, fh)
            spec_path = fh.name
        csv_path = outdir / f"{name}.csv"
        with redirect_stdout(io.StringIO()):  # the CSV is the product, not the report
            code = cli_main(
                [
                    "classify",
                    spec_path,
                    "--samples",
                    str(count),
                    "--out",
                    str(csv_path),
                ]
            )
        Path(spec_path).unlink()
        if code != 0:
            raise SystemExit(f"classify failed for {name} with exit code {code}")
        print(f"{name}: wrote {csv_path}")


def parse_args():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--outdir", type=Path, default=Path("bloch_samples"))
    parser.add_argument("--count", type=int, default=128, help="samples per channel")
    parser.add_argument(
        "--channels",
        nargs="+",
        default=list(QUBIT_CHANNELS),
        help=f"named channels to export (default: {' '.join(QUBIT_CHANNELS)})",
    )
    return parser.parse_args()


if __name__ == "__main__":
    args = parse_args()
    run(args.outdir, args.count, args.channels)
