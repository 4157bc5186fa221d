#!/usr/bin/env python3
"""Rewrite tests/data/ input files and tests/golden/ expected CLI output.

Run from anywhere; paths are anchored to the repository layout. Goldens
are the exact stdout bytes of each command line in tests/golden_cases.py,
so regenerate them only when an intentional output change is made.
"""

import io
import json
import sys
from contextlib import redirect_stdout
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

import golden_cases  # noqa: E402

from pqclab.cli import main  # noqa: E402


def run() -> None:
    golden_cases.DATA_DIR.mkdir(parents=True, exist_ok=True)
    golden_cases.GOLDEN_DIR.mkdir(parents=True, exist_ok=True)

    for name, doc in golden_cases.data_documents().items():
        path = golden_cases.DATA_DIR / name
        path.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
        print(f"wrote {path}")

    for golden_name, argv in golden_cases.CASES:
        buf = io.StringIO()
        with redirect_stdout(buf):
            code = main(list(argv))
        if code != 0:
            raise SystemExit(f"{argv} exited with {code}; goldens must come from clean runs")
        path = golden_cases.GOLDEN_DIR / golden_name
        path.write_text(buf.getvalue(), encoding="utf-8")
        print(f"wrote {path}")


if __name__ == "__main__":
    run()
