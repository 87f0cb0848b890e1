#!/usr/bin/env python3
"""Run every verification suite and write machine reports under reports/.

Exits nonzero if any suite reports a failure.  Sizes match the package
defaults; pass --small to shrink the slow suites for a quick sanity pass.
"""
from __future__ import annotations

import argparse
import io
import sys
from contextlib import redirect_stdout
from pathlib import Path

from moorlab.cli import main as cli_main


def run(outdir: Path, name: str, argv: list[str]) -> int:
    buffer = io.StringIO()
    with redirect_stdout(buffer):
        code = cli_main(argv + ["--format", "machine"])
    target = outdir / f"{name}.json"
    target.write_text(buffer.getvalue(), encoding="utf-8")
    status = "ok" if code == 0 else f"FAILED (exit {code})"
    print(f"{name}: {status} -> {target}")
    return code


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="reports", help="report directory")
    parser.add_argument("--small", action="store_true",
                        help="use reduced sizes for a fast pass")
    args = parser.parse_args()

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    dims_max = "4" if args.small else "6"
    degree = "3" if args.small else "4"
    jobs = [
        ("dual-check", ["dual-check"]),
        ("dims", ["dims", "--max", dims_max]),
        ("axioms", ["axioms", "--generators", "3", "--max-degree", degree]),
        ("rigidity-free", ["rigidity", "--generators", "3", "--max-degree", degree]),
        ("rigidity-relabeled",
         ["rigidity", "--generators", "3", "--max-degree", degree,
          "--relabel", "1"]),
        ("perm", ["perm", "--generators", "3", "--max-degree", degree]),
    ]

    worst = 0
    for name, argv in jobs:
        worst = max(worst, run(outdir, name, argv))
    return worst


if __name__ == "__main__":
    sys.exit(main())
