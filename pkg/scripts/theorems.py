"""Fit, validate and write the closed forms and limits to a report file.

Usage: python3 scripts/theorems.py [--max-k 16] [--holdout 20] [--output theorems.txt]
"""

import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from coremoments.report import build_theorems


@dataclass(frozen=True)
class TheoremsConfig:
    max_k: int = 16
    holdout: int = 20
    output: Path = Path("theorems.txt")
    fmt: str = "text"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-k", type=int, default=TheoremsConfig.max_k)
    ap.add_argument("--holdout", type=int, default=TheoremsConfig.holdout)
    ap.add_argument("--output", type=Path, default=TheoremsConfig.output)
    ap.add_argument("--format", dest="fmt", choices=("text", "latex", "json"), default=TheoremsConfig.fmt)
    args = ap.parse_args()
    config = TheoremsConfig(args.max_k, args.holdout, args.output, args.fmt)

    t0 = time.perf_counter()
    doc = build_theorems(config.max_k, holdout=config.holdout)
    config.output.write_text(doc.render(config.fmt))
    print(f"wrote {len(doc.entries)} entries to {config.output} in {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
