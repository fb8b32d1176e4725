"""Time the generating function routes against each other.

Usage: python3 scripts/gf_timing.py [--s 10 20 40 80] [--brute-max 12]
"""

import argparse
import time
from dataclasses import dataclass

from coremoments.genfunc import Gs_closed, Gs_recurrence, Gs_sum
from coremoments.partitions import brute_force_gf


@dataclass(frozen=True)
class TimingConfig:
    s_values: tuple[int, ...] = (10, 20, 40, 80)
    brute_max: int = 12


def timed(fn, s):
    t0 = time.perf_counter()
    value = fn(s)
    return value, time.perf_counter() - t0


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--s", type=int, nargs="+", default=list(TimingConfig.s_values))
    ap.add_argument("--brute-max", type=int, default=TimingConfig.brute_max)
    args = ap.parse_args()
    config = TimingConfig(tuple(args.s), args.brute_max)

    routes = {"recurrence": Gs_recurrence, "closed": Gs_closed, "sum": Gs_sum, "brute": brute_force_gf}
    print("s\t" + "\t".join(routes) + "\tagree")
    for s in config.s_values:
        cells, values = [], []
        for name, fn in routes.items():
            if name == "brute" and s > config.brute_max:
                cells.append("-")
                continue
            value, dt = timed(fn, s)
            values.append(value)
            cells.append(f"{dt:.4f}s")
        agree = all(v == values[0] for v in values)
        print(f"{s}\t" + "\t".join(cells) + f"\t{'yes' if agree else 'NO'}")


if __name__ == "__main__":
    main()
