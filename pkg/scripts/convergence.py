"""Print float standardized central moments next to the normal values.

Usage: python3 scripts/convergence.py [--s 200 400 800 1600] [--max-k 8]
"""

import argparse
from dataclasses import dataclass, field

from coremoments.fibfit import normal_moment
from coremoments.moments import moment_table


@dataclass(frozen=True)
class ConvergenceConfig:
    s_values: tuple[int, ...] = (200, 400, 800, 1600)
    max_k: int = 8
    tolerance: float = 1e-2
    digits: int = 20


@dataclass
class ConvergenceResult:
    config: ConvergenceConfig
    values: dict[int, list[float]] = field(default_factory=dict)  # s -> [z_2 .. z_maxk]

    def gap(self, s: int, k: int) -> float:
        return abs(self.values[s][k - 2] - normal_moment(k))

    def within_tolerance(self, k: int) -> bool:
        return self.gap(max(self.config.s_values), k) < self.config.tolerance


def run(config: ConvergenceConfig) -> ConvergenceResult:
    result = ConvergenceResult(config)
    for s in config.s_values:
        table = moment_table(s, config.max_k)
        result.values[s] = [float(table.standardized(k).to_decimal(config.digits)) for k in range(2, config.max_k + 1)]
    return result


def format_result(result: ConvergenceResult) -> str:
    cfg = result.config
    header = ["k", "normal"] + [f"s={s}" for s in cfg.s_values] + ["gap ratio", f"final gap < {cfg.tolerance:g}"]
    lines = ["\t".join(header)]
    last, prev = cfg.s_values[-1], cfg.s_values[-2] if len(cfg.s_values) > 1 else None
    for k in range(2, cfg.max_k + 1):
        row = [str(k), str(normal_moment(k))] + [f"{result.values[s][k - 2]:.6f}" for s in cfg.s_values]
        if prev is not None and result.gap(prev, k) > 0:
            row.append(f"{result.gap(last, k) / result.gap(prev, k):.4f}")
        else:
            row.append("-")
        row.append("yes" if result.within_tolerance(k) else "no")
        lines.append("\t".join(row))
    return "\n".join(lines)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--s", type=int, nargs="+", default=list(ConvergenceConfig.s_values))
    ap.add_argument("--max-k", type=int, default=ConvergenceConfig.max_k)
    ap.add_argument("--tolerance", type=float, default=ConvergenceConfig.tolerance)
    args = ap.parse_args()
    config = ConvergenceConfig(tuple(sorted(args.s)), args.max_k, args.tolerance)
    print(format_result(run(config)))


if __name__ == "__main__":
    main()
