"""Paper-path comparison at the sizes of the pi^2/6 example.

Runs the comparison for c(n) = n^2 (the potential as written, whose c/m
series diverges) and c(n) = n^-6 (whose c/m series is sum 1/n^2), both
flavors, and prints one table row per run.
"""

import argparse
import math
import time
from dataclasses import dataclass

from graph_spectra import PAPER_PATH, TruncationFlavor, parse_rule, spectral_comparison, truncate


@dataclass
class StudyConfig:
    sizes: tuple[int, ...] = (10, 50, 100, 500, 1000)
    potentials: tuple[str, ...] = ("n^2", "n^-6")


def main(cfg: StudyConfig) -> None:
    limit = math.pi**2 / 6
    print(f"{'c':>6} {'N':>5} {'flavor':>9} {'target':>22} {'discrepancy':>12} "
          f"{'rel':>9} {'pi^2/6 - S_N':>12} {'secs':>6}")
    for text in cfg.potentials:
        rule = parse_rule(text)
        for N in cfg.sizes:
            partial = math.fsum(1.0 / n**2 for n in range(1, N + 1))
            for flavor in TruncationFlavor:
                t0 = time.perf_counter()
                report = spectral_comparison(truncate(PAPER_PATH, N, flavor), rule.evaluate(N))
                secs = time.perf_counter() - t0
                rel = report.discrepancy / (1.0 + abs(report.target))
                print(f"{text:>6} {N:>5} {flavor.value:>9} {report.target:>22.12g} "
                      f"{report.discrepancy:>12.3e} {rel:>9.2e} {limit - partial:>12.3e} {secs:>6.2f}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", default="10,50,100,500,1000")
    p.add_argument("--c", action="append", dest="potentials")
    a = p.parse_args()
    main(StudyConfig(sizes=tuple(int(s) for s in a.sizes.split(",")),
                     potentials=tuple(a.potentials or StudyConfig.potentials)))
