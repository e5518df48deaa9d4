"""Write converge.csv for a paper-path convergence study.

The per-n gaps lambda_n(c) - lambda_n(0) across growing N are reported
only; nothing about their limit is asserted.
"""

import argparse
import sys
from dataclasses import dataclass

from graph_spectra.cli import RunConfig, run


@dataclass
class TrendConfig:
    c: str = "n^-6"
    sizes: str = "10,20,50,100,200,500"
    K: int = 5
    output: str = "results/"


def main(cfg: TrendConfig) -> int:
    return run(RunConfig(command="converge", input="paper-path", potential=cfg.c,
                         sizes=tuple(int(s) for s in cfg.sizes.split(",")), K=cfg.K,
                         output=cfg.output))


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(TrendConfig()).items():
        p.add_argument(f"--{name}", type=type(default), default=default)
    sys.exit(main(TrendConfig(**vars(p.parse_args()))))
