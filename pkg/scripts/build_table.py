#!/usr/bin/env python3
"""Build the 243x243 composition table, run every verification suite, and
optionally export the tables.

Usage:
    python3 scripts/build_table.py --out table.json --admissibility-cells 200
"""

import argparse
import sys
import time
from dataclasses import dataclass

import cubicloop.moufang as M
from cubicloop.cli import Config, export_table


@dataclass
class RunConfig:
    precision: int = 12
    seed: int = 0
    lift_samples: int = 20
    admissibility_cells: int = 100
    out: str | None = None
    fmt: str = "json"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--precision", type=int, default=12)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--lift-samples", type=int, default=20)
    parser.add_argument("--admissibility-cells", type=int, default=100)
    parser.add_argument("--out", default=None)
    parser.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    args = parser.parse_args(argv)
    cfg = RunConfig(**vars(args))

    t0 = time.monotonic()
    table = M.build_class_table(
        cfg.precision, cfg.lift_samples, cfg.seed, cfg.admissibility_cells
    )
    print(f"table built in {time.monotonic() - t0:.2f}s (precision {cfg.precision})")

    quasi = M.verify_quasigroup(table)
    print(f"{quasi.name}: {'ok' if quasi.passed else 'FAILED'} ({quasi.checks} checks)")
    if not quasi.passed:
        return 1

    loop = M.loop_from(table, M.named_class(M.U0))
    for rep in M.verify_cml(loop):
        print(f"{rep.name}: {'ok' if rep.passed else 'FAILED'} ({rep.checks} checks)")
        if not rep.passed:
            return 1

    report = M.build_report(table, loop)
    triple, left, right = M.witness_sides(table, loop)
    print(
        f"order {report.order}, exponent {report.exponent}, "
        f"nucleus {len(report.nucleus)}, "
        f"non-associative triples {report.witness_count}"
    )
    print(f"witness {triple}: association sides {left} vs {right}")

    if cfg.out is not None:
        export_table(
            table,
            loop,
            Config(precision=cfg.precision, seed=cfg.seed, out=cfg.out, fmt=cfg.fmt),
        )
        print(f"exported {cfg.fmt} to {cfg.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
