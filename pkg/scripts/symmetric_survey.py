"""Survey of the symmetric family: certification, end angles and boundary crossings per n.

    python scripts/symmetric_survey.py --nmax 8 --samples 2000 --csv survey.csv
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
import time
from dataclasses import asdict, dataclass

from exflat.atlas import end_data, self_intersections, trace_boundary
from exflat.verify import verify_neumann_fd, verify_triple
from exflat.weierstrass import assemble_triple, symmetric_spectrum


@dataclass(frozen=True)
class SurveyConfig:
    nmax: int = 8
    samples: int = 2000
    eps_end: float = 1e-3


@dataclass(frozen=True)
class SurveyRow:
    n: int
    verified: bool
    neumann_dev: float
    max_end_angle_error: float
    crossings: int
    seconds: float


def survey(cfg: SurveyConfig) -> list[SurveyRow]:
    rows = []
    for n in range(1, cfg.nmax + 1):
        t0 = time.perf_counter()
        t = assemble_triple(symmetric_spectrum(n))
        rep = verify_triple(t).merged(verify_neumann_fd(t))
        ends = max(abs(end_data(t, j).theta - math.pi) for j in range(n))
        curves = [trace_boundary(t, j, cfg.samples, cfg.eps_end) for j in range(n)]
        rows.append(SurveyRow(n, rep.passed, rep["neumann_quotient"].value, ends,
                              len(self_intersections(curves)), time.perf_counter() - t0))
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nmax", type=int, default=SurveyConfig.nmax)
    ap.add_argument("--samples", type=int, default=SurveyConfig.samples)
    ap.add_argument("--csv", help="also write the table to this file")
    args = ap.parse_args(argv)
    rows = survey(SurveyConfig(args.nmax, args.samples))
    print(f"{'n':>3} {'verified':>8} {'neumann dev':>12} {'|theta-pi|':>11} {'crossings':>9} {'s':>6}")
    for r in rows:
        print(f"{r.n:3d} {str(r.verified):>8} {r.neumann_dev:12.2e} {r.max_end_angle_error:11.2e} "
              f"{r.crossings:9d} {r.seconds:6.2f}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(asdict(rows[0])))
            w.writeheader()
            w.writerows(asdict(r) for r in rows)
    return 0 if all(r.verified for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
