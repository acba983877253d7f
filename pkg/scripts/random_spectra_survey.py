"""Random spectra: how often is the traced boundary embedded, and are all end angles pi?

    python scripts/random_spectra_survey.py --count 40 --nmax 6 --seed 1
"""

from __future__ import annotations

import argparse
import cmath
import math
import sys
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from exflat.atlas import end_data, self_intersections, trace_boundary
from exflat.errors import DuplicateAnchors, NoConvergence, RootNearBoundary
from exflat.verify import verify_triple
from exflat.weierstrass import assemble_triple, validate_spectrum


@dataclass(frozen=True)
class RandomSurveyConfig:
    count: int = 40
    nmax: int = 6
    samples: int = 1000
    seed: int = 1
    min_gap: float = 0.05


def draw_triple(rng, cfg: RandomSurveyConfig):
    while True:
        n = int(rng.integers(1, cfg.nmax + 1))
        angles = np.sort(rng.uniform(0, 2 * math.pi, n))
        if n > 1 and np.min(np.diff(np.append(angles, angles[0] + 2 * math.pi))) < cfg.min_gap:
            continue
        try:
            s = validate_spectrum([cmath.exp(1j * a) for a in angles], rng.uniform(0.1, 3.0, n))
            return assemble_triple(s)
        except (DuplicateAnchors, RootNearBoundary):
            continue


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=RandomSurveyConfig.count)
    ap.add_argument("--nmax", type=int, default=RandomSurveyConfig.nmax)
    ap.add_argument("--samples", type=int, default=RandomSurveyConfig.samples)
    ap.add_argument("--seed", type=int, default=RandomSurveyConfig.seed)
    args = ap.parse_args(argv)
    cfg = RandomSurveyConfig(args.count, args.nmax, args.samples, args.seed)
    rng = np.random.default_rng(cfg.seed)
    embedded = defaultdict(lambda: [0, 0])
    worst_theta, unverified, unsettled = 0.0, 0, 0
    for _ in range(cfg.count):
        t = draw_triple(rng, cfg)
        n = t.spectrum.n
        unverified += not verify_triple(t).passed
        curves = [trace_boundary(t, j, cfg.samples) for j in range(n)]
        embedded[n][0] += not self_intersections(curves)
        embedded[n][1] += 1
        for j in range(n):
            try:
                worst_theta = max(worst_theta, abs(end_data(t, j).theta - math.pi))
            except NoConvergence:
                unsettled += 1
    print(f"{'n':>3} {'embedded':>9} {'of':>4}")
    for n in sorted(embedded):
        print(f"{n:3d} {embedded[n][0]:9d} {embedded[n][1]:4d}")
    print(f"max |theta - pi| = {worst_theta:.2e}; unsettled ends: {unsettled}; failed certifications: {unverified}")
    return 0 if unverified == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
