"""Hairpin similarity residual for two-anchor spectra as the weights and anchor gap vary.

    python scripts/two_anchor_fit.py --samples 2000
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from exflat.atlas import hairpin_comparison
from exflat.weierstrass import assemble_triple, spectrum_from_degrees


@dataclass(frozen=True)
class FitConfig:
    samples: int = 2000
    weight_ratios: tuple[float, ...] = (1.0, 1.5, 2.0, 4.0)
    gaps_deg: tuple[float, ...] = (180.0, 120.0, 60.0)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=FitConfig.samples)
    cfg = FitConfig(samples=ap.parse_args(argv).samples)
    print(f"{'gap deg':>8} {'w1/w0':>6} {'residual':>10} {'scale':>10}")
    for gap in cfg.gaps_deg:
        for ratio in cfg.weight_ratios:
            t = assemble_triple(spectrum_from_degrees([0.0, gap], [1.0, ratio]))
            res = hairpin_comparison(t, cfg.samples)
            print(f"{gap:8.1f} {ratio:6.2f} {res.residual:10.2e} {abs(res.transform.rotation_scale):10.4f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
