"""Command-line front end: ``exflat <command> --config <path> [--out <dir>] [--seed <int>]``."""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import atlas
from .config import RunConfig, load_config
from .errors import InvalidInput, NumericFailure
from .flow import check_path_independence, map_grid
from .verify import CheckRecord, VerificationReport, verify_neumann_fd, verify_triple
from .weierstrass import assemble_triple

log = logging.getLogger("exflat")

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_NUMERIC = 0, 1, 2, 3
PATH_CHECKS = 20
PATH_TOL = 1e-9


def _g(x: float) -> str:
    return format(float(x), ".17g")


def _jsonable(obj):
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return [_jsonable(x) for x in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    return obj


class Writer:
    """Serialized artifact output, restricted to the configured formats."""

    def __init__(self, directory: Path, formats):
        self.dir = directory
        self.formats = set(formats)
        self.written: list[str] = []
        self.dir.mkdir(parents=True, exist_ok=True)

    def csv(self, name: str, header, rows) -> Path | None:
        if "csv" not in self.formats:
            return None
        path = self.dir / name
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            for row in rows:
                w.writerow([v if isinstance(v, str) else _g(v) for v in row])
        self.written.append(name)
        return path

    def json(self, name: str, payload) -> None:
        if "json" not in self.formats:
            return
        text = json.dumps(_jsonable(payload), indent=2, sort_keys=True)
        (self.dir / name).write_text(text + "\n")
        self.written.append(name)

    def text(self, name: str, body: str, fmt: str) -> None:
        if fmt not in self.formats:
            return
        (self.dir / name).write_text(body)
        self.written.append(name)


def _triple(cfg: RunConfig):
    return assemble_triple(cfg.spectrum, tol=cfg.roots.tol, eps_bdry=cfg.roots.eps_bdry, phase_mu=cfg.phase_mu)


def _spectrum_dict(cfg: RunConfig) -> dict:
    s = cfg.spectrum
    return {"anchors": list(s.anchors), "angles_deg": [math.degrees(a) for a in s.angles], "weights": list(s.weights)}


def svg_from_csv(paths) -> str:
    """One path element per boundary CSV; coordinates are read back from the files."""
    curves = []
    for p in paths:
        with open(p, newline="") as fh:
            rows = list(csv.DictReader(fh))
        curves.append([(float(r["re_F"]), -float(r["im_F"])) for r in rows])
    xs = [x for c in curves for x, _ in c]
    ys = [y for c in curves for _, y in c]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    mx, my = 0.05 * (x1 - x0 or 1.0), 0.05 * (y1 - y0 or 1.0)
    vb = f"{_g(x0 - mx)} {_g(y0 - my)} {_g(x1 - x0 + 2 * mx)} {_g(y1 - y0 + 2 * my)}"
    stroke = _g(0.002 * max(x1 - x0, y1 - y0, 1e-12))
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{vb}">']
    for k, c in enumerate(curves):
        d = "M " + " L ".join(f"{_g(x)} {_g(y)}" for x, y in c)
        lines.append(f'  <path id="arc{k}" d="{d}" fill="none" stroke="black" stroke-width="{stroke}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def cmd_generate(cfg: RunConfig, out: Writer) -> int:
    t = _triple(cfg)
    tol = cfg.tolerances.quadrature
    paths = []
    for j in range(t.spectrum.n):
        c = atlas.trace_boundary(t, j, cfg.boundary.samples, cfg.boundary.eps_end, 0j, tol)
        p = out.csv(f"boundary_arc{j}.csv", ("theta", "re_F", "im_F", "u"),
                    zip(c.thetas, c.points.real, c.points.imag, c.us))
        paths.append(p)
    g = cfg.grid
    field = map_grid(t, g.radial, g.angular, g.rmax, tol)
    out.csv("grid.csv", ("r", "phi", "re_z", "im_z", "re_F", "im_F", "u"),
            ((s.r, s.phi, s.z.real, s.z.imag, s.F.real, s.F.imag, s.u) for s in field.samples))
    if "svg" in out.formats:
        if "csv" not in out.formats:
            raise InvalidInput("svg output is drawn from the boundary CSV files; enable 'csv' as well")
        out.text("boundary.svg", svg_from_csv(paths), "svg")
    out.json("generate.json", {
        "spectrum": _spectrum_dict(cfg),
        "disk_zeros": t.disk_zeros,
        "phase_mu": t.h.phase_mu,
        "base_point": field.base_point,
        "base_value": field.base_value,
        "files": list(out.written),
    })
    return EXIT_OK


def _random_disk_points(t, rng, count, rmax=0.9, clearance=0.05):
    pts = []
    while len(pts) < count:
        z = complex(*rng.uniform(-rmax, rmax, 2))
        if abs(z) <= rmax and min(abs(z - a) for a in t.spectrum.anchors) >= clearance:
            pts.append(z)
    return pts


def cmd_verify(cfg: RunConfig, out: Writer) -> int:
    t = _triple(cfg)
    tol = cfg.tolerances
    report = verify_triple(t, cfg.grid, tol).merged(verify_neumann_fd(t, tol=tol))
    rng = np.random.default_rng(cfg.seed)
    pts = _random_disk_points(t, rng, PATH_CHECKS)
    worst = max(check_path_independence(t, z, tol.quadrature) for z in pts)
    report = report.merged(VerificationReport((
        CheckRecord("path_independence", float(worst), PATH_TOL, "<=", bool(worst <= PATH_TOL), len(pts)),
    )))
    out.json("report.json", {"spectrum": _spectrum_dict(cfg), "seed": cfg.seed, **report.to_dict()})
    for r in report.records:
        log.info("%-22s %-5s value=%.3e threshold=%s", r.name, "ok" if r.passed else "FAIL", r.value, r.threshold)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_catalogue(cfg: RunConfig, out: Writer) -> int:
    x = np.linspace(-3.0, 3.0, cfg.boundary.samples)
    up, lo = atlas.hairpin_boundary(x)
    out.csv("hairpin_boundary.csv", ("x", "re_upper", "im_upper", "re_lower", "im_lower"),
            zip(x, up.real, up.imag, lo.real, lo.imag))
    rows = []
    for r in np.linspace(1.25, 3.0, 8):
        rows.append(("halfplane", r - 1.0, 0.5, atlas.catalogue_trivial("halfplane", complex(r - 1.0, 0.5))))
        rows.append(("exterior_disk_2d", r, 0.0, atlas.catalogue_trivial("exterior_disk_2d", complex(r, 0.0))))
        rows.append(("exterior_disk_md", r, 0.0, atlas.catalogue_trivial("exterior_disk_md", (r, 0.0, 0.0), m=3)))
    out.csv("trivial_roofs.csv", ("kind", "x", "y", "u"), rows)
    C = atlas.period_constant(cfg.tolerances.quadrature)
    out.json("catalogue.json", {"period_constant": C, "hairpin_x_range": [-3.0, 3.0], "files": list(out.written)})
    return EXIT_OK


def cmd_compare(cfg: RunConfig, out: Writer) -> int:
    if cfg.spectrum.n != 2:
        raise InvalidInput(f"compare needs a two-anchor spectrum, config has {cfg.spectrum.n}")
    t = _triple(cfg)
    res = atlas.hairpin_comparison(t, cfg.boundary.samples, cfg.boundary.eps_end, cfg.tolerances.quadrature)
    T = res.transform
    out.json("compare.json", {
        "rotation_scale": T.rotation_scale,
        "translation": T.translation,
        "reflection": T.reflection,
        "scale": abs(T.rotation_scale),
        "rotation_rad": math.atan2(T.rotation_scale.imag, T.rotation_scale.real),
        "residual": res.residual,
        "extents": list(res.extents),
        "points": res.points,
    })
    log.info("hairpin similarity residual %.3e", res.residual)
    return EXIT_OK


def cmd_ends(cfg: RunConfig, out: Writer) -> int:
    t = _triple(cfg)
    reports = [atlas.end_data(t, j, cfg.ends.ratio, cfg.ends.K, tol=cfg.tolerances.quadrature)
               for j in range(t.spectrum.n)]
    out.json("ends.json", {"ends": [dataclasses.asdict(r) for r in reports]})
    for r in reports:
        log.info("anchor %d: theta = %.12f", r.anchor_index, r.theta)
    return EXIT_OK


COMMANDS = {
    "generate": cmd_generate,
    "verify": cmd_verify,
    "catalogue": cmd_catalogue,
    "compare": cmd_compare,
    "ends": cmd_ends,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="exflat", description="Flat surfaces with exceptional roof functions.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--config", required=True, help="JSON configuration file")
    ap.add_argument("--out", help="output directory (overrides outputs.directory)")
    ap.add_argument("--seed", type=int, help="seed for randomized sampling (overrides config)")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        cfg = load_config(args.config)
        if args.seed is not None:
            cfg = dataclasses.replace(cfg, seed=args.seed)
        directory = Path(args.out or cfg.outputs.directory)
        return COMMANDS[args.command](cfg, Writer(directory, cfg.outputs.formats))
    except InvalidInput as exc:
        print(f"invalid input: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NumericFailure as exc:
        print(f"numeric failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
