"""JSON run configuration with strict key checking."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any

from .errors import InvalidInput, SchemaError
from .verify import GridSpec, Tolerances
from .weierstrass import PoissonSpectrum, spectrum_from_degrees, validate_spectrum

FORMATS = ("csv", "json", "svg")


@dataclass(frozen=True)
class RootOptions:
    tol: float = 1e-10
    eps_bdry: float = 1e-8


@dataclass(frozen=True)
class BoundaryOptions:
    samples: int = 2000
    eps_end: float = 1e-3


@dataclass(frozen=True)
class EndOptions:
    ratio: float = 0.5
    K: int = 6


@dataclass(frozen=True)
class OutputOptions:
    directory: str = "out"
    formats: tuple[str, ...] = ("csv", "json")


@dataclass(frozen=True)
class RunConfig:
    spectrum: PoissonSpectrum
    grid: GridSpec = GridSpec(radial=20, angular=64, rmax=0.95)
    tolerances: Tolerances = Tolerances()
    roots: RootOptions = RootOptions()
    boundary: BoundaryOptions = BoundaryOptions()
    ends: EndOptions = EndOptions()
    outputs: OutputOptions = OutputOptions()
    phase_mu: float = 0.0
    seed: int = 0
    source: dict = field(default_factory=dict, compare=False, repr=False)


def _number(key: str, v: Any, integer: bool = False):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise SchemaError(f"{key}: expected {'integer' if integer else 'number'}, got {type(v).__name__}")
    if integer:
        if isinstance(v, float) and not v.is_integer():
            raise SchemaError(f"{key}: expected integer, got {v!r}")
        return int(v)
    if not math.isfinite(v):
        raise SchemaError(f"{key}: expected finite number, got {v!r}")
    return float(v)


def _object(key: str, v: Any, allowed) -> dict:
    if not isinstance(v, dict):
        raise SchemaError(f"{key}: expected object, got {type(v).__name__}")
    for k in v:
        if k not in allowed:
            name = k if key == "<root>" else f"{key}.{k}"
            raise SchemaError(f"unknown key '{name}' (allowed: {', '.join(sorted(allowed))})")
    return v


def _section(key: str, v: Any, cls):
    """Fill dataclass ``cls`` from a JSON object of scalar fields."""
    spec = {f.name: f for f in fields(cls)}
    obj = _object(key, v, spec)
    kwargs = {}
    for k, raw in obj.items():
        default = getattr(cls(), k)
        kwargs[k] = _number(f"{key}.{k}", raw, integer=isinstance(default, int))
    return kwargs


def _float_list(key: str, v: Any) -> list[float]:
    if not isinstance(v, list):
        raise SchemaError(f"{key}: expected array of numbers, got {type(v).__name__}")
    return [_number(f"{key}[{i}]", x) for i, x in enumerate(v)]


def _parse_spectrum(v: Any) -> PoissonSpectrum:
    obj = _object("spectrum", v, {"anchors_deg", "anchors", "weights", "sep_min"})
    if "weights" not in obj:
        raise SchemaError("spectrum.weights: required array of positive numbers")
    if ("anchors_deg" in obj) == ("anchors" in obj):
        raise SchemaError("spectrum: give exactly one of 'anchors_deg' (degrees) or 'anchors' ([re, im] pairs)")
    weights = _float_list("spectrum.weights", obj["weights"])
    sep_min = _number("spectrum.sep_min", obj.get("sep_min", 1e-6))
    try:
        if "anchors_deg" in obj:
            key = "spectrum.anchors_deg"
            return spectrum_from_degrees(_float_list(key, obj["anchors_deg"]), weights, sep_min)
        key = "spectrum.anchors"
        pairs = obj["anchors"]
        if not isinstance(pairs, list):
            raise SchemaError(f"{key}: expected array of [re, im] pairs")
        anchors = []
        for i, p in enumerate(pairs):
            re, im = _pair(f"{key}[{i}]", p)
            anchors.append(complex(re, im))
        return validate_spectrum(anchors, weights, sep_min)
    except SchemaError:
        raise
    except (InvalidInput, ValueError) as exc:
        raise SchemaError(f"{key}: {type(exc).__name__}: {exc}") from exc


def _pair(key, p):
    if not (isinstance(p, list) and len(p) == 2):
        raise SchemaError(f"{key}: expected [re, im] pair")
    return _number(f"{key}[0]", p[0]), _number(f"{key}[1]", p[1])


def parse_config(text: str) -> RunConfig:
    """Parse and validate a JSON configuration document; defaults fill missing sections."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON: {exc}") from exc
    top = {"spectrum", "grid", "tolerances", "roots", "boundary", "ends", "outputs", "phase_mu", "seed"}
    doc = _object("<root>", doc, top)
    if "spectrum" not in doc:
        raise SchemaError("spectrum: required section missing")
    spectrum = _parse_spectrum(doc["spectrum"])

    base = RunConfig(spectrum)
    grid_kw = _section("grid", doc.get("grid", {}), GridSpec)
    grid = GridSpec(**{**vars(base.grid), **grid_kw})
    if not 0 < grid.rmax < 1:
        raise SchemaError(f"grid.rmax: expected number in (0, 1), got {grid.rmax!r}")
    if grid.radial < 2 or grid.angular < 2:
        raise SchemaError("grid.radial, grid.angular: expected integers >= 2")

    tol_obj = _object("tolerances", doc.get("tolerances", {}), {f.name for f in fields(Tolerances)})
    tol_kw = {}
    for k, raw in tol_obj.items():
        default = getattr(Tolerances(), k)
        if isinstance(default, tuple):
            lo, hi = _pair(f"tolerances.{k}", raw)
            tol_kw[k] = (lo, hi)
        else:
            tol_kw[k] = _number(f"tolerances.{k}", raw)
    try:
        tolerances = Tolerances(**tol_kw)
    except ValueError as exc:
        raise SchemaError(f"tolerances: {exc}") from exc

    roots = RootOptions(**_section("roots", doc.get("roots", {}), RootOptions))
    if not (roots.tol > 0 and 0 < roots.eps_bdry < 1):
        raise SchemaError("roots.tol must be positive and roots.eps_bdry in (0, 1)")
    boundary = BoundaryOptions(**_section("boundary", doc.get("boundary", {}), BoundaryOptions))
    if boundary.samples < 3 or not 0 < boundary.eps_end < 0.5:
        raise SchemaError("boundary.samples must be >= 3 and boundary.eps_end in (0, 0.5)")
    ends = EndOptions(**_section("ends", doc.get("ends", {}), EndOptions))
    if not 0 < ends.ratio < 1 or ends.K < 3:
        raise SchemaError("ends.ratio must lie in (0, 1) and ends.K be >= 3")

    out_obj = _object("outputs", doc.get("outputs", {}), {"directory", "formats"})
    directory = out_obj.get("directory", OutputOptions.directory)
    if not isinstance(directory, str) or not directory:
        raise SchemaError("outputs.directory: expected nonempty string")
    formats = out_obj.get("formats", list(OutputOptions.formats))
    if not isinstance(formats, list) or any(f not in FORMATS for f in formats):
        raise SchemaError(f"outputs.formats: expected array with entries from {list(FORMATS)}")
    outputs = OutputOptions(directory, tuple(dict.fromkeys(formats)))

    return RunConfig(
        spectrum=spectrum,
        grid=grid,
        tolerances=tolerances,
        roots=roots,
        boundary=boundary,
        ends=ends,
        outputs=outputs,
        phase_mu=_number("phase_mu", doc.get("phase_mu", 0.0)),
        seed=_number("seed", doc.get("seed", 0), integer=True),
        source=doc,
    )


def load_config(path: str | Path) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text)
