import csv
import json
import subprocess
import sys

import pytest

from exflat.cli import main, svg_from_csv
from exflat.config import parse_config
from exflat.errors import SchemaError

N2 = {"spectrum": {"anchors_deg": [0, 180], "weights": [0.5, 0.5]}}
N3 = {"spectrum": {"anchors_deg": [0, 120, 240], "weights": [1, 1, 1]},
      "boundary": {"samples": 300}, "grid": {"radial": 6, "angular": 16}}


def write(tmp_path, doc, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


# -- parsing ------------------------------------------------------------------------

def test_parse_symmetric_two():
    cfg = parse_config(json.dumps(N2))
    assert cfg.spectrum.n == 2 and cfg.spectrum.weights == (0.5, 0.5)
    assert 0 < cfg.grid.rmax < 1 and cfg.seed == 0


def test_duplicate_anchor_is_schema_error():
    with pytest.raises(SchemaError, match="anchors_deg"):
        parse_config('{"spectrum":{"anchors_deg":[0,0],"weights":[1,1]}}')


def test_rmax_out_of_range():
    with pytest.raises(SchemaError, match="rmax"):
        parse_config('{"spectrum":{"anchors_deg":[0],"weights":[1]},"grid":{"rmax":1.5}}')


@pytest.mark.parametrize("doc,key", [
    ({**N2, "colour": 1}, "colour"),
    ({**N2, "grid": {"radius": 3}}, "grid.radius"),
    ({**N2, "tolerances": {"quad": 1}}, "tolerances.quad"),
    ({**N2, "grid": {"radial": "ten"}}, "grid.radial"),
    ({**N2, "tolerances": {"unimodularity": -1}}, "unimodularity"),
    ({**N2, "outputs": {"formats": ["png"]}}, "outputs.formats"),
    ({"spectrum": {"anchors": [[1.1, 0]], "weights": [1]}}, "spectrum.anchors"),
    ({"spectrum": {"anchors_deg": [0]}}, "spectrum.weights"),
])
def test_schema_errors_name_the_key(doc, key):
    with pytest.raises(SchemaError, match=key.replace(".", r"\.")):
        parse_config(json.dumps(doc))


def test_complex_pair_anchors_normalized():
    cfg = parse_config('{"spectrum":{"anchors":[[1,0],[0,1]],"weights":[1,1]}}')
    assert cfg.spectrum.anchors == (1 + 0j, 1j)


def test_malformed_json():
    with pytest.raises(SchemaError):
        parse_config("{not json")


# -- commands ---------------------------------------------------------------------------

def test_verify_symmetric_three(tmp_path):
    out = tmp_path / "o"
    assert main(["verify", "--config", write(tmp_path, N3), "--out", str(out)]) == 0
    rep = json.loads((out / "report.json").read_text())
    assert rep["passed"] and all(r["passed"] for r in rep["records"])


def test_verify_root_near_boundary_exit_3(tmp_path, capsys):
    doc = {"spectrum": {"anchors_deg": [0, 180], "weights": [1, 2]}, "roots": {"eps_bdry": 0.9}}
    assert main(["verify", "--config", write(tmp_path, doc), "--out", str(tmp_path / "o")]) == 3
    assert "RootNearBoundary" in capsys.readouterr().err


def test_verify_failure_exit_1(tmp_path):
    doc = {**N3, "tolerances": {"nonvanishing_floor": 1e6}}
    assert main(["verify", "--config", write(tmp_path, doc), "--out", str(tmp_path / "o")]) == 1


def test_invalid_config_exit_2(tmp_path):
    doc = {"spectrum": {"anchors_deg": [0], "weights": [1]}, "grid": {"rmax": 1.5}}
    assert main(["verify", "--config", write(tmp_path, doc)]) == 2
    assert main(["verify", "--config", str(tmp_path / "missing.json")]) == 2


def test_compare_symmetric_two(tmp_path):
    out = tmp_path / "o"
    assert main(["compare", "--config", write(tmp_path, N2), "--out", str(out)]) == 0
    assert json.loads((out / "compare.json").read_text())["residual"] < 1e-4


def test_compare_needs_two_anchors(tmp_path):
    assert main(["compare", "--config", write(tmp_path, N3), "--out", str(tmp_path / "o")]) == 2


def test_ends(tmp_path):
    out = tmp_path / "o"
    assert main(["ends", "--config", write(tmp_path, N3), "--out", str(out)]) == 0
    ends = json.loads((out / "ends.json").read_text())["ends"]
    assert len(ends) == 3 and all(abs(e["theta"] - 3.141592653589793) < 1e-3 for e in ends)


def test_catalogue(tmp_path):
    out = tmp_path / "o"
    assert main(["catalogue", "--config", write(tmp_path, N2), "--out", str(out)]) == 0
    C = json.loads((out / "catalogue.json").read_text())["period_constant"]
    assert abs(C[1] - 4.807878861268827) < 1e-9
    assert (out / "hairpin_boundary.csv").exists() and (out / "trivial_roofs.csv").exists()


def test_generate_schema_and_dirichlet(tmp_path):
    out = tmp_path / "o"
    doc = {**N3, "outputs": {"formats": ["csv", "json", "svg"]}}
    assert main(["generate", "--config", write(tmp_path, doc), "--out", str(out)]) == 0
    for j in range(3):
        with open(out / f"boundary_arc{j}.csv") as fh:
            rows = list(csv.DictReader(fh))
        assert list(rows[0]) == ["theta", "re_F", "im_F", "u"] and len(rows) == 300
        assert all(abs(float(r["u"])) <= 1e-10 for r in rows)
    with open(out / "grid.csv") as fh:
        header = next(csv.reader(fh))
    assert header == ["r", "phi", "re_z", "im_z", "re_F", "im_F", "u"]
    svg = (out / "boundary.svg").read_text()
    assert svg.count("<path") == 3
    assert svg == svg_from_csv([out / f"boundary_arc{j}.csv" for j in range(3)])


def test_reruns_are_byte_identical(tmp_path):
    cfg = write(tmp_path, {**N3, "seed": 7})
    for sub in ("a", "b"):
        for cmd in ("generate", "verify"):
            assert main([cmd, "--config", cfg, "--out", str(tmp_path / sub)]) == 0
    for f in (tmp_path / "a").iterdir():
        assert f.read_bytes() == (tmp_path / "b" / f.name).read_bytes()


def test_seed_override_changes_sampling(tmp_path):
    cfg = write(tmp_path, N3)
    main(["verify", "--config", cfg, "--out", str(tmp_path / "a"), "--seed", "1"])
    main(["verify", "--config", cfg, "--out", str(tmp_path / "b"), "--seed", "2"])
    a = json.loads((tmp_path / "a" / "report.json").read_text())
    b = json.loads((tmp_path / "b" / "report.json").read_text())
    assert a["seed"] == 1 and b["seed"] == 2


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "exflat", "verify", "--config", write(tmp_path, N3),
                           "--out", str(tmp_path / "o")], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
