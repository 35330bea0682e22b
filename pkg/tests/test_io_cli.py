import json
import re
import xml.etree.ElementTree as ET

import numpy as np

from santalo_lab.cli import main
from santalo_lab.geom2d import SQUARE, Polygon, floating_body_body, santalo_region_body
from santalo_lab.io import CSV_HEADER, csv_text, fmt, report_row, strip_wall_time, svg_text

GAUSS = {"function": {"kind": "gaussian", "params": {"dim": 2}}}


def write_scenario(tmp_path, name, body):
    path = tmp_path / f"{name}.json"
    path.write_text(json.dumps(body))
    return str(path)


def test_fmt_and_rows():
    assert fmt(0.1) == "0.1" and fmt(True) == "true" and fmt(float("inf")) == "inf"
    row = report_row("s", "t", {"b": 2, "a": 0.5}, "q", 1.0, 1e-6, True, 0.25)
    assert row["params"] == "a=0.5;b=2" and row["verdict"] == "pass"
    text = csv_text([row])
    assert text.startswith(CSV_HEADER + "\n")
    assert strip_wall_time(text).splitlines()[-1] == "s,t,a=0.5;b=2,q,1,1e-06,pass"


def test_svg_empty_scaffold():
    root = ET.fromstring(svg_text([]))
    assert root.attrib["viewBox"] == "0 0 1000 1000"
    assert not root.findall(".//{http://www.w3.org/2000/svg}path")


def test_svg_single_polygon_roundtrip():
    K = Polygon.regular(5, 1.3)
    root = ET.fromstring(svg_text([K]))
    paths = root.findall(".//{http://www.w3.org/2000/svg}path")
    assert len(paths) == 1
    nums = np.array(re.findall(r"-?\d+\.\d+", paths[0].attrib["d"]), float).reshape(-1, 2)
    assert np.max(np.abs(nums - np.array(K.to_json()["vertices"]))) <= 1e-6


def test_svg_three_layers_distinct_colors():
    F = floating_body_body(SQUARE, 0.25, 64)
    S = santalo_region_body(SQUARE, 4 / 3, 64)
    root = ET.fromstring(svg_text([SQUARE, F, S], ["K", "F", "S"]))
    paths = root.findall(".//{http://www.w3.org/2000/svg}path")
    assert len(paths) == 3
    assert len({p.attrib["stroke"] for p in paths}) == 3


def test_run_inclusion_exit_zero_and_deterministic(tmp_path):
    scn = write_scenario(tmp_path, "inc", {"id": "inc", "task": "check-inclusion", "input": GAUSS,
                                           "params": {"lambda": 0.25, "d": 4 / 3, "dirs": 64,
                                                      "rays": 64}})
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(["run", scn, "--out", str(out1)]) == 0
    assert main(["run", scn, "--out", str(out2)]) == 0
    csv1 = (out1 / "inc.csv").read_text()
    assert "seed=" in csv1
    assert strip_wall_time(csv1) == strip_wall_time((out2 / "inc.csv").read_text())
    assert (out1 / "inc.svg").read_bytes() == (out2 / "inc.svg").read_bytes()
    assert (out1 / "inc.json").read_bytes() == (out2 / "inc.json").read_bytes()


def test_run_gaussian_region_radii(tmp_path):
    scn = write_scenario(tmp_path, "s1", {"id": "s1", "task": "santalo-region", "input": GAUSS,
                                          "params": {"t": 1.0, "rays": 64}})
    assert main(["run", scn]) == 0
    data = json.loads((tmp_path / "s1.json").read_text())
    assert max(data["regions"][0]["radii"]) <= 1e-4


def test_run_bad_lambda(tmp_path, capsys):
    scn = write_scenario(tmp_path, "bad", {"id": "bad", "task": "floating", "input": GAUSS,
                                           "params": {"lambda": 0.7, "dirs": 8}})
    assert main(["run", scn]) == 1
    err = capsys.readouterr().err
    assert "0 < lambda < 1/2" in err and "dirs >= 16" in err


def test_run_malformed_inputs(tmp_path, capsys):
    assert main(["run", write_scenario(tmp_path, "t", {"task": "nope", "input": GAUSS})]) == 1
    assert main(["run", write_scenario(tmp_path, "f", {"task": "polar",
                                                       "input": {"function": {}}})]) == 1
    p = tmp_path / "junk.json"
    p.write_text("{not json")
    assert main(["run", str(p)]) == 1
    assert "input error" in capsys.readouterr().err


def test_run_verdict_failure_exit_two(tmp_path):
    scn = write_scenario(tmp_path, "v", {"id": "v", "task": "check-inclusion", "input": GAUSS,
                                         "params": {"lambda": 0.05, "d": 1.05, "dirs": 32,
                                                    "rays": 32}})
    assert main(["run", scn, "--out", str(tmp_path / "o")]) == 2
    assert ",fail," in (tmp_path / "o" / "v.csv").read_text()


def test_polygon_polar_and_seed_override(tmp_path):
    scn = write_scenario(tmp_path, "p", {"id": "p", "task": "polar",
                                         "input": {"polygon": SQUARE.to_json()}})
    assert main(["run", scn, "--seed", "17"]) == 0
    text = (tmp_path / "p.csv").read_text()
    assert "seed=17" in text and "normalized_min_product,0.810569469139" in text


def test_sweep_records_seed(tmp_path):
    assert main(["sweep", "--task", "mahler", "--corpus", "random", "--count", "3", "--seed", "4",
                 "--out", str(tmp_path)]) == 0
    rows = (tmp_path / "mahler-random.csv").read_text().splitlines()
    assert sum(",min_product," in r for r in rows) == 3
    data = json.loads((tmp_path / "mahler-random.json").read_text())
    assert data["seed"] == 4
