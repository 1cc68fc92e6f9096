import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from spintrimer.export import (
    CMAP_SIZE,
    color_index,
    colormap_rgb,
    read_json,
    scan_from_dict,
    write_contours_csv,
    write_csv,
    write_json,
    write_phase_boundaries_csv,
    write_phase_map_csv,
    write_svg,
)
from spintrimer.hamiltonian import ModelParams
from spintrimer.phases import scan_phases
from spintrimer.scans import extract_contours, scan_gtn_zero_T


@pytest.fixture
def small_scan():
    return scan_gtn_zero_T((0.0, 2.0, 6), (-1.5, 1.5, 5), j1=1.5)


def test_csv_row_count_and_header(small_scan, tmp_path):
    path = tmp_path / "scan.csv"
    write_csv(small_scan, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "# h/J, D/J, gtn"
    assert len(lines) == 1 + 6 * 5
    x, y, v = lines[1].split(",")
    assert float(x) == small_scan.x[0] and float(y) == small_scan.y[0]


def test_csv_byte_identical_for_identical_config(tmp_path):
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    write_csv(scan_gtn_zero_T((0.0, 1.0, 4), (0.0, 1.0, 4), j1=0.5), p1)
    write_csv(scan_gtn_zero_T((0.0, 1.0, 4), (0.0, 1.0, 4), j1=0.5), p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_json_roundtrip_bit_equal(small_scan, tmp_path):
    path = tmp_path / "scan.json"
    write_json(small_scan, path)
    back = read_json(path)
    assert np.array_equal(back.values, small_scan.values)
    assert np.array_equal(back.x, small_scan.x)
    assert back.quantity == small_scan.quantity
    assert back.metadata == small_scan.metadata


def test_json_byte_identical(small_scan, tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    write_json(small_scan, p1)
    write_json(small_scan, p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_schema_guard():
    with pytest.raises(ValueError, match="schema"):
        scan_from_dict({"schema": "something-else"})


def test_svg_wellformed_one_path_per_polyline(small_scan, tmp_path):
    contours = extract_contours(small_scan, [0.05, 0.2])
    path = tmp_path / "scan.svg"
    write_svg(small_scan, path, contours=contours, title="map")
    root = ET.parse(path).getroot()
    assert root.tag.endswith("svg")
    paths = [e for e in root.iter() if e.tag.endswith("path")]
    expected = sum(len(v) for v in contours.polylines.values())
    assert len(paths) == expected
    assert all(e.get("class") == "contour" for e in paths)
    texts = [e for e in root.iter() if e.tag.endswith("text")]
    labels = {e.text for e in texts}
    assert "h/J" in labels and "D/J" in labels
    cells = [e for e in root.iter() if e.tag.endswith("rect") and e.get("class") == "cell"]
    assert len(cells) == 6 * 5


def test_colormap_monotone_indices():
    vals = np.linspace(0.0, 1.0, CMAP_SIZE)
    idx = [color_index(v, 0.0, 1.0) for v in vals]
    assert idx == sorted(idx)
    assert len(set(idx)) == CMAP_SIZE


def test_colormap_rgb_bounds():
    for k in (0, 128, 255):
        rgb = colormap_rgb(k)
        assert all(0 <= c <= 255 for c in rgb)
    assert colormap_rgb(0) != colormap_rgb(255)


def test_contours_csv(tmp_path, small_scan):
    contours = extract_contours(small_scan, [0.1])
    path = tmp_path / "c.csv"
    write_contours_csv(contours, path)
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# isovalue")
    assert len(lines) - 1 == contours.total_points()


def test_phase_map_csv_and_boundaries(tmp_path):
    import csv

    pm = scan_phases(("d", -1.0, 1.0, 6), ("j1", 0.2, 2.0, 6), ModelParams())
    p1, p2 = tmp_path / "pm.csv", tmp_path / "pb.csv"
    write_phase_map_csv(pm, p1)
    write_phase_boundaries_csv(pm, p2)
    lines = p1.read_text().splitlines()
    assert len(lines) == 1 + 36
    row = next(csv.reader([lines[1]]))
    assert len(row) == 3
    assert row[2].startswith("|") and ">" in row[2]
    blines = p2.read_text().splitlines()
    n_pts = sum(len(pts) for pts in pm.boundaries.values())
    assert len(blines) == 1 + n_pts
    brow = next(csv.reader([blines[1]]))
    assert len(brow) == 4


def test_write_failure_surfaces_path(tmp_path, small_scan):
    bad = tmp_path / "no_such_dir" / "x.csv"
    with pytest.raises(OSError, match="no_such_dir"):
        write_csv(small_scan, bad)


def test_json_is_valid_json(small_scan, tmp_path):
    path = tmp_path / "scan.json"
    write_json(small_scan, path)
    payload = json.loads(path.read_text())
    assert payload["schema"] == "spintrimer.gridscan/1"
    assert payload["x"]["name"] == "h/J"
