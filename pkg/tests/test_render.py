import csv
import re

import numpy as np
import pytest
from shapely.geometry import LinearRing

from corpus import EXAMPLE_f
from polyharm import HarmonicMap, PolyharmonicMap
from polyharm.render import (
    FUNCTIONS,
    RenderSpec,
    image_grid,
    parse_transform,
    render,
    write_csv,
)

SMALL = RenderSpec(circles=4, rays=6, samples_per_curve=128)
IDENTITY = PolyharmonicMap.harmonic(HarmonicMap.from_coeffs([0, 1]))


def read_csv(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["curve_id", "t", "re", "im"]
    curves = {}
    for cid, t, re_, im in rows[1:]:
        curves.setdefault(cid, []).append((float(t), complex(float(re_), float(im))))
    return curves


def test_identity_circles_keep_radii(tmp_path):
    render(IDENTITY, tmp_path, ["f"], SMALL)
    curves = read_csv(tmp_path / "f.csv")
    assert len(curves) == SMALL.circles + SMALL.rays
    for k in range(1, SMALL.circles + 1):
        w = np.array([p for _, p in curves[f"circle{k:02d}"]])
        assert np.max(np.abs(np.abs(w) - k * SMALL.max_radius / SMALL.circles)) <= 1e-13


def test_analytic_dilatation_is_zero(tmp_path):
    render(IDENTITY, tmp_path, ["dilatation"], SMALL)
    for pts in read_csv(tmp_path / "dilatation.csv").values():
        assert all(w == 0 for _, w in pts)


def test_svg_mirrors_csv(tmp_path):
    render(EXAMPLE_f, tmp_path, FUNCTIONS, SMALL)
    for name in FUNCTIONS:
        text = (tmp_path / f"{name}.svg").read_text()
        W, H, a, cx, cy = parse_transform(text)
        curves = read_csv(tmp_path / f"{name}.csv")
        lines = re.findall(r'<polyline id="([^"]+)"[^>]*points="([^"]*)"', text)
        assert [cid for cid, _ in lines] == list(curves)
        for cid, pts in lines:
            xy = [tuple(map(float, p.split(","))) for p in pts.split()]
            assert len(xy) == len(curves[cid])
            for (X, Y), (_, w) in zip(xy, curves[cid]):
                assert X == W / 2 + a * (w.real - cx)
                assert Y == H / 2 - a * (w.imag - cy)


def test_canvas_margin(tmp_path):
    render(EXAMPLE_f, tmp_path, ["f"], SMALL)
    text = (tmp_path / "f.svg").read_text()
    nums = [float(v) for pts in re.findall(r'points="([^"]*)"', text)
            for p in pts.split() for v in p.split(",")]
    W = parse_transform(text)[0]
    assert min(nums) >= 0.045 * W and max(nums) <= 0.955 * W


def test_pole_splits_curve():
    # f_z = z vanishes at the origin, where every ray starts
    f = PolyharmonicMap.harmonic(HarmonicMap.from_coeffs([0, 0, 0.5], [0, 0.1]))
    fig = image_grid(f, "dilatation", SMALL)
    ids = [cid for cid, _, _ in fig.curves]
    assert "ray00.0" in ids and "ray00" not in ids
    assert fig.notes and all(np.all(np.isfinite(w)) for _, _, w in fig.curves)


def test_render_deterministic(tmp_path):
    render(EXAMPLE_f, tmp_path / "a", ["f"], SMALL)
    render(EXAMPLE_f, tmp_path / "b", ["f"], SMALL)
    assert (tmp_path / "a/f.csv").read_bytes() == (tmp_path / "b/f.csv").read_bytes()
    assert (tmp_path / "a/f.svg").read_bytes() == (tmp_path / "b/f.svg").read_bytes()


def test_example_images_are_simple():
    fig = image_grid(EXAMPLE_f, "F1-sum", SMALL)
    for cid, _, w in fig.curves:
        if cid.startswith("circle"):
            assert LinearRing(np.c_[w.real, w.imag][:-1]).is_simple


def test_render_spec_validation():
    with pytest.raises(ValueError):
        RenderSpec(max_radius=1.0)
    with pytest.raises(ValueError):
        RenderSpec(circles=0)
    with pytest.raises(ValueError):
        image_grid(IDENTITY, "nope", SMALL)


def test_csv_uses_repr(tmp_path):
    fig = image_grid(IDENTITY, "f", RenderSpec(1, 1, 3, 0.3))
    write_csv(fig, tmp_path / "x.csv")
    rows = (tmp_path / "x.csv").read_text().splitlines()
    assert rows[1] == "circle01,0.0,0.3,0.0"
