"""Images of a polar grid (concentric circles and radial segments) under a
map, written as CSV rows and matching SVG polylines.

The SVG auto-scales to the bounding box of the image with a 5% margin; the
affine transform is stored in a comment at the top of the file so every
polyline vertex can be mapped back to its CSV row.
"""

from __future__ import annotations

import csv
import math
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .series import (
    DILATATION_POLE,
    PolyharmonicMap,
    eval_harmonic,
    eval_polyharmonic,
    slice_map,
    wirtinger,
)

FUNCTIONS = ("F1-sum", "f", "dilatation")
MARGIN = 0.05


@dataclass(frozen=True)
class RenderSpec:
    circles: int = 10
    rays: int = 24
    samples_per_curve: int = 1024
    max_radius: float = 0.99
    width: float = 480.0
    height: float = 480.0

    def __post_init__(self):
        if min(self.circles, self.rays) < 1 or self.samples_per_curve < 2:
            raise ValueError("render counts must be positive")
        if not 0.0 < self.max_radius < 1.0:
            raise ValueError("max_radius must lie in (0, 1)")


@dataclass
class Figure:
    name: str
    curves: list = field(default_factory=list)  # (curve_id, t, w)
    notes: list = field(default_factory=list)


def _mapper(f: PolyharmonicMap, which: str):
    if which == "F1-sum":
        g = slice_map(f, 1.0)
        return lambda z: eval_harmonic(g, z)
    if which == "f":
        return lambda z: eval_polyharmonic(f, z)
    if which == "dilatation":
        def a_f(z):
            fz, fzb = wirtinger(f, z)
            out = np.full(np.shape(z), np.nan + 0j)
            ok = np.abs(fz) >= DILATATION_POLE
            out[ok] = fzb[ok] / fz[ok]
            return out
        return a_f
    raise ValueError(f"unknown function {which!r}; choose from {FUNCTIONS}")


def _add(fig: Figure, cid: str, t, w):
    finite = np.isfinite(w)
    if finite.all():
        fig.curves.append((cid, t, w))
        return
    # split at poles; each finite run becomes its own polyline
    edges = np.flatnonzero(np.diff(np.concatenate([[0], finite.astype(int), [0]])))
    runs = list(zip(edges[0::2], edges[1::2]))
    fig.notes.append(f"{cid}: pole of the dilatation, split into {len(runs)} pieces")
    for k, (a, b) in enumerate(runs):
        fig.curves.append((f"{cid}.{k}", t[a:b], w[a:b]))


def image_grid(f: PolyharmonicMap, which: str, spec: RenderSpec = RenderSpec()) -> Figure:
    fn = _mapper(f, which)
    fig = Figure(which)
    n = spec.samples_per_curve
    theta = np.linspace(0.0, 2 * np.pi, n)
    for k in range(1, spec.circles + 1):
        rho = k * spec.max_radius / spec.circles
        _add(fig, f"circle{k:02d}", theta, fn(rho * np.exp(1j * theta)))
    radius = np.linspace(0.0, spec.max_radius, n)
    for j in range(spec.rays):
        phi = 2 * np.pi * j / spec.rays
        _add(fig, f"ray{j:02d}", radius, fn(radius * np.exp(1j * phi)))
    return fig


def write_csv(fig: Figure, path) -> None:
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["curve_id", "t", "re", "im"])
        for cid, t, w in fig.curves:
            for tt, ww in zip(t, w):
                out.writerow([cid, repr(float(tt)), repr(float(ww.real)), repr(float(ww.imag))])


def canvas_transform(fig: Figure, width: float, height: float) -> tuple:
    """``(a, cx, cy)`` with ``X = W/2 + a (re - cx)``, ``Y = H/2 - a (im - cy)``."""
    pts = np.concatenate([w for _, _, w in fig.curves]) if fig.curves else np.zeros(1)
    x0, x1 = float(pts.real.min()), float(pts.real.max())
    y0, y1 = float(pts.imag.min()), float(pts.imag.max())
    dx = x1 - x0 if x1 > x0 else 1.0
    dy = y1 - y0 if y1 > y0 else 1.0
    a = min(width / (dx * (1 + 2 * MARGIN)), height / (dy * (1 + 2 * MARGIN)))
    return a, 0.5 * (x0 + x1), 0.5 * (y0 + y1)


_TRANSFORM_RE = re.compile(
    r"transform: X = W/2 \+ a\*\(re - cx\), Y = H/2 - a\*\(im - cy\); "
    r"W=(\S+) H=(\S+) a=(\S+) cx=(\S+) cy=(\S+)")


def parse_transform(svg_text: str) -> tuple:
    """Read ``(W, H, a, cx, cy)`` back from an SVG written by ``write_svg``."""
    m = _TRANSFORM_RE.search(svg_text)
    if not m:
        raise ValueError("no transform comment found")
    return tuple(float(v) for v in m.groups())


def write_svg(fig: Figure, path, width: float = 480.0, height: float = 480.0) -> None:
    a, cx, cy = canvas_transform(fig, width, height)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width!r}" height="{height!r}" '
        f'viewBox="0 0 {width!r} {height!r}">',
        f"<!-- image of a polar grid under {fig.name} -->",
        f"<!-- transform: X = W/2 + a*(re - cx), Y = H/2 - a*(im - cy); "
        f"W={width!r} H={height!r} a={a!r} cx={cx!r} cy={cy!r} -->",
    ]
    lines += [f"<!-- {note} -->" for note in fig.notes]
    lines.append(f'<rect width="{width!r}" height="{height!r}" fill="white"/>')
    for cid, _, w in fig.curves:
        X = width / 2 + a * (w.real - cx)
        Y = height / 2 - a * (w.imag - cy)
        pts = " ".join(f"{x!r},{y!r}" for x, y in zip(X.tolist(), Y.tolist()))
        color = "#1f4e9c" if cid.startswith("circle") else "#b03a2e"
        lines.append(f'<polyline id="{cid}" fill="none" stroke="{color}" '
                     f'stroke-width="0.8" points="{pts}"/>')
    lines.append("</svg>")
    Path(path).write_text("\n".join(lines) + "\n")


def render(f: PolyharmonicMap, out_dir, which=FUNCTIONS, spec: RenderSpec = RenderSpec()) -> list:
    """Write ``<name>.svg`` and ``<name>.csv`` per requested function."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name in which:
        fig = image_grid(f, name, spec)
        csv_path, svg_path = out_dir / f"{name}.csv", out_dir / f"{name}.svg"
        write_csv(fig, csv_path)
        write_svg(fig, svg_path, spec.width, spec.height)
        written += [svg_path, csv_path]
    return written


def max_modulus(fig: Figure) -> float:
    return max((float(np.max(np.abs(w))) for _, _, w in fig.curves), default=math.nan)
