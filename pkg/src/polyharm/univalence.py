"""Winding numbers, curve simplicity and grid-relative univalence verdicts.

A ``certified_fail`` always carries a witness that can be re-checked on its
own (a Jacobian sign, a pair of crossing boundary segments, or a winding
number other than one). A ``certified_pass`` only means that nothing was
found at the recorded resolution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import kernels
from .errors import CurveTooCoarseError, DomainError, IllConditionedError
from .series import (
    GridSpec,
    HarmonicMap,
    PolyharmonicMap,
    eval_harmonic,
    eval_polyharmonic,
    jacobian,
    slice_map,
)

PASS = "certified_pass"
FAIL = "certified_fail"
INCONCLUSIVE = "inconclusive"

JACOBIAN_FLOOR = 1e-12
NEAR_CURVE = 1e-10
COARSE_INCREMENT = math.pi / 2
INTERIOR_FRACTIONS = (0.1, 0.3, 0.5, 0.7, 0.9)
INTERIOR_ANGLES = 5
RADO_BOUND = 1e6


@dataclass(frozen=True, eq=False)
class Curve:
    """Polygonal curve: parameter values and the points they map to.

    ``sampler`` (parameter -> point) and ``period`` enable refinement;
    consecutive duplicate points are dropped on construction.
    """

    params: np.ndarray
    points: np.ndarray
    closed: bool = True
    sampler: Optional[Callable] = field(default=None, repr=False)
    period: Optional[float] = None

    def __post_init__(self):
        t = np.asarray(self.params, dtype=float).ravel()
        p = np.asarray(self.points, dtype=np.complex128).ravel()
        if t.shape != p.shape:
            raise ValueError("params and points must have the same length")
        keep = np.ones(len(p), dtype=bool)
        keep[1:] = p[1:] != p[:-1]
        if self.closed and len(p) > 1 and p[-1] == p[0]:
            keep[-1] = False
        t, p = t[keep], p[keep]
        t.flags.writeable = False
        p.flags.writeable = False
        object.__setattr__(self, "params", t)
        object.__setattr__(self, "points", p)

    def __len__(self):
        return len(self.points)

    def refined(self) -> Curve:
        """Curve with a new sample at every parameter midpoint."""
        if self.sampler is None:
            raise CurveTooCoarseError("curve has no sampler; cannot refine")
        t = self.params
        if self.closed:
            nxt = np.append(t[1:], t[0] + (self.period or 0.0))
        else:
            nxt = t[1:]
        mid = 0.5 * (t[: len(nxt)] + nxt)
        new_t = np.empty(len(t) + len(mid))
        new_t[0::2] = t
        new_t[1::2] = mid
        new_p = np.empty(len(new_t), dtype=np.complex128)
        new_p[0::2] = self.points
        new_p[1::2] = self.sampler(mid)
        return Curve(new_t, new_p, self.closed, self.sampler, self.period)


def circle_curve(fn: Callable, r: float, n: int) -> Curve:
    """Image of the circle ``|z| = r`` under ``fn`` at ``n`` equispaced angles."""
    t = 2 * np.pi * np.arange(n) / n

    def sampler(theta):
        return fn(r * np.exp(1j * np.asarray(theta)))

    return Curve(t, sampler(t), True, sampler, 2 * np.pi)


@dataclass(frozen=True)
class Witness:
    z: complex
    value: float
    kind: str
    others: tuple = ()
    radius: Optional[float] = None

    def to_dict(self) -> dict:
        out = {"z": [float(self.z.real), float(self.z.imag)], "value": self.value, "kind": self.kind}
        if self.others:
            out["others"] = [[float(w.real), float(w.imag)] for w in self.others]
        if self.radius is not None:
            out["radius"] = self.radius
        return out


@dataclass(frozen=True)
class Verdict:
    status: str
    witnesses: tuple = ()
    grid: Optional[GridSpec] = None
    notes: str = ""

    def __post_init__(self):
        if self.status not in (PASS, FAIL, INCONCLUSIVE):
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == FAIL and not self.witnesses:
            raise ValueError("a certified failure needs a witness")
        object.__setattr__(self, "witnesses", tuple(self.witnesses))

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "witnesses": [w.to_dict() for w in self.witnesses],
            "grid": self.grid.to_dict() if self.grid else None,
            "notes": self.notes,
        }


@dataclass(frozen=True)
class Crossing:
    """Segments ``i`` and ``j`` (point index to next point index) meet at ``point``."""

    i: int
    j: int
    point: complex


def _segment_distance(points, closed, w0):
    a = points
    b = np.roll(points, -1) if closed else points[1:]
    a = a[: len(b)]
    e = b - a
    ee = np.abs(e) ** 2
    with np.errstate(invalid="ignore", divide="ignore"):
        s = np.clip(((w0 - a) * np.conj(e)).real / ee, 0.0, 1.0)
    s = np.where(ee > 0, s, 0.0)
    return float(np.min(np.abs(a + s * e - w0)))


def winding_number(c: Curve, w0: complex) -> int:
    """Number of turns of ``c`` around ``w0``, from summed angle increments.

    Increments of ``pi/2`` or more trigger one 2x refinement; if that does
    not bring them below ``pi/2`` the curve is rejected as too coarse.
    """
    if not c.closed:
        raise ValueError("winding number needs a closed curve")
    w0 = complex(w0)
    for attempt in range(2):
        if _segment_distance(c.points, True, w0) <= NEAR_CURVE:
            raise IllConditionedError(f"point {w0} lies within {NEAR_CURVE} of the curve")
        total, biggest = kernels.winding_sum(c.points, w0)
        if biggest < COARSE_INCREMENT:
            return int(round(total / (2 * math.pi)))
        if attempt == 0:
            c = c.refined()
    raise CurveTooCoarseError(
        f"angle increment {biggest:.3g} rad >= pi/2 after refinement ({len(c)} samples)")


def _crossing_point(a1, b1, a2, b2) -> complex:
    e1, e2 = b1 - a1, b2 - a2
    denom = (e1.real * e2.imag - e1.imag * e2.real)
    if denom == 0:  # collinear overlap: report the shared endpoint closest to a1
        cands = [p for p in (a2, b2, a1, b1)]
        return complex(min(cands, key=lambda p: abs(p - a1)))
    w = a2 - a1
    s = (w.real * e2.imag - w.imag * e2.real) / denom
    return complex(a1 + s * e1)


def curve_self_intersects(c: Curve):
    """``(True, Crossing)`` for the first pair of crossing non-adjacent
    segments, else ``(False, None)``."""
    if len(c) < 4:
        raise ValueError("self-intersection test needs at least 4 points")
    i, j = kernels.first_self_crossing(c.points, c.closed)
    if i < 0:
        return False, None
    n = len(c)
    p = c.points
    pt = _crossing_point(p[i], p[(i + 1) % n], p[j], p[(j + 1) % n])
    return True, Crossing(int(i), int(j), pt)


def curves_intersect(a: Curve, b: Curve):
    """``(True, (i, j))`` if some segment of ``a`` meets one of ``b``."""
    i, j = kernels.first_crossing_between(a.points, a.closed, b.points, b.closed)
    if i < 0:
        return False, None
    return True, (int(i), int(j))


def interior_points(r: float) -> np.ndarray:
    """Sample points for the degree check: 25 points on five circles in ``D_r``."""
    t = 2 * np.pi * np.arange(INTERIOR_ANGLES) / INTERIOR_ANGLES + 0.1
    rad = r * np.asarray(INTERIOR_FRACTIONS)
    return (rad[:, None] * np.exp(1j * t)[None, :]).ravel()


def _jacobian_witness(J, pts, radius=None):
    k = int(np.argmin(J))
    value = float(J[k])
    if abs(value) < JACOBIAN_FLOOR:
        note = "vanishing Jacobian"
    elif np.any(J > JACOBIAN_FLOOR):
        note = "Jacobian changes sign"
    else:
        note = "Jacobian negative (sense-reversing)"
    return Witness(complex(pts[k]), value, "jacobian", radius=radius), note


def is_univalent_harmonic(F: HarmonicMap, r: float, grid: GridSpec = GridSpec()) -> Verdict:
    """Grid-relative univalence check of ``F`` on the disk ``|z| < r``.

    Fails on a non-positive Jacobian at a grid point, a self-crossing image
    of ``|z| = r``, or a boundary image winding other than once around the
    image of an interior sample point.
    """
    if not 0.0 < r < 1.0:
        raise DomainError(f"radius {r} outside (0, 1)")
    f = PolyharmonicMap.harmonic(F)
    pts = grid.points(r)
    J = jacobian(f, pts)
    if np.min(J) < JACOBIAN_FLOOR:
        w, note = _jacobian_witness(J, pts)
        return Verdict(FAIL, (w,), grid, f"{note} in D_r, r={r!r}")

    def image(z):
        return eval_harmonic(F, z)

    boundary = circle_curve(image, r, grid.curve_samples)
    crossed, cr = curve_self_intersects(boundary)
    if crossed:
        n = len(boundary)
        pre = r * np.exp(1j * boundary.params[[cr.i, (cr.i + 1) % n, cr.j, (cr.j + 1) % n]])
        w = Witness(complex(pre[0]), 0.0, "crossing", tuple(complex(x) for x in pre[1:]))
        return Verdict(FAIL, (w,), grid,
                       f"image of |z|={r!r} crosses itself near {cr.point:.6g}")

    for z0 in interior_points(r):
        try:
            n_turns = winding_number(boundary, image(z0))
        except (CurveTooCoarseError, IllConditionedError) as exc:
            return Verdict(INCONCLUSIVE, (), grid, f"degree check at r={r!r}: {exc}")
        if n_turns != 1:
            w = Witness(complex(z0), float(n_turns), "winding")
            return Verdict(FAIL, (w,), grid,
                           f"boundary image winds {n_turns} times around F(z0), r={r!r}")
    return Verdict(PASS, (), grid,
                   f"no violation at this resolution (r={r!r}, {len(pts)} grid points, "
                   f"{len(boundary)} boundary samples)")


def _check_radii(radii):
    radii = [float(r) for r in radii]
    if not radii:
        raise DomainError("need at least one radius")
    if any(not 0.0 < r < 1.0 for r in radii):
        raise DomainError("radii must lie in (0, 1)")
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise DomainError("radii must be strictly increasing")
    return radii


def lemma1_slice_test(f: PolyharmonicMap, radii, grid: GridSpec = GridSpec()) -> Verdict:
    """Univalence of ``f`` via univalence of every slice map on its own disk.

    Requires ``f`` to be sense-preserving on the grid; the first failing
    radius is reported on the witness.
    """
    radii = _check_radii(radii)
    pts = grid.points(1.0)
    J = jacobian(f, pts)
    if np.min(J) < JACOBIAN_FLOOR:
        w, note = _jacobian_witness(J, pts)
        return Verdict(FAIL, (w,), grid, f"f is not sense-preserving on the grid: {note}")
    pending = None
    for r in radii:
        v = is_univalent_harmonic(slice_map(f, r), r, grid)
        if v.status == FAIL:
            w = v.witnesses[0]
            w = Witness(w.z, w.value, w.kind, w.others, r)
            return Verdict(FAIL, (w,), grid, f"slice at r={r!r} fails: {v.notes}")
        if v.status == INCONCLUSIVE and pending is None:
            pending = v
    if pending is not None:
        return Verdict(INCONCLUSIVE, (), grid, pending.notes)
    return Verdict(PASS, (), grid,
                   f"all {len(radii)} slices univalent at this resolution "
                   f"(r from {radii[0]!r} to {radii[-1]!r})")


@dataclass(frozen=True)
class RadoReport:
    radii: tuple
    max_modulus: tuple
    bounded: bool
    flagged: bool
    notes: str

    def to_dict(self) -> dict:
        return {
            "radii": list(self.radii),
            "max_modulus": list(self.max_modulus),
            "bounded": self.bounded,
            "flagged": self.flagged,
            "notes": self.notes,
        }


def rado_consistency_probe(f: PolyharmonicMap, radii, samples: int = 1024,
                           bound: float = RADO_BOUND) -> RadoReport:
    """Growth of ``M(r) = max |f|`` on ``|z| = r``.

    A univalent map of the disk cannot cover the whole plane; a bounded
    ``M(r)`` as ``r -> 1`` is consistent with that, growth past ``bound``
    is flagged for manual review. This is a probe, not a proof.
    """
    radii = _check_radii(radii)
    t = 2 * np.pi * np.arange(samples) / samples
    e = np.exp(1j * t)
    M = tuple(float(np.max(np.abs(eval_polyharmonic(f, r * e)))) for r in radii)
    bounded = all(math.isfinite(m) and m <= bound for m in M)
    notes = (f"M(r) stays below {bound:g} up to r={radii[-1]!r}: image bounded, not the whole plane"
             if bounded else f"M(r) exceeds {bound:g}: review growth manually")
    return RadoReport(tuple(radii), M, bounded, not bounded, notes)
