"""Boundary behaviour of biharmonic maps ``f = F1 + |z|^2 F2``.

Radial limits stand in for unrestricted limits, and every report carries
the sequence it was computed from. Radii for truncated (log-type) series
are capped at the series' ``valid_radius``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DegenerateError, DomainError
from .series import (
    AnalyticSeries,
    HarmonicMap,
    PolyharmonicMap,
    eval_analytic,
    eval_harmonic,
    eval_polyharmonic,
)
from .univalence import Curve

TAIL = 5
JUMP_THRESHOLD = 1e-3
CONTINUITY_THRESHOLD = 1e-6
BAND_WIDTH = 0.10
DECAY_SLOPE = 0.25
SMALL_O_THRESHOLD = 1e-3
CAUCHY_TOL = 1e-4
GROWTH_SLACK = 0.20
PHI_POLE = 1e-14

JUMP = "jump"
CONTINUOUS = "continuous"
DIVERGENT = "divergent"
CONVERGENT = "convergent"
INCONCLUSIVE = "inconclusive"


def approach_radii(limit: float = 1.0, count: int = 24) -> list:
    """Radii increasing towards ``limit`` with geometrically shrinking gaps.

    For ``limit >= 1`` the gaps ``1 - r`` run from 1e-1 down to 1e-10;
    otherwise from 0.5 down to ``1 - limit``.
    """
    if count < TAIL:
        raise ValueError(f"need at least {TAIL} radii")
    if limit >= 1.0:
        gaps = np.logspace(-1, -10, count)
    else:
        if not 0.5 < limit < 1.0:
            raise DomainError("limit must lie in (0.5, 1]")
        gaps = np.geomspace(0.5, 1.0 - limit, count)
    return [float(1.0 - g) for g in gaps]


def _check_radii(radii, *series: AnalyticSeries, last_at_least: Optional[float] = None):
    radii = np.asarray([float(r) for r in radii])
    if len(radii) < TAIL:
        raise DomainError(f"need at least {TAIL} radii")
    if np.any(radii <= 0) or np.any(radii >= 1):
        raise DomainError("radii must lie in (0, 1)")
    if np.any(np.diff(radii) <= 0):
        raise DomainError("radii must be strictly increasing")
    if last_at_least is not None and radii[-1] < last_at_least:
        raise DomainError(f"largest radius must be at least {last_at_least}")
    cap = min((s.valid_radius for s in series), default=1.0)
    if radii[-1] > cap:
        raise DomainError(
            f"radius {radii[-1]!r} exceeds the truncation-valid radius {cap:.6g}")
    return radii


@dataclass(frozen=True)
class RadialLimit:
    value: complex
    diagnostic: float
    radii: tuple
    values: tuple

    def to_dict(self) -> dict:
        return {
            "value": [self.value.real, self.value.imag],
            "diagnostic": self.diagnostic,
            "radii": list(self.radii),
            "values": [[v.real, v.imag] for v in self.values],
        }


def boundary_function_radial(f: PolyharmonicMap, t: float, radii) -> RadialLimit:
    """Radial approximation of the boundary value of ``f`` at ``e^(it)``.

    ``diagnostic`` is the largest step between successive values over the
    last five radii (a Cauchy-tail check); it is the caller's evidence that
    the limit exists, not a proof.
    """
    comps = [s for F in f.components for s in (F.h, F.g)]
    radii = _check_radii(radii, *comps, last_at_least=0.999)
    vals = eval_polyharmonic(f, radii * np.exp(1j * t))
    diag = float(np.max(np.abs(np.diff(vals[-TAIL:]))))
    return RadialLimit(complex(vals[-1]), diag, tuple(radii.tolist()),
                       tuple(complex(v) for v in vals))


@dataclass(frozen=True)
class JumpReport:
    theta0: float
    c_estimate: float
    r_sequence: tuple
    values: tuple
    verdict: str
    decay_slope: float
    threshold: float = JUMP_THRESHOLD

    def to_dict(self) -> dict:
        return {
            "theta0": self.theta0,
            "c_estimate": self.c_estimate,
            "r_sequence": list(self.r_sequence),
            "values": list(self.values),
            "verdict": self.verdict,
            "decay_slope": self.decay_slope,
            "threshold": self.threshold,
        }


def _decay_slope(radii, values):
    v = np.asarray(values)
    if np.any(v <= 0):
        return math.inf
    slope = np.polyfit(np.log(1.0 - np.asarray(radii)), np.log(v), 1)[0]
    return float(slope)


def jump_indicator(H1: AnalyticSeries, H2: AnalyticSeries, theta0: float, radii,
                   threshold: float = JUMP_THRESHOLD) -> JumpReport:
    """Track ``v(r) = (1 - r) |H1'(r e^(i theta0)) + H2'(r e^(i theta0))|``.

    ``jump`` when the last five values sit in a 10%-wide band around a mean
    above ``threshold``; ``continuous`` when they are all below 1e-6 and
    decreasing, or decreasing like a positive power of ``1 - r`` (log-log
    slope at least 0.25); otherwise ``inconclusive``.
    """
    radii = _check_radii(radii, H1, H2)
    dH = H1.derivative() + H2.derivative()
    v = (1.0 - radii) * np.abs(eval_analytic(dH, radii * np.exp(1j * theta0)))
    tail_r, tail = radii[-TAIL:], v[-TAIL:]
    mean = float(tail.mean())
    decreasing = bool(np.all(np.diff(tail) < 0))
    slope = _decay_slope(tail_r, tail)
    if mean > threshold and (tail.max() - tail.min()) <= BAND_WIDTH * mean:
        verdict, c = JUMP, mean
    elif decreasing and (np.all(tail < CONTINUITY_THRESHOLD) or slope >= DECAY_SLOPE):
        verdict, c = CONTINUOUS, float(tail[-1])
    else:
        verdict, c = INCONCLUSIVE, float(tail[-1])
    return JumpReport(float(theta0), c, tuple(radii.tolist()), tuple(v.tolist()),
                      verdict, slope, threshold)


@dataclass(frozen=True)
class SmallOReport:
    holds: bool
    trace: tuple  # (r, (1 - r)|F2(r e^(i theta0))|) pairs

    def to_dict(self) -> dict:
        return {"holds": self.holds, "trace": [list(p) for p in self.trace]}


def small_o_probe(F2: HarmonicMap, theta0: float, radii) -> SmallOReport:
    """Advisory check that ``(1 - r)|F2(r e^(i theta0))|`` decays below 1e-3.

    The distance ``1 - r`` to the boundary point is what the coincidence of
    boundary values of ``f`` and ``F1 + F2`` needs.
    """
    radii = _check_radii(radii, F2.h, F2.g)
    vals = (1.0 - radii) * np.abs(eval_harmonic(F2, radii * np.exp(1j * theta0)))
    tail = vals[-TAIL:]
    non_increasing = bool(np.all(np.diff(tail) <= 1e-15 + 1e-12 * tail[:-1]))
    holds = non_increasing and bool(tail[-1] < SMALL_O_THRESHOLD)
    return SmallOReport(holds, tuple(zip(radii.tolist(), vals.tolist())))


@dataclass(frozen=True, eq=False)
class GammaCurve:
    """Samples of ``(1 - m|theta - theta0|) e^(i theta)`` for
    ``0 < |theta - theta0| <= min(pi, 1/m)``, ``n`` on each side."""

    m: float
    theta0: float
    n: int
    samples: Curve

    @property
    def half_width(self) -> float:
        return min(math.pi, 1.0 / self.m)

    def point(self, theta):
        theta = np.asarray(theta, dtype=float)
        return (1.0 - self.m * np.abs(theta - self.theta0)) * np.exp(1j * theta)

    def side_offsets(self) -> np.ndarray:
        """Positive offsets ``|theta - theta0|`` of one side, ascending."""
        return self.half_width * np.arange(1, self.n + 1) / self.n


def gamma_curve(m: float, theta0: float, n: int = 1 << 17) -> GammaCurve:
    if not m > 0:
        raise DomainError("m must be positive")
    if n < 16:
        raise DomainError("need at least 16 samples per side")
    T = min(math.pi, 1.0 / m)
    s = T * np.arange(1, n + 1) / n
    theta = np.concatenate([theta0 - s[::-1], theta0 + s])
    pts = (1.0 - m * np.abs(theta - theta0)) * np.exp(1j * theta)
    return GammaCurve(float(m), float(theta0), int(n), Curve(theta, pts, closed=False))


def phi_quotient(F1: HarmonicMap, F2: HarmonicMap, z):
    """``(G1' + G2') / (H1' + H2')`` at ``z``."""
    num = eval_analytic(F1.g.derivative() + F2.g.derivative(), z)
    den = eval_analytic(F1.h.derivative() + F2.h.derivative(), z)
    if np.any(np.abs(den) <= PHI_POLE):
        raise DegenerateError("H1' + H2' vanishes: phi is undefined")
    return num / den


@dataclass(frozen=True)
class DivergenceReport:
    m: float
    theta0: float
    cutoffs: tuple
    partial_integrals: tuple
    slope: float
    intercept: float
    relative_residual: float
    verdict: str
    max_abs_phi: float
    hypothesis_violated: bool

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "theta0": self.theta0,
            "cutoffs": list(self.cutoffs),
            "partial_integrals": list(self.partial_integrals),
            "slope": self.slope,
            "intercept": self.intercept,
            "relative_residual": self.relative_residual,
            "verdict": self.verdict,
            "max_abs_phi": self.max_abs_phi,
            "hypothesis_violated": self.hypothesis_violated,
        }


def _classify(cutoffs, integrals):
    I = np.asarray(integrals)
    L = np.log(1.0 / np.asarray(cutoffs))
    last = slice(-3, None)
    steps = np.diff(I[last])
    if len(I) >= 2 and np.all(np.abs(np.diff(I[-min(3, len(I)):])) < CAUCHY_TOL):
        return CONVERGENT
    if len(I) >= 3:
        rates = steps / np.diff(L[last])
        if np.all(rates > 0) and rates[-1] >= (1.0 - GROWTH_SLACK) * rates[0]:
            return DIVERGENT
    return INCONCLUSIVE


def gamma_integral(gamma: GammaCurve, cutoffs, abs_phi: Optional[Callable] = None):
    """Partial integrals of ``(1 - |phi|^2) / (1 - |z|^2) |dz|`` over the
    part of ``gamma`` with ``|theta - theta0| >= delta``, one per cutoff.

    Trapezoidal sums against polygonal arc length; the truncation point at
    each cutoff is evaluated exactly. ``abs_phi`` maps points to ``|phi|``
    (default: ``phi = 0``). Returns ``(integrals, max |phi|)``.
    """
    cutoffs = [float(d) for d in cutoffs]
    T = gamma.half_width
    if any(not 0.0 < d < T for d in cutoffs):
        raise DomainError(f"cutoffs must lie in (0, {T:.6g})")
    s = gamma.side_offsets()

    def weight(z):
        a = np.zeros(np.shape(z)) if abs_phi is None else np.abs(abs_phi(z))
        return (1.0 - a**2) / (1.0 - np.abs(z) ** 2), (float(a.max()) if np.size(a) else 0.0)

    total = np.zeros(len(cutoffs))
    max_phi = 0.0
    for sign in (-1.0, 1.0):
        z = gamma.point(gamma.theta0 + sign * s)
        w, mp = weight(z)
        max_phi = max(max_phi, mp)
        seg = 0.5 * (w[:-1] + w[1:]) * np.abs(np.diff(z))
        suffix = np.concatenate([np.cumsum(seg[::-1])[::-1], [0.0]])
        d = np.asarray(cutoffs)
        k0 = np.searchsorted(s, d, side="left")
        zd = gamma.point(gamma.theta0 + sign * d)
        wd, mp = weight(zd)
        max_phi = max(max_phi, mp)
        head = 0.5 * (wd + w[k0]) * np.abs(z[k0] - zd)
        total += suffix[k0] + head
    return total, max_phi


def continuity_integral(F1: HarmonicMap, F2: HarmonicMap, gamma: GammaCurve,
                        cutoffs) -> DivergenceReport:
    """Divergence evidence for the curve integral of ``(1-|phi|^2)/(1-|z|^2)``.

    Divergence (log-proportional growth or faster over the last three
    cutoffs) is evidence of continuity of the boundary function at
    ``e^(i theta0)``; a convergent integral is never read as a jump.
    """
    if not gamma.m < 1.0 / math.pi:
        raise DomainError(f"m={gamma.m!r} outside the admissible range 0 < m < 1/pi")
    cutoffs = sorted((float(d) for d in cutoffs), reverse=True)
    integrals, max_phi = gamma_integral(gamma, cutoffs,
                                        lambda z: np.abs(phi_quotient(F1, F2, z)))
    L = np.log(1.0 / np.asarray(cutoffs))
    if len(cutoffs) >= 2:
        slope, intercept = np.polyfit(L, integrals, 1)
        resid = float(np.linalg.norm(integrals - (slope * L + intercept))
                      / max(np.linalg.norm(integrals), 1e-300))
    else:
        slope, intercept, resid = 0.0, float(integrals[0]), 0.0
    return DivergenceReport(gamma.m, gamma.theta0, tuple(cutoffs),
                            tuple(float(x) for x in integrals), float(slope),
                            float(intercept), resid, _classify(cutoffs, integrals),
                            max_phi, max_phi >= 1.0)
