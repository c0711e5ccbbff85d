"""Truncated power-series representation of planar (poly)harmonic maps.

A harmonic map is stored as two analytic halves, ``F = h + conj(g)``; a
polyharmonic map of order ``p`` as the components of

    f(z) = sum_k |z|^(2(k-1)) F_k(z),    k = 1..p.

All evaluators accept a scalar or an array of points and return the same
shape. Points must lie in the closed unit disk.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .errors import DegenerateError, DomainError

DOMAIN_SLACK = 1e-12
DILATATION_POLE = 1e-14
TRUNCATION_TAIL = 1e-2
DEFAULT_TRUNCATION = 64


@dataclass(frozen=True, eq=False)
class AnalyticSeries:
    """Coefficients ``c_0..c_N`` of ``sum c_n z^n``.

    ``truncated`` marks a finite section of an infinite series; such a
    series is only trusted on ``|z| <= valid_radius``.
    """

    coeffs: np.ndarray
    truncated: bool = False

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128).ravel()
        if c.size == 0:
            raise ValueError("a series needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zero(cls) -> AnalyticSeries:
        return cls([0.0])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def valid_radius(self) -> float:
        """Largest radius where the dropped tail is below ``TRUNCATION_TAIL``
        (relative to a unit-modulus geometric tail). Exact polynomials: 1."""
        if not self.truncated or self.degree < 1:
            return 1.0
        return TRUNCATION_TAIL ** (1.0 / self.degree)

    def derivative(self) -> AnalyticSeries:
        if self.degree == 0:
            return AnalyticSeries([0.0], self.truncated)
        n = np.arange(1, len(self.coeffs))
        return AnalyticSeries(self.coeffs[1:] * n, self.truncated)

    def scaled(self, factor: complex) -> AnalyticSeries:
        return AnalyticSeries(self.coeffs * factor, self.truncated)

    def __add__(self, other: AnalyticSeries) -> AnalyticSeries:
        n = max(len(self.coeffs), len(other.coeffs))
        c = np.zeros(n, dtype=np.complex128)
        c[: len(self.coeffs)] += self.coeffs
        c[: len(other.coeffs)] += other.coeffs
        return AnalyticSeries(c, self.truncated or other.truncated)

    def __call__(self, z):
        return eval_analytic(self, z)

    def __repr__(self):
        return f"AnalyticSeries({self.coeffs.tolist()!r})"


@dataclass(frozen=True, eq=False)
class HarmonicMap:
    """``F = h + conj(g)`` with analytic ``h`` and ``g``."""

    h: AnalyticSeries
    g: AnalyticSeries

    @classmethod
    def from_coeffs(cls, h: Sequence[complex] = (0.0,), g: Sequence[complex] = (0.0,),
                    truncated: bool = False) -> HarmonicMap:
        return cls(AnalyticSeries(h, truncated), AnalyticSeries(g, truncated))

    @property
    def truncated(self) -> bool:
        return self.h.truncated or self.g.truncated

    def conjugate(self) -> HarmonicMap:
        """The map ``g + conj(h)``, i.e. the halves swapped."""
        return HarmonicMap(self.g, self.h)

    def __call__(self, z):
        return eval_harmonic(self, z)


@dataclass(frozen=True, eq=False)
class PolyharmonicMap:
    """Components ``F_1..F_p`` of ``f = sum |z|^(2(k-1)) F_k``."""

    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("a polyharmonic map needs at least one component")
        for c in comps:
            if not isinstance(c, HarmonicMap):
                raise TypeError("components must be HarmonicMap instances")
        object.__setattr__(self, "components", comps)

    @classmethod
    def harmonic(cls, F: HarmonicMap) -> PolyharmonicMap:
        return cls((F,))

    @property
    def p(self) -> int:
        return len(self.components)

    @property
    def truncated(self) -> bool:
        return any(c.truncated for c in self.components)

    def __call__(self, z):
        return eval_polyharmonic(self, z)


@dataclass(frozen=True)
class GridSpec:
    """Polar sample grid ``{r_i e^(i theta_j)}`` with ``r_i`` uniform in
    ``(0, max_radius]`` and ``theta_j`` uniform in ``[0, 2 pi)``.

    ``curve_samples`` is the number of points used for boundary curves.
    """

    radial_count: int = 64
    angular_count: int = 256
    max_radius: float = 0.995
    curve_samples: int = 1024

    def __post_init__(self):
        if self.radial_count < 1 or self.angular_count < 1 or self.curve_samples < 3:
            raise ValueError("grid counts must be positive (curve_samples >= 3)")
        if not 0.0 < self.max_radius < 1.0:
            raise ValueError("max_radius must lie in (0, 1)")

    def points(self, scale: float = 1.0) -> np.ndarray:
        r = self.max_radius * np.arange(1, self.radial_count + 1) / self.radial_count
        t = 2 * np.pi * np.arange(self.angular_count) / self.angular_count
        return (scale * r[:, None] * np.exp(1j * t)[None, :]).ravel()

    def to_dict(self) -> dict:
        return {
            "radial_count": self.radial_count,
            "angular_count": self.angular_count,
            "max_radius": self.max_radius,
            "curve_samples": self.curve_samples,
        }


def _as_points(z):
    arr = np.asarray(z, dtype=np.complex128)
    if np.any(np.abs(arr) > 1.0 + DOMAIN_SLACK):
        raise DomainError("evaluation point outside the closed unit disk")
    return arr


def _ret(z, value):
    return value[()] if np.ndim(z) == 0 else value


def eval_analytic(s: AnalyticSeries, z):
    """Nested (Horner) evaluation of ``s`` at ``z``."""
    arr = _as_points(z)
    return _ret(z, kernels.horner(s.coeffs, arr))


def eval_harmonic(F: HarmonicMap, z):
    arr = _as_points(z)
    out = kernels.horner(F.h.coeffs, arr) + np.conj(kernels.horner(F.g.coeffs, arr))
    return _ret(z, out)


def eval_polyharmonic(f: PolyharmonicMap, z):
    arr = _as_points(z)
    w = np.abs(arr) ** 2
    out = np.zeros(arr.shape, dtype=np.complex128)
    for k, F in enumerate(f.components):
        term = kernels.horner(F.h.coeffs, arr) + np.conj(kernels.horner(F.g.coeffs, arr))
        out += w**k * term if k else term
    return _ret(z, out)


def slice_map(f: PolyharmonicMap, r: float) -> HarmonicMap:
    """The harmonic map ``sum r^(2(k-1)) F_k``; agrees with ``f`` on ``|z| = r``."""
    if not 0.0 < r <= 1.0:
        raise DomainError(f"slice radius {r} outside (0, 1]")
    h = AnalyticSeries.zero()
    g = AnalyticSeries.zero()
    for k, F in enumerate(f.components):
        weight = r ** (2 * k)
        h = h + F.h.scaled(weight)
        g = g + F.g.scaled(weight)
    return HarmonicMap(h, g)


def wirtinger(f: PolyharmonicMap, z):
    """Closed-form ``(f_z, f_zbar)``.

    For component index ``k`` (0-based) the weight ``(z zbar)^k`` contributes
    ``k z^(k-1) zbar^k F_k`` to ``f_z`` and ``k z^k zbar^(k-1) F_k`` to
    ``f_zbar``; integer powers keep ``z = 0`` exact.
    """
    arr = _as_points(z)
    zb = np.conj(arr)
    fz = np.zeros(arr.shape, dtype=np.complex128)
    fzb = np.zeros(arr.shape, dtype=np.complex128)
    for k, F in enumerate(f.components):
        h, dh = kernels.horner_deriv(F.h.coeffs, arr)
        g, dg = kernels.horner_deriv(F.g.coeffs, arr)
        if k == 0:
            fz += dh
            fzb += np.conj(dg)
            continue
        Fk = h + np.conj(g)
        w = (arr * zb) ** k
        fz += k * arr ** (k - 1) * zb**k * Fk + w * dh
        fzb += k * arr**k * zb ** (k - 1) * Fk + w * np.conj(dg)
    return _ret(z, fz), _ret(z, fzb)


def jacobian(f: PolyharmonicMap, z):
    """``|f_z|^2 - |f_zbar|^2``."""
    fz, fzb = wirtinger(f, z)
    return np.abs(fz) ** 2 - np.abs(fzb) ** 2


def dilatation(f: PolyharmonicMap, z):
    """``f_zbar / f_z``; raises ``DegenerateError`` where ``|f_z| < 1e-14``."""
    fz, fzb = wirtinger(f, z)
    if np.any(np.abs(fz) < DILATATION_POLE):
        raise DegenerateError("f_z vanishes: dilatation has a pole")
    return fzb / fz


def _laplacian_stencil(q: int) -> np.ndarray:
    taps = ((0, 1, 1.0), (1, 0, 1.0), (1, 1, -4.0), (1, 2, 1.0), (2, 1, 1.0))
    s = np.ones((1, 1))
    for _ in range(q):
        n = s.shape[0]
        out = np.zeros((n + 2, n + 2))
        for i, j, w in taps:
            out[i:i + n, j:j + n] += w * s
        s = out
    return s


def laplacian_power_probe(f: PolyharmonicMap, q: int, z: complex, step: float) -> complex:
    """Finite-difference estimate of the ``q``-th iterated Laplacian at ``z``.

    The 5-point stencil is applied ``q`` times (as one convolved stencil of
    half-width ``q``); a numerical oracle, not an evaluator.
    """
    if q < 1:
        raise ValueError("q must be a positive integer")
    if not 1e-3 <= step <= 1e-1:
        raise ValueError("step must lie in [1e-3, 1e-1]")
    z = complex(z)
    if abs(z) + q * step >= 1.0:
        raise DomainError("stencil leaves the unit disk")
    s = _laplacian_stencil(q)
    offs = np.arange(-q, q + 1)
    # row index moves y, column index moves x
    pts = z + step * (offs[None, :] + 1j * offs[:, None])
    mask = s != 0
    vals = eval_polyharmonic(f, pts[mask])
    return complex(np.sum(s[mask] * vals) / step ** (2 * q))


def log_series(degree: int = DEFAULT_TRUNCATION, scale: complex = 1.0) -> AnalyticSeries:
    """Degree-``degree`` section of ``-scale * log(1 - z)`` (marked truncated)."""
    n = np.arange(degree + 1, dtype=float)
    c = np.zeros(degree + 1, dtype=np.complex128)
    c[1:] = scale / n[1:]
    return AnalyticSeries(c, truncated=True)


def geometric_series(degree: int = DEFAULT_TRUNCATION, scale: complex = 1.0) -> AnalyticSeries:
    """Degree-``degree`` section of ``scale / (1 - z)`` (marked truncated)."""
    return AnalyticSeries(np.full(degree + 1, scale, dtype=np.complex128), truncated=True)
