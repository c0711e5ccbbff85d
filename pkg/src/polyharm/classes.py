"""Class tests and the close-to-convex biharmonic construction.

From a convex harmonic map ``F = H + conj(G)`` the biharmonic map
``f = H + |z|^2 conj(G)`` is built; its slices are ``H + rho^2 conj(G)``.
``certify_ctc`` checks the construction's hypotheses: the coefficient
condition for convexity of ``F`` and local univalence of ``f``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .series import (
    AnalyticSeries,
    GridSpec,
    HarmonicMap,
    PolyharmonicMap,
    jacobian,
    wirtinger,
)
from .univalence import (
    FAIL,
    INCONCLUSIVE,
    JACOBIAN_FLOOR,
    PASS,
    Verdict,
    Witness,
    circle_curve,
    is_univalent_harmonic,
    lemma1_slice_test,
)
from . import kernels

DILATATION_MARGIN = 1e-9
FZ_FLOOR = 1e-12
NORMALIZATION_TOL = 1e-14

FULLY_CTC = "fully_close_to_convex"
FAILED = "failed"
UNDECIDED = "inconclusive"


@dataclass(frozen=True)
class KHReport:
    sum_value: float
    normalized: bool
    passes: bool

    def to_dict(self) -> dict:
        return {"sum_value": self.sum_value, "normalized": self.normalized, "passes": self.passes}


def kh_coefficient_test(F: HarmonicMap) -> KHReport:
    """``sum_{n>=2} n^2 |a_n| + sum_{n>=1} n^2 |b_n| < 1`` with ``F``
    normalised (``a_0 = b_0 = 0``, ``a_1 = 1``).

    A pass is sufficient for a convex image; a fail decides nothing.
    """
    a, b = F.h.coeffs, F.g.coeffs
    na = np.arange(len(a))
    nb = np.arange(len(b))
    terms = [float(n) ** 2 * abs(c) for n, c in zip(na[2:], a[2:])]
    terms += [float(n) ** 2 * abs(c) for n, c in zip(nb[1:], b[1:])]
    total = math.fsum(terms)
    a1 = a[1] if len(a) > 1 else 0.0
    normalized = bool(abs(a[0]) <= NORMALIZATION_TOL and abs(b[0]) <= NORMALIZATION_TOL
                      and abs(a1 - 1.0) <= NORMALIZATION_TOL)
    return KHReport(total, normalized, normalized and total < 1.0)


def build_ctc_biharmonic(F: HarmonicMap) -> PolyharmonicMap:
    """``f = H + |z|^2 conj(G)`` as components ``(H, 0)`` and ``(0, G)``."""
    zero = AnalyticSeries.zero()
    return PolyharmonicMap((HarmonicMap(F.h, zero), HarmonicMap(zero, F.g)))


@dataclass(frozen=True)
class CTCCertificate:
    kh: KHReport
    kh_refuted: bool
    local_univalence: Verdict
    slice: Verdict
    sup_dilatation: float
    conclusion: str
    notes: str = ""

    def to_dict(self) -> dict:
        return {
            "kh": self.kh.to_dict(),
            "kh_refuted": self.kh_refuted,
            "local_univalence": self.local_univalence.to_dict(),
            "slice": self.slice.to_dict(),
            "sup_dilatation": self.sup_dilatation,
            "conclusion": self.conclusion,
            "notes": self.notes,
        }


def local_univalence_check(f: PolyharmonicMap, grid: GridSpec = GridSpec()):
    """``sup |f_zbar / f_z| < 1 - 1e-9`` and ``|f_z| > 1e-12`` on the grid.

    Returns ``(verdict, sup_dilatation)``.
    """
    pts = grid.points(1.0)
    fz, fzb = wirtinger(f, pts)
    afz = np.abs(fz)
    k = int(np.argmin(afz))
    if afz[k] <= FZ_FLOOR:
        w = Witness(complex(pts[k]), float(afz[k]), "critical")
        return Verdict(FAIL, (w,), grid, "f_z vanishes on the grid"), math.inf
    a = np.abs(fzb) / afz
    k = int(np.argmax(a))
    sup = float(a[k])
    w = Witness(complex(pts[k]), sup, "dilatation")
    if sup >= 1.0 - DILATATION_MARGIN:
        return Verdict(FAIL, (w,), grid, f"sup |a_f| = {sup:.6g} is not below 1"), sup
    return Verdict(PASS, (w,), grid, f"sup |a_f| = {sup:.6g} on the grid"), sup


def certify_ctc(F: HarmonicMap, grid: GridSpec = GridSpec(), radii=None) -> CTCCertificate:
    """Run the hypothesis checks for ``f = H + |z|^2 conj(G)``.

    ``fully_close_to_convex`` needs all three checks to pass. A failed
    coefficient test leaves the result ``inconclusive`` unless ``F`` itself
    is shown not to be sense-preserving (then it cannot be convex
    univalent); a refuted hypothesis together with a failed check on ``f``
    gives ``failed``.
    """
    if radii is None:
        radii = [round(0.1 + 0.01 * k, 10) for k in range(90)] + [0.995]
    kh = kh_coefficient_test(F)
    J_F = jacobian(PolyharmonicMap.harmonic(F), grid.points(1.0))
    kh_refuted = bool(np.min(J_F) < JACOBIAN_FLOOR)
    f = build_ctc_biharmonic(F)
    lu, sup = local_univalence_check(f, grid)
    sl = lemma1_slice_test(f, radii, grid)
    f_failed = lu.status == FAIL or sl.status == FAIL
    if kh.passes and lu.passed and sl.passed:
        conclusion = FULLY_CTC
        notes = "hypotheses verified on the grid"
    elif f_failed and (kh.passes or kh_refuted):
        conclusion = FAILED
        notes = "a checked hypothesis fails"
    else:
        conclusion = UNDECIDED
        notes = ("coefficient condition not met: convexity of F unverified"
                 if not kh.passes else "a check was inconclusive")
        if not kh.normalized:
            notes += "; F is not normalised (a0 = b0 = 0, a1 = 1)"
    return CTCCertificate(kh, kh_refuted, lu, sl, sup, conclusion, notes)


def default_eps_samples(count: int = 16) -> list:
    """``count`` points on the unit circle plus zero."""
    return [complex(np.exp(2j * np.pi * k / count)) for k in range(count)] + [0j]


def epsilon_family_probe(H: AnalyticSeries, G: AnalyticSeries, eps_samples=None,
                         r: float = 0.9, grid: GridSpec = GridSpec(),
                         n_dirs: int = 64, fan_vertices: int = 256) -> Verdict:
    """Numerical surrogate for close-to-convexity of every ``H + eps G``.

    Each combination must be univalent on ``|z| < r`` and every vertex of
    its image of ``|z| = r`` must emit one of ``n_dirs`` rays that never
    meets the image polygon again. A missed ray fan is only evidence, so
    it yields ``inconclusive`` rather than a certified failure.
    """
    if eps_samples is None:
        eps_samples = default_eps_samples()
    eps_samples = [complex(e) for e in eps_samples]
    if any(abs(e) > 1.0 + 1e-12 for e in eps_samples):
        raise ValueError("every eps must satisfy |eps| <= 1")
    zero = AnalyticSeries.zero()
    pending: Optional[Verdict] = None
    for eps in eps_samples:
        A = HarmonicMap(H + G.scaled(eps), zero)
        v = is_univalent_harmonic(A, r, grid)
        if v.status == FAIL:
            return Verdict(FAIL, v.witnesses, grid, f"eps={eps!r}: {v.notes}")
        if v.status == INCONCLUSIVE:
            pending = pending or Verdict(INCONCLUSIVE, (), grid, f"eps={eps!r}: {v.notes}")
            continue
        poly = circle_curve(A, r, fan_vertices)
        ok = kernels.ray_fan_escape(poly.points, n_dirs).astype(bool)
        if not ok.all():
            k = int(np.argmin(ok))
            w = Witness(complex(r * np.exp(1j * poly.params[k])), 0.0, "ray_fan")
            pending = pending or Verdict(
                INCONCLUSIVE, (w,), grid,
                f"eps={eps!r}: no escaping ray among {n_dirs} from image vertex {k}")
    if pending is not None:
        return pending
    return Verdict(PASS, (), grid,
                   f"{len(eps_samples)} combinations univalent with ray-accessible images")
