import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import EXAMPLE_f, HARMONIC, POLY
from polyharm import GridSpec, HarmonicMap, PolyharmonicMap
from polyharm.errors import CurveTooCoarseError, DomainError, IllConditionedError
from polyharm.univalence import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    Curve,
    Verdict,
    Witness,
    circle_curve,
    curve_self_intersects,
    curves_intersect,
    is_univalent_harmonic,
    lemma1_slice_test,
    rado_consistency_probe,
    winding_number,
)

SMALL = GridSpec(16, 64, 0.995, 256)


def unit_circle(n, fn=lambda z: z):
    return circle_curve(fn, 1.0, n)


def test_winding_numbers():
    c = unit_circle(64)
    assert winding_number(c, 0.0) == 1
    assert winding_number(c, 2.0) == 0
    assert winding_number(unit_circle(64, lambda z: z**2), 0.1j) == 2
    assert winding_number(unit_circle(64, np.conj), 0.0) == -1


@settings(max_examples=30, deadline=None)
@given(st.floats(0, 2 * math.pi), st.floats(0.0, 0.9), st.integers(1, 4))
def test_winding_invariant_under_rotation(phi, rho, k):
    c = unit_circle(256, lambda z: np.exp(1j * phi) * z**k)
    assert winding_number(c, rho * np.exp(1j * phi) * 0.5) == k


def test_winding_refines_once():
    c = unit_circle(6)  # 60 degree steps: fine
    assert winding_number(c, 0.0) == 1
    coarse = unit_circle(3, lambda z: z**2)  # 240 degree steps
    with pytest.raises(CurveTooCoarseError):
        winding_number(coarse, 0.0)
    # 120 degree steps are too coarse, one halving fixes them
    assert winding_number(unit_circle(3), 0.0) == 1
    with pytest.raises(CurveTooCoarseError):  # no sampler, no refinement
        winding_number(Curve([0, 1, 2], [1, -0.5 + 0.8j, -0.5 - 0.8j]), 0.0)


def test_winding_near_curve_is_ill_conditioned():
    with pytest.raises(IllConditionedError):
        winding_number(unit_circle(64), 1.0)


def test_curve_drops_duplicates():
    c = Curve([0, 1, 2, 3, 4], [0, 0, 1, 1j, 0])
    assert len(c) == 3


def test_self_intersection():
    assert curve_self_intersects(unit_circle(64)) == (False, None)
    t = 2 * np.pi * np.arange(400) / 400
    eight = Curve(t, np.sin(t) + 0.5j * np.sin(2 * t))
    crossed, cr = curve_self_intersects(eight)
    assert crossed and abs(cr.point) < 0.02
    with pytest.raises(ValueError):
        curve_self_intersects(Curve([0, 1, 2], [0, 1, 1j]))


def test_curves_intersect():
    a, b = unit_circle(64), circle_curve(lambda z: z, 0.5, 64)
    assert curves_intersect(a, b) == (False, None)
    shifted = circle_curve(lambda z: z + 1.0, 0.5, 64)
    assert curves_intersect(a, shifted)[0]


@pytest.mark.parametrize("name", ["identity", "affine", "example", "koebe_like"])
def test_univalent_maps_pass(name):
    assert is_univalent_harmonic(HARMONIC[name], 0.9, SMALL).status == PASS


@pytest.mark.parametrize("name, kind", [
    ("square", "crossing"), ("collapse", "jacobian"), ("reversing", "jacobian"),
    ("critical", "crossing"), ("folded", "jacobian"),
])
def test_non_univalent_maps_fail_with_witness(name, kind):
    v = is_univalent_harmonic(HARMONIC[name], 0.9)
    assert v.status == FAIL
    assert v.witnesses[0].kind == kind


def test_winding_failure_on_tiny_grid():
    # z^2 viewed through a one-point grid still gets caught
    v = is_univalent_harmonic(HarmonicMap.from_coeffs([0, 0, 1]), 0.5, GridSpec(1, 1, 0.5, 64))
    assert v.status == FAIL and v.witnesses[0].kind in ("crossing", "winding")


def test_radius_range():
    with pytest.raises(DomainError):
        is_univalent_harmonic(HARMONIC["identity"], 1.0)


def test_coarse_grid_is_inconclusive():
    v = is_univalent_harmonic(HARMONIC["example"], 0.5, GridSpec(8, 4, 0.995, 4))
    assert v.status == INCONCLUSIVE and not v.witnesses


def test_lemma1_example():
    radii = [round(0.1 + 0.01 * k, 10) for k in range(90)] + [0.995]
    v = lemma1_slice_test(EXAMPLE_f, radii)
    assert v.status == PASS and "91" in v.notes


def test_lemma1_failures_carry_radius():
    v = lemma1_slice_test(POLY["square"], [0.3, 0.6])
    assert v.status == FAIL and v.witnesses[0].radius == 0.3
    v = lemma1_slice_test(POLY["reversing"], [0.5])
    assert v.status == FAIL and v.witnesses[0].kind == "jacobian"


@pytest.mark.parametrize("radii", [[], [0.5, 0.4], [0.0, 0.5], [0.5, 1.0]])
def test_lemma1_radii_checked(radii):
    with pytest.raises(DomainError):
        lemma1_slice_test(EXAMPLE_f, radii)


def test_verdict_json_layout():
    w = Witness(0.5 + 0.25j, -1.0, "jacobian")
    v = Verdict(FAIL, (w,), SMALL, "bad")
    d = json.loads(json.dumps(v.to_dict()))
    assert list(d) == ["status", "witnesses", "grid", "notes"]
    assert d["witnesses"][0]["z"] == [0.5, 0.25]
    with pytest.raises(ValueError):
        Verdict(FAIL, ())
    with pytest.raises(ValueError):
        Verdict("maybe")


def test_rado_probe():
    rep = rado_consistency_probe(EXAMPLE_f, [0.5, 0.9, 0.995])
    assert rep.bounded and not rep.flagged
    assert rep.max_modulus[-1] == pytest.approx(0.995 + 0.995**4 / 6, rel=1e-6)
    big = PolyharmonicMap.harmonic(HarmonicMap.from_coeffs([0, 1e7]))
    assert rado_consistency_probe(big, [0.5, 0.9]).flagged
