import json

import numpy as np
import pytest

from corpus import EXAMPLE_F
from polyharm import AnalyticSeries, GridSpec, HarmonicMap, eval_polyharmonic
from polyharm.classes import (
    FAILED,
    FULLY_CTC,
    UNDECIDED,
    build_ctc_biharmonic,
    certify_ctc,
    default_eps_samples,
    epsilon_family_probe,
    kh_coefficient_test,
    local_univalence_check,
)
from polyharm.univalence import FAIL, INCONCLUSIVE, PASS

GRID = GridSpec(32, 128, 0.995, 512)
RADII = [0.2, 0.5, 0.8, 0.95, 0.995]


def test_kh_example_sum_is_two_thirds():
    rep = kh_coefficient_test(EXAMPLE_F)
    assert rep.sum_value == 2 / 3
    assert rep.normalized is True and rep.passes is True


def test_kh_fails_and_normalisation():
    assert not kh_coefficient_test(HarmonicMap.from_coeffs([0, 1], [0, 0, 0.3])).passes
    shifted = kh_coefficient_test(HarmonicMap.from_coeffs([0.1, 1]))
    assert shifted.sum_value == 0 and not shifted.normalized and not shifted.passes
    # the condition is strict
    edge = HarmonicMap.from_coeffs([0, 1, 0.25])
    assert kh_coefficient_test(edge).sum_value == 1.0
    assert not kh_coefficient_test(edge).passes


def test_build_matches_formula():
    f = build_ctc_biharmonic(EXAMPLE_F)
    z = np.array([0.3 + 0.4j, -0.7j, 0.5])
    want = z + np.abs(z) ** 2 * np.conj(-z**2 / 6)
    np.testing.assert_allclose(eval_polyharmonic(f, z), want, atol=1e-15)


def test_local_univalence_sup_matches_limit():
    v, sup = local_univalence_check(build_ctc_biharmonic(EXAMPLE_F))
    r = 0.995
    assert v.status == PASS
    assert sup == pytest.approx(3 * r**3 / (6 - r**3), rel=1e-12)


def test_certify_example():
    cert = certify_ctc(EXAMPLE_F, GRID, RADII)
    assert cert.conclusion == FULLY_CTC
    d = json.loads(json.dumps(cert.to_dict()))
    assert d["kh"]["sum_value"] == 2 / 3
    assert list(d) == ["kh", "kh_refuted", "local_univalence", "slice", "sup_dilatation",
                       "conclusion", "notes"]


@pytest.mark.parametrize("F, conclusion", [
    (HarmonicMap.from_coeffs([0, 1]), FULLY_CTC),
    (HarmonicMap.from_coeffs([0, 1], [0, 0, 0.3]), UNDECIDED),
    (HarmonicMap.from_coeffs([0, 1], [0, 1]), FAILED),
])
def test_certify_outcomes(F, conclusion):
    cert = certify_ctc(F, GRID, RADII)
    assert cert.conclusion == conclusion
    if conclusion == FULLY_CTC:
        assert cert.kh.passes and cert.local_univalence.passed and cert.slice.passed


def test_identity_builds_identity():
    f = build_ctc_biharmonic(HarmonicMap.from_coeffs([0, 1]))
    z = np.array([0.1, 0.5j, -0.9])
    np.testing.assert_array_equal(eval_polyharmonic(f, z), z)


def test_default_eps_samples():
    eps = default_eps_samples()
    assert len(eps) == 17 and eps[-1] == 0
    assert np.allclose(np.abs(eps[:-1]), 1)


def test_epsilon_probe():
    z = AnalyticSeries([0, 1])
    zero = AnalyticSeries.zero()
    grid = GridSpec(16, 64, 0.995, 256)
    assert epsilon_family_probe(z, zero, [1, -1j], grid=grid).status == PASS
    H, G = EXAMPLE_F.h, AnalyticSeries([0, 0, -1 / 6])
    assert epsilon_family_probe(H, G, [1, -1, 1j, -1j], grid=grid).status == PASS
    v = epsilon_family_probe(AnalyticSeries([0, 0, 1]), zero, [1], grid=grid)
    assert v.status == FAIL and v.witnesses
    with pytest.raises(ValueError):
        epsilon_family_probe(z, zero, [2.0])


def test_epsilon_probe_fan_is_only_evidence():
    # a slit-like univalent image: z + 0.45 z^2 is univalent but the boundary
    # image has a deep dent; whatever the fan says, it is never a hard fail
    v = epsilon_family_probe(AnalyticSeries([0, 1, 0.45]), AnalyticSeries.zero(), [1],
                             r=0.99, grid=GridSpec(16, 64, 0.995, 512))
    assert v.status in (PASS, INCONCLUSIVE)
