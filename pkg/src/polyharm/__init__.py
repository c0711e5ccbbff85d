"""Numerical analysis of planar harmonic, biharmonic and polyharmonic maps."""

from .kernels import BACKEND
from .series import (
    AnalyticSeries,
    GridSpec,
    HarmonicMap,
    PolyharmonicMap,
    dilatation,
    eval_analytic,
    eval_harmonic,
    eval_polyharmonic,
    jacobian,
    laplacian_power_probe,
    slice_map,
    wirtinger,
)

__all__ = [
    "BACKEND",
    "AnalyticSeries",
    "GridSpec",
    "HarmonicMap",
    "PolyharmonicMap",
    "dilatation",
    "eval_analytic",
    "eval_harmonic",
    "eval_polyharmonic",
    "jacobian",
    "laplacian_power_probe",
    "slice_map",
    "wirtinger",
]
__version__ = "0.1.0"
