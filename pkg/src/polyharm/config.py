"""Default parameters, optionally overridden by the file named in
``POLYHARM_CONFIG`` (JSON, same keys as ``defaults.json``)."""

import copy
import json
import os
from importlib import resources

from .series import GridSpec

ENV_VAR = "POLYHARM_CONFIG"


def _merge(base, over):
    for k, v in over.items():
        if isinstance(v, dict) and isinstance(base.get(k), dict):
            _merge(base[k], v)
        else:
            base[k] = v
    return base


def load_config(path=None) -> dict:
    cfg = json.loads(resources.files("polyharm").joinpath("defaults.json").read_text())
    path = path or os.environ.get(ENV_VAR)
    if path:
        with open(path) as fh:
            _merge(cfg, json.load(fh))
    return copy.deepcopy(cfg)


def parse_radii(text: str) -> list:
    """Parse ``"0.1:0.99:0.01,0.995"``: comma-separated numbers or
    inclusive ``start:stop:step`` ranges."""
    out = []
    for item in str(text).split(","):
        item = item.strip()
        if not item:
            continue
        if ":" in item:
            start, stop, step = (float(x) for x in item.split(":"))
            if step <= 0:
                raise ValueError(f"range step must be positive: {item!r}")
            count = int(round((stop - start) / step)) + 1
            out.extend(round(start + k * step, 12) for k in range(count))
        else:
            out.append(float(item))
    if not out:
        raise ValueError("empty radius list")
    return out


def parse_floats(text: str) -> list:
    return [float(x) for x in str(text).split(",") if x.strip()]


def parse_grid(text: str) -> tuple:
    """``"64x256"`` -> ``(64, 256)``."""
    parts = str(text).lower().split("x")
    if len(parts) != 2:
        raise ValueError(f"grid must look like RxA, got {text!r}")
    return int(parts[0]), int(parts[1])


def grid_from(cfg: dict, grid=None, curve_samples=None, max_radius=None) -> GridSpec:
    g = dict(cfg["grid"])
    if grid is not None:
        g["radial_count"], g["angular_count"] = parse_grid(grid)
    if curve_samples is not None:
        g["curve_samples"] = int(curve_samples)
    if max_radius is not None:
        g["max_radius"] = float(max_radius)
    return GridSpec(**g)
