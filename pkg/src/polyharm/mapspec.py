"""Reading and writing map-specification files.

Format::

    {"p": 2,
     "components": [{"h": [[re, im], ...], "g": [[re, im], ...]}, ...]}

Coefficient index equals array index. A component may carry
``"truncated": true`` when its series are sections of infinite series.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .errors import MapSpecError
from .series import AnalyticSeries, HarmonicMap, PolyharmonicMap


def _coeffs(raw, where):
    if not isinstance(raw, list) or not raw:
        raise MapSpecError(f"{where}: expected a non-empty list of [re, im] pairs")
    out = []
    for i, pair in enumerate(raw):
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)):
            raise MapSpecError(f"{where}[{i}]: expected [re, im] numbers, got {pair!r}")
        out.append(complex(pair[0], pair[1]))
    return out


def parse_map_spec(text: str, source: str = "<spec>") -> PolyharmonicMap:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MapSpecError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise MapSpecError(f"{source}: top level must be an object")
    comps = data.get("components")
    if not isinstance(comps, list) or not comps:
        raise MapSpecError(f"{source}: 'components' must be a non-empty list")
    p = data.get("p", len(comps))
    if not isinstance(p, int) or isinstance(p, bool) or p != len(comps):
        raise MapSpecError(f"{source}: 'p' ({p!r}) must equal the number of components ({len(comps)})")
    maps = []
    for k, comp in enumerate(comps):
        where = f"{source}: components[{k}]"
        if not isinstance(comp, dict):
            raise MapSpecError(f"{where}: expected an object")
        trunc = bool(comp.get("truncated", False))
        h = _coeffs(comp.get("h", [[0, 0]]), where + ".h")
        g = _coeffs(comp.get("g", [[0, 0]]), where + ".g")
        maps.append(HarmonicMap(AnalyticSeries(h, trunc), AnalyticSeries(g, trunc)))
    return PolyharmonicMap(tuple(maps))


def load_map_spec(path) -> PolyharmonicMap:
    path = Path(path)
    return parse_map_spec(path.read_text(), str(path))


def _pairs(s: AnalyticSeries):
    return [[float(c.real), float(c.imag)] for c in s.coeffs]


def map_spec_dict(f: PolyharmonicMap) -> dict:
    comps = []
    for F in f.components:
        comp = {"h": _pairs(F.h), "g": _pairs(F.g)}
        if F.truncated:
            comp["truncated"] = True
        comps.append(comp)
    return {"p": f.p, "components": comps}


def dump_map_spec(f: PolyharmonicMap, path) -> None:
    Path(path).write_text(json.dumps(map_spec_dict(f), indent=2) + "\n")


def digest(path) -> str:
    return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()
