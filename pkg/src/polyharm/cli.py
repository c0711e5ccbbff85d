"""``polyharm`` command-line front end.

Exit codes: 0 pass, 1 certified fail, 2 parse error, 3 domain/range error,
4 I/O error, 5 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import boundary, classes, config, render as rendering
from .errors import DegenerateError, DomainError, MapSpecError
from .mapspec import digest, load_map_spec
from .series import HarmonicMap, eval_polyharmonic
from .univalence import FAIL, PASS, lemma1_slice_test

EXIT_PASS, EXIT_FAIL, EXIT_PARSE, EXIT_DOMAIN, EXIT_IO, EXIT_INCONCLUSIVE = range(6)

_VERDICT_EXIT = {
    PASS: EXIT_PASS,
    FAIL: EXIT_FAIL,
    boundary.JUMP: EXIT_PASS,
    boundary.CONTINUOUS: EXIT_PASS,
    boundary.DIVERGENT: EXIT_PASS,
    boundary.CONVERGENT: EXIT_FAIL,
    classes.FULLY_CTC: EXIT_PASS,
    classes.FAILED: EXIT_FAIL,
}


def parse_complex(text: str) -> complex:
    """Accept Python syntax (``0.3+0.5j``) and the ``i`` spelling (``0.25i``)."""
    s = text.strip().replace(" ", "").replace("i", "j")
    if s in ("j", "+j", "-j"):
        s = s.replace("j", "1j")
    return complex(s)


def format_complex(w: complex) -> str:
    re_, im = float(w.real) + 0.0, float(w.imag) + 0.0
    return f"{re_:.15g}{im:+.15g}i"


def _emit(args, body: dict, summary: str) -> None:
    """Print the report and, with ``--out``, persist it with a timestamp."""
    if args.json:
        print(json.dumps(body, indent=2))
    else:
        print(summary)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        cert = dict(body)
        cert["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
        (out / f"{args.command}.json").write_text(json.dumps(cert, indent=2) + "\n")


def _body(args, parameters: dict, report: dict) -> dict:
    return {
        "command": args.command,
        "input_digest": digest(args.spec),
        "parameters": parameters,
        "report": report,
    }


def _grid(args, cfg):
    return config.grid_from(cfg, args.grid, args.curve_samples)


def _slice_radii(args, cfg):
    return config.parse_radii(args.radii if args.radii else cfg["slice_radii"])


def cmd_eval(args, cfg) -> int:
    f = load_map_spec(args.spec)
    if args.z is None:
        raise ValueError("eval needs --z")
    z = parse_complex(args.z)
    w = complex(eval_polyharmonic(f, z))
    if args.json:
        print(json.dumps({"z": [z.real, z.imag], "value": [w.real, w.imag]}))
    else:
        print(format_complex(w))
    return EXIT_PASS


def cmd_render(args, cfg) -> int:
    f = load_map_spec(args.spec)
    r = dict(cfg["render"])
    for key in ("circles", "rays", "samples_per_curve"):
        if getattr(args, key) is not None:
            r[key] = getattr(args, key)
    spec = rendering.RenderSpec(**r)
    which = [w.strip() for w in args.which.split(",") if w.strip()]
    for w in which:
        if w not in rendering.FUNCTIONS:
            raise ValueError(f"--which: unknown function {w!r}")
    written = rendering.render(f, args.out or ".", which, spec)
    for p in written:
        print(p)
    return EXIT_PASS


def cmd_slice_test(args, cfg) -> int:
    f = load_map_spec(args.spec)
    grid, radii = _grid(args, cfg), _slice_radii(args, cfg)
    v = lemma1_slice_test(f, radii, grid)
    body = _body(args, {"grid": grid.to_dict(), "radii": radii}, v.to_dict())
    _emit(args, body, f"{v.status}: {v.notes}")
    return _VERDICT_EXIT.get(v.status, EXIT_INCONCLUSIVE)


def _require_p(f, p: int, command: str):
    if f.p != p:
        raise DomainError(f"{command} needs a spec with p = {p}, got p = {f.p}")


def _boundary_radii(args, cfg, series) -> list:
    text = args.radii if args.radii else cfg.get("boundary_radii")
    if text:
        return config.parse_radii(text) if isinstance(text, str) else [float(r) for r in text]
    cap = min(s.valid_radius for s in series)
    radii = boundary.approach_radii(cap if cap < 1.0 else 1.0, cfg["boundary_radius_count"])
    return [min(r, cap) for r in radii]


def cmd_boundary(args, cfg) -> int:
    f = load_map_spec(args.spec)
    _require_p(f, 2, "boundary")
    F1, F2 = f.components
    theta0 = args.theta0 if args.theta0 is not None else cfg["theta0"]
    radii = _boundary_radii(args, cfg, (F1.h, F1.g, F2.h, F2.g))
    threshold = cfg["jump_threshold"]
    small_o = boundary.small_o_probe(F2, theta0, radii)
    jump = boundary.jump_indicator(F1.h, F2.h, theta0, radii, threshold)
    advisory = not small_o.holds
    report = {
        "jump": jump.to_dict(),
        "small_o": small_o.to_dict(),
        "o_hypothesis_advisory": advisory,
        "notes": ("(1-r)|F2| does not visibly tend to 0: the jump reading is advisory"
                  if advisory else ""),
    }
    body = _body(args, {"theta0": theta0, "radii": radii, "threshold": threshold}, report)
    flag = " (o-hypothesis advisory)" if advisory else ""
    _emit(args, body, f"{jump.verdict}: c = {jump.c_estimate:.6g}{flag}")
    return _VERDICT_EXIT.get(jump.verdict, EXIT_INCONCLUSIVE)


def cmd_gamma_integral(args, cfg) -> int:
    f = load_map_spec(args.spec)
    _require_p(f, 2, "gamma-integral")
    theta0 = args.theta0 if args.theta0 is not None else cfg["theta0"]
    m = args.m if args.m is not None else cfg["m"]
    if not 0.0 < m < 1.0 / math.pi:
        raise DomainError(f"m={m!r} outside 0 < m < 1/pi")
    cutoffs = config.parse_floats(args.cutoffs) if args.cutoffs else list(cfg["cutoffs"])
    n = int(cfg["gamma_samples"])
    rep = boundary.continuity_integral(*f.components, boundary.gamma_curve(m, theta0, n), cutoffs)
    params = {"theta0": theta0, "m": m, "cutoffs": list(rep.cutoffs), "samples_per_side": n}
    body = _body(args, params, rep.to_dict())
    flag = " (|phi| >= 1 on the curve)" if rep.hypothesis_violated else ""
    _emit(args, body, f"{rep.verdict}: slope {rep.slope:.6g}, "
                      f"residual {rep.relative_residual:.3g}{flag}")
    return _VERDICT_EXIT.get(rep.verdict, EXIT_INCONCLUSIVE)


def cmd_certify_ctc(args, cfg) -> int:
    f = load_map_spec(args.spec)
    _require_p(f, 1, "certify-ctc")
    F: HarmonicMap = f.components[0]
    grid, radii = _grid(args, cfg), _slice_radii(args, cfg)
    cert = classes.certify_ctc(F, grid, radii)
    body = _body(args, {"grid": grid.to_dict(), "radii": radii}, cert.to_dict())
    _emit(args, body, f"{cert.conclusion}: coefficient sum {cert.kh.sum_value!r}, "
                      f"sup|a_f| = {cert.sup_dilatation:.6g}")
    if args.render:
        spec = rendering.RenderSpec(**cfg["render"])
        rendering.render(classes.build_ctc_biharmonic(F), args.out or ".",
                         rendering.FUNCTIONS, spec)
    return _VERDICT_EXIT.get(cert.conclusion, EXIT_INCONCLUSIVE)


COMMANDS = {
    "eval": cmd_eval,
    "render": cmd_render,
    "slice-test": cmd_slice_test,
    "boundary": cmd_boundary,
    "gamma-integral": cmd_gamma_integral,
    "certify-ctc": cmd_certify_ctc,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polyharm", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--spec", required=True, help="map-spec JSON file")
        p.add_argument("--out", help="output directory")
        p.add_argument("--json", action="store_true", help="print the JSON report")
        if name == "eval":
            p.add_argument("--z", help="evaluation point, e.g. 0.5 or 0.25i")
        if name in ("boundary", "gamma-integral"):
            p.add_argument("--theta0", type=float)
        if name == "gamma-integral":
            p.add_argument("--m", type=float)
            p.add_argument("--cutoffs", help="comma-separated cutoffs delta")
        if name in ("slice-test", "boundary", "certify-ctc"):
            p.add_argument("--radii", help="e.g. 0.1:0.99:0.01,0.995")
        if name in ("slice-test", "certify-ctc"):
            p.add_argument("--grid", help="RxA, e.g. 64x256")
            p.add_argument("--curve-samples", type=int)
        if name == "certify-ctc":
            p.add_argument("--render", action="store_true",
                           help="also render the constructed map into --out")
        if name == "render":
            p.add_argument("--which", default=",".join(rendering.FUNCTIONS))
            p.add_argument("--circles", type=int)
            p.add_argument("--rays", type=int)
            p.add_argument("--samples-per-curve", type=int)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config.load_config()
        return COMMANDS[args.command](args, cfg)
    except MapSpecError as exc:
        print(f"polyharm: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DomainError, DegenerateError) as exc:
        print(f"polyharm: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"polyharm: bad argument: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"polyharm: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
