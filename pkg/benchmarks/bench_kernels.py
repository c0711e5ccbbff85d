"""Time every kernel on both backends and print a comparison table.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from polyharm import kernels


def cases():
    rng = np.random.default_rng(0)
    coeffs = rng.standard_normal(65) + 1j * rng.standard_normal(65)
    z = 0.99 * np.exp(2j * np.pi * rng.uniform(size=1 << 16)) * rng.uniform(size=1 << 16)
    t = 2 * np.pi * np.arange(4096) / 4096
    circle = np.exp(1j * t)
    flower = (1 + 0.3 * np.cos(7 * t)) * np.exp(1j * t)
    eight = np.sin(t) + 0.5j * np.sin(2 * t)
    fan = flower[::16]
    return {
        "horner 64 x 65536": lambda k: k.horner(coeffs, z),
        "horner_deriv 64 x 65536": lambda k: k.horner_deriv(coeffs, z),
        "winding_sum 4096": lambda k: k.winding_sum(flower, 0.1j),
        "self crossing, simple 4096": lambda k: k.first_self_crossing(flower, True),
        "self crossing, figure eight 4096": lambda k: k.first_self_crossing(eight, True),
        "crossing between 4096 x 4096": lambda k: k.first_crossing_between(circle, True, 0.5 * flower, True),
        "ray fan 256 x 64": lambda k: k.ray_fan_escape(fan, 64),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    mods = kernels.backends()
    names = sorted(mods)
    print(f"{'kernel':36s}" + "".join(f"{n + ' [ms]':>16s}" for n in names)
          + ("  speedup" if len(names) > 1 else ""))
    for label, fn in cases().items():
        best = {}
        for n in names:
            fn(mods[n])  # warm-up
            best[n] = 1e3 * min(timeit.repeat(lambda: fn(mods[n]), number=1, repeat=args.repeat))
        row = f"{label:36s}" + "".join(f"{best[n]:16.3f}" for n in names)
        if "cython" in best:
            row += f"  {best['python'] / best['cython']:7.1f}x"
        print(row)


if __name__ == "__main__":
    main()
