"""Time the compiled and pure-Python return-map kernels on the same work.

    python3 benchmarks/bench_return_map.py [--samples 64] [--repeat 3]

Each backend integrates one full turn for every initial value on a geometric
grid, for a handful of reference points.  The script also reports the largest
relative difference between the two backends on non-escaping samples.
"""

import argparse
import sys
import time

import numpy as np

from abelsign import _abel_py
from abelsign.classifier import table1_points
from abelsign.model import Params, trig_coeffs

RTOL, ATOL, BLOWUP = 1e-10, 1e-300, 1e6


def _workload():
    table = {label: p for label, p, _ in table1_points()}
    pts = [table[k] for k in ("2", "3a", "4", "5a", "5f")]
    pts.append(Params.of([0.25, 1, -1, 0.5, 1, 0.3]))
    out = []
    for p in pts:
        fc, gc = trig_coeffs(p).as_floats()
        out.append((tuple(fc), tuple(gc), float(p.a1)))
    return out


def _run(kernel, work, rhos):
    results = []
    t0 = time.perf_counter()
    for fc, gc, a1 in work:
        results.append(kernel.return_map_batch(fc, gc, a1, rhos, RTOL, ATOL, BLOWUP))
    return time.perf_counter() - t0, results


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=64, help="initial values per point")
    ap.add_argument("--repeat", type=int, default=3, help="best-of repetitions")
    args = ap.parse_args(argv)

    try:
        from abelsign import _abel_kernel
    except ImportError:
        sys.exit("compiled kernel not built; run `pip install -e . --no-build-isolation` first")

    work = _workload()
    rhos = np.geomspace(1e-2, 10.0, args.samples)
    n_orbits = len(work) * args.samples

    timings = {}
    outputs = {}
    for name, kernel in (("cython", _abel_kernel), ("python", _abel_py)):
        best = float("inf")
        for _ in range(args.repeat):
            dt, res = _run(kernel, work, rhos)
            best = min(best, dt)
        timings[name] = best
        outputs[name] = res

    worst = 0.0
    mismatched_status = 0
    for (vc, sc, _, _), (vp, sp, _, _) in zip(outputs["cython"], outputs["python"]):
        mismatched_status += int(np.sum(sc != sp))
        ok = (sc == 0) & (sp == 0)
        if ok.any():
            worst = max(worst, float(np.max(np.abs(vc[ok] - vp[ok]) / np.abs(vp[ok]))))

    print(f"orbits per run: {n_orbits} ({len(work)} points x {args.samples} initial values)")
    for name, dt in timings.items():
        print(f"{name:7s} {dt * 1e3:10.1f} ms   {dt / n_orbits * 1e6:9.1f} us/orbit")
    print(f"speed-up: {timings['python'] / timings['cython']:.1f}x")
    print(f"max relative difference: {worst:.2e}; status mismatches: {mismatched_status}")


if __name__ == "__main__":
    main()
