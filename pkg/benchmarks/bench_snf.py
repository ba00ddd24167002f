#!/usr/bin/env python3
"""Benchmark: compiled vs pure-Python Smith-normal-form kernel.

Runs the elimination on boundary matrices taken from the actual models
(flag complexes, the polytopal-Tits bicomplex, resolution levels) plus a
synthetic sparse family, and prints both timings.  Results are also
cross-checked for equality.
"""

import argparse
import random
import time

from geotits import arrangement as arr
from geotits import collection as coll_mod
from geotits import complexes as cx
from geotits import geometry as geo
from geotits import resolution as reso
from geotits._kernel import BACKEND, IntMatrix, eliminate_python, smith_normal_form

try:
    from geotits._kernel._elim import eliminate as eliminate_compiled
except ImportError:  # pragma: no cover
    eliminate_compiled = None


def boundary_suite():
    suite = []
    s2 = geo.Geometry("S", 2)
    coord = coll_mod.closure_by_hyperplanes(s2, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    tri = cx.sphere_triangulation(coord)
    bic = cx.pt_bicomplex(coord, tri)
    for d in bic.support():
        suite.append((f"pt-bicomplex d={d}", bic.boundary(d)))
    h3 = geo.Geometry("H", 3)
    cubes = coll_mod.closure_by_hyperplanes(
        h3,
        [(1, 2, 0, 0), (-1, 8, 0, 0), (-3, 4, 0, 0), (5, 0, 8, 0), (0, 0, 1, 0),
         (5, 0, 0, 16), (-5, 0, 0, 16)],
    )
    st = cx.relative_st_complex(list(cubes.members), cubes.top())
    for d in st.support():
        suite.append((f"two-cube ST d={d}", st.boundary(d)))
    res, _, _ = reso.build_resolution(5)
    for d in (3, 4, 5):
        suite.append((f"resolution[5] d={d}", res.boundary(d)))
    rng = random.Random(0)
    entries = {}
    for j in range(500):
        for i in rng.sample(range(400), 4):
            entries[(i, j)] = rng.choice([1, -1, 1, -1, 2])
    suite.append(("synthetic 400x500", IntMatrix(400, 500, entries)))
    return suite


def run(repeat):
    print(f"default backend at import: {BACKEND}")
    total = {"compiled": 0.0, "python": 0.0}
    for name, matrix in boundary_suite():
        row = f"{name:24s} {matrix.rows:5d}x{matrix.cols:<5d} nnz={len(matrix.entries):6d}"
        results = {}
        for label, backend in (("compiled", eliminate_compiled), ("python", eliminate_python)):
            if backend is None:
                results[label] = None
                continue
            best = None
            for _ in range(repeat):
                t0 = time.perf_counter()
                snf = smith_normal_form(matrix, backend=backend)
                dt = time.perf_counter() - t0
                best = dt if best is None else min(best, dt)
            results[label] = (best, snf.invariant_factors)
            total[label] += best
        if results["compiled"] and results["python"]:
            assert results["compiled"][1] == results["python"][1], name
            speedup = results["python"][0] / results["compiled"][0]
            row += f"  compiled {results['compiled'][0]*1e3:8.2f} ms  pure {results['python'][0]*1e3:8.2f} ms  ({speedup:.2f}x)"
        else:
            row += f"  pure {results['python'][0]*1e3:8.2f} ms  (compiled kernel not built)"
        print(row)
    if eliminate_compiled is not None:
        print(
            f"total: compiled {total['compiled']:.3f}s  pure {total['python']:.3f}s  "
            f"({total['python'] / total['compiled']:.2f}x)"
        )


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    run(ap.parse_args().repeat)
