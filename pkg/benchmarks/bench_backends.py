"""Compare the numba and numpy kernel backends on the package's hot paths.

Each backend runs in a fresh subprocess (the backend is fixed at import
time), timing three workloads:

* series: hypergeometric conductance evaluations at a large radius ratio,
  dominated by the Gauss series summation loop;
* oracle: adaptive quadrature of the master integral over a parameter
  grid, dominated by profile evaluation on panel nodes;
* validate: full analytic-vs-numeric co-evaluation of the grid.

Usage: python benchmarks/bench_backends.py [repeats]
"""

import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json
import time

t0 = time.perf_counter()
import cdtube
from cdtube.backend import ACTIVE_BACKEND
import_s = time.perf_counter() - t0

REPEATS = {repeats}

fluid = cdtube.PowerLawFluid(1.0, 0.8)
spec = cdtube.TubeSpec(cdtube.TubeShape.HYPERBOLIC, 1.0, 10.0, 1.0)

# first calls trigger numba compilation (or are plain calls under numpy)
t0 = time.perf_counter()
cdtube.conductance_coefficient(fluid, spec)
cdtube.pressure_drop_numeric(fluid, spec, 1.0)
warmup_s = time.perf_counter() - t0

shapes = list(cdtube.TubeShape)
indices = (0.4, 0.6, 0.8, 1.2, 1.6)

t0 = time.perf_counter()
for _ in range(REPEATS):
    for n in indices:
        f = cdtube.PowerLawFluid(1.0, n)
        for ratio in (2.0, 10.0):
            cdtube.conductance_coefficient(
                f, cdtube.TubeSpec(cdtube.TubeShape.HYPERBOLIC, 1.0, ratio, 1.0)
            )
series_s = time.perf_counter() - t0

t0 = time.perf_counter()
for _ in range(REPEATS):
    for shape in shapes:
        for n in indices:
            f = cdtube.PowerLawFluid(1.0, n)
            s = cdtube.TubeSpec(shape, 1.0, 4.0, 1.0)
            cdtube.pressure_drop_numeric(f, s, 1.0, rel_tol=1e-10)
oracle_s = time.perf_counter() - t0

t0 = time.perf_counter()
for shape in shapes:
    for n in indices:
        f = cdtube.PowerLawFluid(1.0, n)
        s = cdtube.TubeSpec(shape, 1.0, 4.0, 1.0)
        cdtube.pressure_drop(f, s, 1.0, validate=True)
validate_s = time.perf_counter() - t0

print(json.dumps({{
    "backend": ACTIVE_BACKEND,
    "import_s": import_s,
    "warmup_s": warmup_s,
    "series_s": series_s,
    "oracle_s": oracle_s,
    "validate_s": validate_s,
}}))
"""


def run_backend(name: str, repeats: int) -> dict:
    env = dict(os.environ, CDTUBE_BACKEND=name)
    out = subprocess.run(
        [sys.executable, "-c", WORKLOAD.format(repeats=repeats)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main() -> None:
    repeats = int(sys.argv[1]) if len(sys.argv) > 1 else 20
    results = [run_backend(name, repeats) for name in ("numpy", "numba")]
    numpy_row, numba_row = results

    print(f"workload repeats: {repeats}")
    header = f"{'workload':<12}{'numpy (s)':>12}{'numba (s)':>12}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for key, label in [("import_s", "import"), ("warmup_s", "warmup"),
                       ("series_s", "series"), ("oracle_s", "oracle"),
                       ("validate_s", "validate")]:
        ratio = numpy_row[key] / numba_row[key] if numba_row[key] else float("inf")
        print(f"{label:<12}{numpy_row[key]:>12.3f}{numba_row[key]:>12.3f}"
              f"{ratio:>9.1f}x")


if __name__ == "__main__":
    main()
