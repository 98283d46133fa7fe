"""Throughput of the packed sweep, compiled kernel versus pure Python.

Two workloads bracket the interesting behaviour:

  full-scan    Barbara NXN at the given bounds; no countermodel exists, so
               every model in range is visited and every requirement is
               evaluated (worst case for the sweep)
  early-exit   Baroco NX at the same bounds; the least countermodel sits
               near the front of the canonical order, so the run measures
               per-call overhead rather than raw scan speed

Usage: python3 benchmarks/bench_sweep.py [--bounds 2,2] [--repeat 3]
"""

import argparse
import time

from apodeixis import catalog, kernel, search
from apodeixis.model_core import bounds, model_count


def _workloads():
    return (
        ("full-scan Barbara NXN", catalog.instantiate(catalog.MOODS["Barbara"], catalog.ModalPattern(("N", "X"), "N"))),
        ("early-exit Baroco NX", catalog.instantiate(catalog.MOODS["Baroco"], catalog.ModalPattern(("N", "X"), None))),
    )


def _time_sweep(b, compiled_checks, backend, repeat):
    total = model_count(b)
    best = float("inf")
    found = None
    for _ in range(repeat):
        started = time.perf_counter()
        found = kernel.sweep(b, compiled_checks, 0, total, backend=backend)
        best = min(best, time.perf_counter() - started)
    visited = total if found is None else found + 1
    return best, visited, found


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--bounds", default="2,2", metavar="W0,W1")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    sizes = tuple(int(p) for p in args.bounds.split(","))
    b = bounds(sizes, ("A", "B", "C"))
    print(f"bounds {sizes}, {model_count(b)} models, import backend: {kernel.BACKEND}")

    backends = ["pure"]
    if kernel.BACKEND == "compiled" and kernel.fits_compiled(b, 8):
        backends.insert(0, "compiled")
    else:
        print("compiled kernel unavailable at these bounds; timing pure only")

    for label, inf in _workloads():
        checks = search._requirements(inf)
        compiled_checks = kernel.compile_checks(checks, kernel.concept_order(b))
        timings = {}
        for backend in backends:
            best, visited, found = _time_sweep(b, compiled_checks, backend, args.repeat)
            timings[backend] = best
            rate = visited / best if best else float("inf")
            tail = "no countermodel" if found is None else f"countermodel at rank {found}"
            print(
                f"  {label:22s} {backend:8s} {best * 1e3:9.2f} ms"
                f"  {rate:12,.0f} models/s  ({tail})"
            )
        if len(timings) == 2:
            print(f"  {label:22s} speedup  {timings['pure'] / timings['compiled']:8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
