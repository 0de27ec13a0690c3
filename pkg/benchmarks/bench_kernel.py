"""Time the chain-complex reduction kernel: compiled extension vs pure Python.

    python3 benchmarks/bench_kernel.py [--repeat 3] [--json]

Both backends run on the same boundary data and their outputs are compared
before any timing is reported.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from permhom import corpus
from permhom.complex import iterated_subdivision
from permhom.chains import ChainComplex
from permhom.kernels import get_backend

CASES = [
    ("torus7^(2)", lambda: iterated_subdivision(corpus.torus7(), 2)),
    ("x_pp^(3)", lambda: iterated_subdivision(corpus.x_pp(), 3)),
    ("sphere3^(2)", lambda: iterated_subdivision(corpus.sphere(3), 2)),
    ("susp_torus^(1)", lambda: iterated_subdivision(corpus.susp_torus(), 1)),
]


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def run(repeat: int):
    try:
        backends = {"python": get_backend("python"), "cython": get_backend("cython")}
    except ImportError:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        backends = {"python": get_backend("python")}
    rows = []
    for name, make in CASES:
        K = make()
        cc = ChainComplex(K)
        row = {"case": name, "cells": len(cc.cells)}
        outs = {}
        for label, mod in backends.items():
            secs, outs[label] = best_of(lambda: mod.reduce_complex(cc._boundaries), repeat)
            row[label] = secs
        if len(outs) == 2 and outs["python"] != outs["cython"]:
            raise SystemExit(f"backends disagree on {name}")
        row["survivors"] = sum(outs["python"][0])
        if "cython" in row:
            row["speedup"] = row["python"] / row["cython"]
        rows.append(row)
    return rows


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = run(args.repeat)
    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    print(f"{'case':<16}{'cells':>8}{'python s':>11}{'cython s':>11}{'speedup':>9}{'left':>6}")
    for r in rows:
        cy = f"{r['cython']:.4f}" if "cython" in r else "-"
        sp = f"{r['speedup']:.2f}x" if "speedup" in r else "-"
        print(f"{r['case']:<16}{r['cells']:>8}{r['python']:>11.4f}{cy:>11}{sp:>9}{r['survivors']:>6}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
