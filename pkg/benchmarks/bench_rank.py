"""Rank timings: exact rationals vs the opt-in prime-field kernel.

Matrices are the differentials of real complexes (bar construction and the
twisted tensor product of a searched non-Koszul algebra), so the sparsity and
entry sizes are representative.  Run:

    python benchmarks/bench_rank.py [--max-weight 4] [--repeat 3]

Prime-field ranks are checked against the exact ones; a mismatch is reported,
not hidden (a prime can divide a minor).
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

from koszulkit import _modp
from koszulkit import algebra as al
from koszulkit import barcobar as bc
from koszulkit import cotangent as ct
from koszulkit import exactlin as el
from koszulkit import presets as ps


def collect(W: int):
    mats = []
    for name in ("kxy", "nk"):
        A = al.build_algebra(ps.load_example(name, W))
        Ac = al.koszul_dual_coalgebra(A)
        bar = bc.build_bar(A, Ac.C, check=False)
        t = ct.build_coequalizer(A, Ac)
        for (w, k), m in sorted(bar.d.items()):
            if w == W and m.rows and m.cols:
                mats.append((f"{name} bar w={w} k={k}", m))
        for (w, k), m in sorted(t.d.items()):
            if w == W and m.rows and m.cols:
                mats.append((f"{name} A⊗A^¡ w={w} k={k}", m))
    return mats


def best(f, repeat):
    out, ts = None, []
    for _ in range(repeat):
        t = time.perf_counter()
        out = f()
        ts.append(time.perf_counter() - t)
    return out, min(ts)


def main(argv=None):
    p = argparse.ArgumentParser(description="rank benchmark")
    p.add_argument("--max-weight", type=int, default=4)
    p.add_argument("--repeat", type=int, default=3)
    a = p.parse_args(argv)
    mats = collect(a.max_weight)
    # warm the JIT outside the timings
    _modp.rank_array(_modp.dense_modp(el.Matrix.identity(2)))
    print(f"numba available: {_modp.HAVE_NUMBA}")
    print(f"{'matrix':28} {'shape':>11} {'nnz':>6} {'rank':>5} {'exact s':>9} {'numba s':>9} {'numpy s':>9}  agree")
    tot = [0.0, 0.0, 0.0]
    for label, m in mats:
        r, te = best(lambda: el.row_rank(row for _, row in m.row_items()), a.repeat)
        dense = _modp.dense_modp(m)
        rn, tn = best(lambda: _modp.rank_array(dense, use_numba=True), a.repeat)
        rp, tp = best(lambda: _modp.rank_array(dense, use_numba=False), a.repeat)
        tot = [tot[0] + te, tot[1] + tn, tot[2] + tp]
        print(f"{label:28} {m.rows:>5}x{m.cols:<5} {m.nnz():>6} {r:>5} {te:>9.4f} {tn:>9.4f} {tp:>9.4f}  {r == rn == rp}")
    print(f"{'total':28} {'':>11} {'':>6} {'':>5} {tot[0]:>9.4f} {tot[1]:>9.4f} {tot[2]:>9.4f}")
    print()
    print("end to end: koszulkit check-algebra --preset nk")
    for label, env in [("exact", {}), ("prime field", {"KOSZULKIT_PRIME_FIELD": "1"}),
                       ("prime field, no numba", {"KOSZULKIT_PRIME_FIELD": "1", "KOSZULKIT_NO_NUMBA": "1"})]:
        t = time.perf_counter()
        r = subprocess.run([sys.executable, "-m", "koszulkit.cli", "check-algebra", "--preset", "nk",
                            "--max-weight", str(a.max_weight), "--format", "json"],
                           capture_output=True, env=dict(os.environ, **env))
        print(f"  {label:24} {time.perf_counter() - t:7.2f} s  exit {r.returncode}")


if __name__ == "__main__":
    main()
