"""Acceptance criteria: each test prints one PASS/FAIL line, then asserts.

Run standalone with ``python tests/test_acceptance.py`` for just the summary.
"""

from __future__ import annotations

import json
import os
import subprocess
import sys
import time
from pathlib import Path

import pytest

from koszulkit import algebra as al
from koszulkit import barcobar as bc
from koszulkit import cotangent as ct
from koszulkit import operad as op
from koszulkit import presets as ps
from koszulkit import trees as tr
from koszulkit.trees import GeneratorSymbol

sys.path.insert(0, str(Path(__file__).parent))
import oracles  # noqa: E402
from helpers import BINARY, algebra, coalgebra, cooperad, operad, verdict  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"


def c1_free_operad():
    t = time.perf_counter()
    P = op.build_truncated_operad(op.OperadPresentation([GeneratorSymbol.trivial("mu")], [], 5))
    got = [P.dim(n) for n in range(1, 6)]
    ref = [oracles.free_symmetric_binary(n) for n in range(1, 6)]
    dt = time.perf_counter() - t
    return got == ref == [1, 1, 3, 15, 105] and dt < 1, f"dims {got}, oracle {ref}, {dt:.2f}s"


def c2_preset_dims():
    t = time.perf_counter()
    got = {n: [operad(n, 5)[1].dim(k) for k in range(1, 6)] for n in ("as", "com", "lie")}
    ok = all(got[n] == [oracles.preset_dims(n, k) for k in range(1, 6)] for n in got)
    dt = time.perf_counter() - t
    return ok and dt < 30, f"{got}, {dt:.1f}s"


def c3_operadic_koszul():
    t = time.perf_counter()
    bad = []
    for n in ("as", "com", "lie"):
        P = operad(n, 4)[1]
        for side in ("left", "right"):
            if not op.operadic_koszul_homology(P, cooperad(n, 4), side, 4).is_unit():
                bad.append((n, side))
    dt = time.perf_counter() - t
    return not bad and dt < 120, f"non-acyclic: {bad or 'none'}, arity <= 4, {dt:.1f}s"


def c4_maurer_cartan():
    bad = [n for n in ("as", "com", "lie") if not op.mc_check_kappa(operad(n, 4)[1], cooperad(n, 4)).zero]
    bad += [n for n in ps.EXAMPLES if not al.mc_check_varkappa(coalgebra(n, 4)).zero]
    return not bad, f"nonzero: {bad or 'none'} (3 operads, {len(ps.EXAMPLES)} algebras)"


def c5_h0():
    res = {}
    for n in ("x2", "kxy", "free", "com-x2"):
        A, Ac = algebra(n, 4), coalgebra(n, 4)
        res[n] = bc.bar_h0_check(bc.build_bar(A, Ac.C), Ac).match
    return all(res.values()), f"{res}"


def c6_agreement():
    out = {}
    for n in ps.EXAMPLES:
        v3, v4 = verdict(n, 3, deep=True), verdict(n, 4)
        for v in (v3, v4):
            vals = {x for x in v.criteria.values() if x is not None}
            firsts = set(v.first_failures.values())
            if len(vals) != 1 or len(firsts) != 1:
                return False, f"{n}: {v.criteria} {v.first_failures}"
        if v3.criteria["deep"] is None:
            return False, f"{n}: deep criterion missing"
        out[n] = v4.koszul
    pos = sum(out.values())
    return pos and pos < len(out), f"{pos} Koszul, {len(out) - pos} not; complex criterion gated for Com"


def c7_classical():
    t = time.perf_counter()
    v = verdict("kxy", 5)
    dual = al.build_algebra(al.koszul_dual_presentation(ps.load_example("kxy", 5)))
    ext = dual.dims()[:3] == [2, 1, 0]
    tt = ct.build_coequalizer(algebra("module", 5), coalgebra("module", 5))
    tt.check()
    betti = {w: tt.betti(w) for w in range(6)}
    conc = all(b == {k: int((w, k) == (0, 0)) for k in range(w + 1)} for w, b in betti.items())
    ref = oracles.QuadraticAlgebra(2, [{(0, 1): 1, (1, 0): -1}], 5)
    classical = all(not any(ref.koszul_complex(n)) for n in range(1, 6))
    dt = time.perf_counter() - t
    ok = v.koszul and v.koszul_up_to == 5 and ext and conc and classical and dt < 300
    return ok, f"K[x,y] Koszul to weight {v.koszul_up_to}, A^! {dual.dims()[:3]}, module homology in degree 0: {conc}, {dt:.0f}s"


def c8_negative():
    gold = json.loads((GOLDEN / "nk_w5.json").read_text())
    v = verdict("nk", 5)
    hb, cb, hk = v.details["bar"], v.details["cobar"], v.details["complex"]
    bar = [hb.betti[w] for w in range(6)]
    cobar = [[cb.betti[w].get(k, 0) for k in range(w + 1)] for w in range(6)]
    cx = [r["by_degree"] for r in hk.records()]
    higher = any(any(b[1:]) for b in bar)
    same = v.first_failures["bar"] == v.first_failures["cobar"] == v.first_failures["complex"] == 3
    ref = oracles.QuadraticAlgebra(3, [{(2, 2): 1, (0, 2): -1}, {(2, 0): 1, (0, 2): 1}], 6)
    classical = next(n - 1 for n in range(1, 7) if any(ref.koszul_complex(n)))
    golden = (bar, cobar, cx) == (gold["bar_betti"], gold["cobar_betti"], gold["complex_betti"])
    ok = higher and same and golden and classical == 3 and not any(v.criteria[k] for k in ("bar", "cobar", "complex"))
    return ok, f"nk fails at weight {v.first_failure} in bar/cobar/complex (classical oracle {classical}), golden match: {golden}"


def c9_duality():
    bad = []
    for n in BINARY:
        d = ct.koszul_criterion(al.build_algebra(al.koszul_dual_presentation(ps.load_example(n, 4))))
        if d.koszul != verdict(n, 4).koszul:
            bad.append(n)
    return not bad, f"disagreeing: {bad or 'none'} ({len(BINARY)} binary examples, weight 4)"


def c10_specializations():
    cases = [("com-x2", "com"), ("com-free", "com"), ("lie-ab1", "lie"), ("lie-ab2", "lie"), ("module", "module")]
    res = {}
    for n, kind in cases:
        r = ct.specialization_check(algebra(n, 4), kind, coalgebra(n, 4))
        res[n] = r.ok and r.generic_dims == r.special_dims
    return all(res.values()), f"{res}"


def c11_determinism():
    args = [sys.executable, "-m", "koszulkit.cli", "report", "--max-weight", "3", "--format", "json"]
    for n in ps.EXAMPLES:
        args += ["--preset", n]
    outs = []
    for seed in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        outs.append(subprocess.run(args, capture_output=True, env=env).stdout)
    ok = outs[0] == outs[1] and len(outs[0]) > 0
    return ok, f"{len(ps.EXAMPLES)} examples, {len(outs[0])} bytes, identical across hash seeds: {ok}"


CRITERIA = [
    (1, "free operad enumeration", c1_free_operad),
    (2, "preset operad dims", c2_preset_dims),
    (3, "operadic Koszul complexes acyclic", c3_operadic_koszul),
    (4, "Maurer-Cartan equations exact", c4_maurer_cartan),
    (5, "H0 of the bar construction is A^¡", c5_h0),
    (6, "criteria agree on every example", c6_agreement),
    (7, "classical Koszulity of K[x,y] and its trivial module", c7_classical),
    (8, "searched non-Koszul instance", c8_negative),
    (9, "A and A^! verdicts agree", c9_duality),
    (10, "specializations", c10_specializations),
    (11, "deterministic report output", c11_determinism),
]


def _line(num, title, ok, detail):
    return f"{'PASS' if ok else 'FAIL'} criterion {num:2d}: {title}: {detail}"


@pytest.mark.parametrize("num,title,fn", CRITERIA, ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(num, title, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + _line(num, title, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for num, title, fn in CRITERIA:
        ok, detail = fn()
        failed += not ok
        print(_line(num, title, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
