"""Command-line interface: presentation files, checks, duals and reports.

Exit codes: 0 = Koszul up to the bound, 1 = not Koszul, 2 = error.
Machine output (``--format json``) is byte-stable for a fixed input and config.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import __version__
from . import algebra as al
from . import operad as op
from . import presets as ps
from . import trees as tr
from .algebra import AlgebraPresentation
from .operad import OperadPresentation

PRESENTATION_SCHEMA = "koszulkit.presentation/1"
REPORT_SCHEMA = "koszulkit.report/1"

EXIT_KOSZUL, EXIT_NOT_KOSZUL, EXIT_ERROR = 0, 1, 2


class InputError(Exception):
    """A presentation problem, with a stable error code and a location."""

    def __init__(self, code: str, message: str, where: str = ""):
        super().__init__(message)
        self.code, self.where = code, where

    def __str__(self):
        loc = f" at {self.where}" if self.where else ""
        return f"[{self.code}]{loc}: {self.args[0]}"


# -- parsing ------------------------------------------------------------------------------

def parse_coefficient(x, where: str) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise InputError("coefficient", f"coefficients must be integers or 'p/q' strings, got {x!r}", where)
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError, TypeError):
        raise InputError("coefficient", f"bad coefficient {x!r}", where) from None


def format_coefficient(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _field(obj: dict, key: str, kind, where: str, default=...):
    if key not in obj:
        if default is ...:
            raise InputError("schema", f"missing field {key!r}", where)
        return default
    v = obj[key]
    if kind is int and (isinstance(v, bool) or not isinstance(v, int)):
        raise InputError("schema", f"field {key!r} must be an integer", where)
    if kind is not int and not isinstance(v, kind):
        raise InputError("schema", f"field {key!r} has the wrong type", where)
    return v


def _generator(obj: dict, where: str) -> tr.GeneratorSymbol:
    name = _field(obj, "name", str, where)
    arity = _field(obj, "arity", int, where)
    degree = _field(obj, "degree", int, where, 0)
    rep = _field(obj, "rep", str, where, "trivial")
    if arity < 1:
        raise InputError("arity-mismatch", f"generator {name!r} needs arity >= 1", where)
    try:
        if rep == "trivial":
            return tr.GeneratorSymbol.trivial(name, arity, degree)
        if rep == "sign":
            return tr.GeneratorSymbol.sign(name, arity, degree)
        if rep == "regular":
            return tr.GeneratorSymbol.regular(name, arity, degree)
        if rep == "explicit":
            mats = _field(obj, "matrices", dict, where)
            given = {}
            for k, m in mats.items():
                perm = tuple(int(ch) for ch in k)
                given[perm] = [[parse_coefficient(x, f"{where}.matrices.{k}") for x in row] for row in m]
            return tr.GeneratorSymbol.from_matrices(name, arity, given, degree)
    except tr.SymmetryError as e:
        raise InputError("representation", str(e), where) from None
    except tr.TreeStructureError as e:
        raise InputError("schema", str(e), where) from None
    raise InputError("schema", f"unknown representation {rep!r}", where)


def parse_operad(obj: dict, where: str = "operad") -> OperadPresentation:
    if not isinstance(obj, dict):
        raise InputError("schema", "operad must be an object", where)
    max_arity = _field(obj, "max_arity", int, where, 4)
    max_weight = _field(obj, "max_weight", (int, type(None)), where, None)
    if "preset" in obj:
        try:
            return ps.load_preset(_field(obj, "preset", str, where), max_arity)
        except ps.UnknownPresetError as e:
            raise InputError("unknown-preset", e.args[0], where) from None
    gens = [_generator(g, f"{where}.generators[{i}]") for i, g in enumerate(_field(obj, "generators", list, where))]
    try:
        sig = tr.signature(gens)
    except tr.TreeStructureError as e:
        raise InputError("schema", str(e), where) from None
    rels = []
    for i, rel in enumerate(_field(obj, "relations", list, where, [])):
        rw = f"{where}.relations[{i}]"
        if not isinstance(rel, list) or not rel:
            raise InputError("schema", "a relation is a nonempty list of terms", rw)
        terms: Dict = {}
        for j, term in enumerate(rel):
            tw = f"{rw}[{j}]"
            if not isinstance(term, dict):
                raise InputError("schema", "a term is an object with 'coef' and 'tree'", tw)
            c = parse_coefficient(_field(term, "coef", (str, int, float), tw), tw)
            text = _field(term, "tree", str, tw)
            try:
                t = tr.parse_tree(text, sig)
            except tr.ArityMismatchError as e:
                raise InputError("arity-mismatch", str(e), tw) from None
            except tr.TreeStructureError as e:
                code = "unknown-generator" if str(e).startswith("unknown generator") else "malformed-tree"
                raise InputError(code, str(e), tw) from None
            if tr.tree_weight(t) != 2:
                raise InputError("relation-weight", f"term {text!r} has weight {tr.tree_weight(t)}, relations live in weight 2", tw)
            terms[t] = terms.get(t, 0) + c
        try:
            rels.append(tr.element(sig, terms))
        except tr.ArityMismatchError as e:
            raise InputError("arity-mismatch", str(e), rw) from None
        except tr.TreeStructureError as e:
            raise InputError("malformed-tree", str(e), rw) from None
    try:
        return OperadPresentation(gens, rels, max_arity, max_weight, _field(obj, "name", str, where, "custom"))
    except op.RelationWeightError as e:
        raise InputError("relation-weight", str(e), where) from None
    except op.PresentationError as e:
        raise InputError("schema", str(e), where) from None


def parse_algebra(obj: dict, max_weight: Optional[int] = None) -> AlgebraPresentation:
    where = "algebra"
    P = parse_operad(_field(obj, "operad", dict, where), "operad")
    gens = []
    for i, g in enumerate(_field(obj, "generators", list, where)):
        gw = f"generators[{i}]"
        if not isinstance(g, dict):
            raise InputError("schema", "a generator is an object with 'name' and 'degree'", gw)
        gens.append((_field(g, "name", str, gw), _field(g, "degree", int, gw, 0)))
    names = {g for g, _ in gens}
    rels = []
    for i, rel in enumerate(_field(obj, "relations", list, where, [])):
        rw = f"relations[{i}]"
        if not isinstance(rel, list) or not rel:
            raise InputError("schema", "a relation is a nonempty list of terms", rw)
        terms = []
        for j, term in enumerate(rel):
            tw = f"{rw}[{j}]"
            if not isinstance(term, dict):
                raise InputError("schema", "a term is an object with 'coef', 'op', 'inputs'", tw)
            c = parse_coefficient(_field(term, "coef", (str, int, float), tw), tw)
            name = _field(term, "op", str, tw)
            basis = _field(term, "basis", int, tw, 0)
            inputs = _field(term, "inputs", list, tw)
            g = P.sig.get(name)
            if g is None:
                raise InputError("relation-outside-EV", f"{name!r} is not a generating operation; relations must lie in E(V)", tw)
            if len(inputs) != g.arity:
                raise InputError("arity-mismatch", f"{name} takes {g.arity} inputs, got {len(inputs)}", tw)
            for x in inputs:
                if not isinstance(x, str):
                    raise InputError("relation-outside-EV", f"input {x!r} is not a generator name; relations must lie in E(V)", tw)
                if x not in names:
                    raise InputError("unknown-generator", f"unknown generator {x!r}", tw)
            if not 0 <= basis < g.dim:
                raise InputError("schema", f"{name} has no basis vector {basis}", tw)
            terms.append((c, name, basis, tuple(inputs)))
        rels.append(terms)
    W = max_weight if max_weight is not None else _field(obj, "max_weight", int, where, 4)
    try:
        return AlgebraPresentation(P, gens, rels, W, _field(obj, "name", str, where, "A"))
    except al.AlgebraPresentationError as e:
        raise InputError("schema", str(e), where) from None


def parse_document(text: str, max_weight: Optional[int] = None, max_arity: Optional[int] = None
                   ) -> Union[OperadPresentation, AlgebraPresentation]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError("json-syntax", e.msg, f"line {e.lineno}, column {e.colno}") from None
    if not isinstance(obj, dict):
        raise InputError("schema", "top level must be an object")
    schema = obj.get("schema", PRESENTATION_SCHEMA)
    if schema != PRESENTATION_SCHEMA:
        raise InputError("schema", f"unsupported schema {schema!r}, expected {PRESENTATION_SCHEMA!r}")
    kind = _field(obj, "kind", str, "top level")
    if kind == "operad":
        if max_arity is not None:
            obj = dict(obj, max_arity=max_arity)
        return parse_operad(obj, "top level")
    if kind == "algebra":
        return parse_algebra(obj, max_weight)
    raise InputError("schema", f"kind must be 'operad' or 'algebra', got {kind!r}", "top level")


def parse_presentation(path: str, max_weight: Optional[int] = None, max_arity: Optional[int] = None):
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise InputError("io", str(e), path) from None
    return parse_document(text, max_weight, max_arity)


# -- emission ----------------------------------------------------------------------------------

def _generator_json(g: tr.GeneratorSymbol) -> dict:
    out = {"name": g.name, "arity": g.arity, "degree": g.degree}
    if g.kind in ("trivial", "sign", "regular"):
        out["rep"] = g.kind
    else:
        out["rep"] = "explicit"
        out["matrices"] = g.matrices_json() if g.arity > 1 else {"1": [[str(x) for x in r] for r in g.action[(1,)]]}
    return out


def _same_generator(a: tr.GeneratorSymbol, b: tr.GeneratorSymbol) -> bool:
    return (a.name, a.arity, a.degree, a.dim) == (b.name, b.arity, b.degree, b.dim) and dict(a.action) == dict(b.action)


def _is_preset(pres: OperadPresentation) -> bool:
    if pres.name not in ps.PRESETS:
        return False
    ref = ps.load_preset(pres.name, pres.max_arity)
    return (len(ref.generators) == len(pres.generators)
            and all(_same_generator(a, b) for a, b in zip(ref.generators, pres.generators))
            and ref.relations == pres.relations and ref.max_weight == pres.max_weight)


def operad_json(pres: OperadPresentation) -> dict:
    if _is_preset(pres):
        return {"preset": pres.name, "max_arity": pres.max_arity}
    rels = []
    for r in pres.relations:
        terms = sorted(r.terms.items(), key=lambda kv: tr.encode_tree(kv[0], pres.sig))
        rels.append([{"coef": format_coefficient(Fraction(c)), "tree": tr.encode_tree(t, pres.sig)} for t, c in terms])
    return {"name": pres.name, "max_arity": pres.max_arity, "max_weight": pres.max_weight,
            "generators": [_generator_json(g) for g in pres.generators], "relations": rels}


def presentation_json(pres: Union[OperadPresentation, AlgebraPresentation]) -> dict:
    if isinstance(pres, OperadPresentation):
        return dict({"schema": PRESENTATION_SCHEMA, "kind": "operad"}, **operad_json(pres))
    rels = []
    for rel in pres.relations:
        rels.append([{"coef": format_coefficient(Fraction(c)), "op": name, "basis": j, "inputs": list(letters)}
                     for c, name, j, letters in rel])
    return {"schema": PRESENTATION_SCHEMA, "kind": "algebra", "name": pres.name, "max_weight": pres.max_weight,
            "operad": operad_json(pres.operad),
            "generators": [{"name": g, "degree": d} for g, d in pres.generators], "relations": rels}


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


# -- inputs ---------------------------------------------------------------------------------------

@dataclass(frozen=True)
class RunConfig:
    command: str
    source: str                 # file path, or "preset:NAME"
    max_arity: Optional[int]
    max_weight: Optional[int]
    deep: bool
    fmt: str


def load_input(cfg: RunConfig):
    if cfg.source.startswith("preset:"):
        name = cfg.source[len("preset:"):]
        if name in ps.PRESETS:
            return ps.load_preset(name, cfg.max_arity or 4)
        if name in ps.EXAMPLES:
            return ps.load_example(name, cfg.max_weight or 4)
        raise InputError("unknown-preset",
                         f"unknown preset {name!r}; operads {sorted(ps.PRESETS)}, algebras {sorted(ps.EXAMPLES)}")
    return parse_presentation(cfg.source, cfg.max_weight, cfg.max_arity)


# -- commands -----------------------------------------------------------------------------------

def _dims_list(d: Dict[int, int]) -> List[int]:
    return [d[k] for k in sorted(d)]


def _betti_rows(betti: Dict[int, Dict[int, int]]) -> List[List[int]]:
    return [[b.get(k, 0) for k in range(max(b, default=-1) + 1)] for _, b in sorted(betti.items())]


def run_check_operad(pres: OperadPresentation) -> Tuple[dict, int]:
    P = op.build_truncated_operad(pres)
    C = op.koszul_dual_cooperad(pres, P)
    mc = op.mc_check_kappa(P, C)
    left = op.operadic_koszul_homology(P, C, "left")
    right = op.operadic_koszul_homology(P, C, "right")
    ok = mc.zero and left.is_unit() and right.is_unit()
    rep = {"kind": "operad", "name": pres.name, "max_arity": P.max_arity,
           "dims": {"P": _dims_list(P.dims()), "P_coop": _dims_list(C.dims())},
           "mc_kappa_zero": mc.zero,
           "koszul_complex": {"left_betti": _betti_rows(left.betti), "right_betti": _betti_rows(right.betti),
                              "left_acyclic": left.is_unit(), "right_acyclic": right.is_unit()},
           "koszul": ok}
    return rep, EXIT_KOSZUL if ok else EXIT_NOT_KOSZUL


def run_check_algebra(pres: AlgebraPresentation, deep: bool) -> Tuple[dict, int]:
    from .cotangent import koszul_criterion
    A = al.build_algebra(pres)
    Ac = al.koszul_dual_coalgebra(A)
    mc = al.mc_check_varkappa(Ac)
    v = koszul_criterion(A, Ac, deep=deep)
    hk = v.details["complex"]
    rep = {"kind": "algebra", "name": pres.name, "operad": pres.operad.name, "max_weight": A.W,
           "verdict": v.record(), "first_failures": {k: v.first_failures.get(k) for k in ("bar", "cobar", "complex", "deep")},
           "mc_varkappa_zero": mc.zero, "kahler_condition": v.details["star"],
           "complex_betti": [r["by_degree"] for r in hk.records()],
           "bar_betti": [v.details["bar"].betti[w] for w in sorted(v.details["bar"].betti)]}
    if not v.details["star"]:
        rep["complex_raw"] = v.details["complex_raw"]
    return rep, EXIT_KOSZUL if v.koszul else EXIT_NOT_KOSZUL


def _hilbert(coeffs: Sequence[int], shift: int, W: int) -> str:
    terms = ["1"]
    for w, c in enumerate(coeffs):
        if not c:
            continue
        e = w + shift
        t = "t" if e == 1 else f"t^{e}"
        terms.append(t if c == 1 else f"{c}{t}")
    return " + ".join(terms) + f" + O(t^{W + shift + 1})"


def _functional_equation(a: Sequence[int], b: Sequence[int]) -> bool:
    """(1 + Σ a_w t^{w+1})(1 + Σ b_w (-t)^{w+1}) = 1 up to the truncation."""
    fa = [1] + list(a)
    fb = [1] + [(-1) ** (w + 1) * x for w, x in enumerate(b)]
    n = min(len(fa), len(fb))
    return all(sum(fa[i] * fb[k - i] for i in range(k + 1)) == (1 if k == 0 else 0) for k in range(n))


def run_report(pres, deep: bool) -> Tuple[dict, int]:
    if isinstance(pres, OperadPresentation):
        rep, code = run_check_operad(pres)
        dual = op.build_truncated_operad(op.koszul_dual_operad(pres))
        rep["dims"]["P_dual"] = _dims_list(dual.dims())
        return rep, code
    from .barcobar import bar_h0_check, build_bar
    rep, code = run_check_algebra(pres, deep)
    A = al.build_algebra(pres)
    Ac = al.koszul_dual_coalgebra(A)
    dual = al.koszul_dual_algebra(pres)
    bar = build_bar(A, Ac.C)
    W = A.W
    a, ad, ac = A.dims(), dual.dims(), Ac.dims()
    rep["dims"] = {"A": a, "A_dual": ad, "A_coalgebra": ac}
    rep["bar"] = {"dims": [[bar.dim(w, om) for om in range(w + 1)] for w in range(W + 1)],
                  "betti": rep.pop("bar_betti"), "h0_matches_coalgebra": bar_h0_check(bar, Ac).match}
    bh = rep["bar"]["betti"]
    rep["bar"]["euler_ok"] = all(sum((-1) ** om * x for om, x in enumerate(rep["bar"]["dims"][w]))
                                 == sum((-1) ** om * x for om, x in enumerate(bh[w])) for w in range(W + 1))
    hil = {"A": _hilbert(a, 1, W), "A_dual": _hilbert(ad, 1, W), "flag": "derived consequence"}
    if pres.operad.name in ("as", "as^!"):
        hil["functional_equation"] = _functional_equation(a, ad)
    else:
        hil["functional_equation"] = None
    rep["hilbert"] = hil
    kind = pres.operad.name
    if kind in ("as", "com") and all(d == 0 for _, d in pres.generators):
        from .cotangent import kahler_dims
        h0 = [row[0] for row in rep["complex_betti"]]
        rep["kahler_h0"] = {"expected": kahler_dims(A, kind), "complex_h0": h0,
                            "match": kahler_dims(A, kind) == h0}
    return rep, code


def run_bar(pres: AlgebraPresentation) -> Tuple[dict, int]:
    from .barcobar import bar_homology, build_bar
    A = al.build_algebra(pres)
    Ac = al.koszul_dual_coalgebra(A)
    bar = build_bar(A, Ac.C)
    h = bar_homology(bar, Ac)
    rep = {"kind": "bar", "name": pres.name, "max_weight": A.W,
           "dims": [[bar.dim(w, om) for om in range(w + 1)] for w in range(A.W + 1)],
           "betti": [h.betti[w] for w in sorted(h.betti)], "coalgebra_dims": h.coalgebra_dims,
           "koszul": h.koszul, "first_failure": h.first_failure, "euler_ok": h.euler_ok}
    return rep, EXIT_KOSZUL if h.koszul else EXIT_NOT_KOSZUL


def run_dual(pres) -> Tuple[dict, int]:
    if isinstance(pres, OperadPresentation):
        return presentation_json(op.koszul_dual_operad(pres)), EXIT_KOSZUL
    return presentation_json(al.koszul_dual_presentation(pres)), EXIT_KOSZUL


def execute(cfg: RunConfig) -> Tuple[dict, int]:
    """Run one command on one input; errors become an error record with exit code 2."""
    try:
        pres = load_input(cfg)
        if cfg.command == "check-operad":
            if not isinstance(pres, OperadPresentation):
                raise InputError("schema", "check-operad needs an operad presentation")
            rep, code = run_check_operad(pres)
        elif cfg.command == "check-algebra":
            if not isinstance(pres, AlgebraPresentation):
                raise InputError("schema", "check-algebra needs an algebra presentation")
            rep, code = run_check_algebra(pres, cfg.deep)
        elif cfg.command == "report":
            rep, code = run_report(pres, cfg.deep)
        elif cfg.command == "bar":
            if not isinstance(pres, AlgebraPresentation):
                raise InputError("schema", "bar needs an algebra presentation")
            rep, code = run_bar(pres)
        elif cfg.command == "dual":
            return run_dual(pres)
        else:
            raise InputError("usage", f"unknown command {cfg.command!r}")
    except InputError as e:
        return {"error": {"code": e.code, "where": e.where, "message": e.args[0]}}, EXIT_ERROR
    except op.TruncationError as e:
        return {"error": {"code": "truncation", "where": "", "message": str(e),
                          "needed": _plain(e.needed)}}, EXIT_ERROR
    except op.UnsupportedPresentationError as e:
        return {"error": {"code": "unsupported", "where": "", "message": str(e)}}, EXIT_ERROR
    except (op.PresentationError, al.AlgebraPresentationError) as e:
        return {"error": {"code": getattr(e, "code", "presentation"), "where": "", "message": str(e)}}, EXIT_ERROR
    rep = dict({"schema": REPORT_SCHEMA, "command": cfg.command, "input": cfg.source}, **rep)
    return rep, code


def _plain(x):
    if isinstance(x, tuple):
        return list(x)
    return x


# -- rendering ---------------------------------------------------------------------------------------

def render_text(rep: dict) -> str:
    if "error" in rep:
        e = rep["error"]
        loc = f" at {e['where']}" if e.get("where") else ""
        extra = f" (needed bound: {e['needed']})" if e.get("needed") is not None else ""
        return f"error [{e['code']}]{loc}: {e['message']}{extra}\n"
    if rep.get("schema") == PRESENTATION_SCHEMA:
        return dumps(rep)
    lines = [f"{rep['command']} {rep['input']}"]

    def put(key, val):
        lines.append(f"  {key}: {val}")

    def table(title, rows):
        lines.append(f"  {title}:")
        for w, row in enumerate(rows):
            lines.append(f"    w={w}: " + " ".join(str(x) for x in row))

    kind = rep.get("kind")
    if kind == "operad":
        put("dims P", " ".join(map(str, rep["dims"]["P"])))
        put("dims P^¡", " ".join(map(str, rep["dims"]["P_coop"])))
        if "P_dual" in rep["dims"]:
            put("dims P^!", " ".join(map(str, rep["dims"]["P_dual"])))
        put("∂κ + κ⋆κ = 0", rep["mc_kappa_zero"])
        kc = rep["koszul_complex"]
        put("P∘_κP^¡ acyclic", kc["left_acyclic"])
        put("P^¡∘_κP acyclic", kc["right_acyclic"])
        put("Koszul up to arity", rep["max_arity"] if rep["koszul"] else "no")
    elif kind == "algebra":
        if "dims" in rep:
            put("dims A", " ".join(map(str, rep["dims"]["A"])))
            put("dims A^!", " ".join(map(str, rep["dims"]["A_dual"])))
            put("dims A^¡", " ".join(map(str, rep["dims"]["A_coalgebra"])))
        put("⋆_κ(ϰ) = 0", rep["mc_varkappa_zero"])
        v = rep["verdict"]
        crit = ", ".join(f"{k}={'n/a' if x is None else x}" for k, x in v["criteria"].items())
        put("criteria", crit)
        if not rep["kahler_condition"]:
            put("complex criterion", f"not applicable for {rep['operad']} (raw: {rep.get('complex_raw')})")
        table("A⊗^P A^¡ Betti", rep["complex_betti"])
        if "bar" in rep:
            table("bar dims", rep["bar"]["dims"])
            table("bar Betti", rep["bar"]["betti"])
            put("bar H0 = A^¡", rep["bar"]["h0_matches_coalgebra"])
            put("Euler characteristic check", rep["bar"]["euler_ok"])
            h = rep["hilbert"]
            put("Hilbert A", h["A"])
            put("Hilbert A^!", h["A_dual"])
            fe = h["functional_equation"]
            put("H_A(t)·H_A^!(-t) = 1 [derived consequence]", "n/a" if fe is None else fe)
            if "kahler_h0" in rep:
                put("H0 = Kähler module", rep["kahler_h0"]["match"])
        else:
            table("bar Betti", rep["bar_betti"])
        if v["first_failure"] is None:
            put("verdict", f"Koszul up to weight {v['koszul_up_to']}")
        else:
            put("verdict", f"not Koszul; first failing weight {v['first_failure']}")
    elif kind == "bar":
        table("bar dims", rep["dims"])
        table("bar Betti", rep["betti"])
        put("A^¡ dims", " ".join(map(str, rep["coalgebra_dims"])))
        put("concentrated in weight-degree 0", rep["koszul"])
        if rep["first_failure"] is not None:
            put("first failing weight", rep["first_failure"])
    return "\n".join(lines) + "\n"


# -- entry point -----------------------------------------------------------------------------------------

def _bound(s: str) -> int:
    v = int(s)
    if v < 2:
        raise argparse.ArgumentTypeError("bounds must be >= 2")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="koszulkit", description="Koszul duality checks for quadratic operads and their algebras.")
    p.add_argument("--version", action="version", version=f"koszulkit {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in [("check-operad", "operadic Koszul complex and ∂κ + κ⋆κ = 0"),
                        ("check-algebra", "Koszul criterion for an algebra (exit 0/1/2)"),
                        ("dual", "emit the Koszul dual presentation"),
                        ("report", "dimensions, bar tables, Hilbert series and verdict"),
                        ("bar", "bar construction tables")]:
        s = sub.add_parser(name, help=help_)
        s.add_argument("inputs", nargs="*", help="presentation files (JSON)")
        s.add_argument("--preset", action="append", default=[],
                       help="built-in operad (as, com, lie) or example algebra; repeatable")
        s.add_argument("--max-arity", type=_bound, default=None)
        s.add_argument("--max-weight", type=_bound, default=None)
        s.add_argument("--deep", action="store_true", help="also compare A⊗A^¡ with A⊗B_κA (weights <= 3)")
        s.add_argument("--format", choices=("text", "json"), default="text")
        s.add_argument("--jobs", type=int, default=1, help="worker processes for several inputs")
        s.add_argument("-o", "--output", default=None, help="write to a file instead of stdout")
    sub.add_parser("presets", help="list built-in operads and example algebras")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "presets":
        sys.stdout.write(dumps(ps.catalog()))
        return 0
    sources = list(args.inputs) + [f"preset:{n}" for n in args.preset]
    if not sources:
        sys.stderr.write("error [usage]: give a presentation file or --preset NAME\n")
        return EXIT_ERROR
    cfgs = [RunConfig(args.command, s, args.max_arity, args.max_weight, args.deep, args.format) for s in sources]
    if args.jobs > 1 and len(cfgs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(execute, cfgs))
    else:
        results = [execute(c) for c in cfgs]
    if args.format == "json" or args.command == "dual":
        body = [r for r, _ in results]
        text = dumps(body[0] if len(body) == 1 else body)
    else:
        text = "".join(render_text(r) for r, _ in results)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    codes = [c for _, c in results]
    if EXIT_ERROR in codes:
        for r, c in results:
            if c == EXIT_ERROR and args.format == "json":
                sys.stderr.write(render_text(r))
        return EXIT_ERROR
    return EXIT_NOT_KOSZUL if EXIT_NOT_KOSZUL in codes else EXIT_KOSZUL


if __name__ == "__main__":
    sys.exit(main())
