"""JSON persistence for rings, quadratic spaces and problems, plus text renderings.

Writers emit keys and entries in a fixed order, so a load/save cycle is a
fixpoint after one normalization pass.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .abgroup import FinAbGroup, GroupElement, Subgroup, subgroup_generate
from .errors import DomainError, FuseliftError, ParseError
from .exactnum import QZ
from .extension import ExtensionProblem, SectorTable, validate_extension
from .fusion import FusionRing
from .inverse import InverseProblem
from .quadspace import QuadraticSpace, make_quadratic_space


def _nesting(obj: Any) -> int:
    if not isinstance(obj, (dict, list)):
        return 0
    items = obj.values() if isinstance(obj, dict) else obj
    return 1 + max((_nesting(v) for v in items), default=0)


def _render(obj: Any, depth: int, in_list: bool = False) -> str:
    n = _nesting(obj)
    flat = depth > 0 and (n <= 2 if in_list else n == 1 and isinstance(obj, list))
    if not isinstance(obj, (dict, list)) or not obj or flat:
        return json.dumps(obj, ensure_ascii=False, separators=(", ", ": "))
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(obj, dict):
        body = [f"{inner}{json.dumps(k, ensure_ascii=False)}: {_render(v, depth + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(body) + f"\n{pad}}}"
    return "[\n" + ",\n".join(inner + _render(v, depth + 1, True) for v in obj) + f"\n{pad}]"


def dumps(obj: Any) -> str:
    """Indented JSON with flat lists kept on one line."""
    return _render(obj, 0) + "\n"


def load_json(path: str | Path) -> Any:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{path}:{exc.lineno}:{exc.colno}") from exc


def element_key(x: GroupElement) -> str:
    return "[" + ",".join(map(str, x.coords)) + "]"


def element_from_json(G: FinAbGroup, obj: Any, where: str = "", reduced: bool = False) -> GroupElement:
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise ParseError(f"not a group element: {obj!r}", where) from exc
    if isinstance(obj, int) and not isinstance(obj, bool):
        obj = [obj]
    if not isinstance(obj, list) or not all(isinstance(c, int) for c in obj) or len(obj) != G.rank:
        raise ParseError(f"expected {G.rank} integer coordinates for an element of {G}, got {obj!r}", where)
    if reduced and any(not 0 <= c < n for c, n in zip(obj, G.invariants)):
        raise ParseError(f"element {obj} is not reduced modulo {list(G.invariants)}", where)
    return G(*obj)


def _require(d: Any, key: str, where: str) -> Any:
    if not isinstance(d, dict):
        raise ParseError("expected an object", where)
    if key not in d:
        raise ParseError(f"missing key {key!r}", where)
    return d[key]


def _qz(text: Any, where: str) -> QZ:
    if not isinstance(text, (str, int)) or isinstance(text, bool):
        raise ParseError(f"expected 'p/q', got {text!r}", where)
    try:
        return QZ.parse(str(text))
    except ParseError as exc:
        raise ParseError(str(exc), where) from exc


# rings


def ring_to_dict(R: FusionRing) -> dict:
    out = {
        "labels": list(R.labels),
        "unit": R.unit,
        "dual": {a: R.dual[a] for a in R.labels},
        "weights": {a: str(R.weight[a]) for a in R.labels},
        "fusion": [{"a": a, "b": b, "c": c, "n": n} for a, b, c, n in R.entries()],
    }
    if R.true_weight:
        out["true_weights"] = {a: str(R.true_weight[a]) for a in R.labels}
    return out


def ring_from_dict(d: Any, where: str = "ring") -> FusionRing:
    labels = _require(d, "labels", where)
    if not isinstance(labels, list) or not all(isinstance(a, str) for a in labels):
        raise ParseError("labels must be a list of strings", f"{where}.labels")
    unit = _require(d, "unit", where)
    dual = _require(d, "dual", where)
    weights = _require(d, "weights", where)
    fusion = _require(d, "fusion", where)
    if not isinstance(dual, dict) or not isinstance(weights, dict) or not isinstance(fusion, list):
        raise ParseError("dual and weights must be objects, fusion a list", where)
    N: dict[tuple[str, str, str], int] = {}
    for k, e in enumerate(fusion):
        w = f"{where}.fusion[{k}]"
        a, b, c, n = (_require(e, key, w) for key in "abcn")
        if not isinstance(n, int) or isinstance(n, bool):
            raise ParseError(f"multiplicity must be an integer, got {n!r}", w)
        if n < 0:
            raise ParseError(f"negative multiplicity {n}", w)
        if (a, b, c) in N:
            raise ParseError(f"duplicate entry for ({a}, {b}, {c})", w)
        N[(a, b, c)] = n
    tw = None
    if "true_weights" in d:
        try:
            tw = {a: Fraction(str(v)) for a, v in d["true_weights"].items()}
        except (ValueError, ZeroDivisionError, AttributeError) as exc:
            raise ParseError("bad true_weights", f"{where}.true_weights") from exc
    w = {a: _qz(v, f"{where}.weights.{a}") for a, v in weights.items()}
    try:
        return FusionRing(labels, unit, dual, w, N, tw)
    except DomainError as exc:
        raise ParseError(str(exc), where) from exc


# quadratic spaces


def space_to_dict(S: QuadraticSpace) -> dict:
    return {"group": list(S.group.invariants), "q": {element_key(x): str(S.q(x)) for x in S.elements}}


def space_from_dict(d: Any, where: str = "space") -> QuadraticSpace:
    inv = _require(d, "group", where)
    if not isinstance(inv, list) or not all(isinstance(n, int) for n in inv):
        raise ParseError("group must be a list of integers", f"{where}.group")
    try:
        G = FinAbGroup(tuple(inv))
    except DomainError as exc:
        raise ParseError(str(exc), f"{where}.group") from exc
    qd = _require(d, "q", where)
    if not isinstance(qd, dict):
        raise ParseError("q must be an object", f"{where}.q")
    q = {}
    for key, v in qd.items():
        x = element_from_json(G, key, f"{where}.q", reduced=True)
        q[x] = _qz(v, f"{where}.q.{key}")
    missing = [x for x in G.elements() if x not in q]
    if missing:
        raise ParseError(f"q is not given on {element_key(missing[0])}", f"{where}.q")
    return make_quadratic_space(G, q)


def subgroup_from_json(G: FinAbGroup, gens: Any, where: str) -> Subgroup:
    if not isinstance(gens, list):
        raise ParseError("expected a list of generators", where)
    return subgroup_generate(G, [element_from_json(G, g, f"{where}[{k}]") for k, g in enumerate(gens)])


def _generators(H: Subgroup) -> list[GroupElement]:
    gens: list[GroupElement] = []
    span = subgroup_generate(H.owner, [])
    for x in sorted(H.elements, key=lambda e: (-e.order(), e.coords)):
        if x not in span:
            gens.append(x)
            span = subgroup_generate(H.owner, gens)
        if span == H:
            break
    return sorted(gens)


# extension problems


def problem_to_dict(P: ExtensionProblem) -> dict:
    return {
        "W": ring_to_dict(P.W),
        "V": space_to_dict(P.V),
        "D": [list(g.coords) for g in _generators(P.D)],
        "grading": {element_key(b): P.grading[b] for b in P.D},
    }


def problem_from_dict(d: Any, where: str = "problem") -> ExtensionProblem:
    W = ring_from_dict(_require(d, "W", where), f"{where}.W")
    V = space_from_dict(_require(d, "V", where), f"{where}.V")
    D = subgroup_from_json(V.group, _require(d, "D", where), f"{where}.D")
    gr = _require(d, "grading", where)
    if not isinstance(gr, dict):
        raise ParseError("grading must be an object", f"{where}.grading")
    grading = {element_from_json(V.group, k, f"{where}.grading"): v for k, v in gr.items()}
    return validate_extension(W, V, D, grading)


def inverse_to_dict(IP: InverseProblem) -> dict:
    return {
        "U": ring_to_dict(IP.U),
        "V": space_to_dict(IP.V),
        "D": [list(g.coords) for g in _generators(IP.D)],
        "gradingU": {element_key(g): a for g, a in sorted(IP.gradingU.items())},
        "branching": {a: list(IP.branching[a].coords) for a in IP.U.labels if a in IP.branching},
    }


def inverse_from_dict(d: Any, where: str = "inverse") -> InverseProblem:
    U = ring_from_dict(_require(d, "U", where), f"{where}.U")
    V = space_from_dict(_require(d, "V", where), f"{where}.V")
    D = subgroup_from_json(V.group, _require(d, "D", where), f"{where}.D")
    gr = _require(d, "gradingU", where)
    br = _require(d, "branching", where)
    if not isinstance(gr, dict) or not isinstance(br, dict):
        raise ParseError("gradingU and branching must be objects", where)
    gradingU = {element_from_json(V.group, k, f"{where}.gradingU"): v for k, v in gr.items()}
    branching = {a: element_from_json(V.group, c, f"{where}.branching.{a}") for a, c in br.items()}
    return InverseProblem(U, V, D, gradingU, branching)


def detect_kind(d: Any) -> str:
    if isinstance(d, dict):
        if "labels" in d:
            return "ring"
        if "W" in d:
            return "extension"
        if "U" in d:
            return "inverse"
        if "group" in d and "q" in d:
            return "space"
    raise ParseError("cannot tell what this file holds (expected a ring, space, extension or inverse problem)")


def load_any(d: Any, where: str = "") -> tuple[str, Any]:
    kind = detect_kind(d)
    loader = {"ring": ring_from_dict, "space": space_from_dict, "extension": problem_from_dict, "inverse": inverse_from_dict}
    return kind, loader[kind](d, where or kind)


def to_dict(obj: Any) -> dict:
    if isinstance(obj, FusionRing):
        return ring_to_dict(obj)
    if isinstance(obj, QuadraticSpace):
        return space_to_dict(obj)
    if isinstance(obj, ExtensionProblem):
        return problem_to_dict(obj)
    if isinstance(obj, InverseProblem):
        return inverse_to_dict(obj)
    raise FuseliftError(f"cannot serialize {type(obj).__name__}")


# sector tables


def _decomposition_text(s) -> str:
    return " + ".join(f"{x}(x)V^{c}" for x, c in s.decomposition)


def sector_table_to_dict(T: SectorTable, twisted: bool = False) -> dict:
    chars = T.characters if twisted else T.characters[:1]
    return {
        "C": list(T.problem.C.invariants),
        "D": [list(b.coords) for b in T.problem.D],
        "Dperp": [list(g.coords) for g in T.problem.Dperp],
        "characters": [
            {
                "chi": [str(v) for v in chi.values],
                "sectors": [
                    {
                        "name": s.name,
                        "i": s.i,
                        "alpha": list(s.alpha.coords),
                        "weight": str(s.weight),
                        "decomposition": [{"W": x, "charge": list(c.coords)} for x, c in s.decomposition],
                    }
                    for s in T.per_character[chi]
                ],
            }
            for chi in chars
        ],
    }


def sector_table_text(T: SectorTable, twisted: bool = False) -> str:
    chars = T.characters if twisted else T.characters[:1]
    rows = [("chi", "i", "alpha", "weight", "decomposition")]
    for chi in chars:
        for s in T.per_character[chi]:
            rows.append((str(chi), f"i{s.i}", str(s.alpha), str(s.weight), _decomposition_text(s)))
    widths = [max(len(r[k]) for r in rows) for k in range(4)]
    lines = ["  ".join(r[k].ljust(widths[k]) for k in range(4)) + "  " + r[4] for r in rows]
    return "\n".join(line.rstrip() for line in lines) + "\n"
