"""Monomial literals, canonical JSON and DOT export."""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, Dict, List, Optional

from .errors import ValidationError
from .quivers import LabelledARQuiver, QuiverSpec, TwistedARQuiver, ar_quiver, twist
from .torus import QuantumTorus, TLaurent, TorusElement, YMonomial, torus_for

__all__ = [
    "parse_monomial",
    "format_monomial",
    "laurent_to_json",
    "laurent_from_json",
    "monomial_to_json",
    "monomial_from_json",
    "element_to_json",
    "element_from_json",
    "quiver_to_json",
    "quiver_from_json",
    "quiver_to_dot",
    "dumps",
]

_NUMBER = r"[+-]?\d+(?:/\d+)?"
_TOKEN = re.compile(rf"Y\(({_NUMBER}),({_NUMBER})\)(?:\^\(?({_NUMBER})\)?)?")


def _integer(text: str, what: str) -> int:
    value = Fraction(text)
    if value.denominator != 1:
        raise ValidationError(f"{what} {text} is not an integer")
    return int(value)


def parse_monomial(text: str) -> YMonomial:
    """Parse ``Y(i,r)`` and ``Y(i,r)^e`` products; ``1`` is the unit.

    Whitespace and ``*`` separators are ignored.  Spectral parameters may be
    written as ``p/2`` but must denote integers.
    """
    compact = re.sub(r"[\s*]", "", text)
    if compact in ("", "1"):
        return YMonomial.one()
    pos, exps = 0, {}
    while pos < len(compact):
        match = _TOKEN.match(compact, pos)
        if not match:
            raise ValidationError(f"cannot parse monomial {text!r} at {compact[pos:]!r}")
        i = _integer(match.group(1), "node")
        r = _integer(match.group(2), "spectral parameter")
        e = _integer(match.group(3), "exponent") if match.group(3) else 1
        exps[(i, r)] = exps.get((i, r), 0) + e
        pos = match.end()
    return YMonomial(exps)


def format_monomial(m: YMonomial) -> str:
    return str(m)


def laurent_to_json(c: TLaurent) -> List[List[int]]:
    return [[k, v] for k, v in sorted(c.c.items())]


def laurent_from_json(data) -> TLaurent:
    return TLaurent({int(k): int(v) for k, v in data})


def monomial_to_json(m: YMonomial) -> List[List[int]]:
    """``[[i, 2r, exp], ...]`` with doubled spectral parameters."""
    return [[i, 2 * r, e] for i, r, e in sorted(m.items)]


def monomial_from_json(data) -> YMonomial:
    exps = {}
    for i, rr, e in data:
        if rr % 2:
            raise ValidationError(f"doubled spectral parameter {rr} is odd")
        exps[(int(i), int(rr) // 2)] = int(e)
    return YMonomial(exps)


def element_to_json(x: TorusElement) -> Dict[str, Any]:
    cartan = x.algebra.cartan
    terms = [{"mono": monomial_to_json(m), "coeff": laurent_to_json(c)}
             for m, c in sorted(x.terms.items(), key=lambda kv: monomial_to_json(kv[0]))]
    return {"algebra": {"kind": cartan.kind, "n": cartan.n}, "terms": terms}


def element_from_json(data: Dict[str, Any], torus: Optional[QuantumTorus] = None) -> TorusElement:
    if torus is None:
        if "algebra" not in data:
            raise ValidationError("element JSON has no algebra and none was supplied")
        torus = torus_for(data["algebra"]["kind"], int(data["algebra"]["n"]))
    terms = {}
    for term in data["terms"]:
        terms[monomial_from_json(term["mono"])] = laurent_from_json(term["coeff"])
    return torus.element(terms)


def quiver_to_json(q) -> Dict[str, Any]:
    """``{"type", "n", "arrows", "xi", "flat"}`` for a Dynkin quiver or its twist."""
    if isinstance(q, TwistedARQuiver):
        src = q.source
        return {"type": "A", "n": src.n, "arrows": sorted(map(list, src.arrows)),
                "xi": list(src.xi), "flat": q.flat}
    if isinstance(q, QuiverSpec):
        return {"type": "A", "n": q.n, "arrows": sorted(map(list, q.arrows)),
                "xi": list(q.xi), "flat": None}
    raise ValidationError(f"cannot serialise {type(q).__name__} as a quiver")


def quiver_from_json(data: Dict[str, Any]):
    if data.get("type", "A") != "A":
        raise ValidationError("only type A Dynkin quivers are supported")
    spec = QuiverSpec.from_arrows(int(data["n"]), [tuple(a) for a in data["arrows"]],
                                  int(data["xi"][0]) if data.get("xi") else 0)
    if data.get("xi") and list(spec.xi) != [int(x) for x in data["xi"]]:
        raise ValidationError("height function does not match the arrows")
    flat = data.get("flat")
    return twist(spec, flat) if flat else spec


def _column_label(rr: int) -> str:
    return str(rr // 2) if rr % 2 == 0 else f"{rr}/2"


def quiver_to_dot(q, name: str = "Q") -> str:
    """DOT text; nodes are laid out by residue (rows) and column."""
    if isinstance(q, QuiverSpec):
        q = ar_quiver(q)
    if isinstance(q, TwistedARQuiver):
        q = q.hat
    if q is None:
        verts, arrows, residue = (), (), {}
    elif isinstance(q, LabelledARQuiver):
        verts, arrows, residue = q.vertices, q.arrows, q.residue
    else:
        raise ValidationError(f"cannot export {type(q).__name__} as a graph")
    ids = {v: f"v{k}" for k, v in enumerate(sorted(verts, key=lambda v: (v[0], -v[1])))}
    lines = [f"digraph {name} {{", "  rankdir=RL;"]
    for v, ident in ids.items():
        a, rr = v
        label = f"({residue.get(v, a)},{_column_label(rr)})"
        lines.append(f'  {ident} [label="{label}", pos="{-rr},{-a}!"];')
    for a, b in sorted(arrows):
        lines.append(f"  {ids[a]} -> {ids[b]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dumps(data: Any) -> str:
    """Canonical JSON: sorted keys, compact separators."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"))
