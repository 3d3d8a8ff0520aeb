"""Canonical JSON encoding of polynomials and operators.

Rationals are decimal strings "p/q" (reduced, q > 0).  Terms are emitted
in canonical graded-lex order, largest first, so serialize . parse is the
identity and equal objects serialize to identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .poly import Poly, term_sort_key
from .spaces import VarSpace
from .weyl import WeylOp

SCHEMA = "symtrace/1"


def rational_to_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def rational_from_str(s: str) -> Fraction:
    return Fraction(s)


def poly_to_dict(p: Poly) -> dict:
    return {
        "space": p.space.code(),
        "terms": [
            {"coeff": rational_to_str(c), "exp": list(exp)}
            for exp, c in p.sorted_terms()
        ],
    }


def poly_from_dict(d: dict) -> Poly:
    space = VarSpace.from_code(d["space"])
    terms = {tuple(t["exp"]): rational_from_str(t["coeff"]) for t in d["terms"]}
    return Poly(space, terms)


def weyl_to_dict(op: WeylOp) -> dict:
    return {
        "space": op.space.code(),
        "terms": [
            {"dexp": list(dexp), "coeff": poly_to_dict(c)}
            for dexp, c in sorted(op.terms.items(), key=lambda kv: term_sort_key(kv[0]))
        ],
    }


def weyl_from_dict(d: dict) -> WeylOp:
    space = VarSpace.from_code(d["space"])
    terms = {tuple(t["dexp"]): poly_from_dict(t["coeff"]) for t in d["terms"]}
    return WeylOp(space, terms)


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"
