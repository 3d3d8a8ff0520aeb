"""Multivariate polynomials over exact rationals.

Terms live in a dict mapping exponent tuples to nonzero Fractions; the
exponent tuple runs over all variables of the carrying VarSpace in
canonical order.  Values are immutable by convention: no method mutates
``terms`` after construction, so polynomials can be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .spaces import VarSpace, check_same_space

Rational = Fraction


@dataclass(frozen=True)
class Weight:
    """A quasi-homogeneous weight: an integer, or non-pure."""

    value: int | None

    @property
    def is_pure(self) -> bool:
        return self.value is not None

    @staticmethod
    def pure(value: int) -> Weight:
        return Weight(value)

    def __str__(self):
        return "non-pure" if self.value is None else str(self.value)


NON_PURE = Weight(None)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


def term_sort_key(exp: tuple[int, ...]):
    """Graded-lex, largest first: sort ascending by this key."""
    return (-sum(exp), tuple(-e for e in exp))


class Poly:
    __slots__ = ("space", "terms")

    def __init__(self, space: VarSpace, terms: Mapping[tuple[int, ...], Fraction] | None = None):
        object.__setattr__(self, "space", space)
        clean: dict[tuple[int, ...], Fraction] = {}
        n = space.nvars
        for exp, coeff in (terms or {}).items():
            c = _as_fraction(coeff)
            if c == 0:
                continue
            exp = tuple(exp)
            if len(exp) != n or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for space {space}")
            clean[exp] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(space: VarSpace) -> Poly:
        return Poly(space)

    @staticmethod
    def constant(space: VarSpace, c) -> Poly:
        return Poly(space, {(0,) * space.nvars: _as_fraction(c)})

    @staticmethod
    def one(space: VarSpace) -> Poly:
        return Poly.constant(space, 1)

    @staticmethod
    def variable(space: VarSpace, family: str, index: int = 1) -> Poly:
        exp = [0] * space.nvars
        exp[space.position(family, index)] = 1
        return Poly(space, {tuple(exp): Fraction(1)})

    @staticmethod
    def monomial(space: VarSpace, exp: Iterable[int], coeff=1) -> Poly:
        return Poly(space, {tuple(exp): _as_fraction(coeff)})

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: Poly) -> Poly:
        check_same_space(self, other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, Fraction(0)) + c
            if s == 0:
                out.pop(exp, None)
            else:
                out[exp] = s
        return Poly(self.space, out)

    def __neg__(self) -> Poly:
        return Poly(self.space, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        check_same_space(self, other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(exp, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(exp, None)
                else:
                    out[exp] = s
        return Poly(self.space, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> Poly:
        c = _as_fraction(c)
        if c == 0:
            return Poly.zero(self.space)
        return Poly(self.space, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative power")
        result = Poly.one(self.space)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        return isinstance(other, Poly) and self.space == other.space and self.terms == other.terms

    __hash__ = None

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, family: str) -> int:
        off = self.space.offset(family)
        count = self.space.family_count(family)
        return max((sum(e[off:off + count]) for e in self.terms), default=-1)

    def coefficient(self, exp: Iterable[int]) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: term_sort_key(kv[0]))

    def leading(self) -> tuple[tuple[int, ...], Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.sorted_terms()[0]

    def partial(self, family: str, index: int) -> Poly:
        """Exact partial derivative with respect to one variable."""
        return self.partial_pos(self.space.position(family, index))

    def partial_pos(self, pos: int) -> Poly:
        out: dict[tuple[int, ...], Fraction] = {}
        for exp, c in self.terms.items():
            e = exp[pos]
            if e == 0:
                continue
            new = list(exp)
            new[pos] = e - 1
            key = tuple(new)
            s = out.get(key, Fraction(0)) + c * e
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
        return Poly(self.space, out)

    def weight(self) -> Weight:
        """Pure quasi-homogeneous weight of all terms, or non-pure."""
        ws = self.space.weights()
        seen: int | None = None
        for exp in self.terms:
            w = sum(e * wt for e, wt in zip(exp, ws))
            if seen is None:
                seen = w
            elif seen != w:
                return NON_PURE
        return Weight.pure(0) if seen is None else Weight.pure(seen)

    # -- substitution and evaluation ----------------------------------------

    def evaluate(self, values: Mapping[str, Iterable]):
        """Evaluate at a point given as {family: sequence of values}.

        Exact when all values are int/Fraction; floats or complexes
        propagate through ordinary numeric promotion.
        """
        point = []
        for fam, count in self.space.families:
            vals = list(values[fam])
            if len(vals) != count:
                raise ValueError(f"family {fam!r} expects {count} values")
            point.extend(vals)
        acc = None
        for exp, c in self.terms.items():
            term = c
            for v, e in zip(point, exp):
                if e:
                    term = term * v ** e
            acc = term if acc is None else acc + term
        return Fraction(0) if acc is None else acc

    def compose(self, target: VarSpace, images: Mapping[tuple[str, int], Poly]) -> Poly:
        """Substitute every variable by its image polynomial over ``target``.

        Variables that occur with nonzero exponent must all have images.
        """
        positions = {}
        for (fam, idx), img in images.items():
            if img.space != target:
                raise ValueError("image polynomials must live in the target space")
            positions[self.space.position(fam, idx)] = img
        power_cache: dict[tuple[int, int], Poly] = {}

        def img_pow(pos: int, e: int) -> Poly:
            key = (pos, e)
            if key not in power_cache:
                power_cache[key] = positions[pos] ** e
            return power_cache[key]

        out = Poly.zero(target)
        for exp, c in self.terms.items():
            piece = Poly.constant(target, c)
            for pos, e in enumerate(exp):
                if e:
                    if pos not in positions:
                        name = self.space.var_names()[pos]
                        raise KeyError(f"no image supplied for {name}")
                    piece = piece * img_pow(pos, e)
            out = out + piece
        return out

    def swap(self, family: str, i: int, j: int) -> Poly:
        """Apply the transposition of variables i and j inside a family."""
        a = self.space.position(family, i)
        b = self.space.position(family, j)
        out: dict[tuple[int, ...], Fraction] = {}
        for exp, c in self.terms.items():
            new = list(exp)
            new[a], new[b] = new[b], new[a]
            out[tuple(new)] = c
        return Poly(self.space, out)

    def collect(self, family: str) -> dict[tuple[int, ...], Poly]:
        """Group terms by their exponents in one family.

        Returns {family-exponent: coefficient polynomial over the space
        with that family removed}.
        """
        off = self.space.offset(family)
        count = self.space.family_count(family)
        rest_space = self.space.drop(family)
        grouped: dict[tuple[int, ...], dict[tuple[int, ...], Fraction]] = {}
        for exp, c in self.terms.items():
            fam_exp = exp[off:off + count]
            rest_exp = exp[:off] + exp[off + count:]
            grouped.setdefault(fam_exp, {})[rest_exp] = c
        return {fe: Poly(rest_space, ts) for fe, ts in grouped.items()}

    def embed(self, space: VarSpace, family: str, fam_exp: tuple[int, ...]) -> Poly:
        """Inverse of collect: re-insert a family exponent block."""
        off = space.offset(family)
        count = space.family_count(family)
        if len(fam_exp) != count:
            raise ValueError("family exponent length mismatch")
        out = {}
        for exp, c in self.terms.items():
            out[exp[:off] + tuple(fam_exp) + exp[off:]] = c
        return Poly(space, out)

    # -- display -------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.space.var_names()
        pieces = []
        for exp, c in self.sorted_terms():
            factors = [f"{n}^{e}" if e > 1 else n for n, e in zip(names, exp) if e]
            mono = "*".join(factors)
            if not mono:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append(f"-{mono}")
            else:
                pieces.append(f"{c}*{mono}")
        text = " + ".join(pieces)
        return text.replace("+ -", "- ")

    def __repr__(self):
        return f"Poly[{self.space}]({self})"


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    """Dispatch add/sub/mul by name (exactness is structural)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def poly_partial(p: Poly, var: tuple[str, int]) -> Poly:
    family, index = var
    return p.partial(family, index)
