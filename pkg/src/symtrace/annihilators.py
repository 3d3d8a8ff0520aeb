"""The explicit second-order annihilator system of the trace functions.

Generators over sigma-space:

    A(p,q,i) = d_p d_q - d_{p+i} d_{q-i}          p, q, p+i, q-i in [1,k]
    T(m)     = d_1 d_{m-1} + (sum_h s_h d_h) d_m + d_m     m in [2,k]

with companions: the integral-formula forms T0(mu), the Euler operator
U0 = sum h s_h d_h, the lowering derivation nabla, and the variants
T(m) +/- d_m annihilating the derived and primitive families.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .poly import Poly
from .spaces import sigma_space
from .symfun import family as newton_family
from .weyl import WeylOp


def _partial(k: int, h: int) -> WeylOp:
    return WeylOp.partial(sigma_space(k), h)


def _sigma(k: int, h: int) -> Poly:
    return Poly.variable(sigma_space(k), "sigma", h)


def op_A(k: int, p: int, q: int, i: int) -> WeylOp:
    """d_p d_q - d_{p+i} d_{q-i}; zero when the two pairs coincide."""
    for name, idx in (("p", p), ("q", q), ("p+i", p + i), ("q-i", q - i)):
        if not 1 <= idx <= k:
            raise ValueError(f"index {name}={idx} out of range [1,{k}]")
    return _partial(k, p) * _partial(k, q) - _partial(k, p + i) * _partial(k, q - i)


def op_T(k: int, m: int) -> WeylOp:
    """d_1 d_{m-1} + (sum_h s_h d_h) d_m + d_m."""
    if not 2 <= m <= k:
        raise ValueError(f"need 2 <= m <= k, got m={m}")
    euler_like = euler_field(k)
    return _partial(k, 1) * _partial(k, m - 1) + euler_like * _partial(k, m) + _partial(k, m)


def op_T0(k: int, mu: int) -> WeylOp:
    """sum_{h=0}^{k-1} s_h d_{k-mu-1} d_{h+1} + s_k d_{k-mu} d_k + d_{k-mu}, s_0 = 1."""
    if not 0 <= mu <= k - 2:
        raise ValueError(f"need 0 <= mu <= k-2, got mu={mu}")
    space = sigma_space(k)
    acc = WeylOp.zero(space)
    for h in range(k):
        coeff = Poly.one(space) if h == 0 else _sigma(k, h)
        acc = acc + (_partial(k, k - mu - 1) * _partial(k, h + 1)).left_mul_poly(coeff)
    acc = acc + (_partial(k, k - mu) * _partial(k, k)).left_mul_poly(_sigma(k, k))
    return acc + _partial(k, k - mu)


def euler_field(k: int) -> WeylOp:
    """sum_h s_h d_h (the unweighted Euler-type field inside T(m))."""
    space = sigma_space(k)
    acc = WeylOp.zero(space)
    for h in range(1, k + 1):
        acc = acc + _partial(k, h).left_mul_poly(_sigma(k, h))
    return acc


def op_U0(k: int) -> WeylOp:
    """The weight operator U0 = sum_h h s_h d_h."""
    space = sigma_space(k)
    acc = WeylOp.zero(space)
    for h in range(1, k + 1):
        acc = acc + _partial(k, h).left_mul_poly(_sigma(k, h).scale(h))
    return acc


def op_nabla(k: int) -> WeylOp:
    """The lowering derivation sum_{h=0}^{k-1} (k-h) s_h d_{h+1}, s_0 = 1."""
    space = sigma_space(k)
    acc = WeylOp.zero(space)
    for h in range(k):
        coeff = Poly.constant(space, k - h) if h == 0 else _sigma(k, h).scale(k - h)
        acc = acc + _partial(k, h + 1).left_mul_poly(coeff)
    return acc


def op_variants(k: int, m: int, which: str) -> WeylOp:
    """T(m) + d_m ("forms") or T(m) - d_m ("primitive")."""
    if which == "forms":
        return op_T(k, m) + _partial(k, m)
    if which == "primitive":
        return op_T(k, m) - _partial(k, m)
    raise ValueError(f"unknown variant {which!r}")


@dataclass(frozen=True)
class GeneratorSet:
    """Named generators of a left ideal over sigma-space."""

    k: int
    entries: tuple[tuple[str, WeylOp], ...]
    label: str = "system"

    def __iter__(self):
        return iter(self.entries)

    def ids(self) -> list[str]:
        return [gid for gid, _ in self.entries]

    def get(self, gid: str) -> WeylOp:
        for name, op in self.entries:
            if name == gid:
                return op
        raise KeyError(f"unknown generator {gid!r}")


def _a_pairs(k: int):
    for p in range(1, k):
        for q in range(2, k + 1):
            if p != q - 1:  # those give the zero operator
                yield p, q


def generator_system(k: int, variant: str = "trace") -> GeneratorSet:
    """The system for a family: "trace" (N_m), "forms" (DN_m), "primitive" (PN_m).

    All three share the A(p,q,1); they differ in the order-one tail of
    the T-type generators.
    """
    if k < 2:
        raise ValueError("the system needs k >= 2")
    entries: list[tuple[str, WeylOp]] = []
    for p, q in _a_pairs(k):
        entries.append((f"A({p},{q},1)", op_A(k, p, q, 1)))
    for m in range(2, k + 1):
        if variant == "trace":
            entries.append((f"T({m})", op_T(k, m)))
        elif variant == "forms":
            entries.append((f"T~({m})", op_variants(k, m, "forms")))
        elif variant == "primitive":
            entries.append((f"T({m})-d{m}", op_variants(k, m, "primitive")))
        else:
            raise ValueError(f"unknown variant {variant!r}")
    return GeneratorSet(k, tuple(entries), label=variant)


_FAMILY_START = {"newton": 0, "dnewton": 0, "pnewton": 1, "sigma": 1}


def family_member(k: int, name: str, m: int) -> Poly:
    fam = newton_family(k)
    if name == "newton":
        return fam.newton(m)
    if name == "dnewton":
        return fam.derived(m)
    if name == "pnewton":
        return fam.primitive(m)
    if name == "sigma":
        return Poly.variable(sigma_space(k), "sigma", m)
    raise ValueError(f"unknown family {name!r}")


@dataclass
class AnnihilationReport:
    """Exact images of a polynomial family under a generator set."""

    k: int
    family: str
    max_m: int
    failures: list[tuple[str, int, Poly]] = field(default_factory=list)
    checked: int = 0

    @property
    def all_zero(self) -> bool:
        return not self.failures

    def first_failure(self) -> tuple[str, int, Poly] | None:
        return self.failures[0] if self.failures else None


def annihilation_report(
    gens: GeneratorSet,
    family: str,
    max_m: int | None = None,
    polys: list[tuple[str, Poly]] | None = None,
) -> AnnihilationReport:
    """Apply every generator to every family member, recording nonzero images.

    family "custom" takes explicit (label, poly) pairs; the named
    families run m from their natural start up to max_m (default 2k+6;
    "sigma" stops at k).
    """
    k = gens.k
    if family == "custom":
        if polys is None:
            raise ValueError("custom family needs explicit polynomials")
        members = list(polys)
        max_m = len(members)
    else:
        if max_m is None:
            max_m = 2 * k + 6
        start = _FAMILY_START[family]
        stop = min(max_m, k) if family == "sigma" else max_m
        members = [(f"{family}[{m}]", family_member(k, family, m)) for m in range(start, stop + 1)]
    report = AnnihilationReport(k=k, family=family, max_m=max_m)
    for gid, op in gens:
        for label_m, poly in members:
            image = op.apply(poly)
            report.checked += 1
            if not image.is_zero():
                m = int(label_m.rsplit("[", 1)[1][:-1]) if "[" in label_m else -1
                report.failures.append((gid, m, image))
    return report
