"""Transport of symmetric differential operators to sigma-coordinates.

The central map takes an S_k-invariant operator P in the x-variables to
the unique operator Q of the same order in the sigma-variables with
Q[F] o s = P[F o s] for every polynomial F.  It is computed by a
triangular interpolation on monomial actions: the coefficient a_beta of
d^beta in Q satisfies

    a_beta * beta! = theta(P[s^beta]) - sum_{beta' < beta} a_beta' * d^beta'(s^beta)

where beta' runs over componentwise-smaller multi-indices and theta is
reduction of a symmetric polynomial to sigma-coordinates.  Processing
multi-indices by increasing total degree makes the system triangular;
uniqueness of an operator of order <= d from its action on monomials of
degree <= d pins the answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial

from .poly import Poly
from .spaces import VarSpace, sigma_aux_space, sigma_space, x_space
from .symfun import NotSymmetricError, elementary_symmetric, reduce_to_sigma, sigma_to_x
from .weyl import WeylOp


@dataclass(frozen=True)
class SymmetricOperator:
    """An operator in the x-variables, checked invariant under S_k."""

    op: WeylOp
    k: int

    def __post_init__(self):
        if self.op.space != x_space(self.k):
            raise ValueError(f"operator must live over {x_space(self.k)}")
        for i in range(1, self.k):
            if self.op.swap(i, i + 1) != self.op:
                raise NotSymmetricError("x", i, i + 1)

    def order(self) -> int:
        return self.op.order()


def theta(k: int, h: int) -> Poly:
    """Theta_h(z, s) = sum_{p=0}^{h-1} (-z)^(h-p-1) s_p over (sigma, t); t plays z."""
    if not 1 <= h <= k:
        raise ValueError(f"need 1 <= h <= k, got h={h}")
    space = sigma_aux_space(k)
    tpos = space.position("t", 1)
    terms = {}
    for p in range(h):
        exp = [0] * space.nvars
        exp[tpos] = h - p - 1
        if p:
            exp[space.position("sigma", p)] = 1
        sign = -1 if (h - p - 1) % 2 else 1
        terms[tuple(exp)] = Fraction(sign)
    return Poly(space, terms)


def jacobian_entry(k: int, h: int, j: int) -> Poly:
    """d s_h / d x_j = sum_{q=0}^{h-1} s_{h-q-1}(x) (-x_j)^q as an x-polynomial."""
    if not (1 <= h <= k and 1 <= j <= k):
        raise ValueError("indices out of range")
    space = x_space(k)
    xj = Poly.variable(space, "x", j)
    out = Poly.zero(space)
    for q in range(h):
        sign = -1 if q % 2 else 1
        out = out + (elementary_symmetric(k, h - q - 1) * xj ** q).scale(sign)
    return out


def elementary_symmetric_op(k: int, h: int) -> SymmetricOperator:
    """S_h = sum over index sets of size h of the mixed partial in those x's."""
    if not 1 <= h <= k:
        raise ValueError(f"need 1 <= h <= k, got h={h}")
    space = x_space(k)
    terms = {}
    for subset in combinations(range(k), h):
        dexp = [0] * k
        for i in subset:
            dexp[i] = 1
        terms[tuple(dexp)] = Poly.one(space)
    return SymmetricOperator(WeylOp(space, terms), k)


def u_operator(k: int, d: int) -> WeylOp:
    """U_d = sum_j x_j^d d/dx_j over the x-variables."""
    if d < 0:
        raise ValueError("derivation degree must be >= 0")
    space = x_space(k)
    terms = {}
    for j in range(k):
        dexp = [0] * k
        dexp[j] = 1
        exp = [0] * k
        exp[j] = d
        terms[tuple(dexp)] = Poly.monomial(space, exp)
    return WeylOp(space, terms)


def _multi_indices(k: int, max_total: int):
    """All exponent tuples of length k with total degree <= max_total,
    by increasing total degree (componentwise-compatible order)."""
    out = []

    def fill(pos: int, left: int, acc: list[int]):
        if pos == k:
            out.append(tuple(acc))
            return
        for e in range(left + 1):
            acc.append(e)
            fill(pos + 1, left - e, acc)
            acc.pop()

    for total in range(max_total + 1):
        start = len(out)
        fill(0, total, [])
        out[start:] = [b for b in out[start:] if sum(b) == total]
    return out


def _sigma_monomial_partial(space: VarSpace, beta_target, beta_partial) -> Poly:
    """d^beta_partial applied to the monomial s^beta_target."""
    exp = []
    coeff = 1
    for bt, bp in zip(beta_target, beta_partial):
        if bp > bt:
            return Poly.zero(space)
        coeff *= factorial(bt) // factorial(bt - bp)
        exp.append(bt - bp)
    return Poly.monomial(space, exp, coeff)


def xi_transport(p: SymmetricOperator) -> WeylOp:
    """Rewrite a symmetric x-operator as the sigma-coordinate operator
    acting identically on symmetric polynomials (see module docstring)."""
    k = p.k
    d = p.order()
    if d < 0:
        return WeylOp.zero(sigma_space(k))
    target = sigma_space(k)
    coeffs: dict[tuple[int, ...], Poly] = {}
    power_cache: dict[int, list[Poly]] = {}

    def e_pow(h: int, e: int) -> Poly:
        chain = power_cache.setdefault(h, [Poly.one(x_space(k))])
        while len(chain) <= e:
            chain.append(chain[-1] * elementary_symmetric(k, h))
        return chain[e]

    for beta in _multi_indices(k, d):
        s_beta = Poly.one(x_space(k))
        for h, e in enumerate(beta, start=1):
            if e:
                s_beta = s_beta * e_pow(h, e)
        rhs = reduce_to_sigma(p.op.apply(s_beta), k)
        for beta2, a2 in coeffs.items():
            if all(b2 <= b for b2, b in zip(beta2, beta)):
                rhs = rhs - a2 * _sigma_monomial_partial(target, beta, beta2)
        fact = 1
        for e in beta:
            fact *= factorial(e)
        coeffs[beta] = rhs.scale(Fraction(1, fact))
    return WeylOp(target, {b: a for b, a in coeffs.items() if not a.is_zero()})


def decompose_derivation(d: SymmetricOperator) -> list[tuple[int, Poly]]:
    """Write a symmetric derivation as sum_p b_p(s) U_p with p in [0, k-1].

    The coefficient of d/dx_1 is rearranged into the free-module basis
    1, x_1, .., x_1^(k-1) over Q[s_1..s_k]: its x_1-coefficients are
    symmetric in the remaining variables, get reduced to the elementary
    symmetric functions of those, which are rewritten through
    s_h(without x_1) = sum_q s_{h-q} (-x_1)^q, and powers x_1^k and
    above fall back through the monic relation of the defining
    polynomial.  The result is verified by exact reconstruction.
    """
    k = d.k
    op = d.op
    if op.is_zero():
        return []
    if op.order() != 1 or any(sum(b) == 0 for b in op.terms):
        raise ValueError("input must be a derivation: order 1 with no order-0 part")
    space = sigma_aux_space(k)  # t plays x_1
    tpos = space.position("t", 1)

    a1 = op.coefficient(tuple([1] + [0] * (k - 1)))
    acc = Poly.zero(space)
    if k == 1:
        for exp, c in a1.terms.items():
            acc = acc + Poly.monomial(space, _unit(space.nvars, tpos, exp[0]), c)
    else:
        buckets: dict[int, dict[tuple[int, ...], Fraction]] = {}
        for exp, c in a1.terms.items():
            buckets.setdefault(exp[0], {})[exp[1:]] = c
        images = {("sigma", h): _truncated_sigma(space, h) for h in range(1, k)}
        for x1_exp, rest_terms in sorted(buckets.items()):
            rest = Poly(x_space(k - 1), rest_terms)
            reduced = reduce_to_sigma(rest, k - 1)
            piece = reduced.compose(space, images)
            acc = acc + piece * Poly.monomial(space, _unit(space.nvars, tpos, x1_exp))
    acc = _reduce_aux_powers(acc, k)

    out: list[tuple[int, Poly]] = []
    for t_exp, b in acc.collect("t").items():
        if not b.is_zero():
            out.append((t_exp[0], b))
    out.sort(key=lambda pair: pair[0])

    rebuilt = WeylOp.zero(x_space(k))
    for p_low, b in out:
        rebuilt = rebuilt + u_operator(k, p_low).left_mul_poly(sigma_to_x(b, k))
    if rebuilt != op:
        raise AssertionError("derivation decomposition failed to reconstruct the input")
    return out


def _unit(n: int, pos: int, e: int) -> tuple[int, ...]:
    exp = [0] * n
    exp[pos] = e
    return tuple(exp)


def _truncated_sigma(space: VarSpace, h: int) -> Poly:
    """Elementary symmetric function of x_2..x_k in terms of (s, x_1):
    sum_{q=0}^{h} s_{h-q} (-x_1)^q, with s_0 = 1; t plays x_1."""
    tpos = space.position("t", 1)
    out = Poly.zero(space)
    for q in range(h + 1):
        exp = [0] * space.nvars
        exp[tpos] = q
        if h - q:
            exp[space.position("sigma", h - q)] = 1
        sign = -1 if q % 2 else 1
        out = out + Poly.monomial(space, exp, sign)
    return out


def _reduce_aux_powers(p: Poly, k: int) -> Poly:
    """Rewrite t^k as sum_h (-1)^(h-1) s_h t^(k-h) until the t-degree is < k."""
    space = p.space
    tpos = space.position("t", 1)
    step = Poly.zero(space)
    for h in range(1, k + 1):
        exp = [0] * space.nvars
        exp[tpos] = k - h
        exp[space.position("sigma", h)] = 1
        sign = -1 if (h - 1) % 2 else 1
        step = step + Poly.monomial(space, exp, sign)
    while p.degree_in("t") >= k:
        out = Poly.zero(space)
        for exp, c in p.terms.items():
            if exp[tpos] >= k:
                lowered = list(exp)
                lowered[tpos] -= k
                out = out + Poly.monomial(space, lowered, c) * step
            else:
                out = out + Poly.monomial(space, exp, c)
        p = out
    return p


def nabla_p_as_partial(k: int, p: int) -> WeylOp:
    """The sigma-coordinate form of the root-weighted derivation
    sum_j x_j^p / P'(x_j) d/dx_j: equal to (-1)^(k-p-1) d/ds_(k-p)."""
    if not 0 <= p <= k - 1:
        raise ValueError(f"need 0 <= p <= k-1, got p={p}")
    sign = -1 if (k - p - 1) % 2 else 1
    return WeylOp.partial(sigma_space(k), k - p).scale(sign)
