"""Symbol-level geometry of the annihilator system.

The symbols of the system generate the ideal of 2x2 minors of the
(k, 2) matrix with rows (eta_1, -l), (eta_2, eta_1), .., (eta_k,
eta_{k-1}) where l = sum_h s_h eta_h.  This module provides the minors,
the rewriting of any eta_i eta_j through them, a decision procedure for
vanishing on the variety cut out by the minors (via its rational
parametrization), the constructive decomposition of a vanishing
polynomial in the minors, and exact sampled points of the variety.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .poly import Poly
from .spaces import VarSpace, sigma_eta_space, sigma_space
from .weyl import WeylOp


class NotOnVarietyError(ValueError):
    """Polynomial does not vanish on the characteristic variety."""


MinorId = tuple[int, int]

_minor_cache: dict[int, "MinorSet"] = {}
_rewrite_cache: dict[tuple[int, int, int], tuple[dict[MinorId, Poly], Poly]] = {}


def _eta(k: int, h: int) -> Poly:
    return Poly.variable(sigma_eta_space(k), "eta", h)


def _l_sigma(k: int) -> Poly:
    """l(s, eta) = sum_h s_h eta_h."""
    space = sigma_eta_space(k)
    acc = Poly.zero(space)
    for h in range(1, k + 1):
        acc = acc + Poly.variable(space, "sigma", h) * Poly.variable(space, "eta", h)
    return acc


@dataclass(frozen=True)
class MinorSet:
    k: int
    minors: tuple[tuple[MinorId, Poly], ...]

    def get(self, i: int, j: int) -> Poly:
        for mid, p in self.minors:
            if mid == (i, j):
                return p
        raise KeyError(f"no minor {(i, j)}")

    def ids(self) -> list[MinorId]:
        return [mid for mid, _ in self.minors]


def minors(k: int) -> MinorSet:
    """All k(k-1)/2 minors m_(i,j) = eta_i eta_{j-1} - eta_{i-1} eta_j,
    with the row-1 convention that the eta_0 slot holds -l(s, eta)."""
    if k < 2:
        raise ValueError("minors need k >= 2")
    if k not in _minor_cache:
        out = []
        l = _l_sigma(k)
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                if i == 1:
                    m = _eta(k, 1) * _eta(k, j - 1) + l * _eta(k, j)
                else:
                    m = _eta(k, i) * _eta(k, j - 1) - _eta(k, i - 1) * _eta(k, j)
                out.append(((i, j), m))
        _minor_cache[k] = MinorSet(k, tuple(out))
    return _minor_cache[k]


def rewrite_eta_product(k: int, i: int, j: int) -> tuple[dict[MinorId, Poly], Poly]:
    """Write eta_i eta_j = sum_a u_a m_a + eta_k v with u_a in Q[s] and v
    of eta-degree <= 1, by descending induction on the smaller index:

        eta_i eta_j = m_(i,j+1) + eta_{i-1} eta_{j+1}        (2 <= i <= j < k)
        eta_1 eta_j = m_(1,j+1) - sum_p s_p eta_p eta_{j+1}   (j < k)
        eta_i eta_k = eta_k * eta_i                           (base)

    Returns (u as {minor-id: Poly over sigma}, v over (sigma, eta)).
    """
    if not (1 <= i <= k and 1 <= j <= k):
        raise ValueError("indices out of range")
    if i > j:
        i, j = j, i
    key = (k, i, j)
    if key in _rewrite_cache:
        return _rewrite_cache[key]
    se = sigma_eta_space(k)
    ss = sigma_space(k)
    if j == k:
        result: tuple[dict[MinorId, Poly], Poly] = ({}, _eta(k, i))
    elif i == 1:
        u: dict[MinorId, Poly] = {(1, j + 1): Poly.one(ss)}
        v = Poly.zero(se)
        for p in range(1, k + 1):
            up, vp = rewrite_eta_product(k, p, j + 1)
            sp_s = Poly.variable(ss, "sigma", p)
            sp_se = Poly.variable(se, "sigma", p)
            for mid, c in up.items():
                u[mid] = u.get(mid, Poly.zero(ss)) - sp_s * c
            v = v - sp_se * vp
        result = ({mid: c for mid, c in u.items() if not c.is_zero()}, v)
    else:
        up, vp = rewrite_eta_product(k, i - 1, j + 1)
        u = dict(up)
        u[(i, j + 1)] = u.get((i, j + 1), Poly.zero(ss)) + Poly.one(ss)
        result = (u, vp)
    _rewrite_cache[key] = result
    return result


def embed_sigma(p: Poly, k: int) -> Poly:
    """View a sigma-polynomial inside the (sigma, eta) space."""
    if p.space == sigma_eta_space(k):
        return p
    return p.embed(sigma_eta_space(k), "eta", (0,) * k)


def recombine(k: int, coeffs: dict[MinorId, Poly]) -> Poly:
    """sum_a c_a m_a with coefficients over sigma or (sigma, eta)."""
    ms = minors(k)
    acc = Poly.zero(sigma_eta_space(k))
    for mid, c in coeffs.items():
        acc = acc + embed_sigma(c, k) * ms.get(*mid)
    return acc


def _eta_homogeneous_parts(f: Poly, k: int) -> dict[int, Poly]:
    parts: dict[int, dict] = {}
    off = f.space.offset("eta")
    for exp, c in f.terms.items():
        d = sum(exp[off:off + k])
        parts.setdefault(d, {})[exp] = c
    return {d: Poly(f.space, ts) for d, ts in parts.items()}


def _chart_space(k: int) -> VarSpace:
    return VarSpace((("sigma", k - 1), ("t", 1))) if k >= 2 else VarSpace((("t", 1),))


def vanishes_on_Z(f: Poly, k: int) -> bool:
    """Decide identical vanishing on the variety of the minors.

    Each eta-homogeneous part is pulled back through the dense chart of
    the rational parametrization: eta_h -> t^(k-h) and s_k eliminated by
    the hypersurface relation s_k = -(t^k + sum_{h<k} s_h t^(k-h)).
    Homogeneity in eta makes the chart decisive for each part.
    """
    if f.space != sigma_eta_space(k):
        raise ValueError(f"expected a polynomial over {sigma_eta_space(k)}")
    target = _chart_space(k)
    t = Poly.variable(target, "t")
    sk_image = -(t ** k)
    for h in range(1, k):
        sk_image = sk_image - Poly.variable(target, "sigma", h) * t ** (k - h)
    images = {("sigma", k): sk_image}
    for h in range(1, k):
        images[("sigma", h)] = Poly.variable(target, "sigma", h)
    for h in range(1, k + 1):
        images[("eta", h)] = t ** (k - h)
    for part in _eta_homogeneous_parts(f, k).values():
        if not part.compose(target, images).is_zero():
            return False
    return True


def decompose_in_minors(f: Poly, k: int) -> dict[MinorId, Poly]:
    """Express an eta-homogeneous polynomial vanishing on the variety as
    an exact combination of the minors.

    Follows the constructive descent: split off the eta_k-free part,
    rewrite its eta_i eta_j factors through the minors, divide the rest
    by eta_k, and recurse on the lower-degree cofactor.  Degree <= 1
    cofactors that vanish on the variety are identically zero, which
    terminates the recursion.  The recombination is asserted exact.
    """
    if f.space != sigma_eta_space(k):
        raise ValueError(f"expected a polynomial over {sigma_eta_space(k)}")
    parts = _eta_homogeneous_parts(f, k)
    if len(parts) > 1:
        raise ValueError("input must be homogeneous in eta")
    d = f.degree_in("eta")
    if not f.is_zero() and d <= 1:
        raise NotOnVarietyError(
            "eta-degree <= 1 polynomials vanish on the variety only when zero"
        )
    if not vanishes_on_Z(f, k):
        raise NotOnVarietyError("polynomial does not vanish on the variety")
    coeffs = _descend(f, k)
    if recombine(k, coeffs) != f:
        raise AssertionError("minor decomposition failed to recombine")
    return coeffs


def _descend(f: Poly, k: int) -> dict[MinorId, Poly]:
    se = sigma_eta_space(k)
    if f.is_zero():
        return {}
    d = f.degree_in("eta")
    if d <= 1:
        # vanishing of the ambient input on the variety forces zero here
        raise NotOnVarietyError("descent reached a nonzero low-degree cofactor")
    eta_k_pos = se.position("eta", k)
    h_terms: dict[tuple[int, ...], Fraction] = {}
    g_terms: dict[tuple[int, ...], Fraction] = {}
    for exp, c in f.terms.items():
        if exp[eta_k_pos]:
            low = list(exp)
            low[eta_k_pos] -= 1
            g_terms[tuple(low)] = c
        else:
            h_terms[exp] = c
    g = Poly(se, g_terms)

    coeffs: dict[MinorId, Poly] = {}
    vsum = Poly.zero(se)
    eta_off = se.offset("eta")
    for exp, c in h_terms.items():
        first = next(h for h in range(k) if exp[eta_off + h])
        rest = list(exp)
        rest[eta_off + first] -= 1
        second = next(h for h in range(k) if rest[eta_off + h])
        rest[eta_off + second] -= 1
        w = Poly.monomial(se, rest, c)
        u, v = rewrite_eta_product(k, first + 1, second + 1)
        for mid, uc in u.items():
            add = embed_sigma(uc, k) * w
            coeffs[mid] = coeffs.get(mid, Poly.zero(se)) + add
        vsum = vsum + v * w

    tail = _descend(g + vsum, k)
    eta_k = _eta(k, k)
    for mid, c in tail.items():
        coeffs[mid] = coeffs.get(mid, Poly.zero(se)) + eta_k * c
    return {mid: c for mid, c in coeffs.items() if not c.is_zero()}


@dataclass(frozen=True)
class ZPoint:
    """An exact rational point of the variety with its parametrization."""

    sigma: tuple[Fraction, ...]
    eta: tuple[Fraction, ...]
    s: tuple[Fraction, ...]
    zeta0: Fraction
    zeta1: Fraction


def char_poly_value(sigma, z):
    """P(z) = z^k + sum_h (-1)^h s_h z^(k-h), evaluated exactly."""
    k = len(sigma)
    acc = z ** k
    for h, sh in enumerate(sigma, start=1):
        acc += (-1) ** h * sh * z ** (k - h)
    return acc


def sample_z_points(k: int, seed: int, n: int) -> list[ZPoint]:
    """Draw n exact points: integer t != 0 and s_1..s_{k-1} in [-10,10],
    s_k solved from the hypersurface relation, then sigma_h = (-1)^h s_h
    and eta_h = t^(k-h).  Every returned point kills all minors."""
    if n < 1:
        raise ValueError("need n >= 1")
    rng = random.Random(seed)
    ms = minors(k)
    out = []
    for _ in range(n):
        t = Fraction(0)
        while t == 0:
            t = Fraction(rng.randint(-10, 10))
        s = [Fraction(rng.randint(-10, 10)) for _ in range(k - 1)]
        # sum_{h=0}^{k} (-1)^h s_h t^(k-h) = 0 with s_0 = 1, solved for s_k
        partial = t ** k + sum((-1) ** h * s[h - 1] * t ** (k - h) for h in range(1, k))
        sk = Fraction((-1) ** (k + 1)) * partial
        s.append(sk)
        sigma = tuple(Fraction((-1) ** h) * s[h - 1] for h in range(1, k + 1))
        eta = tuple(t ** (k - h) for h in range(1, k + 1))
        point = ZPoint(sigma=sigma, eta=eta, s=tuple(s), zeta0=Fraction(1), zeta1=t)
        for mid, m in ms.minors:
            value = m.evaluate({"sigma": sigma, "eta": eta})
            if value != 0:
                raise AssertionError(f"sampled point misses minor {mid}")
        out.append(point)
    return out


def theta_contraction_check(k: int, sigma, a, z) -> bool:
    """Exact check of the closed form of sum_h Theta_h(z, s) eta_h along
    the ray eta_h = a^(h-1).

    For a*z != -1 the sum equals -(-a)^k/(1+a z) (P(z) - P(-1/a)); on
    a*z = -1 it equals z^(-k+1) P'(z).  (These are the computation-
    validated forms; the published statement carries a sign and an
    exponent typo, reported by the symbol suite as deviations.)
    """
    from .transport import theta

    a = Fraction(a)
    z = Fraction(z)
    if a == 0:
        raise ValueError("the ray parameter a must be nonzero")
    sigma = [Fraction(v) for v in sigma]
    if len(sigma) != k:
        raise ValueError("sigma must have k entries")
    lhs = Fraction(0)
    for h in range(1, k + 1):
        th = theta(k, h).evaluate({"sigma": sigma, "t": [z]})
        lhs += th * a ** (h - 1)
    if a * z != -1:
        pz = char_poly_value(sigma, z)
        pma = char_poly_value(sigma, Fraction(-1) / a)
        rhs = -((-a) ** k) / (1 + a * z) * (pz - pma)
    else:
        dpz = k * z ** (k - 1) + sum(
            (-1) ** h * sigma[h - 1] * (k - h) * z ** (k - h - 1) for h in range(1, k)
        )
        rhs = z ** (-k + 1) * dpz
    return lhs == rhs


def minor_matches_symbol(k: int) -> list[tuple[MinorId, str, int]]:
    """Identify each minor with the symbol of a generator: (minor, id, sign)."""
    from .annihilators import op_A, op_T

    out = []
    for mid, m in minors(k).minors:
        i, j = mid
        if i == 1:
            assert m == op_T(k, j).symbol()
            out.append((mid, f"T({j})", 1))
        else:
            assert m == -op_A(k, i - 1, j, 1).symbol()
            out.append((mid, f"A({i - 1},{j},1)", -1))
    return out


def lift_eta_to_partials(c: Poly, k: int) -> WeylOp:
    """Lift a (sigma, eta)-polynomial to the operator with the sigma
    coefficients on the left and eta-exponents as partial indices."""
    se = sigma_eta_space(k)
    if c.space != se:
        raise ValueError("expected a (sigma, eta) polynomial")
    ss = sigma_space(k)
    terms: dict[tuple[int, ...], Poly] = {}
    for exp, coeff in c.terms.items():
        sig_exp, eta_exp = exp[:k], exp[k:]
        mono = Poly.monomial(ss, sig_exp, coeff)
        cur = terms.get(eta_exp)
        terms[eta_exp] = mono if cur is None else cur + mono
    return WeylOp(ss, terms)
