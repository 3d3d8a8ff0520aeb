"""Symmetric-function families and reduction to elementary coordinates.

Everything here is exact.  The families (power sums N_m, derived family
DN_m, primitive family PN_m) are generated by their defining recurrences
and cached per degree k; reduction of a symmetric x-polynomial to
sigma-coordinates uses the classical leading-term descent.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from math import factorial

from .poly import Poly
from .spaces import sigma_space, x_space


class NotSymmetricError(ValueError):
    """Input fails invariance under a variable transposition."""

    def __init__(self, family: str, i: int, j: int):
        self.transposition = (i, j)
        super().__init__(f"not symmetric: fails under the transposition ({family}{i} {family}{j})")


# caches are per-process and written atomically; duplicated computation
# under concurrency is harmless because every entry is deterministic
_e_cache: dict[tuple[int, int], Poly] = {}
_e_product_cache: dict[tuple[int, tuple[int, ...]], Poly] = {}
_disc_cache: dict[int, Poly] = {}
_families: dict[int, "NewtonFamily"] = {}


def elementary_symmetric(k: int, h: int) -> Poly:
    """e_h(x_1..x_k); e_0 = 1."""
    if not 0 <= h <= k:
        raise ValueError(f"need 0 <= h <= k, got h={h}, k={k}")
    key = (k, h)
    if key not in _e_cache:
        space = x_space(k)
        terms = {}
        for subset in combinations(range(k), h):
            exp = [0] * k
            for i in subset:
                exp[i] = 1
            terms[tuple(exp)] = Fraction(1)
        _e_cache[key] = Poly(space, terms)
    return _e_cache[key]


def assert_symmetric(p: Poly, k: int) -> None:
    for i in range(1, k):
        if p.swap("x", i, i + 1) != p:
            raise NotSymmetricError("x", i, i + 1)


def is_symmetric(p: Poly, k: int) -> bool:
    try:
        assert_symmetric(p, k)
        return True
    except NotSymmetricError:
        return False


def _e_power_product(k: int, mu: tuple[int, ...]) -> Poly:
    """prod_h e_h(x)^mu_h, cached."""
    key = (k, mu)
    if key not in _e_product_cache:
        out = Poly.one(x_space(k))
        for h, e in enumerate(mu, start=1):
            if e:
                out = out * elementary_symmetric(k, h) ** e
        _e_product_cache[key] = out
    return _e_product_cache[key]


def reduce_to_sigma(p: Poly, k: int) -> Poly:
    """Rewrite a symmetric x-polynomial in the coordinates s_1..s_k.

    Leading-term descent: the graded-lex leading exponent of a symmetric
    polynomial is non-increasing, so subtracting c * prod e_h^(lam_h -
    lam_{h+1}) cancels it, and the remainder is strictly smaller.  The
    output composed with e(x) reproduces the input exactly.
    """
    if p.space != x_space(k):
        raise ValueError(f"expected a polynomial over {x_space(k)}, got {p.space}")
    assert_symmetric(p, k)
    out: dict[tuple[int, ...], Fraction] = {}
    work = p
    while not work.is_zero():
        lam, c = work.leading()
        mu = tuple(lam[h] - (lam[h + 1] if h + 1 < k else 0) for h in range(k))
        if any(e < 0 for e in mu):  # cannot happen for symmetric input
            raise AssertionError(f"non-sorted leading exponent {lam} on symmetric input")
        work = work - _e_power_product(k, mu).scale(c)
        out[mu] = out.get(mu, Fraction(0)) + c
    return Poly(sigma_space(k), out)


def sigma_to_x(p: Poly, k: int) -> Poly:
    """Substitute s_h -> e_h(x): the exact inverse direction of reduce_to_sigma."""
    if p.space != sigma_space(k):
        raise ValueError(f"expected a polynomial over {sigma_space(k)}, got {p.space}")
    images = {("sigma", h): elementary_symmetric(k, h) for h in range(1, k + 1)}
    return p.compose(x_space(k), images)


class NewtonFamily:
    """Cached generator of the N_m, DN_m, PN_m families for one k."""

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("k must be positive")
        self.k = k
        self.space = sigma_space(k)
        self._newton: dict[int, Poly] = {0: Poly.constant(self.space, k)}
        self._derived: dict[int, Poly] = {0: Poly.one(self.space)}
        for m in range(-k + 1, 0):
            self._derived[m] = Poly.zero(self.space)
        self._primitive: dict[int, Poly] = {}

    def _sigma(self, h: int) -> Poly:
        return Poly.variable(self.space, "sigma", h)

    def newton(self, m: int) -> Poly:
        """Power sum N_m in sigma-coordinates, by the Newton identities."""
        if m < 0:
            raise ValueError("newton index must be >= 0")
        k = self.k
        if m not in self._newton:
            acc = Poly.zero(self.space)
            for h in range(1, min(m - 1, k) + 1):
                term = self._sigma(h) * self.newton(m - h)
                acc = acc + (term if h % 2 == 1 else -term)
            if m <= k:
                acc = acc + self._sigma(m).scale(Fraction((-1) ** (m - 1) * m))
            self._newton[m] = acc
        return self._newton[m]

    def derived(self, m: int) -> Poly:
        """DN_m: seeds DN_0 = 1, DN_m = 0 on [-k+1, -1], then the signed recurrence."""
        if m < -self.k + 1:
            raise ValueError(f"derived newton index must be >= {-self.k + 1}")
        if m not in self._derived:
            acc = Poly.zero(self.space)
            for h in range(1, self.k + 1):
                term = self._sigma(h) * self.derived(m - h)
                acc = acc + (term if h % 2 == 1 else -term)
            self._derived[m] = acc
        return self._derived[m]

    def primitive(self, m: int) -> Poly:
        """PN_m: the antiderivative-style combination of N_{m-h}/(m-h)."""
        if m < 1:
            raise ValueError("primitive newton index must be >= 1")
        if m not in self._primitive:
            hmax = self.k if m >= self.k + 1 else m - 1
            acc = Poly.zero(self.space)
            for h in range(0, hmax + 1):
                sign = -1 if (h - 1) % 2 else 1
                piece = self.newton(m - h).scale(Fraction(sign, m - h))
                if h:
                    piece = self._sigma(h) * piece
                acc = acc + piece
            self._primitive[m] = acc
        return self._primitive[m]


def family(k: int) -> NewtonFamily:
    if k not in _families:
        _families[k] = NewtonFamily(k)
    return _families[k]


def newton(k: int, m: int) -> Poly:
    return family(k).newton(m)


def derived_newton(k: int, m: int) -> Poly:
    return family(k).derived(m)


def primitive_newton(k: int, m: int) -> Poly:
    return family(k).primitive(m)


def newton_varouchas(k: int, m: int) -> Poly:
    """Power sum N_m from the closed multinomial-style sum over weighted
    exponents: sum over alpha with sum_j j*alpha_j = m of
    (-1)^(m+|alpha|) m (|alpha|-1)!/alpha! sigma^alpha."""
    if m < 1:
        raise ValueError("index must be >= 1")
    space = sigma_space(k)
    terms: dict[tuple[int, ...], Fraction] = {}

    def fill(j: int, remaining: int, alpha: list[int]):
        if j > k:
            if remaining:
                return
            size = sum(alpha)
            denom = 1
            for a in alpha:
                denom *= factorial(a)
            c = Fraction((-1) ** (m + size) * m * factorial(size - 1), denom)
            terms[tuple(alpha)] = terms.get(tuple(alpha), Fraction(0)) + c
            return
        for a in range(remaining // j + 1):
            alpha[j - 1] = a
            fill(j + 1, remaining - j * a, alpha)
        alpha[j - 1] = 0

    fill(1, m, [0] * k)
    return Poly(space, terms)


def symmetrize(p: Poly, h: int, k: int) -> Poly:
    """Average of p(x_{i_1}..x_{i_h}) over injections of [1,h] into [1,k],
    with the (k-h)!/k! prefactor; the result is symmetric in x_1..x_k."""
    if not 1 <= h <= k:
        raise ValueError(f"need 1 <= h <= k, got h={h}, k={k}")
    if p.space != x_space(h):
        raise ValueError(f"expected a polynomial over {x_space(h)}")
    out: dict[tuple[int, ...], Fraction] = {}
    for image in permutations(range(k), h):
        for exp, c in p.terms.items():
            new = [0] * k
            for slot, e in enumerate(exp):
                new[image[slot]] = e
            key = tuple(new)
            s = out.get(key, Fraction(0)) + c
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
    scale = Fraction(factorial(k - h), factorial(k))
    return Poly(x_space(k), {e: c * scale for e, c in out.items()})


def _determinant(rows: list[list[Poly]], space) -> Poly:
    """Exact determinant by first-row expansion with a column-mask memo."""
    n = len(rows)
    memo: dict[tuple[int, int], Poly] = {}

    def rec(r: int, mask: int) -> Poly:
        if r == n:
            return Poly.one(space)
        key = (r, mask)
        if key in memo:
            return memo[key]
        acc = Poly.zero(space)
        sign = 1
        for c in range(n):
            if not mask & (1 << c):
                continue
            entry = rows[r][c]
            if not entry.is_zero():
                sub = rec(r + 1, mask & ~(1 << c))
                acc = acc + (entry * sub).scale(sign)
            sign = -sign
        memo[key] = acc
        return acc

    return rec(0, (1 << n) - 1)


def discriminant(k: int) -> Poly:
    """Discriminant of z^k + sum_h (-1)^h s_h z^(k-h), normalized so that
    evaluating at s = e(x) gives prod_{i<j} (x_i - x_j)^2 exactly.

    Computed as the Sylvester resultant of the polynomial and its
    derivative times (-1)^(k(k-1)/2); the polynomial is monic so no
    leading-coefficient division arises.
    """
    if k < 2:
        raise ValueError("discriminant needs k >= 2")
    if k not in _disc_cache:
        space = sigma_space(k)
        zero = Poly.zero(space)
        pc = [Poly.one(space)] + [
            Poly.variable(space, "sigma", h).scale((-1) ** h) for h in range(1, k + 1)
        ]
        dc = [pc[h].scale(k - h) for h in range(k)]
        n = 2 * k - 1
        rows = []
        for i in range(k - 1):
            rows.append([zero] * i + pc + [zero] * (n - i - k - 1))
        for j in range(k):
            rows.append([zero] * j + dc + [zero] * (n - j - k))
        det = _determinant(rows, space)
        sign = (-1) ** (k * (k - 1) // 2)
        _disc_cache[k] = det.scale(sign)
    return _disc_cache[k]


def omega_closedness(k: int, m: int) -> bool:
    """Exact cross-partial symmetry of the coefficient family
    (-1)^(h-1) N_{m-h}/(m-h), h in [1,k], for m >= k+1."""
    if m < k + 1:
        raise ValueError("closedness is stated for m >= k+1")
    fam = family(k)
    coeffs = {
        h: fam.newton(m - h).scale(Fraction((-1) ** (h - 1), m - h))
        for h in range(1, k + 1)
    }
    for p in range(1, k + 1):
        for q in range(p + 1, k + 1):
            if coeffs[q].partial("sigma", p) != coeffs[p].partial("sigma", q):
                return False
    return True
