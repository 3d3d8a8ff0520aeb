"""Floating-point cross-validation of the exact layer.

Roots of the defining polynomial via Aberth-Ehrlich simultaneous
iteration, the two contour formulas for traces (residue form and
integrated-by-parts log form), the contour form of the derived family,
and finite-difference verification that the annihilators kill analytic
trace functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .poly import Poly
from .symfun import discriminant


class RootConvergenceError(RuntimeError):
    def __init__(self, best_residual: float):
        self.best_residual = best_residual
        super().__init__(f"root iteration did not converge; best residual {best_residual:.3e}")


class UnsafeStencilError(ValueError):
    """Finite-difference stencil too close to the discriminant locus."""


def _coefficients(sigma: Sequence[complex]) -> np.ndarray:
    """Monic coefficient vector [1, -s_1, +s_2, ...] of z^k + sum (-1)^h s_h z^(k-h)."""
    k = len(sigma)
    coeffs = np.empty(k + 1, dtype=complex)
    coeffs[0] = 1.0
    for h, sh in enumerate(sigma, start=1):
        coeffs[h] = (-1) ** h * complex(sh)
    return coeffs


def char_poly(sigma: Sequence[complex], z):
    return np.polyval(_coefficients(sigma), z)


def char_poly_deriv(sigma: Sequence[complex], z):
    return np.polyval(np.polyder(_coefficients(sigma)), z)


def poly_roots(sigma: Sequence[complex], max_iter: int = 600, residual_factor: float = 1e-10) -> np.ndarray:
    """All k roots (with multiplicity) by Aberth-Ehrlich iteration.

    Converges to residuals |P(x_j)| <= residual_factor * max(1,|x_j|)^k;
    multiple roots converge linearly but still pass the residual target.
    """
    k = len(sigma)
    if k < 1:
        raise ValueError("need k >= 1")
    coeffs = _coefficients(sigma)
    if k == 1:
        return np.array([complex(sigma[0])])
    if all(abs(c) == 0 for c in coeffs[1:]):
        return np.zeros(k, dtype=complex)
    dcoeffs = np.polyder(coeffs)
    radius = 1.0 + max(abs(c) for c in coeffs[1:])
    angles = 2.0 * np.pi * (np.arange(k) + 0.25) / k
    z = 0.7 * radius * np.exp(1j * angles) * (1.0 + 0.05j)

    def residuals(zs):
        return np.abs(np.polyval(coeffs, zs)) / np.maximum(1.0, np.abs(zs)) ** k

    best = float(np.max(residuals(z)))
    for _ in range(max_iter):
        p = np.polyval(coeffs, z)
        dp = np.polyval(dcoeffs, z)
        dp = np.where(np.abs(dp) < 1e-300, 1e-300, dp)
        w = p / dp
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        s = np.sum(1.0 / diff, axis=1)
        corr = w / (1.0 - w * s)
        z = z - corr
        res = residuals(z)
        best = min(best, float(np.max(res)))
        if np.all(res <= residual_factor):
            return z
    raise RootConvergenceError(best)


@dataclass(frozen=True)
class QuadratureSpec:
    """Contour radius and node count for circle quadrature.

    The radius must dominate the root bound 2*max(1, sum |s_h|^(1/h)) so
    the normalized polynomial stays within distance < 1 of 1 on the
    contour and the principal log branch is safe.
    """

    R: float
    n: int = 256

    def __post_init__(self):
        if self.R <= 0:
            raise ValueError("radius must be positive")
        if self.n < 4 or self.n & (self.n - 1):
            raise ValueError("node count must be a power of two, at least 4")

    @staticmethod
    def radius_bound(sigma: Sequence[complex]) -> float:
        return 2.0 * max(1.0, sum(abs(complex(s)) ** (1.0 / h) for h, s in enumerate(sigma, start=1)))

    @staticmethod
    def for_sigma(sigma: Sequence[complex], n: int = 256) -> QuadratureSpec:
        return QuadratureSpec(R=QuadratureSpec.radius_bound(sigma), n=n)

    def validate(self, sigma: Sequence[complex]) -> None:
        bound = QuadratureSpec.radius_bound(sigma)
        if self.R < bound * (1.0 - 1e-12):
            raise ValueError(
                f"radius {self.R:.6g} below the safe bound {bound:.6g}; "
                "the log branch would be ill-defined"
            )


@dataclass(frozen=True)
class AnalyticFunction:
    """An entire function together with its derivative."""

    name: str
    f: Callable
    df: Callable


EXP = AnalyticFunction("exp", np.exp, np.exp)
SIN = AnalyticFunction("sin", np.sin, np.cos)


def power_function(m: int) -> AnalyticFunction:
    if m < 0:
        raise ValueError("power must be >= 0")
    return AnalyticFunction(
        f"pow:{m}",
        lambda z: np.asarray(z) ** m,
        lambda z: m * np.asarray(z) ** (m - 1) if m else np.zeros_like(np.asarray(z)),
    )


@dataclass(frozen=True)
class TraceValue:
    value: complex          # integrated-by-parts log form
    residue_form: complex   # f P'/P form
    difference: float       # |value - residue_form|, a quadrature diagnostic


def _nodes(spec: QuadratureSpec) -> np.ndarray:
    return spec.R * np.exp(2j * np.pi * np.arange(spec.n) / spec.n)


def trace_contour(f: AnalyticFunction, sigma: Sequence[complex], spec: QuadratureSpec | None = None) -> TraceValue:
    """Both contour forms of the trace sum_j f(x_j) over the roots.

    Residue form averages f(z) P'(z)/P(z) z over the circle; the log
    form averages -f'(z) log(P(z)/z^k) z and adds k f(0).  Both are
    spectrally accurate for analytic f; their difference is returned as
    a diagnostic.
    """
    k = len(sigma)
    spec = QuadratureSpec.for_sigma(sigma) if spec is None else spec
    spec.validate(sigma)
    z = _nodes(spec)
    p = char_poly(sigma, z)
    dp = char_poly_deriv(sigma, z)
    residue_form = np.mean(f.f(z) * dp / p * z)
    log_form = -np.mean(f.df(z) * np.log(p / z ** k) * z) + k * complex(f.f(0.0))
    return TraceValue(
        value=complex(log_form),
        residue_form=complex(residue_form),
        difference=float(abs(log_form - residue_form)),
    )


def dn_contour(m: int, sigma: Sequence[complex], spec: QuadratureSpec | None = None) -> complex:
    """Contour value of the derived family: mean of z^(m+k-1)/P(z) * z."""
    k = len(sigma)
    if m < -k + 1:
        raise ValueError(f"need m >= {-k + 1}")
    spec = QuadratureSpec.for_sigma(sigma) if spec is None else spec
    spec.validate(sigma)
    z = _nodes(spec)
    return complex(np.mean(z ** (m + k) / char_poly(sigma, z)))


@dataclass(frozen=True)
class FDResult:
    residual: float
    convergence_order: float
    scale: float


def _stencil_points(op, sigma0: np.ndarray, h: float) -> list[np.ndarray]:
    pts = [sigma0]
    k = len(sigma0)
    for dexp in op.terms:
        active = [i for i, e in enumerate(dexp) if e]
        if not active:
            continue
        if sum(dexp) == 1:
            (i,) = active
            for sign in (+1, -1):
                q = sigma0.copy()
                q[i] += sign * h
                pts.append(q)
        elif len(active) == 1:
            (i,) = active
            for sign in (+1, -1):
                q = sigma0.copy()
                q[i] += sign * h
                pts.append(q)
        else:
            i, j = active
            for si in (+1, -1):
                for sj in (+1, -1):
                    q = sigma0.copy()
                    q[i] += si * h
                    q[j] += sj * h
                    pts.append(q)
    return pts


def _apply_fd(op, F: Callable, sigma0: np.ndarray, h: float) -> complex:
    """One central-difference evaluation of op[F] at sigma0 with step h."""
    total = 0.0 + 0.0j
    cache: dict[tuple, complex] = {}

    def feval(q: np.ndarray) -> complex:
        key = tuple(np.round(q, 12))
        if key not in cache:
            cache[key] = complex(F(q))
        return cache[key]

    for dexp, coeff in op.terms.items():
        a = complex(coeff.evaluate({"sigma": list(sigma0)}))
        if a == 0:
            continue
        order = sum(dexp)
        active = [i for i, e in enumerate(dexp) if e]
        if order == 0:
            d = feval(sigma0)
        elif order == 1:
            (i,) = active
            up, dn = sigma0.copy(), sigma0.copy()
            up[i] += h
            dn[i] -= h
            d = (feval(up) - feval(dn)) / (2 * h)
        elif order == 2 and len(active) == 1:
            (i,) = active
            up, dn = sigma0.copy(), sigma0.copy()
            up[i] += h
            dn[i] -= h
            d = (feval(up) - 2 * feval(sigma0) + feval(dn)) / (h * h)
        elif order == 2:
            i, j = active
            vals = {}
            for si in (+1, -1):
                for sj in (+1, -1):
                    q = sigma0.copy()
                    q[i] += si * h
                    q[j] += sj * h
                    vals[(si, sj)] = feval(q)
            d = (vals[(1, 1)] - vals[(1, -1)] - vals[(-1, 1)] + vals[(-1, -1)]) / (4 * h * h)
        else:
            raise ValueError("finite differences support order <= 2 operators only")
        total += a * d
    return total


def fd_annihilation_check(op, F: Callable, sigma0: Sequence[float], h_step: float = 0.08,
                          safety: float = 1e-6) -> FDResult:
    """Numerically apply a (order <= 2) operator to a function of sigma.

    Uses second-order central stencils at steps h, h/2, h/4 and two
    Richardson extrapolations; returns the extrapolated |op[F]| together
    with the observed convergence order and the scale max(1, |F(s0)|).
    Rejects stencils that approach the discriminant locus.
    """
    if op.order() > 2:
        raise ValueError("operator order must be <= 2")
    sigma0 = np.asarray(sigma0, dtype=float)
    k = len(sigma0)
    disc = discriminant(k)
    for pt in _stencil_points(op, sigma0, h_step):
        if abs(complex(disc.evaluate({"sigma": list(pt)}))) < safety:
            raise UnsafeStencilError(f"stencil point {pt} too close to the discriminant locus")
    d1 = _apply_fd(op, F, sigma0, h_step)
    d2 = _apply_fd(op, F, sigma0, h_step / 2)
    d4 = _apply_fd(op, F, sigma0, h_step / 4)
    r1 = (4 * d2 - d1) / 3
    r2 = (4 * d4 - d2) / 3
    extrapolated = (16 * r2 - r1) / 15
    num = abs(d1 - d2)
    den = abs(d2 - d4)
    order = float(np.log2(num / den)) if num > 0 and den > 0 else float("inf")
    scale = max(1.0, abs(complex(F(sigma0))))
    return FDResult(residual=float(abs(extrapolated)), convergence_order=order, scale=scale)


def trace_function_handle(f: AnalyticFunction, n: int = 256) -> Callable:
    """A numeric sigma -> trace value closure built on the log-form contour."""

    def F(sigma):
        return trace_contour(f, list(sigma), QuadratureSpec.for_sigma(list(sigma), n=n)).value

    return F


def evaluate_poly_numeric(p: Poly, sigma: Sequence[complex]) -> complex:
    """Float evaluation of a sigma-polynomial (exact coefficients cast late)."""
    total = 0.0 + 0.0j
    off = p.space.offset("sigma")
    count = p.space.family_count("sigma")
    for exp, c in p.terms.items():
        term = complex(c)
        for v, e in zip(sigma, exp[off:off + count]):
            if e:
                term *= complex(v) ** e
        total += term
    return total
