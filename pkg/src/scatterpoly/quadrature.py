"""Inner products against the boundary-singular weight, Gram matrices,
and the divergence of plain polynomial moments.

The measure r dr dtheta / (1 - r^2) is never sampled near its singularity:
every basis member carries a (1 - r^2) factor, so each integrand that
occurs here cancels the weight analytically before discretization.  After
the substitution u = 2 r^2 - 1 (r dr = du / 4) the radial integrands are
polynomials, which Gauss-Legendre rules of modest order integrate exactly.

Monomials x^(2m) y^(2n), by contrast, carry no such factor; their weighted
integrals diverge logarithmically, which :func:`truncated_moment` makes
quantitative by integrating up to radius 1 - eps and watching the growth
as eps shrinks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .jacobi import gauss_legendre, jacobi_eval
from .poly_algebra import BivariatePoly, ComplexRational
from .scattering import PQIndex, jacobi_form

#: Default cutoff ladder for moment divergence runs: eps = 1e-2 .. 1e-7.
DEFAULT_EPS_LADDER = tuple(10.0**-k for k in range(2, 8))

#: Fixed order for the log-substituted radial moment integral; the
#: integrand (1 - e^v)^s is entire, so this is far past convergence.
_MOMENT_RADIAL_ORDER = 64


@dataclass(frozen=True)
class GramMatrix:
    """Pairwise inner products of basis members, in index order."""

    indices: tuple[PQIndex, ...]
    entries: np.ndarray

    def max_off_diagonal(self) -> float:
        off = self.entries - np.diag(np.diag(self.entries))
        return float(np.max(np.abs(off))) if len(self.indices) > 1 else 0.0


@dataclass(frozen=True)
class MomentEstimate:
    """Truncated weighted moments of x^(2m) y^(2n) down a cutoff ladder."""

    m: int
    n: int
    cutoffs: tuple[float, ...]
    values: tuple[float, ...]


def inner_product_basis(a: PQIndex, b: PQIndex, order: Optional[int] = None) -> complex:
    """<phi^a, phi^b> in the weighted space.

    Distinct angular frequencies integrate to zero over theta, so that
    case returns exactly 0 with no quadrature.  Otherwise the value is

        (pi/2) * c_a * c_b * integral du ((1-u)/2) ((1+u)/2)^m
                                     P_(nu_a)(u) P_(nu_b)(u)

    which a Gauss-Legendre rule of order (p_a+q_a+p_b+q_b)/2 + 2 (the
    default) integrates exactly; pass a larger ``order`` to confirm.
    """
    if a.angular_frequency != b.angular_frequency:
        return 0j
    fa, fb = jacobi_form(a), jacobi_form(b)
    m = fa.m
    if order is None:
        order = (a.p + a.q + b.p + b.q + 1) // 2 + 2
    rule = gauss_legendre(order)
    u = rule.nodes
    integrand = (
        ((1.0 - u) / 2.0)
        * ((1.0 + u) / 2.0) ** m
        * jacobi_eval(fa.params, u)
        * jacobi_eval(fb.params, u)
    )
    value = (math.pi / 2.0) * fa.coeff * fb.coeff * float(rule.weights @ integrand)
    return complex(value)


def gram(indices: Sequence[PQIndex]) -> GramMatrix:
    """Hermitian matrix of pairwise inner products.

    Only the upper triangle is computed; the rest is mirrored, so the
    result is Hermitian by construction.
    """
    if not indices:
        raise ValueError("index sequence must be nonempty")
    idx = tuple(indices)
    size = len(idx)
    entries = np.zeros((size, size), dtype=complex)
    for i in range(size):
        for j in range(i, size):
            value = inner_product_basis(idx[i], idx[j])
            entries[i, j] = value
            if i != j:
                entries[j, i] = value.conjugate()
    entries.flags.writeable = False
    return GramMatrix(indices=idx, entries=entries)


def inner_product_function(
    f: Callable[[float, float], complex],
    idx: PQIndex,
    radial_order: int,
    angular_points: int,
) -> complex:
    """<f, phi^(idx)> for a black-box f(r, theta).

    Angular direction: trapezoid rule on a uniform theta grid, which for
    periodic smooth integrands converges spectrally and is exact for the
    pure mode e^(-i n theta) once angular_points exceeds |n|.  Radial
    direction: Gauss-Legendre in u = 2 r^2 - 1 against the polynomial
    kernel phi / (1 - r^2), the weight having cancelled.
    """
    if radial_order < 1 or angular_points < 1:
        raise ValueError("quadrature orders must be >= 1")
    form = jacobi_form(idx)
    rule = gauss_legendre(radial_order)
    u = rule.nodes
    r = np.sqrt((1.0 + u) / 2.0)
    kernel = form.radial_kernel(r)
    theta = 2.0 * math.pi * np.arange(angular_points) / angular_points
    samples = np.array(
        [[f(ri, tj) for tj in theta] for ri in r], dtype=complex
    )
    phase = np.exp(-1j * form.angular_frequency * theta)
    angular = samples @ phase * (2.0 * math.pi / angular_points)
    return complex((rule.weights / 4.0 * kernel) @ angular)


def inner_product_poly_exact(
    f: BivariatePoly, g: BivariatePoly
) -> tuple[Fraction, Fraction]:
    """Exact weighted inner product of two polynomials, as a multiple of pi.

    Returns (re, im) with <f, g> = pi * (re + i im).  Requires f * conj(g)
    to be divisible by (1 - z*zbar), i.e. the pair must cancel the weight;
    otherwise the underlying division raises NotDivisibleError.  Uses the
    exact disk integral of z^a zbar^a, which is pi / (a + 1).
    """
    quotient = (f * g.conjugate()).divide_by_boundary_factor()
    total = ComplexRational()
    for (a, b), c in quotient.terms.items():
        if a == b:
            total = total + c * Fraction(1, a + 1)
    return total.re, total.im


def inner_product_poly(f: BivariatePoly, g: BivariatePoly) -> complex:
    """Weighted inner product of two polynomials, in double precision."""
    re, im = inner_product_poly_exact(f, g)
    return complex(math.pi * float(re), math.pi * float(im))


def _double_factorial(k: int) -> int:
    """k!! with the empty-product conventions (-1)!! = 0!! = 1."""
    if k < -1:
        raise ValueError("double factorial needs k >= -1")
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def _angular_moment(m: int, n: int) -> float:
    """integral over [0, 2 pi] of cos^(2m) sin^(2n), cross-checked.

    Closed form 2 pi (2m-1)!! (2n-1)!! / (2m+2n)!!; a uniform trapezoid
    sum, exact for trigonometric polynomials of this degree, must agree
    to near machine precision or something is badly wrong internally.
    """
    closed = (
        2.0
        * math.pi
        * _double_factorial(2 * m - 1)
        * _double_factorial(2 * n - 1)
        / _double_factorial(2 * m + 2 * n)
    )
    points = 4 * (m + n) + 16
    theta = 2.0 * math.pi * np.arange(points) / points
    trapezoid = (
        2.0 * math.pi * float(np.mean(np.cos(theta) ** (2 * m) * np.sin(theta) ** (2 * n)))
    )
    if abs(closed - trapezoid) > 1e-10 * max(1.0, abs(closed)):
        raise ArithmeticError(
            f"angular moment cross-check failed for (m, n) = ({m}, {n})"
        )
    return closed


def truncated_moment(m: int, n: int, eps: float) -> float:
    """Weighted integral of x^(2m) y^(2n) over the disk of radius 1 - eps.

    Splits into the angular constant times the radial integral
    integral_0^(1-eps) r^(2m+2n+1) / (1 - r^2) dr.  Substituting
    t = r^2 and then t = 1 - e^v turns the radial part into
    (1/2) integral_(ln delta)^0 (1 - e^v)^(m+n) dv with
    delta = 1 - (1-eps)^2, an entire integrand on a short interval,
    so a fixed high-order rule nails it for every eps in range.
    """
    if m < 0 or n < 0:
        raise ValueError("moment exponents must be nonnegative")
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    s = m + n
    delta = eps * (2.0 - eps)
    rule = gauss_legendre(_MOMENT_RADIAL_ORDER)
    radial = rule.integrate_on(
        lambda v: 0.5 * (1.0 - np.exp(v)) ** s, math.log(delta), 0.0
    )
    return _angular_moment(m, n) * radial


def moment_ladder(
    m: int, n: int, cutoffs: Sequence[float] = DEFAULT_EPS_LADDER
) -> MomentEstimate:
    """Truncated moments down a cutoff ladder, largest eps first."""
    eps_values = tuple(sorted(cutoffs, reverse=True))
    values = tuple(truncated_moment(m, n, eps) for eps in eps_values)
    return MomentEstimate(m=m, n=n, cutoffs=eps_values, values=values)


def moment_slope(estimate: MomentEstimate) -> float:
    """Least-squares slope of M(eps) against ln(1/eps).

    For (m, n) = (0, 0) the truncated moment is -pi ln(2 eps - eps^2),
    so the slope tends to pi; positive slope witnesses divergence for
    every exponent pair.
    """
    x = np.log(1.0 / np.asarray(estimate.cutoffs))
    y = np.asarray(estimate.values)
    return float(np.polyfit(x, y, 1)[0])
