"""Expansion in the disk eigenbasis, synthesis back to grids, and the
diagonal solve it enables.

A function on the disk is projected onto every basis member with
p + q <= truncation; because the basis diagonalizes the weighted
Laplacian with eigenvalue p*q, solving -Lu = f in the truncated span
is coefficientwise division.  Truncated syntheses vanish identically on
the unit circle, so the solve respects zero Dirichlet data by
construction rather than by enforcement.

Projection samples the target once on a shared (radial Gauss-Legendre) x
(uniform theta) grid and separates angular modes with an FFT; this is
numerically identical to projecting mode by mode with
:func:`scatterpoly.quadrature.inner_product_function` on the same grid,
just without resampling f for every index.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from .jacobi import gauss_legendre
from .poly_algebra import BivariatePoly, ComplexRational
from .scattering import PQIndex, basis_indices, jacobi_form, norm_sq, radial_sum

DiskFunction = Callable[[float, float], complex]


@dataclass(frozen=True)
class ExpansionTable:
    """Coefficients of a truncated expansion, keyed by PQIndex.

    Every key satisfies p + q <= truncation; absent keys mean zero.
    """

    coefficients: Mapping[PQIndex, complex]
    truncation: int

    def __post_init__(self) -> None:
        cleaned = {}
        for idx, value in self.coefficients.items():
            if not isinstance(idx, PQIndex):
                raise TypeError("coefficient keys must be PQIndex")
            if idx.p + idx.q > self.truncation:
                raise ValueError(f"{idx} exceeds truncation {self.truncation}")
            cleaned[idx] = complex(value)
        object.__setattr__(self, "coefficients", cleaned)

    def items(self) -> list[tuple[PQIndex, complex]]:
        """Coefficients in lexicographic index order."""
        return sorted(self.coefficients.items(), key=lambda kv: kv[0])

    def coefficient(self, idx: PQIndex) -> complex:
        return self.coefficients.get(idx, 0j)


@dataclass(frozen=True)
class GridSample:
    """Values on a polar tensor grid; radial nodes stay inside [0, 1)."""

    radial_nodes: np.ndarray
    angular_nodes: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        r = np.asarray(self.radial_nodes, dtype=float)
        theta = np.asarray(self.angular_nodes, dtype=float)
        values = np.asarray(self.values, dtype=complex)
        if values.shape != (r.size, theta.size):
            raise ValueError("values shape must be (radial, angular)")
        if r.size and (r.min() < 0.0 or r.max() >= 1.0):
            raise ValueError("radial nodes must lie in [0, 1)")
        object.__setattr__(self, "radial_nodes", r)
        object.__setattr__(self, "angular_nodes", theta)
        object.__setattr__(self, "values", values)


def polar_grid(n_radial: int, n_angular: int) -> tuple[np.ndarray, np.ndarray]:
    """Uniform open polar grid: r = i/n_radial, theta = 2 pi j/n_angular."""
    if n_radial < 1 or n_angular < 1:
        raise ValueError("grid sizes must be >= 1")
    r = np.arange(n_radial, dtype=float) / n_radial
    theta = 2.0 * math.pi * np.arange(n_angular, dtype=float) / n_angular
    return r, theta


def basis_function(idx: PQIndex) -> DiskFunction:
    """phi^(idx) as a plain callable on (r, theta)."""
    form = jacobi_form(idx)
    return form.value


def _sample_grid(
    f: DiskFunction, truncation: int, radial_order: Optional[int], angular_points: Optional[int]
):
    order = radial_order if radial_order is not None else truncation + 8
    points = angular_points if angular_points is not None else 4 * truncation + 16
    rule = gauss_legendre(order)
    r = np.sqrt((1.0 + rule.nodes) / 2.0)
    theta = 2.0 * math.pi * np.arange(points) / points
    samples = np.array([[f(ri, tj) for tj in theta] for ri in r], dtype=complex)
    return rule, r, theta, samples


def expand(
    f: DiskFunction,
    truncation: int,
    radial_order: Optional[int] = None,
    angular_points: Optional[int] = None,
) -> ExpansionTable:
    """Project f onto every basis member with p + q <= truncation.

    Coefficients are <f, phi> / ||phi||^2.  Defaults follow the sampling
    policy radial order = truncation + 8, angular points =
    4 * truncation + 16, enough for every in-range angular mode and for
    polynomial targets of matching degree.
    """
    if truncation < 2:
        raise ValueError("truncation must be >= 2")
    rule, r, theta, samples = _sample_grid(f, truncation, radial_order, angular_points)
    points = theta.size
    # fft bin k holds sum_j samples[:, j] e^(-2 pi i j k / points): exactly
    # the trapezoid sum of f e^(-i n theta) for k = n mod points.
    fhat = np.fft.fft(samples, axis=1)
    coefficients = {}
    for idx in basis_indices(truncation):
        form = jacobi_form(idx)
        angular = fhat[:, form.angular_frequency % points] * (2.0 * math.pi / points)
        projection = (rule.weights / 4.0 * form.radial_kernel(r)) @ angular
        coefficients[idx] = complex(projection / norm_sq(idx))
    return ExpansionTable(coefficients=coefficients, truncation=truncation)


def reconstruct(
    table: ExpansionTable,
    radial_nodes: Sequence[float],
    angular_nodes: Sequence[float],
) -> GridSample:
    """Pointwise partial sum of the expansion on a polar tensor grid."""
    r = np.asarray(radial_nodes, dtype=float)
    theta = np.asarray(angular_nodes, dtype=float)
    values = np.zeros((r.size, theta.size), dtype=complex)
    for idx, c in table.items():
        form = jacobi_form(idx)
        values += c * np.outer(
            form.radial_value(r), np.exp(1j * form.angular_frequency * theta)
        )
    return GridSample(radial_nodes=r, angular_nodes=theta, values=values)


def boundary_value_check(table: ExpansionTable, n_theta: int) -> float:
    """Max |partial sum| over n_theta points of the unit circle.

    Every basis member carries the factor (1 - r^2), so this is zero to
    the last bit for any finite table; a nonzero return flags a synthesis
    bug, not a modeling error.
    """
    if n_theta < 1:
        raise ValueError("n_theta must be >= 1")
    theta = 2.0 * math.pi * np.arange(n_theta) / n_theta
    total = np.zeros(n_theta, dtype=complex)
    for idx, c in table.items():
        form = jacobi_form(idx)
        total += c * form.radial_value(1.0) * np.exp(1j * form.angular_frequency * theta)
    return float(np.max(np.abs(total)))


def solve_table(f_table: ExpansionTable) -> ExpansionTable:
    """Divide each coefficient by its eigenvalue p*q."""
    return ExpansionTable(
        coefficients={idx: c / idx.eigenvalue for idx, c in f_table.items()},
        truncation=f_table.truncation,
    )


def solve_weighted_poisson(
    f: DiskFunction,
    truncation: int,
    radial_order: Optional[int] = None,
    angular_points: Optional[int] = None,
) -> ExpansionTable:
    """Truncated solution of -Lu = f, L the weighted Laplacian.

    Expands f, then inverts the diagonal eigenvalue p*q per coefficient.
    The synthesized u vanishes on the boundary circle identically.
    """
    return solve_table(expand(f, truncation, radial_order, angular_points))


def synthesize_exact(table: ExpansionTable) -> BivariatePoly:
    """The partial sum as an exact polynomial.

    Coefficients are binary floats, hence exact rationals; attaching them
    to the exact basis polynomials keeps the whole synthesis rational, so
    solver residuals can be checked to literal zero.
    """
    total = BivariatePoly.zero()
    for idx, c in table.items():
        scalar = ComplexRational(Fraction(c.real), Fraction(c.imag))
        total = total + radial_sum(idx) * scalar
    return total


def solve_exact(f_table: ExpansionTable) -> BivariatePoly:
    """Exact polynomial solution of -Lu = f for a finite f-table.

    The division by the eigenvalue p*q happens in rational arithmetic, so
    applying the weighted Laplacian to the result and negating returns the
    synthesized f-polynomial with zero residual, literally.
    """
    total = BivariatePoly.zero()
    for idx, c in f_table.items():
        k = idx.eigenvalue
        scalar = ComplexRational(Fraction(c.real) / k, Fraction(c.imag) / k)
        total = total + radial_sum(idx) * scalar
    return total


def expansion_residual(
    f: DiskFunction,
    table: ExpansionTable,
    radial_order: Optional[int] = None,
    angular_points: Optional[int] = None,
) -> float:
    """Weighted L2 norm of f minus the partial sum.

    Needs no special singularity handling: the residual of any reasonable
    Dirichlet-compatible target still vanishes at the rim, and the
    Gauss-Legendre nodes keep strictly inside the disk regardless.
    """
    order = radial_order if radial_order is not None else 2 * table.truncation + 12
    points = angular_points if angular_points is not None else 8 * table.truncation + 32
    rule = gauss_legendre(order)
    u = rule.nodes
    r = np.sqrt((1.0 + u) / 2.0)
    theta = 2.0 * math.pi * np.arange(points) / points
    samples = np.array([[f(ri, tj) for tj in theta] for ri in r], dtype=complex)
    partial = reconstruct(table, r, theta).values
    residual_sq = np.abs(samples - partial) ** 2
    radial_weights = rule.weights / (1.0 - u)
    total = (math.pi / points) * float(radial_weights @ residual_sq.sum(axis=1))
    return math.sqrt(total)


def grid_interpolant(sample: GridSample) -> DiskFunction:
    """Bilinear interpolation in (r, theta): periodic in theta, r clamped.

    Radii outside the sampled range take the nearest edge value, so the
    interpolant is defined on the whole closed disk even when the grid
    stops short of the rim.
    """
    r_nodes = sample.radial_nodes
    theta_nodes = sample.angular_nodes
    if r_nodes.size < 1 or theta_nodes.size < 1:
        raise ValueError("grid must contain at least one node per direction")
    two_pi = 2.0 * math.pi
    theta_ext = np.concatenate([theta_nodes, [theta_nodes[0] + two_pi]])
    values_ext = np.concatenate([sample.values, sample.values[:, :1]], axis=1)

    def interpolate(r: float, theta: float) -> complex:
        rr = min(max(float(r), float(r_nodes[0])), float(r_nodes[-1]))
        i = bisect_left(r_nodes, rr)
        if i == 0:
            i0, i1, tr = 0, 0, 0.0
        else:
            i0, i1 = i - 1, min(i, r_nodes.size - 1)
            den = r_nodes[i1] - r_nodes[i0]
            tr = (rr - r_nodes[i0]) / den if den else 0.0
        th = float(theta) % two_pi
        if th < theta_ext[0]:
            th += two_pi
        j = bisect_left(theta_ext, th)
        if j == 0:
            j0, j1, tt = 0, 0, 0.0
        else:
            j0, j1 = j - 1, min(j, theta_ext.size - 1)
            den = theta_ext[j1] - theta_ext[j0]
            tt = (th - theta_ext[j0]) / den if den else 0.0
        row0 = values_ext[i0, j0] * (1 - tt) + values_ext[i0, j1] * tt
        row1 = values_ext[i1, j0] * (1 - tt) + values_ext[i1, j1] * tt
        return complex(row0 * (1 - tr) + row1 * tr)

    return interpolate
