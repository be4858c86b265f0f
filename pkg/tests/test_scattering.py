"""Construction routes, eigenrelation, basis bookkeeping, sign resolution."""

import cmath
import math
import random
from fractions import Fraction

import pytest

from scatterpoly.poly_algebra import BOUNDARY_FACTOR, BivariatePoly, Z, ZBAR
from scatterpoly.quadrature import inner_product_poly_exact
from scatterpoly.scattering import (
    PQIndex,
    RadialForm,
    apply_modified_laplacian,
    basis_indices,
    eigencheck,
    eigenspace_indices,
    jacobi_form,
    norm_sq,
    profile_value,
    radial_profile,
    radial_sum,
    resolved_sign,
    rodrigues,
    sign_resolution,
)

from helpers import exact_norm_fraction, random_point

#: sigma_0(k) for k = 1..30: number of divisors.
DIVISOR_COUNTS = [
    1, 2, 2, 3, 2, 4, 2, 4, 3, 4,
    2, 6, 2, 4, 4, 5, 2, 6, 2, 6,
    4, 4, 2, 8, 3, 4, 4, 6, 2, 8,
]


class TestPQIndex:
    def test_rejects_nonpositive_entries(self):
        for bad in ((0, 1), (1, 0), (-2, 3), (0, 0)):
            with pytest.raises(ValueError, match=r"min\{p,q\} must be >= 1"):
                PQIndex(*bad)

    def test_derived_quantities(self):
        idx = PQIndex(5, 2)
        assert idx.m == 3
        assert idx.nu == 1
        assert idx.angular_frequency == -3
        assert idx.eigenvalue == 10

    def test_lexicographic_ordering(self):
        assert sorted([PQIndex(2, 1), PQIndex(1, 3), PQIndex(1, 2)]) == [
            PQIndex(1, 2),
            PQIndex(1, 3),
            PQIndex(2, 1),
        ]


class TestRodrigues:
    def test_index_1_1(self):
        assert rodrigues(PQIndex(1, 1)) == BOUNDARY_FACTOR

    def test_index_2_1(self):
        assert rodrigues(PQIndex(2, 1)) == ZBAR * 2 * BOUNDARY_FACTOR

    def test_index_2_2(self):
        one_minus_3w = BivariatePoly({(0, 0): Fraction(1), (1, 1): Fraction(-3)})
        assert rodrigues(PQIndex(2, 2)) == BOUNDARY_FACTOR * one_minus_3w

    def test_index_1_2(self):
        assert rodrigues(PQIndex(1, 2)) == Z * -1 * BOUNDARY_FACTOR

    def test_angular_purity(self):
        # every monomial z^a zbar^b satisfies a - b = q - p
        for idx in basis_indices(10):
            for (a, b) in rodrigues(idx).terms:
                assert a - b == idx.q - idx.p

    def test_total_degree_is_p_plus_q(self):
        # e.g. (2,1) -> 2 zbar (1 - z zbar), degree 3
        for idx in basis_indices(10):
            assert rodrigues(idx).total_degree() == idx.p + idx.q

    def test_boundary_divisibility(self):
        for idx in basis_indices(10):
            quotient = rodrigues(idx).divide_by_boundary_factor()
            assert BOUNDARY_FACTOR * quotient == rodrigues(idx)


class TestRadialSum:
    def test_index_1_1(self):
        assert radial_sum(PQIndex(1, 1)) == BOUNDARY_FACTOR

    def test_index_1_2(self):
        assert radial_sum(PQIndex(1, 2)) == Z * -1 * BOUNDARY_FACTOR

    def test_index_2_2_radial_profile(self):
        freq, profile = radial_profile(radial_sum(PQIndex(2, 2)))
        assert freq == 0
        assert profile == {0: 1, 2: -4, 4: 3}

    def test_equals_rodrigues_exactly(self):
        for idx in basis_indices(10):
            assert radial_sum(idx) == rodrigues(idx)


class TestJacobiForm:
    @pytest.mark.parametrize(
        "p,q,coeff,m,nu,n",
        [
            (1, 1, 1.0, 0, 0, 0),
            (2, 1, 2.0, 1, 0, -1),
            (2, 2, -1.0, 0, 1, 0),
            (1, 2, -1.0, 1, 0, 1),
        ],
    )
    def test_resolved_examples(self, p, q, coeff, m, nu, n):
        form = jacobi_form(PQIndex(p, q))
        assert form == RadialForm(coeff=coeff, m=m, nu=nu, angular_frequency=n)

    def test_matches_exact_values(self):
        rng = random.Random(8)
        for idx in basis_indices(9):
            form = jacobi_form(idx)
            poly = rodrigues(idx)
            for _ in range(10):
                z = random_point(rng)
                r, theta = abs(z), cmath.phase(z)
                approx = form.value(r, theta)
                exact = poly.evaluate(z)
                assert abs(approx - exact) <= 1e-11 * max(1.0, abs(exact))

    def test_sign_follows_parity_of_q(self):
        # validation lands on (-1)^(q+1) every time
        for idx in basis_indices(12):
            assert resolved_sign(idx) == (-1) ** (idx.q + 1)

    def test_sign_resolution_record(self):
        record = sign_resolution(PQIndex(2, 2))
        assert record["resolved_sign"] == -1
        assert record["rule_sign"] == 1
        assert record["agrees"] is False
        # the exponent rule (-1)^(q+max) survives only at odd max{p,q}
        for idx in basis_indices(10):
            assert sign_resolution(idx)["agrees"] == (max(idx.p, idx.q) % 2 == 1)

    def test_radial_kernel_cancels_boundary_factor(self):
        form = jacobi_form(PQIndex(3, 2))
        for r in (0.1, 0.5, 0.9):
            assert form.radial_value(r) == pytest.approx(
                (1 - r * r) * form.radial_kernel(r), rel=1e-15
            )


class TestModifiedLaplacian:
    def test_boundary_factor_eigenpair(self):
        assert apply_modified_laplacian(BOUNDARY_FACTOR) == -BOUNDARY_FACTOR

    def test_kills_constants(self):
        assert apply_modified_laplacian(BivariatePoly.constant(7)).is_zero()

    def test_hand_eigenvalue_two(self):
        phi = ZBAR * 2 * BOUNDARY_FACTOR
        assert -apply_modified_laplacian(phi) == phi * 2

    def test_eigencheck_small_indices(self):
        for pq in ((1, 1), (3, 2), (2, 3), (4, 1)):
            assert eigencheck(PQIndex(*pq))

    def test_z_is_not_an_eigenfunction(self):
        # the relation with eigenvalue 1 fails for the monomial z
        assert not (apply_modified_laplacian(Z) + Z).is_zero()


class TestEnumeration:
    def test_eigenspace_k1(self):
        assert eigenspace_indices(1) == [PQIndex(1, 1)]

    def test_eigenspace_k6(self):
        assert eigenspace_indices(6) == [
            PQIndex(1, 6),
            PQIndex(2, 3),
            PQIndex(3, 2),
            PQIndex(6, 1),
        ]

    def test_eigenspace_k12_length(self):
        assert len(eigenspace_indices(12)) == 6

    def test_multiplicity_matches_divisor_count(self):
        for k, expected in enumerate(DIVISOR_COUNTS, start=1):
            found = eigenspace_indices(k)
            assert len(found) == expected
            assert all(idx.eigenvalue == k for idx in found)

    def test_eigenspace_rejects_k_below_one(self):
        with pytest.raises(ValueError):
            eigenspace_indices(0)

    def test_basis_smallest(self):
        assert basis_indices(2) == [PQIndex(1, 1)]

    def test_basis_three(self):
        assert basis_indices(3) == [PQIndex(1, 1), PQIndex(1, 2), PQIndex(2, 1)]

    def test_basis_count_and_order(self):
        indices = basis_indices(5)
        assert len(indices) == 10
        assert indices == sorted(indices)

    def test_basis_rejects_max_sum_below_two(self):
        with pytest.raises(ValueError):
            basis_indices(1)


class TestNormClosedForm:
    def test_hand_values(self):
        assert norm_sq(PQIndex(1, 1)) == pytest.approx(math.pi / 2, rel=1e-15)
        assert norm_sq(PQIndex(2, 1)) == pytest.approx(2 * math.pi / 3, rel=1e-15)
        assert norm_sq(PQIndex(1, 2)) == pytest.approx(math.pi / 6, rel=1e-15)

    def test_gate_against_exact_integral(self):
        # rational integration of the exact polynomial, no rounding anywhere
        for idx in basis_indices(12):
            re, im = inner_product_poly_exact(rodrigues(idx), rodrigues(idx))
            assert im == 0
            assert re == exact_norm_fraction(idx)


class TestRadialProfile:
    def test_mixed_frequency_rejected(self):
        with pytest.raises(ValueError):
            radial_profile(Z + BOUNDARY_FACTOR)

    def test_profile_evaluation(self):
        freq, profile = radial_profile(rodrigues(PQIndex(2, 1)))
        assert freq == -1
        value = profile_value(profile, Fraction(1, 2))
        # 2 r (1 - r^2) at r = 1/2
        assert value == Fraction(3, 4)
