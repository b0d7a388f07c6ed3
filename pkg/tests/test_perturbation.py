"""Chebyshev-propagator series, delta potential, symmetric factor."""

import math
import random
from fractions import Fraction

import pytest

from gylat import (
    CharPoly,
    LatticeSpec,
    Potential,
    char_poly,
    cheb_u_poly,
    delta_potential,
    determinant,
    dirichlet,
    dirichlet_det_series,
    dirichlet_trace_series,
    neumann,
    neumann_det_series,
    neumann_trace_series,
    oracle_spectrum,
    symmetric_factor_check,
)
from gylat.perturbation import trace_series_by_tuples


class TestDirichletSeries:
    def test_free_is_cheb_u(self):
        for nu in (1, 3, 6):
            assert dirichlet_trace_series(Potential.zeros(nu)) == cheb_u_poly(nu)

    def test_single_site_closed_form(self):
        # U_nu + v (2 - lambda) U_{nu-2} for the site-2 insertion
        for nu in (2, 4, 7):
            v = 3
            got = dirichlet_trace_series(Potential.delta(nu, 2, v))
            want = cheb_u_poly(nu) + v * (CharPoly([2, -1], backend="exact") * cheb_u_poly(nu - 2))
            assert got == want

    def test_nu3_example(self):
        got = dirichlet_trace_series(Potential((0, 1, 0)))
        assert got.coeffs == [8, -14, 7, -1]

    def test_full_order_equals_transfer_exact(self):
        rng = random.Random(41)
        for nu in range(1, 11):
            pot = Potential(tuple(rng.randint(-3, 3) for _ in range(nu)))
            assert dirichlet_trace_series(pot) == char_poly(pot, dirichlet(), exact=True)

    def test_matches_tuple_enumeration(self):
        rng = random.Random(42)
        for nu in range(1, 7):
            pot = Potential(tuple(rng.randint(-2, 2) for _ in range(nu)))
            for order in range(nu + 1):
                assert (dirichlet_trace_series(pot, order)
                        == trace_series_by_tuples(pot, order, neumann=False))

    def test_truncation_error_scaling(self):
        # order-k truncation misses O(eps^(k+1)) when v -> eps v
        base = (0.8, -0.5, 0.3, 0.9)
        full = [CharPoly([c for c in
                          dirichlet_trace_series(Potential(tuple(e * v for v in base))).coeffs])
                for e in (1.0,)]
        for k in (0, 1, 2):
            resid = []
            for eps in (1e-2, 1e-3):
                pot = Potential(tuple(eps * v for v in base))
                diff = dirichlet_trace_series(pot) - dirichlet_trace_series(pot, k)
                resid.append(max(abs(c) for c in diff.coeffs))
            ratio = resid[0] / resid[1]
            order_est = math.log10(ratio)
            assert abs(order_est - (k + 1)) < 0.2


class TestNeumannSeries:
    def test_free_is_lambda_u(self):
        # Delta V_{nu-1} = -lambda U_{nu-1}
        for nu in (1, 3, 6):
            got = neumann_trace_series(Potential.zeros(nu))
            want = CharPoly([0, -1], backend="exact") * cheb_u_poly(nu - 1)
            assert got == want

    def test_nu2_determinant(self):
        a, b = 3, 5
        poly = neumann_trace_series(Potential((a, b)))
        assert poly(0) == a + b + a * b

    def test_single_site_constant_term(self):
        for nu in (2, 5):
            for site in (1, 2, nu):
                poly = neumann_trace_series(Potential.delta(nu, site, 7))
                assert poly(0) == 7  # V factors are unity at lambda = 0

    def test_full_order_equals_transfer_exact(self):
        rng = random.Random(43)
        for nu in range(1, 11):
            pot = Potential(tuple(rng.randint(-3, 3) for _ in range(nu)))
            assert neumann_trace_series(pot) == char_poly(pot, neumann(), exact=True)

    def test_matches_tuple_enumeration(self):
        rng = random.Random(44)
        for nu in range(1, 7):
            pot = Potential(tuple(rng.randint(-2, 2) for _ in range(nu)))
            assert (neumann_trace_series(pot)
                    == trace_series_by_tuples(pot, neumann=True))


class TestDetSeries:
    def test_dirichlet_free(self):
        for nu in (1, 4, 9):
            assert dirichlet_det_series(Potential.zeros(nu)) == nu + 1

    def test_dirichlet_delta_site2(self):
        assert dirichlet_det_series(Potential.delta(3, 2, 1)) == 8

    def test_dirichlet_ones(self):
        # 4 + 10 + 6 + 1 term by term
        assert dirichlet_det_series(Potential((1, 1, 1))) == 21
        per_order = [dirichlet_det_series(Potential((1, 1, 1)), k)
                     for k in range(4)]
        assert per_order == [4, 14, 20, 21]

    def test_neumann_values(self):
        assert neumann_det_series(Potential.zeros(5)) == 0
        assert neumann_det_series(Potential.delta(4, 3, 9)) == 9
        a, b = 2, 7
        assert neumann_det_series(Potential((a, b))) == a + b + a * b

    def test_equals_normalised_char_poly(self):
        rng = random.Random(45)
        for nu in range(1, 9):
            pot = Potential(tuple(rng.randint(-2, 2) for _ in range(nu)))
            pd = char_poly(pot, dirichlet(), exact=True)
            assert dirichlet_det_series(pot) == (-1) ** nu * Fraction(pd(0), pd.leading())
            pn = char_poly(pot, neumann(), exact=True)
            assert neumann_det_series(pot) == (-1) ** nu * Fraction(pn(0), pn.leading())


class TestDeltaPotential:
    def test_polynomial_and_det(self):
        res = delta_potential(3, 2, 1)
        assert res.det == 8
        assert res.char_poly == char_poly(Potential.delta(3, 2, 1), dirichlet(), exact=True)

    def test_zero_mode_location(self):
        for nu in (2, 5, 30):
            res = delta_potential(nu, 2, 1)
            v0 = res.zero_mode_v
            assert v0 == -Fraction(nu + 1, 2 * (nu - 1))
            at_zero = delta_potential(nu, 2, v0)
            assert at_zero.det == 0

    def test_general_site(self):
        for nu, site in ((5, 1), (5, 3), (7, 7)):
            res = delta_potential(nu, site, 2)
            assert res.det == nu + 1 + 2 * (nu - site + 1) * site
            assert res.char_poly == char_poly(Potential.delta(nu, site, 2), dirichlet(), exact=True)

    def test_top_eigenvalue_four_at_opposite_sign(self):
        for nu in (5, 12, 40):
            v = (nu + 1) / (2 * (nu - 1))
            lams = oracle_spectrum(Potential.delta(nu, 2, v), dirichlet()).lambdas
            assert abs(lams[-1] - 4.0) < 1e-9

    def test_site_out_of_range(self):
        with pytest.raises(ValueError):
            delta_potential(4, 5, 1.0)

    def test_cli_zero_mode_case(self):
        # nu = 5, site 2, v = -(nu+1)/(2(nu-1)) = -0.75: determinant vanishes
        spec = LatticeSpec.interval(5, h=1.0)
        ld = determinant(Potential.delta(5, 2, -0.75), dirichlet(), spec)
        assert ld.sign == 0


class TestSymmetricFactor:
    def test_symmetric_cases(self):
        assert symmetric_factor_check(1, 0)
        assert symmetric_factor_check(0, 0)
        assert symmetric_factor_check(Fraction(2, 7), Fraction(-3, 5))
        assert symmetric_factor_check(0.3, -1.2)

    def test_asymmetric_case(self):
        assert not symmetric_factor_check(1, 0, 2)
        assert not symmetric_factor_check(0.5, 0.1, 0.5001)
