"""Free-field closed forms: spectra, determinants, continuum targets."""

import math
import random

import pytest

from gylat import (
    LatticeSpec,
    MassParam,
    Potential,
    cheb_u,
    continuum_limit_targets,
    determinant,
    dirichlet,
    free_determinant,
    free_eigenvalues,
    neumann,
    periodic,
    robin,
    robin_matrix_element,
    twisted,
)

ALL_FREE_BCS = (dirichlet(), neumann(), periodic(), twisted(0.25), twisted(0.5))


def spec_for(bc, nu, h=1.0):
    return LatticeSpec.circle(nu, h=h) if bc.is_circle else LatticeSpec.interval(nu, h=h)


class TestMassParam:
    def test_dimensionless_relation(self):
        spec = LatticeSpec.interval(10, h=0.25)
        m = MassParam.physical(2.0, spec)
        assert m.mu == 0.5
        assert abs(4.0 * math.sinh(m.gamma0) ** 2 - m.mu ** 2) < 1e-14
        assert abs(m.x0 - math.cosh(2 * m.gamma0)) < 1e-14

    def test_negative_mass_rejected(self):
        with pytest.raises(ValueError):
            MassParam.physical(-1.0, LatticeSpec.interval(2, h=1.0))


class TestFreeEigenvalues:
    def test_dirichlet_nu3(self):
        spec = LatticeSpec.interval(3, h=1.0)
        lams = free_eigenvalues(dirichlet(), spec).lambdas
        want = [4 * math.sin(math.pi * n / 8) ** 2 for n in (1, 2, 3)]
        assert max(abs(a - b) for a, b in zip(lams, want)) < 1e-14
        assert abs(lams[1] - 2.0) < 1e-14

    def test_neumann_zero_mode_is_mass(self):
        spec = LatticeSpec.interval(5, h=0.5)
        m = MassParam.physical(1.7, spec)
        lams = free_eigenvalues(neumann(), spec, m)
        assert abs(lams.physical[0] - 1.7 ** 2) < 1e-12

    def test_twisted_half_nu2(self):
        spec = LatticeSpec.circle(2, h=0.7)
        lams = free_eigenvalues(twisted(0.5), spec)
        assert max(abs(x - 2.0) for x in lams.lambdas) < 1e-14
        assert max(abs(x - 2.0 / 0.49) for x in lams.physical) < 1e-12

    def test_periodic_bookkeeping_matches_twisted_one(self):
        for nu in (2, 3, 4, 7, 8):
            spec = LatticeSpec.circle(nu, h=1.0)
            p = free_eigenvalues(periodic(), spec).lambdas
            t = free_eigenvalues(twisted(1.0), spec).lambdas
            assert len(p) == nu
            assert max(abs(a - b) for a, b in zip(p, t)) < 1e-12

    def test_even_nu_alternating_mode(self):
        spec = LatticeSpec.circle(6, h=1.0)
        lams = free_eigenvalues(periodic(), spec).lambdas
        assert abs(lams[-1] - 4.0) < 1e-14  # the lattice-cutoff wave

    def test_mass_shift_exact(self):
        spec = LatticeSpec.interval(6, h=0.3)
        m = MassParam.physical(2.0, spec)
        massless = free_eigenvalues(dirichlet(), spec).lambdas
        massive = free_eigenvalues(dirichlet(), spec, m).lambdas
        for a, b in zip(massless, massive):
            assert b == a + m.mu ** 2  # exact float identity: same sin^2 term

    def test_count_is_nu(self):
        for bc in ALL_FREE_BCS:
            for nu in (1, 2, 5, 8):
                spec = spec_for(bc, nu)
                assert len(free_eigenvalues(bc, spec)) == nu

    def test_robin_has_no_closed_form(self):
        with pytest.raises(ValueError):
            free_eigenvalues(robin(0.5, 0.5), LatticeSpec.interval(3, h=1.0))


class TestFreeDeterminant:
    def test_dirichlet_nu1_mass1(self):
        spec = LatticeSpec.interval(1, h=1.0)
        ld = free_determinant(dirichlet(), spec, MassParam.physical(1.0, spec))
        assert abs(ld.value - 3.0) < 1e-12

    def test_neumann_nu1_mass1(self):
        spec = LatticeSpec.interval(1, h=1.0)
        ld = free_determinant(neumann(), spec, MassParam.physical(1.0, spec))
        assert abs(ld.value - 1.0) < 1e-12

    def test_neumann_massless_zero(self):
        spec = LatticeSpec.interval(5, h=1.0)
        assert free_determinant(neumann(), spec).sign == 0
        ldp = free_determinant(neumann(), spec, prime=True)
        assert ldp.zero_modes_removed == 1 and abs(ldp.value - 5.0) < 1e-12

    def test_twisted_half(self):
        spec = LatticeSpec.circle(4, h=1.0)
        ld = free_determinant(twisted(0.5), spec)
        assert abs(ld.value - 4.0) < 1e-12  # 4 sin^2(pi/2) / h^(2 nu)

    def test_periodic_primed_value(self):
        # Det'_P = 4 L^2 / h^(2 nu + 2) in the paper's bookkeeping
        for nu in (2, 3, 6):
            spec = LatticeSpec.circle(nu, L=2 * math.pi)
            ld = free_determinant(periodic(), spec, prime=True)
            want = 4 * (2 * math.pi) ** 2 / spec.h ** (2 * nu + 2)
            assert abs(ld.value - want) < 1e-9 * want

    def test_complexified_squares(self):
        spec = LatticeSpec.circle(5, h=1.0)
        half = free_determinant(twisted(0.3), spec)
        full = free_determinant(twisted(0.3), spec, complexified=True)
        assert abs(full.log_abs - 2 * half.log_abs) < 1e-12

    def test_product_formula(self):
        # prod lambda_bar from the spectrum equals the determinant (log domain)
        for bc in ALL_FREE_BCS:
            for nu in (1, 2, 7, 40, 200, 500):
                spec = spec_for(bc, nu, h=0.8)
                for mubar in (0.1, 1.0):
                    m = MassParam.physical(mubar, spec)
                    lams = free_eigenvalues(bc, spec, m)
                    log_prod = math.fsum(math.log(x) for x in lams.physical)
                    ld = free_determinant(bc, spec, m)
                    assert ld.sign == 1
                    assert abs(ld.log_abs - log_prod) < 1e-9 * max(1.0, abs(log_prod))

    def test_matches_transfer_determinant(self):
        for bc in ALL_FREE_BCS:
            for nu in (1, 2, 13, 60, 200):
                spec = spec_for(bc, nu, h=0.8)
                for mubar in (0.0, 0.1, 1.0):
                    m = MassParam.physical(mubar, spec)
                    pot = Potential.constant(nu, m.mu ** 2)
                    ld_t = determinant(pot, bc, spec)
                    ld_c = free_determinant(bc, spec, m)
                    assert ld_t.sign == ld_c.sign
                    if ld_c.sign != 0:
                        assert abs(ld_t.log_abs - ld_c.log_abs) <= 1e-10 * max(1.0, abs(ld_c.log_abs))

    def test_robin_free_determinant(self):
        # massless normalised determinant: (ab (nu+1) + a + b) / ((1+a)(1+b))
        rng = random.Random(21)
        for _ in range(20):
            nu = rng.randint(1, 30)
            a, b = rng.uniform(-0.7, 2.0), rng.uniform(-0.7, 2.0)
            spec = LatticeSpec.interval(nu, h=1.0)
            ld = free_determinant(robin(a, b), spec)
            want = (a * b * (nu + 1) + a + b) / ((1 + a) * (1 + b))
            if abs(want) < 1e-12:
                assert ld.sign == 0
            else:
                assert abs(ld.value - want) < 1e-9 * abs(want)


class TestRobinMatrixElement:
    def test_neumann_reduction(self):
        # alpha = beta = 0: P = -lambda U_{nu-1}(1 - lambda/2)
        for nu in (1, 2, 5, 9):
            for lam in (0.3, 1.7, 3.9):
                got = robin_matrix_element(nu, 0.0, 0.0, lam=lam)
                want = -lam * cheb_u(nu - 1, 1 - lam / 2)
                assert abs(got - want) < 1e-11 * max(1.0, abs(want))

    def test_nu1_hand_product(self):
        for lam in (0.0, 0.5, 2.0):
            assert abs(robin_matrix_element(1, 1.0, 0.0, lam=lam) - (1 - 2 * lam)) < 1e-13

    def test_massless_normalised_determinant(self):
        rng = random.Random(22)
        for _ in range(20):
            nu = rng.randint(1, 12)
            a, b = rng.uniform(-0.5, 1.5), rng.uniform(-0.5, 1.5)
            got = robin_matrix_element(nu, a, b, lam=0.0) / ((1 + a) * (1 + b))
            want = (a * b * (nu + 1) + a + b) / ((1 + a) * (1 + b))
            assert abs(got - want) < 1e-10 * max(1.0, abs(want))

    def test_chebyshev_form(self):
        # (a+b+ab) U_nu - (a+b+lambda-mu^2) U_{nu-1} at x = 1 + (mu^2-lambda)/2
        rng = random.Random(23)
        for _ in range(25):
            nu = rng.randint(1, 15)
            a, b = rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)
            lam = rng.uniform(-2, 5)
            spec = LatticeSpec.interval(nu, h=0.5)
            m = MassParam.physical(rng.uniform(0, 2), spec)
            x = 1 + (m.mu ** 2 - lam) / 2
            want = ((a + b + a * b) * cheb_u(nu, x)
                    - (a + b + lam - m.mu ** 2) * cheb_u(nu - 1, x))
            got = robin_matrix_element(nu, a, b, m, lam)
            assert abs(got - want) < 1e-9 * max(1.0, abs(want))

    def test_trace_form_and_binomial_expansion(self):
        # Equivalent massless trace form:
        #   (a+b+ab) T_nu + (ab - (ab+a+b+2) lambda / 2) U_{nu-1},
        # whose two pieces have the explicit binomial expansions
        #   T_nu    = sum_s [nu/(2nu-s)] C(2nu-s, s) (-lambda)^(nu-s)
        #   U_{nu-1} = sum_s C(2nu-s-1, s) (-lambda)^(nu-s-1).
        # The alternating sums cancel catastrophically in float, so the
        # expansion identities are checked in exact rationals.
        from fractions import Fraction

        from gylat import cheb_t
        rng = random.Random(24)
        for nu in range(1, 21):
            lam = Fraction(rng.randint(-12, 35), 8)
            x = 1 - lam / 2
            t_sum = sum(Fraction(nu, 2 * nu - s) * math.comb(2 * nu - s, s)
                        * (-lam) ** (nu - s) for s in range(nu + 1))
            u_sum = sum(math.comb(2 * nu - s - 1, s) * (-lam) ** (nu - s - 1)
                        for s in range(nu))
            assert t_sum == cheb_t(nu, x)
            assert u_sum == cheb_u(nu - 1, x)
            # and the trace form reassembles the direct matrix element
            a, b = rng.uniform(-1, 1), rng.uniform(-1, 1)
            got = robin_matrix_element(nu, a, b, lam=float(lam))
            want = ((a + b + a * b) * float(t_sum)
                    + (a * b - 0.5 * (a * b + a + b + 2) * float(lam)) * float(u_sum))
            assert abs(got - want) < 1e-8 * max(1.0, abs(want), abs(float(t_sum)))


class TestContinuumTargets:
    def test_dirichlet_values(self):
        assert abs(continuum_limit_targets(dirichlet(), 1.0, L=1.0) - math.sinh(1.0)) < 1e-15
        assert continuum_limit_targets(dirichlet(), 0.0, L=2.5) == 2.5

    def test_robin_specialisations(self):
        mubar = 1.3
        got = continuum_limit_targets(robin(0, 0), mubar, 0.0, 0.0, L=2.0)
        assert abs(got - mubar * math.sinh(mubar * 2.0)) < 1e-12
        got = continuum_limit_targets(robin(0, 0), 1.0, 1.0, 2.0, L=1.0)
        want = 3.0 * math.cosh(1.0) + 3.0 * math.sinh(1.0)
        assert abs(got - want) < 1e-12

    def test_circle_targets(self):
        assert continuum_limit_targets(periodic(), 0.0, L=2 * math.pi) == 4 * (2 * math.pi) ** 2
        t = continuum_limit_targets(twisted(0.25), 0.0, L=2 * math.pi)
        assert abs(t - 4 * math.sin(math.pi * 0.25) ** 2) < 1e-15

    def test_convergence_dirichlet(self):
        # h^(2 nu + 1) Det_D approaches sinh(mubar L)/mubar at order ~2
        L, mubar = 1.0, 1.0
        errs = {}
        for nu in (200, 400):
            spec = LatticeSpec.interval(nu, L=L)
            m = MassParam.physical(mubar, spec)
            ld = free_determinant(dirichlet(), spec, m)
            val = ld.scaled_value((2 * nu + 1) * math.log(spec.h))
            errs[nu] = abs(val - math.sinh(1.0))
        order = math.log(errs[200] / errs[400]) / math.log(2)
        assert 1.9 < order < 2.1
