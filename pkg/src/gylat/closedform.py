"""Closed forms for the free field (zero potential, constant mass).

With mass mubar the dimensionless mass is mu = h*mubar and the hyperbolic
parameter gamma0 satisfies mu = 2 sinh(gamma0); the Chebyshev argument at
lambda = 0 is x0 = cosh(2 gamma0) = 1 + mu^2/2.  Everything here is routed
through the Chebyshev recurrences at that argument (log-scaled for large
nu*gamma0), so the lambda = mu^2 point is exact and no trig/hyperbolic
branch switching occurs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .chebyshev import cheb_t_log, cheb_u_log
from .core import (
    DIRICHLET,
    NEUMANN,
    PERIODIC,
    ROBIN,
    TWISTED,
    BoundaryCondition,
    LatticeSpec,
    LogDet,
    Potential,
    Spectrum,
    Vec2,
)
from .transfer import propagate


@dataclass(frozen=True)
class MassParam:
    """Physical mass mubar >= 0 with its dimensionless companions."""

    mubar: float
    mu: float
    gamma0: float

    @classmethod
    def physical(cls, mubar: float, spec: LatticeSpec) -> "MassParam":
        if mubar < 0:
            raise ValueError("mass must be >= 0")
        mu = spec.h * mubar
        return cls(mubar=mubar, mu=mu, gamma0=math.asinh(0.5 * mu))

    @classmethod
    def dimensionless(cls, mu: float, spec: LatticeSpec) -> "MassParam":
        if mu < 0:
            raise ValueError("mass must be >= 0")
        return cls(mubar=mu / spec.h, mu=mu, gamma0=math.asinh(0.5 * mu))

    @classmethod
    def massless(cls) -> "MassParam":
        return cls(0.0, 0.0, 0.0)

    @property
    def x0(self) -> float:
        """Chebyshev argument at lambda = 0: cosh(2 gamma0) = 1 + mu^2/2."""
        return 1.0 + 0.5 * self.mu * self.mu


def free_eigenvalues(bc: BoundaryCondition, spec: LatticeSpec,
                     mass: MassParam | None = None) -> Spectrum:
    """The nu free eigenvalues (dimensionless, ascending, with multiplicity).

    Dirichlet: mu^2 + 4 sin^2(pi n / (2(nu+1))), n = 1..nu.
    Neumann:   mu^2 + 4 sin^2(pi n / (2 nu)),    n = 0..nu-1.
    Twisted:   mu^2 + 4 sin^2(pi (n+tau) / nu),  n = 0..nu-1.
    Periodic:  real-field bookkeeping - the zero mode, doubly degenerate
    pairs, and for even nu the single alternating mode at mu^2 + 4 (a wave
    at the lattice cutoff).  The multiset coincides with Twisted(1).
    """
    mass = mass or MassParam.massless()
    nu = spec.nu
    mu2 = mass.mu * mass.mu
    if nu < 1:
        return Spectrum((), spec)
    if bc.kind == DIRICHLET:
        lams = [mu2 + 4.0 * math.sin(math.pi * n / (2.0 * (nu + 1))) ** 2
                for n in range(1, nu + 1)]
    elif bc.kind == NEUMANN:
        lams = [mu2 + 4.0 * math.sin(math.pi * n / (2.0 * nu)) ** 2
                for n in range(nu)]
    elif bc.kind == TWISTED:
        lams = [mu2 + 4.0 * math.sin(math.pi * (n + bc.tau) / nu) ** 2
                for n in range(nu)]
    elif bc.kind == PERIODIC:
        lams = [mu2]  # uniform mode
        for n in range(1, (nu - 1) // 2 + 1):
            lam = mu2 + 4.0 * math.sin(math.pi * n / nu) ** 2
            lams.extend([lam, lam])
        if nu % 2 == 0:
            lams.append(mu2 + 4.0)  # alternating mode cos(pi j)
    else:
        raise ValueError(f"no closed-form spectrum for {bc.kind} (use the oracle)")
    return Spectrum(tuple(sorted(lams)), spec)


def _logdet_from(sign: int, log_dimless: float, nu: int, h: float,
                 removed: int = 0, complexified: bool = False) -> LogDet:
    log_abs = log_dimless - 2.0 * (nu - removed) * math.log(h)
    if complexified:
        log_abs *= 2.0
        sign *= sign
    return LogDet(sign, log_abs, removed)


def free_determinant(bc: BoundaryCondition, spec: LatticeSpec,
                     mass: MassParam | None = None, prime: bool = False,
                     complexified: bool = False) -> LogDet:
    """Closed-form free determinant as a LogDet (product of physical modes).

    Dirichlet: U_nu(x0) / h^(2 nu).
    Neumann:   mu^2 U_{nu-1}(x0) / h^(2 nu); sign 0 at mu = 0 unless primed,
               where Det' = nu / h^(2 nu - 2).
    Twisted:   2 (T_nu(x0) - cos 2 pi tau) / h^(2 nu); this is the
               half (real-product) form, matching the transfer-matrix and
               eigenvalue-product values; ``complexified`` squares it.
    Periodic:  Twisted at tau = 1; sign 0 at mu = 0 unless primed, where
               Det' = 4 L^2 / h^(2 nu + 2) (the removed mode's (2/h)^2
               prefactor is kept in this convention).
    """
    mass = mass or MassParam.massless()
    nu = spec.nu
    h = spec.h
    x0 = mass.x0
    if nu == 0:
        return LogDet(1, 0.0)
    if bc.kind == DIRICHLET:
        s, lg = cheb_u_log(nu, x0)
        return _logdet_from(s, lg, nu, h, complexified=complexified)
    if bc.kind in (NEUMANN, ROBIN):
        alpha, beta = bc.robin_alpha, bc.robin_beta
        if bc.kind == NEUMANN or (alpha == 0.0 and beta == 0.0):
            if mass.mu == 0.0:
                if not prime:
                    return LogDet(0, math.nan, 0)
                # remove the uniform zero mode: product of the others is nu
                return LogDet(1, math.log(nu) - (2.0 * nu - 2.0) * math.log(h), 1)
            s, lg = cheb_u_log(nu - 1, x0)
            return _logdet_from(s, lg + 2.0 * math.log(mass.mu), nu, h,
                                complexified=complexified)
        return _robin_free_determinant(nu, alpha, beta, mass, h, complexified)
    # circle conditions
    tau = bc.twist
    ct = math.cos(2.0 * math.pi * tau)
    if abs(tau - round(tau)) < 1e-15 and mass.mu == 0.0:
        if not prime:
            return LogDet(0, math.nan, 0)
        # paper bookkeeping: drop the zero mode's sin^2 factor but keep its
        # (2/h)^2 prefactor, giving Det' = 4 L^2 / h^(2 nu + 2)
        log_abs = math.log(4.0 * spec.L * spec.L) - (2.0 * nu + 2.0) * math.log(h)
        if complexified:
            log_abs *= 2.0
        return LogDet(1, log_abs, 1)
    st, lt = cheb_t_log(nu, x0)
    if st <= 0:
        raise AssertionError("T_nu(x0) must be positive for x0 >= 1")
    # F(0) = 2 (T_nu(x0) - cos 2 pi tau) > 0 away from the tau = 1, mu = 0 point
    diff_log = lt + math.log1p(-ct * math.exp(-lt)) if lt < 700 else lt
    log_dimless = math.log(2.0) + diff_log
    return _logdet_from(1, log_dimless, nu, h, complexified=complexified)


def _robin_free_determinant(nu: int, alpha: float, beta: float, mass: MassParam,
                            h: float, complexified: bool) -> LogDet:
    """(alpha+beta+alpha*beta) U_nu - (alpha+beta-mu^2) U_{nu-1}, normalised."""
    norm = (1.0 + alpha) * (1.0 + beta)
    if abs(norm) < 1e-12:
        raise ValueError("degenerate Robin parameter (alpha or beta = -1); "
                         "use transfer.determinant's polynomial route")
    x0 = mass.x0
    mu2 = mass.mu * mass.mu
    c1 = alpha + beta + alpha * beta
    c2 = -(alpha + beta - mu2)
    s1, l1 = cheb_u_log(nu, x0)
    s2, l2 = cheb_u_log(nu - 1, x0)
    sign, log_p0 = _signed_log_sum(c1 * s1, l1, c2 * s2, l2)
    if sign == 0:
        return LogDet(0, math.nan, 0)
    sign = sign if norm > 0 else -sign
    return _logdet_from(sign, log_p0 - math.log(abs(norm)), nu, h,
                        complexified=complexified)


def _signed_log_sum(c1: float, l1: float, c2: float, l2: float) -> tuple[int, float]:
    """sign and log|c1 e^l1 + c2 e^l2| without leaving the log domain."""
    if c1 == 0.0 and c2 == 0.0:
        return 0, math.nan
    if c1 == 0.0:
        return (1 if c2 > 0 else -1), l2 + math.log(abs(c2))
    if c2 == 0.0:
        return (1 if c1 > 0 else -1), l1 + math.log(abs(c1))
    a1 = l1 + math.log(abs(c1))
    a2 = l2 + math.log(abs(c2))
    if a1 < a2:
        a1, a2, c1, c2 = a2, a1, c2, c1
    rest = math.copysign(math.exp(a2 - a1), c1 * c2)
    total = 1.0 + rest
    if total <= 0.0:
        if total == 0.0:
            return 0, math.nan
        # cancellation to the wrong sign cannot happen: |rest| <= 1
        return 0, math.nan
    return (1 if c1 > 0 else -1), a1 + math.log(total)


def robin_matrix_element(nu: int, alpha: float, beta: float,
                         mass: MassParam | None = None, lam: float = 0.0) -> float:
    """Boundary matrix element out_adjoint . M^nu . in_vector, constant v = mu^2.

    Computed by direct 2x2 iteration; equals
    (a+b+ab) U_nu(x) - (a+b+lambda-mu^2) U_{nu-1}(x) at x = 1+(mu^2-lambda)/2.
    Its zeros are the free Robin eigenvalues; at lambda = 0, dividing by
    (1+a)(1+b) gives the dimensionless determinant, (ab(nu+1)+a+b) / ((1+a)(1+b))
    in the massless case.
    """
    if nu < 0:
        raise ValueError("need nu >= 0")
    mass = mass or MassParam.massless()
    v = mass.mu * mass.mu
    vin = Vec2(1.0, 1.0 + alpha)
    ups = propagate(Potential.constant(nu, v), float(lam), vin)[-1]
    return -1.0 * ups.a + (1.0 + beta) * ups.b


def continuum_limit_targets(bc: BoundaryCondition, mubar: float = 0.0,
                            alphabar: float = 0.0, betabar: float = 0.0,
                            L: float = 1.0) -> float:
    """The h -> 0 target of the suitably rescaled lattice determinant.

    Dirichlet:        h^(2nu+1) Det_D      -> sinh(mubar L)/mubar
    Neumann (primed): h^(2nu-1) Det'_N     -> L            (massless)
    Robin:            h^(2nu-1) Det_R      -> (abar+bbar) cosh(mubar L)
                                              + (abar bbar + mubar^2) sinh(mubar L)/mubar
    Periodic (primed): h^(2nu+2) Det'_P    -> 4 L^2        (massless)
    Twisted:          h^(2nu)   Det^(1/2)  -> 4 sin^2(pi tau)
    """
    z = mubar * L
    sinhc = L if mubar == 0.0 else math.sinh(z) / mubar
    if bc.kind == DIRICHLET:
        return sinhc
    if bc.kind == NEUMANN:
        if mubar == 0.0:
            return L
        return mubar * math.sinh(z) * 1.0  # Robin(0,0) specialisation
    if bc.kind == ROBIN:
        return (alphabar + betabar) * math.cosh(z) + (alphabar * betabar + mubar * mubar) * sinhc
    if bc.kind == PERIODIC:
        return 4.0 * L * L
    if bc.kind == TWISTED:
        return 4.0 * math.sin(math.pi * bc.tau) ** 2
    raise ValueError(f"unknown boundary condition {bc.kind!r}")


def continuum_scaling_exponent(bc: BoundaryCondition, nu: int) -> int:
    """Power p such that h^p * Det approaches the continuum target."""
    if bc.kind == DIRICHLET:
        return 2 * nu + 1
    if bc.kind in (NEUMANN, ROBIN):
        return 2 * nu - 1
    if bc.kind == PERIODIC:
        return 2 * nu + 2
    return 2 * nu
