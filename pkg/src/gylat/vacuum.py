"""Lattice Casimir (vacuum) energies and their universal constants.

The vacuum energy is half the sum of the physical mode frequencies,
E = (1/2) sum_n sqrt(lambda_bar_n); for the complexified twisted field the
complex modes carry a factor of two, E = sum_n sqrt(lambda_bar_n).  In the
massless free case the finite sine sums collapse to cotangents, e.g. on the
interval

    E_D = (1/h) sum_{n=1}^{nu} sin(pi n / (2(nu+1)))
        = (1/(2h)) (cot(pi/(4(nu+1))) - 1)
        = 2L/(pi h^2) - 1/(2h) - pi/(24 L) + O(h^2),

whose h-independent term is the zeta-regularised universal value.  The
circle forms (1/h) cot(pi/(2 nu)) etc. reduce to the cot(h/4) expressions
on the unit circle, where h = 2 pi / nu.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .core import (
    DIRICHLET,
    NEUMANN,
    PERIODIC,
    TWISTED,
    BoundaryCondition,
    LatticeSpec,
    Potential,
)
from .closedform import free_eigenvalues


def _mode_weight(bc: BoundaryCondition) -> float:
    # Twisted fields are complex; complexification doubles the half-sum.
    return 1.0 if bc.kind == TWISTED else 0.5


def vacuum_energy(potential: Potential | None, bc: BoundaryCondition,
                  spec: LatticeSpec) -> float:
    """(1/2) sum sqrt(lambda_bar) (doubled for complexified twisted fields).

    A free (or None) potential goes through the closed-form massless
    spectrum, so mode sums stay cheap up to nu ~ 10^4; anything else uses
    the eigenvalue oracle.  Negative eigenvalues raise: no analytic
    continuation is attempted.
    """
    if potential is None:
        potential = Potential.zeros(spec.nu)
    if potential.nu != spec.nu:
        raise ValueError(f"potential has nu={potential.nu}, lattice has nu={spec.nu}")
    if potential.is_free():
        lams = free_eigenvalues(bc, spec).lambdas
    else:
        from .spectrum import oracle_spectrum
        lams = oracle_spectrum(potential, bc).lambdas
    hh = spec.h * spec.h
    floor = -1e-12 * max(abs(x) for x in lams) if lams else 0.0
    roots = []
    for lam in lams:
        if lam < floor:
            raise ValueError(f"negative eigenvalue {lam / hh}: vacuum energy undefined")
        roots.append(math.sqrt(max(lam, 0.0) / hh))
    return _mode_weight(bc) * math.fsum(roots)


def free_energy_closed(bc: BoundaryCondition, spec: LatticeSpec,
                       tau: float | None = None) -> float:
    """Closed-form massless vacuum energy; equals the direct mode sum.

    Dirichlet: (1/(2h)) (cot(pi/(4(nu+1))) - 1)
    Neumann:   (1/(2h)) (cot(pi/(4 nu)) - 1)
    Periodic:  (1/h) cot(pi/(2 nu))             [= (1/h) cot(h/4) at L = 2 pi]
    Twisted:   (2/h) cosec(pi/(2 nu)) cos((pi/(2 nu))(2 tau - 1))
    """
    nu = spec.nu
    h = spec.h
    if nu < 1:
        return 0.0
    if bc.kind == DIRICHLET:
        return 0.5 / h * (1.0 / math.tan(math.pi / (4.0 * (nu + 1))) - 1.0)
    if bc.kind == NEUMANN:
        return 0.5 / h * (1.0 / math.tan(math.pi / (4.0 * nu)) - 1.0)
    if bc.kind == PERIODIC:
        return 1.0 / (h * math.tan(math.pi / (2.0 * nu)))
    if bc.kind == TWISTED:
        t = bc.tau if tau is None else tau
        x = math.pi / (2.0 * nu)
        return 2.0 / (h * math.sin(x)) * math.cos(x * (2.0 * t - 1.0))
    raise ValueError(f"no closed-form vacuum energy for {bc.kind}")


@dataclass(frozen=True)
class EnergyExpansion:
    """Least-squares fit of E(h) on the basis {h^-2, h^-1, 1 (, h, h^2)}.

    ``coefficients`` maps the basis power of h to its fitted coefficient;
    the power-0 entry is the extracted universal constant.
    """

    coefficients: dict[int, float]
    residual_norm: float
    h_values: tuple[float, ...]

    @property
    def constant(self) -> float:
        return self.coefficients[0]


def _admissible_lattice(bc: BoundaryCondition, L: float, h: float) -> LatticeSpec:
    """Snap h to the nearest lattice with an integer vertex count."""
    if bc.is_interval:
        nu = max(1, round(L / h) - 1)
        return LatticeSpec.interval(nu, L=L)
    nu = max(2, round(L / h))
    return LatticeSpec.circle(nu, L=L)


def extract_constant(bc: BoundaryCondition, L: float, h_values,
                     tau: float | None = None,
                     with_positive_powers: bool = False) -> EnergyExpansion:
    """Fit E(h) over a geometric h sweep and extract the universal constant.

    Targets: -pi/(24 L) for Dirichlet and Neumann; on the unit circle
    (L = 2 pi), -1/12 for Periodic and -(1/6 - tau + tau^2) for
    Twisted(tau).  Each requested h snaps to the nearest admissible
    lattice.  Raises when fewer than 5 distinct lattices survive or when
    the fit is too ill-conditioned (advice: widen the h window).
    """
    specs = {}
    for h in h_values:
        spec = _admissible_lattice(bc, L, float(h))
        specs[spec.nu] = spec
    if len(specs) < 5:
        raise ValueError(f"need >= 5 distinct h values (got {len(specs)}); "
                         "use a geometric sweep spanning at least a decade")
    lattices = sorted(specs.values(), key=lambda s: s.h)
    hs = np.array([s.h for s in lattices])
    es = np.array([free_energy_closed(bc, s, tau=tau) for s in lattices])
    powers = [-2, -1, 0] + ([1, 2] if with_positive_powers else [])
    cols = [hs.astype(float) ** p for p in powers]
    design = np.column_stack(cols)
    norms = np.linalg.norm(design, axis=0)
    scaled = design / norms
    cond = np.linalg.cond(scaled)
    if cond > 1e8:
        raise ValueError(f"ill-conditioned fit (cond ~ {cond:.2e}); "
                         "widen the h window")
    coef_scaled, *_ = np.linalg.lstsq(scaled, es, rcond=None)
    coef = coef_scaled / norms
    residual = float(np.linalg.norm(design @ coef - es))
    return EnergyExpansion(
        coefficients={p: float(c) for p, c in zip(powers, coef)},
        residual_norm=residual,
        h_values=tuple(float(h) for h in hs),
    )


@lru_cache(maxsize=None)
def _bernoulli_numbers(n: int) -> tuple[Fraction, ...]:
    """B_0..B_n, exact, B_1 = -1/2 convention."""
    out = [Fraction(1)]
    for m in range(1, n + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += Fraction(math.comb(m + 1, j)) * out[j]
        out.append(-acc / (m + 1))
    return tuple(out)


def bernoulli_polynomial(n: int, x: float) -> float:
    """B_n(x) = sum_k C(n, k) B_k x^(n-k)."""
    bs = _bernoulli_numbers(n)
    return math.fsum(math.comb(n, k) * float(bs[k]) * x ** (n - k) for k in range(n + 1))


def twisted_bernoulli_series(tau: float, h: float, mmax: int) -> float:
    """Partial sum of E(tau) = 2 sum_m (-1)^m/(2m)! B_2m(tau) (h/2)^(2m-2).

    The m = 0 term is 8/h^2 and the m = 1 term is -(1/6 - tau + tau^2);
    truncation at mmax matches the closed form to O(h^(2 mmax)) as h -> 0.
    """
    if not 0.0 < tau <= 1.0:
        raise ValueError(f"tau must lie in (0, 1], got {tau}")
    if mmax > 8:
        raise ValueError("mmax <= 8: treat the expansion as asymptotic")
    total = 0.0
    for m in range(mmax + 1):
        term = 2.0 * (-1.0) ** m / math.factorial(2 * m) \
            * bernoulli_polynomial(2 * m, tau) * (0.5 * h) ** (2 * m - 2)
        total += term
    return total
