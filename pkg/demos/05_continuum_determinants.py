#!/usr/bin/env python3
"""The h -> 0 limit: lattice determinants against zeta-regularised values.

Rescaled by the right power of h, the lattice determinants converge at
second order to continuum functional determinants: sinh(mubar L)/mubar for
Dirichlet (half the zeta value), L for the primed massless Neumann, the
Robin combination (abar + bbar) cosh(mubar L) + (abar bbar + mubar^2)
sinh(mubar L)/mubar, and 4 sin^2(pi tau) for a twisted circle, which the
lattice hits exactly at every nu.
"""

import math

from gylat import (
    LatticeSpec,
    MassParam,
    Potential,
    continuum_limit_targets,
    continuum_scaling_exponent,
    determinant,
    dirichlet,
    free_determinant,
    neumann,
    robin,
    twisted,
)

print(__doc__)

# -- Dirichlet with mass -------------------------------------------------------

mubar, L = 1.0, 1.0
target = continuum_limit_targets(dirichlet(), mubar, L=L)
print(f"h^(2nu+1) Det_D(mubar=1, L=1) -> sinh(1) = {target:.10f}")
prev_err = None
for nu in (25, 100, 400, 1600):
    spec = LatticeSpec.interval(nu, L=L)
    m = MassParam.physical(mubar, spec)
    pot = Potential.constant(nu, m.mu ** 2)
    ld = determinant(pot, dirichlet(), spec)
    val = ld.scaled_value(continuum_scaling_exponent(dirichlet(), nu) * math.log(spec.h))
    err = abs(val - target)
    order = "" if prev_err is None else f"   order {math.log(prev_err / err) / math.log(4):.3f}"
    print(f"  nu = {nu:5d}:  {val:.12f}   err {err:.3e}{order}")
    prev_err = err
print()

# -- Robin --------------------------------------------------------------------

abar, bbar = 1.0, 2.0
target = continuum_limit_targets(robin(0, 0), mubar, abar, bbar, L=L)
print(f"h^(2nu-1) Det_R(abar=1, bbar=2, mubar=1) -> {target:.10f}")
for nu in (100, 1000, 10000):
    spec = LatticeSpec.interval(nu, L=L)
    m = MassParam.physical(mubar, spec)
    pot = Potential.constant(nu, m.mu ** 2)
    bc = robin(abar * spec.h, bbar * spec.h)  # dimensionless alpha = h abar
    ld = determinant(pot, bc, spec)
    val = ld.scaled_value(continuum_scaling_exponent(bc, nu) * math.log(spec.h))
    print(f"  nu = {nu:5d}:  {val:.10f}   rel err {abs(val - target) / target:.3e}")
print()

# -- primed Neumann -------------------------------------------------------------

print("h^(2nu-1) Det'_N(0) -> L (zero mode removed):")
for nu in (10, 100, 1000):
    spec = LatticeSpec.interval(nu, L=2.5)
    ld = free_determinant(neumann(), spec, prime=True)
    val = ld.scaled_value(continuum_scaling_exponent(neumann(), nu) * math.log(spec.h))
    print(f"  nu = {nu:5d}:  {val:.10f}   (L = 2.5, lattice value nu*h = {nu * spec.h:.10f})")
print()

# -- twisted circle is exact at finite nu ------------------------------------------

print("h^(2nu) Det^(1/2)_tw(tau) = 4 sin^2(pi tau) exactly, already at finite nu:")
for tau in (0.25, 0.5):
    for nu in (3, 30):
        spec = LatticeSpec.circle(nu, L=2 * math.pi)
        ld = free_determinant(twisted(tau), spec)
        val = ld.scaled_value(2 * nu * math.log(spec.h))
        print(f"  tau = {tau}, nu = {nu:3d}:  {val:.12f}  "
              f"(4 sin^2 = {4 * math.sin(math.pi * tau) ** 2:.12f})")
