#!/usr/bin/env python3
"""Euler-Rayleigh sums: inverse eigenvalue powers from coefficients alone.

The log-derivative of the characteristic polynomial generates the sums
sum_n 1/lambda_n^m without any root finding.  On the free lattice these
become finite cosecant sums with rational closed forms, and for Robin
conditions a compact rational function of (alpha, beta, nu) that survives
the continuum limit.
"""

import math

from gylat import (
    Potential,
    char_poly,
    cosecant_sum,
    dirichlet,
    inverse_power_sums,
    oracle_spectrum,
    robin,
    robin_cosec_sum,
)
from gylat.perturbation import delta_potential

print(__doc__)

# -- cosecant identities --------------------------------------------------------

print("sum_{n<p} cosec^2(pi n / 2p) = (2/3)(p^2 - 1):")
for p in (2, 5, 10, 37):
    got = cosecant_sum(p, 1)
    want = (2 / 3) * (p * p - 1)
    print(f"  p = {p:3d}:  {got:16.10f}  vs  {want:16.10f}")
p = 10 ** 4
scaled = (math.pi / (2 * p)) ** 2 * cosecant_sum(p, 1)
print(f"scaled p -> infinity limit: {scaled:.10f} -> pi^2/6 = {math.pi**2/6:.10f}")
print()

# -- Newton's identities off the polynomial --------------------------------------

nu = 9
pot = Potential.zeros(nu)
sums = inverse_power_sums(char_poly(pot, dirichlet(), exact=True), 4)
lams = oracle_spectrum(pot, dirichlet()).lambdas
print(f"free Dirichlet nu = {nu}: sums from coefficients vs from eigenvalues")
for m, s in enumerate(sums, start=1):
    direct = math.fsum(x ** -m for x in lams)
    print(f"  m = {m}:  {s:18.12f}  vs  {direct:18.12f}")
print()

# -- Robin closed form ------------------------------------------------------------

print("Robin rational closed form for sum 4/lambda (= sum cosec^2 theta):")
for nu, a, b in ((1, 1.0, 0.0), (2, 1.0, 0.0), (12, 0.3, 0.8)):
    got = robin_cosec_sum(nu, a, b)
    lams = oracle_spectrum(Potential.zeros(nu), robin(a, b)).lambdas
    brute = math.fsum(4 / x for x in lams)
    print(f"  nu = {nu:2d}, a = {a}, b = {b}:  {got:14.8f}  vs oracle  {brute:14.8f}")

nu = 10 ** 4
h = 1.0 / (nu + 1)
abar, bbar = 1.0, 2.0
got = h * h * robin_cosec_sum(nu, h * abar, h * bbar) / 4
want = (3 * (abar + bbar) + abar * bbar + 6) / (6 * (abar * bbar + abar + bbar))
print(f"continuum limit (abar={abar}, bbar={bbar}, L=1): "
      f"{got:.8f} -> {want:.8f}")
print()

# -- the delta potential generalises the cosecant sum ------------------------------

nu = 3
res = delta_potential(nu, 2, 1)
sums = inverse_power_sums(res.char_poly, 1)
print(f"delta potential (nu = 3, site 2, v = 1): sum 1/lambda = {sums[0]} "
      f"(the free value 2.5 deformed by the impurity)")
