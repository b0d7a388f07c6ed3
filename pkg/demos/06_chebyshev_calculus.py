#!/usr/bin/env python3
"""The two-matrix Chebyshev calculus behind the free propagators.

Everything about Chebyshev polynomials that the lattice needs follows from
powers of one 2x2 matrix, C(x) = [[0, 1], [-1, 2x]]:

    C^n = [[-U_{n-2}, U_{n-1}], [-U_{n-1}, U_n]].

det C = 1 gives the Turan identity; C^m C^n = C^{m+n} gives the composition
rule and, iterated, the character product series; (1 - Ct)^{-1} packages the
generating function; and the seed vector selects the kind - (0,1) gives the
second kind U (Dirichlet), (1,1) the third kind V (Neumann).
"""

from fractions import Fraction

from gylat import (
    cheb_matrix_power,
    cheb_t,
    cheb_u,
    cheb_u_poly,
    cheb_v_poly,
)

print(__doc__)

x = Fraction(5, 4)

print(f"matrix powers at x = {x}:")
for n in (0, 1, 2, 5):
    m = cheb_matrix_power(n, x)
    print(f"  C^{n} = [[{m.a}, {m.b}], [{m.c}, {m.d}]]   det = {m.det()}")
print()

print("Turan identity U_{n-1}^2 - U_n U_{n-2} = 1 (det of the power):")
for n in (3, 10, 25):
    lhs = cheb_u(n - 1, x) ** 2 - cheb_u(n, x) * cheb_u(n - 2, x)
    print(f"  n = {n:2d}: {lhs}")
print()

print("composition U_{m+n} = U_m U_n - U_{m-1} U_{n-1} (group law C^m C^n = C^{m+n}):")
m, n = 4, 7
print(f"  U_{m+n} = {cheb_u(m + n, x)}")
print(f"  U_{m} U_{n} - U_{m-1} U_{n-1} = "
      f"{cheb_u(m, x) * cheb_u(n, x) - cheb_u(m - 1, x) * cheb_u(n - 1, x)}")
print()

print("character product series (parity-stepped):")
m, n = 3, 5
rhs = [f"U_{k}" for k in range(n - m, n + m + 1, 2)]
total = sum(cheb_u(k, x) for k in range(n - m, n + m + 1, 2))
print(f"  U_3 U_5 = {' + '.join(rhs)}: {cheb_u(m, x) * cheb_u(n, x)} = {total}")
print()

print("generating function 1/(1 - 2tx + t^2) = sum U_n t^n (lower-right of (1-Ct)^-1):")
t = Fraction(1, 3)
xs = Fraction(1, 2)
partial = sum(cheb_u(k, xs) * t ** k for k in range(60))
exact = 1 / (1 - 2 * t * xs + t * t)
print(f"  60 terms at x = {xs}, t = {t}: {float(partial):.15f}  vs  {float(exact):.15f}")
print()

print("kinds from seeds: V_n = U_n - U_{n-1} (the (1,1) seed), and in lambda")
print("with x = 1 - lambda/2 the polynomials stay integer:")
for n in (1, 2, 3):
    print(f"  U_{n}: {cheb_u_poly(n).coeffs}    V_{n}: {cheb_v_poly(n).coeffs}")
print()
print(f"first kind via the trace, 2 T_n = tr C^n:  T_5({x}) = {cheb_t(5, x)} "
      f"= {Fraction(cheb_matrix_power(5, x).trace(), 2)}")
