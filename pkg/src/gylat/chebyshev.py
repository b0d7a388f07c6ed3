"""Chebyshev polynomials of the first (T), second (U) and third (V) kinds.

These are the free propagators of the lattice problem: U_n solves the free
recurrence with the Dirichlet seed, V_n = U_n - U_{n-1} with the Neumann
seed, and the n-th power of the driving matrix C(x) = [[0, 1], [-1, 2x]]
collects them all,

    C^n = [[-U_{n-2}, U_{n-1}], [-U_{n-1}, U_n]].

Everything is evaluated by the three-term recurrence

    P_{n+1} = 2x P_n - P_{n-1}

seeded appropriately (U_{-2} = -1, U_{-1} = 0), never by sinh/sin ratios,
so one code path covers the oscillatory (|x| < 1), boundary (|x| = 1) and
hyperbolic (|x| > 1) regimes.  A separate log-scaled path exists for the
hyperbolic regime when the recurrence would overflow float64.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .core import CharPoly, Mat2

# Beyond this value of n*acosh|x| the recurrence leaves float64 range soon
# enough that callers should switch to the log-scaled path.
LOG_PATH_THRESHOLD = 300.0


def cheb_u(n: int, x):
    """Chebyshev U_n(x) by recurrence; n >= -2 with U_{-2} = -1, U_{-1} = 0.

    Works on any scalar supporting ring arithmetic (float, int, Fraction,
    CharPoly).
    """
    if n < -2:
        raise ValueError(f"cheb_u needs n >= -2, got {n}")
    zero = x - x
    if n == -2:
        return zero - 1
    if n == -1:
        return zero
    prev, cur = zero, zero + 1  # U_{-1}, U_0
    for _ in range(n):
        prev, cur = cur, 2 * x * cur - prev
    return cur


def cheb_u_pair(n: int, x):
    """(U_{n-1}(x), U_n(x)) in one recurrence sweep; n >= 0."""
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    zero = x - x
    prev, cur = zero, zero + 1
    for _ in range(n):
        prev, cur = cur, 2 * x * cur - prev
    return prev, cur


def cheb_v(n: int, x):
    """Third-kind V_n = U_n - U_{n-1}; equals cosh((2n+1)g)/cosh(g) at x = cosh 2g."""
    if n < 0:
        raise ValueError(f"cheb_v needs n >= 0, got {n}")
    um1, un = cheb_u_pair(n, x)
    return un - um1


def cheb_t(n: int, x):
    """First-kind T_n = (U_n - U_{n-2})/2; tr C^n = 2 T_n."""
    if n < 0:
        raise ValueError(f"cheb_t needs n >= 0, got {n}")
    if n == 0:
        return (x - x) + 1
    um1, un = cheb_u_pair(n, x)
    unm2 = 2 * x * um1 - un  # one downward recurrence step
    diff = un - unm2
    if isinstance(diff, int):
        return diff // 2 if diff % 2 == 0 else Fraction(diff, 2)
    if isinstance(diff, Fraction):
        return diff / 2
    return diff * 0.5


def cheb_matrix_power(n: int, x) -> Mat2:
    """C(x)^n with C = [[0, 1], [-1, 2x]]; the empty product is the identity."""
    if n < 0:
        raise ValueError(f"cheb_matrix_power needs n >= 0, got {n}")
    um1, un = cheb_u_pair(n, x)
    if n == 0:
        unm2 = (x - x) - 1  # U_{-2}
    else:
        unm2 = 2 * x * um1 - un
    return Mat2(-unm2, um1, -um1, un)


def _poly_step(p_prev: CharPoly, p_cur: CharPoly) -> CharPoly:
    """Advance P_{k+1} = (2 - lambda) P_k - P_{k-1}, i.e. x = 1 - lambda/2."""
    shifted = CharPoly([0] + p_cur.coeffs, backend=p_cur.backend)  # lambda * P_k
    return 2 * p_cur - shifted - p_prev


def _poly_by_recurrence(n: int, seed_prev, seed_cur) -> CharPoly:
    prev = CharPoly(seed_prev, backend="exact")
    cur = CharPoly(seed_cur, backend="exact")
    for _ in range(n):
        prev, cur = cur, _poly_step(prev, cur)
    return cur


def cheb_u_poly(n: int) -> CharPoly:
    """Exact integer coefficients of U_n(1 - lambda/2) in lambda; n >= 0.

    2x = 2 - lambda has integer coefficients, so the recurrence stays in
    integer arithmetic throughout; Python ints cannot overflow.
    """
    if n < 0:
        raise ValueError(f"cheb_u_poly needs n >= 0, got {n}")
    return _poly_by_recurrence(n, [0], [1])


def cheb_v_poly(n: int) -> CharPoly:
    """Exact coefficients of V_n(1 - lambda/2); V_{-1} = 1 seeds the recurrence."""
    if n < 0:
        raise ValueError(f"cheb_v_poly needs n >= 0, got {n}")
    return _poly_by_recurrence(n, [1], [1])


def cheb_t_poly(n: int) -> CharPoly:
    """Exact coefficients of T_n(1 - lambda/2); T_0 = 1, T_1 = x."""
    if n < 0:
        raise ValueError(f"cheb_t_poly needs n >= 0, got {n}")
    if n == 0:
        return CharPoly([1], backend="exact")
    # Run the recurrence on 2*T_n to stay integral, halve at the end.
    twice = _poly_by_recurrence(n - 1, [2], [2, -1])
    return CharPoly([Fraction(c, 2) for c in twice.coeffs], backend="exact")


def cheb_u_log(n: int, x: float) -> tuple[int, float]:
    """(sign, log|U_n(x)|) valid far outside float64 range; n >= 0.

    For |x| <= 1 or small n*acosh|x| this defers to the recurrence.  In the
    deep hyperbolic regime it uses U_n(x) = sinh((n+1)t)/sinh t with
    t = acosh|x| evaluated in the log domain, plus the parity flip
    U_n(-x) = (-1)^n U_n(x).
    """
    if n < 0:
        raise ValueError(f"cheb_u_log needs n >= 0, got {n}")
    ax = abs(float(x))
    if ax <= 1.0 or (n + 1) * math.acosh(ax) <= LOG_PATH_THRESHOLD:
        val = cheb_u(n, float(x))
        if val == 0.0:
            return 0, -math.inf
        return (1 if val > 0 else -1), math.log(abs(val))
    t = math.acosh(ax)
    log_mag = _log_sinh((n + 1) * t) - _log_sinh(t)
    sign = -1 if (x < 0 and n % 2 == 1) else 1
    return sign, log_mag


def cheb_t_log(n: int, x: float) -> tuple[int, float]:
    """(sign, log|T_n(x)|) companion of :func:`cheb_u_log`."""
    if n < 0:
        raise ValueError(f"cheb_t_log needs n >= 0, got {n}")
    ax = abs(float(x))
    if ax <= 1.0 or n * math.acosh(ax) <= LOG_PATH_THRESHOLD:
        val = cheb_t(n, float(x))
        if val == 0.0:
            return 0, -math.inf
        return (1 if val > 0 else -1), math.log(abs(val))
    t = math.acosh(ax)
    sign = -1 if (x < 0 and n % 2 == 1) else 1
    return sign, _log_cosh(n * t)


def _log_sinh(z: float) -> float:
    if z > 30.0:
        return z - math.log(2.0) + math.log1p(-math.exp(-2.0 * z))
    return math.log(math.sinh(z))


def _log_cosh(z: float) -> float:
    if z > 30.0:
        return z - math.log(2.0) + math.log1p(math.exp(-2.0 * z))
    return math.log(math.cosh(z))
