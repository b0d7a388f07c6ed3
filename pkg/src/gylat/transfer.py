"""Transfer-matrix machinery for arbitrary site potentials.

The second-order recurrence

    y(j+1) + (lambda - v_j - 2) y(j) + y(j-1) = 0

becomes first order for the phase-space vector Upsilon(j) = (y(j), y(j+1)):

    Upsilon(j) = M(j) Upsilon(j-1),    M(j) = [[0, 1], [-1, v_j + 2 - lambda]].

det M(j) = 1, so propagation is symplectic.  Boundary conditions enter only
through an in-vector and the symplectic adjoint of an out-vector; the
characteristic polynomial is the matrix element

    P(lambda) = out_adjoint . M(nu) ... M(1) . in_vector,

whose roots are the nu dimensionless eigenvalues and whose value at
lambda = 0, normalised by the leading coefficient, gives the determinant.
On the circle the eigenvalue condition is tr K(lambda; nu) = 2 cos(2 pi tau)
instead.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .core import (
    CIRCLE,
    BoundaryCondition,
    CharPoly,
    LatticeSpec,
    LogDet,
    Mat2,
    Potential,
    Spectrum,
    Vec2,
    _exactify,
)

# Above this nu, polynomial propagation risks float64 coefficient overflow
# (coefficients grow like 4^nu); determinant() switches to scalar
# log-rescaled propagation at lambda = 0.
POLY_PROPAGATION_MAX_NU = 400

# |lambda_bar| below this fraction of max_n |lambda_bar_n| counts as a zero
# mode when forming primed determinants.
ZERO_MODE_RTOL = 1e-10

# Mantissas are renormalised once they exceed this during scalar propagation.
_RESCALE_AT = 1e150


def step_matrix(v, lam) -> Mat2:
    """One-site step matrix [[0, 1], [-1, v + 2 - lambda]]; det = 1."""
    zero = lam - lam
    one = zero + 1
    return Mat2(zero, one, -one, v + 2 - lam)


def casoratian(a: Vec2, b: Vec2):
    """Discrete Wronskian a~ J b; constant along any two solutions."""
    return a.a * b.b - a.b * b.a


def propagate(potential: Potential, lam, v0: Vec2) -> list[Vec2]:
    """All phase-space vectors Upsilon(j) = M(j)...M(1) v0 for j = 0..nu."""
    out = [v0]
    cur = v0
    for v in potential:
        cur = step_matrix(v, lam) @ cur
        out.append(cur)
    return out


class Propagator:
    """Vertex-ordered products K(lambda; j, j') = M(j)...M(j'+1), j >= j'.

    K(lambda; j, j) is the identity; requests with j < j' are rejected
    (causal propagation).  Entries may be scalars or CharPoly, depending on
    ``lam``.  Prefix products K(j, 0) are cached lazily.
    """

    def __init__(self, potential: Potential, lam):
        self.potential = potential
        self.lam = lam
        self._one = (lam - lam) + 1
        self._prefix = [Mat2.identity(self._one)]

    def step(self, j: int) -> Mat2:
        return step_matrix(self.potential.values[j - 1], self.lam)

    def matrix(self, j: int, jprime: int = 0) -> Mat2:
        nu = len(self.potential)
        if not (0 <= jprime <= nu and 0 <= j <= nu):
            raise ValueError(f"indices ({j}, {jprime}) outside 0..{nu}")
        if j < jprime:
            raise ValueError(f"acausal propagator request: j = {j} < j' = {jprime}")
        if jprime == 0:
            while len(self._prefix) <= j:
                k = len(self._prefix)
                self._prefix.append(self.step(k) @ self._prefix[k - 1])
            return self._prefix[j]
        acc = Mat2.identity(self._one)
        for k in range(jprime + 1, j + 1):
            acc = self.step(k) @ acc
        return acc


def char_poly(potential: Potential, bc: BoundaryCondition, exact: bool = False) -> CharPoly:
    """Characteristic polynomial P(lambda); roots are the eigenvalues.

    Interval conditions use the boundary matrix element; circle conditions
    use tr K(lambda; nu) - 2 cos(2 pi tau), still a degree-nu real
    polynomial (doubly degenerate periodic eigenvalues appear as double
    roots).  nu = 0 yields a constant polynomial, not an error.
    """
    backend = "exact" if exact else "float"
    lam = CharPoly.lam(exact=exact)
    # A float scalar would silently drag the arithmetic back to the float
    # backend, so lift the potential into exact scalars up front.
    vals = [_exactify(v) for v in potential] if exact else list(potential)
    if bc.is_interval:
        vin = bc.in_vector()
        out = bc.out_adjoint()
        if exact:
            vin = Vec2(_exactify(vin.a), _exactify(vin.b))
            out = Vec2(_exactify(out.a), _exactify(out.b))
        cur = Vec2(CharPoly([vin.a], backend=backend), CharPoly([vin.b], backend=backend))
        for v in vals:
            cur = step_matrix(v, lam) @ cur
        return out.a * cur.a + out.b * cur.b
    if potential.nu < 1:
        raise ValueError("circle topology needs nu >= 1")
    acc = Mat2.identity(CharPoly([1], backend=backend))
    for v in vals:
        acc = step_matrix(v, lam) @ acc
    return acc.trace() - _twist_shift(bc.twist, exact)


def _twist_shift(tau: float, exact: bool):
    """2 cos(2 pi tau); kept exact at the rational points the tests pin."""
    if exact:
        if tau == 1.0:
            return 2
        if tau == 0.5:
            return -2
        if tau in (0.25, 0.75):
            return 0
        return Fraction(2.0 * math.cos(2.0 * math.pi * tau))
    return 2.0 * math.cos(2.0 * math.pi * tau)


def periodic_char_fn(potential: Potential, tau: float, lam: float) -> float:
    """tr K(lambda; nu) - 2 cos(2 pi tau); zeros are the twisted eigenvalues."""
    if potential.nu < 1:
        raise ValueError("circle topology needs nu >= 1")
    acc = Mat2.identity(1.0)
    for v in potential:
        acc = step_matrix(float(v), float(lam)) @ acc
    return acc.trace() - 2.0 * math.cos(2.0 * math.pi * tau)


def _scaled_scalar_p0(potential: Potential, bc: BoundaryCondition) -> tuple[float, float, float]:
    """P(0) by rescaled scalar propagation, as (mantissa, log_scale, ref).

    P(0) = mantissa * exp(log_scale); ``ref`` is the magnitude of the final
    propagated components, the natural yardstick for a zero test.
    """
    log_scale = 0.0
    if bc.is_interval:
        vin = bc.in_vector()
        a, b = float(vin.a), float(vin.b)
        for v in potential:
            a, b = b, -a + (float(v) + 2.0) * b
            m = max(abs(a), abs(b))
            if m > _RESCALE_AT:
                a /= m
                b /= m
                log_scale += math.log(m)
        out = bc.out_adjoint()
        return float(out.a) * a + float(out.b) * b, log_scale, max(abs(a), abs(b), 1e-300)
    acc = Mat2.identity(1.0)
    for v in potential:
        acc = step_matrix(float(v), 0.0) @ acc
        m = acc.norm()
        if m > _RESCALE_AT:
            acc = (1.0 / m) * acc
            log_scale += math.log(m)
    shift = 2.0 * math.cos(2.0 * math.pi * bc.twist) * math.exp(-min(log_scale, 745.0))
    return acc.trace() - shift, log_scale, max(acc.norm(), 1e-300)


def _leading_factor(bc: BoundaryCondition) -> float:
    """Signed s in the leading coefficient a = s * (-1)^nu.

    (1+alpha)(1+beta) for interval conditions, 1 on the circle.  Degenerate
    Robin (alpha or beta = -1) drops the degree; callers must then use the
    polynomial route.
    """
    if bc.is_interval:
        return (1.0 + bc.robin_alpha) * (1.0 + bc.robin_beta)
    return 1.0


def determinant(potential: Potential, bc: BoundaryCondition, spec: LatticeSpec,
                prime: bool = False) -> LogDet:
    """Operator determinant as a LogDet: Det = (-1)^d P(0)/a * h^(-2 nu).

    ``a`` is the polynomial's actual leading coefficient and d its actual
    degree, so the value is the product of the physical eigenvalues and is
    insensitive to the overall scale of P (robust to degenerate Robin
    parameters).  With ``prime`` set, eigenvalues with
    |lambda_bar| < 1e-10 * max|lambda_bar| are removed from the product via
    the eigenvalue oracle (each removal also drops one factor of h^-2) and
    counted in ``zero_modes_removed``.
    """
    nu = potential.nu
    if nu != spec.nu:
        raise ValueError(f"potential has nu={nu}, lattice spec has nu={spec.nu}")
    if bc.is_circle != (spec.topology == CIRCLE):
        raise ValueError(f"{bc.kind} conditions do not fit {spec.topology} topology")
    if nu == 0:
        return LogDet(1, 0.0, 0)  # empty product
    if prime:
        return _primed_determinant(potential, bc, spec)

    log_h2nu = -2.0 * nu * math.log(spec.h)
    # P(0) always comes from the rescaled scalar propagation: it cannot
    # overflow and its running magnitude is the right yardstick for "the
    # determinant vanishes" (the polynomial's large mid coefficients are not).
    p0, log_scale, ref = _scaled_scalar_p0(potential, bc)
    if abs(p0) <= 1e-11 * ref:
        return LogDet(0, math.nan, 0)

    lead_factor = _leading_factor(bc)
    degree = nu
    if abs(lead_factor) < 1e-10:
        # degenerate Robin: the degree drops; read the actual leading
        # coefficient off the polynomial (small-nu only)
        if nu > POLY_PROPAGATION_MAX_NU:
            raise ValueError(
                "degenerate Robin condition (alpha or beta near -1) needs the "
                f"polynomial route, only available for nu <= {POLY_PROPAGATION_MAX_NU}")
        poly = char_poly(potential, bc)
        degree = poly.degree
        lead = poly.leading()
    else:
        lead = lead_factor * (-1) ** nu
    # Det = (-1)^degree P(0)/lead * h^(-2 nu)
    sign = (-1) ** degree * (1 if p0 > 0 else -1) * (1 if lead > 0 else -1)
    log_abs = math.log(abs(p0)) + log_scale - math.log(abs(lead)) + log_h2nu
    return LogDet(sign, log_abs, 0)


def _primed_determinant(potential: Potential, bc: BoundaryCondition, spec: LatticeSpec) -> LogDet:
    from .spectrum import ORACLE_MAX_NU, oracle_spectrum

    if potential.nu > ORACLE_MAX_NU:
        raise ValueError(
            f"primed determinant needs the eigenvalue oracle, unavailable for nu > {ORACLE_MAX_NU}")
    lams = oracle_spectrum(potential, bc).lambdas
    hh = spec.h * spec.h
    lambar = [x / hh for x in lams]
    top = max(abs(x) for x in lambar)
    if top == 0.0:
        return LogDet(1, 0.0, len(lambar))
    keep = [x for x in lambar if abs(x) > ZERO_MODE_RTOL * top]
    removed = len(lambar) - len(keep)
    if not keep:
        return LogDet(1, 0.0, removed)
    sign = -1 if sum(1 for x in keep if x < 0) % 2 else 1
    log_abs = math.fsum(math.log(abs(x)) for x in keep)
    return LogDet(sign, log_abs, removed)


def _terminal_residual(potential: Potential, bc: BoundaryCondition, lam: float):
    """out_adjoint . Upsilon(nu) and its lambda-derivative, by joint propagation."""
    vin = bc.in_vector()
    a, b = float(vin.a), float(vin.b)
    da = db = 0.0
    for v in potential:
        w = float(v) + 2.0 - lam
        a, b, da, db = b, -a + w * b, db, -da + w * db - b
    out = bc.out_adjoint()
    oa, ob = float(out.a), float(out.b)
    return oa * a + ob * b, oa * da + ob * db


def eigenfunctions(potential: Potential, bc: BoundaryCondition, spectrum: Spectrum) -> np.ndarray:
    """Table y_n(j), n = 0..nu-1, j = 1..nu, as an (nu, nu) float array.

    Row n is the eigenfunction at spectrum[n], obtained by propagating the
    boundary condition's in-vector at lambda = lambda_n.  Each lambda is
    first polished by a couple of Newton steps on the terminal boundary
    residual, so the propagated row meets the outgoing condition to machine
    precision (a raw oracle eigenvalue leaves an O(1e-13) residual that
    near-degenerate pairs would amplify).  Only interval conditions are
    supported (circle eigenfunctions are complex and not fixed by an
    in-vector).
    """
    if not bc.is_interval:
        raise ValueError("eigenfunctions via in-vector propagation need an interval condition")
    nu = potential.nu
    if len(spectrum) != nu:
        raise ValueError(f"spectrum has {len(spectrum)} entries, potential has nu={nu}")
    table = np.empty((nu, nu))
    vin = bc.in_vector()
    for n, lam in enumerate(spectrum):
        lam = float(lam)
        for _ in range(3):
            res, slope = _terminal_residual(potential, bc, lam)
            if slope == 0.0:
                break
            step = res / slope
            if abs(step) > 1e-6 * max(1.0, abs(lam)):
                break  # not in the Newton basin; keep the caller's value
            lam -= step
            if abs(step) <= 1e-16 * max(1.0, abs(lam)):
                break
        ups = propagate(potential, lam, Vec2(float(vin.a), float(vin.b)))
        # Upsilon(j) = (y(j), y(j+1)); y(j) for j = 1..nu is the top entry.
        table[n, :] = [ups[j].a for j in range(1, nu + 1)]
    return table
