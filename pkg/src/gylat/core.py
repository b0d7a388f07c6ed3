"""Shared domain types for 1-d lattice Schrodinger operators.

The operator acts on a scalar field y(j) living on equally spaced vertices.
On the interval there are nu dynamical (interior) vertices plus two boundary
ones, total length L = h*(nu+1); on the circle there are nu vertices and
L = h*nu.  All internal arithmetic is dimensionless: the spectral variable
lambda and the potential v relate to their physical counterparts by

    lambda = h^2 * lambda_bar,    v_j = h^2 * vbar_j.

Physical units enter only through :class:`LatticeSpec` at the API edges.

Two scalar backends coexist.  The float backend is ordinary float64.  The
exact backend keeps every coefficient an ``int`` (or ``Fraction`` when the
inputs are not integers), so identity tests can demand bit-exact equality;
Python integers are arbitrary precision, hence exact arithmetic can never
silently wrap.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

# Relative threshold below which a float coefficient counts as zero when
# determining the degree of a characteristic polynomial.  Robin conditions
# with alpha = -1 or beta = -1 legitimately drop the degree, so this cannot
# be an exact-zero test in float mode.
COEFF_ZERO_RTOL = 1e-12

INTERVAL = "interval"
CIRCLE = "circle"


# ---------------------------------------------------------------------------
# Lattice geometry and potentials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LatticeSpec:
    """Lattice geometry: nu dynamical vertices with spacing h.

    Exactly one of (h, L) is user supplied; the other is derived from
    L = h*(nu+1) on the interval and L = h*nu on the circle.
    """

    nu: int
    h: float
    L: float
    topology: str = INTERVAL

    def __post_init__(self):
        if self.nu < 0:
            raise ValueError(f"nu must be >= 0, got {self.nu}")
        if self.h <= 0 or self.L <= 0:
            raise ValueError("lattice spacing and length must be positive")
        if self.topology not in (INTERVAL, CIRCLE):
            raise ValueError(f"unknown topology {self.topology!r}")

    @property
    def n_links(self) -> int:
        """Number of lattice links: L / h."""
        return self.nu + 1 if self.topology == INTERVAL else self.nu

    @classmethod
    def interval(cls, nu: int, h: float | None = None, L: float | None = None) -> "LatticeSpec":
        h, L = _resolve_spacing(nu + 1, h, L)
        return cls(nu=nu, h=h, L=L, topology=INTERVAL)

    @classmethod
    def circle(cls, nu: int, h: float | None = None, L: float | None = None) -> "LatticeSpec":
        if nu < 1:
            raise ValueError("circle topology needs nu >= 1")
        h, L = _resolve_spacing(nu, h, L)
        return cls(nu=nu, h=h, L=L, topology=CIRCLE)


def _resolve_spacing(links: int, h: float | None, L: float | None) -> tuple[float, float]:
    if (h is None) == (L is None):
        raise ValueError("supply exactly one of h and L")
    if h is not None:
        return float(h), float(h) * links
    return float(L) / links, float(L)


def to_physical(lam: float, spec: LatticeSpec) -> float:
    """Convert a dimensionless eigenvalue to physical units: lambda / h^2."""
    return lam / (spec.h * spec.h)


def to_dimensionless(lambar: float, spec: LatticeSpec) -> float:
    """Inverse of :func:`to_physical`: h^2 * lambda_bar."""
    return lambar * spec.h * spec.h


@dataclass(frozen=True)
class Potential:
    """Dimensionless site potential v_j = h^2 * vbar_j, j = 1..nu.

    ``values[j-1]`` holds v_j.  Entries may be ints/Fractions (exact
    backend) or floats.
    """

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))

    @property
    def nu(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    @classmethod
    def zeros(cls, nu: int) -> "Potential":
        return cls((0,) * nu)

    @classmethod
    def constant(cls, nu: int, v) -> "Potential":
        return cls((v,) * nu)

    @classmethod
    def delta(cls, nu: int, site: int, v) -> "Potential":
        """Potential supported on a single vertex, 1-based ``site``."""
        if not 1 <= site <= nu:
            raise ValueError(f"site {site} outside 1..{nu}")
        vals = [0] * nu
        vals[site - 1] = v
        return cls(tuple(vals))

    @classmethod
    def from_physical(cls, vbar: Sequence[float], h: float) -> "Potential":
        return cls(tuple(h * h * v for v in vbar))

    def to_physical(self, h: float) -> tuple:
        return tuple(v / (h * h) for v in self.values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    def is_free(self) -> bool:
        return all(v == 0 for v in self.values)


def load_potential(source, nu: int | None = None) -> Potential:
    """Load a potential from JSON.

    Accepts a path, an open file object, or a parsed object.  The JSON is
    either a plain array of dimensionless values, or an object
    ``{"physical": [...], "h": x}`` triggering the v = h^2 * vbar
    conversion.
    """
    if isinstance(source, (str, bytes)):
        with open(source) as fh:
            data = json.load(fh)
    elif hasattr(source, "read"):
        data = json.load(source)
    else:
        data = source
    if isinstance(data, dict):
        try:
            vbar = data["physical"]
            h = data["h"]
        except KeyError as exc:
            raise ValueError("potential object needs 'physical' and 'h' keys") from exc
        pot = Potential.from_physical([float(v) for v in vbar], float(h))
    elif isinstance(data, list):
        pot = Potential(tuple(float(v) for v in data))
    else:
        raise ValueError(f"cannot interpret potential JSON of type {type(data).__name__}")
    if nu is not None and pot.nu != nu:
        raise ValueError(f"potential has {pot.nu} entries, lattice wants {nu}")
    return pot


# ---------------------------------------------------------------------------
# Boundary conditions
# ---------------------------------------------------------------------------

DIRICHLET = "dirichlet"
NEUMANN = "neumann"
ROBIN = "robin"
PERIODIC = "periodic"
TWISTED = "twisted"

_INTERVAL_KINDS = (DIRICHLET, NEUMANN, ROBIN)
_CIRCLE_KINDS = (PERIODIC, TWISTED)


@dataclass(frozen=True)
class BoundaryCondition:
    """One of Dirichlet, Neumann, Robin(alpha, beta), Periodic, Twisted(tau).

    Robin parameters are the dimensionless ones in the conditions
    Delta y(0) = alpha*y(0), Delta y(nu) = -beta*y(nu+1); Robin(0, 0) is
    Neumann.  Twisted(tau) imposes y(j+nu) = exp(2*pi*i*tau)*y(j), and
    Twisted(1) is Periodic.
    """

    kind: str
    alpha: float = 0.0
    beta: float = 0.0
    tau: float = 1.0

    def __post_init__(self):
        if self.kind not in _INTERVAL_KINDS + _CIRCLE_KINDS:
            raise ValueError(f"unknown boundary condition {self.kind!r}")
        if self.kind == TWISTED and not 0.0 < self.tau <= 1.0:
            raise ValueError(f"twist parameter must lie in (0, 1], got {self.tau}")

    @property
    def is_interval(self) -> bool:
        return self.kind in _INTERVAL_KINDS

    @property
    def is_circle(self) -> bool:
        return self.kind in _CIRCLE_KINDS

    @property
    def robin_alpha(self):
        """Effective left Robin parameter (0 for Neumann)."""
        return self.alpha if self.kind == ROBIN else 0.0

    @property
    def robin_beta(self):
        return self.beta if self.kind == ROBIN else 0.0

    @property
    def twist(self) -> float:
        """Twist parameter tau; Periodic counts as tau = 1."""
        return self.tau if self.kind == TWISTED else 1.0

    def in_vector(self) -> "Vec2":
        """Seed phase-space vector (y(0), y(1)) fixing the left condition."""
        if self.kind == DIRICHLET:
            return Vec2(0, 1)
        if self.kind in (NEUMANN, ROBIN):
            return Vec2(1, 1 + self.robin_alpha)
        raise ValueError(f"{self.kind} has no in-vector (circle topology)")

    def out_adjoint(self) -> "Vec2":
        """Row vector w such that w . Upsilon(nu) is the eigenvalue polynomial.

        This is the symplectic adjoint of the out vector: for the Robin out
        vector (1+beta, 1) the adjoint row is (-1, 1+beta); for Dirichlet the
        out vector (1, 0) gives (0, 1).
        """
        if self.kind == DIRICHLET:
            return Vec2(0, 1)
        if self.kind in (NEUMANN, ROBIN):
            return Vec2(-1, 1 + self.robin_beta)
        raise ValueError(f"{self.kind} has no out-vector (circle topology)")


def dirichlet() -> BoundaryCondition:
    return BoundaryCondition(DIRICHLET)


def neumann() -> BoundaryCondition:
    return BoundaryCondition(NEUMANN)


def robin(alpha: float, beta: float) -> BoundaryCondition:
    return BoundaryCondition(ROBIN, alpha=alpha, beta=beta)


def periodic() -> BoundaryCondition:
    return BoundaryCondition(PERIODIC)


def twisted(tau: float) -> BoundaryCondition:
    return BoundaryCondition(TWISTED, tau=tau)


ALL_BC_KINDS = _INTERVAL_KINDS + _CIRCLE_KINDS


# ---------------------------------------------------------------------------
# Characteristic polynomials
# ---------------------------------------------------------------------------

def _exactify(x):
    """Lift a scalar into the exact backend (int stays int, float -> Fraction)."""
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    if isinstance(x, float):
        return _exactify(Fraction(x))
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return _exactify(float(x))
    raise TypeError(f"cannot use {type(x).__name__} in exact arithmetic")


class CharPoly:
    """Dense polynomial in the dimensionless spectral variable lambda.

    Coefficients are stored ascending, ``coeffs[k]`` multiplying lambda**k.
    ``backend`` is "float" or "exact"; exact coefficients are ints or
    Fractions and all arithmetic on them is exact.
    """

    __slots__ = ("coeffs", "backend")

    def __init__(self, coeffs: Iterable, backend: str | None = None):
        coeffs = list(coeffs)
        if not coeffs:
            coeffs = [0]
        if backend is None:
            backend = "exact" if all(isinstance(c, (int, Fraction, np.integer)) for c in coeffs) else "float"
        if backend == "exact":
            coeffs = [_exactify(c) for c in coeffs]
            while len(coeffs) > 1 and coeffs[-1] == 0:
                coeffs.pop()
        elif backend == "float":
            coeffs = [float(c) for c in coeffs]
            top = max(abs(c) for c in coeffs)
            cut = COEFF_ZERO_RTOL * top
            while len(coeffs) > 1 and abs(coeffs[-1]) <= cut:
                coeffs.pop()
        else:
            raise ValueError(f"unknown backend {backend!r}")
        self.coeffs = coeffs
        self.backend = backend

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, c, exact: bool = False) -> "CharPoly":
        return cls([c], backend="exact" if exact else None)

    @classmethod
    def lam(cls, exact: bool = False) -> "CharPoly":
        """The monomial lambda."""
        if exact:
            return cls([0, 1], backend="exact")
        return cls([0.0, 1.0], backend="float")

    # -- basic queries -------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def leading(self):
        """Leading coefficient after the backend's zero-trim rule."""
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        if self.backend == "exact":
            return all(c == 0 for c in self.coeffs)
        return all(c == 0.0 for c in self.coeffs)

    def as_floats(self) -> list[float]:
        return [float(c) for c in self.coeffs]

    def to_float(self) -> "CharPoly":
        return CharPoly(self.as_floats(), backend="float")

    def __call__(self, x):
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def derivative(self) -> "CharPoly":
        if self.degree == 0:
            return CharPoly([0], backend=self.backend) if self.backend == "exact" else CharPoly([0.0], backend="float")
        return CharPoly([k * c for k, c in enumerate(self.coeffs)][1:], backend=self.backend)

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> "CharPoly | None":
        if isinstance(other, CharPoly):
            return other
        if isinstance(other, (int, float, Fraction, np.integer, np.floating)):
            backend = self.backend if not isinstance(other, (float, np.floating)) else "float"
            return CharPoly([other], backend=backend)
        return None

    @staticmethod
    def _join(a: "CharPoly", b: "CharPoly") -> str:
        return "exact" if a.backend == b.backend == "exact" else "float"

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        backend = self._join(self, other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return CharPoly(out, backend=backend)

    __radd__ = __add__

    def __neg__(self):
        return CharPoly([-c for c in self.coeffs], backend=self.backend)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        backend = self._join(self, other)
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] = out[i + j] + ca * cb
        return CharPoly(out, backend=backend)

    __rmul__ = __mul__

    def divmod(self, other: "CharPoly") -> tuple["CharPoly", "CharPoly"]:
        """Polynomial division; exact backend divides exactly via Fractions."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        backend = self._join(self, other)
        rem = list(self.coeffs)
        div = other.coeffs
        dq = len(rem) - len(div)
        if dq < 0:
            zero = CharPoly([0], backend=backend)
            return zero, CharPoly(rem, backend=backend)
        lead = div[-1]
        quot = [0] * (dq + 1)
        if backend == "exact":
            lead = Fraction(lead)
        for k in range(dq, -1, -1):
            if backend == "exact":
                q = Fraction(rem[k + len(div) - 1]) / lead
                q = int(q) if q.denominator == 1 else q
            else:
                q = rem[k + len(div) - 1] / lead
            quot[k] = q
            if q != 0:
                for i, c in enumerate(div):
                    rem[k + i] = rem[k + i] - q * c
        return CharPoly(quot, backend=backend), CharPoly(rem[: len(div) - 1] or [0], backend=backend)

    def __eq__(self, other):
        if not isinstance(other, CharPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __repr__(self):
        return f"CharPoly({self.coeffs}, backend={self.backend!r})"


# ---------------------------------------------------------------------------
# 2x2 phase-space algebra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Vec2:
    """Phase-space 2-vector; entries are scalars or CharPoly."""

    a: object
    b: object

    def __iter__(self):
        return iter((self.a, self.b))

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.a + other.a, self.b + other.b)

    def __rmul__(self, s) -> "Vec2":
        return Vec2(s * self.a, s * self.b)

    def dot(self, other: "Vec2"):
        return self.a * other.a + self.b * other.b


@dataclass(frozen=True)
class Mat2:
    """2x2 matrix over scalars or CharPoly entries.

    Layout [[a, b], [c, d]].
    """

    a: object
    b: object
    c: object
    d: object

    def __matmul__(self, other):
        if isinstance(other, Mat2):
            return Mat2(
                self.a * other.a + self.b * other.c,
                self.a * other.b + self.b * other.d,
                self.c * other.a + self.d * other.c,
                self.c * other.b + self.d * other.d,
            )
        if isinstance(other, Vec2):
            return Vec2(self.a * other.a + self.b * other.b,
                        self.c * other.a + self.d * other.b)
        return NotImplemented

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    def transpose(self) -> "Mat2":
        return Mat2(self.a, self.c, self.b, self.d)

    def __add__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __rmul__(self, s) -> "Mat2":
        return Mat2(s * self.a, s * self.b, s * self.c, s * self.d)

    @staticmethod
    def identity(one=1) -> "Mat2":
        zero = one - one
        return Mat2(one, zero, zero, one)

    def norm(self) -> float:
        return math.sqrt(sum(float(x) ** 2 for x in (self.a, self.b, self.c, self.d)))


#: Symplectic metric J = [[0, 1], [-1, 0]]; every step matrix M obeys M~ J M = J.
J = Mat2(0, 1, -1, 0)

#: Projector A = [[0, 0], [0, 1]] from the split M = B - lambda*A.
A_PROJ = Mat2(0, 0, 0, 1)


# ---------------------------------------------------------------------------
# Spectra and log-determinants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Spectrum:
    """Ascending dimensionless eigenvalues; count always equals nu."""

    lambdas: tuple
    spec: LatticeSpec | None = None

    def __post_init__(self):
        object.__setattr__(self, "lambdas", tuple(float(x) for x in self.lambdas))

    def __len__(self) -> int:
        return len(self.lambdas)

    def __iter__(self):
        return iter(self.lambdas)

    def __getitem__(self, i):
        return self.lambdas[i]

    @property
    def physical(self) -> tuple:
        """Eigenvalues in physical units, lambda / h^2."""
        if self.spec is None:
            raise ValueError("no LatticeSpec attached; cannot convert to physical units")
        hh = self.spec.h * self.spec.h
        return tuple(x / hh for x in self.lambdas)

    def with_spec(self, spec: LatticeSpec) -> "Spectrum":
        return Spectrum(self.lambdas, spec)


@dataclass(frozen=True)
class LogDet:
    """Determinant as (sign, log|Det|), overflow-proof at the h^(-2*nu) scale.

    ``sign == 0`` flags a vanishing determinant (zero mode); ``log_abs`` is
    then meaningless.  ``zero_modes_removed`` is nonzero only for primed
    determinants.
    """

    sign: int
    log_abs: float
    zero_modes_removed: int = 0

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or +1")

    @classmethod
    def from_value(cls, x: float, zero_modes_removed: int = 0) -> "LogDet":
        if x == 0:
            return cls(0, math.nan, zero_modes_removed)
        return cls(1 if x > 0 else -1, math.log(abs(x)), zero_modes_removed)

    @property
    def value(self) -> float:
        """exp back to a plain float; overflows to +-inf for large logs."""
        if self.sign == 0:
            return 0.0
        try:
            mag = math.exp(self.log_abs)
        except OverflowError:
            mag = math.inf
        return self.sign * mag

    @property
    def log10_abs(self) -> float:
        return self.log_abs / math.log(10.0)

    def scaled_value(self, log_scale: float) -> float:
        """sign * exp(log_abs + log_scale); used for h^p * Det limits."""
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_abs + log_scale)
