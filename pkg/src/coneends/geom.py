"""Moebius/PSL(2,C) matrix algebra and the model cone geometries.

Elements are stored as unit-determinant SL(2,C) representatives and compared
projectively (equal up to a global sign).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL
from .errors import DegenerateAxisError, DomainError

INFINITY = complex("inf")


def _is_inf(p) -> bool:
    return p == INFINITY or (isinstance(p, complex) and (cmath.isinf(p)))


class MoebiusMap:
    """A Moebius transformation as a normalized SL(2,C) matrix."""

    __slots__ = ("mat",)

    def __init__(self, mat):
        m = np.asarray(mat, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError("MoebiusMap needs a 2x2 matrix")
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        if det == 0:
            raise ValueError("singular matrix is not a Moebius map")
        m = m / np.sqrt(det)
        self.mat = m
        self.mat.flags.writeable = False

    @classmethod
    def identity(cls) -> "MoebiusMap":
        return cls(np.eye(2))

    @property
    def trace(self) -> complex:
        return self.mat[0, 0] + self.mat[1, 1]

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        return MoebiusMap(self.mat @ other.mat)

    def inverse(self) -> "MoebiusMap":
        a, b, c, d = self.mat.ravel()
        return MoebiusMap(np.array([[d, -b], [-c, a]]))

    def apply(self, z):
        """Act on the Riemann sphere; accepts and returns INFINITY."""
        a, b, c, d = self.mat.ravel()
        if _is_inf(z):
            return INFINITY if c == 0 else a / c
        den = c * z + d
        if den == 0:
            return INFINITY
        return (a * z + b) / den

    def conjugate_by(self, g: "MoebiusMap") -> "MoebiusMap":
        return MoebiusMap(g.mat @ self.mat @ np.linalg.inv(g.mat))

    def proj_distance(self, other: "MoebiusMap") -> float:
        """Distance up to global sign, max-norm on entries."""
        d1 = np.max(np.abs(self.mat - other.mat))
        d2 = np.max(np.abs(self.mat + other.mat))
        return float(min(d1, d2))

    def proj_equal(self, other: "MoebiusMap", tol: float = DEFAULT_TOL.projective) -> bool:
        return self.proj_distance(other) <= tol

    def is_identity(self, tol: float = DEFAULT_TOL.projective) -> bool:
        return self.proj_distance(MoebiusMap.identity()) <= tol

    def fixed_points(self):
        """Both fixed points on the sphere (may coincide for parabolics)."""
        a, b, c, d = self.mat.ravel()
        if abs(c) < 1e-300:
            # z -> (a z + b)/d fixes infinity
            if abs(a - d) < 1e-300:
                return (INFINITY, INFINITY)
            return (b / (d - a), INFINITY)
        disc = np.sqrt(complex((a - d) ** 2 + 4 * b * c))
        return ((a - d - disc) / (2 * c), (a - d + disc) / (2 * c))

    def __repr__(self):
        return f"MoebiusMap({self.mat.tolist()!r})"


def moebius_to_points(p: complex, q: complex) -> MoebiusMap:
    """The map sending (0, infinity) to (p, q)."""
    if p == q:
        raise DegenerateAxisError("endpoints coincide")
    pinf, qinf = _is_inf(p), _is_inf(q)
    if pinf and qinf:
        raise DegenerateAxisError("endpoints coincide at infinity")
    if pinf:
        return MoebiusMap(np.array([[q, 1.0], [1.0, 0.0]]))
    if qinf:
        return MoebiusMap(np.array([[1.0, p], [0.0, 1.0]]))
    return MoebiusMap(np.array([[q, p], [1.0, 1.0]]))


def elliptic_about_axis(p: complex, q: complex, angle: float) -> MoebiusMap:
    """Rotation by `angle` about the oriented geodesic with ideal endpoints (p, q).

    For the axis (0, infinity) this is diag(e^{i angle/2}, e^{-i angle/2});
    trace is 2 cos(angle/2) up to the PSL sign.
    """
    rot = MoebiusMap(np.diag([np.exp(0.5j * angle), np.exp(-0.5j * angle)]))
    t = moebius_to_points(p, q)
    return t @ rot @ t.inverse()


@dataclass(frozen=True)
class MapClass:
    kind: str  # identity | elliptic | parabolic | hyperbolic
    angle: float | None = None
    length: complex | None = None


def classify(m: MoebiusMap, tol: float = 1e-9) -> MapClass:
    """Trace classification; loxodromics are hyperbolic with complex length."""
    tr = m.trace
    tr2 = tr * tr
    if abs(tr2.imag) <= tol:
        t2 = tr2.real
        if abs(t2 - 4.0) <= tol:
            if m.is_identity(math.sqrt(tol)):
                return MapClass("identity")
            return MapClass("parabolic")
        if t2 < 4.0:
            angle = 2.0 * math.acos(min(1.0, abs(tr) / 2.0))
            return MapClass("elliptic", angle=angle)
        return MapClass("hyperbolic", length=2.0 * math.acosh(abs(tr) / 2.0))
    # loxodromic: complex translation length with positive real part
    ell = 2.0 * cmath.acosh(tr / 2.0)
    if ell.real < 0:
        ell = -ell
    return MapClass("hyperbolic", length=ell)


class ModelConeMetric:
    """The model spaces H2_theta, H3_theta and dS3_theta with cone angle theta0.

    Coordinates: H2_cone (r, alpha); H3_cone (rho, r, alpha); dS3_cone
    (t, phi, alpha). alpha has period theta0 in all three.
    """

    KINDS = ("H2_cone", "H3_cone", "dS3_cone")

    def __init__(self, kind: str, angle: float):
        if kind not in self.KINDS:
            raise ValueError(f"unknown model kind {kind!r}")
        if not angle > 0:
            raise DomainError("cone angle must be positive")
        self.kind = kind
        self.angle = float(angle)

    def eval(self, point) -> np.ndarray:
        """Metric components at `point`, as a symmetric 2- or 3-tensor."""
        if self.kind == "H2_cone":
            r, _alpha = point
            if r <= 0:
                raise DomainError("cone chart requires r > 0")
            return np.diag([1.0, math.sinh(r) ** 2])
        if self.kind == "H3_cone":
            rho, r, _alpha = point
            if r <= 0:
                raise DomainError("cone chart requires r > 0")
            c2 = math.cosh(rho) ** 2
            return np.diag([1.0, c2, c2 * math.sinh(r) ** 2])
        t, phi, _alpha = point
        c2 = math.cosh(t) ** 2
        return np.diag([-1.0, c2, c2 * math.sin(phi) ** 2])

    def __repr__(self):
        return f"ModelConeMetric({self.kind!r}, angle={self.angle})"


def model_metric_eval(m: ModelConeMetric, point) -> np.ndarray:
    return m.eval(point)
