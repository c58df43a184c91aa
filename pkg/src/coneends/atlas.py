"""Chart atlases for cone surfaces: rectangular interior charts and polar
annular charts around cone points, plus the topological signature.

Fields are sampled on structured per-chart grids; cone charts are periodic in
the angle with period equal to the cone angle, and exclude a small disk
r < r_min around the singular point (fields are only defined outside the
singular locus; limits are tested as trends over shrinking rings).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

R_MIN_DEFAULT = 1e-3


@dataclass(frozen=True)
class ConeSignature:
    """Genus plus cone angles theta_i in (0, pi) at the marked points."""

    genus: int
    angles: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "angles", tuple(float(a) for a in self.angles))
        if self.genus < 0:
            raise DomainError("genus must be >= 0")
        for a in self.angles:
            if not (0.0 < a < math.pi):
                raise DomainError(f"cone angle {a} outside (0, pi)")
        if not self.admissible():
            raise DomainError(
                "signature violates 2*pi*(2-2g) + sum(theta_i - 2*pi) < 0"
            )

    def admissible(self) -> bool:
        return 2 * math.pi * (2 - 2 * self.genus) + sum(
            a - 2 * math.pi for a in self.angles
        ) < 0

    @property
    def chi_orb(self) -> float:
        """Orbifold Euler characteristic chi(Sigma) + sum(theta_i/2pi - 1)."""
        return (2 - 2 * self.genus) + sum(a / (2 * math.pi) - 1.0 for a in self.angles)


@dataclass(frozen=True)
class RectChart:
    """Rectangular grid chart. Axis 0 is x, axis 1 is y.

    `conformal` declares that z = x + iy is a conformal coordinate (used by
    quadratic differentials); fitted non-conformal patches set it False.
    """

    id: str
    nx: int
    ny: int
    hx: float
    hy: float
    x0: float = 0.0
    y0: float = 0.0
    periodic_x: bool = False
    periodic_y: bool = False
    conformal: bool = True

    kind = "rect"

    @property
    def shape(self):
        return (self.nx, self.ny)

    @property
    def spacings(self):
        return (self.hx, self.hy)

    @property
    def periodic(self):
        return (self.periodic_x, self.periodic_y)

    def coords(self):
        x = self.x0 + self.hx * np.arange(self.nx)
        y = self.y0 + self.hy * np.arange(self.ny)
        return np.meshgrid(x, y, indexing="ij")

    def integration_weights(self):
        wx = _trapezoid_weights(self.nx, self.hx, self.periodic_x)
        wy = _trapezoid_weights(self.ny, self.hy, self.periodic_y)
        return np.outer(wx, wy)

    def conformal_z(self):
        """Conformal coordinate z = x + iy at the grid nodes."""
        if not self.conformal:
            raise DomainError(f"chart {self.id!r} carries no conformal coordinate")
        x, y = self.coords()
        return x + 1j * y

    def conformal_jacobian(self):
        """(dz/d axis0, dz/d axis1) at the grid nodes."""
        if not self.conformal:
            raise DomainError(f"chart {self.id!r} carries no conformal coordinate")
        one = np.ones(self.shape, dtype=complex)
        return one, 1j * one


@dataclass(frozen=True)
class PolarChart:
    """Polar annular chart around a cone point. Axis 0 is r, axis 1 is alpha.

    alpha runs over [0, period) with exact periodicity; r over [r_min, r_max].
    """

    id: str
    r_min: float
    r_max: float
    n_r: int
    n_alpha: int
    period: float

    kind = "polar"

    def __post_init__(self):
        if not (0 < self.r_min < self.r_max):
            raise DomainError("need 0 < r_min < r_max")
        if self.period <= 0:
            raise DomainError("angular period must be positive")

    @property
    def shape(self):
        return (self.n_r, self.n_alpha)

    @property
    def h_r(self):
        return (self.r_max - self.r_min) / (self.n_r - 1)

    @property
    def h_alpha(self):
        return self.period / self.n_alpha

    @property
    def spacings(self):
        return (self.h_r, self.h_alpha)

    periodic = (False, True)

    def coords(self):
        r = np.linspace(self.r_min, self.r_max, self.n_r)
        alpha = self.h_alpha * np.arange(self.n_alpha)
        return np.meshgrid(r, alpha, indexing="ij")

    def integration_weights(self):
        wr = _trapezoid_weights(self.n_r, self.h_r, False)
        wa = np.full(self.n_alpha, self.h_alpha)
        return np.outer(wr, wa)

    @property
    def uniformizer_power(self) -> float:
        """Exponent k = 2*pi/theta of the uniformizing coordinate z = u^k."""
        return 2.0 * math.pi / self.period

    def conformal_z(self):
        """Uniformizing coordinate z = (tanh(r/2) e^{i alpha})^{2 pi / theta}.

        z is single-valued on the cone; the model cone metric is conformal in
        it. The simple-pole ring law for quadratic differentials is stated in
        this coordinate.
        """
        r, alpha = self.coords()
        k = self.uniformizer_power
        return np.tanh(0.5 * r) ** k * np.exp(1j * k * alpha)

    def conformal_jacobian(self):
        r, alpha = self.coords()
        k = self.uniformizer_power
        t = np.tanh(0.5 * r)
        phase = np.exp(1j * k * alpha)
        dz_dr = k * t ** (k - 1.0) * 0.5 * (1.0 - t * t) * phase
        dz_dalpha = 1j * k * t ** k * phase
        return dz_dr, dz_dalpha


def _trapezoid_weights(n, h, periodic):
    w = np.full(n, h)
    if not periodic:
        w[0] = 0.5 * h
        w[-1] = 0.5 * h
    return w


@dataclass(frozen=True)
class AffineOverlap:
    """Declared overlap: coords_b = A @ coords_a + shift on a rectangle of
    chart_a coordinates. Enough to audit tensor transformation residuals."""

    chart_a: str
    chart_b: str
    matrix: tuple  # ((a11, a12), (a21, a22))
    shift: tuple  # (s1, s2)
    region_a: tuple  # (x_lo, x_hi, y_lo, y_hi) in chart_a coordinates

    def map_coords(self, xa, ya):
        (a11, a12), (a21, a22) = self.matrix
        s1, s2 = self.shift
        return a11 * xa + a12 * ya + s1, a21 * xa + a22 * ya + s2

    @property
    def jacobian(self):
        return np.asarray(self.matrix, dtype=float)


@dataclass(frozen=True)
class ChartAtlas:
    charts: tuple
    overlaps: tuple = ()
    signature: ConeSignature | None = None

    def __post_init__(self):
        ids = [c.id for c in self.charts]
        if len(set(ids)) != len(ids):
            raise DomainError("chart ids must be unique")

    def __getitem__(self, chart_id: str):
        for c in self.charts:
            if c.id == chart_id:
                return c
        raise KeyError(chart_id)

    @property
    def chart_ids(self):
        return tuple(c.id for c in self.charts)

    def cone_charts(self):
        return tuple(c for c in self.charts if c.kind == "polar")

    def same_as(self, other: "ChartAtlas") -> bool:
        return self.charts == other.charts
