"""Sampled tensor fields on a chart atlas.

Per chart, a MetricField stores symmetric 2x2 matrices (shape (n0, n1, 2, 2)),
an OperatorField stores general 2x2 matrices, and a ScalarField stores reals.
All fields are immutable snapshots; operations return new fields.
"""

from __future__ import annotations

import numpy as np

from .atlas import ChartAtlas
from .errors import AtlasMismatchError, NonPositiveDefiniteError


def _check_same_atlas(*fields):
    base = fields[0].atlas
    for f in fields[1:]:
        if f.atlas is not base and not base.same_as(f.atlas):
            raise AtlasMismatchError("fields live on different atlases")
    return base


class _FieldBase:
    def __init__(self, atlas: ChartAtlas, data: dict, role: str = ""):
        self.atlas = atlas
        self.role = role
        self.data = {}
        for chart in atlas.charts:
            if chart.id not in data:
                raise KeyError(f"missing samples for chart {chart.id!r}")
            arr = np.asarray(data[chart.id], dtype=float)
            expected = chart.shape + self._extra_shape
            if arr.shape != expected:
                raise ValueError(
                    f"chart {chart.id!r}: expected shape {expected}, got {arr.shape}"
                )
            arr = arr.copy()
            arr.flags.writeable = False
            self.data[chart.id] = arr

    def chart_values(self, chart_id: str) -> np.ndarray:
        return self.data[chart_id]

    def map(self, fn, role: str = ""):
        """New field of the same kind with fn applied per chart array."""
        return type(self)(
            self.atlas,
            {cid: fn(arr, cid) for cid, arr in self.data.items()},
            role=role or self.role,
        )

    def max_abs(self) -> float:
        return max(float(np.max(np.abs(a))) for a in self.data.values())


class ScalarField(_FieldBase):
    _extra_shape = ()

    def __init__(self, atlas, data, role=""):
        super().__init__(atlas, data, role)
        for cid, arr in self.data.items():
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"non-finite scalar sample on chart {cid!r}")

    @classmethod
    def constant(cls, atlas, value, role=""):
        return cls(
            atlas,
            {c.id: np.full(c.shape, float(value)) for c in atlas.charts},
            role=role,
        )


class MetricField(_FieldBase):
    """Symmetric positive-definite (0,2)-tensor samples in chart coordinates."""

    _extra_shape = (2, 2)

    def __init__(self, atlas, data, role="", known_curvature: float | None = None,
                 require_positive=True):
        super().__init__(atlas, data, role)
        self.known_curvature = known_curvature
        for cid, arr in self.data.items():
            if np.max(np.abs(arr[..., 0, 1] - arr[..., 1, 0])) > 1e-12 * (
                1.0 + np.max(np.abs(arr))
            ):
                raise ValueError(f"metric samples not symmetric on chart {cid!r}")
            if require_positive:
                det = arr[..., 0, 0] * arr[..., 1, 1] - arr[..., 0, 1] * arr[..., 1, 0]
                bad = (det <= 0) | (arr[..., 0, 0] <= 0)
                if np.any(bad):
                    idx = tuple(int(k[0]) for k in np.nonzero(bad))
                    raise NonPositiveDefiniteError(
                        f"metric not positive definite on chart {cid!r} at index {idx}"
                    )

    def det(self) -> dict:
        return {
            cid: a[..., 0, 0] * a[..., 1, 1] - a[..., 0, 1] * a[..., 1, 0]
            for cid, a in self.data.items()
        }

    def inverse(self) -> dict:
        out = {}
        for cid, a in self.data.items():
            det = a[..., 0, 0] * a[..., 1, 1] - a[..., 0, 1] * a[..., 1, 0]
            inv = np.empty_like(a)
            inv[..., 0, 0] = a[..., 1, 1]
            inv[..., 1, 1] = a[..., 0, 0]
            inv[..., 0, 1] = -a[..., 0, 1]
            inv[..., 1, 0] = -a[..., 1, 0]
            out[cid] = inv / det[..., None, None]
        return out


class SymmetricForm(MetricField):
    """Symmetric bilinear form that need not be definite (e.g. II*)."""

    def __init__(self, atlas, data, role="", known_curvature=None):
        super().__init__(
            atlas, data, role, known_curvature=known_curvature, require_positive=False
        )


class OperatorField(_FieldBase):
    """(1,1)-tensor samples, i.e. per-sample 2x2 matrices in chart bases."""

    _extra_shape = (2, 2)

    @classmethod
    def identity(cls, atlas, role="E"):
        eye = np.eye(2)
        return cls(
            atlas,
            {c.id: np.broadcast_to(eye, c.shape + (2, 2)).copy() for c in atlas.charts},
            role=role,
        )

    def det(self) -> dict:
        return {
            cid: a[..., 0, 0] * a[..., 1, 1] - a[..., 0, 1] * a[..., 1, 0]
            for cid, a in self.data.items()
        }

    def trace(self) -> dict:
        return {cid: a[..., 0, 0] + a[..., 1, 1] for cid, a in self.data.items()}

    def inverse(self, singular_tol=0.0):
        out = {}
        for cid, a in self.data.items():
            det = a[..., 0, 0] * a[..., 1, 1] - a[..., 0, 1] * a[..., 1, 0]
            if np.any(np.abs(det) <= singular_tol):
                raise ValueError(f"operator singular on chart {cid!r}")
            inv = np.empty_like(a)
            inv[..., 0, 0] = a[..., 1, 1]
            inv[..., 1, 1] = a[..., 0, 0]
            inv[..., 0, 1] = -a[..., 0, 1]
            inv[..., 1, 0] = -a[..., 1, 0]
            out[cid] = inv / det[..., None, None]
        return OperatorField(self.atlas, out, role=f"({self.role})^-1")


def self_adjointness_residual(g: MetricField, a: OperatorField) -> float:
    """max over samples of || g a - (g a)^T || relative to field scale."""
    _check_same_atlas(g, a)
    worst = 0.0
    for cid in g.data:
        ga = np.einsum("...ij,...jk->...ik", g.data[cid], a.data[cid])
        asym = np.max(np.abs(ga - np.swapaxes(ga, -1, -2)))
        scale = 1.0 + np.max(np.abs(ga))
        worst = max(worst, float(asym / scale))
    return worst


def metric_apply_operator(g: MetricField, a: OperatorField, role="") -> MetricField:
    """The pullback g(A . , A .) as a new metric-shaped field (A^T g A)."""
    _check_same_atlas(g, a)
    data = {}
    for cid in g.data:
        am = a.data[cid]
        data[cid] = np.einsum("...ji,...jk,...kl->...il", am, g.data[cid], am)
    return SymmetricForm(g.atlas, data, role=role)


def operator_from_forms(g: MetricField, s: MetricField, role="") -> OperatorField:
    """g^{-1} s: the shape-operator-style (1,1)-tensor of a pair (g, s)."""
    _check_same_atlas(g, s)
    ginv = g.inverse()
    data = {
        cid: np.einsum("...ij,...jk->...ik", ginv[cid], s.data[cid]) for cid in g.data
    }
    return OperatorField(g.atlas, data, role=role)
