"""Quadratic differentials, the data at infinity (I*, II*), the admissibility
condition on that data, and the gauge relation between equivalent data.

A datum is a hyperbolic cone metric I* together with II* = I*/2 + Re q for a
meromorphic quadratic differential q with at-worst-simple poles at the cone
points. Admissibility ("star condition"): II* Codazzi with respect to I*,
trace_{I*} II* = -K_{I*}, and det_{I*} II* bounded over the atlas.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .atlas import ChartAtlas
from .curvature import (
    codazzi_residual_form,
    christoffels,
    gauss_curvature,
    refinement_rate,
    _chart_d1,
    _chart_d2,
    _chart_dmix,
)
from .errors import InvalidDifferentialError
from .fields import (
    MetricField,
    OperatorField,
    ScalarField,
    SymmetricForm,
    _check_same_atlas,
    operator_from_forms,
)
from .reports import Report


class QuadDiff:
    """Sampled meromorphic quadratic differential q = f(z) dz^2.

    Values are f in the chart's conformal coordinate: z = x + iy on interior
    charts, the uniformizing coordinate on cone charts. Pole orders are the
    declared orders at the cone points (0 or 1), audited by ring tests.
    """

    def __init__(self, atlas: ChartAtlas, values: dict, pole_orders=()):
        self.atlas = atlas
        self.values = {}
        for chart in atlas.charts:
            arr = np.asarray(values[chart.id], dtype=complex)
            if arr.shape != chart.shape:
                raise ValueError(f"chart {chart.id!r}: bad quad-diff sample shape")
            arr = arr.copy()
            arr.flags.writeable = False
            self.values[chart.id] = arr
        self.pole_orders = tuple(int(p) for p in pole_orders)
        n_cone = len(atlas.cone_charts())
        if len(self.pole_orders) != n_cone:
            raise ValueError(f"need one declared pole order per cone chart ({n_cone})")
        if any(p not in (0, 1) for p in self.pole_orders):
            raise InvalidDifferentialError("pole orders must be 0 or 1")

    @classmethod
    def zero(cls, atlas):
        return cls(
            atlas,
            {c.id: np.zeros(c.shape, dtype=complex) for c in atlas.charts},
            pole_orders=(0,) * len(atlas.cone_charts()),
        )

    @classmethod
    def from_function(cls, atlas, f, pole_orders=()):
        """Sample f(z) on every chart's conformal coordinate."""
        vals = {c.id: f(c.conformal_z()) for c in atlas.charts}
        if not pole_orders:
            pole_orders = (0,) * len(atlas.cone_charts())
        return cls(atlas, vals, pole_orders=pole_orders)

    def real_part_form(self, role="Re q") -> SymmetricForm:
        """Re(f dz^2) as a symmetric bilinear form in chart coordinates.

        Components are Re(f * dz_i * dz_j); on a conformal chart this is the
        matrix [[Re f, -Im f], [-Im f, -Re f]].
        """
        data = {}
        for chart in self.atlas.charts:
            d0, d1 = chart.conformal_jacobian()
            f = self.values[chart.id]
            m = np.empty(chart.shape + (2, 2))
            m[..., 0, 0] = (f * d0 * d0).real
            m[..., 0, 1] = (f * d0 * d1).real
            m[..., 1, 0] = m[..., 0, 1]
            m[..., 1, 1] = (f * d1 * d1).real
            data[chart.id] = m
        return SymmetricForm(self.atlas, data, role=role)

    def cauchy_riemann_residual(self) -> float:
        """Max |df/dzbar| over interior conformal rect charts."""
        worst = 0.0
        for chart in self.atlas.charts:
            if chart.kind != "rect" or not chart.conformal:
                continue
            f = self.values[chart.id]
            fx = _chart_d1(chart, f.real, 0) + 1j * _chart_d1(chart, f.imag, 0)
            fy = _chart_d1(chart, f.real, 1) + 1j * _chart_d1(chart, f.imag, 1)
            worst = max(worst, float(np.max(np.abs(0.5 * (fx + 1j * fy)))))
        return worst

    def ring_audit(self, chart_id: str):
        """(|f| |z|, |f| |z|^2) maxima per ring on a cone chart, innermost first."""
        chart = self.atlas[chart_id]
        z = chart.conformal_z()
        f = self.values[chart_id]
        w1 = np.max(np.abs(f) * np.abs(z), axis=1)
        w2 = np.max(np.abs(f) * np.abs(z) ** 2, axis=1)
        return w1, w2

    def audit_poles(self, floor: float = 1e-14):
        """Raise unless |f| |z| stays bounded and |f| |z|^2 -> 0 at each cone."""
        for chart in self.atlas.cone_charts():
            w1, w2 = self.ring_audit(chart.id)
            scale = float(np.max(w1)) + floor
            if w1[0] > 1.5 * w1[-1] + floor * scale + floor:
                raise InvalidDifferentialError(
                    f"|f||z| grows toward cone point on chart {chart.id!r}"
                )
            if not (w2[0] <= 0.3 * w2[-1] + floor):
                raise InvalidDifferentialError(
                    f"|f||z|^2 does not vanish toward cone point on chart {chart.id!r}"
                    " (pole order >= 2)"
                )


@dataclass(frozen=True)
class InfinityData:
    """The pair (I*, II*) with the derived operator B* = (I*)^{-1} II*."""

    Istar: MetricField
    IIstar: SymmetricForm
    Bstar: OperatorField

    @classmethod
    def assemble(cls, Istar: MetricField, IIstar: SymmetricForm) -> "InfinityData":
        _check_same_atlas(Istar, IIstar)
        return cls(Istar, IIstar, operator_from_forms(Istar, IIstar, role="B*"))

    @property
    def atlas(self) -> ChartAtlas:
        return self.Istar.atlas

    def trace_residual(self) -> float:
        """max |trace B* - 1| (exact for data built over hyperbolic I*)."""
        return max(float(np.max(np.abs(t - 1.0))) for t in self.Bstar.trace().values())

    def det_bstar(self) -> dict:
        return self.Bstar.det()


def data_from_qd(Istar: MetricField, q: QuadDiff, tol_trace: float = 1e-10) -> InfinityData:
    """Assemble the datum II* = I*/2 + Re q over a hyperbolic cone metric I*.

    Rejects differentials whose ring audit detects a pole of order >= 2.
    B* tends to E/2 on shrinking rings at the cone points; see
    cone_ring_audit for the trend test.
    """
    if q.atlas is not Istar.atlas and not Istar.atlas.same_as(q.atlas):
        raise ValueError("quadratic differential lives on a different atlas")
    q.audit_poles()
    re_q = q.real_part_form()
    data = {
        cid: 0.5 * Istar.data[cid] + re_q.data[cid] for cid in Istar.data
    }
    IIstar = SymmetricForm(Istar.atlas, data, role="II*")
    d = InfinityData.assemble(Istar, IIstar)
    res = d.trace_residual()
    if res > tol_trace:
        raise InvalidDifferentialError(
            f"trace of B* deviates from 1 by {res:.3e}; Re q is not trace-free"
        )
    return d


def cone_ring_audit(d: InfinityData) -> dict:
    """Per cone chart: max |eigenvalues of B* - 1/2| per ring, innermost first."""
    out = {}
    for chart in d.atlas.cone_charts():
        b = d.Bstar.data[chart.id]
        tr = b[..., 0, 0] + b[..., 1, 1]
        det = b[..., 0, 0] * b[..., 1, 1] - b[..., 0, 1] * b[..., 1, 0]
        disc = np.sqrt(np.maximum(tr * tr - 4.0 * det, 0.0))
        dev = np.maximum(
            np.abs(0.5 * (tr + disc) - 0.5), np.abs(0.5 * (tr - disc) - 0.5)
        )
        out[chart.id] = np.max(dev, axis=1)
    return out


def condition_star_residuals(d: InfinityData) -> dict:
    """Numeric admissibility residuals (finite-difference based throughout)."""
    cod = codazzi_residual_form(d.Istar, d.IIstar).max_abs()
    k_fd = gauss_curvature(d.Istar)
    tr = d.Bstar.trace()
    trace_fd = 0.0
    for cid in tr:
        # trace_{I*} II* = trace B*; compare against -K pointwise
        trace_fd = max(trace_fd, float(np.max(np.abs(tr[cid] + k_fd.data[cid]))))
    det_sup = max(float(np.max(np.abs(v))) for v in d.det_bstar().values())
    out = {"codazzi": cod, "trace_fd": trace_fd, "det_sup": det_sup}
    if d.Istar.known_curvature is not None:
        out["trace_exact"] = max(
            float(np.max(np.abs(t + d.Istar.known_curvature))) for t in tr.values()
        )
    return out


def condition_star_report(
    d: InfinityData,
    fine: InfinityData | None = None,
    tol_trace_exact: float = 1e-8,
    tol_trace_fd: float = 5e-2,
    tol_codazzi_abs: float = 1e-3,
    det_bound: float = 1e3,
) -> Report:
    """Three-item admissibility report: Codazzi, trace identity, det bound.

    With `fine` (same datum at doubled resolution) the Codazzi item checks
    the refinement decay order; otherwise an absolute tolerance. The trace
    item uses the declared constant curvature of I* when available and the
    finite-difference curvature otherwise.
    """
    res = condition_star_residuals(d)
    rep = Report("condition-star")

    if fine is not None:
        fine_res = condition_star_residuals(fine)
        rate = refinement_rate(res["codazzi"], fine_res["codazzi"])
        rep.add("codazzi", rate >= 0.8, rate,
                detail=f"decay order; residuals {res['codazzi']:.3e} -> {fine_res['codazzi']:.3e}")
    else:
        rep.add("codazzi", res["codazzi"] <= tol_codazzi_abs, res["codazzi"],
                detail="absolute residual (no refinement data)")

    if "trace_exact" in res:
        rep.add("trace_identity", res["trace_exact"] <= tol_trace_exact,
                res["trace_exact"],
                detail=f"vs declared curvature; fd residual {res['trace_fd']:.3e}")
    else:
        rep.add("trace_identity", res["trace_fd"] <= tol_trace_fd, res["trace_fd"],
                detail="vs finite-difference curvature")

    rep.add("det_bounded", res["det_sup"] <= det_bound, res["det_sup"],
            detail=f"sup |det_I* II*| (bound {det_bound:g})")
    return rep


def gauge_transform(d: InfinityData, u: ScalarField) -> InfinityData:
    """The equivalent datum I* -> e^{2u} I*,
    II* -> II* + Hess(u) - du (x) du + ||du||^2_{I*} I* / 2.

    Hessian, gradient and norm use the Levi-Civita connection and inverse
    metric of the input I*. Admissibility is preserved (same end/spacetime).
    """
    _check_same_atlas(d.Istar, u)
    atlas = d.atlas
    new_I, new_II = {}, {}
    ginv = d.Istar.inverse()
    for chart in atlas.charts:
        cid = chart.id
        uu = u.data[cid]
        du0 = _chart_d1(chart, uu, 0)
        du1 = _chart_d1(chart, uu, 1)
        hess = np.empty(chart.shape + (2, 2))
        hess[..., 0, 0] = _chart_d2(chart, uu, 0)
        hess[..., 1, 1] = _chart_d2(chart, uu, 1)
        hess[..., 0, 1] = _chart_dmix(chart, uu)
        hess[..., 1, 0] = hess[..., 0, 1]
        gamma = christoffels(d.Istar, cid)
        for i in range(2):
            for j in range(2):
                hess[..., i, j] -= gamma[..., 0, i, j] * du0 + gamma[..., 1, i, j] * du1
        du = np.stack([du0, du1], axis=-1)
        dudu = du[..., :, None] * du[..., None, :]
        grad_sq = np.einsum("...ij,...i,...j->...", ginv[cid], du, du)
        gI = d.Istar.data[cid]
        new_I[cid] = np.exp(2.0 * uu)[..., None, None] * gI
        new_II[cid] = (
            d.IIstar.data[cid] + hess - dudu + 0.5 * grad_sq[..., None, None] * gI
        )
    known = None
    if d.Istar.known_curvature is not None:
        vals = np.concatenate([a.ravel() for a in u.data.values()])
        if np.max(vals) - np.min(vals) <= 1e-14:
            known = d.Istar.known_curvature * float(np.exp(-2.0 * vals[0]))
    Istar2 = MetricField(atlas, new_I, role=d.Istar.role, known_curvature=known)
    IIstar2 = SymmetricForm(atlas, new_II, role=d.IIstar.role)
    return InfinityData.assemble(Istar2, IIstar2)
