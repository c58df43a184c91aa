"""Finite-difference curvature, Codazzi residuals, eigenvalue fields and the
normalized-pair verifier.

Stencils are centered second order, one-sided at chart edges, exactly periodic
in the angle of polar charts. The Levi-Civita connection comes from Christoffel
symbols of the sampled metric; there is no symbolic differentiation.
"""

from __future__ import annotations

import math

import numpy as np

from ._accel import deriv1, deriv2, deriv_mixed
from .atlas import ChartAtlas, ConeSignature
from .errors import DomainError, SingularMorphismError
from .fields import (
    MetricField,
    OperatorField,
    ScalarField,
    SymmetricForm,
    _check_same_atlas,
    metric_apply_operator,
    self_adjointness_residual,
)
from .reports import Report


def _chart_d1(chart, f, axis):
    return deriv1(f, chart.spacings[axis], axis, chart.periodic[axis])


def _chart_d2(chart, f, axis):
    return deriv2(f, chart.spacings[axis], axis, chart.periodic[axis])


def _chart_dmix(chart, f):
    hx, hy = chart.spacings
    px, py = chart.periodic
    return deriv_mixed(f, hx, hy, px, py)


def gauss_curvature(g: MetricField) -> ScalarField:
    """Pointwise Gauss curvature by the Brioschi formula on each chart."""
    out = {}
    for chart in g.atlas.charts:
        a = g.data[chart.id]
        E, F, G = a[..., 0, 0], a[..., 0, 1], a[..., 1, 1]
        det = E * G - F * F
        if np.any(det <= 0):
            idx = tuple(int(k[0]) for k in np.nonzero(det <= 0))
            raise SingularMorphismError(
                f"metric degenerate on chart {chart.id!r} at index {idx}"
            )
        E_x, E_y = _chart_d1(chart, E, 0), _chart_d1(chart, E, 1)
        G_x, G_y = _chart_d1(chart, G, 0), _chart_d1(chart, G, 1)
        F_x, F_y = _chart_d1(chart, F, 0), _chart_d1(chart, F, 1)
        E_yy = _chart_d2(chart, E, 1)
        G_xx = _chart_d2(chart, G, 0)
        F_xy = _chart_dmix(chart, F)

        m00 = -0.5 * E_yy + F_xy - 0.5 * G_xx
        m01, m02 = 0.5 * E_x, F_x - 0.5 * E_y
        m10, m11, m12 = F_y - 0.5 * G_x, E, F
        m20, m21, m22 = 0.5 * G_y, F, G
        det1 = (
            m00 * (m11 * m22 - m12 * m21)
            - m01 * (m10 * m22 - m12 * m20)
            + m02 * (m10 * m21 - m11 * m20)
        )
        n01, n02 = 0.5 * E_y, 0.5 * G_x
        det2 = -n01 * (n01 * m22 - m12 * n02) + n02 * (n01 * m21 - m11 * n02)
        out[chart.id] = (det1 - det2) / (det * det)
    return ScalarField(g.atlas, out, role=f"K[{g.role}]")


def christoffels(g: MetricField, chart_id: str) -> np.ndarray:
    """Gamma^k_{ij} of the sampled metric on one chart, shape (n0,n1,2,2,2)."""
    chart = g.atlas[chart_id]
    a = g.data[chart_id]
    dg = np.empty(a.shape[:2] + (2, 2, 2))  # dg[..., l, i, j] = d_l g_ij
    for l in range(2):
        for i in range(2):
            for j in range(2):
                dg[..., l, i, j] = _chart_d1(chart, a[..., i, j], l)
    det = a[..., 0, 0] * a[..., 1, 1] - a[..., 0, 1] * a[..., 1, 0]
    ginv = np.empty_like(a)
    ginv[..., 0, 0] = a[..., 1, 1]
    ginv[..., 1, 1] = a[..., 0, 0]
    ginv[..., 0, 1] = -a[..., 0, 1]
    ginv[..., 1, 0] = -a[..., 1, 0]
    ginv = ginv / det[..., None, None]
    # Gamma^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij)
    gamma = np.empty(a.shape[:2] + (2, 2, 2))
    for k in range(2):
        for i in range(2):
            for j in range(2):
                s = np.zeros(a.shape[:2])
                for l in range(2):
                    s += ginv[..., k, l] * (
                        dg[..., i, j, l] + dg[..., j, i, l] - dg[..., l, i, j]
                    )
                gamma[..., k, i, j] = 0.5 * s
    return gamma


def curvature_via_morphism(g: MetricField, a: OperatorField) -> ScalarField:
    """K of h = g(A., A.) as K_g / det(A), for invertible Codazzi A."""
    _check_same_atlas(g, a)
    kg = gauss_curvature(g)
    out = {}
    for cid, am in a.data.items():
        det = am[..., 0, 0] * am[..., 1, 1] - am[..., 0, 1] * am[..., 1, 0]
        if np.any(det == 0):
            idx = tuple(int(k[0]) for k in np.nonzero(det == 0))
            raise SingularMorphismError(
                f"det(A) = 0 on chart {cid!r} at index {idx}"
            )
        out[cid] = kg.data[cid] / det
    return ScalarField(g.atlas, out, role=f"K[{g.role}(A.,A.)]")


def codazzi_residual(g: MetricField, a: OperatorField) -> ScalarField:
    """Pointwise g-norm of d^nabla A for a (1,1)-tensor field A.

    The single independent component is the vector
    V^k = d_1 A^k_2 - d_2 A^k_1 + Gamma^k_{1m} A^m_2 - Gamma^k_{2m} A^m_1.
    Exact zero is unreachable in floating point; callers compare against a
    refinement law.
    """
    _check_same_atlas(g, a)
    out = {}
    for chart in g.atlas.charts:
        cid = chart.id
        gamma = christoffels(g, cid)
        am = a.data[cid]
        v = np.empty(am.shape[:2] + (2,))
        for k in range(2):
            v[..., k] = _chart_d1(chart, am[..., k, 1], 0) - _chart_d1(
                chart, am[..., k, 0], 1
            )
            for m in range(2):
                v[..., k] += (
                    gamma[..., k, 0, m] * am[..., m, 1]
                    - gamma[..., k, 1, m] * am[..., m, 0]
                )
        gm = g.data[cid]
        norm2 = np.einsum("...ij,...i,...j->...", gm, v, v)
        out[cid] = np.sqrt(np.maximum(norm2, 0.0))
    return ScalarField(g.atlas, out, role=f"codazzi[{a.role}]")


def codazzi_residual_form(g: MetricField, s: MetricField) -> ScalarField:
    """Pointwise norm of d^nabla S for a symmetric bilinear form S.

    Component T_k = d_1 S_2k - d_2 S_1k + Gamma^m_{2k} S_1m - Gamma^m_{1k} S_2m,
    measured in the g^{-1} norm.
    """
    _check_same_atlas(g, s)
    out = {}
    ginv = g.inverse()
    for chart in g.atlas.charts:
        cid = chart.id
        gamma = christoffels(g, cid)
        sm = s.data[cid]
        t = np.empty(sm.shape[:2] + (2,))
        for k in range(2):
            t[..., k] = _chart_d1(chart, sm[..., 1, k], 0) - _chart_d1(
                chart, sm[..., 0, k], 1
            )
            for m in range(2):
                t[..., k] += (
                    gamma[..., m, 1, k] * sm[..., 0, m]
                    - gamma[..., m, 0, k] * sm[..., 1, m]
                )
        norm2 = np.einsum("...ij,...i,...j->...", ginv[cid], t, t)
        out[cid] = np.sqrt(np.maximum(norm2, 0.0))
    return ScalarField(g.atlas, out, role=f"codazzi[{s.role}]")


def eigenvalue_fields(g: MetricField, a: OperatorField, tol: float = 1e-8):
    """Ordered eigenvalue fields (lambda >= mu) of a g-self-adjoint operator."""
    res = self_adjointness_residual(g, a)
    if res > tol:
        raise ValueError(f"operator not self-adjoint for g: residual {res:.3e}")
    lams, mus = {}, {}
    for cid, am in a.data.items():
        tr = am[..., 0, 0] + am[..., 1, 1]
        det = am[..., 0, 0] * am[..., 1, 1] - am[..., 0, 1] * am[..., 1, 0]
        disc = np.sqrt(np.maximum(tr * tr - 4.0 * det, 0.0))
        lams[cid] = 0.5 * (tr + disc)
        mus[cid] = 0.5 * (tr - disc)
    return (
        ScalarField(g.atlas, lams, role="lambda"),
        ScalarField(g.atlas, mus, role="mu"),
    )


def gauss_bonnet_area(sig: ConeSignature, curvature: float) -> float:
    """Area of a constant-curvature-K cone surface: (2 pi / |K|) |chi_orb|."""
    if curvature >= 0:
        raise DomainError("constant curvature must be negative")
    return 2.0 * math.pi / abs(curvature) * abs(sig.chi_orb)


def area(g: MetricField) -> float:
    """Numerically integrated area of the metric over the atlas."""
    total = 0.0
    for chart in g.atlas.charts:
        a = g.data[chart.id]
        det = a[..., 0, 0] * a[..., 1, 1] - a[..., 0, 1] * a[..., 1, 0]
        total += float(np.sum(np.sqrt(np.maximum(det, 0.0)) * chart.integration_weights()))
    return total


# ---------------------------------------------------------------------------
# refinement and ring-trend helpers


def refinement_rate(coarse: float, fine: float, floor: float = 1e-11) -> float:
    """Measured decay order under one grid halving; large when below floor."""
    if fine <= floor:
        return math.inf if coarse <= floor else math.log2(max(coarse, floor) / floor)
    return math.log2(coarse / fine) if coarse > 0 else 0.0


def ring_deviation(field: ScalarField, chart_id: str) -> np.ndarray:
    """Max |value| per polar ring (axis 0 = r), innermost first."""
    return np.max(np.abs(field.data[chart_id]), axis=1)


def ring_trend_decreasing(dev: np.ndarray, floor: float = 1e-10) -> bool:
    """True when the deviation shrinks toward the cone point (or is ~zero)."""
    dev = np.asarray(dev, dtype=float)
    if float(np.max(dev)) <= floor:
        return True
    inner = float(np.mean(dev[: max(1, len(dev) // 4)]))
    outer = float(np.mean(dev[-max(1, len(dev) // 4):]))
    return inner <= 0.9 * outer


# ---------------------------------------------------------------------------
# normalized-pair verifier (bundle-morphism characterization, used as a check)


def verify_normalized_pair(
    h: MetricField,
    hprime: MetricField,
    b: OperatorField,
    fine: tuple | None = None,
    tol_adjoint: float = 1e-8,
    tol_det: float = 1e-8,
    tol_match: float = 1e-8,
    tol_codazzi_abs: float = 1e-3,
) -> Report:
    """Five-item check that (h, h') is a normalized pair realized by b.

    (i) b self-adjoint for h; (ii) det b = 1; (iii) Codazzi residual
    refinement-consistent (needs `fine` = (h, h', b) at doubled resolution;
    otherwise checked against an absolute tolerance); (iv) h(b., b.) = h';
    (v) both eigenvalues of b tend to 1 at each cone chart center.
    """
    _check_same_atlas(h, hprime, b)
    rep = Report("normalized-pair")

    res_adj = self_adjointness_residual(h, b)
    rep.add("self_adjoint", res_adj <= tol_adjoint, res_adj)

    det_dev = max(float(np.max(np.abs(d - 1.0))) for d in b.det().values())
    rep.add("unit_determinant", det_dev <= tol_det, det_dev,
            detail="max |det b - 1|")

    cod = codazzi_residual(h, b)
    cod_max = cod.max_abs()
    if fine is not None:
        fh, _fhp, fb = fine
        cod_fine = codazzi_residual(fh, fb).max_abs()
        rate = refinement_rate(cod_max, cod_fine)
        rep.add("codazzi", rate >= 0.8, rate,
                detail=f"decay order under halving; residuals {cod_max:.3e} -> {cod_fine:.3e}")
    else:
        rep.add("codazzi", cod_max <= tol_codazzi_abs, cod_max,
                detail="absolute residual (no refinement data)")

    pulled = metric_apply_operator(h, b)
    dev = 0.0
    for cid in h.data:
        scale = np.max(np.abs(hprime.data[cid]))
        dev = max(dev, float(np.max(np.abs(pulled.data[cid] - hprime.data[cid])) / scale))
    rep.add("pullback_matches", dev <= tol_match, dev,
            detail="max rel |h(b.,b.) - h'|")

    lam, mu = eigenvalue_fields(h, b, tol=max(tol_adjoint, 10 * res_adj))
    trend_ok, worst = True, 0.0
    for chart in h.atlas.cone_charts():
        dev_ring = np.maximum(
            np.max(np.abs(lam.data[chart.id] - 1.0), axis=1),
            np.max(np.abs(mu.data[chart.id] - 1.0), axis=1),
        )
        worst = max(worst, float(dev_ring[0]))
        if not ring_trend_decreasing(dev_ring):
            trend_ok = False
    if not h.atlas.cone_charts():
        rep.add("eigenvalues_to_one", False, None,
                detail="no cone charts on atlas; limit untestable")
    else:
        rep.add("eigenvalues_to_one", trend_ok, worst,
                detail="innermost-ring |eig - 1| with decreasing trend")
    return rep


# ---------------------------------------------------------------------------
# overlap audit


def overlap_residual(g: MetricField) -> float:
    """Max relative tensor-transformation residual over declared overlaps.

    For an affine overlap coords_b = A coords_a + s, compares g_a with
    J^T g_b(phi(x)) J at chart-a nodes inside the declared region, with g_b
    interpolated bilinearly.
    """
    worst = 0.0
    for ov in g.atlas.overlaps:
        ca = g.atlas[ov.chart_a]
        cb = g.atlas[ov.chart_b]
        xa, ya = ca.coords()
        xlo, xhi, ylo, yhi = ov.region_a
        mask = (xa >= xlo) & (xa <= xhi) & (ya >= ylo) & (ya <= yhi)
        if not np.any(mask):
            continue
        xb, yb = ov.map_coords(xa[mask], ya[mask])
        gb = _bilinear_matrix(cb, g.data[ov.chart_b], xb, yb)
        jac = ov.jacobian
        pulled = np.einsum("ji,...jk,kl->...il", jac, gb, jac)
        ga = g.data[ov.chart_a][mask]
        scale = np.max(np.abs(ga))
        worst = max(worst, float(np.max(np.abs(pulled - ga)) / scale))
    return worst


def _bilinear_matrix(chart, values, x, y):
    fx = (np.asarray(x) - chart.x0) / chart.hx
    fy = (np.asarray(y) - chart.y0) / chart.hy
    i0 = np.clip(np.floor(fx).astype(int), 0, chart.nx - 2)
    j0 = np.clip(np.floor(fy).astype(int), 0, chart.ny - 2)
    tx = (fx - i0)[..., None, None]
    ty = (fy - j0)[..., None, None]
    v00 = values[i0, j0]
    v10 = values[i0 + 1, j0]
    v01 = values[i0, j0 + 1]
    v11 = values[i0 + 1, j0 + 1]
    return (
        v00 * (1 - tx) * (1 - ty)
        + v10 * tx * (1 - ty)
        + v01 * (1 - tx) * ty
        + v11 * tx * ty
    )
