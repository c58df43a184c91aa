"""Equidistant surface families of a hyperbolic end and of the dual de Sitter
spacetime, built from a datum at infinity.

Hyperbolic side, parameter r:   I_r = I*((e^r E + e^{-r} B*)., .)/2,
B_r = (e^r E + e^{-r} B*)^{-1} (e^r E - e^{-r} B*). De Sitter side, parameter
t: same with the sign of e^{-t} B* flipped in the first factor and the inverse
taken on the minus factor. Leaves are evaluated lazily from the closed forms;
the ambient 3-metrics dr^2 + I_r and -dt^2 + I^d_t exist only as evaluators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, RejectedDatumError, SingularLeafError
from .fields import MetricField, OperatorField, ScalarField, SymmetricForm
from .infinity import InfinityData, condition_star_report
from .reports import Report

HYPERBOLIC = "hyperbolic"
DESITTER = "deSitter"


@dataclass(frozen=True)
class EndFamily:
    side: str
    datum: InfinityData
    threshold: float
    report: Report | None = None

    @property
    def atlas(self):
        return self.datum.atlas

    def _factors(self, param: float, chart_id: str):
        """(A, D) with I = A^T G A / 2 and B = A^{-1} D at this parameter."""
        ep, em = math.exp(param), math.exp(-param)
        b = self.datum.Bstar.data[chart_id]
        eye = np.eye(2)
        if self.side == HYPERBOLIC:
            a = ep * eye + em * b
            d = ep * eye - em * b
        else:
            a = ep * eye - em * b
            d = ep * eye + em * b
        return a, d

    def metric_at(self, param: float) -> SymmetricForm:
        data = {}
        for cid, g in self.datum.Istar.data.items():
            a, _ = self._factors(param, cid)
            data[cid] = 0.5 * np.einsum("...ji,...jk,...kl->...il", a, g, a)
        role = "I_r" if self.side == HYPERBOLIC else "I^d_t"
        return SymmetricForm(self.atlas, data, role=role)

    def second_form_at(self, param: float) -> SymmetricForm:
        data = {}
        for cid, g in self.datum.Istar.data.items():
            a, d = self._factors(param, cid)
            m = 0.5 * np.einsum("...ji,...jk,...kl->...il", a, g, d)
            data[cid] = 0.5 * (m + np.swapaxes(m, -1, -2))
        return SymmetricForm(self.atlas, data, role="II")

    def third_form_at(self, param: float) -> SymmetricForm:
        data = {}
        for cid, g in self.datum.Istar.data.items():
            _, d = self._factors(param, cid)
            data[cid] = 0.5 * np.einsum("...ji,...jk,...kl->...il", d, g, d)
        return SymmetricForm(self.atlas, data, role="III")

    def shape_operator_at(self, param: float) -> OperatorField:
        data = {}
        for cid in self.datum.Istar.data:
            a, d = self._factors(param, cid)
            det = a[..., 0, 0] * a[..., 1, 1] - a[..., 0, 1] * a[..., 1, 0]
            if np.any(np.abs(det) < 1e-300):
                raise SingularLeafError(
                    f"leaf factor singular at parameter {param} on chart {cid!r}"
                )
            ainv = np.empty_like(a)
            ainv[..., 0, 0] = a[..., 1, 1]
            ainv[..., 1, 1] = a[..., 0, 0]
            ainv[..., 0, 1] = -a[..., 0, 1]
            ainv[..., 1, 0] = -a[..., 1, 0]
            ainv = ainv / det[..., None, None]
            data[cid] = np.einsum("...ij,...jk->...ik", ainv, d)
        role = "B_r" if self.side == HYPERBOLIC else "B^d_t"
        return OperatorField(self.atlas, data, role=role)

    def curvature_algebraic(self, param: float) -> ScalarField:
        """Gauss-equation curvature of the leaf: -1 + det B (hyperbolic side),
        1 - det B (de Sitter side)."""
        b = self.shape_operator_at(param)
        sign = -1.0 if self.side == HYPERBOLIC else 1.0
        return ScalarField(
            self.atlas,
            {cid: sign * (1.0 - d) if self.side == DESITTER else -1.0 + d
             for cid, d in b.det().items()},
            role="K_alg",
        )

    def eigenvalues_at(self, param: float, guard: float = 1e-12):
        """Leaf shape-operator eigenvalues via the closed forms on (lam*, mu*)."""
        ep, em = math.exp(param), math.exp(-param)
        lams, mus = {}, {}
        for cid, b in self.datum.Bstar.data.items():
            tr = b[..., 0, 0] + b[..., 1, 1]
            det = b[..., 0, 0] * b[..., 1, 1] - b[..., 0, 1] * b[..., 1, 0]
            disc = np.sqrt(np.maximum(tr * tr - 4.0 * det, 0.0))
            lam_star = 0.5 * (tr + disc)
            mu_star = 0.5 * (tr - disc)
            out = []
            for s in (lam_star, mu_star):
                if self.side == HYPERBOLIC:
                    num, den = ep - em * s, ep + em * s
                else:
                    num, den = ep + em * s, ep - em * s
                if np.any(np.abs(den) <= guard * (ep + np.abs(em * s))):
                    bad = np.abs(den) <= guard * (ep + np.abs(em * s))
                    idx = tuple(int(k[0]) for k in np.nonzero(bad))
                    raise SingularLeafError(
                        f"vanishing leaf denominator on chart {cid!r} at index {idx}"
                    )
                out.append(num / den)
            lams[cid] = np.maximum(out[0], out[1])
            mus[cid] = np.minimum(out[0], out[1])
        return (
            ScalarField(self.atlas, lams, role="lambda"),
            ScalarField(self.atlas, mus, role="mu"),
        )

    def min_eigenvalue(self, param: float) -> float:
        _, mu = self.eigenvalues_at(param)
        return min(float(np.min(v)) for v in mu.data.values())

    def sup_abs_bstar_eigenvalue(self) -> float:
        worst = 0.0
        for b in self.datum.Bstar.data.values():
            tr = b[..., 0, 0] + b[..., 1, 1]
            det = b[..., 0, 0] * b[..., 1, 1] - b[..., 0, 1] * b[..., 1, 0]
            disc = np.sqrt(np.maximum(tr * tr - 4.0 * det, 0.0))
            worst = max(
                worst,
                float(np.max(np.abs(0.5 * (tr + disc)))),
                float(np.max(np.abs(0.5 * (tr - disc)))),
            )
        return worst


def build_family(
    d: InfinityData,
    side: str = HYPERBOLIC,
    fine: InfinityData | None = None,
    strict: bool = True,
    **report_kwargs,
) -> EndFamily:
    """Validate the datum and construct the equidistant family on one side."""
    if side not in (HYPERBOLIC, DESITTER):
        raise DomainError(f"unknown side {side!r}")
    rep = condition_star_report(d, fine=fine, **report_kwargs)
    if strict and not rep.passed:
        raise RejectedDatumError("datum fails the admissibility condition", report=rep)
    fam = EndFamily(side=side, datum=d, threshold=0.0, report=rep)
    thr = convexity_threshold(fam)
    return EndFamily(side=side, datum=d, threshold=thr, report=rep)


def convexity_threshold(f: EndFamily, eig_floor: float = 1e-8) -> float:
    """Smallest parameter at which the leaf shape operator is positive.

    Coarse grid then bisection to 1e-10; both eigenvalue closed forms are
    monotone in the parameter. Clamped at 0: the supremum sup |eig B*| <= 1
    means every leaf with positive parameter is already convex.
    """
    smax = f.sup_abs_bstar_eigenvalue()
    if smax <= 1.0:
        return 0.0
    hi = 0.5 * math.log(smax) + 1.0
    lo = 0.0
    grid = np.linspace(lo, hi, 32)
    above = None
    for p in grid:
        try:
            ok = f.min_eigenvalue(p) >= eig_floor
        except SingularLeafError:
            ok = False
        if ok:
            above = p
            break
    if above is None:
        raise DomainError("no convex leaf found below search bound")
    lo = max(lo, above - (grid[1] - grid[0]))
    hi = above
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        try:
            ok = f.min_eigenvalue(mid) >= eig_floor
        except SingularLeafError:
            ok = False
        if ok:
            hi = mid
        else:
            lo = mid
        if hi - lo <= 1e-10:
            break
    return max(0.0, hi)


def recover_infinity_data(f: EndFamily, param: float) -> InfinityData:
    """Reconstruct (I*, II*) from one leaf; independent of the parameter.

    I* = e^{-2p} (I + 2 II + III) / 2 on both sides; II* = (I - III)/2 on the
    hyperbolic side and (III - I)/2 on the de Sitter side.
    """
    I = f.metric_at(param)
    II = f.second_form_at(param)
    III = f.third_form_at(param)
    em2 = math.exp(-2.0 * param)
    gI, gII = {}, {}
    for cid in I.data:
        gI[cid] = 0.5 * em2 * (I.data[cid] + 2.0 * II.data[cid] + III.data[cid])
        diff = I.data[cid] - III.data[cid]
        gII[cid] = 0.5 * diff if f.side == HYPERBOLIC else -0.5 * diff
    Istar = MetricField(
        f.atlas, gI, role=f.datum.Istar.role,
        known_curvature=f.datum.Istar.known_curvature,
    )
    IIstar = SymmetricForm(f.atlas, gII, role=f.datum.IIstar.role)
    return InfinityData.assemble(Istar, IIstar)


def gauss_identity_residual(f: EndFamily, param: float) -> float:
    """Max residual of the closed-form Gauss identity at one parameter.

    Hyperbolic: (-1 + det B_r) + 2 tr B* / (e^{2r} + tr B* + e^{-2r} det B*);
    de Sitter analogue with the sign pattern of the minus factor.
    """
    ep2, em2 = math.exp(2 * param), math.exp(-2 * param)
    k_alg = f.curvature_algebraic(param)
    worst = 0.0
    for cid, b in f.datum.Bstar.data.items():
        tr = b[..., 0, 0] + b[..., 1, 1]
        det = b[..., 0, 0] * b[..., 1, 1] - b[..., 0, 1] * b[..., 1, 0]
        if f.side == HYPERBOLIC:
            closed = -2.0 * tr / (ep2 + tr + em2 * det)
        else:
            closed = -2.0 * tr / (ep2 - tr + em2 * det)
        worst = max(worst, float(np.max(np.abs(k_alg.data[cid] - closed))))
    return worst
