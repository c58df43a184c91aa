"""Numerics for hyperbolic ends and de Sitter spacetimes with cone particles.

Builds constant-Gauss-curvature surface foliations from data at infinity,
implements the hyperbolic/de Sitter duality on surfaces, grafting at the
holonomy level, and Schwarzian-derivative analysis with cone points.
"""

__version__ = "0.1.0"

from .geom import MoebiusMap, ModelConeMetric, classify, elliptic_about_axis
from .atlas import ChartAtlas, ConeSignature, PolarChart, RectChart
from .fields import MetricField, OperatorField, ScalarField

__all__ = [
    "MoebiusMap",
    "ModelConeMetric",
    "classify",
    "elliptic_about_axis",
    "ChartAtlas",
    "ConeSignature",
    "PolarChart",
    "RectChart",
    "MetricField",
    "OperatorField",
    "ScalarField",
    "__version__",
]
