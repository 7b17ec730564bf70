"""Exponential-type functions on products of sectors: transforms, inversion and growth."""

from .functions import AnalyticFunctionModel, GrowthEnvelope, from_id
from .geometry import GammaContour, HalfPlaneDomain, LambdaContour, SectorPair
from .quadrature import QuadratureConfig
from .transform import ConcatenatedLaplace

__all__ = [
    "AnalyticFunctionModel", "ConcatenatedLaplace", "GammaContour", "GrowthEnvelope",
    "HalfPlaneDomain", "LambdaContour", "QuadratureConfig", "SectorPair", "from_id",
]
