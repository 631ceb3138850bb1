"""Hyperbolic upper half-plane, g = (dx^2 + dy^2) / y^2.

Two-dimensional, so there is no Schouten normalization; the conformal
geodesics are realized as magnetic (Lorentz) flows with force form
B times the area form.
"""

from __future__ import annotations

import numpy as np

from .base import MetricModel

__all__ = ["HalfPlane"]


class HalfPlane(MetricModel):
    name = "half_plane"
    chart_id = "upper_half_plane"
    dim = 2
    coord_names = ("x", "y")
    angle_periods = {}
    einstein_constant = None
    hyper_kahler = False
    chart_bounds = ((1, 0.0, None, "y > 0"),)
    sample_box = ((-2.0, 2.0), (0.5, 3.0))

    def metric(self, x):
        y = x[1]
        return np.diag([1.0 / y**2, 1.0 / y**2])

    def metric_derivs(self, x):
        y = x[1]
        dg = np.zeros((2, 2, 2))
        dg[1] = np.diag([-2.0 / y**3, -2.0 / y**3])
        return dg

    def coframe(self, x):
        y = x[1]
        return np.diag([1.0 / y, 1.0 / y])

    def area_form(self, x):
        """Components of the metric area form (the chart is positively oriented)."""
        y = x[1]
        return np.array([[0.0, 1.0 / y**2], [-1.0 / y**2, 0.0]])

    def killing_fields(self):
        return {
            "d_x": lambda x: np.array([1.0, 0.0]),
            "dilation": lambda x: np.array([x[0], x[1]]),
        }
