"""Flat four-dimensional model in Cartesian coordinates."""

from __future__ import annotations

import numpy as np

from .base import MetricModel

__all__ = ["Flat4"]


class Flat4(MetricModel):
    name = "flat4"
    chart_id = "cartesian4"
    dim = 4
    coord_names = ("x1", "x2", "x3", "x4")
    angle_periods = {}
    einstein_constant = 0.0
    hyper_kahler = True
    chart_bounds = ()
    sample_box = ((-2.0, 2.0),) * 4

    def metric(self, x):
        return np.eye(4)

    def metric_derivs(self, x):
        return np.zeros((4, 4, 4))

    def coframe(self, x):
        return np.eye(4)

    def killing_fields(self):
        return {
            "d_x1": lambda x: np.array([1.0, 0.0, 0.0, 0.0]),
            "d_x2": lambda x: np.array([0.0, 1.0, 0.0, 0.0]),
            "d_x3": lambda x: np.array([0.0, 0.0, 1.0, 0.0]),
            "d_x4": lambda x: np.array([0.0, 0.0, 0.0, 1.0]),
            "rot_12": lambda x: np.array([-x[1], x[0], 0.0, 0.0]),
        }
