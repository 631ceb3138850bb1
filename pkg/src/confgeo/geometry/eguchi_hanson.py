"""Eguchi-Hanson metric on the chart r > alpha.

With f^2 = 1 - (alpha/r)^4 and left-invariant one-forms sigma_i:

    g = f^{-2} dr^2 + (r^2/4)(sigma_1^2 + sigma_2^2) + (r^2 f^2/4) sigma_3^2

The orthonormal coframe ordering (e^1, e^2, e^3, e^4) =
((r/2) sigma_1, (r/2) sigma_2, (r f/2) sigma_3, f^{-1} dr) declares the
orientation; the chart coordinate order (r, theta, phi, psi) is
negatively oriented with respect to it, which the signed volume
component records.
"""

from __future__ import annotations

import numpy as np

from .base import MetricModel
from .euler import right_invariant_fields, sigma_forms

__all__ = ["EguchiHanson"]

_THETA_EPS = 1e-8


class EguchiHanson(MetricModel):
    name = "eguchi_hanson"
    chart_id = "eguchi_hanson_polar"
    dim = 4
    coord_names = ("r", "theta", "phi", "psi")
    angle_periods = {"phi": 2.0 * np.pi, "psi": 2.0 * np.pi}
    einstein_constant = 0.0
    hyper_kahler = True

    def __init__(self, alpha: float = 1.0):
        if alpha <= 0:
            raise ValueError("bolt radius alpha must be positive")
        self.alpha = float(alpha)
        # small relative clearance keeps bolt-bound trajectories from
        # stalling at r - alpha ~ machine epsilon instead of stopping
        self.chart_bounds = (
            (0, self.alpha * (1.0 + 1e-12), None, f"r > alpha = {self.alpha}"),
            (1, _THETA_EPS, np.pi - _THETA_EPS, "theta inside (0, pi)"),
        )
        self.sample_box = (
            (1.3 * self.alpha, 3.5 * self.alpha),
            (0.5, np.pi - 0.5),
            (0.0, 2.0 * np.pi),
            (0.0, 2.0 * np.pi),
        )

    def profile_f(self, r: float) -> float:
        return np.sqrt(1.0 - (self.alpha / r) ** 4)

    def metric(self, x):
        r, th = x[0], x[1]
        F = 1.0 - (self.alpha / r) ** 4
        st, ct = np.sin(th), np.cos(th)
        g = np.zeros((4, 4))
        g[0, 0] = 1.0 / F
        g[1, 1] = r**2 / 4.0
        g[2, 2] = (r**2 / 4.0) * (st**2 + F * ct**2)
        g[2, 3] = g[3, 2] = (r**2 * F / 4.0) * ct
        g[3, 3] = r**2 * F / 4.0
        return g

    def metric_derivs(self, x):
        r, th = x[0], x[1]
        a = self.alpha
        F = 1.0 - (a / r) ** 4
        Fr = 4.0 * a**4 / r**5
        st, ct = np.sin(th), np.cos(th)
        dg = np.zeros((4, 4, 4))
        dg[0, 0, 0] = -Fr / F**2
        dg[0, 1, 1] = r / 2.0
        dg[0, 2, 2] = (r / 2.0) * (st**2 + F * ct**2) + (r**2 / 4.0) * Fr * ct**2
        dg[0, 2, 3] = dg[0, 3, 2] = ((2.0 * r * F + r**2 * Fr) / 4.0) * ct
        dg[0, 3, 3] = (2.0 * r * F + r**2 * Fr) / 4.0
        dg[1, 2, 2] = (r**2 / 2.0) * st * ct * (1.0 - F)
        dg[1, 2, 3] = dg[1, 3, 2] = -(r**2 * F / 4.0) * st
        return dg

    def coframe(self, x):
        r, th = x[0], x[1]
        f = self.profile_f(r)
        sig = sigma_forms(th, x[3])
        C = np.zeros((4, 4))
        C[0, 1:] = (r / 2.0) * sig[0]
        C[1, 1:] = (r / 2.0) * sig[1]
        C[2, 1:] = (r * f / 2.0) * sig[2]
        C[3, 0] = 1.0 / f
        return C

    def killing_fields(self):
        def rot(i):
            def field(x):
                K = np.zeros(4)
                K[1:] = right_invariant_fields(x[1], x[2])[i]
                return K

            return field

        return {
            "d_psi": lambda x: np.array([0.0, 0.0, 0.0, 1.0]),
            "d_phi": lambda x: np.array([0.0, 0.0, 1.0, 0.0]),
            "rot_x": rot(0),
            "rot_y": rot(1),
            "rot_z": rot(2),
        }
