"""Anti-self-dual Taub-NUT metric in spherical polar coordinates.

Chart (r, theta, phi, psi) with V = 1 + m/r:

    g = V (dr^2 + r^2 dtheta^2 + r^2 sin^2(theta) dphi^2)
        + V^{-1} (dpsi + m cos(theta) dphi)^2

The fibre coordinate psi is stored with period 4*pi.  Angles are never
wrapped during integration; the period is metadata only.
"""

from __future__ import annotations

import numpy as np

from .base import MetricModel
from .euler import right_invariant_fields

__all__ = ["TaubNUT"]

_THETA_EPS = 1e-8


class TaubNUT(MetricModel):
    name = "taub_nut"
    chart_id = "taub_nut_polar"
    dim = 4
    coord_names = ("r", "theta", "phi", "psi")
    angle_periods = {"phi": 2.0 * np.pi, "psi": 4.0 * np.pi}
    einstein_constant = 0.0
    hyper_kahler = True
    chart_bounds = (
        (0, 1e-6, None, "r > 1e-6"),
        (1, _THETA_EPS, np.pi - _THETA_EPS, "theta inside (0, pi)"),
    )
    sample_box = (
        (0.8, 3.5),
        (0.5, np.pi - 0.5),
        (0.0, 2.0 * np.pi),
        (0.0, 4.0 * np.pi),
    )

    def __init__(self, m: float = 1.0):
        if m < 0:
            raise ValueError("NUT parameter m must be non-negative")
        self.m = float(m)

    def potential_V(self, r: float) -> float:
        return 1.0 + self.m / r

    def metric(self, x):
        r, th = x[0], x[1]
        m = self.m
        V = 1.0 + m / r
        st, ct = np.sin(th), np.cos(th)
        g = np.zeros((4, 4))
        g[0, 0] = V
        g[1, 1] = V * r**2
        g[2, 2] = V * r**2 * st**2 + m**2 * ct**2 / V
        g[2, 3] = g[3, 2] = m * ct / V
        g[3, 3] = 1.0 / V
        return g

    def metric_derivs(self, x):
        r, th = x[0], x[1]
        m = self.m
        V = 1.0 + m / r
        Vr = -m / r**2
        st, ct = np.sin(th), np.cos(th)
        dg = np.zeros((4, 4, 4))
        # radial derivatives
        dg[0, 0, 0] = Vr
        dg[0, 1, 1] = -m + 2.0 * V * r
        dg[0, 2, 2] = (-m + 2.0 * V * r) * st**2 - m**2 * ct**2 * Vr / V**2
        dg[0, 2, 3] = dg[0, 3, 2] = -m * ct * Vr / V**2
        dg[0, 3, 3] = -Vr / V**2
        # polar-angle derivatives
        dg[1, 2, 2] = 2.0 * st * ct * (V * r**2 - m**2 / V)
        dg[1, 2, 3] = dg[1, 3, 2] = -m * st / V
        return dg

    def coframe(self, x):
        """Cartesian-style legs sqrt(V) dx^i and the fibre leg.

        Built on dx^i of x = r sin(theta) cos(phi) etc., so the
        self-dual basis assembled from this coframe is the parallel
        monopole one.
        """
        r, th, ph = x[0], x[1], x[2]
        m = self.m
        V = 1.0 + m / r
        sV = np.sqrt(V)
        st, ct = np.sin(th), np.cos(th)
        sf, cf = np.sin(ph), np.cos(ph)
        C = np.zeros((4, 4))
        C[0] = sV * np.array([st * cf, r * ct * cf, -r * st * sf, 0.0])
        C[1] = sV * np.array([st * sf, r * ct * sf, r * st * cf, 0.0])
        C[2] = sV * np.array([ct, -r * st, 0.0, 0.0])
        C[3] = np.array([0.0, 0.0, m * ct, 1.0]) / sV
        return C

    def killing_fields(self):
        m = self.m

        def rot(i):
            def field(x):
                K = np.zeros(4)
                K[1:] = right_invariant_fields(x[1], x[2], psi_weight=m)[i]
                return K

            return field

        return {
            "d_psi": lambda x: np.array([0.0, 0.0, 0.0, 1.0]),
            "d_phi": lambda x: np.array([0.0, 0.0, 1.0, 0.0]),
            "rot_x": rot(0),
            "rot_y": rot(1),
            "rot_z": rot(2),
        }
