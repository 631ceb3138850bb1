"""Fubini-Study metric on CP^2 in the biaxial chart.

With Delta = 1 + r^2 and left-invariant one-forms sigma_i:

    g = dr^2/Delta^2 + (r^2/(4 Delta)) (sigma_1^2 + sigma_2^2)
        + (r^2/(4 Delta^2)) sigma_3^2

Einstein with Ricci scalar 24, so the Schouten tensor equals the metric.

The orthonormal coframe uses the radial leg e^4 = -dr/Delta.  With this
sign the Kahler form is e^1^e^2 - e^3^e^4 (anti-self-dual in the
frame-order orientation) and the frame-component flow equations take
their standard biaxial form.
"""

from __future__ import annotations

import numpy as np

from .base import MetricModel
from .euler import right_invariant_fields, sigma_forms

__all__ = ["CP2"]

_THETA_EPS = 1e-8


class CP2(MetricModel):
    name = "cp2"
    chart_id = "cp2_polar"
    dim = 4
    coord_names = ("r", "theta", "phi", "psi")
    angle_periods = {"phi": 2.0 * np.pi, "psi": 2.0 * np.pi}
    einstein_constant = 1.0
    hyper_kahler = False
    chart_bounds = (
        (0, 1e-6, None, "r > 1e-6"),
        (1, _THETA_EPS, np.pi - _THETA_EPS, "theta inside (0, pi)"),
    )
    sample_box = (
        (0.4, 2.5),
        (0.5, np.pi - 0.5),
        (0.0, 2.0 * np.pi),
        (0.0, 2.0 * np.pi),
    )

    def metric(self, x):
        r, th = x[0], x[1]
        D = 1.0 + r**2
        st, ct = np.sin(th), np.cos(th)
        g = np.zeros((4, 4))
        g[0, 0] = 1.0 / D**2
        g[1, 1] = r**2 / (4.0 * D)
        g[2, 2] = (r**2 / (4.0 * D)) * st**2 + (r**2 / (4.0 * D**2)) * ct**2
        g[2, 3] = g[3, 2] = (r**2 / (4.0 * D**2)) * ct
        g[3, 3] = r**2 / (4.0 * D**2)
        return g

    def metric_derivs(self, x):
        r, th = x[0], x[1]
        D = 1.0 + r**2
        st, ct = np.sin(th), np.cos(th)
        dg = np.zeros((4, 4, 4))
        dg[0, 0, 0] = -4.0 * r / D**3
        dg[0, 1, 1] = r / (2.0 * D**2)
        dg[0, 2, 2] = (r / (2.0 * D**2)) * st**2 + (r * (1.0 - r**2) / (2.0 * D**3)) * ct**2
        dg[0, 2, 3] = dg[0, 3, 2] = (r * (1.0 - r**2) / (2.0 * D**3)) * ct
        dg[0, 3, 3] = r * (1.0 - r**2) / (2.0 * D**3)
        dg[1, 2, 2] = (r**4 / (2.0 * D**2)) * st * ct
        dg[1, 2, 3] = dg[1, 3, 2] = -(r**2 / (4.0 * D**2)) * st
        return dg

    def coframe(self, x):
        r, th = x[0], x[1]
        D = 1.0 + r**2
        sig = sigma_forms(th, x[3])
        C = np.zeros((4, 4))
        C[0, 1:] = (r / (2.0 * np.sqrt(D))) * sig[0]
        C[1, 1:] = (r / (2.0 * np.sqrt(D))) * sig[1]
        C[2, 1:] = (r / (2.0 * D)) * sig[2]
        C[3, 0] = -1.0 / D
        return C

    def kahler_form(self, x) -> np.ndarray:
        """The parallel Kahler two-form e^1^e^2 - e^3^e^4 (anti-self-dual)."""
        from .base import wedge11

        e1, e2, e3, e4 = self.coframe(x)
        return wedge11(e1, e2) - wedge11(e3, e4)

    def complex_structure(self, x) -> np.ndarray:
        """J acting on chart vectors, J^a_b = g^{ac} omega_cb for the Kahler form."""
        return self.inverse_metric(x) @ self.kahler_form(x)

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
