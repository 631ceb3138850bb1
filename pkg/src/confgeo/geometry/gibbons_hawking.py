"""Gibbons-Hawking form metrics on a Cartesian chart (x, y, z, tau).

    g = V (dx^2 + dy^2 + dz^2) + V^{-1} (dtau + omega)^2

with V harmonic on a region of R^3 and d omega = *dV (right-handed
star of flat R^3).  The model is generic over (V, omega) data; the
monopole constructors below supply the one- and two-center examples.
"""

from __future__ import annotations

import warnings

import numpy as np

from ..errors import DomainError
from ..numdiff import fd_gradient, fd_jacobian
from .base import MetricModel

__all__ = [
    "GibbonsHawking",
    "flat_gh_data",
    "taub_nut_gh_data",
    "eh_two_center_gh_data",
    "gh_check",
]


def _axis_rho(x):
    return np.hypot(x[0], x[1])


class GibbonsHawking(MetricModel):
    """Generic Gibbons-Hawking metric from analytic (V, omega) data.

    Parameters are callables on the spatial triple (x, y, z):
    ``V``, ``grad_V`` (3-vector), ``omega`` (3 covector components),
    ``omega_jac`` with entries J[i, j] = d omega_i / d x^j.
    """

    chart_id = "gibbons_hawking_cartesian"
    dim = 4
    coord_names = ("x", "y", "z", "tau")
    angle_periods = {"tau": 4.0 * np.pi}
    einstein_constant = 0.0
    hyper_kahler = True
    chart_bounds = ()

    def __init__(self, V, grad_V, omega, omega_jac, centers=(), name="gibbons_hawking",
                 axis_clearance=0.0, sample_box=None):
        self.V = V
        self.grad_V = grad_V
        self.omega = omega
        self.omega_jac = omega_jac
        self.centers = tuple(np.asarray(c, dtype=float) for c in centers)
        self.name = name
        self.axis_clearance = float(axis_clearance)
        self.sample_box = sample_box or (
            (0.5, 2.5), (0.5, 2.5), (0.3, 1.8), (0.0, 2.0 * np.pi),
        )

    def chart_violation(self, x):
        p = np.asarray(x[:3], dtype=float)
        for c in self.centers:
            d = np.linalg.norm(p - c)
            if d <= 1e-6:
                return "r_center", float(d), "distance to a potential center > 1e-6"
        if self.axis_clearance > 0.0 and _axis_rho(x) <= self.axis_clearance:
            return "rho", float(_axis_rho(x)), f"axis distance > {self.axis_clearance}"
        return None

    def metric(self, x):
        p = x[:3]
        V = self.V(p)
        w = np.asarray(self.omega(p), dtype=float)
        g = np.zeros((4, 4))
        g[:3, :3] = V * np.eye(3) + np.outer(w, w) / V
        g[:3, 3] = g[3, :3] = w / V
        g[3, 3] = 1.0 / V
        return g

    def metric_derivs(self, x):
        p = x[:3]
        V = self.V(p)
        dV = np.asarray(self.grad_V(p), dtype=float)
        w = np.asarray(self.omega(p), dtype=float)
        dw = np.asarray(self.omega_jac(p), dtype=float)  # dw[i, j] = d w_i / d x^j
        dg = np.zeros((4, 4, 4))
        for c in range(3):
            blk = dV[c] * np.eye(3)
            blk += (np.outer(dw[:, c], w) + np.outer(w, dw[:, c])) / V
            blk -= np.outer(w, w) * dV[c] / V**2
            dg[c, :3, :3] = blk
            dg[c, :3, 3] = dg[c, 3, :3] = dw[:, c] / V - w * dV[c] / V**2
            dg[c, 3, 3] = -dV[c] / V**2
        return dg

    def coframe(self, x):
        p = x[:3]
        V = self.V(p)
        w = np.asarray(self.omega(p), dtype=float)
        sV = np.sqrt(V)
        C = np.zeros((4, 4))
        C[:3, :3] = sV * np.eye(3)
        C[3, :3] = w / sV
        C[3, 3] = 1.0 / sV
        return C

    def killing_fields(self):
        return {"d_tau": lambda x: np.array([0.0, 0.0, 0.0, 1.0])}


def _monopole_omega_terms(p, center, mass):
    """omega and Jacobian contribution of one monopole center.

    Uses the gauge omega = mass * (z - c_z)/r * dphi about the center,
    which is singular on the whole axis rho = 0.
    """
    x, y, z = p[0] - center[0], p[1] - center[1], p[2] - center[2]
    rho2 = x**2 + y**2
    r = np.sqrt(rho2 + z**2)
    A = z / (r * rho2)
    w = mass * np.array([-y * A, x * A, 0.0])
    dA = np.array([
        -x * z * (rho2 + 2.0 * r**2) / (r**3 * rho2**2),
        -y * z * (rho2 + 2.0 * r**2) / (r**3 * rho2**2),
        1.0 / r**3,
    ])
    jac = mass * np.array([
        [-y * dA[0], -A - y * dA[1], -y * dA[2]],
        [A + x * dA[0], x * dA[1], x * dA[2]],
        [0.0, 0.0, 0.0],
    ])
    return w, jac


def _multi_center_data(centers, masses, constant):
    centers = [np.asarray(c, dtype=float) for c in centers]
    masses = list(masses)

    def V(p):
        out = constant
        for c, m in zip(centers, masses):
            out += m / np.linalg.norm(p - c)
        return out

    def grad_V(p):
        out = np.zeros(3)
        for c, m in zip(centers, masses):
            d = p - c
            out -= m * d / np.linalg.norm(d) ** 3
        return out

    def omega(p):
        out = np.zeros(3)
        for c, m in zip(centers, masses):
            out += _monopole_omega_terms(p, c, m)[0]
        return out

    def omega_jac(p):
        out = np.zeros((3, 3))
        for c, m in zip(centers, masses):
            out += _monopole_omega_terms(p, c, m)[1]
        return out

    return V, grad_V, omega, omega_jac


def flat_gh_data() -> GibbonsHawking:
    """V = 1, omega = 0: flat space in Gibbons-Hawking dress."""
    return GibbonsHawking(
        V=lambda p: 1.0,
        grad_V=lambda p: np.zeros(3),
        omega=lambda p: np.zeros(3),
        omega_jac=lambda p: np.zeros((3, 3)),
        name="gh_flat",
    )


def taub_nut_gh_data(m: float = 1.0) -> GibbonsHawking:
    """V = 1 + m/r about the origin."""
    V, grad_V, omega, omega_jac = _multi_center_data([(0.0, 0.0, 0.0)], [m], 1.0)
    return GibbonsHawking(V, grad_V, omega, omega_jac,
                          centers=[(0.0, 0.0, 0.0)], name="gh_taub_nut",
                          axis_clearance=1e-8)


def eh_two_center_gh_data(alpha: float = 1.0) -> GibbonsHawking:
    """Two unit centers at (0, 0, -alpha) and (0, 0, +alpha), no constant."""
    centers = [(0.0, 0.0, -alpha), (0.0, 0.0, alpha)]
    V, grad_V, omega, omega_jac = _multi_center_data(centers, [1.0, 1.0], 0.0)
    return GibbonsHawking(V, grad_V, omega, omega_jac, centers=centers,
                          name="gh_two_center", axis_clearance=1e-8)


def gh_check(V, omega, sample_box, n_samples: int = 64, seed: int = 7,
             centers=()) -> dict:
    """Monopole-equation residual report: max |d omega - *dV| over samples.

    ``V`` maps a 3-point to a scalar, ``omega`` to the three covector
    components; derivatives are taken by central finite differences, so
    this is an oracle independent of any analytic Jacobians.  Sample
    points that fall on a center of ``V`` are skipped with a warning.
    """
    rng = np.random.default_rng(seed)
    box = np.asarray(sample_box, dtype=float)
    centers = [np.asarray(c, dtype=float) for c in centers]
    worst = 0.0
    used = 0
    skipped = 0
    for _ in range(n_samples):
        p = rng.uniform(box[:, 0], box[:, 1])
        if any(np.linalg.norm(p - c) < 1e-4 for c in centers):
            warnings.warn(f"sample {p} too close to a potential center, skipped")
            skipped += 1
            continue
        J = fd_jacobian(lambda q: np.asarray(omega(q), dtype=float), p)
        domega = J.T - J  # (d omega)_ij = d_i w_j - d_j w_i
        dV = fd_gradient(V, p)
        star = np.array([
            [0.0, dV[2], -dV[1]],
            [-dV[2], 0.0, dV[0]],
            [dV[1], -dV[0], 0.0],
        ])
        worst = max(worst, float(np.max(np.abs(domega - star))))
        used += 1
    if used == 0:
        raise DomainError("sample_box", 0.0, "no usable sample points")
    return {"max_residual": worst, "samples_used": used, "skipped": skipped}
