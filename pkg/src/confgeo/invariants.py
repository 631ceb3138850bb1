"""First integrals, conformal Killing-Yano machinery, and involution checks.

A two-form Y is conformal Killing-Yano when its covariant derivative is a
totally antisymmetric part plus a metric trace built from a one-form K:

    nabla_a Y_bc = nabla_[a Y_bc] - (g_ab K_c - g_ac K_b).

Tracing fixes K as a multiple of the divergence of Y, and for the geometries
here K is (the metric dual of) a Killing vector.  Along the third-order flow
the scalar

    Q = Y(u, a) + u . K

is then constant: the derivative of the quadratic term is -K.a and the
derivative of the linear term is +K.a, so the relative plus sign between the
two terms is forced by conservation.

The module also carries the closed-form Taub-NUT integral quadruple, a
numerical Poisson bracket on the charged symplectic structure
dP ^ dq + e F, and the pairwise involution matrix built from it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import SingularCoordinateError
from .geometry.base import ChartPoint, MetricModel, TwoForm
from .numdiff import fd_covariant_deriv_2form

__all__ = [
    "CKYData",
    "PhasePoint",
    "FirstIntegralSet",
    "cky_divergence_oneform",
    "cky_residual",
    "cky_first_integral",
    "taubnut_integrals",
    "taubnut_integral_set",
    "poisson_bracket",
    "involution_matrix",
    "invariant_report",
]

_BRACKET_H = float(np.finfo(float).eps) ** (1.0 / 3.0)


def _form_components(val) -> np.ndarray:
    if isinstance(val, TwoForm):
        return val.components
    return np.asarray(val, dtype=float)


@dataclass(frozen=True)
class CKYData:
    """A candidate conformal Killing-Yano two-form and its trace one-form.

    ``Y_at`` maps chart coordinates to the two-form components (either a
    ``TwoForm`` or a plain antisymmetric array); ``K_at`` maps them to the
    covariant components of the associated one-form.  Pass ``K_at=None``
    for the parallel (Kahler) case, where the one-form vanishes.
    """

    Y_at: Callable[[np.ndarray], object]
    K_at: Callable[[np.ndarray], np.ndarray] | None
    name: str = "cky"

    def Y(self, x: np.ndarray) -> np.ndarray:
        return _form_components(self.Y_at(np.asarray(x, dtype=float)))

    def K(self, x: np.ndarray) -> np.ndarray:
        if self.K_at is None:
            return np.zeros(np.asarray(x).size)
        return np.asarray(self.K_at(np.asarray(x, dtype=float)), dtype=float)


@dataclass(frozen=True)
class PhasePoint:
    """Chart point, mechanical momentum covector P_a, and charge.

    P is the kinetic covector (velocity with the index lowered); the
    canonical momentum of the magnetic Lagrangian is P_a + e Phi_a.
    """

    q: ChartPoint
    P: np.ndarray
    e: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "P", np.asarray(self.P, dtype=float))
        if self.P.shape != (self.q.dimension,):
            raise ValueError(
                f"momentum shape {self.P.shape} does not match "
                f"chart dimension {self.q.dimension}")
        if not np.all(np.isfinite(self.P)):
            raise ValueError("momentum covector must be finite")


@dataclass(frozen=True)
class FirstIntegralSet:
    """Named scalar functions of a PhasePoint."""

    functions: dict

    def names(self) -> tuple:
        return tuple(self.functions)

    def __getitem__(self, name: str):
        return self.functions[name]

    def items(self):
        return self.functions.items()

    def evaluate(self, pp: PhasePoint) -> dict:
        return {name: float(f(pp)) for name, f in self.functions.items()}


# ---------------------------------------------------------------------------
# conformal Killing-Yano tensors


def cky_divergence_oneform(model: MetricModel, Y_at, x, h: float = 1e-5) -> np.ndarray:
    """Trace part of the CKY equation: K_c = -1/(n-1) nabla^a Y_ac.

    Computed by finite differences so it can serve as an independent check
    on hand-coded K_at callables.
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    grad = fd_covariant_deriv_2form(
        lambda p: _form_components(Y_at(p)), model.christoffel, x, h)
    ginv = model.inverse_metric(x)
    div = np.einsum("ab,abc->c", ginv, grad)
    return -div / (n - 1.0)


def cky_residual(model: MetricModel, cky: CKYData, points, h: float = 1e-5) -> float:
    """Max violation of the CKY equation over the sample points.

    Residual tensor: nabla_a Y_bc - nabla_[a Y_bc] + (g_ab K_c - g_ac K_b),
    with the covariant derivative taken by central differences.
    """
    worst = 0.0
    for p in points:
        x = _point_array(p)
        grad = fd_covariant_deriv_2form(cky.Y, model.christoffel, x, h)
        anti = (grad + np.einsum("bca->abc", grad) + np.einsum("cab->abc", grad)) / 3.0
        g = model.metric(x)
        K = cky.K(x)
        trace = np.einsum("ab,c->abc", g, K) - np.einsum("ac,b->abc", g, K)
        worst = max(worst, float(np.max(np.abs(grad - anti + trace))))
    return worst


def cky_first_integral(cky: CKYData, st) -> float:
    """Conserved scalar Q = Y(u, a) + u . K of the third-order flow.

    ``st`` carries chart point, velocity u and acceleration a (a CGState,
    or any object with those fields).  For a parallel Y the linear term is
    absent and Q is the complex torsion of the trajectory.
    """
    x = st.point.array
    Y = cky.Y(x)
    return float(st.u @ Y @ st.a + st.u @ cky.K(x))


def _point_array(p) -> np.ndarray:
    if isinstance(p, ChartPoint):
        return p.array
    return np.asarray(p, dtype=float)


# ---------------------------------------------------------------------------
# the Taub-NUT integral quadruple

_AXIS_EPS = 1e-12


def taubnut_integrals(pp: PhasePoint, m: float) -> tuple:
    """The four independent first integrals (K, L, H, W) on Taub-NUT.

    K and L are the charged momenta of the two commuting Killing vectors,
    H is the kinetic Hamiltonian, and W is the quadratic integral tied to
    the anti-self-dual conformal Killing-Yano tensor.  W is evaluated in a
    collected form whose individual terms stay finite on the equator; only
    the rotation axis remains excluded.
    """
    r, th = pp.q.coords[0], pp.q.coords[1]
    Pr, Pth, Pph, Pps = pp.P
    e = pp.e
    st, ct = np.sin(th), np.cos(th)
    if abs(st) < _AXIS_EPS:
        raise SingularCoordinateError(
            f"theta={th!r} lies on the rotation axis; the angular momenta "
            "are not independent there")

    K = Pps - e * r * ct
    L = Pph - e * (m * r + 0.5 * r**2 * st**2)
    H = 0.5 * (
        r / (r + m) * Pr**2
        + Pth**2 / (r * (r + m))
        + (r + m) / r * Pps**2
        + (Pph - m * ct * Pps) ** 2 / (r * (r + m) * st**2)
    )
    W = (
        e * r * ct * Pr**2
        - 2.0 * e * st * Pr * Pth
        - e * ct / r * Pth**2
        - e * ct / (r * st**2) * (Pph**2 + (m**2 - r**2 * st**2) * Pps**2)
        + 2.0 * e * (m + r * st**2) / (r * st**2) * Pps * Pph
        - 2.0 * H * Pps
    )
    return K, L, H, W


def taubnut_integral_set(m: float) -> FirstIntegralSet:
    """The quadruple packaged as named functions of a PhasePoint."""

    def pick(i):
        def f(pp: PhasePoint) -> float:
            return taubnut_integrals(pp, m)[i]
        return f

    return FirstIntegralSet(
        {name: pick(i) for i, name in enumerate(("K", "L", "H", "W"))})


# ---------------------------------------------------------------------------
# Poisson brackets of the charged symplectic structure


def _phase_gradients(f, pp: PhasePoint):
    """Central-difference gradients of f(pp) in q and in P."""
    q0 = pp.q.array
    P0 = pp.P
    n = q0.size
    fq = np.zeros(n)
    fP = np.zeros(n)
    for i in range(n):
        hq = _BRACKET_H * max(1.0, abs(q0[i]))
        qp, qm = q0.copy(), q0.copy()
        qp[i] += hq
        qm[i] -= hq
        fq[i] = (
            f(PhasePoint(ChartPoint(pp.q.chart_id, tuple(qp)), P0, pp.e))
            - f(PhasePoint(ChartPoint(pp.q.chart_id, tuple(qm)), P0, pp.e))
        ) / (2.0 * hq)
        hP = _BRACKET_H * max(1.0, abs(P0[i]))
        Pp, Pm = P0.copy(), P0.copy()
        Pp[i] += hP
        Pm[i] -= hP
        fP[i] = (
            f(PhasePoint(pp.q, Pp, pp.e)) - f(PhasePoint(pp.q, Pm, pp.e))
        ) / (2.0 * hP)
    if not (np.all(np.isfinite(fq)) and np.all(np.isfinite(fP))):
        raise FloatingPointError("non-finite phase-space gradient")
    return fq, fP


def poisson_bracket(f, g, pp: PhasePoint, F) -> float:
    """{f, g} on the charged phase space at the point pp.

    F holds the components of the magnetic two-form at pp.q; the bracket is

        {f, g} = f_q . g_P - f_P . g_q + e F_ab f_{P_a} g_{P_b},

    with all gradients by central differences.  The orientation is fixed so
    that Hamilton's equations of the kinetic Hamiltonian reproduce the
    magnetic flow with force covector e F_ab u^b.
    """
    Fc = _form_components(F)
    fq, fP = _phase_gradients(f, pp)
    gq, gP = _phase_gradients(g, pp)
    return float(fq @ gP - fP @ gq + pp.e * fP @ Fc @ gP)


def involution_matrix(integrals: FirstIntegralSet, phase_points, F_at, e: float) -> float:
    """Largest pairwise bracket magnitude over the sample phase points.

    ``F_at`` maps chart coordinates to the magnetic two-form components.
    Phase points are rebuilt at the stated charge so the bracket and the
    integral set see the same flow.
    """
    names = integrals.names()
    worst = 0.0
    for pp in phase_points:
        ppe = PhasePoint(pp.q, pp.P, e)
        F = _form_components(F_at(ppe.q.array))
        for i in range(len(names)):
            for j in range(i + 1, len(names)):
                val = poisson_bracket(
                    integrals[names[i]], integrals[names[j]], ppe, F)
                worst = max(worst, abs(val))
    return worst


def invariant_report(traj) -> dict:
    """Per-integral summary of a trajectory: mean, max drift, sample count."""
    out = {}
    for name, vals in traj.invariants.items():
        arr = np.asarray(vals, dtype=float)
        out[name] = {
            "mean": float(np.mean(arr)),
            "max_drift": float(np.max(arr) - np.min(arr)),
            "samples": int(arr.size),
        }
    return out
