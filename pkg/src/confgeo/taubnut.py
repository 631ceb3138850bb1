"""Closed-form machinery special to the self-dual NUT geometry.

Killing-Yano and conformal Killing-Yano two-forms, the gauge potential of
the aligned magnetic flow, parabolic coordinates, the charged separation of
the Hamilton-Jacobi equation, and the elliptic quadrature relating the two
separated branches.

Conventions.  The magnetic flow carries charge e on the third distinguished
self-dual form, with gauge potential Phi chosen so the canonical momenta
p = P + e*Phi of d/dpsi and d/dphi are the conserved E and J.  Both
separated branches reduce to the same quartic polynomial: the xi branch is
the eta branch evaluated at (E, Q) -> (-E, -Q).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import SingularCoordinateError, TurningPointError
from .geometry import TaubNUT
from .geometry.base import ChartPoint, MetricModel
from .invariants import CKYData
from .rootfind import solve as root_solve
from .sqrtquad import inv_sqrt_integral

__all__ = [
    "ParabolicPoint",
    "SeparationConstants",
    "to_parabolic",
    "from_parabolic",
    "tn_potential_oneform",
    "tn_magnetic_two_form",
    "tn_cky_Y",
    "tn_cky_W",
    "tn_ky_Z",
    "w_from_velocity",
    "quartic_coefficients",
    "quartic_radicand",
    "quartic_U",
    "radicand_root",
    "extract_constants",
    "hj_residual",
    "unparam_quadrature",
    "separation_report",
]


# ---------------------------------------------------------------------------
# parabolic chart


@dataclass(frozen=True)
class ParabolicPoint:
    """Parabolic coordinates (eta, xi) with the two angles carried along."""

    eta: float
    xi: float
    phi: float
    psi: float

    def __post_init__(self):
        if self.eta < 0 or self.xi < 0:
            raise ValueError("parabolic coordinates must be non-negative")


def to_parabolic(p: ChartPoint) -> ParabolicPoint:
    """Spherical chart point -> (eta, xi, phi, psi)."""
    r, th, ph, ps = p.coords
    if r <= 0:
        raise ValueError(f"radius must be positive, got {r!r}")
    ct = np.cos(th)
    return ParabolicPoint(r * (1.0 + ct), r * (1.0 - ct), ph, ps)


def from_parabolic(pp: ParabolicPoint, chart_id: str = "taub_nut_polar") -> ChartPoint:
    """Inverse map; eta + xi = 2r and eta - xi = 2 r cos(theta)."""
    r = 0.5 * (pp.eta + pp.xi)
    if r <= 0:
        raise ValueError("eta + xi must be positive")
    ct = np.clip((pp.eta - pp.xi) / (pp.eta + pp.xi), -1.0, 1.0)
    return ChartPoint(chart_id, (r, float(np.arccos(ct)), pp.phi, pp.psi))


# ---------------------------------------------------------------------------
# gauge potential, magnetic two-form, and the Killing-Yano family


def tn_potential_oneform(m: float):
    """Covector potential of the aligned magnetic field.

    Its exterior derivative is minus the third self-dual basis form, so a
    flow of charge e driven by c = (0, 0, e) conserves P_a + e Phi_a for
    both angular Killing directions.
    """

    def phi(x: np.ndarray) -> np.ndarray:
        r, th = x[0], x[1]
        out = np.zeros(4)
        out[2] = -(m * r + 0.5 * r**2 * np.sin(th) ** 2)
        out[3] = -r * np.cos(th)
        return out

    return phi


def tn_magnetic_two_form(model: MetricModel):
    """F = d Phi, the two-form entering the charged symplectic structure."""

    def F_at(x: np.ndarray) -> np.ndarray:
        return -model.sd_two_forms(np.asarray(x, dtype=float))[2]

    return F_at


def _sigma3_tilde(m: float, th: float) -> np.ndarray:
    """Covector dpsi + m cos(theta) dphi."""
    return np.array([0.0, 0.0, m * np.cos(th), 1.0])


def _killing_oneform(m: float):
    def K(x: np.ndarray) -> np.ndarray:
        r = x[0]
        V = 1.0 + m / r
        return _sigma3_tilde(m, x[1]) / V

    return K


def _wedge_dr(s3: np.ndarray) -> np.ndarray:
    out = np.zeros((4, 4))
    out[0, :] = s3
    return out - out.T


def _wedge_dth_dph(coeff: float) -> np.ndarray:
    out = np.zeros((4, 4))
    out[1, 2] = coeff
    return out - out.T


def tn_cky_Y(m: float) -> CKYData:
    """Self-dual conformal Killing-Yano two-form."""

    def Y(x: np.ndarray) -> np.ndarray:
        r, th = x[0], x[1]
        return (-r * _wedge_dr(_sigma3_tilde(m, th))
                + _wedge_dth_dph(-r**2 * (r + m) * np.sin(th)))

    return CKYData(Y_at=Y, K_at=_killing_oneform(m), name="Y_sd")


def tn_cky_W(m: float) -> CKYData:
    """Anti-self-dual conformal Killing-Yano two-form (same one-form as Y)."""

    def W(x: np.ndarray) -> np.ndarray:
        r, th = x[0], x[1]
        return (-(r + m) * _wedge_dr(_sigma3_tilde(m, th))
                + _wedge_dth_dph(r * (r + m) ** 2 * np.sin(th)))

    return CKYData(Y_at=W, K_at=_killing_oneform(m), name="W_asd")


def tn_ky_Z(m: float) -> CKYData:
    """Killing-Yano two-form; its trace one-form vanishes.

    The self-dual and anti-self-dual parts reproduce Y and W up to the
    common factor -1/m:  Y - W = -m Z.
    """

    def Z(x: np.ndarray) -> np.ndarray:
        r, th = x[0], x[1]
        return (-_wedge_dr(_sigma3_tilde(m, th))
                + _wedge_dth_dph(r * (r + m) * (2.0 * r + m) * np.sin(th) / m))

    return CKYData(Y_at=Z, K_at=None, name="Z_ky")


def w_from_velocity(model: MetricModel, x: np.ndarray, u: np.ndarray, e: float) -> float:
    """Velocity form of the quadratic integral.

    Contracts the anti-self-dual tensor with the force two-form of the
    charge-e flow; equals the momentum form of the integral identically.
    """
    x = np.asarray(x, dtype=float)
    m = _nut_parameter(model)
    W = tn_cky_W(m).Y(x)
    G = e * model.sd_two_forms(x)[2]
    ginv = model.inverse_metric(x)
    ucov = model.metric(x) @ u
    H = 0.5 * float(u @ ucov)
    return float(np.einsum("ac,cd,db,a,b", W, ginv, G, u, u) - 2.0 * H * ucov[3])


def _nut_parameter(model) -> float:
    m = getattr(model, "m", None)
    if m is None:
        raise TypeError(f"model {model!r} carries no NUT parameter")
    return float(m)


# ---------------------------------------------------------------------------
# separation constants and the quartic


@dataclass(frozen=True)
class SeparationConstants:
    """Constants of the separated charged flow.

    E and J are the conserved canonical momenta of d/dpsi and d/dphi, Q the
    separation constant, mu the mass (fixed to one for unit-speed flows),
    e the charge, m the NUT parameter.
    """

    E: float
    J: float
    Q: float
    mu: float = 1.0
    e: float = 0.0
    m: float = 1.0


def quartic_coefficients(E: float, Q: float, consts: SeparationConstants) -> np.ndarray:
    """Coefficients (u0..u4) of the separated radial polynomial.

    The xi branch uses the same function at (-E, -Q).
    """
    J, mu, e, m = consts.J, consts.mu, consts.e, consts.m
    return np.array([
        -4.0 * (J + E * m) ** 2,
        4.0 * (Q + m * (mu**2 - 2.0 * J * e - 2.0 * E**2)),
        4.0 * (mu**2 - m**2 * e**2 - E**2 - J * e - 3.0 * E * m * e),
        -4.0 * e * (E + m * e),
        -(e**2),
    ])


def quartic_radicand(x: float, E: float, Q: float, consts: SeparationConstants) -> float:
    u = quartic_coefficients(E, Q, consts)
    return float(u[0] + x * (u[1] + x * (u[2] + x * (u[3] + x * u[4]))))


def quartic_U(x: float, E: float, Q: float, consts: SeparationConstants) -> float:
    """U = sqrt of the separated quartic; defined on the allowed region."""
    rad = quartic_radicand(x, E, Q, consts)
    if rad < 0:
        raise TurningPointError(
            f"negative radicand {rad!r} at x={x!r}: outside the classically "
            "allowed region")
    return float(np.sqrt(rad))


def radicand_root(consts: SeparationConstants, E: float, Q: float,
                  lo: float, hi: float) -> float:
    """Turning point: bracketed root of the radicand on [lo, hi]."""
    u = quartic_coefficients(E, Q, consts)

    def f(x):
        return u[0] + x * (u[1] + x * (u[2] + x * (u[3] + x * u[4])))

    def fp(x):
        return u[1] + x * (2.0 * u[2] + x * (3.0 * u[3] + 4.0 * x * u[4]))

    return root_solve(f, lo, hi, fprime=fp, xtol=1e-13)


# ---------------------------------------------------------------------------
# trajectory-facing operations


def _parabolic_series(traj, m: float):
    """eta, xi and their parameter derivatives along a trajectory."""
    n = len(traj.s)
    eta = np.zeros(n)
    xi = np.zeros(n)
    deta = np.zeros(n)
    dxi = np.zeros(n)
    for i in range(n):
        smp = traj.sample(i)
        r, th = smp.point.coords[0], smp.point.coords[1]
        ur, uth = smp.u[0], smp.u[1]
        ct, st = np.cos(th), np.sin(th)
        eta[i] = r * (1.0 + ct)
        xi[i] = r * (1.0 - ct)
        deta[i] = ur * (1.0 + ct) - r * st * uth
        dxi[i] = ur * (1.0 - ct) + r * st * uth
    return eta, xi, deta, dxi


_AXIS_WARN_EPS = 1e-6


def extract_constants(traj, e: float, m: float) -> SeparationConstants:
    """Read (E, J, Q) off a magnetic trajectory.

    E and J are the canonical momenta at the first sample; Q is solved
    from the eta branch of the separated equation there.  The xi branch
    evaluated at (-E, -Q) must then close to the same constant, which
    hj_residual verifies along the whole trajectory.
    """
    if traj.model_name != "taub_nut":
        raise ValueError(f"expected a taub_nut trajectory, got {traj.model_name!r}")
    smp = traj.sample(0)
    x = smp.point.array
    model = TaubNUT(m=m)
    ucov = model.metric(x) @ smp.u
    p = ucov + e * tn_potential_oneform(m)(x)
    E, J = float(p[3]), float(p[2])

    eta, xi, deta, dxi = _parabolic_series(traj, m)
    if np.min(eta) < _AXIS_WARN_EPS or np.min(xi) < _AXIS_WARN_EPS:
        warnings.warn(
            "trajectory approaches the rotation axis; the parabolic "
            "branches degenerate there", RuntimeWarning, stacklevel=2)

    base = SeparationConstants(E=E, J=J, Q=0.0, mu=1.0, e=e, m=m)
    lhs_sq = (deta[0] * (eta[0] + xi[0] + 2.0 * m)) ** 2
    Q = (lhs_sq - quartic_radicand(eta[0], E, 0.0, base)) / (4.0 * eta[0])
    return SeparationConstants(E=E, J=J, Q=float(Q), mu=1.0, e=e, m=m)


def _tracked_signs(dvals: np.ndarray) -> np.ndarray:
    """Branch signs that flip only at zero crossings of the derivative."""
    signs = np.zeros(len(dvals))
    current = 1.0 if dvals[0] >= 0 else -1.0
    for i, d in enumerate(dvals):
        if d != 0.0 and np.sign(d) != current:
            current = np.sign(d)
        signs[i] = current
    return signs


def hj_residual(traj, consts: SeparationConstants) -> float:
    """Largest violation of the separated first-order equations.

    For each branch the residual is |x' (eta + xi + 2m) - sign * U|, the
    sign tracked through turning points by the zero crossings of x'.
    """
    m = consts.m
    eta, xi, deta, dxi = _parabolic_series(traj, m)
    wsum = eta + xi + 2.0 * m
    worst = 0.0
    for vals, dvals, Eb, Qb in (
        (eta, deta, consts.E, consts.Q),
        (xi, dxi, -consts.E, -consts.Q),
    ):
        signs = _tracked_signs(dvals)
        rad = np.array([quartic_radicand(v, Eb, Qb, consts) for v in vals])
        U = np.sqrt(np.maximum(rad, 0.0))
        worst = max(worst, float(np.max(np.abs(dvals * wsum - signs * U))))
    return worst


_TURNING_REL = 1e-9


def unparam_quadrature(eta_range, xi_range, consts: SeparationConstants):
    """The two branch integrals of dx / U over the given ranges.

    Endpoints sitting on a root of the radicand are integrated in the
    de-singularized variable; a root strictly inside a range raises, since
    the unparametrized relation only holds between consecutive turning
    points.  Returns (I_eta, I_xi).
    """

    def one(rng, Eb, Qb):
        a, b = float(min(rng)), float(max(rng))
        if a == b:
            return 0.0

        def rad(x):
            return quartic_radicand(x, Eb, Qb, consts)

        mid = rad(0.5 * (a + b))
        scale = max(abs(mid), abs(rad(a)), abs(rad(b)), 1e-300)
        return inv_sqrt_integral(
            rad, a, b,
            left_turning=abs(rad(a)) <= _TURNING_REL * scale,
            right_turning=abs(rad(b)) <= _TURNING_REL * scale,
        )

    return (one(eta_range, consts.E, consts.Q),
            one(xi_range, -consts.E, -consts.Q))


def separation_report(traj, consts: SeparationConstants,
                      mismatch: float | None = None) -> dict:
    """Summary mapping for one trajectory's separation check."""
    out = {
        "E": consts.E,
        "J": consts.J,
        "Q": consts.Q,
        "hj_residual_max": hj_residual(traj, consts),
    }
    if mismatch is not None:
        out["quadrature_mismatch"] = float(mismatch)
    return out
