"""Closed-form machinery special to the Eguchi-Hanson geometry.

The magnetic flow written in an orthonormal frame adapted to the SO(3)
orbits, the conserved right-invariant momenta of that flow, the reduced
first-order angular system, circle solutions confined to orbits of
constant radius together with their reduction to a single quartic
quadrature, and the prolate-spheroidal separation of the charged
Hamilton-Jacobi equation on the two-centre form of the metric.

Conventions.  The force two-form is G = sum_i c_i Omega^i in the
distinguished self-dual basis and acts through a.flat = i_u G.  The gauge
potential used throughout satisfies dPhi = -G; this is the sign for which
the right-invariant momenta p_i = R_i^a (u_a + kappa Phi_a) are constants
of motion at kappa = +1.  Momenta are labelled so that p1 pairs with the
rotation about the symmetry axis of the orbits and (p2, p3) with the two
transverse rotations; the generators are normalised as twice the
coordinate rotation fields, which is the scaling that makes the momenta
enter the velocity reconstruction with unit weight.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import (
    DegenerateConstantsError,
    DomainError,
    SingularCoordinateError,
    UnsupportedOperationError,
)
from .flows import LorentzState
from .geometry import EguchiHanson
from .geometry.base import ChartPoint
from .geometry.euler import right_invariant_fields
from .geometry.gibbons_hawking import GibbonsHawking
from .sqrtquad import inv_sqrt_integral

__all__ = [
    "EHOrbitConstants",
    "orbit_rotation_rate",
    "eh_frame_rhs",
    "eh_potential_oneform",
    "right_invariant_momenta",
    "u_from_momenta",
    "angular_rhs",
    "orbit_ode_rhs",
    "orbit_constants_from_state",
    "confined_orbit_data",
    "h_ode_residual",
    "h_quadrature",
    "starstar_residual",
    "orbit_reconstruction",
    "prolate_coordinates",
    "prolate_momenta",
    "eh_hj_residual",
    "eh_separation_constants",
]


def _profile(alpha: float, r: float):
    """(f, k^4) with f = sqrt(1 - (alpha/r)^4); rejects r at or inside the bolt."""
    if r <= alpha:
        raise DomainError("r", r, f"> alpha={alpha}")
    k4 = (alpha / r) ** 4
    return np.sqrt(1.0 - k4), k4


def orbit_rotation_rate(alpha: float, r: float) -> float:
    """Precession coefficient R = 2 k^4 / (r sqrt(1-k^4)) of the orbit system.

    This is the coefficient multiplying the quadratic terms of the reduced
    velocity equations on an orbit of radius r, read off from the frame
    flow; k = alpha/r.
    """
    f, k4 = _profile(alpha, r)
    return 2.0 * k4 / (r * f)


@dataclass(frozen=True)
class EHOrbitConstants:
    """Constants attached to a circle solution on an orbit of constant radius.

    c1..c3 select the force two-form, p1..p3 are the right-invariant
    momenta, m0..m2 are the coefficients of the velocity quartic
    hdot^2 = (-h^4 + 4 m1 h^2 - 8 m0 h + 4 m2)/4, m3 is the arclength
    origin of the associated quadrature, R the precession coefficient and
    r the orbit radius.  m0 = c3 (c1^2 + c2^2) always; for unit-speed data
    the remaining coefficients obey m2 = R^2 cc - (m1 + cc)^2 - c3^2 cc
    with cc = c1^2 + c2^2, which is the single constraint tying the
    constants to the normalisation of the velocity.
    """

    alpha: float
    r: float
    c1: float
    c2: float
    c3: float
    p1: float
    p2: float
    p3: float
    m0: float
    m1: float
    m2: float
    m3: float
    R: float

    def __post_init__(self):
        cc = self.c1 ** 2 + self.c2 ** 2
        scale = max(1.0, abs(self.c3) * max(1.0, cc))
        if abs(self.m0 - self.c3 * cc) > 1e-9 * scale:
            raise ValueError("m0 must equal c3 (c1^2 + c2^2)")

    @property
    def cc(self) -> float:
        return self.c1 ** 2 + self.c2 ** 2

    @property
    def c(self) -> np.ndarray:
        return np.array([self.c1, self.c2, self.c3])

    @property
    def p(self) -> np.ndarray:
        return np.array([self.p1, self.p2, self.p3])

    def quartic(self, h):
        """Radicand -h^4 + 4 m1 h^2 - 8 m0 h + 4 m2 of the quadrature."""
        return -h ** 4 + 4.0 * self.m1 * h ** 2 - 8.0 * self.m0 * h + 4.0 * self.m2

    def quartic_deriv(self, h):
        return -4.0 * h ** 3 + 8.0 * self.m1 * h - 8.0 * self.m0


def _require_eh(model):
    if not isinstance(model, EguchiHanson):
        raise UnsupportedOperationError(
            f"model {model.name!r} does not carry the orbit frame machinery"
        )


def eh_frame_rhs(st, c, alpha: float) -> np.ndarray:
    """Flow of the magnetic frame system on the biaxial chart.

    ``st`` packs (u1, u2, u3, u4, r, theta, phi, psi): the four frame
    velocity components followed by the chart coordinates.  Returns the
    derivative of the same packing.  The frame equations close on
    (u, r) alone; the angle velocities follow from inverting the frame
    pairing and carry the coordinate singularity at sin(theta) = 0.
    """
    st = np.asarray(st, dtype=float)
    if st.shape != (8,):
        raise ValueError("state must pack (u1..u4, r, theta, phi, psi)")
    u = st[:4]
    r, th, _, ps = st[4:]
    norm = np.sum(u * u)
    if abs(norm - 1.0) > 1e-9:
        raise ValueError(f"frame velocity must be unit: |u|^2 = {norm!r}")
    f, k4 = _profile(alpha, r)
    A = 2.0 * k4 / (r * f)
    B = f / r
    C = (1.0 + k4) / (r * f)
    u1, u2, u3, u4 = u
    c1, c2, c3 = c
    du = np.array([
        A * u2 * u3 - B * u1 * u4 + c2 * u3 - c3 * u2 - c1 * u4,
        -A * u1 * u3 - B * u2 * u4 + c3 * u1 - c1 * u3 - c2 * u4,
        -C * u3 * u4 + c1 * u2 - c2 * u1 - c3 * u4,
        B * (1.0 - u4 ** 2) + A * u3 ** 2 + c1 * u1 + c2 * u2 + c3 * u3,
    ])
    sth = np.sin(th)
    if abs(sth) < 1e-12:
        raise SingularCoordinateError("theta on the rotation axis")
    sps, cps = np.sin(ps), np.cos(ps)
    dth = (2.0 / r) * (u1 * cps - u2 * sps)
    dph = (2.0 / (r * sth)) * (u1 * sps + u2 * cps)
    dps = (2.0 / (r * f)) * u3 - np.cos(th) * dph
    return np.concatenate([du, [f * u4, dth, dph, dps]])


def eh_potential_oneform(model: EguchiHanson, c):
    """Gauge potential of the force two-form, as a field of chart covectors.

    Returns phi with d(phi) = -sum_i c_i Omega^i, the sign under which the
    right-invariant momenta are conserved.  In the orthonormal coframe the
    covector is (c1 r f / 2, c2 r f / 2, c3 r / (2 f), 0).
    """
    _require_eh(model)
    c = np.asarray(c, dtype=float)

    def phi(x: np.ndarray) -> np.ndarray:
        r = x[0]
        f, _ = _profile(model.alpha, r)
        w = np.array([0.5 * c[0] * r * f, 0.5 * c[1] * r * f,
                      0.5 * c[2] * r / f, 0.0])
        return w @ model.coframe(x)

    return phi


def _rotation_rows(x: np.ndarray) -> np.ndarray:
    """Rows 2*xi_axis, 2*xi_y, 2*xi_x as chart vectors on (r, th, ph, ps)."""
    R3 = right_invariant_fields(x[1], x[2])
    rows = np.zeros((3, 4))
    rows[0, 1:] = R3[2]
    rows[1, 1:] = R3[1]
    rows[2, 1:] = R3[0]
    return 2.0 * rows


def right_invariant_momenta(model: EguchiHanson, x, u, c, kappa: float = 1.0):
    """Conserved momenta p_i = R_i^a (u_a + kappa phi_a) of the magnetic flow.

    The three generators R_i are the rotation fields of the orbit action,
    normalised as twice the coordinate rotations and ordered (axis, y, x).
    With the packaged potential the momenta are constant along magnetic
    trajectories at kappa = 1.
    """
    _require_eh(model)
    x = np.asarray(x, dtype=float)
    u = np.asarray(u, dtype=float)
    cov = model.metric(x) @ u + kappa * eh_potential_oneform(model, c)(x)
    return _rotation_rows(x) @ cov


def u_from_momenta(model: EguchiHanson, x, p, c, kappa: float = 1.0):
    """Frame velocity (u1, u2, u3) solving the momentum pairing for u.

    Inverts p = M (u + kappa phi) in closed form; the fourth frame
    component is not constrained by the momenta.
    """
    _require_eh(model)
    r, th, ph, ps = np.asarray(x, dtype=float)
    f, _ = _profile(model.alpha, r)
    p1, p2, p3 = p
    c1, c2, c3 = c
    sth, cth = np.sin(th), np.cos(th)
    sph, cph = np.sin(ph), np.cos(ph)
    sps, cps = np.sin(ps), np.cos(ps)
    u1 = -0.5 * kappa * c1 * r * f + (
        p2 * (cph * cps - sph * sps * cth)
        - p3 * (sph * cps + cph * sps * cth)
        + p1 * sth * sps
    ) / r
    u2 = -0.5 * kappa * c2 * r * f + (
        -p2 * (cph * sps + sph * cps * cth)
        + p3 * (sph * sps - cph * cps * cth)
        + p1 * sth * cps
    ) / r
    u3 = -0.5 * kappa * c3 * r / f + (
        p1 * cth + p2 * sph * sth + p3 * cph * sth
    ) / (r * f)
    return np.array([u1, u2, u3])


def angular_rhs(phi: float, theta: float, psi: float,
                consts: EHOrbitConstants) -> np.ndarray:
    """First-order angular system (phidot, thetadot, psidot).

    Closes on the three angles once the momenta and force constants are
    fixed; the orbit radius and bolt parameter enter through ``consts``.
    """
    sth = np.sin(theta)
    if abs(sth) < 1e-12:
        raise SingularCoordinateError("theta on the rotation axis")
    r = consts.r
    f, _ = _profile(consts.alpha, r)
    c1, c2, c3 = consts.c1, consts.c2, consts.c3
    p1, p2, p3 = consts.p1, consts.p2, consts.p3
    cth = np.cos(theta)
    cot = cth / sth
    sph, cph = np.sin(phi), np.cos(phi)
    sps, cps = np.sin(psi), np.cos(psi)
    trans = p2 * sph + p3 * cph
    dph = (2.0 / r ** 2) * (p1 - cot * trans) - f * (c1 * sps + c2 * cps) / sth
    dth = (2.0 / r ** 2) * (p2 * cph - p3 * sph) - f * (c1 * cps - c2 * sps)
    dps = (
        -c3 / f ** 2
        + f * cot * (c1 * sps + c2 * cps)
        + 2.0 * trans / (r ** 2 * f ** 2 * sth)
        - 2.0 * consts.alpha ** 4 * (cth ** 2 * trans - p1 * cth * sth)
        / (r ** 6 * f ** 2 * sth)
    )
    return np.array([dph, dth, dps])


def orbit_ode_rhs(uvec, R: float, c) -> np.ndarray:
    """Reduced velocity system on an orbit of constant radius.

    The derivative of (u1, u2, u3) under the frame flow restricted to
    radial rest; preserves u1^2 + u2^2 + u3^2 exactly since every term is
    antisymmetric in the components.
    """
    a, b, g = uvec
    c1, c2, c3 = c
    return np.array([
        R * b * g + c2 * g - c3 * b,
        -R * a * g + c3 * a - c1 * g,
        c1 * b - c2 * a,
    ])


def orbit_constants_from_state(alpha: float, r: float, uvec, c,
                               p=None, m3: float = 0.0) -> EHOrbitConstants:
    """Constant set of the reduced orbit system from one velocity sample.

    ``uvec`` is the frame velocity (u1, u2, u3) with the radial component
    already zero.  m1 is fixed by the linear first integral, m2 by the
    unit-speed constraint.
    """
    uvec = np.asarray(uvec, dtype=float)
    c = np.asarray(c, dtype=float)
    norm = np.sum(uvec * uvec)
    if abs(norm - 1.0) > 1e-9:
        raise ValueError(f"orbit velocity must be unit: |u|^2 = {norm!r}")
    R = orbit_rotation_rate(alpha, r)
    cc = c[0] ** 2 + c[1] ** 2
    h = R * uvec[2] - c[2]
    m0 = c[2] * cc
    m1 = 0.5 * (h ** 2 - 2.0 * cc - 2.0 * R * (c[0] * uvec[0] + c[1] * uvec[1]))
    m2 = R ** 2 * cc - (m1 + cc) ** 2 - c[2] ** 2 * cc
    if p is None:
        p = (np.nan, np.nan, np.nan)
    return EHOrbitConstants(alpha=alpha, r=r, c1=c[0], c2=c[1], c3=c[2],
                            p1=p[0], p2=p[1], p3=p[2],
                            m0=m0, m1=m1, m2=m2, m3=m3, R=R)


def confined_orbit_data(model: EguchiHanson, r: float, gamma: float,
                        chi: float = 0.0, angles=(1.2, 0.6, 0.9)):
    """Initial data for a trajectory genuinely confined to an orbit.

    Confinement requires the radial force balance to hold for all time,
    which pins the frame velocity to the rotating equilibrium
    (u1, u2) = -gamma (c1, c2)/h of the reduced system; the returned
    constants describe that family.  ``gamma`` is the fibre component of
    the velocity (nonzero, |gamma| <= 1) and ``chi`` the transverse phase.
    Returns (state, consts): a unit flow state on the orbit of radius r
    and the constant set of its reduction.
    """
    _require_eh(model)
    if not 0.0 < abs(gamma) <= 1.0:
        raise ValueError("gamma must lie in (0, 1] up to sign")
    f, _ = _profile(model.alpha, r)
    R = orbit_rotation_rate(model.alpha, r)
    c3 = -gamma * (f / r + R * (2.0 * gamma ** 2 - 1.0))
    h = R * gamma - c3
    cc = h ** 2 * (1.0 - gamma ** 2) / gamma ** 2
    c1, c2 = np.sqrt(cc) * np.cos(chi), np.sqrt(cc) * np.sin(chi)
    c = np.array([c1, c2, c3])
    uf = np.array([-c1 * gamma / h, -c2 * gamma / h, gamma, 0.0])
    x = np.array([r, *angles])
    u = np.linalg.solve(model.coframe(x), uf)
    p = right_invariant_momenta(model, x, u, c)
    consts = orbit_constants_from_state(model.alpha, r, uf[:3], c, p=p)
    state = LorentzState(ChartPoint(model.chart_id, tuple(x)), u, c)
    return state, consts


def h_ode_residual(h: float, hd: float, hdd: float, hddd: float,
                   m0: float) -> float:
    """Residual of the third-order fibre-velocity equation.

    The scalar h carries the whole reduced dynamics; the equation reads
    h * h''' = (h'' - h^3 + m0) h'.
    """
    return abs(h * hddd - (hdd - h ** 3 + m0) * hd)


def h_quadrature(h_range, consts: EHOrbitConstants, *,
                 left_turning: bool = False,
                 right_turning: bool = False) -> float:
    """Arclength increment 2 * int dh / sqrt(quartic) across ``h_range``.

    The increment is the parameter time spent traversing the range on a
    monotone branch; endpoints at simple roots of the quartic are handled
    by the square-root substitution when flagged.  An interior root makes
    the branch non-monotone and is rejected.
    """
    a, b = float(h_range[0]), float(h_range[1])
    if a == b:
        return 0.0
    if a > b:
        a, b = b, a
        left_turning, right_turning = right_turning, left_turning
    return 2.0 * inv_sqrt_integral(consts.quartic, a, b,
                                   left_turning=left_turning,
                                   right_turning=right_turning)


def starstar_residual(u1: float, u2: float, u3: float, r: float, f: float,
                      consts: EHOrbitConstants):
    """Residuals of the two algebraic relations obeyed on orbit solutions.

    Returns (norm_residual, linear_residual): the defect of
    u1^2 + u2^2 + u3^2 = 1 and of the linear first integral
    c1 u1 + c2 u2 = (h^2 - 2 cc - 2 m1) / (2 R) with h = R u3 - c3,
    R = 2 (1 - f^2) / (r f) and cc = c1^2 + c2^2.
    """
    cc = consts.cc
    if cc == 0.0:
        raise DegenerateConstantsError(
            "c1 = c2 = 0: the linear relation degenerates; integrate the "
            "orbit system directly instead"
        )
    R = 2.0 * (1.0 - f ** 2) / (r * f)
    h = R * u3 - consts.c3
    norm_res = abs(u1 ** 2 + u2 ** 2 + u3 ** 2 - 1.0)
    lin_res = abs(consts.c1 * u1 + consts.c2 * u2
                  - (h ** 2 - 2.0 * cc - 2.0 * consts.m1) / (2.0 * R))
    return norm_res, lin_res


def orbit_reconstruction(consts: EHOrbitConstants, h0: float,
                         hdot_sign: float, s_grid) -> np.ndarray:
    """Orbit velocities rebuilt from the quartic quadrature alone.

    Evolves h by hddot = quartic'(h)/8 with hdot(0) fixed from the
    radicand, then recovers (u1, u2) from the pair of linear relations
    c1 u1 + c2 u2 = (h^2 - 2 cc - 2 m1)/(2R), c1 u2 - c2 u1 = hdot / R
    and u3 from h.  Returns an array of shape (len(s_grid), 3).
    """
    cc = consts.cc
    if cc == 0.0:
        raise DegenerateConstantsError(
            "c1 = c2 = 0: reconstruction divides by c1^2 + c2^2"
        )
    s_grid = np.asarray(s_grid, dtype=float)
    q0 = consts.quartic(h0)
    if q0 < -1e-12:
        raise ValueError(f"radicand negative at h0: {q0!r}")
    hd0 = np.sign(hdot_sign) * 0.5 * np.sqrt(max(q0, 0.0))

    def rhs(s, y):
        return [y[1], consts.quartic_deriv(y[0]) / 8.0]

    sol = solve_ivp(rhs, (s_grid[0], s_grid[-1]), [h0, hd0],
                    rtol=1e-12, atol=1e-14, dense_output=True)
    if not sol.success:
        raise RuntimeError(f"h evolution failed: {sol.message}")
    h, hd = sol.sol(s_grid)
    R = consts.R
    lin = (h ** 2 - 2.0 * cc - 2.0 * consts.m1) / (2.0 * R)
    rot = hd / R
    u1 = (consts.c1 * lin - consts.c2 * rot) / cc
    u2 = (consts.c2 * lin + consts.c1 * rot) / cc
    u3 = (h + consts.c3) / R
    return np.stack([u1, u2, u3], axis=1)


def _two_center_alpha(model: GibbonsHawking) -> float:
    centers = np.asarray(model.centers, dtype=float)
    if centers.shape != (2, 3):
        raise UnsupportedOperationError(
            "prolate coordinates need exactly two monopole centres"
        )
    return 0.5 * np.linalg.norm(centers[1] - centers[0])


def prolate_coordinates(model: GibbonsHawking, x) -> tuple:
    """(zeta, lambda) of a chart point of the two-centre model.

    zeta = (r1 + r2)/(2 alpha) > 1 and lambda = (r1 - r2)/(2 alpha) in
    (-1, 1), with r1, r2 the distances to the lower and upper centre.
    """
    al = _two_center_alpha(model)
    centers = np.asarray(model.centers, dtype=float)
    lower = centers[np.argmin(centers[:, 2])]
    upper = centers[np.argmax(centers[:, 2])]
    p = np.asarray(x, dtype=float)[:3]
    r1 = np.linalg.norm(p - lower)
    r2 = np.linalg.norm(p - upper)
    ze = (r1 + r2) / (2.0 * al)
    la = (r1 - r2) / (2.0 * al)
    if ze <= 1.0 + 1e-12:
        raise DomainError("zeta", ze, "> 1")
    if abs(la) >= 1.0 - 1e-12:
        raise DomainError("lambda", la, "inside (-1, 1)")
    return ze, la


def prolate_momenta(model: GibbonsHawking, x, u) -> tuple:
    """(P_zeta, P_lambda, P_phi, P_tau) of a chart state, metric-lowered.

    P_phi and P_tau are the covector components along the axial rotation
    and the fibre; P_zeta and P_lambda follow by the coordinate chain
    rule from the cartesian components.
    """
    al = _two_center_alpha(model)
    x = np.asarray(x, dtype=float)
    ucov = model.metric(x) @ np.asarray(u, dtype=float)
    ze, la = prolate_coordinates(model, x)
    rho = np.hypot(x[0], x[1])
    if rho < 1e-12:
        raise SingularCoordinateError("axial point: phi undefined")
    P_rho = (x[0] * ucov[0] + x[1] * ucov[1]) / rho
    P_phi = x[0] * ucov[1] - x[1] * ucov[0]
    rho_ze = al * ze * np.sqrt((1.0 - la ** 2) / (ze ** 2 - 1.0))
    rho_la = -al * la * np.sqrt((ze ** 2 - 1.0) / (1.0 - la ** 2))
    P_ze = P_rho * rho_ze + ucov[2] * al * la
    P_la = P_rho * rho_la + ucov[2] * al * ze
    return P_ze, P_la, P_phi, ucov[3]


def _separation_branches(model, x, u, e: float):
    """(zeta_branch, lambda_branch, J, E) at one sample of a charged flow."""
    al = _two_center_alpha(model)
    ze, la = prolate_coordinates(model, x)
    P_ze, P_la, P_phi, P_tau = prolate_momenta(model, x, u)
    J = P_phi + 2.0 * e * al * ze
    E = P_tau + e * al * ze * la
    mu2 = np.asarray(u) @ model.metric(np.asarray(x, dtype=float)) @ np.asarray(u)
    zb = (
        (ze ** 2 - 1.0) * P_ze ** 2
        + (J ** 2 - 4.0 * e * al * J * ze ** 3 + 4.0 * e ** 2 * al ** 2 * ze ** 4)
        / (ze ** 2 - 1.0)
        - 2.0 * al * ze * mu2
    )
    lb = (
        (1.0 - la ** 2) * P_la ** 2
        + (J ** 2 - 4.0 * J * E * la + 4.0 * E ** 2) / (1.0 - la ** 2)
    )
    return zb, lb, J, E


def eh_separation_constants(model: GibbonsHawking, traj, e: float = 1.0):
    """(E, J, Q_sep) read off the first sample of a charged trajectory.

    E and J are the charge-shifted fibre and axial momenta; Q_sep is the
    value of the lambda branch, the constant the two separated branches
    share when the force is aligned with the two-centre axis form.
    """
    row = traj.y[0]
    zb, lb, J, E = _separation_branches(model, row[:4], row[4:8], e)
    return E, J, lb


def eh_hj_residual(model: GibbonsHawking, traj, E: float, J: float,
                   Q_sep: float, e: float = 1.0) -> float:
    """Worst defect of the separated Hamilton-Jacobi branches along a flow.

    Each sample is mapped to prolate-spheroidal coordinates; the zeta
    branch must equal -Q_sep and the lambda branch +Q_sep, both built from
    the supplied conserved (E, J) and charge.  Separation holds only for
    force two-forms proportional to the third self-dual basis element, so
    a generic force direction leaves an order-one residual.
    """
    worst = 0.0
    for row in traj.y:
        x, u = row[:4], row[4:8]
        zb, lb, Js, Es = _separation_branches(model, x, u, e)
        worst = max(worst, abs(zb + Q_sep), abs(lb - Q_sep),
                    abs(Js - J), abs(Es - E))
    return worst
