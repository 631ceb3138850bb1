"""Orbit-frame flow, conserved momenta and separation on the bolt metric."""

import numpy as np
import pytest
from scipy.integrate import solve_ivp

import confgeo as cg
from confgeo.geometry.euler import left_invariant_fields, right_invariant_fields
from confgeo.numdiff import fd_exterior_derivative_1form, fd_lie_derivative_1form


def unit_velocity(model, x, rng):
    v = rng.normal(size=4)
    return v / np.sqrt(v @ model.metric(x) @ v)


def lorentz_trajectory(model, x, u, c, s_max, n=121):
    st = cg.LorentzState(cg.ChartPoint(model.chart_id, tuple(x)), u, np.asarray(c))
    return cg.integrate(model, "lorentz", st, (0.0, s_max), n_samples=n)


# ---------------------------------------------------------------------------
# frame form of the magnetic flow


def test_frame_rhs_matches_reduced_flow():
    model = cg.EguchiHanson(alpha=1.0)
    rng = np.random.default_rng(3)
    worst_x, worst_u = 0.0, 0.0
    for _ in range(40):
        x = model.random_point(rng)
        u = unit_velocity(model, x, rng)
        c = rng.normal(size=3)
        st = cg.LorentzState(cg.ChartPoint(model.chart_id, tuple(x)), u, c)
        dx, du = cg.lorentz_rhs(model, st)
        d = cg.eh_frame_rhs(np.concatenate([model.coframe(x) @ u, x]), c,
                            model.alpha)
        worst_x = max(worst_x, np.max(np.abs(d[4:] - dx)))
        # frame components differentiate the coframe along the motion
        eps = 1e-6
        dE = (model.coframe(x + eps * dx) - model.coframe(x - eps * dx)) / (2 * eps)
        worst_u = max(worst_u, np.max(np.abs(
            d[:4] - dE @ u - model.coframe(x) @ du)))
    assert worst_x < 1e-10
    assert worst_u < 1e-6


def test_frame_rhs_rejects_bad_state():
    ok = np.array([0.0, 0.0, 0.0, 1.0, 2.0, 1.0, 0.5, 0.3])
    with pytest.raises(cg.DomainError):
        bad = ok.copy()
        bad[4] = 0.9
        cg.eh_frame_rhs(bad, (0.0, 0.0, 0.0), 1.0)
    with pytest.raises(cg.SingularCoordinateError):
        bad = ok.copy()
        bad[5] = 0.0
        cg.eh_frame_rhs(bad, (0.0, 0.0, 0.0), 1.0)
    with pytest.raises(ValueError):
        bad = ok.copy()
        bad[3] = 1.5
        cg.eh_frame_rhs(bad, (0.0, 0.0, 0.0), 1.0)
    with pytest.raises(ValueError):
        cg.eh_frame_rhs(ok[:7], (0.0, 0.0, 0.0), 1.0)


# ---------------------------------------------------------------------------
# gauge potential


def test_potential_derivative_is_minus_force_form():
    model = cg.EguchiHanson(alpha=1.1)
    rng = np.random.default_rng(5)
    c = np.array([0.3, -0.5, 0.8])
    phi = cg.eh_potential_oneform(model, c)
    for _ in range(4):
        x = model.random_point(rng)
        dphi = fd_exterior_derivative_1form(phi, x)
        target = -np.tensordot(c, model.sd_two_forms(x), axes=1)
        assert np.max(np.abs(dphi - target)) < 1e-7


def test_potential_rotation_invariant():
    # the potential is built from invariant data, so the rotation
    # generators must leave it fixed
    model = cg.EguchiHanson(alpha=1.0)
    rng = np.random.default_rng(6)
    phi = cg.eh_potential_oneform(model, np.array([0.7, 0.2, -0.4]))

    def rotation(i):
        def field(x):
            out = np.zeros(4)
            out[1:] = 2.0 * right_invariant_fields(x[1], x[2])[i]
            return out
        return field

    for i in range(3):
        x = model.random_point(rng)
        lie = fd_lie_derivative_1form(phi, rotation(i), x)
        assert np.max(np.abs(lie)) < 1e-6


# ---------------------------------------------------------------------------
# rotation generators


def fd_bracket(X, Y, q, h=1e-6):
    q = np.asarray(q, dtype=float)
    n = len(q)
    out = np.zeros(n)
    for a in range(n):
        ea = np.zeros(n)
        ea[a] = h
        dY = (Y(q + ea) - Y(q - ea)) / (2 * h)
        dX = (X(q + ea) - X(q - ea)) / (2 * h)
        out += X(q)[a] * dY - Y(q)[a] * dX
    return out


def test_left_and_right_fields_commute():
    rng = np.random.default_rng(7)
    for _ in range(5):
        th = rng.uniform(0.3, np.pi - 0.3)
        ph = rng.uniform(0, 2 * np.pi)
        ps = rng.uniform(0, 2 * np.pi)
        q = np.array([th, ph, ps])
        for i in range(3):
            for j in range(3):
                L = lambda y, i=i: left_invariant_fields(y[0], y[2])[i]
                R = lambda y, j=j: right_invariant_fields(y[0], y[1])[j]
                assert np.max(np.abs(fd_bracket(L, R, q))) < 1e-6


def test_right_field_structure_constants():
    # [xi_x, xi_y] = -xi_z and cyclic
    rng = np.random.default_rng(8)
    q = np.array([1.1, 0.7, 2.3])
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        X = lambda y, i=i: right_invariant_fields(y[0], y[1])[i]
        Y = lambda y, j=j: right_invariant_fields(y[0], y[1])[j]
        expect = -right_invariant_fields(q[0], q[1])[k]
        assert np.max(np.abs(fd_bracket(X, Y, q) - expect)) < 1e-6


# ---------------------------------------------------------------------------
# conserved momenta


def test_momenta_conserved_along_flow():
    model = cg.EguchiHanson(alpha=1.0)
    rng = np.random.default_rng(9)
    worst = 0.0
    for _ in range(6):
        x = model.random_point(rng)
        u = unit_velocity(model, x, rng)
        c = rng.normal(size=3)
        traj = lorentz_trajectory(model, x, u, c, 30.0)
        p0 = cg.right_invariant_momenta(model, x, u, c)
        for row in traj.y:
            p = cg.right_invariant_momenta(model, row[:4], row[4:], c)
            worst = max(worst, np.max(np.abs(p - p0)))
    assert worst < 1e-7


def test_momenta_sign_convention_matters():
    # flipping the coupling sign in the pairing destroys conservation
    model = cg.EguchiHanson(alpha=1.0)
    rng = np.random.default_rng(10)
    x = model.random_point(rng)
    u = unit_velocity(model, x, rng)
    c = np.array([0.6, -0.4, 0.9])
    traj = lorentz_trajectory(model, x, u, c, 20.0)
    p0 = cg.right_invariant_momenta(model, x, u, c, kappa=-1.0)
    drift = max(
        np.max(np.abs(cg.right_invariant_momenta(model, row[:4], row[4:], c,
                                                 kappa=-1.0) - p0))
        for row in traj.y)
    assert drift > 1e-3


def test_velocity_reconstruction_closed_form():
    model = cg.EguchiHanson(alpha=1.0)
    rng = np.random.default_rng(11)
    x = model.random_point(rng)
    u = unit_velocity(model, x, rng)
    c = rng.normal(size=3)
    traj = lorentz_trajectory(model, x, u, c, 25.0)
    p0 = cg.right_invariant_momenta(model, x, u, c)
    worst = 0.0
    for row in traj.y:
        uf = model.coframe(row[:4]) @ row[4:]
        rec = cg.u_from_momenta(model, row[:4], p0, c)
        worst = max(worst, np.max(np.abs(rec - uf[:3])))
    assert worst < 1e-8


def test_velocity_reconstruction_matches_linear_solve():
    # independent oracle: invert the generator/metric pairing numerically
    model = cg.EguchiHanson(alpha=1.3)
    rng = np.random.default_rng(12)
    phi = cg.eh_potential_oneform(model, np.array([0.4, 0.7, -0.2]))
    c = np.array([0.4, 0.7, -0.2])
    for _ in range(20):
        x = model.random_point(rng)
        u = unit_velocity(model, x, rng)
        p = cg.right_invariant_momenta(model, x, u, c)
        rows = np.zeros((3, 4))
        R3 = right_invariant_fields(x[1], x[2])
        rows[0, 1:] = 2.0 * R3[2]
        rows[1, 1:] = 2.0 * R3[1]
        rows[2, 1:] = 2.0 * R3[0]
        K = rows @ model.metric(x) @ np.linalg.inv(model.coframe(x))
        assert np.max(np.abs(K[:, 3])) < 1e-9
        uf3 = np.linalg.solve(K[:, :3], p - rows @ phi(x))
        assert np.max(np.abs(cg.u_from_momenta(model, x, p, c) - uf3)) < 1e-9


# ---------------------------------------------------------------------------
# confined circle solutions


def test_confined_orbit_stays_on_orbit():
    model = cg.EguchiHanson(alpha=1.0)
    state, consts = cg.confined_orbit_data(model, r=1.7, gamma=0.55, chi=0.8)
    traj = cg.integrate(model, "lorentz", state, (0.0, 50.0), n_samples=201)
    worst_r = max(abs(row[0] - 1.7) for row in traj.y)
    worst_u4 = max(abs((model.coframe(row[:4]) @ row[4:])[3]) for row in traj.y)
    assert worst_r < 1e-8
    assert worst_u4 < 1e-8


def test_confined_orbit_h_is_double_root():
    # radial rest forces the fibre velocity onto a double root of the quartic
    model = cg.EguchiHanson(alpha=1.0)
    for gamma in (0.3, 0.55, 0.9, -0.4):
        _, consts = cg.confined_orbit_data(model, r=1.6, gamma=gamma)
        h0 = consts.R * gamma - consts.c3
        assert abs(consts.quartic(h0)) < 1e-10
        assert abs(consts.quartic_deriv(h0)) < 1e-10


def test_confined_orbit_rejects_zero_gamma():
    model = cg.EguchiHanson(alpha=1.0)
    with pytest.raises(ValueError):
        cg.confined_orbit_data(model, r=1.5, gamma=0.0)


# ---------------------------------------------------------------------------
# angular system


def test_angular_rhs_matches_frame_flow():
    model = cg.EguchiHanson(alpha=1.0)
    state, consts = cg.confined_orbit_data(model, r=1.7, gamma=0.55, chi=0.8)
    traj = cg.integrate(model, "lorentz", state, (0.0, 40.0), n_samples=81)
    worst = 0.0
    for row in traj.y:
        x = row[:4]
        uf = model.coframe(x) @ row[4:]
        d = cg.eh_frame_rhs(np.concatenate([uf, x]), consts.c, model.alpha)
        a = cg.angular_rhs(x[2], x[1], x[3], consts)
        worst = max(worst, abs(a[0] - d[6]), abs(a[1] - d[5]), abs(a[2] - d[7]))
    assert worst < 1e-8


def test_angular_rhs_fibre_only_special_case():
    # no transverse force and no momenta: uniform fibre rotation
    consts = cg.EHOrbitConstants(alpha=1.0, r=1.5, c1=0.0, c2=0.0, c3=0.8,
                                 p1=0.0, p2=0.0, p3=0.0,
                                 m0=0.0, m1=0.1, m2=0.2, m3=0.0,
                                 R=cg.orbit_rotation_rate(1.0, 1.5))
    f2 = 1.0 - (1.0 / 1.5) ** 4
    d = cg.angular_rhs(0.3, 1.1, 2.0, consts)
    assert d[0] == pytest.approx(0.0, abs=1e-15)
    assert d[1] == pytest.approx(0.0, abs=1e-15)
    assert d[2] == pytest.approx(-0.8 / f2, rel=1e-13)


def test_angular_rhs_axis_error():
    consts = cg.EHOrbitConstants(alpha=1.0, r=1.5, c1=0.0, c2=0.0, c3=0.8,
                                 p1=0.0, p2=0.0, p3=0.0,
                                 m0=0.0, m1=0.1, m2=0.2, m3=0.0,
                                 R=cg.orbit_rotation_rate(1.0, 1.5))
    with pytest.raises(cg.SingularCoordinateError):
        cg.angular_rhs(0.3, 0.0, 2.0, consts)


# ---------------------------------------------------------------------------
# reduced orbit system and its constants


def orbit_solution(alpha, r, c, seed, s_max=30.0):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    R = cg.orbit_rotation_rate(alpha, r)
    sol = solve_ivp(lambda s, y: cg.orbit_ode_rhs(y, R, c), (0.0, s_max), v,
                    rtol=1e-12, atol=1e-14, dense_output=True)
    assert sol.success
    consts = cg.orbit_constants_from_state(alpha, r, v, c)
    return sol, consts


def test_orbit_ode_preserves_norm():
    sol, _ = orbit_solution(1.0, 1.6, np.array([0.5, -0.3, 0.7]), seed=13)
    for s in np.linspace(0.0, 30.0, 60):
        assert abs(np.sum(sol.sol(s) ** 2) - 1.0) < 1e-10


def test_orbit_velocity_quartic():
    # the fibre velocity satisfies hdot^2 = quartic(h)/4 along the flow
    c = np.array([0.5, -0.3, 0.7])
    sol, consts = orbit_solution(1.0, 1.6, c, seed=13)
    R = consts.R
    for s in np.linspace(0.0, 30.0, 100):
        y = sol.sol(s)
        h = R * y[2] - c[2]
        hd = R * cg.orbit_ode_rhs(y, R, c)[2]
        assert abs(consts.quartic(h) - 4.0 * hd ** 2) < 1e-10


def test_h_ode_along_orbit():
    # derivatives taken analytically through the orbit equations
    c = np.array([0.5, -0.3, 0.7])
    sol, consts = orbit_solution(1.0, 1.6, c, seed=14)
    R, (c1, c2, c3) = consts.R, c
    for s in np.linspace(0.0, 30.0, 50):
        al, be, ga = sol.sol(s)
        dal, dbe, dga = cg.orbit_ode_rhs((al, be, ga), R, c)
        ddal = R * (dbe * ga + be * dga) + c2 * dga - c3 * dbe
        ddbe = -R * (dal * ga + al * dga) + c3 * dal - c1 * dga
        h = R * ga - c3
        hd = R * dga
        hdd = R * (c1 * dbe - c2 * dal)
        hddd = R * (c1 * ddbe - c2 * ddal)
        assert cg.h_ode_residual(h, hd, hdd, hddd, consts.m0) < 1e-12


def test_starstar_residuals_vanish_on_solutions():
    c = np.array([0.5, -0.3, 0.7])
    sol, consts = orbit_solution(1.0, 1.6, c, seed=15)
    f = np.sqrt(1.0 - (1.0 / 1.6) ** 4)
    for s in np.linspace(0.0, 30.0, 80):
        y = sol.sol(s)
        nr, lr = cg.starstar_residual(y[0], y[1], y[2], 1.6, f, consts)
        assert nr < 1e-9
        assert lr < 1e-9


def test_starstar_detects_wrong_constant():
    from dataclasses import replace

    c = np.array([0.5, -0.3, 0.7])
    sol, consts = orbit_solution(1.0, 1.6, c, seed=15)
    wrong = replace(consts, m1=consts.m1 + 1e-3)
    f = np.sqrt(1.0 - (1.0 / 1.6) ** 4)
    y = sol.sol(7.0)
    _, lr = cg.starstar_residual(y[0], y[1], y[2], 1.6, f, wrong)
    assert lr > 1e-4


def test_starstar_requires_transverse_force():
    consts = cg.EHOrbitConstants(alpha=1.0, r=1.5, c1=0.0, c2=0.0, c3=0.8,
                                 p1=0.0, p2=0.0, p3=0.0,
                                 m0=0.0, m1=0.1, m2=0.2, m3=0.0,
                                 R=cg.orbit_rotation_rate(1.0, 1.5))
    with pytest.raises(cg.DegenerateConstantsError):
        cg.starstar_residual(0.1, 0.2, 0.3, 1.5, 0.9, consts)


def test_constants_reject_inconsistent_m0():
    with pytest.raises(ValueError):
        cg.EHOrbitConstants(alpha=1.0, r=1.5, c1=0.5, c2=0.0, c3=0.8,
                            p1=0.0, p2=0.0, p3=0.0,
                            m0=1.0, m1=0.1, m2=0.2, m3=0.0,
                            R=cg.orbit_rotation_rate(1.0, 1.5))


def test_orbit_reconstruction_matches_direct_integration():
    c = np.array([0.5, -0.3, 0.7])
    sol, consts = orbit_solution(1.0, 1.6, c, seed=16)
    R = consts.R
    s0 = 2.0
    y0 = sol.sol(s0)
    h0 = R * y0[2] - c[2]
    hd0 = R * cg.orbit_ode_rhs(y0, R, c)[2]
    s_grid = np.linspace(0.0, 3.0, 40)
    rec = cg.orbit_reconstruction(consts, h0, np.sign(hd0), s_grid)
    worst = max(np.max(np.abs(rec[k] - sol.sol(s0 + s)))
                for k, s in enumerate(s_grid))
    assert worst < 1e-8


def test_orbit_reconstruction_rejects_degenerate_force():
    consts = cg.EHOrbitConstants(alpha=1.0, r=1.5, c1=0.0, c2=0.0, c3=0.8,
                                 p1=0.0, p2=0.0, p3=0.0,
                                 m0=0.0, m1=0.1, m2=0.2, m3=0.0,
                                 R=cg.orbit_rotation_rate(1.0, 1.5))
    with pytest.raises(cg.DegenerateConstantsError):
        cg.orbit_reconstruction(consts, 0.1, 1.0, np.linspace(0, 1, 5))


# ---------------------------------------------------------------------------
# quadrature of the quartic


def hdot_zeros(sol, consts, c, s_max=30.0):
    from scipy.optimize import brentq

    R = consts.R
    hd = lambda s: R * cg.orbit_ode_rhs(sol.sol(s), R, c)[2]
    svals = np.linspace(0.0, s_max, 3001)
    vals = np.array([hd(s) for s in svals])
    zeros = []
    for i in np.where(np.sign(vals[:-1]) != np.sign(vals[1:]))[0]:
        zeros.append(brentq(hd, svals[i], svals[i + 1], xtol=1e-13))
    return zeros


def test_quadrature_matches_flow_time_inside_branch():
    c = np.array([0.5, -0.3, 0.7])
    sol, consts = orbit_solution(1.0, 1.6, c, seed=17)
    zeros = hdot_zeros(sol, consts, c)
    assert len(zeros) >= 2
    sa = zeros[0] + 0.15 * (zeros[1] - zeros[0])
    sb = zeros[0] + 0.85 * (zeros[1] - zeros[0])
    ha = consts.R * sol.sol(sa)[2] - c[2]
    hb = consts.R * sol.sol(sb)[2] - c[2]
    dt = cg.h_quadrature((ha, hb), consts)
    assert abs(dt - (sb - sa)) < 1e-8


def test_quadrature_half_period_between_roots():
    # the time between velocity turning points equals the root-to-root value
    c = np.array([0.5, -0.3, 0.7])
    sol, consts = orbit_solution(1.0, 1.6, c, seed=17)
    zeros = hdot_zeros(sol, consts, c)
    roots = np.roots([-1.0, 0.0, 4.0 * consts.m1, -8.0 * consts.m0,
                      4.0 * consts.m2])
    roots = np.sort(roots[np.abs(roots.imag) < 1e-10].real)
    h_mid = consts.R * sol.sol(0.5 * (zeros[0] + zeros[1]))[2] - c[2]
    lo = max(r for r in roots if r < h_mid)
    hi = min(r for r in roots if r > h_mid)
    half = cg.h_quadrature((lo, hi), consts, left_turning=True,
                           right_turning=True)
    assert abs(half - (zeros[1] - zeros[0])) < 1e-6


def test_quadrature_zero_length():
    _, consts = orbit_solution(1.0, 1.6, np.array([0.5, -0.3, 0.7]), seed=18)
    assert cg.h_quadrature((0.3, 0.3), consts) == 0.0


def test_quadrature_rejects_interior_turning_point():
    c = np.array([0.5, -0.3, 0.7])
    sol, consts = orbit_solution(1.0, 1.6, c, seed=17)
    zeros = hdot_zeros(sol, consts, c)
    h_mid = consts.R * sol.sol(0.5 * (zeros[0] + zeros[1]))[2] - c[2]
    roots = np.roots([-1.0, 0.0, 4.0 * consts.m1, -8.0 * consts.m0,
                      4.0 * consts.m2])
    roots = np.sort(roots[np.abs(roots.imag) < 1e-10].real)
    hi = min(r for r in roots if r > h_mid)
    with pytest.raises(cg.TurningPointError):
        cg.h_quadrature((h_mid, hi + 0.2), consts)


# ---------------------------------------------------------------------------
# prolate separation on the two-centre form


def test_prolate_chart_identities():
    model = cg.eh_two_center_gh_data(alpha=1.2)
    al = 1.2
    rng = np.random.default_rng(19)
    for _ in range(20):
        p = rng.uniform([-2, -2, -2], [2, 2, 2])
        if min(np.linalg.norm(p - c) for c in model.centers) < 0.3:
            continue
        if np.hypot(p[0], p[1]) < 0.1:
            continue
        ze, la = cg.prolate_coordinates(model, np.append(p, 0.0))
        V = model.V(p)
        assert abs(V - 2.0 * ze / (al * (ze ** 2 - la ** 2))) < 1e-12
        w = model.omega(p)
        wphi = p[0] * w[1] - p[1] * w[0]
        assert abs(wphi - 2.0 * la * (ze ** 2 - 1.0) / (ze ** 2 - la ** 2)) < 1e-12


def test_axis_force_form_has_prolate_potential():
    # the third basis two-form dz^(dtau+omega) + V dx^dy is exact with
    # potential 2 a zeta dphi + a zeta lambda dtau
    model = cg.eh_two_center_gh_data(alpha=1.0)
    al = 1.0

    def pot(x):
        ze, la = cg.prolate_coordinates(model, x)
        rho2 = x[0] ** 2 + x[1] ** 2
        dphi = np.array([-x[1] / rho2, x[0] / rho2, 0.0, 0.0])
        dtau = np.array([0.0, 0.0, 0.0, 1.0])
        return 2.0 * al * ze * dphi + al * ze * la * dtau

    rng = np.random.default_rng(20)
    for _ in range(5):
        p = rng.uniform([0.5, 0.5, -0.5], [1.5, 1.5, 0.5])
        x = np.append(p, 0.3)
        dpot = fd_exterior_derivative_1form(pot, x)
        w = model.omega(p)
        target = np.zeros((4, 4))
        target[2, 3] = 1.0
        target[2, 0] = w[0]
        target[2, 1] = w[1]
        target[0, 1] = model.V(p)
        target = target - target.T
        assert np.max(np.abs(dpot - target)) < 1e-6


def test_prolate_rejects_points_off_chart():
    model = cg.eh_two_center_gh_data(alpha=1.0)
    with pytest.raises(cg.DomainError):
        cg.prolate_coordinates(model, np.array([0.0, 0.0, 0.0, 0.0]))
    with pytest.raises(cg.DomainError):
        cg.prolate_coordinates(model, np.array([0.0, 0.0, 2.0, 0.0]))


def test_prolate_requires_two_centers():
    model = cg.taub_nut_gh_data(m=1.0)
    with pytest.raises(cg.UnsupportedOperationError):
        cg.prolate_coordinates(model, np.array([1.0, 1.0, 1.0, 0.0]))


def charged_gh_trajectory(model, cvec, seed, s_max=6.0):
    rng = np.random.default_rng(seed)
    x0 = np.array([0.9, 0.4, 0.3, 0.2])
    u0 = unit_velocity(model, x0, rng)
    return lorentz_trajectory(model, x0, u0, cvec, s_max, n=61)


def test_separation_uncharged():
    model = cg.eh_two_center_gh_data(alpha=1.0)
    traj = charged_gh_trajectory(model, np.zeros(3), seed=21)
    E, J, Q = cg.eh_separation_constants(model, traj, e=0.0)
    assert cg.eh_hj_residual(model, traj, E, J, Q, e=0.0) < 1e-6


def test_separation_charged_axis_force():
    model = cg.eh_two_center_gh_data(alpha=1.0)
    for c3, seed in ((-1.0, 22), (0.6, 23)):
        traj = charged_gh_trajectory(model, np.array([0.0, 0.0, c3]), seed)
        e = -c3
        E, J, Q = cg.eh_separation_constants(model, traj, e=e)
        assert cg.eh_hj_residual(model, traj, E, J, Q, e=e) < 1e-6


def test_separation_fails_for_generic_force():
    # only forces along the two-centre axis form separate
    model = cg.eh_two_center_gh_data(alpha=1.0)
    cvec = np.array([0.4, -0.7, 0.2])
    traj = charged_gh_trajectory(model, cvec, seed=24)
    E, J, Q = cg.eh_separation_constants(model, traj, e=-cvec[2])
    assert cg.eh_hj_residual(model, traj, E, J, Q, e=-cvec[2]) > 0.1


def test_branch_sum_is_norm_identity():
    # the sum of the two separated branches vanishes on unit-speed states
    # whatever the force, even when each branch fails to be constant
    model = cg.eh_two_center_gh_data(alpha=1.0)
    cvec = np.array([0.4, -0.7, 0.2])
    traj = charged_gh_trajectory(model, cvec, seed=24)
    from confgeo.eguchi_hanson import _separation_branches

    for row in traj.y[::10]:
        zb, lb, _, _ = _separation_branches(model, row[:4], row[4:8], -cvec[2])
        assert abs(zb + lb) < 1e-9
