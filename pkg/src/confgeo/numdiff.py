"""Finite-difference oracles.

These are deliberately independent of the analytic formulas they cross-check:
everything here touches models only through metric / form evaluation at
points, so an error in a hand-coded derivative cannot propagate into its own
check.  Central differences with a relative step throughout.
"""

import numpy as np


def _step(x, h=1e-5):
    return h * max(1.0, abs(x))


def fd_gradient(f, x, h=1e-5):
    """Central-difference gradient of scalar f at x (1d array)."""
    x = np.asarray(x, dtype=float)
    g = np.zeros_like(x)
    for i in range(x.size):
        dx = _step(x[i], h)
        xp = x.copy()
        xm = x.copy()
        xp[i] += dx
        xm[i] -= dx
        g[i] = (f(xp) - f(xm)) / (2 * dx)
    return g


def fd_jacobian(f, x, h=1e-5):
    """Jacobian J[i, j] = d f_i / d x_j by central differences."""
    x = np.asarray(x, dtype=float)
    f0 = np.asarray(f(x), dtype=float)
    J = np.zeros(f0.shape + (x.size,))
    for j in range(x.size):
        dx = _step(x[j], h)
        xp = x.copy()
        xm = x.copy()
        xp[j] += dx
        xm[j] -= dx
        J[..., j] = (np.asarray(f(xp)) - np.asarray(f(xm))) / (2 * dx)
    return J


def fd_metric_derivs(metric, x, h=1e-5):
    """d g_ab / d x^c as array [c, a, b], from the metric alone."""
    x = np.asarray(x, dtype=float)
    n = x.size
    dg = np.zeros((n, n, n))
    for c in range(n):
        dx = _step(x[c], h)
        xp = x.copy()
        xm = x.copy()
        xp[c] += dx
        xm[c] -= dx
        dg[c] = (metric(xp) - metric(xm)) / (2 * dx)
    return dg


def fd_christoffel(metric, x, h=1e-5):
    """Christoffel symbols Gamma^a_bc from the metric by finite differences."""
    x = np.asarray(x, dtype=float)
    g = metric(x)
    ginv = np.linalg.inv(g)
    dg = fd_metric_derivs(metric, x, h)
    # Gamma^a_bc = (1/2) g^ad (d_b g_dc + d_c g_db - d_d g_bc)
    sym = np.einsum("bdc->dbc", dg) + np.einsum("cdb->dbc", dg) - dg
    return 0.5 * np.einsum("ad,dbc->abc", ginv, sym)


def fd_riemann(christoffel, x, h=1e-5):
    """Curvature R^a_{bcd} from an analytic Christoffel callable.

    Convention: R^a_{bcd} = d_c Gamma^a_db - d_d Gamma^a_cb
                            + Gamma^a_ce Gamma^e_db - Gamma^a_de Gamma^e_cb,
    so that Ricci_bd = R^a_{bad} and round spheres get positive scalar
    curvature.
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    G = christoffel(x)
    dG = np.zeros((n, n, n, n))  # [c, a, b, d] = d_c Gamma^a_bd
    for c in range(n):
        dx = _step(x[c], h)
        xp = x.copy()
        xm = x.copy()
        xp[c] += dx
        xm[c] -= dx
        dG[c] = (christoffel(xp) - christoffel(xm)) / (2 * dx)
    R = (
        np.einsum("cadb->abcd", dG)
        - np.einsum("dacb->abcd", dG)
        + np.einsum("ace,edb->abcd", G, G)
        - np.einsum("ade,ecb->abcd", G, G)
    )
    return R


def fd_ricci(christoffel, x, h=1e-5):
    """Ricci_bd = R^a_{bad} from fd_riemann."""
    return np.einsum("abad->bd", fd_riemann(christoffel, x, h))


def fd_exterior_derivative_1form(omega, x, h=1e-5):
    """(d omega)_ab = d_a omega_b - d_b omega_a for a 1-form callable."""
    J = fd_jacobian(omega, x, h)  # J[b, a] = d_a omega_b
    return J.T - J


def fd_exterior_derivative_2form(F, x, h=1e-5):
    """(dF)_abc = d_a F_bc + d_b F_ca + d_c F_ab for a 2-form callable."""
    x = np.asarray(x, dtype=float)
    n = x.size
    dF = np.zeros((n, n, n))  # dF[a, b, c] = d_a F_bc
    for a in range(n):
        dx = _step(x[a], h)
        xp = x.copy()
        xm = x.copy()
        xp[a] += dx
        xm[a] -= dx
        dF[a] = (np.asarray(F(xp)) - np.asarray(F(xm))) / (2 * dx)
    return dF + np.einsum("bca->abc", dF) + np.einsum("cab->abc", dF)


def fd_covariant_deriv_2form(Y, christoffel, x, h=1e-5):
    """(nabla Y)[a, b, c] = nabla_a Y_bc for a 2-form callable."""
    x = np.asarray(x, dtype=float)
    n = x.size
    dY = np.zeros((n, n, n))
    for a in range(n):
        dx = _step(x[a], h)
        xp = x.copy()
        xm = x.copy()
        xp[a] += dx
        xm[a] -= dx
        dY[a] = (np.asarray(Y(xp)) - np.asarray(Y(xm))) / (2 * dx)
    G = christoffel(x)
    Y0 = np.asarray(Y(x))
    return (
        dY
        - np.einsum("eab,ec->abc", G, Y0)
        - np.einsum("eac,be->abc", G, Y0)
    )


def fd_lie_derivative_metric(metric, K, x, h=1e-5):
    """(L_K g)_ab from the metric and a vector-field callable."""
    x = np.asarray(x, dtype=float)
    g = metric(x)
    dg = fd_metric_derivs(metric, x, h)
    dK = fd_jacobian(K, x, h)  # dK[a, b] = d_b K^a
    Kv = np.asarray(K(x))
    return (
        np.einsum("c,cab->ab", Kv, dg)
        + np.einsum("ca,cb->ab", dK, g)
        + np.einsum("cb,ac->ab", dK, g)
    )


def fd_lie_derivative_1form(omega, K, x, h=1e-5):
    """(L_K omega)_a for a 1-form callable and vector-field callable."""
    x = np.asarray(x, dtype=float)
    dw = fd_jacobian(omega, x, h)  # dw[a, b] = d_b omega_a
    dK = fd_jacobian(K, x, h)
    Kv = np.asarray(K(x))
    w = np.asarray(omega(x))
    return dw @ Kv + dK.T @ w


def fd_lie_derivative_2form(F, K, x, h=1e-5):
    """(L_K F)_ab via Cartan's formula terms written out in components."""
    x = np.asarray(x, dtype=float)
    n = x.size
    dF = np.zeros((n, n, n))
    for c in range(n):
        dx = _step(x[c], h)
        xp = x.copy()
        xm = x.copy()
        xp[c] += dx
        xm[c] -= dx
        dF[c] = (np.asarray(F(xp)) - np.asarray(F(xm))) / (2 * dx)
    dK = fd_jacobian(K, x, h)
    Kv = np.asarray(K(x))
    F0 = np.asarray(F(x))
    return (
        np.einsum("c,cab->ab", Kv, dF)
        + np.einsum("ca,cb->ab", dK, F0)
        + np.einsum("cb,ac->ab", dK, F0)
    )
