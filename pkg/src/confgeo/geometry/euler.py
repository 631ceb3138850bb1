"""Euler-angle machinery on SU(2) orbits.

Left-invariant one-forms sigma_i on the (theta, phi, psi) angles, the
dual left-invariant vector fields, and the right-invariant fields that
generate the rotational isometries of the biaxial metrics.  Components
are always ordered (theta, phi, psi).
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "sigma_forms",
    "left_invariant_fields",
    "right_invariant_fields",
]


def sigma_forms(theta: float, psi: float) -> np.ndarray:
    """Rows sigma_1, sigma_2, sigma_3 in (theta, phi, psi) components.

    They satisfy d sigma_1 + sigma_2 ^ sigma_3 = 0 and cyclic.
    """
    st, ct = np.sin(theta), np.cos(theta)
    sp, cp = np.sin(psi), np.cos(psi)
    return np.array([
        [cp, sp * st, 0.0],
        [-sp, cp * st, 0.0],
        [0.0, ct, 1.0],
    ])


def left_invariant_fields(theta: float, psi: float) -> np.ndarray:
    """Rows L_1, L_2, L_3 dual to the sigma rows: sigma_i(L_j) = delta_ij."""
    st, ct = np.sin(theta), np.cos(theta)
    sp, cp = np.sin(psi), np.cos(psi)
    cot = ct / st
    return np.array([
        [cp, sp / st, -sp * cot],
        [-sp, cp / st, -cp * cot],
        [0.0, 0.0, 1.0],
    ])


def right_invariant_fields(theta: float, phi: float, psi_weight: float = 1.0) -> np.ndarray:
    """Rows xi_x, xi_y, xi_z of the rotation generators.

    These commute with the left-invariant fields and Lie-drag every
    sigma_i to zero.  ``psi_weight`` rescales the d/dpsi leg, which is
    how the same generators act on a fibre coordinate of period 4*pi*m
    instead of 4*pi (the NUT-charged case).
    """
    st, ct = np.sin(theta), np.cos(theta)
    sf, cf = np.sin(phi), np.cos(phi)
    cot = ct / st
    return np.array([
        [-sf, -cf * cot, psi_weight * cf / st],
        [cf, -sf * cot, psi_weight * sf / st],
        [0.0, 1.0, 0.0],
    ])
