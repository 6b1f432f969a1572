"""Closed-form momentum-space data of the uniaxial crystal.

For a spatial momentum k-vec the two branches of the dispersion relation have
frequencies omega (ordinary) and omega_tilde (extraordinary).  The propagator
quasi-inverse, evaluated in the meromorphic gauge, has simple poles at
k0 = +-omega and k0 = +-omega_tilde with residue tensors -U_ab / (2 omega)
and -Ut_ab / (2 omega_tilde):

    U_ab  = eta_ab + (k + i q)_a (k + i q)_b / eta^{-1}(q, q)          at k0 = omega
    Ut_ab = -(k + i q)_a (k + i q)_b / ((1 + xi^2) eta^{-1}(q, q))     at k0 = omega_tilde

Up to pure gauge terms (proportional to k_a or k_b) these are rank one,
U = v (x) v and Ut = vt (x) vt, with real polarization covectors

    v  = (0, 0, k3, -k2) / s,                                  s^2 = k2^2 + k3^2
    vt = (0, s^2/(1+xi^2), -k1 k2, -k1 k3) / (omega_tilde s),

normalized by eta^{-1}(v, v) = 1 and zeta^{-1}(vt, vt) = 1 and transverse in
the Coulomb-like sense v . U = vt . U = 0, eta^{-1}(k, v) = 0,
zeta^{-1}(kt, vt) = 0.  Along the optic axis (s -> 0) the two poles merge to
second order; v and vt stay bounded but their limits depend on the azimuth,
so mode data on the axis is flagged as degenerate and quadrature grids avoid
the ray.

Complex arithmetic is confined to this module; downstream energy and bound
computations consume only the real polarization data.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .causal import frequencies
from .errors import PolesMerged, ZeroMomentum
from .fresnel import (
    meromorphic_crystal_gauge,
    q_covector,
    quasi_inverse_batch,
    uniaxial_context,
)
from .numerics import contour_residue
from .tensors import ETA, ETA_INV, zeta_inverse

_AXIS_TOL = 1e-12


@dataclass(frozen=True)
class ModeData:
    """Frequencies, polarizations and residue tensors for one spatial momentum."""

    kvec: np.ndarray
    omega: float
    omega_tilde: float
    v: np.ndarray
    v_tilde: np.ndarray
    u_tensor: np.ndarray
    u_tilde_tensor: np.ndarray
    axis_degenerate: bool = False

    @property
    def k(self):
        """Ordinary null covector (omega, k-vec)."""
        return np.concatenate([[self.omega], self.kvec])

    @property
    def k_tilde(self):
        """Extraordinary null covector (omega_tilde, k-vec)."""
        return np.concatenate([[self.omega_tilde], self.kvec])


def mode_data(xi, kvec):
    """Mode data of the crystal for the spatial momentum ``kvec``.

    On the optic axis (k2 = k3 = 0) the polarizations are defined by their
    zero-azimuth limits and the result is flagged ``axis_degenerate``; the
    residue tensors then carry the gauge-reduced rank-1 values, since the
    separate simple-pole residues do not exist there.
    """
    kvec = np.asarray(kvec, dtype=float)
    if np.allclose(kvec, 0.0):
        raise ZeroMomentum("mode data requires a nonzero spatial momentum")
    omega, omega_t = frequencies(xi, kvec)
    k1, k2, k3 = kvec
    s2 = k2**2 + k3**2
    axis = s2 <= _AXIS_TOL * float(np.sum(kvec**2))

    if axis:
        v = np.array([0.0, 0.0, 0.0, -1.0])
        v_tilde = np.array([0.0, 0.0, -np.sign(k1), 0.0])
        u = np.outer(v, v).astype(complex)
        ut = np.outer(v_tilde, v_tilde).astype(complex)
        return ModeData(kvec, omega, omega_t, v, v_tilde, u, ut, True)

    s = np.sqrt(s2)
    v = np.array([0.0, 0.0, k3, -k2]) / s
    v_tilde = np.array([0.0, s2 / (1.0 + xi**2), -k1 * k2, -k1 * k3]) / (omega_t * s)

    k_ord = np.array([omega, k1, k2, k3])
    q_ord = q_covector(xi, k_ord)
    kq = k_ord + 1j * q_ord
    qq_ord = np.dot(q_ord, ETA_INV @ q_ord)
    u = ETA.astype(complex) + np.outer(kq, kq) / qq_ord

    k_ext = np.array([omega_t, k1, k2, k3])
    q_ext = q_covector(xi, k_ext)
    kq_ext = k_ext + 1j * q_ext
    qq_ext = np.dot(q_ext, ETA_INV @ q_ext)
    ut = -np.outer(kq_ext, kq_ext) / ((1.0 + xi**2) * qq_ext)

    return ModeData(kvec, omega, omega_t, v, v_tilde, u, ut, False)


def residue_check(xi, kvec, radius_factor=0.25, nodes=256, merge_tol=1e-8):
    """Compare contour residues of the quasi-inverse with the closed forms.

    Integrates the generic quasi-inverse (meromorphic gauge) on circles of
    radius ``radius_factor * |omega - omega_tilde|`` around k0 = omega and
    k0 = omega_tilde and returns the two relative residual norms against
    -U/(2 omega) and -Ut/(2 omega_tilde).  Raises PolesMerged when the
    frequency gap cannot support the contour (xi = 0, or k on the optic axis
    where the poles collide into a second-order pole).
    """
    kvec = np.asarray(kvec, dtype=float)
    if np.allclose(kvec, 0.0):
        raise ZeroMomentum("residue check requires a nonzero spatial momentum")
    omega, omega_t = frequencies(xi, kvec)
    gap = omega - omega_t
    if gap <= merge_tol * omega:
        raise PolesMerged(
            f"frequency gap {gap:.3e} too small for separate contour residues"
        )
    radius = radius_factor * gap
    ctx = uniaxial_context(xi)
    gauge = meromorphic_crystal_gauge(xi)
    data = mode_data(xi, kvec)

    def integrand(z):
        return quasi_inverse_batch(ctx, z, kvec, gauge)

    res_ord = contour_residue(integrand, omega, radius, nodes=nodes, check=False)
    res_ext = contour_residue(integrand, omega_t, radius, nodes=nodes, check=False)
    target_ord = -data.u_tensor / (2.0 * omega)
    target_ext = -data.u_tilde_tensor / (2.0 * omega_t)
    err_ord = np.max(np.abs(res_ord - target_ord)) / np.max(np.abs(target_ord))
    err_ext = np.max(np.abs(res_ext - target_ext)) / np.max(np.abs(target_ext))
    return float(err_ord), float(err_ext)


def vacuum_mode_weight(xi, kvec, j_hat_ordinary, j_hat_extraordinary):
    """Nonnegative single-mode weight |v . j(k)|^2 / (2 omega) + tilde term.

    ``j_hat_ordinary`` and ``j_hat_extraordinary`` are the (complex) current
    amplitudes evaluated on the ordinary and extraordinary shells.  The value
    vanishes exactly when both polarization contractions do, which is the
    positivity mechanism of the ground-state two-point function.
    """
    data = mode_data(xi, kvec)
    c_ord = np.dot(data.v, np.asarray(j_hat_ordinary))
    c_ext = np.dot(data.v_tilde, np.asarray(j_hat_extraordinary))
    return float(
        np.abs(c_ord) ** 2 / (2.0 * data.omega)
        + np.abs(c_ext) ** 2 / (2.0 * data.omega_tilde)
    )


def transverse_basis(k):
    """Three vectors spanning the annihilator of the covector k."""
    k = np.asarray(k, dtype=float)
    basis = []
    seeds = np.eye(4)
    kk = np.dot(k, k)
    for seed in seeds:
        cand = seed - np.dot(k, seed) * k / kk
        for prev in basis:
            cand = cand - np.dot(cand, prev) * prev / np.dot(prev, prev)
        if np.linalg.norm(cand) > 1e-8:
            basis.append(cand)
        if len(basis) == 3:
            break
    return np.array(basis)
