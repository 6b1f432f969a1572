"""Intrinsic observer-clock normalization from the crystal dispersion relation.

The quartic dispersion relation P(k) = eta^{-1}(k, k) zeta^{-1}(k, k) = m^4
induces a point-particle Lagrangian through the Legendre map

    L(k) = (1/4) dP/dk / P(k),

whose inverse k(xdot) defines the one-homogeneous clock function

    pstar(xdot) = P(k(xdot))^(-1/4).

A worldline is crystal-proper-time parametrized when pstar(gdot) = 1; for the
standard uniform-velocity worldline gdot = aleph * (cosh a, sinh a cos b, 0,
sinh a sin b) one-homogeneity gives the normalization factor
aleph_uc = 1 / pstar(unit direction).

The small-xi expansion consistent with the exact numeric inversion is

    pstar(xdot)   = |eta(xdot, xdot)|^(1/2)
                    - (xi^2 eta(xdot, U)^2 - eta(xdot, X)^2)
                      / (4 |eta(xdot, xdot)|^(1/2)) + O(xi^4)
    aleph_uc      = 1 + (xi^2 / 4)(1 + sinh^2 a sin^2 b) + O(xi^4),

where the signature-induced sign of the correction term is fixed by matching
the convention-free numeric path (timelike vectors have eta(xdot, xdot) < 0,
so a formal sqrt of it contributes a factor i that flips the relative sign of
the two terms).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NewtonDiverged, NotSubluminal
from .tensors import ETA, ETA_INV, form, optic_axis_vector, zeta_inverse, zeta_metric


def _dispersion(xi, k):
    zinv = zeta_inverse(xi)
    return float(form(ETA_INV, k, k) * form(zinv, k, k))


def legendre_velocity(xi, k):
    """Velocity L(k) of the massive momentum k, for the factored quartic."""
    k = np.asarray(k, dtype=float)
    ke = ETA_INV @ k
    kz = zeta_inverse(xi) @ k
    return 0.5 * (ke / np.dot(k, ke) + kz / np.dot(k, kz))


def _legendre_jacobian(xi, k):
    ke = ETA_INV @ k
    kz = zeta_inverse(xi) @ k
    e = np.dot(k, ke)
    z = np.dot(k, kz)
    return 0.5 * (
        ETA_INV / e
        - 2.0 * np.outer(ke, ke) / e**2
        + zeta_inverse(xi) / z
        - 2.0 * np.outer(kz, kz) / z**2
    )


def _seed_momentum(xi, xdot):
    """Small-xi inverse series of the Legendre map, used as the Newton seed."""
    x_axis = optic_axis_vector(xi)
    u_vec = np.array([1.0, 0.0, 0.0, 0.0])
    h = form(ETA, xdot, xdot)
    xu = form(ETA, xdot, u_vec)
    xx = form(ETA, xdot, x_axis)
    x_low = ETA @ xdot
    u_low = ETA @ u_vec
    xaxis_low = ETA @ x_axis
    return (
        x_low / h
        + (xx**2 - xi**2 * xu**2) * x_low / (2.0 * h**2)
        + (xi**2 * xu * u_low - xx * xaxis_low) / (2.0 * h)
    )


def legendre_inverse(xi, xdot, max_iter=50, tol=1e-12):
    """Momentum k with L(k) = xdot, by damped Newton iteration.

    Seeded from the small-xi inverse series; the step is halved whenever the
    residual fails to decrease.  Raises NewtonDiverged (with the last
    iterate) if the residual does not reach ``tol`` within ``max_iter``.
    """
    xdot = np.asarray(xdot, dtype=float)
    k = _seed_momentum(xi, xdot)
    resid = legendre_velocity(xi, k) - xdot
    norm = np.linalg.norm(resid)
    for _ in range(max_iter):
        if norm <= tol:
            return k
        step = np.linalg.solve(_legendre_jacobian(xi, k), resid)
        damping = 1.0
        while damping >= 1.0 / 1024.0:
            trial = k - damping * step
            trial_resid = legendre_velocity(xi, trial) - xdot
            trial_norm = np.linalg.norm(trial_resid)
            if trial_norm < norm:
                break
            damping *= 0.5
        k = k - damping * step
        resid = legendre_velocity(xi, k) - xdot
        norm = np.linalg.norm(resid)
    if norm <= tol:
        return k
    raise NewtonDiverged(f"Legendre inversion stalled at residual {norm:.3e}", last_iterate=k)


def _require_subluminal_future(xi, xdot):
    if form(zeta_metric(xi), xdot, xdot) >= 0.0 or xdot[0] <= 0.0:
        raise NotSubluminal("xdot must be future-directed and zeta-timelike")


def pstar(xi, xdot, mode="numeric"):
    """Clock function pstar(xdot); one-homogeneous and 1 on unit Maxwell motion.

    ``numeric`` inverts the Legendre map and returns P(k)^(-1/4); ``series``
    evaluates the O(xi^2) expansion.  Requires a future-directed subluminal
    xdot.
    """
    xdot = np.asarray(xdot, dtype=float)
    _require_subluminal_future(xi, xdot)
    if mode == "numeric":
        k = legendre_inverse(xi, xdot)
        return _dispersion(xi, k) ** (-0.25)
    if mode == "series":
        x_axis = optic_axis_vector(xi)
        u_vec = np.array([1.0, 0.0, 0.0, 0.0])
        h = abs(form(ETA, xdot, xdot))
        xu = form(ETA, xdot, u_vec)
        xx = form(ETA, xdot, x_axis)
        return np.sqrt(h) - (xi**2 * xu**2 - xx**2) / (4.0 * np.sqrt(h))
    raise ValueError("mode must be 'numeric' or 'series'")


@dataclass(frozen=True)
class NormalizationResult:
    """Clock normalization aleph with its provenance.

    ``residual`` is |pstar(aleph * unit) - 1| for the numeric mode; the
    series mode truncates at order xi^2 (error O(xi^4)) and reports
    ``error_order`` instead.
    """

    aleph: float
    mode: str
    residual: float | None = None
    error_order: int | None = None


def aleph_uc(xi, alpha, beta, mode="numeric"):
    """Crystal-clock normalization for the standard uniform-velocity worldline.

    Solves pstar(aleph * u_hat) = 1 with u_hat the unit-rapidity direction;
    by one-homogeneity aleph = 1 / pstar(u_hat).  Raises NotSubluminal beyond
    the extraordinary cone.
    """
    u_hat = np.array(
        [
            np.cosh(alpha),
            np.sinh(alpha) * np.cos(beta),
            0.0,
            np.sinh(alpha) * np.sin(beta),
        ]
    )
    if mode == "numeric":
        value = 1.0 / pstar(xi, u_hat, mode="numeric")
        residual = abs(pstar(xi, value * u_hat, mode="numeric") - 1.0)
        return NormalizationResult(aleph=float(value), mode="numeric", residual=float(residual))
    if mode == "series":
        value = 1.0 + (xi**2 / 4.0) * (1.0 + np.sinh(alpha) ** 2 * np.sin(beta) ** 2)
        return NormalizationResult(aleph=float(value), mode="series", error_order=4)
    raise ValueError("mode must be 'numeric' or 'series'")
