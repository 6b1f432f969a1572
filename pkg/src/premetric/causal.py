"""Classification of covectors and vectors against the null structure.

For a bi-metric medium the cotangent null set is the union of the ordinary
cone (eta^{-1}(k, k) = 0) and the extraordinary cone (zeta^{-1}(k, k) = 0);
in the cotangent space the ordinary cone is the inner one and bounds the
hyperbolicity cone, while in the tangent space the nesting is reversed:
observers slower than extraordinary light (zeta-timelike) are subluminal,
eta-timelike but zeta-spacelike vectors are interluminal, and eta-spacelike
vectors are superluminal.

The Legendre map L(k) = dG/dk / (4 G(k)) sends cone-interior covectors to
future-pointing velocity vectors and is used to build intrinsic observer
clocks elsewhere in the library.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .errors import DegenerateInput, NearNullCovector
from .fresnel import FresnelContext, fresnel_eval, fresnel_gradient
from .tensors import ETA, form


class CovectorClass(Enum):
    HYPERBOLIC_FUTURE = "hyperbolic_future"
    HYPERBOLIC_PAST = "hyperbolic_past"
    ORDINARY_NULL = "ordinary_null"
    EXTRAORDINARY_NULL = "extraordinary_null"
    DOUBLY_NULL = "doubly_null"
    INTERSTITIAL = "interstitial"
    SPACELIKE = "spacelike"


class VectorClass(Enum):
    SUBLUMINAL_FUTURE = "subluminal_future"
    SUBLUMINAL_PAST = "subluminal_past"
    INTERLUMINAL_FUTURE = "interluminal_future"
    INTERLUMINAL_PAST = "interluminal_past"
    SLOW_NULL = "slow_null"
    FAST_NULL = "fast_null"
    SUPERLUMINAL = "superluminal"


def frequencies(xi, kvec):
    """Ordinary and extraordinary frequencies (omega, omega_tilde) of k-vec.

    omega = |k|, omega_tilde = sqrt(k1^2 + (k2^2 + k3^2) / (1 + xi^2));
    omega_tilde <= omega with equality exactly on the optic axis k2 = k3 = 0.
    """
    k = np.asarray(kvec, dtype=float)
    omega = float(np.sqrt(np.sum(k**2)))
    omega_tilde = float(np.sqrt(k[0] ** 2 + (k[1] ** 2 + k[2] ** 2) / (1.0 + xi**2)))
    return omega, omega_tilde


def _require_bimetric(ctx):
    if not isinstance(ctx, FresnelContext) or not ctx.bimetric:
        raise ValueError("a bi-metric FresnelContext (eta and zeta) is required")


def classify_covector(ctx, k, tol=1e-9):
    """Classify a covector by the signs of eta^{-1}(k, k) and zeta^{-1}(k, k).

    Values within ``tol * ||k||^2`` of zero count as null.  Future or past is
    decided by the sign of the contraction with the crystal rest velocity.
    Raises DegenerateInput when both quadratic forms vanish but k is not
    within tolerance of the optic-axis ray (the only place where the two
    cones legitimately touch).
    """
    _require_bimetric(ctx)
    k = np.asarray(k, dtype=float)
    scale = float(np.sum(k**2))
    if scale == 0.0:
        raise DegenerateInput("cannot classify the zero covector")
    e = float(form(ctx.eta_inv, k, k))
    z = float(form(ctx.zeta_inv, k, k))
    e_zero = abs(e) <= tol * scale
    z_zero = abs(z) <= tol * scale
    future = -float(form(ctx.eta_inv, k, ctx.orientation)) > 0.0

    if e_zero and z_zero:
        if _near_optic_ray(k, tol):
            return CovectorClass.DOUBLY_NULL
        raise DegenerateInput(
            "both quadratic forms vanish but k is not on the optic-axis ray"
        )
    if e_zero:
        return CovectorClass.ORDINARY_NULL
    if z_zero:
        return CovectorClass.EXTRAORDINARY_NULL
    if e < 0.0:
        return CovectorClass.HYPERBOLIC_FUTURE if future else CovectorClass.HYPERBOLIC_PAST
    if z < 0.0:
        return CovectorClass.INTERSTITIAL
    return CovectorClass.SPACELIKE


def _near_optic_ray(k, tol):
    # The doubly-null rays are k proportional to (-+1, 1, 0, 0).
    khat = k / np.linalg.norm(k)
    for ray in (np.array([1.0, 1.0, 0.0, 0.0]), np.array([-1.0, 1.0, 0.0, 0.0])):
        rhat = ray / np.sqrt(2.0)
        if min(np.linalg.norm(khat - rhat), np.linalg.norm(khat + rhat)) <= np.sqrt(tol) * 10:
            return True
    return False


def classify_vector(ctx, z, tol=1e-9):
    """Classify a tangent vector against the nested tangent-space cones.

    zeta(z, z) < 0 gives subluminal, eta(z, z) < 0 <= zeta(z, z) interluminal,
    eta(z, z) > 0 superluminal; values within ``tol * ||z||^2`` of zero land
    on SLOW_NULL (extraordinary cone) or FAST_NULL (ordinary cone).  Future
    and past are split by the time component in the crystal rest frame.
    """
    _require_bimetric(ctx)
    z = np.asarray(z, dtype=float)
    scale = float(np.sum(z**2))
    if scale == 0.0:
        raise DegenerateInput("cannot classify the zero vector")
    he = float(form(ctx.eta, z, z))
    hz = float(form(ctx.zeta, z, z))
    future = z[0] > 0.0
    if abs(hz) <= tol * scale and he < 0.0:
        return VectorClass.SLOW_NULL
    if abs(he) <= tol * scale:
        return VectorClass.FAST_NULL
    if hz < 0.0:
        return VectorClass.SUBLUMINAL_FUTURE if future else VectorClass.SUBLUMINAL_PAST
    if he < 0.0:
        return VectorClass.INTERLUMINAL_FUTURE if future else VectorClass.INTERLUMINAL_PAST
    return VectorClass.SUPERLUMINAL


def legendre_map(ctx, k, tol=1e-12, step_scale=1e-5):
    """Legendre map L(k) = (1 / 4 G(k)) dG/dk for cone-interior covectors.

    For a bi-metric context the gradient of the factored quartic is used in
    closed form; otherwise the gradient of the precontracted quartic is exact
    as well, and a 4th-order central-difference fallback is kept for
    cross-checking (``step_scale`` controls its step).  Raises
    NearNullCovector when |G(k)| is below tolerance.
    """
    k = np.asarray(k, dtype=float)
    g = fresnel_eval(ctx, k)
    scale = float(np.sum(k**2)) ** 2
    if abs(g) <= tol * scale:
        raise NearNullCovector("Legendre map undefined on the characteristic set")
    if isinstance(ctx, FresnelContext) and ctx.bimetric:
        ke = ctx.eta_inv @ k
        kz = ctx.zeta_inv @ k
        return 0.5 * (ke / np.dot(k, ke) + kz / np.dot(k, kz))
    return fresnel_gradient(ctx, k) / (4.0 * g)


def legendre_map_fd(ctx, k, step_scale=1e-5):
    """Finite-difference Legendre map (4th-order central differences)."""
    k = np.asarray(k, dtype=float)
    h = step_scale * np.linalg.norm(k)
    grad = np.empty(4)
    for a in range(4):
        e = np.zeros(4)
        e[a] = 1.0
        grad[a] = (
            -fresnel_eval(ctx, k + 2 * h * e)
            + 8.0 * fresnel_eval(ctx, k + h * e)
            - 8.0 * fresnel_eval(ctx, k - h * e)
            + fresnel_eval(ctx, k - 2 * h * e)
        ) / (12.0 * h)
    return grad / (4.0 * fresnel_eval(ctx, k))


def sample_null_covectors(xi, count, seed=0, future=True):
    """Sample covectors on both sheets of the positive-frequency null cone.

    Directions are uniform on the spatial 2-sphere and lifted to the ordinary
    and extraordinary cones; used for falsification tests of the subluminal
    characterization (k . z > 0 for every positive-frequency null k).
    """
    rng = np.random.default_rng(seed)
    dirs = rng.standard_normal((count, 3))
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    out = []
    s = 1.0 if future else -1.0
    for d in dirs:
        omega, omega_t = frequencies(xi, d)
        out.append(np.array([s * omega, d[0], d[1], d[2]]))
        out.append(np.array([s * omega_t, d[0], d[1], d[2]]))
    return np.array(out)
