"""Fixed-dimension multilinear algebra for rank-4 constitutive densities.

Conventions used throughout the library:

- Metric signature -+++ with coordinate index 0 timelike; natural units, c=1.
- Vectors carry upper indices, covectors lower indices.  Both are stored as
  plain length-4 numpy arrays; which one an argument is follows from its name
  and docstring, and ``contract(k, z) = k_a z^a`` is the plain componentwise
  dot product with no metric involved.
- A constitutive density chi^{abcd} is a (4, 4, 4, 4) float array of density
  weight +1, antisymmetric in each index pair and symmetric under pair
  exchange.
- Levi-Civita symbols are never materialized as arrays; ``signed_permutations``
  feeds sign-tracked index loops instead, which keeps density weights out of
  component bookkeeping.

All functions are pure and no object is mutated after construction, so values
may be freely shared between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

import numpy as np

ETA = np.diag([-1.0, 1.0, 1.0, 1.0])
#: Inverse Minkowski metric; components coincide with ETA in -+++ Cartesian
#: coordinates but it is kept separate because the two act on different slots.
ETA_INV = np.diag([-1.0, 1.0, 1.0, 1.0])

#: Crystal rest-frame four-velocity U^a and its covector U_a.
U_VECTOR = np.array([1.0, 0.0, 0.0, 0.0])
U_COVECTOR = np.array([-1.0, 0.0, 0.0, 0.0])


def contract(k, z):
    """Natural pairing k_a z^a of a covector with a vector."""
    return np.dot(k, z)


def form(metric, a, b):
    """Quadratic/bilinear form metric(a, b) = metric_{ab} a^a b^b."""
    return np.dot(a, metric @ b)


def optic_axis_vector(xi):
    """Optic-axis vector X^a with eta(X, X) = xi**2, orthogonal to U."""
    return np.array([0.0, float(xi), 0.0, 0.0])


def zeta_metric(xi):
    """Extraordinary-cone metric zeta_{ab} of the uniaxial medium."""
    xi2 = float(xi) ** 2
    x_cov = np.array([0.0, float(xi), 0.0, 0.0])
    return (
        ETA
        + xi2 / (1.0 + xi2) * np.outer(U_COVECTOR, U_COVECTOR)
        - 1.0 / (1.0 + xi2) * np.outer(x_cov, x_cov)
    )


def zeta_inverse(xi):
    """Inverse extraordinary metric (zeta^{-1})^{ab} = eta^{ab} - xi^2 U^a U^b + X^a X^b."""
    xi2 = float(xi) ** 2
    x_vec = optic_axis_vector(xi)
    return ETA_INV - xi2 * np.outer(U_VECTOR, U_VECTOR) + np.outer(x_vec, x_vec)


def _permutation_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def signed_permutations(n=4):
    """All permutations of range(n) with their parity signs."""
    return tuple((p, _permutation_sign(p)) for p in permutations(range(n)))


def build_uniaxial_chi(xi, U=None, X=None, tol=1e-12):
    """Constitutive density of a uniaxial birefringent crystal.

    chi^{abcd} = 2 eta^{c[a} eta^{b]d} + 4 X^{[a} U^{b]} X^{[d} U^{c]}
    in a chart where the Minkowski density factor is 1.  ``U`` is the crystal
    rest-frame velocity (eta(U, U) = -1) and ``X`` the optic axis
    (eta(X, U) = 0, eta(X, X) = xi**2); they default to the standard
    configuration U = (1,0,0,0), X = (0,xi,0,0).  At xi = 0 this reduces to
    the vacuum Maxwell density.

    Raises ValueError if U is not normalized or X is not an orthogonal
    axis vector of the stated length.
    """
    xi = float(xi)
    if xi < 0.0:
        raise ValueError("crystal parameter xi must be >= 0")
    if U is None:
        U = U_VECTOR
    if X is None:
        X = optic_axis_vector(xi)
    U = np.asarray(U, dtype=float)
    X = np.asarray(X, dtype=float)
    if abs(form(ETA, U, U) + 1.0) > tol:
        raise ValueError("U must satisfy eta(U, U) = -1")
    if abs(form(ETA, X, U)) > tol:
        raise ValueError("X must be eta-orthogonal to U")
    if abs(form(ETA, X, X) - xi**2) > tol:
        raise ValueError("X must satisfy eta(X, X) = xi**2")

    maxwell = np.einsum("ca,bd->abcd", ETA_INV, ETA_INV) - np.einsum(
        "cb,ad->abcd", ETA_INV, ETA_INV
    )
    # 2 X^{[a} U^{b]} = X^a U^b - X^b U^a
    a_bivec = np.outer(X, U) - np.outer(U, X)
    crystal = np.einsum("ab,dc->abcd", a_bivec, a_bivec)
    return maxwell + crystal


def principal_symbol(chi, k):
    """Principal symbol M^{ab}(k) = chi^{acbd} k_c k_d of the field operator.

    Symmetric in (a, b) and transverse, M^{ab} k_a = M^{ab} k_b = 0, which
    expresses the gauge freedom of the potential.
    """
    k = np.asarray(k)
    return np.einsum("acbd,c,d->ab", chi, k, k)


@dataclass(frozen=True)
class Frame:
    """An observer frame: basis vectors e_a (rows), dual covectors e^{*a} (rows).

    ``density_factor`` is the determinant of the basis component matrix; the
    inertial frames built here have density factor 1 exactly.
    """

    basis: np.ndarray
    dual: np.ndarray
    density_factor: float

    @property
    def velocity(self):
        """e_0, the observer four-velocity."""
        return self.basis[0]

    @property
    def clock(self):
        """e^{*0}, the dual covector n with n(e_0) = 1."""
        return self.dual[0]


def frame_from_worldline(alpha, beta, aleph=1.0):
    """Unit-density frame adapted to a uniform-velocity worldline.

    The worldline has rapidity ``alpha`` relative to the crystal rest frame,
    its 3-velocity makes angle ``beta`` (radians) with the optic axis in the
    x-z plane, and ``aleph`` > 0 scales the parametrization:

        e_0 = aleph (cosh a, sinh a cos b, 0, sinh a sin b)
        n   = e^{*0} = aleph^{-1} (cosh a, -sinh a cos b, 0, -sinh a sin b)

    The remaining legs are the boost-direction spatial unit (scaled by
    1/aleph) and two transverse units, ordered so that the determinant is +1
    and the rest frame (alpha=0, beta=0, aleph=1) is the identity tetrad.
    """
    aleph = float(aleph)
    if aleph <= 0.0:
        raise ValueError("aleph must be positive")
    ca, sa = np.cosh(alpha), np.sinh(alpha)
    cb, sb = np.cos(beta), np.sin(beta)
    u = np.array([ca, sa * cb, 0.0, sa * sb])
    w = np.array([sa, ca * cb, 0.0, ca * sb])
    q = np.array([0.0, 0.0, 1.0, 0.0])
    p = np.array([0.0, -sb, 0.0, cb])
    basis = np.vstack([aleph * u, w / aleph, q, p])
    dual = np.linalg.inv(basis).T
    return Frame(basis=basis, dual=dual, density_factor=float(np.linalg.det(basis)))
