"""Fresnel quartic, second adjugate and quasi-inverse of the principal symbol.

The Fresnel polynomial G(k) of a constitutive density chi is the homogeneous
quartic whose zeros are the characteristic wave covectors of the medium.  It
is computed here by precontracting chi with two Levi-Civita symbols into a
rank-4 coefficient tensor (sign-tracked permutation loops, no epsilon arrays),
after which evaluation at any covector is a single einsum.

A gauge choice kappa(k) with k . kappa(k) = 1 turns the second adjugate Q
into a quasi-inverse E of the principal symbol M:

    E_ab(k) = Q_cd(k) pi^c_a(k) pi^d_b(k) / G(k),
    pi^c_a(k) = delta^c_a - kappa^c(k) k_a,
    M^{ca}(k) E_ab(k) = pi^c_b(k)  whenever G(k) != 0,

i.e. E inverts M on the complement of the ray of k.  Hyperbolicity of G with
respect to a covector n (only real roots of t -> G(xi + t n)) is verified by
a probabilistic root test, and cone membership by the root-sign
characterization: k lies in the hyperbolicity cone of n exactly when all
roots of s -> G(k + s n) are real and strictly negative.
"""

from __future__ import annotations

import numpy as np

from .errors import NearNullCovector
from .numerics import quartic_real_roots
from .tensors import (
    ETA,
    ETA_INV,
    build_uniaxial_chi,
    principal_symbol,
    signed_permutations,
    zeta_inverse,
    zeta_metric,
)


def fresnel_coefficient_tensor(chi):
    """Quartic coefficient tensor G4 with G(k) = G4^{abcd} k_a k_b k_c k_d / 4!.

    Implements the double Levi-Civita contraction of three copies of chi by
    looping over signed index permutations.
    """
    g4 = np.zeros((4, 4, 4, 4))
    perms = signed_permutations(4)
    for (c1, a1, a2, a3), s1 in perms:
        for (d3, b1, b2, b3), s2 in perms:
            term = (
                chi[a1, c1, b1, :, None, None, None]
                * chi[a2, :, b2, :][None, :, :, None]
                * chi[a3, :, b3, d3][None, None, None, :]
            )
            if s1 * s2 > 0:
                g4 += term
            else:
                g4 -= term
    return g4


def second_adjugate_tensor(chi):
    """Coefficient tensor QT with Q_ab(k) = QT[a, b, c, d] k_c k_d / 8."""
    qt = np.zeros((4, 4, 4, 4))
    perms = signed_permutations(4)
    for (b, c1, a1, a2), s1 in perms:
        for (a, d2, b1, b2), s2 in perms:
            term = chi[a1, c1, b1, :][:, None] * chi[a2, :, b2, d2][None, :]
            if s1 * s2 > 0:
                qt[a, b] += term
            else:
                qt[a, b] -= term
    return qt


class FresnelContext:
    """A constitutive density with cached Fresnel data and cone orientation.

    ``orientation`` is a covector n0 selecting the hyperbolicity cone; the
    sign of the Fresnel quartic is fixed so that G(n0) > 0.  When a bi-metric
    factorization is known, ``eta``/``zeta`` hold the two Lorentzian metrics
    (lower-index components) and ``theta`` the density factor of

        G(k) = theta * eta^{-1}(k, k) * zeta^{-1}(k, k).
    """

    def __init__(self, chi, orientation=(1.0, 0.0, 0.0, 0.0), eta=None, zeta=None, theta=1.0):
        self.chi = np.asarray(chi, dtype=float)
        self.orientation = np.asarray(orientation, dtype=float)
        self.eta = None if eta is None else np.asarray(eta, dtype=float)
        self.zeta = None if zeta is None else np.asarray(zeta, dtype=float)
        self.theta = float(theta)
        self.eta_inv = None if eta is None else np.linalg.inv(self.eta)
        self.zeta_inv = None if zeta is None else np.linalg.inv(self.zeta)
        self._g4 = fresnel_coefficient_tensor(self.chi)
        self._qt = second_adjugate_tensor(self.chi)
        raw = self._raw_fresnel(self.orientation)
        if raw == 0.0:
            raise ValueError("orientation covector is characteristic for chi")
        self.sign = 1.0 if raw > 0.0 else -1.0

    @property
    def bimetric(self):
        return self.eta is not None and self.zeta is not None

    def _raw_fresnel(self, k):
        k = np.asarray(k)
        return np.einsum("abcd,...a,...b,...c,...d->...", self._g4, k, k, k, k) / 24.0

    def second_adjugate_raw(self, k):
        k = np.asarray(k)
        return np.einsum("abcd,...c,...d->...ab", self._qt, k, k) / 8.0


def uniaxial_context(xi):
    """FresnelContext of the uniaxial crystal, with its bi-metric data."""
    return FresnelContext(
        build_uniaxial_chi(xi),
        orientation=(1.0, 0.0, 0.0, 0.0),
        eta=ETA,
        zeta=zeta_metric(xi),
        theta=1.0,
    )


def _as_context(ctx):
    return ctx if isinstance(ctx, FresnelContext) else FresnelContext(ctx)


def fresnel_eval(ctx, k):
    """Fresnel quartic G(k), normalized to be positive inside the cone.

    Accepts a FresnelContext or a bare constitutive density; ``k`` may also
    be a stack of covectors with shape (..., 4).
    """
    ctx = _as_context(ctx)
    return ctx.sign * ctx._raw_fresnel(k)


def fresnel_gradient(ctx, k):
    """Gradient dG/dk_a of the (oriented) Fresnel quartic."""
    ctx = _as_context(ctx)
    k = np.asarray(k)
    g = ctx._g4
    grad = (
        np.einsum("abcd,b,c,d->a", g, k, k, k)
        + np.einsum("abcd,a,c,d->b", g, k, k, k)
        + np.einsum("abcd,a,b,d->c", g, k, k, k)
        + np.einsum("abcd,a,b,c->d", g, k, k, k)
    ) / 24.0
    return ctx.sign * grad


def adjugate(matrix):
    """Adjugate of a 4x4 matrix via cofactors (valid also for singular input)."""
    m = np.asarray(matrix)
    adj = np.empty_like(m)
    idx = np.arange(4)
    for a in range(4):
        rows = idx[idx != a]
        for b in range(4):
            cols = idx[idx != b]
            minor = m[np.ix_(rows, cols)]
            adj[b, a] = (-1.0) ** (a + b) * np.linalg.det(minor)
    return adj


def fresnel_via_adjugate(ctx, k, kappa=None):
    """Fresnel quartic evaluated as adj(M)_{ab} kappa^a kappa^b.

    Independent of the precontracted route and of the admissible gauge rule
    ``kappa``; used as a cross-check oracle.  Carries the same orientation
    sign as :func:`fresnel_eval`.
    """
    ctx = _as_context(ctx)
    k = np.asarray(k, dtype=float)
    kv = coordinate_gauge(k) if kappa is None else kappa(k)
    m = principal_symbol(ctx.chi, k)
    val = np.dot(kv, adjugate(m) @ kv)
    return ctx.sign * float(np.real(val))


def coordinate_gauge(k):
    """Generic gauge rule kappa(k) = z / (k . z), z the best coordinate axis.

    ``z`` runs over the four coordinate basis vectors and the one maximizing
    |k . z| is used, so the rule is defined for every k != 0 and is
    homogeneous of degree -1.
    """
    k = np.asarray(k)
    axis = int(np.argmax(np.abs(k)))
    kappa = np.zeros(4, dtype=k.dtype)
    kappa[axis] = 1.0 / k[axis]
    return kappa


def axis_gauge(axis):
    """Gauge rule pinned to one coordinate axis (for gauge-independence tests)."""

    def kappa(k):
        k = np.asarray(k)
        out = np.zeros(4, dtype=k.dtype)
        out[axis] = 1.0 / k[axis]
        return out

    return kappa


def meromorphic_crystal_gauge(xi):
    """The crystal's meromorphic gauge kappa^a(k) = (k^a + i q^a) / eta^{-1}(k, k).

    Defined for complex k0, with poles exactly on the ordinary cone; satisfies
    k . kappa(k) = 1 away from the poles (q^a k_a = 0).
    """
    zinv = zeta_inverse(xi)

    def kappa(k):
        k = np.asarray(k)
        k_up = ETA_INV @ k
        q = q_covector(xi, k)
        q_up = ETA_INV @ q
        return (k_up + 1j * q_up) / np.dot(k, k_up)

    kappa.zeta_inv = zinv
    return kappa


def q_covector(xi, k):
    """Crystal momentum companion q_a(k) = (k . X) U_a - (k . U) X_a.

    Orthogonal to k in the sense q_a k^a = 0; vanishes identically at xi = 0.
    Supports complex k0 (components: q = (-xi k1, -xi k0, 0, 0)).
    """
    k = np.asarray(k)
    q = np.zeros(4, dtype=k.dtype)
    q[0] = -xi * k[1]
    q[1] = -xi * k[0]
    return q


def projector(k, kappa_value):
    """pi^c_a(k) = delta^c_a - kappa^c k_a, indexed as P[c, a]."""
    return np.eye(4, dtype=np.result_type(k, kappa_value)) - np.outer(kappa_value, k)


def second_adjugate(ctx, k):
    """Second adjugate Q_ab(k) of the principal symbol (gauge independent).

    Oriented consistently with :func:`fresnel_eval`, so that
    Q_cd pi^c_a pi^d_b = G(k) E_ab(k) holds with the public G.
    """
    ctx = _as_context(ctx)
    return ctx.sign * ctx.second_adjugate_raw(np.asarray(k))


def quasi_inverse(ctx, k, kappa=None, tol=1e-12):
    """Quasi-inverse E_ab(k) of the principal symbol for the gauge ``kappa``.

    Satisfies M^{ca}(k) E_ab(k) = pi^c_b(k), is homogeneous of degree -2 and
    even in k.  Raises NearNullCovector when |G(k)| <= tol * ||k||^4, i.e.
    when k is numerically characteristic.
    """
    ctx = _as_context(ctx)
    k = np.asarray(k)
    g = ctx._raw_fresnel(k)
    scale = float(np.sum(np.abs(k) ** 2)) ** 2
    if abs(g) <= tol * scale:
        raise NearNullCovector(f"|G(k)| = {abs(g):.3e} below tolerance; k is characteristic")
    kv = coordinate_gauge(k) if kappa is None else kappa(k)
    q = ctx.second_adjugate_raw(k)
    pi = projector(k, kv)
    return np.einsum("cd,ca,db->ab", q, pi, pi) / g


def quasi_inverse_batch(ctx, k0_values, kvec, kappa, tol=1e-12):
    """Quasi-inverse stacked over complex frequencies at fixed spatial momentum.

    ``k0_values`` has shape (N,); returns (N, 4, 4).  Used by the contour
    residue machinery, so no near-null guard is applied beyond ``tol`` against
    exact zeros.
    """
    ctx = _as_context(ctx)
    k0_values = np.asarray(k0_values)
    n = k0_values.size
    ks = np.empty((n, 4), dtype=complex)
    ks[:, 0] = k0_values
    ks[:, 1:] = np.asarray(kvec)[None, :]
    g = np.einsum("abcd,na,nb,nc,nd->n", ctx._g4, ks, ks, ks, ks) / 24.0
    if np.any(np.abs(g) <= tol):
        raise NearNullCovector("a contour node hit the characteristic set")
    q = np.einsum("abcd,nc,nd->nab", ctx._qt, ks, ks) / 8.0
    kappas = np.stack([kappa(kk) for kk in ks])
    pis = np.eye(4)[None, :, :] - np.einsum("nc,na->nca", kappas, ks)
    return np.einsum("ncd,nca,ndb->nab", q, pis, pis) / g[:, None, None]


def _shifted_quartic_coefficients(ctx, k, n):
    """Coefficients c of s -> G(k + s n) from five exact evaluations."""
    s_vals = np.array([-2.0, -1.0, 0.0, 1.0, 2.0])
    points = k[None, :] + s_vals[:, None] * n[None, :]
    g_vals = fresnel_eval(ctx, points)
    vander = np.vander(s_vals, 5, increasing=True)
    return np.linalg.solve(vander, g_vals)


class HyperbolicityReport:
    """Outcome of the probabilistic hyperbolicity verifier."""

    def __init__(self, hyperbolic, worst_ratio, worst_root, witness=None):
        self.hyperbolic = hyperbolic
        self.worst_ratio = worst_ratio
        self.worst_root = worst_root
        self.witness = witness

    def __bool__(self):
        return self.hyperbolic


def is_hyperbolic(ctx, n, trial_count=64, seed=0, tol=1e-8):
    """Check that t -> G(xi + t n) has only real roots for random real xi.

    This is a falsification test: ``trial_count`` pseudo-random covectors are
    tried and the first failure is reported with the offending covector as
    witness.  Double roots count as real (only reality is tested, not
    simplicity).
    """
    ctx = _as_context(ctx)
    n = np.asarray(n, dtype=float)
    if fresnel_eval(ctx, n) == 0.0:
        raise NearNullCovector("hyperbolicity direction must satisfy G(n) != 0")
    rng = np.random.default_rng(seed)
    worst_ratio = 0.0
    worst_root = 0.0 + 0.0j
    for _ in range(trial_count):
        probe = rng.standard_normal(4)
        coeffs = _shifted_quartic_coefficients(ctx, probe, n)
        roots, flags = quartic_real_roots(coeffs, tol=tol)
        ratios = np.abs(roots.imag) / (1.0 + np.abs(roots.real))
        j = int(np.argmax(ratios))
        if ratios[j] > worst_ratio:
            worst_ratio = float(ratios[j])
            worst_root = complex(roots[j])
        if not flags.all():
            return HyperbolicityReport(False, float(ratios[j]), complex(roots[j]), probe)
    return HyperbolicityReport(True, worst_ratio, worst_root)


def in_hyperbolicity_cone(ctx, k, tol=1e-8):
    """Whether k lies in the open hyperbolicity cone selected by ctx.orientation.

    Root-sign characterization: all roots of s -> G(k + s n0) must be real
    and strictly negative.  For the bi-metric crystal this coincides with
    eta^{-1}(k, k) < 0 together with the future orientation.
    """
    ctx = _as_context(ctx)
    k = np.asarray(k, dtype=float)
    coeffs = _shifted_quartic_coefficients(ctx, k, ctx.orientation)
    roots, flags = quartic_real_roots(coeffs, tol=tol)
    if not flags.all():
        return False
    scale = 1.0 + np.abs(roots.real)
    return bool(np.all(roots.real < -tol * scale))
