"""Shared numerical kernels.

Quartic root solving via companion-matrix eigenvalues, trapezoid contour
residues, Gauss-Legendre product grids, and discrete Fourier machinery with
the convention

    fhat(s) = int f(x) exp(+i s x) dx,

so that the transform of exp(-x^2/2) is sqrt(2 pi) exp(-s^2/2) and
Plancherel reads ||fhat||^2 = 2 pi ||f||^2.

Everything here is deterministic: a fixed input always produces a
bit-identical output (reductions run in a fixed order on a single thread).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GridTooCoarse, NonConvergent


def kahan_sum(values):
    """Compensated (Kahan) summation of a 1-d array, in index order."""
    total = 0.0
    comp = 0.0
    for v in np.asarray(values, dtype=float):
        y = v - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def quartic_real_roots(coeffs, tol=1e-8):
    """Roots of c0 + c1 t + ... + c4 t^4 with per-root reality flags.

    Roots come from the companion-matrix eigenvalues (robust near double
    roots); a root counts as real when ``|Im| <= tol * (1 + |Re|)``.  A
    vanishing leading coefficient falls back to the reduced-degree problem.
    Returns ``(roots, real_flags)`` with roots in ascending real part.
    """
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.ndim != 1 or coeffs.size != 5:
        raise ValueError("expected the five coefficients c0..c4")
    scale = np.max(np.abs(coeffs))
    if scale == 0.0:
        raise ValueError("zero polynomial")
    high_first = coeffs[::-1]
    # np.roots strips leading (near-)zeros itself only for exact zeros; clip
    # relatively tiny leading coefficients to zero for a stable degree fallback.
    trimmed = high_first.copy()
    for i in range(len(trimmed) - 1):
        if abs(trimmed[i]) > 1e-14 * scale:
            break
        trimmed[i] = 0.0
    nz = np.nonzero(trimmed)[0]
    trimmed = trimmed[nz[0] :]
    roots = np.roots(trimmed)
    order = np.argsort(roots.real)
    roots = roots[order]
    flags = np.abs(roots.imag) <= tol * (1.0 + np.abs(roots.real))
    return roots, flags


def contour_residue(fn, center, radius, nodes=256, check=True, rtol=1e-8):
    """Residue (1/2 pi i) closed-contour integral of ``fn`` on a circle.

    ``fn`` must accept a complex array of contour points of shape (N,) and
    return the integrand values stacked along the first axis; it must be
    analytic on (not necessarily inside) the circle.  The trapezoid rule on
    the circle converges spectrally for analytic integrands; with ``check``
    the node count is doubled once and NonConvergent is raised if the result
    moves by more than ``rtol`` relative.
    """

    def estimate(n):
        theta = 2.0 * np.pi * np.arange(n) / n
        z = center + radius * np.exp(1j * theta)
        vals = np.asarray(fn(z))
        # (1/2 pi i) * int f(z) dz with dz = i (z - center) dtheta
        weights = (z - center) / n
        return np.tensordot(weights, vals, axes=(0, 0))

    coarse = estimate(nodes)
    if not check:
        return coarse
    fine = estimate(2 * nodes)
    scale = np.max(np.abs(fine)) + 1e-300
    if np.max(np.abs(fine - coarse)) > rtol * scale:
        raise NonConvergent(
            f"contour residue changed by more than {rtol:g} under node doubling"
        )
    return fine


def gauss_legendre(n, a, b):
    """Gauss-Legendre nodes and weights on [a, b]."""
    x, w = np.polynomial.legendre.leggauss(int(n))
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    return mid + half * x, half * w


@dataclass(frozen=True)
class QuadratureSpec:
    """Product Gauss-Legendre grid on the cube [-radius, radius]^3.

    ``mapping`` is either "linear" or "tanh"; the tanh map concentrates nodes
    near the origin (where Gaussian-weighted integrands live) while keeping
    the full truncation radius.  Axis node counts should be even so that no
    node lands on a coordinate plane (the optic-axis ray k2 = k3 = 0 is then
    avoided automatically).  Grids are deterministic: equal specs give
    bit-identical nodes and weights.
    """

    nodes_per_axis: int = 48
    radius: float = 8.0
    mapping: str = "tanh"
    sharpness: float = 1.0

    def axis(self):
        x, w = np.polynomial.legendre.leggauss(self.nodes_per_axis)
        if self.mapping == "linear":
            return self.radius * x, self.radius * w
        if self.mapping == "tanh":
            a = self.sharpness
            scale = self.radius / np.tanh(a)
            nodes = scale * np.tanh(a * x)
            weights = w * scale * a / np.cosh(a * x) ** 2
            return nodes, weights
        raise ValueError(f"unknown mapping {self.mapping!r}")

    def grid3d(self):
        """Flattened nodes (N, 3) and weights (N,) of the product rule."""
        x, w = self.axis()
        p1, p2, p3 = np.meshgrid(x, x, x, indexing="ij")
        w1, w2, w3 = np.meshgrid(w, w, w, indexing="ij")
        points = np.stack([p1.ravel(), p2.ravel(), p3.ravel()], axis=1)
        weights = (w1 * w2 * w3).ravel()
        return points, weights


def fourier_transform(samples, spacing, x0, pad_factor=4):
    """Sampled forward transform fhat(s) = int f(x) exp(i s x) dx.

    Returns ``(freqs, values)`` on the zero-padded FFT grid, sorted by
    frequency.  ``x0`` is the coordinate of the first sample.
    """
    samples = np.asarray(samples)
    n = samples.size * int(pad_factor)
    padded = np.zeros(n, dtype=complex)
    padded[: samples.size] = samples
    freqs = 2.0 * np.pi * np.fft.fftfreq(n, d=spacing)
    values = spacing * n * np.fft.ifft(padded) * np.exp(1j * freqs * x0)
    order = np.argsort(freqs)
    return freqs[order], values[order]


def spectral_second_derivative(samples, spacing, pad_factor=4):
    """Second derivative of uniformly sampled data by transform-multiply-invert.

    The samples must describe a function that has effectively vanished at
    both grid ends (below 1e-12 of the peak); otherwise the periodic wrap of
    the padded transform contaminates the result and GridTooCoarse is raised.
    """
    samples = np.asarray(samples, dtype=float)
    peak = np.max(np.abs(samples))
    if peak == 0.0:
        return np.zeros_like(samples)
    if abs(samples[0]) > 1e-12 * peak or abs(samples[-1]) > 1e-12 * peak:
        raise GridTooCoarse("samples must vanish at both grid ends")
    n = samples.size * int(pad_factor)
    padded = np.zeros(n)
    padded[: samples.size] = samples
    freqs = 2.0 * np.pi * np.fft.fftfreq(n, d=spacing)
    second = np.fft.ifft(-(freqs**2) * np.fft.fft(padded))
    return second.real[: samples.size]
