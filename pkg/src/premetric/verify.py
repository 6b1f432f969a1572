"""Oracle-backed verification suites with per-check residuals.

Each suite returns a list of :class:`CheckResult`; every check compares an
implementation path against an independent route (closed form vs quadrature,
precontraction vs adjugate, contour residue vs printed residue tensor, ...)
at a fixed tolerance.  The command-line ``verify`` subcommand and the
acceptance test module both run these suites.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import causal, energy, fresnel, normalization, qei, uniaxial, wavepacket
from .numerics import QuadratureSpec
from .tensors import ETA_INV, build_uniaxial_chi, frame_from_worldline, zeta_inverse


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    residual: float
    tolerance: float
    detail: str = ""

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        text = f"[{status}] {self.name}: residual {self.residual:.3e} (tol {self.tolerance:.1e})"
        if self.detail:
            text += f" - {self.detail}"
        return text


def _check(name, residual, tolerance, detail=""):
    return CheckResult(
        name=name,
        passed=bool(residual <= tolerance),
        residual=float(residual),
        tolerance=float(tolerance),
        detail=detail,
    )


def suite_fresnel(seed=2024):
    """Factorization, quasi-inverse identity, gauge independence, cone geometry."""
    rng = np.random.default_rng(seed)
    results = []

    worst = 0.0
    for xi in (0.0, 0.5, 1.0, 2.0):
        ctx = fresnel.uniaxial_context(xi)
        ks = rng.standard_normal((1000, 4)) * 1.5
        g_vals = fresnel.fresnel_eval(ctx, ks)
        prod = np.einsum("na,ab,nb->n", ks, ETA_INV, ks) * np.einsum(
            "na,ab,nb->n", ks, zeta_inverse(xi), ks
        )
        scale = 1.0 + np.sum(ks**2, axis=1) ** 2
        worst = max(worst, float(np.max(np.abs(g_vals - prod) / scale)))
    results.append(
        _check("fresnel factorization vs bi-metric product", worst, 1e-9, "xi in {0,0.5,1,2}, 1000 covectors each")
    )

    worst = 0.0
    tested = 0
    for xi in (0.5, 1.0):
        ctx = fresnel.uniaxial_context(xi)
        while tested < 250 * (1 if xi == 0.5 else 2):
            k = rng.standard_normal(4) * 2.0
            if abs(fresnel.fresnel_eval(ctx, k)) < 1e-6 * (1.0 + np.sum(k**2) ** 2):
                continue
            e_mat = fresnel.quasi_inverse(ctx, k)
            m_mat = fresnel.principal_symbol(ctx.chi, k)
            pi = fresnel.projector(k, fresnel.coordinate_gauge(k))
            worst = max(worst, float(np.max(np.abs(m_mat @ e_mat - pi))))
            tested += 1
    results.append(
        _check("quasi-inverse identity M E = pi", worst, 1e-8, "500 non-characteristic covectors")
    )

    worst = 0.0
    for _ in range(100):
        xi = rng.uniform(0.0, 2.0)
        ctx = fresnel.uniaxial_context(xi)
        k = rng.standard_normal(4)
        by_size = np.argsort(-np.abs(k))
        vals = [
            fresnel.fresnel_via_adjugate(ctx, k, fresnel.axis_gauge(int(by_size[0]))),
            fresnel.fresnel_via_adjugate(ctx, k, fresnel.axis_gauge(int(by_size[1]))),
            fresnel.fresnel_eval(ctx, k),
        ]
        scale = 1.0 + max(abs(v) for v in vals)
        worst = max(worst, (max(vals) - min(vals)) / scale)
    results.append(_check("fresnel gauge independence", worst, 1e-9, "100 random (chi, k) pairs"))

    ctx = fresnel.uniaxial_context(1.0)
    worst = 0.0
    for _ in range(50):
        k = rng.standard_normal(4) * 1.5
        if abs(fresnel.fresnel_eval(ctx, k)) < 1e-4:
            continue
        e1 = fresnel.quasi_inverse(ctx, k)
        for s in (2.0, -1.0):
            es = fresnel.quasi_inverse(ctx, s * k)
            worst = max(worst, float(np.max(np.abs(es - e1 / s**2)) / np.max(np.abs(e1))))
    results.append(_check("quasi-inverse homogeneity degree -2", worst, 1e-10))

    inside = 0
    convex_ok = True
    while inside < 500:
        spatial = rng.standard_normal((2, 3))
        k0 = np.linalg.norm(spatial, axis=1) * rng.uniform(1.05, 3.0, size=2)
        k1 = np.array([k0[0], *spatial[0]])
        k2 = np.array([k0[1], *spatial[1]])
        if not (fresnel.in_hyperbolicity_cone(ctx, k1) and fresnel.in_hyperbolicity_cone(ctx, k2)):
            continue
        inside += 1
        lam = rng.uniform(0.0, 1.0)
        if not fresnel.in_hyperbolicity_cone(ctx, lam * k1 + (1 - lam) * k2):
            convex_ok = False
    results.append(
        _check("hyperbolicity cone convexity", 0.0 if convex_ok else 1.0, 0.5, "500 random pairs")
    )
    return results


def suite_residues(seed=2025):
    """Contour residues of the quasi-inverse and the polarization contract."""
    rng = np.random.default_rng(seed)
    results = []

    worst = 0.0
    done = 0
    while done < 100:
        kv = rng.standard_normal(3) * 1.5
        if kv[1] ** 2 + kv[2] ** 2 < 1e-3 * np.sum(kv**2):
            continue
        e1, e2 = uniaxial.residue_check(1.0, kv)
        worst = max(worst, e1, e2)
        done += 1
    results.append(
        _check("contour residues vs residue tensors", worst, 1e-6, "100 off-axis momenta, xi=1")
    )

    worst = 0.0
    chi = build_uniaxial_chi(1.0)
    zinv = zeta_inverse(1.0)
    for _ in range(1000):
        kv = rng.standard_normal(3) * 2.0
        md = uniaxial.mode_data(1.0, kv)
        k, kt = md.k, md.k_tilde
        vals = [
            abs(md.v @ ETA_INV @ md.v - 1.0),
            abs(md.v_tilde @ zinv @ md.v_tilde - 1.0),
            abs(md.v[0]),
            abs(md.v_tilde[0]),
            abs(k @ ETA_INV @ md.v),
            abs(kt @ zinv @ md.v_tilde),
            float(np.max(np.abs(np.einsum("acbd,b,c,d->a", chi, md.v, k, k)))),
            float(np.max(np.abs(np.einsum("acbd,b,c,d->a", chi, md.v_tilde, kt, kt)))),
        ]
        worst = max(worst, max(vals))
    results.append(
        _check("polarization contract (normalization, gauge, field equation)", worst, 1e-10, "1000 momenta")
    )
    return results


def suite_appendix_a(nodes=64):
    """Null-shell moment reduction: 3d quadrature vs 1d frequency integral."""
    results = []
    f = qei.GaussianSmearing(1.0)
    rest = np.array([1.0, 0.0, 0.0, 0.0])
    boost = np.array([np.cosh(1.0), 0.0, 0.0, np.sinh(1.0)])
    for label, u in (("rest", rest), ("boost alpha=1", boost)):
        _, _, err = qei.cone_moment_identity(u, u, f, metric="eta", nodes=nodes)
        results.append(_check(f"eta-shell moment identity ({label})", err, 1e-4))
    _, _, err = qei.cone_moment_identity(rest, rest, f, metric="zeta", xi=1.0, nodes=nodes)
    results.append(_check("zeta-shell moment identity (rest, xi=1)", err, 1e-4))
    lhs, rhs, _ = qei.cone_moment_identity(rest, np.array([0.0, 1.0, 0.0, 0.0]), f, nodes=nodes)
    results.append(
        _check("orthogonal-direction moment vanishes", max(abs(lhs), abs(rhs)), 1e-6)
    )
    return results


def suite_swec(grid=20):
    """X matrices from first principles against closed forms; boundary location."""
    results = []
    worst = 0.0
    alphas = np.linspace(-1.75, 1.75, grid)
    betas = np.linspace(0.0, 2.0 * np.pi, grid, endpoint=False)
    for xi in (0.5, 1.0):
        for a in alphas:
            for b in betas:
                em = energy.energy_matrices(xi, a, b)
                s2 = np.sinh(a) ** 2 * np.sin(b) ** 2
                x1_expected = np.diag([1.0, 1.0 - xi**2 * s2, 1.0])
                x2_expected = np.diag([1.0 + xi**2 * (1.0 + s2), 1.0, 1.0])
                worst = max(
                    worst,
                    float(np.max(np.abs(em.x1 - x1_expected))),
                    float(np.max(np.abs(em.x2 - x2_expected))),
                )
    results.append(
        _check("X matrices from first principles", worst, 1e-10, f"{grid}x{grid}x2 grid")
    )

    worst = 0.0
    for xi in (0.5, 1.0, 2.0):
        lo, hi = 0.0, np.arcsinh(4.0 / xi)
        if energy.swec_check(xi, hi, np.pi / 2).holds:
            raise AssertionError("bisection bracket does not contain the boundary")
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if energy.swec_check(xi, mid, np.pi / 2).holds:
                lo = mid
            else:
                hi = mid
        located = np.sinh(0.5 * (lo + hi))
        worst = max(worst, abs(located - 1.0 / xi))
    results.append(
        _check("sWEC boundary at sinh(a) sin(b) = 1/xi (bisection)", worst, 1e-6)
    )

    worst = 0.0
    rng = np.random.default_rng(11)
    for _ in range(40):
        xi = rng.uniform(0.1, 1.5)
        a = rng.uniform(-1.5, 1.5)
        b = rng.uniform(0.0, 2.0 * np.pi)
        report = energy.swec_check(xi, a, b)
        closed = np.sinh(a) ** 2 * np.sin(b) ** 2 < 1.0 / xi**2
        if bool(report.holds) != closed and not report.boundary:
            worst = 1.0
    results.append(_check("sWEC verdict equals closed-form criterion", worst, 0.5))
    return results


def suite_qei(seed=2026):
    """Kernel coefficient, closed-form bound benchmarks, pipeline agreement."""
    rng = np.random.default_rng(seed)
    results = []

    worst = max(
        abs(qei.C_coefficient(0.0, a, b) - 2.0)
        for a in np.linspace(-2, 2, 7)
        for b in np.linspace(0, 2 * np.pi, 7)
    )
    for xi in (0.2, 0.7, 1.0, 1.6):
        worst = max(worst, abs(qei.C_coefficient(xi, 0.0, 1.1) - (2.0 + xi**2)))
    results.append(_check("C limits: C(a,b,0)=2 and C(0,b,xi)=2+xi^2", worst, 1e-12))

    worst = 0.0
    for _ in range(40):
        xi = rng.uniform(0.05, 1.8)
        b = rng.uniform(0.0, 2.0 * np.pi)
        a_max = np.arcsinh(1.0 / (xi * max(abs(np.sin(b)), 1e-3)))
        a = rng.uniform(-0.95, 0.95) * min(a_max, 2.5)
        worst = max(
            worst, abs(qei.C_coefficient(xi, a, b) - qei.c_from_frame_data(xi, a, b))
        )
    results.append(_check("C closed form vs frame-data reconstruction", worst, 1e-10))

    sigma_unit = (3.0 * np.sqrt(np.pi) / 4.0) ** (1.0 / 3.0)
    worst = 0.0
    for xi in (0.0, 0.5, 1.0):
        res = qei.qei_bound(xi, 0.0, 0.0, 1.0, qei.GaussianSmearing(sigma_unit))
        expected = -(2.0 + xi**2) / (16.0 * np.pi**2)
        worst = max(worst, abs(res.bound - expected) / abs(expected))
    results.append(_check("rest-frame bound -(2+xi^2)/(16 pi^2)", worst, 1e-12))

    res = qei.qei_bound(0.0, 0.4, 1.0, "sr", qei.GaussianSmearing(1.0))
    expected = -3.0 * np.sqrt(np.pi) / (32.0 * np.pi**2)
    results.append(
        _check("isotropic Gaussian bound -3 sqrt(pi)/(32 pi^2)", abs(res.bound - expected), 1e-10)
    )

    worst = 0.0
    for _ in range(10):
        xi = rng.uniform(0.1, 1.5)
        b = rng.uniform(0.0, 2.0 * np.pi)
        a_reach = np.arcsinh(1.0 / (xi * max(abs(np.sin(b)), 1e-2)))
        a = rng.uniform(-0.9, 0.9) * min(a_reach, 2.0)
        sigma = rng.uniform(0.5, 2.0)
        g = qei.SampledSmearing.from_function(
            qei.GaussianSmearing(sigma), -8.0 * sigma, 8.0 * sigma, sigma / 64.0
        )
        closed = qei.qei_bound(xi, a, b, 1.0, qei.GaussianSmearing(sigma)).bound
        piped = qei.qei_bound_pipeline(xi, a, b, 1.0, g)
        worst = max(worst, abs(piped - closed) / abs(closed))
    results.append(
        _check("pipeline vs closed-form bound", worst, 1e-2, "10 random subluminal parameter sets")
    )
    return results


def suite_normalization(seed=2027):
    """Crystal-clock normalization: numeric vs series, Legendre round trip."""
    rng = np.random.default_rng(seed)
    results = []

    ratios = []
    orders = []
    residuals = []
    for _ in range(10):
        a = rng.uniform(-1.5, 1.5)
        b = rng.uniform(0.0, 2.0 * np.pi)
        diffs = {}
        for xi in (0.2, 0.1, 0.05):
            num = normalization.aleph_uc(xi, a, b, "numeric")
            ser = normalization.aleph_uc(xi, a, b, "series")
            diffs[xi] = abs(num.aleph - ser.aleph)
            ratios.append(diffs[xi] / xi**4)
            residuals.append(num.residual)
        orders.append(np.log(diffs[0.2] / diffs[0.05]) / np.log(4.0))
    worst_ratio = float(np.max(ratios))
    min_order = float(np.min(orders))
    results.append(
        _check(
            "normalization |numeric - series| = O(xi^4)",
            3.5 - min_order,
            0.0,
            f"min observed order {min_order:.2f}, |diff|/xi^4 <= {worst_ratio:.3f}",
        )
    )
    results.append(_check("clock condition residual |pstar(aleph u)-1|", max(residuals), 1e-10))

    worst = 0.0
    for _ in range(100):
        spatial = rng.standard_normal(3) * 0.5
        k = np.array([np.linalg.norm(spatial) + rng.uniform(0.5, 2.0), *spatial])
        v = normalization.legendre_velocity(0.8, k)
        back = normalization.legendre_inverse(0.8, v)
        worst = max(worst, float(np.linalg.norm(back - k) / np.linalg.norm(k)))
    results.append(_check("Legendre map round trip", worst, 1e-9, "100 cone-interior covectors"))
    return results


def suite_counterexample(seed=2028, nodes=48):
    """Wave-packet field strength, origin density, scaling, kernel positivity."""
    rng = np.random.default_rng(seed)
    results = []

    worst = 0.0
    specs = [wavepacket.WavePacketSpec(1.0, np.arcsinh(2.0), np.pi / 2, 1.0)]
    for _ in range(4):
        specs.append(
            wavepacket.WavePacketSpec(
                rng.uniform(0.7, 1.5), rng.uniform(0.0, 1.5), rng.uniform(0.0, np.pi), rng.uniform(0.3, 1.5)
            )
        )
    for spec in specs:
        quad = QuadratureSpec(nodes_per_axis=nodes, radius=8.0 / spec.tau0, mapping="tanh")
        f_q = wavepacket.field_strength_origin(spec, "quadrature", quad)
        f_c = wavepacket.field_strength_origin(spec, "closed_form")
        worst = max(worst, float(np.max(np.abs(f_q - f_c)) / np.max(np.abs(f_c))))
    results.append(
        _check("packet field strength: quadrature vs closed form", worst, 1e-4, f"{len(specs)} specs, {nodes}^3 nodes")
    )

    worst = 0.0
    for xi in (0.5, 1.0, 2.0):
        for a in np.linspace(0.0, 1.5, 5):
            for b in np.linspace(0.0, np.pi, 5):
                spec = wavepacket.WavePacketSpec(1.2, a, b, xi)
                expected = 4.0 * (1.0 - xi**2 * np.sinh(a) ** 2 * np.sin(b) ** 2) / 1.2**4
                got = wavepacket.rho_origin(spec)
                worst = max(worst, abs(got - expected) / max(abs(expected), 1e-9))
    results.append(_check("rho(0) closed form on (a, b, xi) grid", worst, 1e-8))

    bench = wavepacket.WavePacketSpec(1.0, np.arcsinh(2.0), np.pi / 2, 1.0)
    results.append(
        _check("benchmark rho(0) = -12", abs(wavepacket.rho_origin(bench) + 12.0), 1e-8)
    )

    g = qei.GaussianSmearing(0.05)
    single = wavepacket.smeared_packet_energy(bench, g)
    values = [wavepacket.n_particle_energy(bench, n, g) for n in (1, 2, 3, 4)]
    monotone = all(values[i + 1] < values[i] for i in range(3)) and single < 0.0
    results.append(
        _check(
            "n-particle energy strictly decreasing",
            0.0 if monotone else 1.0,
            0.5,
            f"single-packet value {single:.4f}",
        )
    )

    worst_rest = abs(
        wavepacket.pair_kernel_diagonal(1.0, [0.0, 0.0, 1.0], frame_from_worldline(0.0, 0.0, 1.0))
        - 0.5
    )
    results.append(_check("pair kernel diagonal, rest frame k=(0,0,1)", worst_rest, 1e-12))

    min_val = np.inf
    for _ in range(10):
        xi = rng.uniform(0.2, 1.5)
        b = rng.uniform(0.0, 2.0 * np.pi)
        a_reach = np.arcsinh(1.0 / (xi * max(abs(np.sin(b)), 1e-2)))
        a = rng.uniform(-0.9, 0.9) * min(a_reach, 2.0)
        frame = frame_from_worldline(a, b, 1.0)
        for _ in range(100):
            kv = rng.standard_normal(3) * 2.0
            min_val = min(min_val, wavepacket.pair_kernel_diagonal(xi, kv, frame))
    results.append(
        _check(
            "pair kernel positivity on subluminal frames",
            0.0 if min_val > 0.0 else 1.0,
            0.5,
            f"min value {min_val:.3e} over 1000 momenta x 10 frames",
        )
    )
    return results


SUITES = {
    "fresnel": suite_fresnel,
    "residues": suite_residues,
    "appendix_a": suite_appendix_a,
    "swec": suite_swec,
    "qei": suite_qei,
    "normalization": suite_normalization,
    "counterexample": suite_counterexample,
}


def run_suites(names):
    """Run the named suites ('all' for every suite); returns (results, ok)."""
    if isinstance(names, str):
        names = [names]
    selected = list(SUITES) if "all" in names else names
    results = []
    for name in selected:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
        results.extend(SUITES[name]())
    return results, all(r.passed for r in results)
