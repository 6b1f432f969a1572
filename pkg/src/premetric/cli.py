"""Command-line front end.

Subcommands: classify, fresnel, swec, qei-bound, normalization,
counterexample, verify.  All angles are radians and the boost is given as a
rapidity ``--alpha``, matching the worldline parameterization used by the
library.  Option precedence is flags > config file (a single JSON document,
``--config``) > defaults.

Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 degenerate input,
4 inapplicable parameters (non-subluminal worldline).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from .causal import classify_covector, classify_vector
from .energy import swec_check
from .errors import (
    DegenerateInput,
    GridTooCoarse,
    NotSubluminal,
    OnExtraordinaryCone,
    ZeroMomentum,
)
from .fresnel import fresnel_eval, in_hyperbolicity_cone, uniaxial_context
from .normalization import aleph_uc
from .numerics import QuadratureSpec
from .qei import GaussianSmearing, SampledSmearing, qei_bound
from .tensors import ETA_INV, form, zeta_inverse
from .verify import run_suites
from .wavepacket import (
    WavePacketSpec,
    field_strength_origin,
    n_particle_energy,
    rho_origin,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3
EXIT_NOT_APPLICABLE = 4

DEFAULTS = {
    "xi": 1.0,
    "alpha": 0.0,
    "beta": 0.0,
    "norm": "sr",
    "g": "gaussian:sigma=1.0",
    "nodes": 48,
    "format": "json",
    "out": None,
    "tau0": 1.0,
    "tol": 1e-9,
}


def _load_config(path):
    with open(path, "r", encoding="utf-8") as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise ValueError("config file must hold a single JSON object")
    return cfg


def resolve_options(args):
    """Merge CLI flags over config-file values over defaults."""
    cfg = _load_config(args.config) if getattr(args, "config", None) else {}
    merged = dict(DEFAULTS)
    merged.update({k: v for k, v in cfg.items() if k in DEFAULTS})
    for key in DEFAULTS:
        val = getattr(args, key.replace("-", "_"), None)
        if val is not None:
            merged[key] = val
    for key in ("xi", "alpha", "beta", "tau0", "tol"):
        merged[key] = float(merged[key])
    merged["nodes"] = int(merged["nodes"])
    if not all(math.isfinite(merged[k]) for k in ("xi", "alpha", "beta", "tau0")):
        raise ValueError("numeric options must be finite")
    if merged["xi"] < 0.0:
        raise ValueError("xi must be >= 0")
    return merged


def parse_components(text):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise ValueError(f"expected 4 comma-separated components, got {len(parts)}")
    return np.array([float(p) for p in parts])


def parse_smearing(text):
    """Parse --g: 'gaussian:sigma=S[,center=C]' or 'file:PATH' (two-column CSV)."""
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    if kind == "gaussian":
        params = {}
        for item in rest.split(","):
            if not item.strip():
                continue
            key, _, val = item.partition("=")
            params[key.strip()] = float(val)
        if "sigma" not in params:
            raise ValueError("gaussian smearing needs sigma=, e.g. gaussian:sigma=1.0")
        return GaussianSmearing(sigma=params["sigma"], center=params.get("center", 0.0))
    if kind == "file":
        return load_smearing_csv(rest)
    raise ValueError(f"unknown smearing spec {text!r}")


def load_smearing_csv(path):
    """Load a sampled smearing function from two-column CSV (tau, g).

    The tau column must be uniformly spaced; a header row is allowed.
    """
    taus, values = [], []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for row in csv.reader(fh):
            if not row or len(row) < 2:
                continue
            try:
                t, v = float(row[0]), float(row[1])
            except ValueError:
                if not taus:
                    continue  # header
                raise
            taus.append(t)
            values.append(v)
    if len(taus) < 3:
        raise ValueError("smearing file needs at least 3 numeric rows")
    taus = np.asarray(taus)
    steps = np.diff(taus)
    spacing = steps[0]
    if spacing <= 0.0 or np.max(np.abs(steps - spacing)) > 1e-9 * abs(spacing):
        raise ValueError("smearing file must have a uniformly increasing tau column")
    return SampledSmearing(spacing=float(spacing), samples=np.asarray(values), start=float(taus[0]))


def _emit(args, payload, csv_row=None, csv_header=None):
    opts_format = payload.pop("_format", "json")
    if opts_format == "csv" and csv_row is not None:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(csv_header)
        writer.writerow(csv_row)
        text = buf.getvalue()
    else:
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_classify(args):
    opts = resolve_options(args)
    ctx = uniaxial_context(opts["xi"])
    if (args.vector is None) == (args.covector is None):
        print("classify needs exactly one of --vector or --covector", file=sys.stderr)
        return EXIT_USAGE
    try:
        comps = parse_components(args.vector or args.covector)
    except ValueError as exc:
        print(f"bad components: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.vector is not None:
            cls = classify_vector(ctx, comps, tol=opts["tol"])
            forms = {
                "eta": float(form(ctx.eta, comps, comps)),
                "zeta": float(form(ctx.zeta, comps, comps)),
            }
        else:
            cls = classify_covector(ctx, comps, tol=opts["tol"])
            forms = {
                "eta": float(form(ctx.eta_inv, comps, comps)),
                "zeta": float(form(ctx.zeta_inv, comps, comps)),
            }
    except DegenerateInput as exc:
        print(f"degenerate input: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    payload = {
        "_format": opts["format"],
        "class": cls.value,
        "quadratic_forms": forms,
        "tolerance": opts["tol"],
        "xi": opts["xi"],
    }
    _emit(
        args,
        payload,
        csv_row=[opts["xi"], cls.value, forms["eta"], forms["zeta"], opts["tol"]],
        csv_header=["xi", "class", "eta_form", "zeta_form", "tolerance"],
    )
    return EXIT_OK


def cmd_fresnel(args):
    opts = resolve_options(args)
    try:
        k = parse_components(args.covector)
    except (TypeError, ValueError) as exc:
        print(f"bad covector: {exc}", file=sys.stderr)
        return EXIT_USAGE
    ctx = uniaxial_context(opts["xi"])
    g_val = float(fresnel_eval(ctx, k))
    eta_form = float(form(ETA_INV, k, k))
    zeta_form = float(form(zeta_inverse(opts["xi"]), k, k))
    payload = {
        "_format": opts["format"],
        "xi": opts["xi"],
        "fresnel": g_val,
        "eta_form": eta_form,
        "zeta_form": zeta_form,
        "factorization_residual": abs(g_val - eta_form * zeta_form),
        "in_hyperbolicity_cone": bool(in_hyperbolicity_cone(ctx, k)),
    }
    _emit(
        args,
        payload,
        csv_row=[opts["xi"], g_val, eta_form, zeta_form, payload["in_hyperbolicity_cone"]],
        csv_header=["xi", "fresnel", "eta_form", "zeta_form", "in_cone"],
    )
    return EXIT_OK


def cmd_swec(args):
    opts = resolve_options(args)
    report = swec_check(opts["xi"], opts["alpha"], opts["beta"])
    margin = 1.0 - opts["xi"] ** 2 * math.sinh(opts["alpha"]) ** 2 * math.sin(opts["beta"]) ** 2
    payload = {
        "_format": opts["format"],
        "xi": opts["xi"],
        "alpha": opts["alpha"],
        "beta": opts["beta"],
        "holds": bool(report.holds),
        "boundary": bool(report.boundary),
        "min_eigenvalue_x1": report.min_eigenvalue_x1,
        "min_eigenvalue_x2": report.min_eigenvalue_x2,
        "subluminal_margin": margin,
    }
    _emit(
        args,
        payload,
        csv_row=[
            opts["xi"],
            opts["alpha"],
            opts["beta"],
            payload["holds"],
            report.min_eigenvalue_x1,
            report.min_eigenvalue_x2,
        ],
        csv_header=["xi", "alpha", "beta", "holds", "min_eig_x1", "min_eig_x2"],
    )
    return EXIT_OK


def cmd_qei_bound(args):
    opts = resolve_options(args)
    try:
        g = parse_smearing(opts["g"]) if isinstance(opts["g"], str) else opts["g"]
    except (ValueError, OSError) as exc:
        print(f"bad smearing: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        result = qei_bound(opts["xi"], opts["alpha"], opts["beta"], opts["norm"], g)
    except NotSubluminal:
        print(
            "not subluminal: sinh^2(alpha) sin^2(beta) >= 1/xi^2, no bound applies",
            file=sys.stderr,
        )
        return EXIT_NOT_APPLICABLE
    except (OnExtraordinaryCone, GridTooCoarse) as exc:
        print(f"inapplicable: {exc}", file=sys.stderr)
        return EXIT_NOT_APPLICABLE
    payload = {"_format": opts["format"], **result.as_dict()}
    _emit(
        args,
        payload,
        csv_row=[
            result.xi,
            result.alpha,
            result.beta,
            result.aleph,
            result.C,
            result.gpp_norm_sq,
            result.bound,
        ],
        csv_header=["xi", "alpha", "beta", "aleph", "C", "gpp_norm_sq", "bound"],
    )
    return EXIT_OK


def cmd_normalization(args):
    opts = resolve_options(args)
    try:
        numeric = aleph_uc(opts["xi"], opts["alpha"], opts["beta"], "numeric")
        series = aleph_uc(opts["xi"], opts["alpha"], opts["beta"], "series")
    except NotSubluminal:
        print("not subluminal: the intrinsic clock is undefined", file=sys.stderr)
        return EXIT_NOT_APPLICABLE
    payload = {
        "_format": opts["format"],
        "xi": opts["xi"],
        "alpha": opts["alpha"],
        "beta": opts["beta"],
        "aleph_numeric": numeric.aleph,
        "residual": numeric.residual,
        "aleph_series": series.aleph,
        "series_error_order": series.error_order,
    }
    _emit(
        args,
        payload,
        csv_row=[opts["xi"], opts["alpha"], opts["beta"], numeric.aleph, series.aleph],
        csv_header=["xi", "alpha", "beta", "aleph_numeric", "aleph_series"],
    )
    return EXIT_OK


def cmd_counterexample(args):
    opts = resolve_options(args)
    spec = WavePacketSpec(tau0=opts["tau0"], alpha=opts["alpha"], beta=opts["beta"], xi=opts["xi"])
    quad = QuadratureSpec(nodes_per_axis=opts["nodes"], radius=8.0 / spec.tau0)
    f_closed = field_strength_origin(spec, "closed_form")
    try:
        f_quad = field_strength_origin(spec, "quadrature", quad)
    except (GridTooCoarse, ZeroMomentum) as exc:
        print(f"degenerate input: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    rho0 = rho_origin(spec)
    margin = 1.0 - spec.xi**2 * math.sinh(spec.alpha) ** 2 * math.sin(spec.beta) ** 2
    g = GaussianSmearing(sigma=spec.tau0 / 20.0)
    scaling = [n_particle_energy(spec, n, g, quad=quad) for n in (1, 2, 3)]
    payload = {
        "_format": opts["format"],
        "xi": spec.xi,
        "alpha": spec.alpha,
        "beta": spec.beta,
        "tau0": spec.tau0,
        "field_strength_origin": {
            "closed_form": [[c.real, c.imag] for c in f_closed],
            "quadrature": [[c.real, c.imag] for c in f_quad],
            "max_abs_error": float(np.max(np.abs(f_quad - f_closed))),
        },
        "rho_origin": rho0,
        "interluminal": margin < 0.0,
        "n_particle_energy": {"n": [1, 2, 3], "values": scaling},
    }
    _emit(
        args,
        payload,
        csv_row=[spec.xi, spec.alpha, spec.beta, spec.tau0, rho0, margin < 0.0],
        csv_header=["xi", "alpha", "beta", "tau0", "rho_origin", "interluminal"],
    )
    return EXIT_OK


def cmd_verify(args):
    suites = args.suite or ["all"]
    try:
        results, ok = run_suites(suites)
    except KeyError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    for res in results:
        print(res.line())
    print(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def _add_common(parser):
    parser.add_argument("--xi", type=float, help="crystal parameter (>= 0)")
    parser.add_argument("--alpha", type=float, help="rapidity relative to the crystal rest frame")
    parser.add_argument("--beta", type=float, help="angle to the optic axis, radians")
    parser.add_argument("--norm", help="normalization: sr | uc | <float>")
    parser.add_argument("--g", help="smearing: gaussian:sigma=S[,center=C] | file:PATH")
    parser.add_argument("--nodes", type=int, help="quadrature nodes per axis")
    parser.add_argument("--out", help="write the report to this path instead of stdout")
    parser.add_argument("--format", choices=["json", "csv"], help="output format")
    parser.add_argument("--config", help="JSON config file; flags override its values")
    parser.add_argument("--tol", type=float, help="classification tolerance")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="premetric",
        description="Causal structure, energy conditions and worldline energy bounds "
        "of a uniaxial birefringent medium.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a vector or covector against the cones")
    p.add_argument("--vector", help="four comma-separated components z^a")
    p.add_argument("--covector", help="four comma-separated components k_a")
    _add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("fresnel", help="evaluate the Fresnel quartic and its factorization")
    p.add_argument("--covector", required=True, help="four comma-separated components k_a")
    _add_common(p)
    p.set_defaults(func=cmd_fresnel)

    p = sub.add_parser("swec", help="strict weak-energy-condition verdict for a worldline")
    _add_common(p)
    p.set_defaults(func=cmd_swec)

    p = sub.add_parser("qei-bound", help="worldline energy-density lower bound")
    _add_common(p)
    p.set_defaults(func=cmd_qei_bound)

    p = sub.add_parser("normalization", help="crystal-intrinsic clock normalization")
    _add_common(p)
    p.set_defaults(func=cmd_normalization)

    p = sub.add_parser("counterexample", help="interluminal wave-packet diagnostics")
    p.add_argument("--tau0", type=float, help="packet width scale")
    _add_common(p)
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("verify", help="run oracle suites and report residuals")
    p.add_argument(
        "--suite",
        action="append",
        choices=["all", "fresnel", "residues", "appendix_a", "swec", "qei", "normalization", "counterexample"],
        help="suite to run (repeatable); default all",
    )
    _add_common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
