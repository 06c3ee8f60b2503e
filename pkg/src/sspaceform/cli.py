"""Command-line front end: verify / synth / ode.

verify: run the full pipeline (trace -> Frenet -> slant -> master
equations) on a configured curve and emit a JSON report plus a per-sample
CSV.  synth: write a synthesized trace as CSV, optionally self-verifying.
ode: evaluate a closed-form candidate of the governing ODE and emit
(t, y, residual, domain_flag) CSV.

Exit codes: 0 success (and verdict matches the expectation, if one is
configured); 1 verdict mismatch; 2 configuration error; 3 numerical
failure (degeneracy, pole, integrator failure, nowhere-real closed form).

Config files are flat INI (configparser); see the README for the schema.
Reports are deterministic: fixed float formatting, sorted keys, no
timestamps; every report embeds the tool version, a config hash, the seed
and the tolerance set.  The SSPACEFORM_TOLERANCES environment variable
selects a default tolerance profile (strict / default / loose).
"""
from __future__ import annotations

import argparse
import configparser
import csv
import hashlib
import json
import os
import sys

import numpy as np

from . import __version__
from . import biharmonic as bih
from . import odesol
from . import synth
from .curve import CurveTrace, frenet_apparatus, unit_speed_check
from .manifold import ModelParams
from .slant import contact_angles, phiT_decomposition

EXIT_OK = 0
EXIT_VERDICT_MISMATCH = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

TOL_PROFILES = {
    "strict": {"eq": 1e-6, "slant": 1e-8, "ode": 1e-12},
    "default": {"eq": 1e-3, "slant": 1e-5, "ode": 1e-10},
    "loose": {"eq": 1e-2, "slant": 1e-3, "ode": 1e-8},
}

BUILTIN_CURVES = ("catenary", "circle", "geodesic", "case2-order3",
                  "r6-example", "r6-steered")


class ConfigError(Exception):
    pass


def _fmt(x) -> str:
    return f"{float(x):.16e}"


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj)}")


def _canonical_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, default=_json_default)


def _config_hash(cp: configparser.ConfigParser) -> str:
    items = []
    for section in sorted(cp.sections()):
        for key in sorted(cp[section]):
            items.append(f"{section}.{key}={cp[section][key]}")
    return hashlib.sha256("\n".join(items).encode()).hexdigest()


def _tolerances(cp: configparser.ConfigParser | None) -> dict:
    profile = os.environ.get("SSPACEFORM_TOLERANCES", "default")
    if profile not in TOL_PROFILES:
        raise ConfigError(f"unknown tolerance profile {profile!r} "
                          f"(choose from {sorted(TOL_PROFILES)})")
    tol = dict(TOL_PROFILES[profile])
    if cp is not None and cp.has_section("tolerances"):
        for key in cp["tolerances"]:
            if key not in tol:
                raise ConfigError(f"unknown tolerance name {key!r}")
            tol[key] = float(cp["tolerances"][key])
    if any(v <= 0 for v in tol.values()):
        raise ConfigError("tolerances must be positive")
    return tol


def _parse_window(text: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise ConfigError(f"window must be 'lo:hi', got {text!r}")
    lo, hi = float(parts[0]), float(parts[1])
    if hi <= lo:
        raise ConfigError("window must have hi > lo")
    return lo, hi


def _build_trace(params: ModelParams, cp: configparser.ConfigParser):
    """Trace plus the curvature callable needed for c1-style weights."""
    source = cp.get("curve", "source", fallback=None)
    if source is None:
        raise ConfigError("[curve] source is required")
    window = _parse_window(cp.get("curve", "window", fallback="-2:2"))
    step = float(cp.get("curve", "step", fallback="1e-3"))
    if step <= 0:
        raise ConfigError("step must be positive")
    kind, _, arg = source.partition(":")
    if kind == "csv":
        if not arg:
            raise ConfigError("source csv: needs a path")
        trace = CurveTrace.from_csv(params, arg)
        trace.meta["sampled"] = True
        return trace, None
    if kind != "builtin":
        raise ConfigError(f"unknown curve source kind {kind!r}")
    name = arg
    if name not in BUILTIN_CURVES:
        raise ConfigError(f"unknown builtin curve {name!r} "
                          f"(choose from {BUILTIN_CURVES})")
    n = int(round((window[1] - window[0]) / step)) + 1
    if name == "catenary":
        return synth.legendre_catenary(params, window=window, n=n), \
            lambda t: 1.0 / (1.0 + t ** 2)
    if name == "circle":
        radius = float(cp.get("curve", "radius", fallback="2.0"))
        return synth.flat_circle_trace(params, radius=radius, window=window, n=n), None
    if name == "geodesic":
        return synth.geodesic_trace(params, window=window, n=n), None
    if name == "case2-order3":
        if (params.m, params.s) != (2, 2):
            raise ConfigError("case2-order3 is defined for m = 2, s = 2")
        return synth.case2_order3_curve(window=window, step=step), \
            lambda t: 1.0 / (2.0 + t ** 2)
    cfg = synth.builtin_example_r6()
    if (params.m, params.s) != (2, 2):
        raise ConfigError("the r6 examples are defined for m = 2, s = 2")
    if name == "r6-example":
        trace, _ = synth.integrate_frenet_system(
            cfg.synthesis_spec(window=window, step=step))
        return trace, cfg.k1
    trace = cfg.steering_trace(step=step)   # r6-steered, feasible window
    return trace, cfg.k1


def _build_weight(ts, k1_measured, k1_callable, cp) -> bih.WeightFunction:
    section = cp["weight"] if cp.has_section("weight") else {}
    keys = [k for k in ("c1", "constant", "csv") if k in section]
    if len(keys) > 1:
        raise ConfigError("[weight] must set exactly one of c1, constant, csv")
    if not keys or keys[0] == "c1":
        c1 = float(section.get("c1", "1.0")) if section else 1.0
        h = ts[1] - ts[0]
        if k1_callable is not None:
            k1v = np.asarray(k1_callable(ts), dtype=float)
        else:
            k1v = np.asarray(k1_measured, dtype=float)
        if np.all(k1v < 1e-9):
            # geodesic: f = c1 k1^(-3/2) is undefined and irrelevant
            # (every tension term carries k1); use a constant weight
            return bih.WeightFunction.constant(ts, c1)
        from .curve import fd_derivative
        k1p = fd_derivative(k1v, h)
        k1pp = fd_derivative(k1p, h)
        return odesol.f_from_k1(ts, k1v, k1p, k1pp, c1=c1)
    if keys[0] == "constant":
        return bih.WeightFunction.constant(ts, float(section["constant"]))
    rows = []
    with open(section["csv"], newline="") as fh:
        reader = csv.reader(fh)
        next(reader)
        for row in reader:
            if row:
                rows.append((float(row[0]), float(row[1])))
    data = np.asarray(rows)
    if data[0, 0] > ts[0] or data[-1, 0] < ts[-1]:
        raise ConfigError("sampled weight does not cover the curve window")
    # cubic spline keeps f'' meaningful when the weight grid differs from
    # the trace grid (linear interpolation would have distributional f'')
    from scipy.interpolate import CubicSpline
    spline = CubicSpline(data[:, 0], data[:, 1])
    return bih.WeightFunction(ts=ts, f=spline(ts), fp=spline(ts, 1),
                              fpp=spline(ts, 2))


def run_verify(config_path: str, report_path=None, csv_path=None,
               expect=None) -> int:
    cp = configparser.ConfigParser()
    read = cp.read(config_path)
    if not read:
        print(f"error: cannot read config {config_path!r}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        m = cp.getint("manifold", "m", fallback=2)
        s = cp.getint("manifold", "s", fallback=2)
        if m < 1 or s < 1:
            raise ConfigError(f"invalid manifold dimensions m={m}, s={s}")
        params = ModelParams(m=m, s=s)
        tol = _tolerances(cp)
        trace, k1_callable = _build_trace(params, cp)
        expected = expect or cp.get("expect", "verdict", fallback="any")
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        fd = frenet_apparatus(trace)
        profile = contact_angles(trace, tolerance=tol["slant"])
        k1 = fd.curvatures[0] if fd.order >= 2 else np.zeros(trace.n)
        weight = _build_weight(trace.ts, k1, k1_callable, cp)
        report = bih.check_conditions(trace, fd, profile, weight,
                                      eq_tol=tol["eq"])
        dec = None
        if fd.order >= 2 and 1.0 - profile.a > 1e-12:
            dec = phiT_decomposition(trace, fd, profile)
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (synth.SynthesisError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    payload = {
        "tool": "sspaceform",
        "version": __version__,
        "command": "verify",
        "config_hash": _config_hash(cp),
        "seed": cp.getint("curve", "seed", fallback=0),
        "manifold": {"m": params.m, "s": params.s, "c": params.c},
        "curve": {
            "source": cp.get("curve", "source"),
            "n_samples": trace.n,
            "window": [float(trace.ts[0]), float(trace.ts[-1])],
            "unit_speed_deviation": unit_speed_check(trace)["max_deviation"],
            "osculating_order": fd.order,
        },
        "slant": {
            "thetas": profile.thetas.tolist(),
            "a": profile.a,
            "b": profile.b,
            "constancy_deviation": profile.constancy_deviation,
            "is_slant": profile.is_slant,
        },
        "weight": {"variation": weight.variation,
                   "is_constant": weight.is_constant,
                   "c1": weight.c1},
        "report": report.as_dict(),
        "tolerances": tol,
        "expected_verdict": expected,
    }
    text = _canonical_json(payload)
    if report_path:
        with open(report_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if csv_path:
        _write_verify_csv(csv_path, trace, fd, profile, weight, dec, report)
    if expected not in ("any", report.verdict):
        print(f"verdict mismatch: expected {expected!r}, "
              f"got {report.verdict!r}", file=sys.stderr)
        return EXIT_VERDICT_MISMATCH
    return EXIT_OK


def _write_verify_csv(path, trace, fd, profile, weight, dec, report) -> None:
    n = trace.n
    k = [fd.curvatures[i] if fd.order >= i + 2 else np.zeros(n)
         for i in range(3)]
    etas = trace.tangent_frame()[:, 2 * trace.params.m:]
    res = bih.mainprop_residuals(
        trace.params, np.where(k[0] > 0, k[0], np.nan), k[1], k[2],
        dec.p2 if dec else np.zeros(n), dec.p3 if dec else np.zeros(n),
        dec.p4 if dec else np.zeros(n), weight, profile.a, profile.b,
        ts=trace.ts)
    t3 = None
    if trace.depth >= 3:
        t3 = bih.tau3(trace, fd, profile, weight)
    header = (["t", "k1", "k2", "k3"]
              + [f"eta{a+1}_T" for a in range(trace.params.s)]
              + ["g_phiT_V2", "g_phiT_V3", "g_phiT_V4", "beta", "tau3_norm",
                 "eq1", "eq2", "eq3", "eq4", "g_tau3_phiT"])
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for i in range(n):
            row = [trace.ts[i], k[0][i], k[1][i], k[2][i]]
            row += list(etas[i])
            row += [dec.p2[i] if dec else 0.0, dec.p3[i] if dec else 0.0,
                    dec.p4[i] if dec else 0.0,
                    dec.beta[i] if dec else np.nan,
                    t3["norm"][i] if t3 is not None else np.nan,
                    res["eq1"][i], res["eq2"][i], res["eq3"][i],
                    res["eq4"][i], res["gphiT"][i]]
            writer.writerow([_fmt(v) for v in row])


def run_synth(builtin: str, out_path: str, window: str | None, step: float,
              verify: bool, report_path=None) -> int:
    if builtin not in BUILTIN_CURVES:
        print(f"config error: unknown builtin {builtin!r} "
              f"(choose from {BUILTIN_CURVES})", file=sys.stderr)
        return EXIT_CONFIG
    cp = configparser.ConfigParser()
    cp.add_section("manifold")
    cp.set("manifold", "m", "2")
    cp.set("manifold", "s", "2")
    cp.add_section("curve")
    cp.set("curve", "source", f"builtin:{builtin}")
    if window:
        cp.set("curve", "window", window)
    cp.set("curve", "step", repr(step))
    try:
        params = ModelParams(m=2, s=2)
        trace, _ = _build_trace(params, cp)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except synth.SynthesisError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    trace.to_csv(out_path)
    print(f"wrote {trace.n} samples to {out_path}")
    if verify:
        import tempfile
        with tempfile.NamedTemporaryFile("w", suffix=".ini", delete=False) as fh:
            cp.write(fh)
            cfg_path = fh.name
        try:
            return run_verify(cfg_path, report_path=report_path)
        finally:
            os.unlink(cfg_path)
    return EXIT_OK


def run_ode(case: str, c2: float, c3: float, c4: float, lam: float,
            rng: str, out_path=None, tol: float | None = None) -> int:
    try:
        parts = [float(x) for x in rng.split(":")]
        if len(parts) != 3 or parts[1] <= parts[0] or parts[2] <= 0:
            raise ValueError
    except ValueError:
        print(f"config error: --range must be 'lo:hi:step', got {rng!r}",
              file=sys.stderr)
        return EXIT_CONFIG
    lo, hi, h = parts
    eps = {"i": 1, "ii": -1, "iii": 0}.get(case)
    if eps is None:
        print(f"config error: --case must be i, ii or iii", file=sys.stderr)
        return EXIT_CONFIG
    if tol is None:
        tol = _tolerances(None)["ode"]
    try:
        if eps != 0 and lam <= 0:
            print("config error: cases (i)/(ii) need --lambda > 0",
                  file=sys.stderr)
            return EXIT_CONFIG
        spec = odesol.OdeSolutionSpec(epsilon=eps, lam=lam if eps else 0.0,
                                      c2=c2, c3=c3, c4=c4)
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    ts = np.arange(lo, hi + h / 2, h)
    y, ok = odesol.k1_closed_form(spec, ts)
    if spec.case == "iii" and abs(c3) < 1e-14:
        print("numerical failure: case (iii) with c3 = 0 degenerates to "
              "y = 0 (not a positive curvature)", file=sys.stderr)
        return EXIT_NUMERICAL
    residual = np.full_like(ts, np.nan)
    if spec.case == "iii":
        yy, yp, ypp = odesol.case_iii_profile(spec, ts)
        residual[ok] = np.abs(3 * yp[ok] ** 2 - 2 * yy[ok] * ypp[ok]
                              - 4 * yy[ok] ** 2 * ((1 + c2 ** 2) * yy[ok] ** 2))
    elif np.sum(ok) >= 5:
        yg = np.where(ok, y, np.nan)
        ypg = np.gradient(yg, ts)
        yppg = np.gradient(ypg, ts)
        r = np.abs(3 * ypg ** 2 - 2 * yg * yppg
                   - 4 * yg ** 2 * ((1 + c2 ** 2) * yg ** 2 - eps * lam ** 2))
        residual[ok] = r[ok]
    if out_path:
        with open(out_path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["t", "y", "residual", "domain_ok"])
            for i in range(len(ts)):
                writer.writerow([_fmt(ts[i]),
                                 _fmt(y[i]) if ok[i] else "nan",
                                 _fmt(residual[i]) if np.isfinite(residual[i]) else "nan",
                                 int(ok[i])])
        print(f"wrote {len(ts)} samples to {out_path}")
    frac = float(np.mean(ok))
    if frac == 0.0:
        print(f"numerical failure: the literal case ({case}) formula is "
              "nowhere real on the range (its N term is nonpositive for all "
              "real arguments; use the RK4 oracle for this regime)",
              file=sys.stderr)
        return EXIT_NUMERICAL
    finite = np.isfinite(residual)
    max_res = float(np.max(residual[finite])) if np.any(finite) else np.inf
    print(f"real fraction {frac:.3f}, max residual on real subdomain "
          f"{max_res:.3e} (tolerance {tol:g})")
    return EXIT_OK if max_res < tol else EXIT_NUMERICAL


_RANGE_FLAGS = ("--range", "--window")


def _merge_range_flags(argv: list[str]) -> list[str]:
    """Turn ['--range', '-2:2:0.001'] into ['--range=-2:2:0.001'].

    argparse treats a leading '-' as a new option, so negative-endpoint
    ranges would otherwise require the '=' form.
    """
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _RANGE_FLAGS and i + 1 < len(argv) and \
                argv[i + 1].startswith("-") and ":" in argv[i + 1]:
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="sspaceform",
        description="slant-curve and f-biharmonicity toolkit for R^(2m+s)(-3s)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run the verification pipeline")
    p_verify.add_argument("--config", required=True)
    p_verify.add_argument("--report", help="JSON report path (default stdout)")
    p_verify.add_argument("--csv", help="per-sample CSV path")
    p_verify.add_argument("--expect", help="override [expect] verdict")

    p_synth = sub.add_parser("synth", help="synthesize a builtin curve")
    p_synth.add_argument("--builtin", required=True,
                         choices=list(BUILTIN_CURVES))
    p_synth.add_argument("--out", required=True, help="trace CSV path")
    p_synth.add_argument("--window", help="'lo:hi' (default -2:2)")
    p_synth.add_argument("--step", type=float, default=1e-3)
    p_synth.add_argument("--verify", action="store_true",
                         help="run the verify pipeline on the result")
    p_synth.add_argument("--report", help="JSON report path for --verify")

    p_ode = sub.add_parser("ode", help="evaluate a closed-form ODE candidate")
    p_ode.add_argument("--case", required=True, choices=["i", "ii", "iii"])
    p_ode.add_argument("--c2", type=float, default=0.0)
    p_ode.add_argument("--c3", type=float, default=1.0)
    p_ode.add_argument("--c4", type=float, default=0.0)
    p_ode.add_argument("--lambda", dest="lam", type=float, default=0.0)
    p_ode.add_argument("--range", dest="rng", required=True,
                       help="'lo:hi:step'")
    p_ode.add_argument("--out", help="CSV output path")
    p_ode.add_argument("--tol", type=float, help="residual tolerance")

    args = parser.parse_args(_merge_range_flags(
        list(sys.argv[1:] if argv is None else argv)))
    if args.command == "verify":
        return run_verify(args.config, report_path=args.report,
                          csv_path=args.csv, expect=args.expect)
    if args.command == "synth":
        return run_synth(args.builtin, args.out, args.window, args.step,
                         args.verify, report_path=args.report)
    return run_ode(args.case, args.c2, args.c3, args.c4, args.lam, args.rng,
                   out_path=args.out, tol=args.tol)


if __name__ == "__main__":
    sys.exit(main())
