"""Command-line front end: grid scans, boundary tracing, the L2 check and a verification suite."""

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from . import edge, elliptic_data, phase, spectral, wavefield, whitham
from .errors import RogueWaveError
from .phase import ScalingMap
from .settings import DEFAULT

MODES = ("boundary", "lambda", "field", "edge", "l2norm", "whitham-check", "verify")

COLUMNS = {
    "boundary": ("tau", "chi_c", "slope", "xi_re", "xi_im", "flag"),
    "lambda": ("chi", "tau", "lambda", "alpha_re", "alpha_im", "beta_re", "beta_im", "f_residual", "flag"),
    "field": ("chi", "tau", "abs2", "env_lo", "env_hi", "psi_re", "psi_im", "region", "flag"),
    "edge": ("chi", "tau", "n", "psi_re", "psi_im", "abs", "phi_n", "flag"),
    "l2norm": ("tau", "l2", "endpoint_check", "flag"),
    "whitham-check": ("chi", "tau", "residual", "order", "speed_agreement", "flag"),
    "verify": ("check", "passed", "detail"),
}

_VALUE_FLAGS = {"--chi", "--tau", "--M", "--a", "--b", "--kplus", "--out", "--workers", "--tol", "--output"}

EPILOG = "CSV columns by mode:\n" + "\n".join(f"  {m}: {','.join(c)}" for m, c in COLUMNS.items()) + (
    "\n\nRanges are min:max:count (count >= 2) or a single value; rows are ordered by tau, then chi."
    "\nFailed points keep their row with empty numeric fields and a message in `flag`;"
    "\nfield-mode points on or below the boundary curve carry amplitude 0 and flag `quiescent`."
)


@dataclass(frozen=True)
class ScanConfig:
    mode: str
    chi: tuple
    tau: tuple
    M: float
    phase: float
    k_plus: float
    out_format: str
    workers: int
    tol: float


def parse_range(text):
    """Parse ``min:max:count`` or a single number into a tuple of floats."""
    parts = text.split(":")
    if len(parts) == 1:
        v = float(parts[0])
        if not math.isfinite(v):
            raise argparse.ArgumentTypeError(f"non-finite value {text!r}")
        return (v,)
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected min:max:count, got {text!r}")
    lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise argparse.ArgumentTypeError(f"non-finite range {text!r}")
    if n < 2:
        raise argparse.ArgumentTypeError(f"count must be at least 2 in {text!r}")
    return tuple(float(x) for x in np.linspace(lo, hi, n))


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x) + 0.0  # folds -0.0 into 0.0
    return format(x, ".17g") if math.isfinite(x) else ""


def _clean(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    return x


def _error_row(columns, keys, exc):
    row = dict.fromkeys(columns)
    row.update(keys)
    row["flag"] = f"error: {type(exc).__name__}: {exc}".replace("\n", " ")
    return row


# row workers; module level so they can be shipped to worker processes

def _boundary_row(tau):
    try:
        cc = phase.chi_crit(tau)
        xi = phase.critical_point_xi(cc, tau)
        return {"tau": tau, "chi_c": cc, "slope": -2.0 * xi.real, "xi_re": xi.real, "xi_im": xi.imag, "flag": ""}
    except (RogueWaveError, ArithmeticError, ValueError) as exc:
        return _error_row(COLUMNS["boundary"], {"tau": tau}, exc)


def _lambda_row(point, settings):
    tau, chi = point
    try:
        c = spectral.solve_lambda(chi, tau, settings)
        res = spectral.integral_condition_f(c.lam, chi, tau, settings)
        return {"chi": chi, "tau": tau, "lambda": c.lam, "alpha_re": c.alpha.real, "alpha_im": c.alpha.imag,
                "beta_re": c.beta.real, "beta_im": c.beta.imag, "f_residual": res, "flag": ""}
    except (RogueWaveError, ArithmeticError, ValueError) as exc:
        return _error_row(COLUMNS["lambda"], {"chi": chi, "tau": tau}, exc)


def _field_row(point, M, rot, settings):
    tau, chi = point
    try:
        s = wavefield.sample(chi, tau, M, settings)
        psi = s.psi * rot
        return {"chi": chi, "tau": tau, "abs2": s.abs2, "env_lo": s.env_lo, "env_hi": s.env_hi,
                "psi_re": psi.real, "psi_im": psi.imag, "region": s.region.value,
                "flag": "quiescent" if s.quiescent else ""}
    except (RogueWaveError, ArithmeticError, ValueError) as exc:
        return _error_row(COLUMNS["field"], {"chi": chi, "tau": tau}, exc)


def _edge_row(point, M, rot, k_plus):
    tau, chi = point
    try:
        psi = edge.soliton_sum(chi, tau, M, k_plus) * rot
        n = edge.select_n(chi, tau, M)
        return {"chi": chi, "tau": tau, "n": n, "psi_re": psi.real, "psi_im": psi.imag, "abs": abs(psi),
                "phi_n": edge.phi_omega(n, chi, tau, M)[0], "flag": ""}
    except (RogueWaveError, ArithmeticError, ValueError) as exc:
        return _error_row(COLUMNS["edge"], {"chi": chi, "tau": tau}, exc)


def _l2_row(tau, settings):
    try:
        r = wavefield.l2_norm_bulk(tau, settings=settings)
        return {"tau": tau, "l2": r.l2, "endpoint_check": r.endpoint_check, "flag": ""}
    except (RogueWaveError, ArithmeticError, ValueError) as exc:
        return _error_row(COLUMNS["l2norm"], {"tau": tau}, exc)


def _whitham_row(point, h, settings):
    tau, chi = point
    try:
        r1, zc = whitham.whitham_residual(chi, tau, h, settings)
        r2, _ = whitham.whitham_residual(chi, tau, 0.5 * h, settings)
        order = math.log2(np.max(np.abs(r1)) / np.max(np.abs(r2)))
        state, cont = whitham.characteristic_speeds(spectral.solve_lambda(chi, tau, settings), settings)
        agree = float(np.max(np.abs(np.array(state.s) - np.array(cont))))
        return {"chi": chi, "tau": tau, "residual": float(np.max(np.abs(r1))), "order": order,
                "speed_agreement": agree, "flag": ""}
    except (RogueWaveError, ArithmeticError, ValueError) as exc:
        return _error_row(COLUMNS["whitham-check"], {"chi": chi, "tau": tau}, exc)


def _grid(cfg):
    return [(t, c) for t in cfg.tau for c in cfg.chi]


def _map(fun, items, workers):
    if workers <= 1 or len(items) <= 1:
        return [fun(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map preserves input order, so output is independent of scheduling
        return list(pool.map(fun, items, chunksize=max(1, len(items) // (4 * workers))))


def verify_suite(settings=DEFAULT):
    """Compact invariant suite; returns a list of (name, passed, detail)."""
    out = []

    def check(name, fn):
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failure, not an abort
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((name, bool(ok), detail))

    def boundary_anchor():
        d = abs(phase.chi_crit(0.0) - 0.125)
        return d <= 1e-12, f"|chi_c(0) - 1/8| = {d:.2e}"

    def boundary_routes():
        worst = max(abs(a - b) for a, b in (phase.chi_crit_both(t) for t in (0.003, 0.1, 0.5, 1.0, 5.0)))
        return worst <= 1e-8, f"max route gap {worst:.2e}"

    def lambda_residual():
        c = spectral.solve_lambda(1.0, 0.3, settings)
        r = abs(spectral.integral_condition_f(c.lam, 1.0, 0.3, settings))
        return r <= 1e-10, f"|f| = {r:.2e}"

    def delta_identity():
        h = 1e-4
        e0 = elliptic_data.compute(1.0, 0.3, settings)
        dp = elliptic_data.compute(1.0 + h, 0.3, settings).Delta
        dm = elliptic_data.compute(1.0 - h, 0.3, settings).Delta
        v = abs((dp - dm) / (2 * h) * e0.I_p[0].real + 1.0)
        return v <= 1e-4, f"|Delta_chi I0 + 1| = {v:.2e}"

    def landen():
        e = elliptic_data.compute(1.0, 0.3, settings)
        worst = 0.0
        for M in (10.0, 34.5, 200.0):
            a = wavefield.modulus_squared(e, M)
            worst = max(worst, abs(a - wavefield.modulus_squared_m(e, M)), abs(abs(wavefield.psi_breve(e, M)) ** 2 - a))
        return worst <= 1e-8, f"max formula gap {worst:.2e}"

    def speeds():
        state, cont = whitham.characteristic_speeds(spectral.solve_lambda(1.0, 0.5, settings), settings)
        g = float(np.max(np.abs(np.array(state.s) - np.array(cont))))
        return g <= 1e-9, f"speed forms differ by {g:.2e}"

    def residues():
        worst = max(edge.residue_identities(n, 0.2, 0.1, 50.0, check=False).max_defect() for n in (1, 2, 3))
        return worst <= 1e-12, f"max residue defect {worst:.2e}"

    def theta_identities():
        from .specfun import riemann_constant, theta

        H = -2.5
        w = 0.3 + 0.7j
        per = abs(theta(w + 2j * math.pi, H) - theta(w, H))
        quasi = abs(theta(w + H, H) - math.exp(-0.5 * H) * np.exp(-w) * theta(w, H))
        zero = abs(theta(riemann_constant(H), H))
        worst = max(per, quasi, zero)
        return worst <= 1e-12, f"max theta defect {worst:.2e}"

    for name, fn in (("boundary-anchor", boundary_anchor), ("boundary-routes", boundary_routes),
                     ("lambda-residual", lambda_residual), ("delta-chi", delta_identity),
                     ("landen", landen), ("whitham-speeds", speeds), ("residues", residues),
                     ("theta", theta_identities)):
        check(name, fn)
    return out


def run(cfg, stream):
    """Evaluate ``cfg`` and write rows to ``stream``; returns the exit status."""
    settings = DEFAULT.with_(tol=cfg.tol)
    rot = complex(np.exp(-1j * cfg.phase))
    status = 0
    if cfg.mode == "boundary":
        rows = _map(_boundary_row, list(cfg.tau), cfg.workers)
    elif cfg.mode == "lambda":
        rows = _map(partial(_lambda_row, settings=settings), _grid(cfg), cfg.workers)
    elif cfg.mode == "field":
        rows = _map(partial(_field_row, M=cfg.M, rot=rot, settings=settings), _grid(cfg), cfg.workers)
    elif cfg.mode == "edge":
        rows = _map(partial(_edge_row, M=cfg.M, rot=rot, k_plus=cfg.k_plus), _grid(cfg), cfg.workers)
    elif cfg.mode == "l2norm":
        rows = _map(partial(_l2_row, settings=settings), list(cfg.tau), cfg.workers)
        if cfg.out_format == "json" and len(rows) == 1:
            r = rows[0]
            rec = {"l2": _clean(r["l2"]), "endpoint_check": _clean(r["endpoint_check"])}
            if r["flag"]:
                rec["flag"] = r["flag"]
            stream.write(json.dumps(rec) + "\n")
            return 0
    elif cfg.mode == "whitham-check":
        rows = _map(partial(_whitham_row, h=1e-3, settings=settings), _grid(cfg), cfg.workers)
    else:
        results = verify_suite(settings)
        rows = [{"check": n, "passed": ok, "detail": d} for n, ok, d in results]
        status = 0 if all(ok for _, ok, _ in results) else 1
    write_rows(stream, COLUMNS[cfg.mode], rows, cfg.out_format)
    return status


def write_rows(stream, columns, rows, fmt):
    if fmt == "json":
        recs = [{c: _clean(float(r[c])) if isinstance(r.get(c), (float, np.floating)) else r.get(c)
                 for c in columns} for r in rows]
        stream.write(json.dumps(recs, indent=None) + "\n")
        return
    stream.write(",".join(columns) + "\n")
    for r in rows:
        stream.write(",".join(_csv_cell(_fmt(r.get(c))) for c in columns) + "\n")


def _csv_cell(text):
    if any(ch in text for ch in ',"\n'):
        return '"' + text.replace('"', '""') + '"'
    return text


def build_parser():
    p = argparse.ArgumentParser(
        prog="rogue-infinite",
        description="Large-M asymptotics of infinite-order rogue waves: boundary curve, spectral data, "
                    "bulk wavefield, edge solitons and consistency checks.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("mode", choices=MODES)
    p.add_argument("--chi", type=parse_range, default=None, help="chi grid, min:max:count or a value")
    p.add_argument("--tau", type=parse_range, default=None, help="tau grid, min:max:count or a value")
    p.add_argument("--M", type=float, default=None, help="large parameter M > 1")
    p.add_argument("--a", type=complex, default=None, help="parameter a (with --b, defines M and the phase)")
    p.add_argument("--b", type=complex, default=None, help="parameter b")
    p.add_argument("--kplus", type=float, default=3.0, help="soliton cap K+ (default 3)")
    p.add_argument("--out", choices=("csv", "json"), default=None, help="output format (csv; json for l2norm)")
    p.add_argument("--workers", type=int, default=1, help="worker processes (output does not depend on it)")
    p.add_argument("--tol", type=float, default=DEFAULT.tol, help="base tolerance")
    p.add_argument("--output", default=None, help="write to this path instead of standard output")
    return p


def _join_values(argv):
    # lets `--tau -2:2:401` through: argparse would read the value as a flag
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def config_from_args(args, parser):
    mode = args.mode
    M, ph = args.M, 0.0
    if (args.a is None) != (args.b is None):
        parser.error("--a and --b must be given together")
    if args.a is not None:
        if M is not None:
            parser.error("give either --M or --a/--b, not both")
        try:
            sm = ScalingMap.from_ab(args.a, args.b)
        except ValueError as exc:
            parser.error(str(exc))
        M, ph = sm.M, sm.a_phase
    if mode in ("field", "edge") and (M is None or not M > 1):
        parser.error(f"{mode} mode needs M > 1 (via --M or --a/--b)")
    if M is not None and not math.isfinite(M):
        parser.error("M must be finite")
    needs_chi = mode in ("lambda", "field", "edge", "whitham-check")
    needs_tau = mode != "verify"
    if needs_chi and args.chi is None:
        parser.error(f"{mode} mode needs --chi")
    if needs_tau and args.tau is None:
        parser.error(f"{mode} mode needs --tau")
    if args.workers < 1:
        parser.error("--workers must be at least 1")
    if not (0 < args.tol < 1):
        parser.error("--tol must lie in (0, 1)")
    fmt = args.out or ("json" if mode == "l2norm" else "csv")
    return ScanConfig(mode, args.chi or (), args.tau or (), float(M) if M is not None else 0.0, ph,
                      args.kplus, fmt, args.workers, args.tol)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(_join_values(sys.argv[1:] if argv is None else list(argv)))
    cfg = config_from_args(args, parser)
    if args.output:
        with open(args.output, "w", newline="") as fh:
            return run(cfg, fh)
    return run(cfg, sys.stdout)
