"""Batch front-end: parameter sweeps, spectrum tables, plot-ready data files.

Commands
--------
classify    turning-point classification rows (random sweep or single point)
spectrum    energy tables; methods exact | wkb | shooting | resonance | complex-heun
tunnel      barrier penetration versus curvature radius
heun-eval   samples of the local Heun solution and the radial function
dirac-chart singularity chart of the spin-1/2 system, optional integration dump

Common flags: --geometry {ds,ads,flat}, --out FILE, --format {csv,json},
--config FILE, --seed N, --jobs N.  Exit codes: 0 success, 1 any row
failed, 2 configuration error.

Energies in spectrum tables are dimensionless (E = eps * rho); masses on
the command line are physical (M_dimensionless = m * rho).  A fixed seed
makes every byte of the output reproducible; sweep rows never abort the
sweep, they carry a per-row error column instead.  Row order follows
input order regardless of the worker pool.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import heun, spectral, wkb
from .classical import classify_turning_points
from .errors import DomainError
from .params import Geometry, make_classical, make_params

SCHEMA_VERSION = 1


class ConfigError(Exception):
    pass


# ---------------------------------------------------------------------------
# formatting
# ---------------------------------------------------------------------------

def fmt(value) -> str:
    """17 significant digits, scientific, locale-independent; '' for None."""
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    v = float(value)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.16e}"


def write_table(stream, columns, rows, fmt_name, command):
    if fmt_name == "csv":
        stream.write(",".join(columns) + "\n")
        for row in rows:
            stream.write(",".join(fmt(row.get(c)) for c in columns) + "\n")
    else:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "columns": list(columns),
            "rows": [{c: (row.get(c) if not isinstance(row.get(c), np.generic)
                          else row.get(c).item()) for c in columns} for row in rows],
        }
        stream.write(json.dumps(doc, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# config file: flat key = value with [command] overrides, command line wins
# ---------------------------------------------------------------------------

def load_config(path):
    base: dict[str, str] = {}
    sections: dict[str, dict[str, str]] = {}
    current = base
    try:
        text = open(path, "r", encoding="utf-8").read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            sections.setdefault(name, {})
            current = sections[name]
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        current[key.strip().replace("-", "_")] = value.strip()
    return base, sections


def merge_config(args: argparse.Namespace, command: str) -> None:
    """Fill argparse Nones from the config file (section wins over base)."""
    if getattr(args, "config", None) is None:
        return
    base, sections = load_config(args.config)
    merged = dict(base)
    merged.update(sections.get(command, {}))
    for key, value in merged.items():
        if getattr(args, key, None) is None and hasattr(args, key):
            setattr(args, key, value)


def _need(args, names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise ConfigError(f"missing required option(s): {', '.join('--' + m.replace('_', '-') for m in missing)}")


def _f(args, name, default=None):
    v = getattr(args, name, None)
    if v is None:
        return default
    try:
        return float(v)
    except (TypeError, ValueError):
        raise ConfigError(f"--{name.replace('_','-')} expects a number, got {v!r}")


def _i(args, name, default=None):
    v = getattr(args, name, None)
    if v is None:
        return default
    try:
        return int(v)
    except (TypeError, ValueError):
        raise ConfigError(f"--{name.replace('_','-')} expects an integer, got {v!r}")


def parse_range(text, kind=float):
    """'lo:hi' -> (lo, hi); a bare number -> (v, v)."""
    if text is None:
        return None
    parts = str(text).split(":")
    if len(parts) == 1:
        v = kind(parts[0])
        return (v, v)
    if len(parts) == 2:
        return (kind(parts[0]), kind(parts[1]))
    raise ConfigError(f"expected 'lo:hi', got {text!r}")


def parse_list(text, kind=float):
    if text is None:
        return None
    return [kind(tok) for tok in str(text).split(",") if tok.strip() != ""]


def int_range_list(text):
    """'0:3' -> [0,1,2,3]; '0,2,5' -> [0,2,5]; '4' -> [4]."""
    if text is None:
        return None
    s = str(text)
    if ":" in s:
        lo, hi = (int(p) for p in s.split(":"))
        return list(range(lo, hi + 1))
    return [int(tok) for tok in s.split(",")]


# ---------------------------------------------------------------------------
# row computations (module level: picklable for the worker pool)
# ---------------------------------------------------------------------------

def _classify_row(task: dict) -> dict:
    row = dict(task)
    try:
        cp = make_classical(task["geometry"], task["eps"], task["L"],
                            task["e2"], task["m"], task["rho"])
        qr, well = classify_turning_points(cp)
        for k, z in enumerate(qr.roots):
            row[f"root{k+1}_re"] = z.real
            row[f"root{k+1}_im"] = z.imag
        row["pattern"] = qr.sign_pattern
        row["topology"] = qr.topology.value
        if well is not None:
            row["r1"], row["r2"], row["r3"] = well.r1, well.r2, well.r3
        row["error"] = ""
    except Exception as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def _spectrum_row(task: dict) -> dict:
    row = {k: task[k] for k in ("n", "l", "method")}
    method = task["method"]
    geometry = task["geometry"]
    m, rho, alpha = task["m"], task["rho"], task["alpha"]
    n, l = task["n"], task["l"]
    Mdimless = m * rho
    try:
        if method == "exact":
            if geometry != "ads" or alpha != 0.0:
                raise DomainError("exact spectrum needs anti-de Sitter with alpha = 0")
            row["energy_re"] = heun.ads_free_spectrum(n, l, Mdimless)
            row["energy_im"] = 0.0
            row["residual"] = 0.0
        elif method == "wkb":
            cp = make_classical(geometry, 0.0, l + 0.5, alpha, m, rho)
            lvl = (wkb.wkb_energy_ds if geometry == "ds" else wkb.wkb_energy_ads)(n, l, cp)
            row["energy_re"] = lvl.eps * rho
            row["energy_im"] = 0.0
            row["residual"] = abs(lvl.Delta_corr) / rho ** 2
        elif method == "shooting":
            if geometry != "ads":
                raise DomainError("shooting bound states are an anti-de Sitter method")
            tmpl = make_params("ads", E=0.0, alpha=alpha, M=Mdimless, l=l, rho=rho)
            if alpha == 0.0:
                center = heun.ads_free_spectrum(n, l, Mdimless)
                halfwidth = 0.9
            else:
                lvl = wkb.wkb_energy_ads(n, l, make_classical("ads", 0.0, l + 0.5, alpha, m, rho))
                center = lvl.eps * rho
                spacing = (wkb.wkb_eps0(n + 1, l, alpha, m) - wkb.wkb_eps0(n, l, alpha, m)) * rho
                halfwidth = 0.6 * abs(lvl.eps - lvl.eps0) * rho + 2.0 * spacing
            entry = spectral.ads_level_by_nodes(tmpl, n, l, center, halfwidth)
            row["energy_re"] = entry.energy.real
            row["energy_im"] = entry.energy.imag
            row["residual"] = entry.residual
        elif method == "complex-heun":
            if geometry != "ds":
                raise DomainError("complex levels are a de Sitter method")
            p = make_params("ds", E=0.0, alpha=alpha, M=Mdimless, l=l, rho=rho)
            E = heun.ds_complex_levels(n, l, p, task.get("branch", "--"))
            row["energy_re"], row["energy_im"] = E.real, E.imag
            row["residual"] = 0.0
        elif method == "resonance":
            if geometry != "ds":
                raise DomainError("the resonance scan is a de Sitter method")
            lvl = wkb.wkb_energy_ds(n, l, make_classical("ds", 0.0, l + 0.5, alpha, m, rho))
            spacing = wkb.wkb_eps0(n + 1, l, alpha, m) - wkb.wkb_eps0(n, l, alpha, m)
            tmpl = make_params("ds", E=lvl.eps * rho, alpha=alpha, M=Mdimless, l=l, rho=rho)
            grid = np.linspace(lvl.eps - 1.5 * spacing, lvl.eps + 1.5 * spacing, 21)
            entries = [e for e in spectral.ds_resonance_scan(tmpl, grid)
                       if e.node_count == n]
            if not entries:
                raise DomainError("no resonance peak with the requested node count")
            best = min(entries, key=lambda e: abs(e.energy.real - lvl.eps))
            row["energy_re"] = best.energy.real * rho
            row["energy_im"] = best.energy.imag * rho
            row["residual"] = best.residual * rho
        else:
            raise ConfigError(f"unknown method {method!r}")
        row["error"] = ""
    except Exception as exc:
        row.setdefault("energy_re", None)
        row.setdefault("energy_im", None)
        row.setdefault("residual", None)
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def _tunnel_row(task: dict) -> dict:
    row = {"rho": task["rho"]}
    try:
        m, e2, n, l, rho = task["m"], task["e2"], task["n"], task["l"], task["rho"]
        lvl = wkb.wkb_energy_ds(n, l, make_classical("ds", 0.0, l + 0.5, e2, m, rho))
        row["eps"] = lvl.eps
        cp = make_classical("ds", lvl.eps, l + 0.5, e2, m, rho)
        qr, well = classify_turning_points(cp)
        if well is None:
            raise DomainError(
                f"no barrier-well topology at these parameters (pattern {qr.sign_pattern!r})"
            )
        W, integral = wkb.tunneling_probability(cp, well)
        row["W"] = W
        row["lnW"] = -2.0 * integral
        row["rough_lnW"] = -2.0 * rho * m
        row["ratio"] = (-2.0 * integral) / (-2.0 * rho * m)
        row["error"] = ""
    except Exception as exc:
        for c in ("eps", "W", "lnW", "rough_lnW", "ratio"):
            row.setdefault(c, None)
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


_MIRROR = {"++": "--", "--": "++", "+-": "-+", "-+": "+-"}


def _heun_ode_residual(hp, x: complex, h: float = 1e-3) -> float:
    ev = lambda z: heun.heun_local_series(hp, z, tol=1e-14)[0]
    H = ev(x)
    Hm2, Hm1, Hp1, Hp2 = ev(x - 2 * h), ev(x - h), ev(x + h), ev(x + 2 * h)
    d1 = (Hm2 - 8 * Hm1 + 8 * Hp1 - Hp2) / (12 * h)
    d2 = (-Hm2 + 16 * Hm1 - 30 * H + 16 * Hp1 - Hp2) / (12 * h * h)
    P = hp.gamma / x + hp.delta / (x - 1) + hp.eps / (x + 1)
    Q = (hp.lam * hp.beta * x - hp.q) / (x * (x - 1) * (x + 1))
    num = abs(d2 + P * d1 + Q * H)
    den = abs(d2) + abs(P * d1) + abs(Q * H) + 1e-300
    return num / den


def _heun_row(task: dict) -> dict:
    x = complex(task["x_re"], task["x_im"])
    row = {"x_re": x.real, "x_im": x.imag}
    try:
        p = make_params(task["geometry"], E=task["E"], alpha=task["alpha"],
                        M=task["m"] * task["rho"], l=task["l"], rho=task["rho"])
        mapper = heun.map_heun_ds if task["geometry"] == "ds" else heun.map_heun_ads
        hp = mapper(p, task["branch"])
        H, dH = heun.heun_local_series(hp, x, tol=1e-13)
        f = heun.radial_from_heun(hp, x)
        row.update(H_re=H.real, H_im=H.imag, dH_re=dH.real, dH_im=dH.imag,
                   f_re=f.real, f_im=f.imag)
        row["residual"] = _heun_ode_residual(hp, x)
        hp_m = mapper(p, _MIRROR[task["branch"]])
        H_m, _ = heun.heun_local_series(hp_m, x.conjugate(), tol=1e-13)
        row["conj_defect"] = abs(H - H_m.conjugate())
        row["error"] = ""
    except Exception as exc:
        for c in ("H_re", "H_im", "dH_re", "dH_im", "f_re", "f_im",
                  "residual", "conj_defect"):
            row.setdefault(c, None)
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


# ---------------------------------------------------------------------------
# command drivers
# ---------------------------------------------------------------------------

def _run_rows(tasks, worker, jobs):
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(worker, tasks))
    return [worker(t) for t in tasks]


def cmd_classify(args) -> tuple[list[str], list[dict]]:
    geometry = args.geometry or "ds"
    rho = _f(args, "rho", 1.0)
    m = _f(args, "m", 1.0)
    n_samples = _i(args, "n_samples")
    tasks = []
    if n_samples:
        seed = _i(args, "seed", 0)
        rng = np.random.default_rng(seed)
        eps_lo, eps_hi = parse_range(getattr(args, "eps_range", None) or "0.3:1.8")
        e2_lo, e2_hi = parse_range(getattr(args, "e2_range", None) or "0.01:0.45")
        L_lo, L_hi = parse_range(getattr(args, "L_range", None) or "0.6:3.0")
        for idx in range(n_samples):
            e2 = rng.uniform(e2_lo, e2_hi)
            L = rng.uniform(max(L_lo, math.sqrt(e2 * e2) * 1.01), L_hi)
            u = rng.uniform(eps_lo, eps_hi)
            tasks.append(dict(idx=idx, geometry=geometry, eps=u * m, L=L,
                              e2=e2, m=m, rho=rho))
    else:
        _need(args, ["eps", "L", "e2"])
        tasks.append(dict(idx=0, geometry=geometry, eps=_f(args, "eps"),
                          L=_f(args, "L"), e2=_f(args, "e2"), m=m, rho=rho))
    rows = _run_rows(tasks, _classify_row, _i(args, "jobs", 1))
    columns = (["idx", "geometry", "eps", "L", "e2", "m", "rho"]
               + [f"root{k}_{p}" for k in (1, 2, 3, 4) for p in ("re", "im")]
               + ["pattern", "topology", "r1", "r2", "r3", "error"])
    return columns, rows


def cmd_spectrum(args) -> tuple[list[str], list[dict]]:
    geometry = args.geometry or "ads"
    methods = [tok.strip() for tok in (args.methods or "exact").split(",")]
    ns = int_range_list(getattr(args, "n", None) or "0:3")
    ls = int_range_list(getattr(args, "l", None) or "0")
    alpha = _f(args, "alpha", 0.0)
    m = _f(args, "m", 1.0)
    rho = _f(args, "rho", 1.0)
    tasks = [dict(geometry=geometry, method=method, n=n, l=l, alpha=alpha,
                  m=m, rho=rho, branch=getattr(args, "branch", None) or "--")
             for method in methods for l in ls for n in ns]
    rows = _run_rows(tasks, _spectrum_row, _i(args, "jobs", 1))
    return ["n", "l", "method", "energy_re", "energy_im", "residual", "error"], rows


def cmd_tunnel(args) -> tuple[list[str], list[dict]]:
    _need(args, ["e2"])
    rhos = parse_list(getattr(args, "rho_list", None) or "1e2,3e2,1e3")
    tasks = [dict(rho=rho, m=_f(args, "m", 1.0), e2=_f(args, "e2"),
                  n=_i(args, "n", 0), l=_i(args, "l", 0)) for rho in rhos]
    rows = _run_rows(tasks, _tunnel_row, _i(args, "jobs", 1))
    return ["rho", "eps", "W", "lnW", "rough_lnW", "ratio", "error"], rows


def cmd_heun_eval(args) -> tuple[list[str], list[dict]]:
    geometry = args.geometry or "ds"
    _need(args, ["e"])
    branch = getattr(args, "branch", None) or "++"
    xs = parse_list(getattr(args, "x_list", None) or "0.1,0.2,0.3")
    tasks = []
    for x in xs:
        x_re, x_im = (0.0, x) if geometry == "ads" else (x, 0.0)
        tasks.append(dict(geometry=geometry, branch=branch, E=_f(args, "e"),
                          alpha=_f(args, "alpha", 0.0), m=_f(args, "m", 1.0),
                          rho=_f(args, "rho", 1.0), l=_i(args, "l", 0),
                          x_re=x_re, x_im=x_im))
    rows = _run_rows(tasks, _heun_row, _i(args, "jobs", 1))
    return ["x_re", "x_im", "H_re", "H_im", "dH_re", "dH_im",
            "f_re", "f_im", "residual", "conj_defect", "error"], rows


def cmd_dirac_chart(args, stream) -> int:
    from .dirac import DiracParams, build_system_ads, build_system_ds, integrate_dirac, singularity_chart

    geometry = args.geometry or "ds"
    _need(args, ["eps", "e2", "nu"])
    dp = DiracParams(epsilon=_f(args, "eps"), e2=_f(args, "e2"),
                     M=_f(args, "m", 1.0), nu=_f(args, "nu"),
                     delta_parity=_i(args, "delta", 1),
                     geometry=Geometry.parse(geometry))
    system = (build_system_ds if geometry == "ds" else build_system_ads)(dp)
    import warnings as _warnings
    with _warnings.catch_warnings(record=True) as caught:
        _warnings.simplefilter("always")
        chart = singularity_chart(system)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "dirac-chart",
        "geometry": geometry,
        "params": {"eps": dp.epsilon, "e2": dp.e2, "m": dp.M, "nu": dp.nu,
                   "delta": dp.delta_parity},
        "points": [{"re": None, "im": None, "infinite": True}
                   if not math.isfinite(z.real)
                   else {"re": z.real, "im": z.imag, "infinite": False}
                   for z in chart.points],
        "collisions": [list(pair) for pair in chart.collisions],
        "warnings": [str(w.message) for w in caught],
    }
    if getattr(args, "integrate", False) or getattr(args, "y_from", None) is not None:
        y0 = _f(args, "y_from", 0.1)
        y1 = _f(args, "y_to", 0.8)
        ys, F, G = integrate_dirac(system, [y0, y1], (1.0, 0.0))
        doc["integration"] = {
            "y_re": [z.real for z in ys], "y_im": [z.imag for z in ys],
            "F_re": [z.real for z in F], "F_im": [z.imag for z in F],
            "G_re": [z.real for z in G], "G_im": [z.imag for z in G],
        }
    if (args.format or "json") == "csv":
        stream.write("point_index,re,im,infinite\n")
        for k, pt in enumerate(doc["points"]):
            stream.write(f"{k},{fmt(pt['re'])},{fmt(pt['im'])},{int(pt['infinite'])}\n")
    else:
        stream.write(json.dumps(doc, sort_keys=True) + "\n")
    return 0


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dshydrogen",
        description="Coulomb systems in de Sitter / anti-de Sitter static space-times",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--geometry", choices=["ds", "ads", "flat"])
        p.add_argument("--out", help="output file (default stdout)")
        p.add_argument("--format", choices=["csv", "json"])
        p.add_argument("--config", help="flat key=value config file with [command] sections")
        p.add_argument("--seed", help="seed for randomized sweeps")
        p.add_argument("--jobs", help="worker processes (default 1)")

    p = sub.add_parser("classify", help="turning-point classification sweep")
    common(p)
    p.add_argument("--n-samples", dest="n_samples")
    p.add_argument("--eps-range", dest="eps_range", help="lo:hi in units of m")
    p.add_argument("--e2-range", dest="e2_range")
    p.add_argument("--L-range", dest="L_range")
    p.add_argument("--eps")
    p.add_argument("--L")
    p.add_argument("--e2")
    p.add_argument("--m")
    p.add_argument("--rho")

    p = sub.add_parser("spectrum", help="energy tables (dimensionless E = eps*rho)")
    common(p)
    p.add_argument("--methods", help="comma list: exact,wkb,shooting,resonance,complex-heun")
    p.add_argument("--n", help="'0:3' or '0,2'")
    p.add_argument("--l", help="'0:2' or '1'")
    p.add_argument("--alpha")
    p.add_argument("--m", help="physical mass (dimensionless is m*rho)")
    p.add_argument("--rho")
    p.add_argument("--branch", choices=["++", "--", "+-", "-+"])

    p = sub.add_parser("tunnel", help="barrier penetration vs curvature radius")
    common(p)
    p.add_argument("--m")
    p.add_argument("--e2")
    p.add_argument("--n")
    p.add_argument("--l")
    p.add_argument("--rho-list", dest="rho_list")

    p = sub.add_parser("heun-eval", help="local Heun solution samples")
    common(p)
    p.add_argument("--e", help="dimensionless energy E")
    p.add_argument("--alpha")
    p.add_argument("--m")
    p.add_argument("--rho")
    p.add_argument("--l")
    p.add_argument("--branch", choices=["++", "--", "+-", "-+"])
    p.add_argument("--x-list", dest="x_list",
                   help="abscissas; de Sitter: real x, anti-de Sitter: r/rho (maps to x = i r/rho)")

    p = sub.add_parser("dirac-chart", help="spin-1/2 singularity chart (+ integration)")
    common(p)
    p.add_argument("--eps")
    p.add_argument("--e2")
    p.add_argument("--m")
    p.add_argument("--nu")
    p.add_argument("--delta")
    p.add_argument("--integrate", action="store_true")
    p.add_argument("--y-from", dest="y_from")
    p.add_argument("--y-to", dest="y_to")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        merge_config(args, args.command)
        out = open(args.out, "w", encoding="utf-8", newline="") if args.out else sys.stdout
        try:
            if args.command == "dirac-chart":
                code = cmd_dirac_chart(args, out)
                return code
            if args.command == "classify":
                columns, rows = cmd_classify(args)
            elif args.command == "spectrum":
                columns, rows = cmd_spectrum(args)
            elif args.command == "tunnel":
                columns, rows = cmd_tunnel(args)
            elif args.command == "heun-eval":
                columns, rows = cmd_heun_eval(args)
            else:  # pragma: no cover
                raise ConfigError(f"unknown command {args.command!r}")
            write_table(out, columns, rows, args.format or "csv", args.command)
            return 1 if any(r.get("error") for r in rows) else 0
        finally:
            if args.out:
                out.close()
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
