"""Command-line surface: spectra, table reproduction, wavefunction profiles,
oracle verification and parameter scans.

Exit codes: 0 success, 1 computation/verification failure, 2 usage error.
All floating-point output uses a fixed 7-significant-digit format (CSV/text)
or shortest-roundtrip JSON, so identical flags produce byte-identical output.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from . import hulthen, refdata, shooting
from .errors import KgsolveError, NoSignChange
from .hulthen import ModelParams, QuantumNumbers
from .nu import quantization_residual
from .shooting import ShootingConfig

DASH = "—"  # the dash glyph used for absent entries in text output


def _fmt(x: Optional[float]) -> str:
    if x is None:
        return ""
    return f"{x:.7g}"


def _workers() -> int:
    env = os.environ.get("KGSOLVE_THREADS", "").strip()
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            return 1
    return min(4, os.cpu_count() or 1)


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _echo_config(p: ModelParams, extra: str = "") -> str:
    core = f"m0={_fmt(p.m0)} m1={_fmt(p.m1)} V0={_fmt(p.V0)} S0={_fmt(p.S0)} r0={_fmt(p.r0)}"
    return core + (" " + extra if extra else "")


# ---------------------------------------------------------------------------
# argument plumbing: config file < flags, with hard defaults at the end
# ---------------------------------------------------------------------------

_MODEL_DEFAULTS = {"m0": 1.0, "m1": 0.0, "V0": 1.0, "S0": 1.0, "r0": 1.0}


def _load_config_file(path: str) -> dict:
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
            key, val = line.split("=", 1)
            values[key.strip().replace("-", "_")] = val.strip()
    return values


def _resolve(args, key: str, cast, hard_default):
    """Flag value if given, else config-file value, else the hard default."""
    cli_val = getattr(args, key, None)
    if cli_val is not None:
        return cli_val
    cfg = getattr(args, "_config_values", {})
    if key in cfg:
        return cast(cfg[key])
    return hard_default


def _model_from(args) -> ModelParams:
    return ModelParams(
        m0=_resolve(args, "m0", float, _MODEL_DEFAULTS["m0"]),
        m1=_resolve(args, "m1", float, _MODEL_DEFAULTS["m1"]),
        V0=_resolve(args, "V0", float, _MODEL_DEFAULTS["V0"]),
        S0=_resolve(args, "S0", float, _MODEL_DEFAULTS["S0"]),
        r0=_resolve(args, "r0", float, _MODEL_DEFAULTS["r0"]),
    )


def _add_model_flags(sub):
    sub.add_argument("--m0", type=float, default=None, help="asymptotic mass (default 1)")
    sub.add_argument("--m1", type=float, default=None,
                     help="mass-deformation strength (default 0, constant mass)")
    sub.add_argument("--V0", type=float, default=None, help="vector coupling (default 1)")
    sub.add_argument("--S0", type=float, default=None, help="scalar coupling (default 1)")
    sub.add_argument("--r0", type=float, default=None, help="screening radius (default 1)")
    sub.add_argument("--config", type=str, default=None,
                     help="key=value file supplying any flag; flags override it")
    sub.add_argument("--output", type=str, default=None, help="write output to this path")


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------

def cmd_spectrum(args) -> int:
    p = _model_from(args)
    n_max = _resolve(args, "n_max", int, 2)
    l_max = _resolve(args, "l_max", int, 2)
    fmt = _resolve(args, "format", str, "text")
    rows = []
    for n in range(n_max + 1):
        for l in range(l_max + 1):
            qn = QuantumNumbers(n, l)
            dp = hulthen.delta_prime(p, l)
            pair = hulthen.energy_levels(p, qn)
            rows.append((n, l, dp, pair))

    if fmt == "json":
        payload = []
        for n, l, dp, pair in rows:
            payload.append({
                "n": n,
                "l": l,
                "e_a": None if pair is None else pair.e_a,
                "e_p": None if pair is None else pair.e_p,
                "valid_a": None if pair is None else pair.valid_a,
                "valid_p": None if pair is None else pair.valid_p,
                "delta_prime": dp,
                "discriminant": None if pair is None else pair.discriminant,
            })
        _emit(json.dumps(payload, indent=2) + "\n", args.output)
        return 0

    buf = io.StringIO()
    if fmt == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "l", "e_a", "e_p", "valid_a", "valid_p",
                    "delta_prime", "discriminant"])
        for n, l, dp, pair in rows:
            if pair is None:
                w.writerow([n, l, "", "", "", "", _fmt(dp), ""])
            else:
                w.writerow([n, l, _fmt(pair.e_a), _fmt(pair.e_p),
                            int(pair.valid_a), int(pair.valid_p),
                            _fmt(dp), _fmt(pair.discriminant)])
    else:
        buf.write(f"# {_echo_config(p)}\n")
        buf.write(f"{'n':>3} {'l':>3} {'E_a':>12} {'E_p':>12} {'valid':>7} {'d_prime':>10}\n")
        for n, l, dp, pair in rows:
            if pair is None:
                buf.write(f"{n:>3} {l:>3} {DASH:>12} {DASH:>12} {'':>7} {_fmt(dp):>10}\n")
            else:
                v = f"{int(pair.valid_a)},{int(pair.valid_p)}"
                buf.write(f"{n:>3} {l:>3} {_fmt(pair.e_a):>12} {_fmt(pair.e_p):>12} "
                          f"{v:>7} {_fmt(dp):>10}\n")
    _emit(buf.getvalue(), args.output)
    return 0


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------

def cmd_table(args) -> int:
    table_id = args.id
    tol = _resolve(args, "tol", float, 1e-6 if table_id == "I" else 1e-5)
    source = _resolve(args, "source", str, "ours")
    fmt = _resolve(args, "format", str, "text")
    rows = [r for r in refdata.load_table(table_id) if r.source == source]
    if not rows:
        print(f"error: no rows with source {source!r} in table {table_id}", file=sys.stderr)
        return 2

    records = []
    for row in rows:
        pair = hulthen.energy_levels(row.params, row.qn)
        records.append(refdata.compare(pair, row, tol, params=row.params, qn=row.qn))

    n_pass = sum(r.passed for r in records)
    n_typo = sum(r.typo_flagged for r in records)
    hard_fail = [r for r in records if not r.passed and not r.typo_flagged]

    buf = io.StringIO()
    if fmt == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["m0", "m1", "V0", "S0", "n", "l", "e_a_ref", "e_p_ref",
                    "e_a_diff", "e_p_diff", "status", "note"])
        for r in records:
            status = "pass" if r.passed else ("typo-flagged" if r.typo_flagged else "FAIL")
            w.writerow([_fmt(r.row.m0), _fmt(r.row.m1), _fmt(r.row.V0), _fmt(r.row.S0),
                        r.row.n, r.row.l, _fmt(r.row.e_a), _fmt(r.row.e_p),
                        _fmt(r.e_a_diff), _fmt(r.e_p_diff), status, r.note])
    else:
        buf.write(f"table {table_id}, source {source}, tolerance {_fmt(tol)}\n")
        for r in records:
            cfg = (f"m1={_fmt(r.row.m1)} V0={_fmt(r.row.V0)} S0={_fmt(r.row.S0)} "
                   f"n={r.row.n} l={r.row.l}")
            if r.row.absent:
                status = "pass (both absent)" if r.passed else "FAIL (absence mismatch)"
                buf.write(f"  {cfg:<42} {DASH:>11} {DASH:>11}  {status}\n")
            else:
                status = "pass" if r.passed else ("typo-flagged" if r.typo_flagged else "FAIL")
                buf.write(f"  {cfg:<42} {_fmt(r.e_a_diff):>11} {_fmt(r.e_p_diff):>11}  {status}")
                if r.note:
                    buf.write(f"  [{r.note}]")
                buf.write("\n")
        buf.write(f"summary: {n_pass}/{len(records)} pass, {n_typo} typo-flagged, "
                  f"{len(hard_fail)} unexpected failures\n")
        if n_typo:
            for r in records:
                if r.typo_flagged:
                    pair = hulthen.energy_levels(r.row.params, r.row.qn)
                    buf.write(f"  flagged: n={r.row.n} l={r.row.l} V0={_fmt(r.row.V0)} "
                              f"S0={_fmt(r.row.S0)}: recomputed "
                              f"({_fmt(pair.e_a)}, {_fmt(pair.e_p)}); {r.note}\n")
    _emit(buf.getvalue(), args.output)
    return 0 if not hard_fail else 1


# ---------------------------------------------------------------------------
# wavefunction
# ---------------------------------------------------------------------------

def cmd_wavefunction(args) -> int:
    p = _model_from(args)
    n = _resolve(args, "n", int, 1)
    l = _resolve(args, "l", int, 0)
    root = _resolve(args, "root", str, "p")
    r_max = _resolve(args, "r_max", float, 25.0 * p.r0)
    points = _resolve(args, "points", int, 2000)
    grid_kind = _resolve(args, "grid", str, "uniform")
    qn = QuantumNumbers(n, l)
    try:
        state = hulthen.bound_state(p, qn, root)
    except KgsolveError as exc:
        print(f"error: {exc} [{_echo_config(p, f'n={n} l={l} root={root}')}]",
              file=sys.stderr)
        return 1

    if grid_kind == "log":
        r = np.geomspace(r_max / points * 1e-3, r_max, points)
    else:
        r = np.linspace(r_max / points, r_max, points)
    phi = hulthen.wavefunction(state, r)
    mass = hulthen.mass_at(r, p)
    vs, vv = hulthen.potentials_at(r, p)

    buf = io.StringIO()
    buf.write(f"# {_echo_config(p, f'n={n} l={l} root={root}')}\n")
    buf.write(f"# E={_fmt(state.energy)} alpha={_fmt(state.coeffs.alpha)} "
              f"delta_prime={_fmt(state.coeffs.delta_prime)}\n")
    buf.write(f"# A_quadrature={_fmt(state.norm_quad)} A_closed_form={_fmt(state.norm_closed)}\n")
    if n == 0:
        buf.write("# note: n=0 states are computed but not tabulated in the bundled reference tables\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["r", "phi", "density", "mass", "V_v", "V_s"])
    for i in range(points):
        w.writerow([_fmt(float(r[i])), _fmt(float(phi[i])), _fmt(float(phi[i] ** 2)),
                    _fmt(float(mass[i])), _fmt(float(vv[i])), _fmt(float(vs[i]))])
    _emit(buf.getvalue(), args.output)
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

@dataclass
class _VerifyRow:
    label: str
    n: int
    l: int
    root: str
    e_closed: float
    e_shoot: Optional[float]
    de: Optional[float]
    res_derived: float
    res_shifted: float
    eq_residual: float
    norm_defect: float
    ratio_closed_quad: float
    res_perturbed: Optional[float]
    exact_mode_e: Optional[float]
    error: Optional[str]

    def passed(self, oracle_tol: float) -> bool:
        if self.error is not None:
            return False
        return (
            self.de is not None
            and abs(self.de) <= oracle_tol
            and self.res_derived < 1e-8
            and self.norm_defect <= 1e-8
        )


def _norm_roundtrip_defect(state) -> float:
    """|1 - int_0^inf phi^2 dr| with the quadrature-normalized phi."""
    from . import specfun

    p, c, n = state.params, state.coeffs, state.qn.n
    ja, jb = 2.0 * c.alpha, 2.0 * c.delta_prime - 1.0

    def density(s):
        s = np.asarray(s, dtype=float)
        poly = specfun._jacobi_raw(n, ja, jb, 1.0 - 2.0 * s)
        return np.exp((2.0 * c.alpha - 1.0) * np.log(s)) * (1.0 - s) ** (2.0 * c.delta_prime) * poly * poly

    val = specfun.integrate(density, 0.0, 1.0, 1e-12)
    return abs(state.norm_quad ** 2 * p.r0 * val - 1.0)


def _verify_one(p: ModelParams, qn: QuantumNumbers, root: str, label: str,
                cfg: ShootingConfig, perturb: Optional[float],
                exact_mode: bool) -> _VerifyRow:
    pair = hulthen.energy_levels(p, qn)
    e = pair.root(root)
    state = hulthen.bound_state_at_energy(p, qn, e)
    res_d = shooting.ode_residual(state, shooting.residual_grid(state), "derived")
    res_s = shooting.ode_residual(state, shooting.residual_grid(state), "shifted")
    eq_res = abs(quantization_residual(hulthen.build_nu_problem(e, p, qn), qn.n))
    norm_defect = _norm_roundtrip_defect(state)
    ratio = state.norm_closed / state.norm_quad
    e_shoot = de = None
    err = None
    try:
        half = max(1e-3, 1e3 * cfg.e_tol)
        lo = max(e - half, -p.m0 * (1 - 1e-12))
        hi = min(e + half, p.m0 * (1 - 1e-12))
        e_shoot = shooting.shoot(p, qn, cfg, (lo, hi))
        de = e_shoot - e
    except KgsolveError as exc:
        err = str(exc)
    res_pert = None
    if perturb:
        pert_state = hulthen.bound_state_at_energy(p, qn, e + perturb)
        res_pert = shooting.ode_residual(pert_state, shooting.residual_grid(pert_state), "derived")
    exact_e = None
    if exact_mode and qn.l > 0:
        try:
            exact_cfg = ShootingConfig(
                r_min=cfg.r_min, r_max=cfg.r_max, step_tol=cfg.step_tol,
                e_tol=cfg.e_tol, centrifugal_mode="exact",
            )
            width = 0.05 * p.m0
            lo = max(e - width, -p.m0 * (1 - 1e-12))
            hi = min(e + width, p.m0 * (1 - 1e-12))
            exact_e = shooting.shoot(p, qn, exact_cfg, (lo, hi))
        except KgsolveError:
            exact_e = None
    return _VerifyRow(label, qn.n, qn.l, root, e, e_shoot, de, res_d, res_s,
                      eq_res, norm_defect, ratio, res_pert, exact_e, err)


def _tabulated_valid_states(table_ids: Sequence[str]):
    """(params, qn, root, label) for every sign-valid normalizable tabulated root."""
    jobs = []
    for tid in table_ids:
        seen = set()
        for row in refdata.load_table(tid):
            if row.source != "ours":
                continue
            key = row.key()[:-1]
            if key in seen:
                continue
            seen.add(key)
            pair = hulthen.energy_levels(row.params, row.qn)
            if pair is None:
                continue
            for root in ("a", "p"):
                if not pair.valid(root):
                    continue
                e = pair.root(root)
                alpha = row.params.r0 * math.sqrt(max(row.params.m0 ** 2 - e * e, 0.0))
                if alpha <= 1e-6:
                    continue  # continuum-threshold root: not normalizable, not shootable
                label = (f"{tid}: m1={_fmt(row.m1)} V0={_fmt(row.V0)} "
                         f"S0={_fmt(row.S0)} n={row.n} l={row.l} {root}")
                jobs.append((row.params, row.qn, root, label))
    return jobs


def _coefficient_variant_note() -> str:
    """Demonstrate that the (2n+1) coefficient, not (2n-1), matches the tables."""
    worst_plus = worst_minus = 0.0
    for row in refdata.load_table("I"):
        if row.source != "ours" or row.absent:
            continue
        pair = hulthen.energy_levels(row.params, row.qn)
        worst_plus = max(worst_plus, abs(pair.e_a - row.e_a), abs(pair.e_p - row.e_p))
        dp = hulthen.delta_prime(row.params, row.l)
        # same quadratic with the (2n-1) variant of the index coefficient
        P = 2.0 * row.V0
        Q = 2.0 * row.m0 * (row.S0 - row.m1) - row.l * (row.l + 1) - row.n ** 2 \
            - (2 * row.n - 1) * dp
        D = 2.0 * (row.n + dp)
        a = P * P + D * D
        b = 2.0 * P * Q
        c = Q * Q - D * D * row.m0 ** 2
        disc = b * b - 4.0 * a * c
        if disc < 0:
            worst_minus = max(worst_minus, 1.0)
            continue
        sd = math.sqrt(disc)
        roots = sorted(((-b - sd) / (2 * a), (-b + sd) / (2 * a)))
        worst_minus = max(worst_minus, abs(roots[0] - row.e_a), abs(roots[1] - row.e_p))
    return (f"quantization index coefficient: the (2n+1) d' form reproduces table I "
            f"(max dev {worst_plus:.2e}); the (2n-1) d' variant printed in the source "
            f"does not (max dev {worst_minus:.2e})")


def cmd_verify(args) -> int:
    oracle_tol = _resolve(args, "oracle_tol", float, 1e-6)
    perturb = getattr(args, "perturb", None)
    fmt = _resolve(args, "format", str, "text")
    exact_mode = _resolve(args, "centrifugal", str, "approximate") == "exact"
    cfg = ShootingConfig(e_tol=_resolve(args, "e_tol", float, 1e-9))

    n_flag = getattr(args, "n", None)
    if n_flag is not None:
        p = _model_from(args)
        qn = QuantumNumbers(int(n_flag), _resolve(args, "l", int, 0))
        root = _resolve(args, "root", str, "p")
        pair = hulthen.energy_levels(p, qn)
        if pair is None:
            print(f"error: no real roots [{_echo_config(p, f'n={qn.n} l={qn.l}')}]",
                  file=sys.stderr)
            return 1
        jobs = [(p, qn, root, f"single: n={qn.n} l={qn.l} {root}")]
    else:
        which = _resolve(args, "table", str, "both")
        ids = ["I", "II"] if which == "both" else [which]
        jobs = _tabulated_valid_states(ids)

    def run(job):
        p, qn, root, label = job
        try:
            return _verify_one(p, qn, root, label, cfg, perturb, exact_mode)
        except KgsolveError as exc:
            return _VerifyRow(label, qn.n, qn.l, root, math.nan, None, None,
                              math.nan, math.nan, math.nan, math.nan, math.nan,
                              None, None, str(exc))

    workers = _workers()
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, jobs))
    else:
        results = [run(j) for j in jobs]

    all_pass = all(r.passed(oracle_tol) for r in results)
    ratios = sorted({round(r.ratio_closed_quad, 9) for r in results
                     if math.isfinite(r.ratio_closed_quad)})
    notes = [
        _coefficient_variant_note(),
        (f"wavefunction envelope: derived exponent set (d', 2d'-1) gives max residual "
         f"{max((r.res_derived for r in results), default=math.nan):.2e}; the shifted set "
         f"(1+d', 1+2d') gives {max((r.res_shifted for r in results), default=math.nan):.2e} "
         f"- the derived set solves the radial equation, the shifted one does not"),
        (f"closed-form normalization constant disagrees with quadrature; "
         f"ratio range {min(ratios, default=math.nan)}..{max(ratios, default=math.nan)} "
         f"varies across n, so the discrepancy is not a pure index shift; "
         f"the quadrature constant is authoritative"),
    ]

    if fmt == "json":
        payload = {
            "states": [{
                "label": r.label, "n": r.n, "l": r.l, "root": r.root,
                "e_closed": r.e_closed, "e_shoot": r.e_shoot, "de": r.de,
                "residual_derived": r.res_derived, "residual_shifted": r.res_shifted,
                "quantization_residual": r.eq_residual, "norm_defect": r.norm_defect,
                "ratio_closed_quad": r.ratio_closed_quad,
                "residual_perturbed": r.res_perturbed,
                "e_exact_centrifugal": r.exact_mode_e,
                "error": r.error, "pass": r.passed(oracle_tol),
            } for r in results],
            "summary": {
                "states": len(results),
                "passed": sum(r.passed(oracle_tol) for r in results),
                "oracle_tol": oracle_tol,
                "all_pass": all_pass,
            },
            "notes": notes,
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.output)
        return 0 if all_pass else 1

    buf = io.StringIO()
    buf.write(f"verification report (oracle tolerance {_fmt(oracle_tol)})\n")
    for r in results:
        if r.error is not None and r.e_shoot is None and math.isnan(r.e_closed):
            buf.write(f"  {r.label:<46} ERROR: {r.error}\n")
            continue
        de = "n/a" if r.de is None else f"{r.de:+.2e}"
        status = "pass" if r.passed(oracle_tol) else "FAIL"
        buf.write(f"  {r.label:<46} E={r.e_closed:+.7f} dE={de:>9} "
                  f"res={r.res_derived:.1e} shifted={r.res_shifted:.1e} "
                  f"quant={r.eq_residual:.1e} norm={r.norm_defect:.1e} "
                  f"A43/Aquad={r.ratio_closed_quad:.6f} {status}\n")
        if r.error:
            buf.write(f"      oracle error: {r.error}\n")
        if r.res_perturbed is not None:
            buf.write(f"      residual at E+{_fmt(perturb)}: {r.res_perturbed:.2e} "
                      f"(sensitivity check)\n")
        if r.exact_mode_e is not None:
            buf.write(f"      exact-centrifugal oracle energy: {r.exact_mode_e:+.7f} "
                      f"(approximation gap {r.exact_mode_e - (r.e_shoot or r.e_closed):+.2e}, "
                      f"informational)\n")
    buf.write("notes:\n")
    for note in notes:
        buf.write(f"  - {note}\n")
    buf.write(f"result: {sum(r.passed(oracle_tol) for r in results)}/{len(results)} states pass\n")
    _emit(buf.getvalue(), args.output)
    return 0 if all_pass else 1


# ---------------------------------------------------------------------------
# scan
# ---------------------------------------------------------------------------

def cmd_scan(args) -> int:
    param = args.param
    lo = _resolve(args, "start", float, None)
    hi = _resolve(args, "stop", float, None)
    steps = _resolve(args, "steps", int, 51)
    if lo is None or hi is None:
        print("error: scan requires --from and --to", file=sys.stderr)
        return 2
    if steps < 2 or not (hi > lo):
        print(f"error: malformed range [{_fmt(lo)}, {_fmt(hi)}] with {steps} steps",
              file=sys.stderr)
        return 2
    base = _model_from(args)
    n_max = _resolve(args, "n_max", int, 1)
    l_max = _resolve(args, "l_max", int, 0)

    def with_value(v: float) -> ModelParams:
        if param == "V0S0":
            return ModelParams(base.m0, base.m1, v, v, base.r0)
        kwargs = {"m0": base.m0, "m1": base.m1, "V0": base.V0, "S0": base.S0, "r0": base.r0}
        kwargs[param] = v
        return ModelParams(**kwargs)

    values = np.linspace(lo, hi, steps)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([param, "n", "l", "e_a", "e_p", "valid_a", "valid_p", "transition"])
    previous_presence = {}
    for v in values:
        p = with_value(float(v))
        for n in range(n_max + 1):
            for l in range(l_max + 1):
                pair = hulthen.energy_levels(p, QuantumNumbers(n, l))
                present = pair is not None
                key = (n, l)
                transition = key in previous_presence and previous_presence[key] != present
                previous_presence[key] = present
                if pair is None:
                    w.writerow([_fmt(float(v)), n, l, "", "", "", "",
                                int(transition)])
                else:
                    w.writerow([_fmt(float(v)), n, l, _fmt(pair.e_a), _fmt(pair.e_p),
                                int(pair.valid_a), int(pair.valid_p), int(transition)])
    _emit(buf.getvalue(), args.output)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kgsolve",
        description="Bound states of the screened vector/scalar relativistic model: "
                    "closed-form spectra, wavefunctions, and an independent ODE oracle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="closed-form energy levels over (n, l) ranges")
    _add_model_flags(sp)
    sp.add_argument("--n-max", dest="n_max", type=int, default=None)
    sp.add_argument("--l-max", dest="l_max", type=int, default=None)
    sp.add_argument("--format", choices=["text", "csv", "json"], default=None)
    sp.set_defaults(func=cmd_spectrum)

    tb = sub.add_parser("table", help="recompute a bundled reference table and compare")
    tb.add_argument("--id", choices=["I", "II"], required=True)
    tb.add_argument("--tol", type=float, default=None,
                    help="comparison tolerance (default 1e-6 for I, 1e-5 for II)")
    tb.add_argument("--source", choices=["ours", "ref32", "ref3334"], default=None)
    tb.add_argument("--format", choices=["text", "csv"], default=None)
    tb.add_argument("--config", type=str, default=None)
    tb.add_argument("--output", type=str, default=None)
    tb.set_defaults(func=cmd_table)

    wf = sub.add_parser("wavefunction", help="emit a normalized radial profile as CSV")
    _add_model_flags(wf)
    wf.add_argument("--n", type=int, default=None)
    wf.add_argument("--l", type=int, default=None)
    wf.add_argument("--root", choices=["a", "p"], default=None,
                    help="which root of the quantization quadratic (default p)")
    wf.add_argument("--r-max", dest="r_max", type=float, default=None)
    wf.add_argument("--points", type=int, default=None)
    wf.add_argument("--grid", choices=["uniform", "log"], default=None)
    wf.set_defaults(func=cmd_wavefunction)

    vf = sub.add_parser("verify", help="shooting-oracle and residual verification")
    _add_model_flags(vf)
    vf.add_argument("--table", choices=["I", "II", "both"], default=None,
                    help="verify every sign-valid tabulated state (default both)")
    vf.add_argument("--n", type=int, default=None,
                    help="verify a single configuration instead of a table sweep")
    vf.add_argument("--l", type=int, default=None)
    vf.add_argument("--root", choices=["a", "p"], default=None)
    vf.add_argument("--oracle-tol", dest="oracle_tol", type=float, default=None)
    vf.add_argument("--e-tol", dest="e_tol", type=float, default=None)
    vf.add_argument("--centrifugal", choices=["approximate", "exact"], default=None)
    vf.add_argument("--perturb", type=float, default=None,
                    help="also report the residual at E + this offset")
    vf.add_argument("--format", choices=["text", "json"], default=None)
    vf.set_defaults(func=cmd_verify)

    sc = sub.add_parser("scan", help="sweep one parameter, emitting energy trajectories")
    _add_model_flags(sc)
    sc.add_argument("--param", choices=["V0", "S0", "m1", "r0", "V0S0"], required=True)
    sc.add_argument("--from", dest="start", type=float, default=None)
    sc.add_argument("--to", dest="stop", type=float, default=None)
    sc.add_argument("--steps", type=int, default=None)
    sc.add_argument("--n-max", dest="n_max", type=int, default=None)
    sc.add_argument("--l-max", dest="l_max", type=int, default=None)
    sc.set_defaults(func=cmd_scan)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    config_path = getattr(args, "config", None)
    if config_path:
        try:
            args._config_values = _load_config_file(config_path)
        except (OSError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    else:
        args._config_values = {}
    try:
        return args.func(args)
    except KgsolveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
