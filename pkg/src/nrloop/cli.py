"""Command-line front end.

Runs single evaluations and parameter sweeps over the loop and its squeezer
baseline, emitting deterministic CSV or JSON tables.

Subcommands: sweep-phase, sweep-thermal, sweep-loss, sweep-freq, decompose,
stability, plan-pumps, swap.  A JSON config document (``--config``) may
supply any option of the invoked subcommand; explicit flags override config
fields.  Sweep points are evaluated by a bounded worker pool
(``NRLOOP_THREADS`` caps the size) and written in order after collection.

Metric names accepted by ``--metrics``:

    e_n_12, e_n_13, e_n_23   log-negativity per pair (column suffix carries
                             the log base: _nats or _bits)
    mu_12, mu_13, mu_23      marginal purity per pair
    nu_12, nu_13, nu_23      minimum symplectic eigenvalue of the partial
                             transpose per pair
    n_12, n_13, n_23         degree of nonreciprocity per pair (resonant
                             sweeps only)
    s11, s22, s33            reflection-block Frobenius norms (resonant only)
    stable                   stability flag

Unstable sweep points emit the sentinel ``unstable`` in every metric cell
and the run continues.  Exit codes: 0 success, 1 runtime error, 2 usage
error.
"""

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import circuits
from . import gaussian
from . import linalg
from . import model
from . import scattering
from .pumpplan import plan_frequencies, pump_amplitudes, rwa_check

THREADS_ENV = "NRLOOP_THREADS"

_PAIRS = {"12": (1, 2), "13": (1, 3), "23": (2, 3)}
_STATE_METRICS = tuple(f"{kind}_{pq}" for kind in ("e_n", "mu", "nu") for pq in _PAIRS)
_SCATTER_METRICS = tuple(f"n_{pq}" for pq in _PAIRS) + ("s11", "s22", "s33")
_ALL_METRICS = _STATE_METRICS + _SCATTER_METRICS + ("stable",)
_TMS_METRICS = ("e_n_12", "mu_12", "nu_12", "stable")


class UsageError(ValueError):
    """Bad flag or config field; mapped to exit code 2."""


# ---------------------------------------------------------------------------
# small parsing helpers


def _floats(text, n, what):
    parts = [p.strip() for p in str(text).split(",")]
    if len(parts) != n:
        raise UsageError(f"{what} expects {n} comma-separated values, got {text!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError as exc:
        raise UsageError(f"{what}: {exc}") from None


def _scalar_or_range(text, what):
    """Parse a loss-ratio field: either a scalar or 'start:stop:steps'."""
    s = str(text).strip()
    if ":" in s:
        parts = s.split(":")
        if len(parts) != 3:
            raise UsageError(f"{what} range must be start:stop:steps, got {text!r}")
        try:
            start, stop = float(parts[0]), float(parts[1])
            steps = int(parts[2])
        except ValueError as exc:
            raise UsageError(f"{what}: {exc}") from None
        if steps < 1:
            raise UsageError(f"{what}: step count must be >= 1")
        return _linspace(start, stop, steps)
    try:
        return [float(s)]
    except ValueError as exc:
        raise UsageError(f"{what}: {exc}") from None


def _linspace(start, stop, steps):
    if steps < 1:
        raise UsageError("step count must be >= 1")
    if steps == 1:
        return [start]
    h = (stop - start) / (steps - 1)
    return [start + i * h for i in range(steps)]


def _angle(value, degrees):
    return math.radians(value) if degrees else value


def _metric_list(text, allowed, what="--metrics"):
    names = [m.strip() for m in str(text).split(",") if m.strip()]
    if not names:
        raise UsageError(f"{what} must name at least one metric")
    for m in names:
        if m not in allowed:
            raise UsageError(f"unknown metric {m!r}; valid: {', '.join(allowed)}")
    return names


def _systems(text):
    names = [s.strip() for s in str(text).split(",") if s.strip()]
    for s in names:
        if s not in ("nrl", "tms"):
            raise UsageError(f"unknown system {s!r}; valid: nrl, tms")
    if not names:
        raise UsageError("--system must name nrl, tms, or both")
    return names


# ---------------------------------------------------------------------------
# config handling


def _load_config(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise UsageError(f"config: cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"config: {path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise UsageError(f"config: {path}: top level must be a JSON object")
    return doc


def _effective(args, defaults):
    """Built-in defaults, overridden by config fields, overridden by
    explicitly given flags (argparse defaults are all None)."""
    eff = dict(defaults)
    if getattr(args, "config", None):
        cfg = _load_config(args.config)
        for key, value in cfg.items():
            if key not in defaults:
                raise UsageError(f"config: unknown field {key!r} for this subcommand")
            eff[key] = value
    for key in defaults:
        value = getattr(args, key, None)
        if value is not None:
            eff[key] = value
    return eff


# ---------------------------------------------------------------------------
# output emission


def _csv_cell(v):
    if v is None:
        return "unstable"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _json_cell(v):
    return "unstable" if v is None else v


def _emit(columns, rows, meta, fmt, output):
    if fmt == "csv":
        lines = [",".join(columns)]
        lines.extend(",".join(_csv_cell(row[c]) for c in columns) for row in rows)
        text = "\n".join(lines) + "\n"
    else:
        payload = {
            "meta": meta,
            "columns": list(columns),
            "rows": [[_json_cell(row[c]) for c in columns] for row in rows],
        }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _column_name(metric, log_base):
    if metric.startswith("e_n_"):
        return metric + ("_bits" if log_base == "2" else "_nats")
    return metric


# ---------------------------------------------------------------------------
# point evaluation


def _n_workers():
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"{THREADS_ENV} must be an integer, got {env!r}") from None
    return min(4, os.cpu_count() or 1)


def _map_ordered(fn, items):
    if len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=_n_workers()) as pool:
        return list(pool.map(fn, items))


def _convert_e_n(value, log_base):
    return value / math.log(2.0) if log_base == "2" else value


def _evaluate_nrl(p, metrics, log_base, omega=0.0):
    row = {}
    stable = model.is_stable(p)
    cov = None
    smat = None
    reports = {}
    for metric in metrics:
        name = _column_name(metric, log_base)
        if metric == "stable":
            row[name] = stable
            continue
        if not stable:
            row[name] = None
            continue
        if metric in _STATE_METRICS:
            if cov is None:
                cov = gaussian.output_covariance(p, omega)
            pair = _PAIRS[metric[-2:]]
            if pair not in reports:
                reports[pair] = gaussian.entanglement_from_covariance(cov, pair)
            rep = reports[pair]
            if metric.startswith("e_n"):
                row[name] = _convert_e_n(rep.log_negativity, log_base)
            elif metric.startswith("mu"):
                row[name] = rep.purity
            else:
                row[name] = rep.nu_minus
        elif metric in _SCATTER_METRICS:
            if smat is None:
                smat = scattering.scattering_at(p, 0.0).s_e
            if metric.startswith("n_"):
                rep = scattering.nonreciprocity(p, _PAIRS[metric[-2:]])
                row[name] = rep.n_jk
            else:
                i = int(metric[1]) - 1
                row[name] = linalg.frobenius(smat.block2x2(i, i))
        else:
            raise UsageError(f"unknown metric {metric!r}")
    return row


def _evaluate_tms(p, metrics, log_base, omega=0.0):
    row = {}
    stable = model.is_stable(p)
    rep = None
    for metric in metrics:
        name = _column_name(metric, log_base)
        if metric == "stable":
            row[name] = stable
            continue
        if not stable:
            row[name] = None
            continue
        if rep is None:
            rep = gaussian.entanglement_report(p, (1, 2), omega)
        if metric.startswith("e_n"):
            row[name] = _convert_e_n(rep.log_negativity, log_base)
        elif metric.startswith("mu"):
            row[name] = rep.purity
        else:
            row[name] = rep.nu_minus
    return row


def _loop_from(eff, phi, n_th=None, loss=None):
    c23 = float(eff["c23"])
    c13 = float(eff["c13"])
    c12 = float(eff["c12"]) if eff["c12"] is not None else c13 * c23
    kappas = _floats(eff["kappas"], 3, "--kappas") if isinstance(eff["kappas"], str) else tuple(eff["kappas"])
    loss = tuple(loss) if loss is not None else (
        _floats(eff["loss"], 3, "--loss") if isinstance(eff["loss"], str) else tuple(eff["loss"]))
    n_th = tuple(n_th) if n_th is not None else (
        _floats(eff["n_th"], 3, "--n-th") if isinstance(eff["n_th"], str) else tuple(eff["n_th"]))
    try:
        return model.LoopParams.from_cooperativities(
            c12=c12, c13=c13, c23=c23, phi=phi,
            kappas=kappas, loss_ratios=loss, n_th=n_th)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _tms_from(c12, kappas, loss, n_th):
    try:
        return model.TmsParams.from_cooperativity(
            c12=c12, kappas=kappas[:2], loss_ratios=loss[:2], n_th=n_th[:2])
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _meta(command, eff):
    meta = {"command": command, "backend_note": "log base " + ("2 (bits)" if eff.get("log_base") == "2" else "e (nats)")}
    for key, value in eff.items():
        if key in ("output",):
            continue
        meta[key] = value
    return meta


# ---------------------------------------------------------------------------
# subcommands

_COMMON_DEFAULTS = {
    "format": "csv",
    "output": None,
    "log_base": "e",
    "config": None,
}

_LOOP_DEFAULTS = {
    "c23": 0.5,
    "c13": 1.0,
    "c12": None,
    "kappas": (1.0, 1.0, 1.0),
    "loss": (0.0, 0.0, 0.0),
    "n_th": (0.0, 0.0, 0.0),
}


def _cmd_sweep_phase(args):
    defaults = dict(_COMMON_DEFAULTS, **_LOOP_DEFAULTS,
                    start=-math.pi, stop=math.pi, steps=73,
                    metrics="e_n_12,e_n_23,mu_12,mu_23", phi_deg=None)
    eff = _effective(args, defaults)
    metrics = _metric_list(eff["metrics"], _ALL_METRICS)
    degrees = bool(eff["phi_deg"])
    phis = _linspace(_angle(float(eff["start"]), degrees), _angle(float(eff["stop"]), degrees),
                     int(eff["steps"]))
    log_base = str(eff["log_base"])

    def point(phi):
        row = {"phi": phi}
        row.update(_evaluate_nrl(_loop_from(eff, phi), metrics, log_base))
        return row

    rows = _map_ordered(point, phis)
    columns = ["phi"] + [_column_name(m, log_base) for m in metrics]
    _emit(columns, rows, _meta("sweep-phase", eff), eff["format"], eff["output"])
    return 0


def _cmd_sweep_thermal(args):
    defaults = dict(_COMMON_DEFAULTS, **_LOOP_DEFAULTS,
                    system="nrl,tms", vary_mode=1, start=0.0, stop=20.0, steps=41,
                    phi=math.pi / 2.0, tms_c=None, metrics="e_n_12,mu_12", phi_deg=None)
    eff = _effective(args, defaults)
    systems = _systems(eff["system"])
    metrics = _metric_list(eff["metrics"], _TMS_METRICS if systems == ["tms"] else _ALL_METRICS)
    vary = int(eff["vary_mode"])
    if vary not in (1, 2, 3):
        raise UsageError("--vary-mode must be 1, 2 or 3")
    if "tms" in systems and vary == 3 and systems == ["tms"]:
        raise UsageError("the two-mode squeezer has no mode 3 to sweep")
    phi = _angle(float(eff["phi"]), bool(eff["phi_deg"]))
    occupations = _linspace(float(eff["start"]), float(eff["stop"]), int(eff["steps"]))
    log_base = str(eff["log_base"])
    base_n = _floats(eff["n_th"], 3, "--n-th") if isinstance(eff["n_th"], str) else tuple(eff["n_th"])
    kappas = _floats(eff["kappas"], 3, "--kappas") if isinstance(eff["kappas"], str) else tuple(eff["kappas"])
    loss = _floats(eff["loss"], 3, "--loss") if isinstance(eff["loss"], str) else tuple(eff["loss"])
    c23 = float(eff["c23"])
    c13 = float(eff["c13"])
    c12 = float(eff["c12"]) if eff["c12"] is not None else c13 * c23
    tms_c = float(eff["tms_c"]) if eff["tms_c"] is not None else c12
    prefix = len(systems) > 1

    def point(n):
        n_th = tuple(n if i == vary - 1 else base_n[i] for i in range(3))
        row = {"n_th": n}
        for system in systems:
            if system == "nrl":
                values = _evaluate_nrl(_loop_from(eff, phi, n_th=n_th), metrics, log_base)
            else:
                tms_metrics = [m for m in metrics if m in _TMS_METRICS]
                values = _evaluate_tms(_tms_from(tms_c, kappas, loss, n_th), tms_metrics, log_base)
            if prefix:
                values = {f"{system}_{k}": v for k, v in values.items()}
            row.update(values)
        return row

    rows = _map_ordered(point, occupations)
    columns = ["n_th"]
    for system in systems:
        names = metrics if system == "nrl" else [m for m in metrics if m in _TMS_METRICS]
        for m in names:
            c = _column_name(m, log_base)
            columns.append(f"{system}_{c}" if prefix else c)
    _emit(columns, rows, _meta("sweep-thermal", eff), eff["format"], eff["output"])
    return 0


def _cmd_sweep_loss(args):
    defaults = dict(_COMMON_DEFAULTS, **_LOOP_DEFAULTS,
                    system="nrl", phi=math.pi / 2.0, tms_c=None,
                    loss1="0", loss2="0", loss3="0", metrics="e_n_12,mu_12", phi_deg=None)
    eff = _effective(args, defaults)
    systems = _systems(eff["system"])
    metrics = _metric_list(eff["metrics"], _TMS_METRICS if systems == ["tms"] else _ALL_METRICS)
    phi = _angle(float(eff["phi"]), bool(eff["phi_deg"]))
    log_base = str(eff["log_base"])
    ranges = [_scalar_or_range(eff[f"loss{i}"], f"--loss{i}") for i in (1, 2, 3)]
    axes = [i for i, r in enumerate(ranges) if len(r) > 1]
    kappas = _floats(eff["kappas"], 3, "--kappas") if isinstance(eff["kappas"], str) else tuple(eff["kappas"])
    n_th = _floats(eff["n_th"], 3, "--n-th") if isinstance(eff["n_th"], str) else tuple(eff["n_th"])
    c23 = float(eff["c23"])
    c13 = float(eff["c13"])
    c12 = float(eff["c12"]) if eff["c12"] is not None else c13 * c23
    tms_c = float(eff["tms_c"]) if eff["tms_c"] is not None else c12
    prefix = len(systems) > 1

    points = [(l1, l2, l3) for l1 in ranges[0] for l2 in ranges[1] for l3 in ranges[2]]

    def point(losses):
        row = {f"loss{i + 1}": losses[i] for i in axes} if axes else {"loss1": losses[0]}
        for system in systems:
            if system == "nrl":
                values = _evaluate_nrl(_loop_from(eff, phi, loss=losses), metrics, log_base)
            else:
                tms_metrics = [m for m in metrics if m in _TMS_METRICS]
                values = _evaluate_tms(_tms_from(tms_c, kappas, losses, n_th), tms_metrics, log_base)
            if prefix:
                values = {f"{system}_{k}": v for k, v in values.items()}
            row.update(values)
        return row

    rows = _map_ordered(point, points)
    columns = [f"loss{i + 1}" for i in axes] if axes else ["loss1"]
    for system in systems:
        names = metrics if system == "nrl" else [m for m in metrics if m in _TMS_METRICS]
        for m in names:
            c = _column_name(m, log_base)
            columns.append(f"{system}_{c}" if prefix else c)
    _emit(columns, rows, _meta("sweep-loss", eff), eff["format"], eff["output"])
    return 0


def _cmd_sweep_freq(args):
    defaults = dict(_COMMON_DEFAULTS, **_LOOP_DEFAULTS,
                    phi=math.pi / 2.0, start=-2.0, stop=2.0, steps=81,
                    metrics="e_n_12,mu_12,nu_12", phi_deg=None)
    eff = _effective(args, defaults)
    metrics = _metric_list(eff["metrics"], _STATE_METRICS + ("stable",))
    phi = _angle(float(eff["phi"]), bool(eff["phi_deg"]))
    omegas = _linspace(float(eff["start"]), float(eff["stop"]), int(eff["steps"]))
    log_base = str(eff["log_base"])
    p = _loop_from(eff, phi)

    def point(omega):
        row = {"omega": omega}
        row.update(_evaluate_nrl(p, metrics, log_base, omega=omega))
        return row

    rows = _map_ordered(point, omegas)
    columns = ["omega"] + [_column_name(m, log_base) for m in metrics]
    _emit(columns, rows, _meta("sweep-freq", eff), eff["format"], eff["output"])
    return 0


def _mat_lists(m):
    return [[m[i, j] for j in range(m.cols)] for i in range(m.rows)]


def _cmd_decompose(args):
    defaults = dict(_COMMON_DEFAULTS, **_LOOP_DEFAULTS,
                    phi=-math.pi / 2.0, side="left", form=None, phi_deg=None)
    defaults["format"] = "json"
    eff = _effective(args, defaults)
    if eff["format"] != "json":
        raise UsageError("decompose emits matrices; only --format json is supported")
    side = str(eff["side"])
    if side not in ("left", "right"):
        raise UsageError("--side must be left or right")
    phi = _angle(float(eff["phi"]), bool(eff["phi_deg"]))
    p = _loop_from(eff, phi)
    check = circuits.verify_polar(p, side)
    doc = {
        "meta": _meta("decompose", eff),
        "side": side,
        "residual": check.residual,
        "factor_match": check.factor_match,
        "sign": check.sign,
        "r_factor": _mat_lists(check.r_factor),
        "u_factor": _mat_lists(check.u_factor),
        "scattering": _mat_lists(scattering.scattering_at(p, 0.0).s_e),
    }
    form = eff["form"]
    try:
        pred = circuits.predicted_factors(p, form=form) if form else circuits.predicted_factors(p)
        doc["predicted"] = {
            "order": pred.order,
            "ops": [
                {"kind": op.kind, "pair": list(op.pair), "parameter": op.parameter,
                 "axis_angle": op.axis_angle}
                for op in pred.ops
            ],
        }
    except ValueError as exc:
        doc["predicted"] = {"available": False, "reason": str(exc)}
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if eff["output"]:
        with open(eff["output"], "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_stability(args):
    defaults = dict(_COMMON_DEFAULTS, **_LOOP_DEFAULTS,
                    phi=math.pi / 2.0, random_check=None, seed=0, phi_deg=None)
    eff = _effective(args, defaults)
    phi = _angle(float(eff["phi"]), bool(eff["phi_deg"]))
    rows = []
    meta = _meta("stability", eff)
    if eff["random_check"]:
        import random

        draws = int(eff["random_check"])
        rng = random.Random(int(eff["seed"]))
        agree = 0
        for _ in range(draws):
            p = model.LoopParams.from_cooperativities(
                c12=rng.uniform(0.0, 2.0), c13=rng.uniform(0.0, 2.0), c23=rng.uniform(0.0, 2.0),
                phi=rng.choice((-math.pi / 2.0, math.pi / 2.0)),
                kappas=tuple(rng.uniform(0.1, 10.0) for _ in range(3)))
            verdict = model.routh_hurwitz(p)
            if verdict.stable == (verdict.max_eig_real_part < 0.0):
                agree += 1
        rows.append({"label": "random cross-check: closed-form verdict vs eigenvalue sign",
                     "value": float(agree), "satisfied": agree == draws})
        meta["draws"] = draws
    else:
        verdict = model.routh_hurwitz(_loop_from(eff, phi))
        for label, value, ok in verdict.conditions:
            rows.append({"label": label, "value": value, "satisfied": ok})
        rows.append({"label": "verdict: stable (value = max Re eigenvalue)",
                     "value": verdict.max_eig_real_part, "satisfied": verdict.stable})
    _emit(["label", "value", "satisfied"], rows, meta, eff["format"], eff["output"])
    return 0


def _cmd_plan_pumps(args):
    defaults = dict(_COMMON_DEFAULTS, modes="0.5,7.5,10.5", couplings=None,
                    ratio_threshold=100.0)
    eff = _effective(args, defaults)
    modes = _floats(eff["modes"], 3, "--modes")
    plan = plan_frequencies(modes)
    rows = [
        {"label": "pump_1 (w2 + w3)", "value": plan.pump_freqs[0]},
        {"label": "pump_2 (w3 - w1)", "value": plan.pump_freqs[1]},
        {"label": "pump_3 (w1 + w2)", "value": plan.pump_freqs[2]},
    ]
    for i, f in enumerate(plan.spurious_diff):
        rows.append({"label": f"spurious_diff_{i + 1}", "value": f})
    for i, f in enumerate(plan.spurious_sum):
        rows.append({"label": f"spurious_sum_{i + 1}", "value": f})
    rows.append({"label": "min_margin", "value": plan.min_margin})
    if eff["couplings"] is not None:
        couplings = _floats(eff["couplings"], 3, "--couplings")
        check = rwa_check(plan, couplings, float(eff["ratio_threshold"]))
        rows.append({"label": "rwa_worst_ratio", "value": check.worst_ratio})
        rows.append({"label": f"rwa_ok (threshold {check.threshold:g})", "value": 1.0 if check.ok else 0.0})
    _emit(["label", "value"], rows, _meta("plan-pumps", eff), eff["format"], eff["output"])
    return 0


def _cmd_swap(args):
    defaults = dict(_COMMON_DEFAULTS, ca=0.5, cb=0.5)
    eff = _effective(args, defaults)
    report = circuits.swap_figure_of_merit(circuits.SwapConfig(float(eff["ca"]), float(eff["cb"])))
    log_base = str(eff["log_base"])
    e_n = _convert_e_n(report.log_negativity, log_base)
    e_n_col = "e_n_bits" if log_base == "2" else "e_n_nats"
    row = {"r": report.r, e_n_col: e_n, "purity": report.purity}
    _emit(list(row), [row], _meta("swap", eff), eff["format"], eff["output"])
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(sub):
    sub.add_argument("--format", choices=("csv", "json"))
    sub.add_argument("--output")
    sub.add_argument("--log-base", dest="log_base", choices=("e", "2"))
    sub.add_argument("--config")


def _add_loop(sub):
    sub.add_argument("--c23", type=float)
    sub.add_argument("--c13", type=float)
    sub.add_argument("--c12", type=float, help="defaults to the matched value C13 * C23")
    sub.add_argument("--kappas", help="total decay rates, e.g. 1,1,1")
    sub.add_argument("--loss", help="internal-loss ratios kappa_int/kappa, e.g. 0.01,0,0")
    sub.add_argument("--n-th", dest="n_th", help="monitored-bath occupations, e.g. 10,0,0")
    sub.add_argument("--phi-deg", dest="phi_deg", action="store_const", const=True,
                     help="interpret angle inputs in degrees")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="nrloop",
        description="Steady-state scattering, entanglement, and thermal-noise "
                    "routing of a three-mode nonreciprocal loop.")
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("sweep-phase", help="sweep the loop phase")
    _add_common(sp); _add_loop(sp)
    sp.add_argument("--start", type=float)
    sp.add_argument("--stop", type=float)
    sp.add_argument("--steps", type=int)
    sp.add_argument("--metrics")
    sp.set_defaults(func=_cmd_sweep_phase)

    st = subs.add_parser("sweep-thermal", help="sweep a thermal occupation")
    _add_common(st); _add_loop(st)
    st.add_argument("--system", help="nrl, tms, or nrl,tms")
    st.add_argument("--vary-mode", dest="vary_mode", type=int)
    st.add_argument("--phi", type=float)
    st.add_argument("--tms-c", dest="tms_c", type=float, help="squeezer cooperativity (default: loop C12)")
    st.add_argument("--start", type=float)
    st.add_argument("--stop", type=float)
    st.add_argument("--steps", type=int)
    st.add_argument("--metrics")
    st.set_defaults(func=_cmd_sweep_thermal)

    sl = subs.add_parser("sweep-loss", help="sweep internal-loss ratios")
    _add_common(sl); _add_loop(sl)
    sl.add_argument("--system", help="nrl, tms, or nrl,tms")
    sl.add_argument("--phi", type=float)
    sl.add_argument("--tms-c", dest="tms_c", type=float)
    sl.add_argument("--loss1", help="scalar or start:stop:steps")
    sl.add_argument("--loss2", help="scalar or start:stop:steps")
    sl.add_argument("--loss3", help="scalar or start:stop:steps")
    sl.add_argument("--metrics")
    sl.set_defaults(func=_cmd_sweep_loss)

    sf = subs.add_parser("sweep-freq", help="sweep the detuning from resonance")
    _add_common(sf); _add_loop(sf)
    sf.add_argument("--phi", type=float)
    sf.add_argument("--start", type=float)
    sf.add_argument("--stop", type=float)
    sf.add_argument("--steps", type=int)
    sf.add_argument("--metrics")
    sf.set_defaults(func=_cmd_sweep_freq)

    dc = subs.add_parser("decompose", help="polar factors and circuit match report")
    _add_common(dc); _add_loop(dc)
    dc.add_argument("--phi", type=float)
    dc.add_argument("--side", choices=("left", "right"))
    dc.add_argument("--form", choices=("polar", "swap"))
    dc.set_defaults(func=_cmd_decompose)

    sb = subs.add_parser("stability", help="stability conditions and verdict")
    _add_common(sb); _add_loop(sb)
    sb.add_argument("--phi", type=float)
    sb.add_argument("--random-check", dest="random_check", type=int,
                    help="run N random draws comparing verdict against eigenvalues")
    sb.add_argument("--seed", type=int)
    sb.set_defaults(func=_cmd_stability)

    pp = subs.add_parser("plan-pumps", help="pump-frequency plan and RWA margin")
    _add_common(pp)
    pp.add_argument("--modes", help="mode frequencies, e.g. 0.5,7.5,10.5")
    pp.add_argument("--couplings", help="target g12,g13,g23 for the RWA check")
    pp.add_argument("--ratio-threshold", dest="ratio_threshold", type=float)
    pp.set_defaults(func=_cmd_plan_pumps)

    sw = subs.add_parser("swap", help="two-loop entanglement-swapping figure of merit")
    _add_common(sw)
    sw.add_argument("--ca", type=float)
    sw.add_argument("--cb", type=float)
    sw.set_defaults(func=_cmd_swap)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # runtime failures: singular matrices, IO, ...
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
