"""Command-line driver.

    geoxform <command> [--flag value ...]

Every run writes one JSON document (or a CSV table) that echoes the
resolved configuration next to the results.  Exit status: 0 on success,
2 when the inputs are rejected, 3 when a well-posed evaluation fails
numerically, 1 for anything unexpected.  Diagnostics go to stderr.

Flags may also come from a key-value file given with ``--config``; flags on
the command line win.  ``GEOXFORM_THREADS`` caps the worker threads used
for grids.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import fracint, norms, radial_transform, verify
from .errors import GeoxformError, NumericalFailure, PreconditionError
from .general_transform import AmbientFunction, kplane_general
from .geometry import Space, random_coord
from .quadrature import QuadratureSpec

SCHEMA_VERSION = "geoxform-result/1"

COMMANDS = (
    "eval-transform", "eval-dual", "eval-general", "norm", "lorentz-norm", "check-conditions",
    "scan-region", "probe-ratio", "probe-blowup", "probe-endpoint", "verify-catalog",
    "lemma-suite", "fracint",
)

PARAM_KEYS = ("n", "p", "r", "alpha", "alpha1", "alpha2", "beta", "beta1", "beta2",
              "gamma", "gamma1", "gamma2", "a", "b")

EXIT_OK, EXIT_INTERNAL, EXIT_PRECONDITION, EXIT_NUMERICAL = 0, 1, 2, 3

# parameters of the catalog families used by verify-catalog
CATALOG_DEFAULTS = {
    "EuclideanBall": dict(lam=1.0),
    "HnBall": dict(lam=1.0),
    "HnBallCosh": dict(lam=1.0),
    "HnBallSinhCosh": dict(lam=1.0, alpha=0.5, p=2.0),
    "SnBallPlain": dict(lam=0.8),
    "SnBallCos": dict(lam=0.8),
    "SnBallCosSinPow": dict(lam=0.8, alpha=0.5, p=2.0),
    "SnEquatorPlain": dict(lam=0.6),
    "SnEquatorCos": dict(lam=0.6),
    "SnEquatorCosPow": dict(lam=0.6, alpha=0.5, p=2.0),
    "DualHnMixed": dict(gamma1=0.5, gamma2=-4.0),
    "DualSnMixed": dict(gamma1=0.5, gamma2=0.5),
}


class UsageError(PreconditionError):
    """Malformed flags or descriptors."""


def build_parser():
    ap = argparse.ArgumentParser(prog="geoxform", description="k-plane transforms on Rn, Hn and Sn")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", help="key = value file merged under the flags")
    ap.add_argument("--space", help="rn, hn or sn")
    ap.add_argument("--dim", type=int)
    ap.add_argument("--k", type=int)
    ap.add_argument("--profile", help="const:<v> | ball:<l>[,density=..] | annulus:<a>,<b>[,..] | "
                                      "equator:<l>[,..] | table:<path>")
    ap.add_argument("--h", help="plane distance(s), comma separated or lo:hi:count")
    ap.add_argument("--dist", help="point distance(s) for eval-dual")
    ap.add_argument("--layers", help="layered set a1:b1,a2:b2,...")
    ap.add_argument("--normalization", choices=("indicator", "definition"))
    ap.add_argument("--ineq", help="inequality id, e.g. hn-lp-lr")
    ap.add_argument("--family", help="probe or catalog family")
    ap.add_argument("--grid", help="lambda / truncation grid")
    ap.add_argument("--example", help="counterexample id for probe-blowup")
    ap.add_argument("--scan", action="append", help="NAME=SPEC for scan-region (repeatable)")
    ap.add_argument("--count", type=int, help="random sets for probe-endpoint")
    ap.add_argument("--lemma")
    ap.add_argument("--trials", type=int)
    ap.add_argument("--points", type=int, help="grid size for verify-catalog")
    ap.add_argument("--task", help="fracint task: lower, upper, probe")
    ap.add_argument("--order", type=float, help="fractional order")
    ap.add_argument("--x", help="evaluation point(s) for fracint")
    ap.add_argument("--phi", help="fracint function: const:<v> or power:<e>")
    ap.add_argument("--operator", help="IHalfPlus_L2 or IHalfMinus_L2")
    for key in PARAM_KEYS:
        if key != "n":
            ap.add_argument(f"--{key}", type=float)
    ap.add_argument("--seed", type=int)
    ap.add_argument("--rel-tol", type=float)
    ap.add_argument("--abs-tol", type=float)
    ap.add_argument("--max-depth", type=int)
    ap.add_argument("--output", help="output path (default stdout)")
    ap.add_argument("--format", choices=("json", "csv"))
    return ap


DEFAULTS = {"rel_tol": 1e-8, "abs_tol": 1e-12, "max_depth": 40, "seed": 0, "format": "json"}


def read_config_file(path):
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from exc
    for num, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{num}: expected key = value")
        key, val = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = val
    return out


def resolve_config(args, parser):
    """Flags over config file over defaults, with types from the parser."""
    cfg = {k: v for k, v in vars(args).items() if v is not None}
    if args.config:
        types = {a.dest: a.type for a in parser._actions}
        for key, raw in read_config_file(args.config).items():
            if key not in types or key in ("command", "config"):
                raise UsageError(f"unknown config key {key!r}")
            if key in cfg:
                continue
            if key == "scan":
                cfg[key] = [s.strip() for s in raw.split(";") if s.strip()]
                continue
            try:
                cfg[key] = types[key](raw) if types[key] else raw
            except ValueError as exc:
                raise UsageError(f"config key {key}: {exc}") from exc
    for key, val in DEFAULTS.items():
        cfg.setdefault(key, val)
    cfg.pop("config", None)
    return cfg


# ----------------------------------------------------------------- parsing


def parse_grid(text, name="grid"):
    """``1,2,3``, ``lo:hi:count`` (linear) or ``geom:lo:hi:count``."""
    if text is None:
        return None
    text = str(text).strip()
    try:
        if text.startswith("geom:"):
            lo, hi, cnt = text[5:].split(":")
            return [float(v) for v in np.geomspace(float(lo), float(hi), int(cnt))]
        if ":" in text:
            lo, hi, cnt = text.split(":")
            return [float(v) for v in np.linspace(float(lo), float(hi), int(cnt))]
        vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"bad {name} {text!r}") from exc
    if not vals or any(math.isnan(v) for v in vals):
        raise UsageError(f"bad {name} {text!r}")
    return vals


def parse_profile(space, text, side="x"):
    """Profile descriptor to a RadialProfile."""
    if not text:
        raise UsageError("--profile is required")
    kind, _, rest = text.partition(":")
    parts = [s.strip() for s in rest.split(",")] if rest else []
    density = None
    nums = []
    for part in parts:
        if part.startswith("density="):
            density = part.split("=", 1)[1]
        elif kind != "table":
            try:
                nums.append(float(part))
            except ValueError as exc:
                raise UsageError(f"bad number {part!r} in profile") from exc
    if kind == "const" and len(nums) == 1:
        return radial_transform.constant_profile(space, nums[0], side)
    if kind == "ball" and len(nums) == 1:
        return radial_transform.ball_profile(space, nums[0], density, side)
    if kind == "annulus" and len(nums) == 2:
        return radial_transform.annulus_profile(space, nums[0], nums[1], density, side)
    if kind == "equator" and len(nums) == 1:
        return radial_transform.equator_profile(space, nums[0], density, side)
    if kind == "table" and rest:
        try:
            data = np.loadtxt(rest, delimiter=None if "," not in open(rest).readline() else ",", ndmin=2)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read table {rest!r}: {exc}") from exc
        if data.shape[1] != 2:
            raise UsageError("table needs two columns: distance, value")
        return radial_transform.table_profile(space, data[:, 0], data[:, 1], side)
    raise UsageError(f"bad profile descriptor {text!r}")


def parse_layers(text):
    if not text:
        raise UsageError("--layers is required")
    try:
        pairs = [tuple(float(v) for v in item.split(":")) for item in text.split(",") if item.strip()]
    except ValueError as exc:
        raise UsageError(f"bad layers {text!r}") from exc
    if not pairs or any(len(pr) != 2 for pr in pairs):
        raise UsageError(f"bad layers {text!r}")
    return norms.LayeredRadialSet(tuple(pairs))


def parse_phi(text):
    kind, _, val = (text or "const:1").partition(":")
    try:
        v = float(val)
    except ValueError as exc:
        raise UsageError(f"bad phi {text!r}") from exc
    if kind == "const":
        return lambda y: v
    if kind == "power":
        return lambda y: y ** v
    raise UsageError(f"bad phi {text!r}")


def _space(cfg):
    if "space" not in cfg or "dim" not in cfg:
        raise UsageError("--space and --dim are required")
    return Space(cfg["space"], cfg["dim"])


def _k(cfg, space):
    if "k" not in cfg:
        raise UsageError("--k is required")
    k = cfg["k"]
    if not 1 <= k <= space.dim - 1:
        raise UsageError(f"k must lie in [1, {space.dim - 1}]")
    return k


def _quad(cfg):
    if not 0 <= cfg["seed"] < 2 ** 64:
        raise UsageError("--seed must be a 64-bit unsigned integer")
    spec = QuadratureSpec(cfg["rel_tol"], cfg["abs_tol"], cfg["max_depth"])
    if not (spec.rel_tol > 0 and spec.abs_tol >= 0 and spec.max_depth >= 1):
        raise UsageError("tolerances must be positive and max_depth >= 1")
    return spec


def _params(cfg):
    """Exponent parameters for condition checks and probes."""
    out = {key: cfg[key] for key in PARAM_KEYS if key in cfg and key != "n"}
    if "dim" in cfg:
        out["n"] = cfg["dim"]
    if "k" in cfg:
        out["k"] = cfg["k"]
    return out


def thread_count():
    raw = os.environ.get("GEOXFORM_THREADS")
    if raw is None:
        return 1
    try:
        val = int(raw)
    except ValueError as exc:
        raise UsageError("GEOXFORM_THREADS must be a positive integer") from exc
    if val < 1:
        raise UsageError("GEOXFORM_THREADS must be a positive integer")
    return val


def _map(fn, items):
    """Order-preserving map over grid points, threaded when allowed."""
    workers = thread_count()
    if workers == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _with_error(fn, quad):
    """Value at the requested tolerance and the change under a 100x tighter one."""
    val = fn(quad)
    fine = fn(quad.tightened(100.0))
    return val, abs(fine - val)


# ---------------------------------------------------------------- commands


def cmd_eval_transform(cfg, quad):
    space = _space(cfg)
    k = _k(cfg, space)
    prof = parse_profile(space, cfg.get("profile"))
    hs = parse_grid(cfg.get("h"), "h")
    if hs is None:
        raise UsageError("--h is required")
    for h in hs:
        if h < 0 or (space.spherical and h >= math.pi / 2):
            raise UsageError(f"h = {h} outside the plane distance range")

    def row(h):
        val, err = _with_error(lambda q: radial_transform.kplane_radial(space, k, prof, h, q), quad)
        return {"h": h, "value": val, "error_estimate": err}

    rows = _map(row, hs)
    return rows, [f"radial/{space.tag}"]


def cmd_eval_dual(cfg, quad):
    space = _space(cfg)
    k = _k(cfg, space)
    prof = parse_profile(space, cfg.get("profile"), side="xi")
    ds = parse_grid(cfg.get("dist"), "dist")
    if ds is None:
        raise UsageError("--dist is required")
    for d in ds:
        if not 0 < d <= space.radial_limit:
            raise UsageError(f"distance {d} outside the radial range")

    def row(d):
        val, err = _with_error(lambda q: radial_transform.dual_kplane_radial(space, k, prof, d, q), quad)
        return {"dist": d, "value": val, "error_estimate": err}

    return _map(row, ds), [f"dual/{space.tag}"]


def cmd_eval_general(cfg, quad):
    space = _space(cfg)
    k = _k(cfg, space)
    prof = parse_profile(space, cfg.get("profile"))
    hs = parse_grid(cfg.get("h"), "h")
    if hs is None:
        raise UsageError("--h is required")
    for h in hs:
        if h <= 0 or (space.spherical and h >= math.pi / 2):
            raise UsageError(f"h = {h} outside (0, plane distance limit)")
    fn = AmbientFunction.from_profile(space, prof)
    rng = np.random.default_rng(cfg["seed"])
    coords = [random_coord(space, k, h, rng) for h in hs]

    def row(coord):
        val = kplane_general(space, coord, fn, quad)
        radial = radial_transform.kplane_radial(space, k, prof, coord.h, quad)
        return {"h": coord.h, "value": val, "radial_value": radial,
                "error_estimate": abs(val - radial)}

    return _map(row, coords), [f"general/{space.tag}", f"radial/{space.tag}"]


def _weight(cfg, p_default=None):
    p = cfg.get("p", p_default)
    if p is None:
        raise UsageError("--p is required")
    return norms.WeightConfig(cfg.get("alpha1", cfg.get("alpha", 0.0)), cfg.get("alpha2", 0.0), p)


def cmd_norm(cfg, quad):
    space = _space(cfg)
    prof = parse_profile(space, cfg.get("profile"))
    w = _weight(cfg)
    val, err = _with_error(lambda q: norms.lp_norm_radial(space, prof, w, q), quad)
    return [{"value": val, "error_estimate": err}], [f"norm/lp/{space.tag}"]


def cmd_lorentz_norm(cfg, quad):
    space = _space(cfg)
    layered = parse_layers(cfg.get("layers"))
    w = _weight(cfg)
    mode = cfg.get("normalization", "indicator")
    val, err = _with_error(lambda q: norms.lorentz_p1_norm(space, layered, w, q, mode), quad)
    return [{"value": val, "error_estimate": err, "normalization": mode}], ["norm/lorentz-p1"]


def _ineq(cfg):
    if "ineq" not in cfg:
        raise UsageError("--ineq is required")
    return verify.canonical_id(cfg["ineq"])


def cmd_check_conditions(cfg, quad):
    ineq = _ineq(cfg)
    rep = verify.condition_check(ineq, _params(cfg))
    return [rep.to_dict()], list(rep.citations)


def parse_scans(specs):
    if not specs:
        raise UsageError("--scan NAME=SPEC is required")
    out = []
    for spec in specs:
        name, sep, grid = spec.partition("=")
        name = name.strip()
        if not sep or name not in PARAM_KEYS + ("k",):
            raise UsageError(f"bad scan {spec!r}")
        out.append((name, parse_grid(grid, name)))
    return out


def cmd_scan_region(cfg, quad):
    ineq = _ineq(cfg)
    scans = parse_scans(cfg.get("scan"))
    base = _params(cfg)
    points = [{}]
    for name, grid in scans:
        points = [dict(pt, **{name: v}) for pt in points for v in grid]
    # reject malformed inputs before the sweep
    verify.condition_check(ineq, dict(base, **points[0]))

    def row(pt):
        rep = verify.condition_check(ineq, dict(base, **pt))
        return {**pt, "necessary_ok": rep.necessary_ok, "sufficient_ok": rep.sufficient_ok,
                "standing_ok": rep.standing_ok, "endpoint_flags": ";".join(rep.endpoint_flags)}

    return _map(row, points), list(verify.condition_check(ineq, dict(base, **points[0])).citations)


def cmd_probe_ratio(cfg, quad):
    ineq = _ineq(cfg)
    if "family" not in cfg:
        raise UsageError("--family is required")
    fam = verify.probe_family(cfg["family"])
    params = _params(cfg)
    verify._probe_setup(ineq, params)
    res = verify.ratio_probe(ineq, params, fam, parse_grid(cfg.get("grid")), quad)
    rows = [{"lambda": lam, "ratio": r} for lam, r in zip(res.grid, res.ratios)]
    summary = res.to_dict()
    return rows, [f"probe-family/{fam.name}"], summary


def cmd_probe_blowup(cfg, quad):
    if cfg.get("example") not in verify.BLOWUP_IDS:
        raise UsageError(f"--example must be one of {', '.join(verify.BLOWUP_IDS)}")
    res = verify.blowup_probe(cfg["example"], _params(cfg), parse_grid(cfg.get("grid")), quad)
    rows = [{"grid": g, "value": v} for g, v in zip(res.grid, res.values)]
    return rows, [f"counterexample/{res.example_id}"], res.to_dict()


def cmd_probe_endpoint(cfg, quad):
    ineq = _ineq(cfg)
    count = cfg.get("count", 200)
    if count < 1:
        raise UsageError("--count must be positive")
    res = verify.endpoint_lorentz_probe(ineq, _params(cfg), count, cfg["seed"], quad)
    rows = [{"lambda": g, "ratio": r} for g, r in zip(res.sweep_grid, res.sweep_ratios)]
    return rows, [f"endpoint/{ineq}"], res.to_dict()


def cmd_verify_catalog(cfg, quad):
    names = [cfg["family"]] if "family" in cfg else list(radial_transform.FAMILIES)
    points = cfg.get("points", 20)
    if points < 2:
        raise UsageError("--points must be at least 2")
    for name in names:
        if name not in radial_transform.FAMILIES:
            raise UsageError(f"unknown catalog family {name!r}")
    rows, labels = [], []
    for name in names:
        tag = radial_transform.FAMILIES[name]
        dim = cfg.get("dim", 4)
        k = cfg.get("k", 2 if dim > 2 else 1)
        space = Space(tag, dim)
        fam = radial_transform.ClosedFormFamily(name, dict(CATALOG_DEFAULTS[name]))
        grid = _catalog_grid(space, fam, points)
        const = radial_transform.calibrate_constant(space, k, fam, grid[len(grid) // 2], quad)
        for x in grid:
            closed = radial_transform.closed_form_eval(space, k, fam, x, const)
            numeric = radial_transform.family_quadrature(space, k, fam, x, quad)
            rel = abs(closed - numeric) / max(abs(numeric), 1e-300)
            rows.append({"family": name, "x": x, "closed_form": closed, "quadrature": numeric,
                         "relative_error": rel, "calibration_constant": const})
        labels.append(f"closed-form/{name}")
    return rows, labels


def _catalog_grid(space, fam, points):
    if fam.is_dual:
        hi = math.pi / 2 * 0.95 if space.spherical else 3.0
        return [float(v) for v in np.linspace(0.05, hi, points)]
    lam = fam.params["lam"]
    if fam.family_id.startswith("SnEquator"):
        return [float(v) for v in np.linspace(0.05, math.pi / 2 * 0.95, points)]
    return [float(v) for v in np.linspace(0.02, lam * 0.98, points)]


def cmd_lemma_suite(cfg, quad):
    lemma = cfg.get("lemma")
    if lemma not in verify.LEMMA_IDS:
        raise UsageError(f"--lemma must be one of {', '.join(verify.LEMMA_IDS)}")
    trials = cfg.get("trials", 1000)
    if trials < 1:
        raise UsageError("--trials must be positive")
    rep = verify.lemma_suite(lemma, trials, cfg["seed"])
    return [rep.to_dict()], [f"lemma/{lemma}"]


def cmd_fracint(cfg, quad):
    task = cfg.get("task", "lower")
    if task == "probe":
        op = cfg.get("operator", "IHalfPlus_L2")
        if op not in ("IHalfPlus_L2", "IHalfMinus_L2"):
            raise UsageError("--operator must be IHalfPlus_L2 or IHalfMinus_L2")
        psi = fracint.PsiParams("HalfLinePlus" if op == "IHalfPlus_L2" else "IntervalMinus",
                                a=cfg.get("a", 1.0), gamma=cfg.get("gamma", 1.25))
        res = fracint.divergence_probe(op, psi, parse_grid(cfg.get("grid")), quad)
        rows = [{"index": i, "value": v} for i, v in enumerate(res.values)]
        summary = {"verdict": res.verdict, "source_norm": res.source_norm, "source_change": res.source_change}
        return rows, [f"fracint/{op}"], summary
    if task not in ("lower", "upper"):
        raise UsageError("--task must be lower, upper or probe")
    order = cfg.get("order")
    if order is None or not order > 0:
        raise UsageError("--order must be positive")
    xs = parse_grid(cfg.get("x"), "x")
    if xs is None:
        raise UsageError("--x is required")
    phi = parse_phi(cfg.get("phi"))
    a = cfg.get("a", 0.0)
    if task == "lower":
        if any(x <= a for x in xs):
            raise UsageError("the left-sided integral needs x > a")
        fn = lambda x, q: fracint.rl_lower(order, a, phi, x, q)  # noqa: E731
    else:
        if any(x <= 0 for x in xs):
            raise UsageError("the right-sided integral needs x > 0")
        fn = lambda x, q: fracint.rl_upper_inf(order, phi, x, q)  # noqa: E731

    def row(x):
        val, err = _with_error(lambda q: fn(x, q), quad)
        return {"x": x, "value": val, "error_estimate": err}

    return _map(row, xs), [f"fracint/rl-{task}"]


HANDLERS = {
    "eval-transform": cmd_eval_transform,
    "eval-dual": cmd_eval_dual,
    "eval-general": cmd_eval_general,
    "norm": cmd_norm,
    "lorentz-norm": cmd_lorentz_norm,
    "check-conditions": cmd_check_conditions,
    "scan-region": cmd_scan_region,
    "probe-ratio": cmd_probe_ratio,
    "probe-blowup": cmd_probe_blowup,
    "probe-endpoint": cmd_probe_endpoint,
    "verify-catalog": cmd_verify_catalog,
    "lemma-suite": cmd_lemma_suite,
    "fracint": cmd_fracint,
}


# ------------------------------------------------------------------ output


def _jsonable(value):
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.generic):
        return _jsonable(value.item())
    return value


def render_json(command, cfg, rows, labels, summary=None):
    doc = {
        "schema": SCHEMA_VERSION,
        "command": command,
        "config": cfg,
        "rows": rows,
        "labels": labels,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
    }
    if summary is not None:
        doc["summary"] = summary
    if command in ("check-conditions", "scan-region"):
        doc["condition_reports"] = rows
    if len(rows) == 1:
        for key in ("value", "necessary_ok", "sufficient_ok", "standing_ok"):
            if key in rows[0]:
                doc[key] = rows[0][key]
    return json.dumps(_jsonable(doc), indent=2, sort_keys=False, allow_nan=False) + "\n"


def render_csv(rows):
    buf = io.StringIO()
    if rows:
        header = list(rows[0])
        for row in rows[1:]:
            header += [k for k in row if k not in header]
        writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _jsonable(v) for k, v in row.items()})
    return buf.getvalue()


def run(argv=None):
    """Run one command; returns the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PRECONDITION
    try:
        cfg = resolve_config(args, parser)
        quad = _quad(cfg)
        thread_count()
        out = HANDLERS[args.command](cfg, quad)
        rows, labels = out[0], out[1]
        summary = out[2] if len(out) > 2 else None
        if cfg["format"] == "csv":
            text = render_csv(rows)
        else:
            text = render_json(args.command, cfg, rows, labels, summary)
        if cfg.get("output") and cfg["output"] != "-":
            with open(cfg["output"], "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    except PreconditionError as exc:
        print(f"geoxform: rejected input: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except NumericalFailure as exc:
        print(f"geoxform: numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (GeoxformError, ValueError, TypeError) as exc:
        print(f"geoxform: rejected input: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (ArithmeticError, OSError) as exc:
        print(f"geoxform: numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except Exception as exc:  # noqa: BLE001
        print(f"geoxform: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
