"""Command-line front end: ``entangled-gup <command> [options]``.

Commands: models, bound, minimize, simulate, estimate, curve. Every number
printed comes straight from a library call; floats are written with 12
significant digits so repeated runs are byte-identical. The default output
format comes from ``ENTANGLED_GUP_FORMAT`` (table, csv or json).
"""
import argparse
import csv
import io
import json
import os
import sys
from enum import Enum

import numpy as np

from . import gup_models as gm
from . import kim_shih as ks
from . import minimal_uncertainty as mu
from . import pair_state as ps
from .errors import DomainError, GupError

FORMATS = ("table", "csv", "json")
FORMAT_ENV = "ENTANGLED_GUP_FORMAT"


def _fmt(value):
    if isinstance(value, bool) or isinstance(value, np.bool_):
        return "true" if value else "false"
    if value is None:
        return "n/a"
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.12g}"
    return str(value)


def _json_value(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if value is None:
        return None
    if isinstance(value, (float, np.floating)):
        return float(f"{float(value):.12g}")
    if isinstance(value, (int, np.integer)):
        return int(value)
    return _fmt(value)


def render_record(pairs, fmt):
    """One flat record of (key, value) pairs."""
    if fmt == "json":
        return json.dumps({k: _json_value(v) for k, v in pairs}, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("key", "value"))
        writer.writerows((k, _fmt(v)) for k, v in pairs)
        return buf.getvalue()
    return "".join(f"{k} = {_fmt(v)}\n" for k, v in pairs)


def render_rows(header, rows, fmt):
    if fmt == "json":
        return json.dumps([{h: _json_value(v) for h, v in zip(header, r)} for r in rows], indent=2) + "\n"
    cells = [[_fmt(v) for v in r] for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(cells)
        return buf.getvalue()
    widths = [max(len(h), *(len(c[i]) for c in cells)) if cells else len(h) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


# -- argument helpers -----------------------------------------------------------

def _add_model_args(p, required=True):
    p.add_argument("--model", required=required, help="hup, kmm, adv, pedram or exp")
    p.add_argument("--beta", type=float, help="beta (kmm, pedram, exp)")
    p.add_argument("--alpha", type=float, help="alpha (adv)")
    p.add_argument("--param", type=float, help="deformation parameter, any model")
    p.add_argument("--hbar", type=float, default=1.0)


def _model(args):
    kind = gm.GupKind.parse(args.model)
    given = {k: getattr(args, k) for k in ("beta", "alpha", "param") if getattr(args, k) is not None}
    if len(given) > 1:
        raise DomainError("give only one of --beta, --alpha, --param")
    if "alpha" in given and kind is not gm.GupKind.ADV:
        raise DomainError(f"--alpha applies to adv only, not {kind.value}")
    if "beta" in given and kind is gm.GupKind.ADV:
        raise DomainError("adv takes --alpha, not --beta")
    if not given and kind is not gm.GupKind.HUP:
        raise DomainError(f"{kind.value} needs --{kind.symbol} (or --param)")
    return gm.GupModel(kind, next(iter(given.values()), 0.0))


def _model_pairs(model):
    return [("model", model.kind.value), ("param_name", model.kind.symbol), ("param", model.param)]


# -- commands -------------------------------------------------------------------

def cmd_models(args, fmt):
    header = ("model", "param", "commutator_factor", "entangled_bound", "entangled_min")
    rows = [(k.value, k.symbol, *gm.MODEL_FORMULAS[k]) for k in gm.GupKind]
    return render_rows(header, rows, fmt)


def cmd_bound(args, fmt):
    model = _model(args)
    stats = gm.MomentumStats(args.dp, args.mean_p)
    ctx = gm.BoundContext(model, stats, hbar=args.hbar, opposite_momenta=not args.same_direction)
    pair_rhs = gm.entangled_pair_rhs(ctx)
    single_rhs = gm.single_particle_rhs(model, stats, args.hbar)
    curve = gm.bound_curve(ctx, args.dp, 2.0 * args.dp, 2)
    pairs = _model_pairs(model) + [
        ("hbar", args.hbar),
        ("dp", stats.dp),
        ("mean_p", stats.mean_p),
        ("mean_p_sq", stats.mean_p_sq),
        ("gamma", ctx.gamma),
        ("opposite_momenta", ctx.opposite_momenta),
        ("commutator_factor_at_mean_p", float(gm.commutator_factor(model, stats.mean_p))),
        ("entangled_pair_rhs", pair_rhs),
        ("single_particle_rhs", single_rhs),
        ("entangled_dq_lower_bound", float(curve[0, 1])),
    ]
    return render_record(pairs, fmt)


def cmd_minimize(args, fmt):
    model = _model(args)
    query = mu.MinimalLengthQuery(model, entangled=not args.separable, gamma=args.gamma, hbar=args.hbar)
    pairs = _model_pairs(model) + [
        ("hbar", args.hbar),
        ("entangled", query.entangled),
        ("gamma", query.gamma),
    ]
    if query.gamma == 0:
        exact = mu.analytic_min(query)
        pairs += [("dq_min", exact.dq_min), ("dp_star", exact.dp_star), ("method", exact.method)]
    numeric = mu.numeric_min(query, tol=args.tol)
    pairs += [("numeric_dq_min", numeric.dq_min), ("numeric_dp_star", numeric.dp_star)]
    if args.n_particles is not None:
        eff = mu.effective_parameter(model.param, args.n_particles, model.kind)
        pairs += [
            ("n_particles", args.n_particles),
            ("effective_param", eff),
            ("minimal_length", mu.minimal_length(model, model.param, args.n_particles, args.hbar)),
        ]
    return render_record(pairs, fmt)


def _grid(args):
    x_min = -args.x_max if args.x_min is None else args.x_min
    return ps.GridSpec(x_min, args.x_max, args.grid_n)


def cmd_simulate(args, fmt):
    if args.load:
        state = ps.load_state(args.load)
    else:
        grid = _grid(args)
        if args.state == "product":
            s1 = args.sigma if args.sigma1 is None else args.sigma1
            s2 = args.sigma if args.sigma2 is None else args.sigma2
            state = ps.make_product_state(grid, args.center1, s1, args.k1, args.center2, s2, args.k2, args.hbar)
        elif args.state == "correlated":
            state = ps.make_correlated_gaussian(grid, args.sigma_plus, args.sigma_minus, args.k_total, args.hbar)
        else:
            rng = np.random.default_rng(args.seed)
            state = ps.make_random_state(grid, rng, n_terms=args.terms, symmetric=not args.asymmetric,
                                         hbar=args.hbar)
    if args.save:
        ps.save_state(state, args.save)
    report = ps.check_inequalities(state)
    g = state.grid
    pairs = [
        ("state", "file" if args.load else args.state),
        ("grid_n", g.n), ("x_min", g.x_min), ("x_max", g.x_max), ("hbar", state.hbar),
    ]
    for name in ("dq1", "dq2", "dp1", "dp2", "mean_q1", "mean_q2", "mean_p1", "mean_p2", "cq", "cp",
                 "lhs_pair", "rhs_pair", "lhs_symmetric", "rhs_symmetric", "symmetric",
                 "schwarz_q_ok", "schwarz_p_ok", "pair_ok", "symmetric_ok", "robertson_ok"):
        pairs.append((name, getattr(report, name)))
    pairs.append(("all_ok", report.all_ok))
    for i, note in enumerate(report.diagnostics):
        pairs.append((f"diagnostic.{i}", note))
    return render_record(pairs, fmt)


def cmd_estimate(args, fmt):
    if args.data:
        record = ks.load_experiment(args.data)
    else:
        record = ks.parse_experiment(ks.default_record_text())
    if args.method == "both":
        methods = list(ks.RootMethod)
    else:
        methods = [ks.RootMethod.parse(args.method)]
    estimates = [ks.estimate_bound(record, m, hbar=args.hbar) for m in methods]
    return render_record(ks.report_lines(estimates, record), fmt)


def cmd_curve(args, fmt):
    model = _model(args)
    ctx = gm.BoundContext(model, gm.MomentumStats(args.dp_min, args.mean_p), hbar=args.hbar)
    data = gm.bound_curve(ctx, args.dp_min, args.dp_max, args.n, separable=args.separable)
    return render_rows(("dp", "dq_lower_bound"), [tuple(map(float, row)) for row in data], fmt)


COMMANDS = {
    "models": cmd_models,
    "bound": cmd_bound,
    "minimize": cmd_minimize,
    "simulate": cmd_simulate,
    "estimate": cmd_estimate,
    "curve": cmd_curve,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="entangled-gup", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=FORMATS, help=f"output format (default: ${FORMAT_ENV} or table)")
        p.add_argument("-o", "--output", help="write to this file instead of stdout")

    common(sub.add_parser("models", help="list the deformation models"))

    p = sub.add_parser("bound", help="evaluate single-particle and entangled bounds")
    _add_model_args(p)
    p.add_argument("--dp", type=float, required=True, help="momentum spread")
    p.add_argument("--mean-p", type=float, default=0.0, help="per-particle mean momentum")
    p.add_argument("--same-direction", action="store_true",
                   help="do not cancel the ADV linear term (momenta not opposite)")
    common(p)

    p = sub.add_parser("minimize", help="minimal position uncertainty")
    _add_model_args(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--entangled", action="store_true", help="entangled pair (default)")
    mode.add_argument("--separable", action="store_true")
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--n-particles", type=int, help="also report the minimal length for N particles")
    common(p)

    p = sub.add_parser("simulate", help="two-particle grid state and inequality report")
    p.add_argument("--state", choices=("product", "correlated", "random"), default="product")
    p.add_argument("--load", help="read a pair-state fixture instead of building one")
    p.add_argument("--save", help="write the state as a pair-state fixture")
    p.add_argument("--grid-n", type=int, default=512)
    p.add_argument("--x-max", type=float, default=32.0)
    p.add_argument("--x-min", type=float, help="default: -x_max")
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--sigma1", type=float)
    p.add_argument("--sigma2", type=float)
    p.add_argument("--center1", type=float, default=0.0)
    p.add_argument("--center2", type=float, default=0.0)
    p.add_argument("--k1", type=float, default=0.0)
    p.add_argument("--k2", type=float, default=0.0)
    p.add_argument("--sigma-plus", type=float, default=2.0)
    p.add_argument("--sigma-minus", type=float, default=1.0)
    p.add_argument("--k-total", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--terms", type=int, default=3)
    p.add_argument("--asymmetric", action="store_true", help="skip exchange symmetrization")
    common(p)

    p = sub.add_parser("estimate", help="minimal-length upper bound from the Kim-Shih data")
    p.add_argument("--data", help="experiment record file (default: bundled Kim-Shih record)")
    p.add_argument("--method", default="both", help="paper-series, exact-quadratic or both")
    p.add_argument("--hbar", type=float, default=1.0)
    common(p)

    p = sub.add_parser("curve", help="CSV of the minimal-dQ curve over a dP range")
    _add_model_args(p)
    p.add_argument("--dp-min", type=float, required=True)
    p.add_argument("--dp-max", type=float, required=True)
    p.add_argument("--n", type=int, default=101)
    p.add_argument("--mean-p", type=float, default=0.0)
    p.add_argument("--separable", action="store_true")
    common(p)
    return parser


def _resolve_format(args):
    if args.format:
        return args.format
    env = os.environ.get(FORMAT_ENV, "").strip().lower()
    if env:
        if env not in FORMATS:
            raise GupError(f"${FORMAT_ENV} must be one of {', '.join(FORMATS)}, got {env!r}")
        return env
    return "csv" if args.command == "curve" else "table"


def run(argv=None, stdout=None, stderr=None):
    """Parse ``argv``, run one command, return the exit status."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    args = build_parser().parse_args(argv)
    try:
        fmt = _resolve_format(args)
        text = COMMANDS[args.command](args, fmt)
    except (GupError, OSError) as exc:
        print(f"{args.command}: error: {exc}", file=stderr)
        return 1
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
