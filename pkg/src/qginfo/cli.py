"""Command-line front end.

Subcommands: measures (closed-form and/or quadrature measure sets), verify
(inequality reports for a selectable density), sweep (concurrent parameter
grid to CSV), sample (reproducible draws to CSV), minimize (variational
solver). Every emitted report embeds the resolved configuration. Exit codes
form a stable contract: 0 success, 2 invalid input, 3 numeric divergence or
non-convergence, 4 inequality violated beyond tolerance.
"""

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, DivergenceError, DomainError, ZeroDensityError
from .inequalities import (
    DEFAULT_EQ_TOL,
    DEFAULT_REL_TOL,
    INEQUALITY_NAMES,
    check_all,
)
from .measures import (
    RadialDensity,
    gaussian_mixture,
    measure_all,
    table_profile,
    uniform_ball,
)
from .qgaussian import (
    QGaussianParams,
    closed_measures,
    partition_fn,
    radial_density,
)
from .sampling import RNG_ALGORITHM, empirical_moment, sample
from .variational import (
    INITS,
    check_proposition1,
    extremal_profile,
    make_problem,
    solve,
)

__all__ = ["RunConfig", "main", "cmd_measures", "cmd_verify", "cmd_sweep", "cmd_sample", "cmd_minimize"]

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_DIVERGED = 3
EXIT_VIOLATED = 4


@dataclass(frozen=True)
class RunConfig:
    """Resolved invocation, echoed into every report so runs are replayable."""

    subcommand: str
    params: dict = field(default_factory=dict)
    density: str | None = None
    tolerances: dict | None = None
    seed: int | None = None
    count: int | None = None
    fmt: str = "json"
    out: str | None = None
    extra: dict | None = None

    def as_dict(self) -> dict:
        d = {"subcommand": self.subcommand, "params": self.params, "format": self.fmt}
        if self.density is not None:
            d["density"] = self.density
        if self.tolerances is not None:
            d["tolerances"] = self.tolerances
        if self.seed is not None:
            d["seed"] = self.seed
        if self.count is not None:
            d["count"] = self.count
        if self.extra:
            d.update(self.extra)
        return d


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, default=float)


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _params_from(args) -> QGaussianParams:
    return QGaussianParams(n=args.n, alpha=args.alpha, q=args.q, gamma=args.gamma)


def _gate_flags(params: QGaussianParams):
    # named validity violations surface as invalid input, not as a late crash
    if not params.mq_finite:
        bound = params.n / (params.n + params.alpha)
        raise DomainError(
            f"Mq-finiteness violated: requires q > n/(n+alpha) = {bound:g}, got q = {params.q:g}"
        )
    if not params.fisher_finite:
        raise DomainError(
            "Fisher-finiteness violated: requires alpha > 1 and "
            f"q > max(1-alpha, n/(n+alpha)), got alpha = {params.alpha:g}, q = {params.q:g}"
        )


def _resolve_density(args) -> RadialDensity:
    spec = args.density
    if spec == "qgaussian":
        return radial_density(_params_from(args))
    if spec.startswith("mixture:"):
        body = spec[len("mixture:"):]
        components = []
        for part in body.split(";"):
            fields = part.split(",")
            if len(fields) != 3:
                raise DomainError(f"mixture component {part!r} must be weight,center,variance")
            w, center, var = (float(v) for v in fields)
            if center != 0.0:
                raise DomainError("mixture centers must be 0 (only radial densities are supported)")
            components.append((w, var))
        return gaussian_mixture(args.n, components, descriptor=spec)
    if spec == "uniform-ball" or spec.startswith("uniform-ball:"):
        radius = 1.0
        if ":" in spec:
            radius = float(spec.split(":", 1)[1])
        return uniform_ball(args.n, radius)
    if spec.startswith("profile:"):
        path = spec[len("profile:"):]
        radii, values = [], []
        with open(path, newline="", encoding="utf-8") as fh:
            for row in csv.reader(fh):
                if not row or row[0].startswith("#"):
                    continue
                try:
                    r, v = float(row[0]), float(row[1])
                except ValueError:
                    continue  # header line
                radii.append(r)
                values.append(v)
        return table_profile(args.n, radii, values, descriptor=spec)
    raise DomainError(
        f"unknown density selector {spec!r}; expected qgaussian, mixture:..., "
        "uniform-ball[:radius], or profile:path"
    )


def cmd_measures(args) -> int:
    params = _params_from(args)
    _gate_flags(params)
    config = RunConfig(
        subcommand="measures",
        params={"n": params.n, "alpha": params.alpha, "q": params.q, "gamma": params.gamma},
        fmt=args.format,
        out=args.out,
        extra={"method": args.method},
    )
    payload: dict = {"config": config.as_dict(), "Z": partition_fn(params)}
    if args.method in ("closed", "both"):
        payload["closed"] = closed_measures(params).as_dict()
    if args.method in ("quadrature", "both"):
        payload["quadrature"] = measure_all(radial_density(params), params.alpha, params.q).as_dict()
    if args.method == "both":
        gaps = {}
        for key in ("Mq", "Hq", "Sq", "Nq", "m_alpha", "I_bq"):
            c, e = payload["closed"][key], payload["quadrature"][key]
            gaps[key] = abs(c - e) / max(abs(c), 1e-300)
        payload["max_rel_gap"] = max(gaps.values())
    if args.format == "csv":
        buf = io.StringIO()
        buf.write(f"# config: {json.dumps(config.as_dict(), default=float)}\n")
        writer = csv.writer(buf)
        columns = [m for m in ("closed", "quadrature") if m in payload]
        writer.writerow(["measure", *columns])
        for key in ("Mq", "Hq", "Sq", "Nq", "m_alpha", "I_bq"):
            writer.writerow([key.lower(), *(repr(payload[m][key]) for m in columns)])
        _emit(buf.getvalue(), args.out)
    else:
        _emit(_json_text(payload), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = INEQUALITY_NAMES if args.all or not args.ineq else tuple(args.ineq)
    density = _resolve_density(args)
    config = RunConfig(
        subcommand="verify",
        params={"n": args.n, "alpha": args.alpha, "q": args.q, "gamma": args.gamma},
        density=args.density,
        tolerances={"rel_tol": args.rel_tol, "eq_tol": args.eq_tol},
        fmt=args.format,
        out=args.out,
        extra={"inequalities": list(names)},
    )
    reports = []
    skipped = []
    for name in names:
        try:
            reports.extend(
                check_all(density, args.alpha, args.q, rel_tol=args.rel_tol,
                          eq_tol=args.eq_tol, names=(name,))
            )
        except DomainError as exc:
            if args.all:
                # --all runs whatever applies and records why the rest do not
                skipped.append({"name": name, "reason": str(exc)})
            else:
                raise
    payload = {
        "config": config.as_dict(),
        "reports": [r.as_dict() for r in reports],
        "skipped": skipped,
    }
    if args.format == "csv":
        buf = io.StringIO()
        buf.write(f"# config: {json.dumps(config.as_dict(), default=float)}\n")
        writer = csv.writer(buf)
        writer.writerow(["name", "lhs", "rhs", "ratio", "deficit", "passes", "equality"])
        for r in reports:
            writer.writerow([r.name, repr(r.lhs), repr(r.rhs), repr(r.ratio),
                             repr(r.deficit), r.passes, r.equality])
        _emit(buf.getvalue(), args.out)
    else:
        _emit(_json_text(payload), args.out)
    if any(not r.passes for r in reports):
        return EXIT_VIOLATED
    return EXIT_OK


def _parse_grid(text: str, integer: bool = False) -> list:
    """Comma list of values and/or start:stop:step ranges (stop inclusive within 1e-9)."""
    values: list[float] = []
    for segment in text.split(","):
        if segment == "":
            continue
        if ":" in segment:
            pieces = segment.split(":")
            if len(pieces) != 3:
                raise DomainError(f"range spec {segment!r} must be start:stop:step")
            start, stop, step = (float(p) for p in pieces)
            if step <= 0:
                raise DomainError("range step must be positive")
            v = start
            while v <= stop + 1e-9:
                values.append(v)
                v += step
        else:
            values.append(float(segment))
    if integer:
        out = []
        for v in values:
            if int(v) != v:
                raise DomainError(f"grid value {v!r} must be an integer")
            out.append(int(v))
        return out
    return values


_SWEEP_MEASURES = ("Mq", "Hq", "Sq", "Nq", "m_alpha", "I_bq")
_SWEEP_DEFICITS = tuple("deficit_" + n.replace("-", "_") for n in INEQUALITY_NAMES)


def _sweep_row(tup) -> dict:
    n, alpha, q, gamma = tup
    row = {"n": n, "alpha": alpha, "q": q, "gamma": gamma}
    notes = []
    try:
        params = QGaussianParams(n=n, alpha=alpha, q=q, gamma=gamma)
        _gate_flags(params)
        ms = closed_measures(params)
        row.update({key: getattr(ms, key) for key in _SWEEP_MEASURES})
        density = radial_density(params)
        for name, column in zip(INEQUALITY_NAMES, _SWEEP_DEFICITS):
            try:
                report = check_all(density, alpha, q, names=(name,))[0]
                row[column] = report.deficit
            except DomainError as exc:
                notes.append(f"{name}: {exc}")
    except (DomainError, DivergenceError) as exc:
        notes.append(str(exc))
    row["error"] = "; ".join(notes)
    return row


def cmd_sweep(args) -> int:
    grids = {
        "n": _parse_grid(args.n, integer=True),
        "alpha": _parse_grid(args.alpha),
        "q": _parse_grid(args.q),
        "gamma": _parse_grid(args.gamma),
    }
    tuples = [
        (n, alpha, q, gamma)
        for n in grids["n"]
        for alpha in grids["alpha"]
        for q in grids["q"]
        for gamma in grids["gamma"]
    ]
    if not tuples:
        raise DomainError("sweep grid is empty")
    config = RunConfig(
        subcommand="sweep", params={k: v for k, v in grids.items()}, fmt="csv", out=args.out
    )
    workers = min(8, len(tuples))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(_sweep_row, tuples))  # map preserves grid order
    columns = ["n", "alpha", "q", "gamma", *(_SWEEP_MEASURES), *(_SWEEP_DEFICITS), "error"]
    buf = io.StringIO()
    buf.write(f"# config: {json.dumps(config.as_dict(), default=float)}\n")
    writer = csv.writer(buf)
    writer.writerow([c.lower() for c in columns])
    for row in rows:
        writer.writerow([repr(row[c]) if isinstance(row.get(c), float) else row.get(c, "")
                         for c in columns])
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_sample(args) -> int:
    params = _params_from(args)
    config = RunConfig(
        subcommand="sample",
        params={"n": params.n, "alpha": params.alpha, "q": params.q, "gamma": params.gamma},
        seed=args.seed,
        count=args.count,
        fmt="csv",
        out=args.out,
        extra={"rng": RNG_ALGORITHM},
    )
    batch = sample(params, args.count, args.seed)
    buf = io.StringIO()
    buf.write(f"# config: {json.dumps(config.as_dict(), default=float)}\n")
    writer = csv.writer(buf)
    writer.writerow([f"x{i + 1}" for i in range(params.n)])
    for point in batch.points:
        writer.writerow([repr(float(v)) for v in point])
    _emit(buf.getvalue(), args.out)
    if args.out:
        estimate, se = empirical_moment(batch, params.alpha)
        summary = {
            "config": config.as_dict(),
            "empirical_m_alpha": estimate,
            "std_error": se,
        }
        print(_json_text(summary))
    return EXIT_OK


def cmd_minimize(args) -> int:
    problem = make_problem(args.n, args.alpha, args.q, args.moment, num_nodes=args.nodes)
    solution = solve(problem, init=args.init)
    lhs, rhs, gap = check_proposition1(solution, problem)
    config = RunConfig(
        subcommand="minimize",
        params={"n": args.n, "alpha": args.alpha, "q": args.q},
        fmt=args.format,
        out=args.out,
        extra={"moment": args.moment, "nodes": args.nodes, "init": args.init},
    )
    if args.format == "csv":
        closed = extremal_profile(problem)
        buf = io.StringIO()
        buf.write(f"# config: {json.dumps(config.as_dict(), default=float)}\n")
        writer = csv.writer(buf)
        writer.writerow(["r", "u", "closed_form_u"])
        for r, u, cu in zip(problem.grid, solution.u_values, closed):
            writer.writerow([repr(float(r)), repr(float(u)), repr(float(cu))])
        _emit(buf.getvalue(), args.out)
        print(_json_text({"objective": solution.objective,
                          "prop1": {"lhs": lhs, "rhs": rhs, "rel_gap": gap}}))
    else:
        payload = {
            "config": config.as_dict(),
            "grid": [float(v) for v in problem.grid],
            "u_values": [float(v) for v in solution.u_values],
            "objective": solution.objective,
            "multipliers": {"a": solution.multipliers[0], "b": solution.multipliers[1]},
            "constraints": {
                "normalization": solution.constraints_achieved[0],
                "moment": solution.constraints_achieved[1],
            },
            "converged": solution.converged,
            "iterations": solution.iterations,
            "smoothing_eps": solution.smoothing_eps,
            "prop1": {"lhs": lhs, "rhs": rhs, "rel_gap": gap},
        }
        _emit(_json_text(payload), args.out)
    return EXIT_OK


def _add_param_flags(parser, gamma_default=1.0):
    parser.add_argument("--n", type=int, default=1, help="dimension")
    parser.add_argument("--alpha", type=float, default=2.0, help="moment/shape exponent")
    parser.add_argument("--q", type=float, default=1.0, help="tail index")
    parser.add_argument("--gamma", type=float, default=gamma_default, help="scale parameter")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qginfo",
        description="Information measures, inequalities, sampling, and the "
        "variational problem of generalized Gaussian densities.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("measures", help="closed-form and/or quadrature measures")
    _add_param_flags(p)
    p.add_argument("--method", choices=("closed", "quadrature", "both"), default="closed")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_measures)

    p = sub.add_parser("verify", help="evaluate inequality reports on a density")
    _add_param_flags(p)
    p.add_argument("--density", default="qgaussian",
                   help="qgaussian | mixture:w,0,var;... | uniform-ball[:radius] | profile:path")
    p.add_argument("--ineq", action="append", choices=INEQUALITY_NAMES, default=None)
    p.add_argument("--all", action="store_true", help="run every applicable inequality")
    p.add_argument("--rel-tol", type=float, default=DEFAULT_REL_TOL)
    p.add_argument("--eq-tol", type=float, default=DEFAULT_EQ_TOL)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="grid sweep of measures and deficits to CSV")
    p.add_argument("--n", default="1", help="grid: value, comma list, or start:stop:step")
    p.add_argument("--alpha", default="2")
    p.add_argument("--q", default="1")
    p.add_argument("--gamma", default="1")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("sample", help="reproducible draws exported as CSV")
    _add_param_flags(p)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("minimize", help="solve the constrained Dirichlet problem")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--q", type=float, default=1.0)
    p.add_argument("--moment", type=float, required=True, help="prescribed elliptic moment")
    p.add_argument("--nodes", type=int, default=1601)
    p.add_argument("--init", choices=INITS, default="exponential")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_minimize)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, ZeroDensityError, ValueError) as exc:
        return _fail(str(exc), EXIT_INVALID)
    except DivergenceError as exc:
        return _fail(str(exc), EXIT_DIVERGED)
    except ConvergenceError as exc:
        return _fail(str(exc), EXIT_DIVERGED)
    except OSError as exc:
        return _fail(str(exc), EXIT_INVALID)


if __name__ == "__main__":
    sys.exit(main())
