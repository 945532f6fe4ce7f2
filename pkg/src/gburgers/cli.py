"""Command-line interface.

Subcommands: list, eval, verify, transform, solve, convergence.  Reports
are JSON, field grids are CSV, all floats are printed with 17 significant
digits so identical invocations are byte-identical.

Exit codes: 0 success/pass, 1 verification failure, 2 usage error,
3 domain/singularity error.
"""

from __future__ import annotations

import functools
import json
import sys

import click

from . import catalog
from .ansatz import RiccatiBranch, SolutionField, build_solution, rational_solution, xi_solution
from .equivalence import EquivalenceElement, transform_solution
from .jets import EvaluationError, Point, Region
from .numsolve import (BlowUpError, IbvpSpec, WellPosednessError, compare,
                       convergence_study, solve_ibvp)
from .verify import (EmptySweepError, ReductionOperatorCoefficients,
                     determining_residuals, gbe_residual_scaled,
                     pfde_residual_scaled, potential_residual_scaled,
                     reduced_system_residual_scaled, sweep)

EXIT_VERIFY_FAIL = 1
EXIT_DOMAIN = 3


def _fmt(v: float) -> str:
    return f"{v + 0.0:.17g}"  # adding 0.0 maps -0.0 to +0.0


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _json_dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def domain_errors_to_exit(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (EvaluationError, EmptySweepError, WellPosednessError, BlowUpError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_DOMAIN)
    return wrapper


def _parse_region(text: str) -> Region:
    try:
        return Region.parse(text)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--region")


def _parse_res(text: str) -> tuple[int, int]:
    try:
        nt, nx = (int(s) for s in text.lower().split("x"))
    except ValueError:
        raise click.BadParameter("resolution must look like '50x50'", param_hint="--res")
    if nt < 2 or nx < 2:
        raise click.BadParameter("resolution must be at least 2x2", param_hint="--res")
    return nt, nx


def _parse_element(text: str) -> EquivalenceElement:
    try:
        data = json.loads(text)
        return EquivalenceElement.from_dict(data)
    except (json.JSONDecodeError, ValueError, TypeError) as exc:
        raise click.BadParameter(f"invalid group element: {exc}", param_hint="--element")


def _solution(entry: catalog.CatalogEntry, kind: str, nu: float, c1: float,
              c2: float) -> SolutionField:
    if kind == "phi":
        return build_solution(entry, RiccatiBranch(nu, c1, c2))
    if kind == "xi":
        return xi_solution(entry)
    return rational_solution(c1, c2, entry.f)


def _grid_csv(sol: SolutionField, region: Region, n_t: int, n_x: int) -> str:
    ts, xs = region.grid(n_t, n_x)
    lines = ["t,x,u"]
    for t in ts:
        for x in xs:
            p = Point(float(t), float(x))
            if not sol.valid(p):
                raise EvaluationError(
                    f"solution is singular at ({_fmt(p.t)}, {_fmt(p.x)}); "
                    f"choose a region inside the valid domain")
            lines.append(f"{_fmt(p.t)},{_fmt(p.x)},{_fmt(sol.u.value(*p))}")
    return "\n".join(lines) + "\n"


_solution_opts = [
    click.option("--solution", "kind", type=click.Choice(["phi", "xi", "rational"]),
                 default="phi", show_default=True, help="Which solution family."),
    click.option("--nu", type=float, default=-1.0, show_default=True),
    click.option("--c1", type=float, default=1.0, show_default=True),
    click.option("--c2", type=float, default=1.0, show_default=True),
    click.option("--lambda", "lam", type=float, default=None,
                 help="Parameter of case 5 (default 1)."),
]


def solution_options(fn):
    for opt in reversed(_solution_opts):
        fn = opt(fn)
    return fn


@click.group()
def cli():
    """Exact solutions of generalized Burgers equations
    u_t + u*u_x + f(t,x)*u_xx = 0 built from potentials of the fast
    diffusion equation, with residual verification and independent
    numerical cross-validation."""


@cli.command("list")
@click.option("--case", "case_id", type=int, default=None, help="Show a single case.")
@click.option("--lambda", "lam", type=float, default=None, help="Parameter of case 5.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text",
              show_default=True)
@click.option("--out", type=click.Path(), default=None)
@domain_errors_to_exit
def cmd_list(case_id, lam, fmt, out):
    """List the built-in catalog of (f, xi, theta) triples."""
    if case_id is not None:
        entries = [catalog.get_case(case_id, lam)]
    else:
        entries = catalog.iter_cases(lam)
    rows = [e.to_dict() for e in entries]
    if fmt == "json":
        _emit(_json_dumps(rows), out)
        return
    w_f = max(len(r["f_expr"]) for r in rows)
    w_xi = max(len(r["xi_expr"]) for r in rows)
    w_th = max(len(r["theta_expr"]) for r in rows)
    lines = [f"{'N':>2}  {'f':<{w_f}}  {'xi':<{w_xi}}  {'theta':<{w_th}}  singular set"]
    for r in rows:
        lines.append(f"{r['id']:>2}  {r['f_expr']:<{w_f}}  {r['xi_expr']:<{w_xi}}  "
                     f"{r['theta_expr']:<{w_th}}  {r['singular_description']}")
    _emit("\n".join(lines) + "\n", out)


@cli.command("eval")
@click.option("--case", "case_id", type=int, required=True)
@solution_options
@click.option("--region", required=True, help="t0,t1,x0,x1")
@click.option("--res", default="11x11", show_default=True, help="NTxNX grid.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv",
              show_default=True)
@click.option("--out", type=click.Path(), default=None)
@domain_errors_to_exit
def cmd_eval(case_id, kind, nu, c1, c2, lam, region, res, fmt, out):
    """Evaluate a solution family on a grid."""
    reg = _parse_region(region)
    n_t, n_x = _parse_res(res)
    entry = catalog.get_case(case_id, lam)
    sol = _solution(entry, kind, nu, c1, c2)
    csv_text = _grid_csv(sol, reg, n_t, n_x)
    if fmt == "json":
        rows = [dict(zip(("t", "x", "u"), map(float, line.split(","))))
                for line in csv_text.splitlines()[1:]]
        _emit(_json_dumps({"provenance": sol.provenance, "rows": rows}), out)
    else:
        _emit(csv_text, out)


_WHICH_CHOICES = ("gbe", "pfde", "potential", "reduced", "determining")


def _case_residual_fn(entry: catalog.CatalogEntry, which: str):
    if which == "gbe":
        sol = xi_solution(entry)
        return lambda p: gbe_residual_scaled(sol.u, sol.f, p)
    if which == "pfde":
        return lambda p: pfde_residual_scaled(entry.theta, p)
    if which == "potential":
        return lambda p: potential_residual_scaled(entry.theta, entry.f, entry.xi, p)
    if which == "reduced":
        return lambda p: reduced_system_residual_scaled(entry.f, entry.xi, p)
    coeffs = ReductionOperatorCoefficients.from_xi(entry.xi)
    return lambda p: determining_residuals(entry.f, coeffs, p).max_scaled


@cli.command("verify")
@click.option("--case", "case_id", type=int, default=None)
@click.option("--all", "all_cases", is_flag=True)
@click.option("--which", type=click.Choice(_WHICH_CHOICES), required=True)
@click.option("--region", default=None, help="Defaults to the case's sample region.")
@click.option("--res", default="50x50", show_default=True)
@click.option("--tol", type=float, default=1e-9, show_default=True,
              help="Scaled-residual tolerance.")
@click.option("--lambda", "lam", type=float, default=None)
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--out", type=click.Path(), default=None)
@domain_errors_to_exit
def cmd_verify(case_id, all_cases, which, region, res, tol, lam, jobs, out):
    """Sweep a residual over a grid and report the scaled maximum."""
    if all_cases == (case_id is not None):
        raise click.UsageError("choose exactly one of --case or --all")
    n_t, n_x = _parse_res(res)
    entries = catalog.iter_cases(lam) if all_cases else [catalog.get_case(case_id, lam)]
    reports = []
    ok = True
    for entry in entries:
        reg = _parse_region(region) if region else entry.sample_region
        rep = sweep(_case_residual_fn(entry, which), reg, n_t, n_x,
                    valid=entry.valid, jobs=jobs)
        passed = rep.max_abs_residual <= tol
        ok = ok and passed
        reports.append({"case": entry.id, "which": which, "pass": passed,
                        "tol": tol, **rep.to_dict()})
    _emit(_json_dumps(reports if all_cases else reports[0]), out)
    if not ok:
        sys.exit(EXIT_VERIFY_FAIL)


@cli.command("transform")
@click.option("--element", required=True,
              help='Group element as JSON, e.g. \'{"alpha":1,...,"kappa":1}\'.')
@click.option("--case", "case_id", type=int, required=True)
@solution_options
@click.option("--region", required=True, help="Target-coordinate region t0,t1,x0,x1.")
@click.option("--res", default="11x11", show_default=True)
@click.option("--recheck", is_flag=True,
              help="Re-verify the transformed pair on the grid.")
@click.option("--tol", type=float, default=1e-9, show_default=True)
@click.option("--out", type=click.Path(), default=None)
@domain_errors_to_exit
def cmd_transform(element, case_id, kind, nu, c1, c2, lam, region, res, recheck, tol, out):
    """Push a solution through a group element and grid the image."""
    g = _parse_element(element)
    reg = _parse_region(region)
    n_t, n_x = _parse_res(res)
    entry = catalog.get_case(case_id, lam)
    sol = _solution(entry, kind, nu, c1, c2)
    tsol = transform_solution(g, sol)

    ts, xs = reg.grid(n_t, n_x)
    lines = ["t,x,u"]
    skipped = 0
    checked = 0
    worst = 0.0
    for t in ts:
        for x in xs:
            p = Point(float(t), float(x))
            if not tsol.valid(p):
                skipped += 1
                continue
            try:
                u = tsol.u.value(*p)
                if recheck:
                    worst = max(worst, gbe_residual_scaled(tsol.u, tsol.f, p))
            except EvaluationError:
                skipped += 1
                continue
            checked += 1
            lines.append(f"{_fmt(p.t)},{_fmt(p.x)},{_fmt(u)}")
    meta = {"element": g.to_dict(), "source": sol.provenance,
            "transformed_f": f"kappa^2/det * [{entry.f_expr}] pulled back through "
                             f"the inverse element",
            "points_checked": checked, "points_skipped": skipped}
    if recheck:
        meta["recheck_max_scaled_residual"] = worst
        meta["recheck_pass"] = worst <= tol
    click.echo(_json_dumps(meta), err=True, nl=False)
    _emit("\n".join(lines) + "\n", out)
    if recheck and worst > tol:
        sys.exit(EXIT_VERIFY_FAIL)


@cli.command("solve")
@click.option("--case", "case_id", type=int, required=True)
@solution_options
@click.option("--region", required=True, help="t0,t1,x0,x1")
@click.option("--nx", type=int, default=64, show_default=True)
@click.option("--dt-safety", type=float, default=0.8, show_default=True)
@click.option("--out", type=click.Path(), default=None,
              help="Write the full numeric solution as CSV.")
@domain_errors_to_exit
def cmd_solve(case_id, kind, nu, c1, c2, lam, region, nx, dt_safety, out):
    """Integrate the equation numerically against a manufactured solution."""
    reg = _parse_region(region)
    entry = catalog.get_case(case_id, lam)
    sol = _solution(entry, kind, nu, c1, c2)
    spec = IbvpSpec(f=entry.f, region=reg, n_x=nx, dt_safety=dt_safety, exact=sol)
    num = solve_ibvp(spec)
    max_err, l2_err = compare(num, sol)
    if out:
        with open(out, "w") as fh:
            fh.write(num.to_csv())
    click.echo(_json_dumps({"case": entry.id, "solution": sol.provenance,
                            "n_x": nx, "scheme": num.scheme_metadata,
                            "max_err": max_err, "l2_err": l2_err}), nl=False)


@cli.command("convergence")
@click.option("--case", "case_id", type=int, required=True)
@solution_options
@click.option("--region", required=True, help="t0,t1,x0,x1")
@click.option("--resolutions", default="32,64,128", show_default=True)
@click.option("--dt-safety", type=float, default=0.8, show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--out", type=click.Path(), default=None)
@domain_errors_to_exit
def cmd_convergence(case_id, kind, nu, c1, c2, lam, region, resolutions, dt_safety,
                    jobs, out):
    """Refinement study of the numerical error against an exact solution."""
    reg = _parse_region(region)
    try:
        res = [int(s) for s in resolutions.split(",")]
    except ValueError:
        raise click.BadParameter("resolutions must be comma-separated integers",
                                 param_hint="--resolutions")
    entry = catalog.get_case(case_id, lam)
    sol = _solution(entry, kind, nu, c1, c2)
    try:
        spec = IbvpSpec(f=entry.f, region=reg, n_x=res[0], dt_safety=dt_safety, exact=sol)
        report = convergence_study(spec, res, jobs=jobs)
    except ValueError as exc:
        raise click.BadParameter(str(exc))
    _emit(_json_dumps({"case": entry.id, "solution": sol.provenance,
                       **report.to_dict()}), out)


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
