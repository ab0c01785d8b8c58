"""Command line interface.

Exit codes: 0 success, 2 invalid input, 3 budget or acceptance-rate failure.
"""

from __future__ import annotations

import json
import sys

import click
import numpy as np

from ..ensemble import asymptotic_count, count_tuples, domain_from_name, length_model_from_name, lengths_for, sample_tuples
from ..errors import BudgetExceeded, ValidationError
from ..limitlaw import LAW_NAMES, get_law, mc_limit_estimate, p2, p2_scl, support_constants, tilde_p2, tilde_p2_scl
from ..rings import build_circulant, diameter, distance_profile, moment, scl_directed
from .experiment import ExperimentConfig, default_threads, raw_statistic, run_experiment
from .io import FORMATS, Table, emit
from .stats import frobenius_of, histogram, ks_statistic

EXIT_VALIDATION = 2
EXIT_BUDGET = 3


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise ValidationError(f"expected comma-separated integers, got {text!r}") from None


class _Ctx:
    def __init__(self, **kw):
        self.__dict__.update(kw)


def _apply_config(ctx: click.Context, path: str | None) -> None:
    if not path:
        return
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"config {path}: {exc}") from None
    if not isinstance(cfg, dict):
        raise ValidationError(f"config {path} must hold a JSON object")
    sub = {}
    for key, val in cfg.items():
        name = key.replace("-", "_")
        if isinstance(val, dict):
            sub[key] = val
            continue
        if name == "t":
            name = "T"
        if name not in ctx.params:
            raise ValidationError(f"config {path}: unknown option {key!r}")
        if ctx.get_parameter_source(name) == click.core.ParameterSource.DEFAULT:
            ctx.params[name] = val
    ctx.default_map = sub


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--k", "k", type=int, default=2, show_default=True, help="Number of generators.")
@click.option("--domain", default="fplus", show_default=True, help="fplus (directed) or f (undirected).")
@click.option("--cap", type=float, default=1.0, show_default=True, help="Bound on x_{k+1} = n/T.")
@click.option("--T", "T", type=float, default=1000.0, show_default=True, help="Dilation parameter.")
@click.option("--samples", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--lengths", default="unit", show_default=True, help="unit, fixed:<l1,...,lk> or frobenius.")
@click.option("--threads", type=int, default=None, help="Worker processes (default: $CIRCDIAM_THREADS or 1).")
@click.option("--out", default="-", show_default=True, help="Output path, '-' for stdout.")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="csv", show_default=True)
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None, help="JSON file of option defaults.")
@click.pass_context
def cli(ctx, **params):
    """Diameters, cycle lengths and limit laws of random circulant graphs."""
    _apply_config(ctx, params["config_path"])
    p = dict(ctx.params)
    if p["threads"] is None:
        p["threads"] = default_threads()
    ctx.obj = _Ctx(**p)


def _graph(o, n, a, undirected):
    lengths, _ = lengths_for(length_model_from_name(o.lengths), a, n)
    return build_circulant(n, a, lengths, directed=not undirected)


def _emit(o, obj):
    emit(obj, o.fmt, o.out)


_graph_opts = [
    click.option("--n", "n", type=int, required=True, help="Number of vertices."),
    click.option("--a", "a", required=True, help="Generators, comma separated."),
    click.option("--undirected", is_flag=True, help="Use C_n(a) instead of C_n^+(a)."),
]


def graph_options(f):
    for opt in reversed(_graph_opts):
        f = opt(f)
    return f


@cli.command()
@graph_options
@click.pass_obj
def diam(o, n, a, undirected):
    """Exact diameter of one circulant graph."""
    a = _int_list(a)
    spec = _graph(o, n, a, undirected)
    d = diameter(spec)
    _emit(o, Table({"n": [n], "a": [" ".join(map(str, a))], "directed": [not undirected], "diameter": [d]}))


@cli.command()
@graph_options
@click.pass_obj
def scl(o, n, a, undirected):
    """Shortest cycle length of one circulant graph."""
    a = _int_list(a)
    lengths, _ = lengths_for(length_model_from_name(o.lengths), a, n)
    if undirected:
        val = raw_statistic("scl_undirected", a, n, lengths, False)
    else:
        val = scl_directed(build_circulant(n, a, lengths, directed=True))
    _emit(o, Table({"n": [n], "a": [" ".join(map(str, a))], "directed": [not undirected], "scl": [val]}))


@cli.command()
@graph_options
@click.option("--alpha", "alphas", type=int, multiple=True, default=(1, 2), show_default=True)
@click.pass_obj
def moments(o, n, a, undirected, alphas):
    """Distance moments M_alpha of one circulant graph."""
    a = _int_list(a)
    prof = distance_profile(_graph(o, n, a, undirected))
    _emit(o, Table({"alpha": list(alphas), "moment": [moment(prof, al) for al in alphas]}))


@cli.command()
@click.pass_obj
def sample(o):
    """Draw (a, n) uniformly from the coprime integer points of T*D."""
    dom = domain_from_name(o.domain, o.k, o.cap)
    tuples = sample_tuples(dom, o.T, o.samples, o.seed)
    cols = {f"a{h + 1}": [t[0][h] for t in tuples] for h in range(o.k)}
    cols["n"] = [t[1] for t in tuples]
    _emit(o, Table(cols))


@cli.command()
@click.pass_obj
def count(o):
    """Exact and asymptotic number of admissible tuples in T*D."""
    dom = domain_from_name(o.domain, o.k, o.cap)
    exact = count_tuples(dom, o.T)
    approx = asymptotic_count(dom, o.T)
    _emit(o, Table({"T": [o.T], "count": [exact], "asymptotic": [approx], "ratio": [exact / approx]}))


@cli.command()
@click.argument("generators", nargs=-1, required=True)
@click.pass_obj
def frobenius(o, generators):
    """Frobenius number of coprime positive generators, e.g. `frobenius 3 5`."""
    gens = _int_list(",".join(generators))
    _emit(o, Table({"generators": [" ".join(map(str, gens))], "frobenius": [frobenius_of(gens)]}))


@cli.command()
@click.option("--grid", default="0:4:0.01", show_default=True, help="lo:hi:step of R values (hi inclusive).")
@click.pass_obj
def densities(o, grid):
    """Tabulate the four closed-form limit densities."""
    try:
        lo, hi, step = (float(x) for x in grid.split(":"))
    except ValueError:
        raise ValidationError(f"grid must be lo:hi:step, got {grid!r}") from None
    if not (step > 0 and hi >= lo >= 0):
        raise ValidationError(f"need 0 <= lo <= hi and step > 0, got {grid!r}")
    R = lo + step * np.arange(int(np.floor((hi - lo) / step + 1e-9)) + 1)
    _emit(o, Table({"R": R, "p2": p2(R), "tilde_p2": tilde_p2(R), "p2_scl": p2_scl(R), "tilde_p2_scl": tilde_p2_scl(R)}))


def _law_lo(law: str) -> float:
    return get_law(law).support_lo


def _report_ks(emp, law):
    if law is not None:
        click.echo(f"KS distance to {law}: {ks_statistic(emp, get_law(law).cdf):.6f}", err=True)


@cli.command("rho-mc")
@click.option("--law", type=click.Choice(LAW_NAMES), default="tilde_p2", show_default=True)
@click.option("--histogram", "hist", is_flag=True, help="Emit a 60-bin histogram instead of the sample.")
@click.pass_obj
def rho_mc(o, law, hist):
    """Monte Carlo of a limit law from Haar-random unimodular lattices (k = 2)."""
    if o.k != 2:
        raise ValidationError("rho-mc supports k = 2 only")
    emp = mc_limit_estimate(law, o.samples, o.seed)
    _report_ks(emp, law)
    _emit(o, histogram(emp, _law_lo(law)) if hist else emp)


def _experiment(o, statistic, hist):
    cfg = ExperimentConfig(
        k=o.k, domain=o.domain, T=o.T, samples=o.samples, seed=o.seed,
        statistic=statistic, length_model=o.lengths, threads=o.threads, cap=o.cap,
    )
    emp = run_experiment(cfg)
    law = None
    if o.k == 2 and o.lengths != "frobenius":
        law = {
            "diam_directed_shifted": "p2", "diam_undirected": "tilde_p2", "diam_undirected_shifted": "tilde_p2",
            "scl_directed": "p2_scl", "scl_undirected": "tilde_p2_scl",
        }.get(statistic)
    _report_ks(emp, law)
    if hist:
        lo = _law_lo(law) if law else float(emp.values[0])
        return _emit(o, histogram(emp, lo))
    _emit(o, emp)


@cli.command("diam-exp")
@click.option("--statistic", default=None, help="Default: diam_directed_shifted on fplus, diam_undirected on f.")
@click.option("--histogram", "hist", is_flag=True)
@click.pass_obj
def diam_exp(o, statistic, hist):
    """Scaled diameters over a random ensemble."""
    if statistic is None:
        statistic = "diam_undirected" if domain_from_name(o.domain, o.k, o.cap).kind == "f" else "diam_directed_shifted"
    _experiment(o, statistic, hist)


@cli.command("scl-exp")
@click.option("--histogram", "hist", is_flag=True)
@click.pass_obj
def scl_exp(o, hist):
    """Scaled shortest cycle lengths over a random ensemble."""
    undirected = domain_from_name(o.domain, o.k, o.cap).kind == "f"
    _experiment(o, "scl_undirected" if undirected else "scl_directed", hist)


@cli.command()
@click.pass_obj
def support(o):
    """Lower support ends and bounds of the limit laws for --k."""
    s = support_constants(o.k)
    _emit(o, Table({key: [val if val is not None else "nan"] for key, val in vars(s).items()}))


def main(argv=None) -> int:
    try:
        cli.main(args=argv, prog_name="circdiam", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return EXIT_VALIDATION
    except click.exceptions.Abort:
        return 1
    except BudgetExceeded as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_BUDGET
    except ValidationError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_VALIDATION
    return 0


if __name__ == "__main__":
    sys.exit(main())
