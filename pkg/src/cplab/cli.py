import json
import sys
from fractions import Fraction

import click

from cplab.eval.experiment import ExperimentSpec
from cplab.eval.experiment import run_experiment
from cplab.eval.experiment import write_result
from cplab.eval.oracle import exact_isolated_by_halflength
from cplab.eval.oracle import exact_model_expectations
from cplab.eval.oracle import exact_pair_probability
from cplab.eval.oracle import find_witness
from cplab.model.analysis import PatternGraph
from cplab.model.analysis import Quadruple
from cplab.model.analysis import count_pattern
from cplab.model.analysis import is_good_quadruple
from cplab.model.analysis import quadruple_profile
from cplab.model.catalan import gamma_bounds
from cplab.model.catalan import gamma_term
from cplab.model.catalan import gap_profile
from cplab.model.catalan import match_probability
from cplab.model.catalan import validate_pair
from cplab.model.pairgraph import CatalanPairGraph
from cplab.model.pairgraph import build_graph
from cplab.model.sampler import RngStream
from cplab.model.sampler import parse_model
from cplab.model.sampler import sample_representative
from cplab.model.utils import InvalidPairError
from cplab.model.utils import PairRejection
from cplab.model.utils import ValidationError
from cplab.model.utils import default
from cplab.model.utils import fraction_str
from cplab.model.utils import load_config
from cplab.model.utils import log
from cplab.model.utils import parse_point_pairs
from cplab.model.utils import parse_sizes
from cplab.model.utils import seed_from_env


class LabGroup(click.Group):
    """Validation errors exit with 2 like usage errors, anything else unexpected with 1."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except ValidationError as e:
            raise click.UsageError(str(e), ctx) from e
        except (click.ClickException, click.exceptions.Exit, click.Abort):
            raise
        except Exception as e:
            raise click.ClickException(f"{type(e).__name__}: {e}") from e


def emit(payload, out=""):
    text = json.dumps(payload, indent=2)
    if out:
        with open(out, "w") as f:
            f.write(text + "\n")
    else:
        click.echo(text)


def settings(ctx, **flags):
    """Flag > CPLAB_SEED (seed only) > --config file > bundled defaults."""
    config = ctx.obj["config"]
    resolved = {key: default(value, config.get(key)) for key, value in flags.items()}
    if "seed" in flags and flags["seed"] is None:
        resolved["seed"] = seed_from_env(config["seed"])
    return resolved


def checked_pair(n, arcs):
    """validate_pair with arcs that may share a left endpoint, which it cannot take as x."""
    x, k = [a for a, _ in arcs], [(b - a + 1) // 2 for a, b in arcs]
    if len(set(x)) < len(x):
        for xi, ki in zip(x, k):
            validate_pair(n, (xi,), (ki,))
        raise InvalidPairError(PairRejection.DUPLICATE_ENDPOINT, f"left endpoint shared in {arcs}")
    return validate_pair(n, x, k)


def sampled_graph(n, trial, seed, model, edge_method):
    rep = sample_representative(n, parse_model(model), RngStream(seed, (n, trial)))
    return rep, build_graph(rep, method=edge_method)


@click.group(cls=LabGroup)
@click.option("--config", "-c", "config_file", default=None, help="TOML file overriding the bundled defaults.")
@click.option("--quiet", "-q", default=False, is_flag=True, help="No status lines or progress bars on stderr.")
@click.pass_context
def main(ctx, config_file, quiet):
    """Random Catalan-pair graphs: sampling, exact small-n values and seeded experiments."""
    ctx.ensure_object(dict)
    ctx.obj["config"] = load_config(config_file)
    ctx.obj["quiet"] = quiet


# sample


@main.command()
@click.option("--n", "n", type=int, default=None, help="Number of arcs (vertices).")
@click.option("--trial", type=int, default=0, show_default=True, help="Stream index within n.")
@click.option("--seed", type=int, default=None, help="Base seed (default: CPLAB_SEED, then config).")
@click.option("--model", default=None, help="fair | biased:<p> | fixed:<m>")
@click.option("--edge-method", type=click.Choice(["quadratic", "sweep"]), default=None)
@click.option("--graph-only", default=False, is_flag=True, help="Skip the representative in the output.")
@click.option("--out", default="", help="Write JSON here instead of stdout.")
@click.pass_context
def sample(ctx, n, trial, seed, model, edge_method, graph_only, out):
    """Sample one representative and its graph as JSON."""
    s = settings(ctx, seed=seed, model=model, edge_method=edge_method)
    n = default(n, parse_sizes(ctx.obj["config"]["n"])[0])
    rep, g = sampled_graph(n, trial, s["seed"], s["model"], s["edge_method"])
    payload = {"graph": g.to_dict()} if graph_only else {"representative": rep.to_dict(), "graph": g.to_dict()}
    emit({"seed": s["seed"], "trial": trial, "model": s["model"], **payload}, out)


# experiment


@main.command()
@click.option("--n", "n", default=None, help='Sizes: "3000", "500,1000" or "100:3000:100".')
@click.option("--trials", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--model", default=None, help="fair | biased:<p> | fixed:<m>")
@click.option("--metrics", default=None, help="e.g. edges,isolated,components,spans[1:2],pattern[1-2,2-3]")
@click.option("--pattern", default=None, help="Edge list used by a bare pattern metric.")
@click.option("--induced/--not-induced", default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default=None)
@click.option("--out", default=None, help="Output file; histogram sidecars go next to it.")
@click.option("--threads", type=int, default=None, help="Worker processes; output does not depend on it.")
@click.option("--edge-method", type=click.Choice(["quadratic", "sweep"]), default=None)
@click.pass_context
def experiment(ctx, n, trials, seed, model, metrics, pattern, induced, fmt, out, threads, edge_method):
    """Run seeded trials over one or more sizes and write records plus per-n summaries."""
    config = ctx.obj["config"]
    s = settings(
        ctx,
        n=n,
        trials=trials,
        seed=seed,
        model=model,
        metrics=metrics,
        pattern=pattern,
        induced=induced,
        format=fmt,
        out=out,
        threads=threads,
        edge_method=edge_method,
    )
    spec = ExperimentSpec.from_config({**config, **s})
    spec.check_output()
    quiet = ctx.obj["quiet"]
    log(f"experiment: n={list(spec.n_values)} trials={spec.trials} model={spec.model} seed={spec.seed}", quiet)
    result = run_experiment(spec, quiet=quiet)
    write_result(result, stream=sys.stdout)
    for column, slope in result.scaling.items():
        log(f"log-log slope of {column}: {slope:.3f}", quiet)
    if spec.out:
        log(f"wrote {spec.out}", quiet)


# gamma


@main.command()
@click.option("--M", "M", type=int, default=None, help="Truncation index, at least 2.")
@click.option("--exact", default=False, is_flag=True, help="Exact fractions instead of decimals.")
@click.option("--terms", type=int, default=0, help="Also list gamma_1 .. gamma_terms.")
@click.pass_context
def gamma(ctx, M, exact, terms):
    """Bracket the isolated-vertex constant between a partial sum and its tail bound."""
    M = default(M, ctx.obj["config"]["gamma"]["M"])
    bounds = gamma_bounds(M)
    render = fraction_str if exact else float
    payload = {"M": M, "lower": render(bounds.lower), "upper": render(bounds.upper)}
    if terms:
        payload["terms"] = {str(m): render(gamma_term(m)) for m in range(1, terms + 1)}
    emit(payload)


# oracle


@main.group(cls=LabGroup)
def oracle():
    """Exact values by exhaustive enumeration (small n only)."""


@oracle.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--model", default=None, help="fair | biased:<p> | fixed:<m>")
@click.option("--pattern", "patterns", multiple=True, help="Edge list; repeatable.")
@click.option("--induced", default=False, is_flag=True)
@click.pass_context
def expectations(ctx, n, model, patterns, induced):
    """Exact E[edges], E[isolated] and pattern counts under a coloring model."""
    s = settings(ctx, model=model)
    graphs = {}
    for text in patterns:
        h = PatternGraph.parse(text)
        graphs[f"{'induced_' if induced else ''}pattern_{h.name}"] = (h, induced)
    cap = ctx.obj["config"]["oracle"]["model_cap"]
    result = exact_model_expectations(n, parse_model(s["model"]), graphs, cap=cap, quiet=ctx.obj["quiet"])
    emit(result.to_dict())


@oracle.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--arcs", required=True, help='Point pairs, e.g. "2-11,4-7".')
@click.pass_context
def probability(ctx, n, arcs):
    """Chance that a uniform matching of size n contains all given arcs, by enumeration and by formula."""
    arcs = sorted(tuple(sorted(arc)) for arc in parse_point_pairs(arcs))
    cap = ctx.obj["config"]["oracle"]["matching_cap"]
    enumerated = exact_pair_probability(n, arcs, cap)
    payload = {"n": n, "arcs": [list(a) for a in arcs], "enumerated": fraction_str(enumerated)}
    if all((b - a) % 2 for a, b in arcs):
        try:
            pair = checked_pair(n, arcs)
        except InvalidPairError as e:
            payload["rejection"] = e.reason.value
        else:
            payload["gap_profile"] = list(gap_profile(pair))
            payload["formula"] = fraction_str(match_probability(pair))
    else:
        payload["rejection"] = "even_point_count_under_arc"
    emit(payload)


@oracle.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--top", default="", help='Top arcs, e.g. "1-6".')
@click.option("--bottom", default="", help='Bottom arcs, e.g. "3-8".')
@click.pass_context
def quadruple(ctx, n, top, bottom):
    """Good/valid status, free-point profile and a witness representative for two-sided arcs."""
    q = Quadruple.from_arcs(n, parse_point_pairs(top), parse_point_pairs(bottom))
    witness = find_witness(q, cap=ctx.obj["config"]["oracle"]["quadruple_cap"])
    payload = {"n": n, "top": q.top_arcs, "bottom": q.bottom_arcs, "good": is_good_quadruple(q)}
    payload["valid"] = witness is not None
    if q.in_range:
        profile = quadruple_profile(q)
        payload["profile"] = {"f": list(profile.f), "g": list(profile.g)}
    if witness is not None:
        payload["witness"] = witness.to_dict()
    emit(payload)


@oracle.command()
@click.option("--n", "n", type=int, required=True)
@click.pass_context
def isolated(ctx, n):
    """Exact expected isolated vertices per half-length under the fair model, beside gamma_m * n."""
    by_m = exact_isolated_by_halflength(n, cap=ctx.obj["config"]["oracle"]["isolated_cap"])
    payload = {"n": n, "model": "fair", "expected_isolated": fraction_str(sum(by_m.values(), Fraction(0)))}
    payload["by_halflength"] = {
        str(m): {"exact": fraction_str(value), "reference": float(gamma_term(m)) * n} for m, value in by_m.items()
    }
    emit(payload)


# count-subgraphs


@main.command("count-subgraphs")
@click.option("--pattern", default=None, help='Edge list over 1..v, e.g. "1-2,2-3".')
@click.option("--induced/--not-induced", default=None)
@click.option("--graph", "graph_file", type=click.File("r"), default=None, help="Graph or representative JSON.")
@click.option("--n", "n", type=int, default=None, help="Sample a graph of this size instead.")
@click.option("--trial", type=int, default=0, show_default=True)
@click.option("--seed", type=int, default=None)
@click.option("--model", default=None)
@click.option("--edge-method", type=click.Choice(["quadratic", "sweep"]), default=None)
@click.pass_context
def count_subgraphs(ctx, pattern, induced, graph_file, n, trial, seed, model, edge_method):
    """Count copies (or induced copies) of a pattern in a supplied or sampled graph."""
    s = settings(ctx, pattern=pattern, induced=induced, seed=seed, model=model, edge_method=edge_method)
    if graph_file is not None:
        data = json.load(graph_file)
        # accept the output of `cplab sample` as well as a bare graph or representative
        if "representative" in data:
            data = data["representative"]
        elif "graph" in data:
            data = data["graph"]
        g = CatalanPairGraph.from_dict(data)
        source = {"graph": graph_file.name}
    else:
        n = default(n, parse_sizes(ctx.obj["config"]["n"])[0])
        _, g = sampled_graph(n, trial, s["seed"], s["model"], s["edge_method"])
        source = {"seed": s["seed"], "trial": trial, "model": s["model"]}
    h = PatternGraph.parse(s["pattern"])
    count = count_pattern(g, h, induced=s["induced"], cap=ctx.obj["config"]["pattern_cap"])
    emit({"n": g.n, "pattern": h.name, "induced": s["induced"], "count": count, **source})


if __name__ == "__main__":
    main()
