"""Command line entry point: ``oriented-ramsey <subcommand> ...``.

Exit codes: 0 when a result was computed, 1 when the result is a false
verdict, 2 on budget exhaustion, malformed input or violated preconditions.
"""
from __future__ import annotations

import configparser
import datetime as _dt
import json
import os
import sys
import tempfile
from fractions import Fraction
from importlib import metadata
from pathlib import Path
from typing import Any, Callable

import click

from . import containers, experiments, reduction
from .arrows import (
    arrows,
    arrows_isometric,
    arrows_ordered,
    classical_ramsey_number,
    oriented_ramsey_number,
)
from .graphs import (
    CyclicDigraphError,
    Digraph,
    Graph,
    OrderedGraph,
    OrientedGraph,
    underlying_graph,
)
from .io import GraphFormatError, resolve
from .search import BudgetExceeded
from .tournaments import TournamentCapExceeded

OUT_ENV = "ORAMSEY_OUT"
EXIT_OK, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


def _version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0+unknown"


class Failure(click.ClickException):
    exit_code = EXIT_ERROR


def _as_digraph(ref: str) -> Digraph:
    g = resolve(ref)
    if not isinstance(g, Digraph):
        raise Failure(f"{ref!r} is undirected; a directed pattern is required")
    return g


def _as_graph(ref: str) -> Graph:
    g = resolve(ref)
    return underlying_graph(g) if isinstance(g, Digraph) else g


def _floats(text: str) -> list[float]:
    return [float(Fraction(x)) for x in text.split(",") if x.strip()]


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _json_default(x: Any):
    if isinstance(x, Fraction):
        return str(x)
    if hasattr(x, "to_dict"):
        return x.to_dict()
    if isinstance(x, (set, frozenset, tuple)):
        return list(x)
    raise TypeError(f"cannot serialise {type(x).__name__}")


def _dumps(obj) -> str:
    return json.dumps(obj, default=_json_default, indent=2, sort_keys=True)


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _out_dir(ctx: click.Context) -> Path | None:
    out = ctx.find_root().params.get("out") or os.environ.get(OUT_ENV)
    return Path(out) if out else None


def _flatten_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for key, val in obj.items():
            if isinstance(val, (dict, list)) and val:
                lines.append(f"{pad}{key}:")
                lines.append(_flatten_text(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {val}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(_flatten_text(v, indent) if isinstance(v, (dict, list)) else f"{pad}- {v}"
                         for v in obj)
    return f"{pad}{obj}"


def _emit(ctx: click.Context, payload: dict, text: str | None = None, csv_text: str | None = None) -> None:
    fmt = ctx.find_root().params.get("fmt", "json")
    if fmt == "text":
        data = json.loads(_dumps(payload))
        click.echo(text if text is not None else _flatten_text(data))
    elif fmt == "csv" and csv_text is not None:
        click.echo(csv_text, nl=False)
    else:
        click.echo(_dumps(payload))


def _run(ctx: click.Context, body: Callable[[], tuple[dict, int]], seed: int | None = None,
         text: Callable[[dict], str] | None = None, csv_of: Callable[[dict], str] | None = None) -> None:
    """Run a subcommand body, emit its payload, write the manifest and exit."""
    start = _dt.datetime.now(_dt.timezone.utc).isoformat()
    try:
        payload, code = body()
    except (BudgetExceeded, TournamentCapExceeded) as exc:
        click.echo(f"budget exceeded: {exc}", err=True)
        ctx.exit(EXIT_ERROR)
    except GraphFormatError as exc:
        click.echo(f"parse error: {exc}", err=True)
        ctx.exit(EXIT_ERROR)
    except (containers.PreconditionError, CyclicDigraphError, ValueError) as exc:
        click.echo(f"precondition error: {exc}", err=True)
        ctx.exit(EXIT_ERROR)
    outputs = payload.pop("_outputs", [])
    _emit(ctx, payload, text(payload) if text else None, csv_of(payload) if csv_of else None)
    manifest = ctx.find_root().params.get("manifest")
    if manifest:
        record = {
            "subcommand": ctx.info_name,
            "config": {k: v for k, v in ctx.params.items()},
            "version": _version(),
            "seed": seed,
            "started": start,
            "finished": _dt.datetime.now(_dt.timezone.utc).isoformat(),
            "outputs": [str(p) for p in outputs],
        }
        _atomic_write(Path(manifest), _dumps(record) + "\n")
    ctx.exit(code)


def _load_config(path: str) -> dict:
    """Key-value config: top-level keys apply to every subcommand, ``[name]``
    sections to one.  Keys are flag names (``n-max`` or ``n_max``)."""
    parser = configparser.ConfigParser(default_section="all")
    text = Path(path).read_text()
    if not text.lstrip().startswith("["):
        text = "[all]\n" + text
    parser.read_string(text)
    norm = lambda d: {k.replace("-", "_"): v for k, v in d.items()}  # noqa: E731
    common = norm(parser.defaults())
    out = {name: dict(common) for name in cli.commands}
    for section in parser.sections():
        out.setdefault(section, dict(common)).update(norm(parser[section]))
    return out


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "text"]), default="json",
              show_default=True, help="Output format on standard output.")
@click.option("--out", type=click.Path(file_okay=False), default=None,
              help=f"Directory for CSV and other artifacts (default: ${OUT_ENV}).")
@click.option("--manifest", type=click.Path(dir_okay=False), default=None,
              help="Write a run manifest (JSON) to this path.")
@click.option("--config", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Key-value file supplying defaults for subcommand options.")
@click.version_option(_version(), prog_name="oriented-ramsey")
@click.pass_context
def cli(ctx: click.Context, fmt: str, out: str | None, manifest: str | None, config: str | None) -> None:
    """Oriented Ramsey numbers, arrow relations, container arithmetic and
    random graph experiments at desk scale."""
    if config:
        ctx.default_map = _load_config(config)


PATTERN = click.option("--pattern", required=True, help="Pattern: builtin name or graph file.")
BUDGET = click.option("--node-budget", type=int, default=5_000_000, show_default=True,
                      help="Search nodes before giving up (exit 2).")


# -- exact decisions -----------------------------------------------------------


@cli.command("dr")
@PATTERN
@click.option("--n-max", type=int, required=True)
@click.option("--cap", type=int, default=9, show_default=True, help="Largest tournament order enumerated.")
@click.pass_context
def dr_cmd(ctx, pattern, n_max, cap):
    """Oriented Ramsey number: least n such that every tournament on n
    vertices contains the acyclic pattern."""
    def body():
        res = oriented_ramsey_number(_as_digraph(pattern), n_max, cap)
        return res.to_dict("dr"), EXIT_OK if res.value is not None else EXIT_FALSE
    _run(ctx, body)


def _verdict_run(ctx, fn, host, pattern, node_budget):
    def body():
        v = fn(_as_graph(host), _as_digraph(pattern), node_budget=node_budget)
        return v.to_dict(), EXIT_OK if v.verdict else EXIT_FALSE
    _run(ctx, body)


@cli.command("arrows")
@click.option("--host", required=True, help="Host graph: builtin name or graph file.")
@PATTERN
@BUDGET
@click.pass_context
def arrows_cmd(ctx, host, pattern, node_budget):
    """Does every orientation of the host contain a copy of the pattern?
    A false verdict comes with a pattern-free orientation."""
    _verdict_run(ctx, arrows, host, pattern, node_budget)


@cli.command("arrows-iso")
@click.option("--host", required=True, help="Host graph: builtin name or graph file.")
@PATTERN
@BUDGET
@click.pass_context
def arrows_iso_cmd(ctx, host, pattern, node_budget):
    """Does every orientation of the host contain a distance-preserving
    (isometric) copy of the pattern?"""
    _verdict_run(ctx, arrows_isometric, host, pattern, node_budget)


@cli.command("ordered")
@click.option("--n", "n", type=int, required=True, help="Order of the host K_N (natural order).")
@PATTERN
@click.option("--order", default=None, help="Pattern vertex order, comma separated (default 0..h-1).")
@BUDGET
@click.pass_context
def ordered_cmd(ctx, n, pattern, order, node_budget):
    """Does every red/blue colouring of the ordered K_N contain a
    monochromatic monotone copy of the ordered pattern?"""
    def body():
        g = _as_graph(pattern)
        og = OrderedGraph(g, tuple(_ints(order))) if order else OrderedGraph.natural(g)
        v = arrows_ordered(n, og, node_budget=node_budget)
        return v.to_dict(), EXIT_OK if v.verdict else EXIT_FALSE
    _run(ctx, body)


@cli.command("reduce")
@PATTERN
@click.option("--tournament", default=None, help="Tournament to colour and search (optional).")
@click.option("--order", default=None, help="Vertex order used for the colouring (default 0..N-1).")
@click.pass_context
def reduce_cmd(ctx, pattern, tournament, order):
    """Double-graph reduction from orientations to ordered 2-colourings: two
    copies of the pattern, one reversed, in topological order.  With
    --tournament, colour it by arc direction and extract a pattern copy from
    a monochromatic monotone double graph."""
    def body():
        pat = _as_digraph(pattern)
        red = reduction.build_double_graph(pat)
        out: dict = {
            "double_graph": {"n": red.doubled.n, "arcs": red.doubled.sorted_arcs()},
            "order": list(red.order),
            "order_0": list(red.h0.order),
            "order_1": list(red.h1.order),
        }
        if tournament is None:
            return out, EXIT_OK
        t = resolve(tournament)
        if not isinstance(t, OrientedGraph):
            raise ValueError("tournament must be an oriented graph")
        rt = reduction.reduction_roundtrip(t, pat, _ints(order) if order else None)
        out["found"] = rt is not None
        if rt is not None:
            out["color"] = rt.color
            out["copy_map"] = {str(k): v for k, v in rt.copy_map.items()}
        return out, EXIT_OK if rt is not None else EXIT_FALSE
    _run(ctx, body)


@cli.command("classical-ramsey")
@PATTERN
@click.option("--n-max", type=int, required=True)
@click.option("--edge-cap", type=int, default=18, show_default=True)
@click.pass_context
def classical_cmd(ctx, pattern, n_max, edge_cap):
    """Two-colour Ramsey number R(H): least n such that every red/blue
    colouring of K_n has a monochromatic H."""
    def body():
        res = classical_ramsey_number(_as_graph(pattern), n_max, edge_cap)
        return res.to_dict("R"), EXIT_OK if res.value is not None else EXIT_FALSE
    _run(ctx, body)


# -- container arithmetic --------------------------------------------------------


@cli.command("m2")
@click.option("--graph", "graph", required=True, help="Graph: builtin name or graph file.")
@click.pass_context
def m2_cmd(ctx, graph):
    """2-density: max of (e(F)-1)/(v(F)-2) over subgraphs F with at least 3 vertices."""
    def body():
        td = containers.two_density(_as_graph(graph))
        return {"m2": str(td.value), "witness": list(td.witness)}, EXIT_OK
    _run(ctx, body)


@cli.command("codegree")
@PATTERN
@click.option("--n", "n", type=int, required=True)
@click.option("--d-tau", type=float, default=None, help="Use tau = D_tau * n^(-1/m2).")
@click.option("--tau", type=str, default=None, help="Explicit tau (fraction or decimal).")
@click.option("--mode", type=click.Choice(["exact", "formula"]), default="exact", show_default=True)
@click.pass_context
def codegree_cmd(ctx, pattern, n, d_tau, tau, mode):
    """Maximum j-degrees and co-degree function of the hypergraph of pattern
    copies in the complete digraph, next to its closed-form upper bound."""
    def body():
        pat = _as_digraph(pattern)
        if (d_tau is None) == (tau is None):
            raise ValueError("give exactly one of --d-tau and --tau")
        t = containers.container_tau(n, pat, d_tau) if d_tau is not None else Fraction(tau)
        prof = containers.degree_profile(n, pat, t, mode)
        out = prof.to_dict()
        if d_tau is not None and d_tau >= 1:
            bound = containers.codegree_bound(pat.n, len(pat.arcs), Fraction(d_tau))
            out["bound"] = str(bound)
            out["within_bound"] = float(prof.codegree) <= float(bound) * (1 + containers.REL_TOL)
        return out, EXIT_OK
    _run(ctx, body)


@cli.command("bounds")
@click.option("--k", "k", type=int, required=True)
@click.option("--c", "c", type=float, default=1.0, show_default=True,
              help="Constant in the polylogarithmic exponent (unknown, so supplied).")
@click.pass_context
def bounds_cmd(ctx, k, c):
    """Bounds on the least tournament order forcing TT_k, and the
    2(2k)^(c log^2 k) bound in both logarithm bases."""
    def body():
        lo, hi = reduction.transitive_subtournament_bounds(k)
        out = {"k": k, "transitive_lower": lo, "transitive_upper": hi}
        if k >= 3:
            out["polylog_bound"] = reduction.polylog_ramsey_bounds(k, c)
        return out, EXIT_OK
    _run(ctx, body)


@cli.command("constants")
@click.option("--k", "k", type=int, required=True)
@click.option("--R", "R", type=int, required=True, help="Oriented Ramsey number of the cycle orientation.")
@click.pass_context
def constants_cmd(ctx, k, R):
    """Constants chain for random hosts of girth k that arrow an acyclic
    C_k orientation, with every inequality checked in log space."""
    def body():
        table = containers.girth_constants(k, R)
        return table.to_dict(), EXIT_OK if table.all_passed else EXIT_FALSE
    _run(ctx, body, text=lambda _: containers.girth_constants(k, R).to_text())


@cli.command("saturation")
@click.option("--orientation", required=True, help="Oriented graph on n vertices.")
@PATTERN
@click.option("--eps", type=str, required=True)
@click.option("--R", "R", type=int, required=True)
@click.pass_context
def saturation_cmd(ctx, orientation, pattern, eps, R):
    """Few pattern copies force many missing edges: checks
    missing >= (1 - eps C(R,h)) n^2 / R^2 when copies <= eps C(n,h)."""
    def body():
        rep = containers.saturation_check(_as_digraph(orientation), _as_digraph(pattern), Fraction(eps), R)
        return rep.to_dict(), EXIT_OK if rep.holds else EXIT_FALSE
    _run(ctx, body)


# -- Monte Carlo -------------------------------------------------------------------


def _artifacts(ctx, stem: str, csv_text: str | None, summary: dict) -> list[Path]:
    out = _out_dir(ctx)
    if out is None:
        return []
    written = []
    if csv_text is not None:
        path = out / f"{stem}.csv"
        _atomic_write(path, csv_text)
        written.append(path)
        script = out / f"plot_{stem}.py"
        _atomic_write(script, PLOT_STUB.format(csv=path.name))
        written.append(script)
    path = out / f"{stem}_summary.json"
    _atomic_write(path, _dumps(summary) + "\n")
    written.append(path)
    return written


PLOT_STUB = '''"""Plot estimate against C from {csv}."""
import csv
import sys

import matplotlib.pyplot as plt

rows = list(csv.DictReader(open("{csv}")))
for n in sorted({{r["n"] for r in rows}}):
    sel = [r for r in rows if r["n"] == n]
    xs = [float(r["C"] or r["p"]) for r in sel]
    plt.errorbar(xs, [float(r["estimate"]) for r in sel],
                 yerr=[[float(r["estimate"]) - float(r["ci_lo"]) for r in sel],
                       [float(r["ci_hi"]) - float(r["estimate"]) for r in sel]], label=f"n={{n}}")
plt.xscale("log")
plt.legend()
plt.savefig(sys.argv[1] if len(sys.argv) > 1 else "{csv}.png")
'''


@cli.command("mc-arrow")
@PATTERN
@click.option("--pattern-id", default=None)
@click.option("--n", "n", required=True, help="Comma separated vertex counts.")
@click.option("--c", "c", default=None, help="Comma separated C values; p = C n^(-1/m2).")
@click.option("--p", "p", default=None, help="Comma separated edge probabilities.")
@click.option("--trials", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--node-budget", type=int, default=200_000, show_default=True)
@click.option("--threads", type=int, default=1, show_default=True)
@click.pass_context
def mc_arrow_cmd(ctx, pattern, pattern_id, n, c, p, trials, seed, node_budget, threads):
    """Estimate P[G(n,p) arrows the pattern] over a grid of n and p."""
    def body():
        cfg = experiments.ExperimentConfig(
            _as_digraph(pattern), pattern_id or pattern, _ints(n), trials, seed,
            p_values=_floats(p) if p else None, c_values=_floats(c) if c else None,
            node_budget=node_budget, threads=threads)
        results = experiments.estimate_arrow_probability(cfg)
        csv_text = experiments.write_csv(results)
        summ = experiments.summary(results)
        summ["_outputs"] = _artifacts(ctx, "mc_arrow", csv_text, dict(summ))
        summ["_csv"] = csv_text
        return summ, EXIT_OK
    _run(ctx, body, seed=seed, csv_of=lambda d: d.pop("_csv"))


@cli.command("mc-girth")
@click.option("--n", "n", type=int, required=True)
@click.option("--p", "p", type=float, required=True)
@click.option("--k", "k", type=int, required=True)
@click.option("--trials", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--d-p", type=float, default=None, help="Report exp(-k D_p^(k-1) n) as well.")
@click.pass_context
def mc_girth_cmd(ctx, n, p, k, trials, seed, d_p):
    """Estimate P[girth(G(n,p)) >= k] against the product lower bound
    exp(-E[X]/(1-p^3)) over short cycles."""
    def body():
        est = experiments.girth_probability(n, p, k, trials, seed, d_p)
        out = est.to_dict()
        out["_outputs"] = _artifacts(ctx, "mc_girth", None, est.to_dict())
        return out, EXIT_OK
    _run(ctx, body, seed=seed)


@cli.command("mc-joint")
@PATTERN
@click.option("--n", "n", type=int, required=True)
@click.option("--p", "p", type=float, required=True)
@click.option("--k", "k", type=int, required=True)
@click.option("--trials", type=int, default=200, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@BUDGET
@click.pass_context
def mc_joint_cmd(ctx, pattern, n, p, k, trials, seed, node_budget):
    """Estimate P[girth >= k and G(n,p) arrows the pattern]; hosts in the
    joint event are re-verified to arrow isometric copies."""
    def body():
        est = experiments.joint_positive_probability(n, p, k, _as_digraph(pattern), trials, seed,
                                                     node_budget)
        out = est.to_dict()
        out["_outputs"] = _artifacts(ctx, "mc_joint", None, est.to_dict())
        return out, EXIT_OK
    _run(ctx, body, seed=seed)


@cli.command("fkg")
@click.option("--n", "n", type=int, required=True)
@click.option("--p", "p", type=float, required=True)
@click.option("--prop1", required=True, help="connected | mindeg:<d> | copy:<builtin>")
@click.option("--prop2", required=True)
@click.option("--trials", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.pass_context
def fkg_cmd(ctx, n, p, prop1, prop2, trials, seed):
    """Positive correlation of two increasing properties of G(n,p):
    joint frequency against the product of marginals."""
    def body():
        rep = experiments.fkg_check(n, p, (prop1, prop2), trials, seed)
        return rep.to_dict(), EXIT_OK if rep.holds else EXIT_FALSE
    _run(ctx, body, seed=seed)


@cli.command("replay")
@click.argument("manifest", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def replay_cmd(ctx, manifest):
    """Re-run the subcommand recorded in a manifest with the same options."""
    record = json.loads(Path(manifest).read_text())
    command = cli.commands.get(record["subcommand"])
    if command is None or command is replay_cmd:
        raise Failure(f"cannot replay {record['subcommand']!r}")
    ctx.invoke(command, **record["config"])


def main(argv: list[str] | None = None) -> int:
    try:
        code = cli.main(args=argv, prog_name="oriented-ramsey", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return EXIT_ERROR if isinstance(exc, Failure) else exc.exit_code
    except click.exceptions.Abort:
        return EXIT_ERROR
    return code if isinstance(code, int) else EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
