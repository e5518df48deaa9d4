"""Command-line front end.

Exit status: 0 success, 1 a verification exceeded its tolerance, 2 bad input.

Inputs are graph files (``.json`` or the text format) or generator specs:

    paper-path:N=100
    path:N=50,m=n^-4,b=n^2,c=0
    random:N=20[,seed=7]
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import analysis
from .eigensolve import EigensolveError, eigendecompose
from .graph import (PAPER_PATH, FamilyKind, Graph, GraphFamily, InvalidGraphError,
                    TruncationFlavor, random_connected_graph, truncate, validate)
from .heat import HeatKernel
from .io import GraphFormatError, read_graph
from .operator import assemble, max_potential_ratio
from .rules import RuleSyntaxError, parse_rule

COMMANDS = ("validate", "spectrum", "weyl", "heat", "compare", "hadamard", "converge")
DEFAULT_TOLERANCES = {
    "compare": 1e-9,
    "weyl": 1e-8,
    "hadamard": 1e-5,
    "heat": 1e-10,
}


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input: str
    flavor: TruncationFlavor = TruncationFlavor.NEUMANN
    tolerances: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    output: str | None = None
    potential: str | None = None
    times: tuple[float, ...] = (1e-3, 1e-2, 1e-1, 1.0)
    tau: float = 0.5
    n: int | None = None
    h: float = 1e-4
    sizes: tuple[int, ...] | None = None
    K: int = 5
    dump_matrix: bool = False


def seed_from_env() -> int:
    return int(os.environ.get("SPECTRAL_GRAPH_SEED", "42"))


def parse_potential_spec(spec: str, N: int) -> np.ndarray:
    """Potential on vertices ``1..N`` from a closed form in ``n`` or a value file."""
    path = Path(spec)
    if path.is_file():
        values = []
        for line in path.read_text().splitlines():
            line = line.split("#", 1)[0].replace(",", " ")
            values.extend(float(tok) for tok in line.split())
        if len(values) != N:
            raise ValueError(f"{spec}: expected {N} potential values, found {len(values)}")
        return np.array(values)
    return parse_rule(spec).evaluate(N)


def _parse_generator_args(body: str) -> dict[str, str]:
    out = {}
    for part in filter(None, (p.strip() for p in body.split(","))):
        key, sep, val = part.partition("=")
        if not sep:
            raise InputError(f"generator argument {part!r} is not key=value")
        out[key.strip()] = val.strip()
    return out


def _int_arg(args, key, default=None):
    if key not in args:
        if default is None:
            raise InputError(f"generator needs {key}=")
        return default
    try:
        return int(args[key])
    except ValueError:
        raise InputError(f"{key} must be an integer, got {args[key]!r}") from None


def resolve_family(spec: str) -> tuple[GraphFamily, int | None]:
    name, _, body = spec.partition(":")
    args = _parse_generator_args(body)
    N = _int_arg(args, "N", 0) or None
    if name == "paper-path":
        extra = set(args) - {"N"}
        if extra:
            raise InputError(f"paper-path takes only N=, got {sorted(extra)}")
        return PAPER_PATH, N
    if name == "path":
        extra = set(args) - {"N", "m", "b", "c"}
        if extra:
            raise InputError(f"unknown path generator keys {sorted(extra)}")
        try:
            family = GraphFamily(
                kind=FamilyKind.CUSTOM,
                m_rule=parse_rule(args.get("m", "1")),
                b_rule=parse_rule(args.get("b", "1")),
                c_rule=parse_rule(args.get("c", "0")),
            )
        except RuleSyntaxError as exc:
            raise InputError(str(exc)) from None
        return family, N
    raise InputError(f"unknown generator {name!r}")


def is_generator(spec: str) -> bool:
    return spec.split(":", 1)[0] in {"paper-path", "path", "random"} and not Path(spec).exists()


def resolve_input(spec: str, flavor: TruncationFlavor) -> Graph:
    if not is_generator(spec):
        try:
            graph = read_graph(spec)
        except GraphFormatError as exc:
            raise InputError(str(exc)) from None
        return Graph(m=graph.m, c=graph.c, edges=graph.edges, labels=graph.labels, flavor=flavor)
    name, _, body = spec.partition(":")
    if name == "random":
        args = _parse_generator_args(body)
        extra = set(args) - {"N", "seed"}
        if extra:
            raise InputError(f"unknown random generator keys {sorted(extra)}")
        rng = np.random.default_rng(_int_arg(args, "seed", seed_from_env()))
        return random_connected_graph(rng, _int_arg(args, "N"))
    family, N = resolve_family(spec)
    if N is None:
        raise InputError(f"{name} generator needs N=")
    try:
        return truncate(family, N, flavor)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _fmt(x) -> str:
    return repr(float(x))


class Reporter:
    """Collects CSV tables and text lines; writes them to files or stdout."""

    def __init__(self, prefix: str | None, out=None):
        self.prefix = prefix
        self.out = out or sys.stdout
        self.lines: list[str] = []
        self.failed = False

    def text(self, line: str = "") -> None:
        self.lines.append(line)

    def check(self, name: str, value: float, tol: float, ok: bool | None = None) -> bool:
        ok = value <= tol if ok is None else ok
        self.failed |= not ok
        self.text(f"{'PASS' if ok else 'FAIL'}  {name}: {value:.3e} (tolerance {tol:.1e})")
        return ok

    def table(self, name: str, header, rows) -> None:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
        self.raw(name, buf.getvalue())

    def raw(self, name: str, content: str) -> None:
        if self.prefix is None:
            self.text(f"--- {name}")
            self.lines.extend(content.rstrip("\n").split("\n"))
        else:
            path = Path(f"{self.prefix}{name}")
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(content)
            self.text(f"wrote {path}")

    def flush(self) -> None:
        body = "\n".join(self.lines) + "\n"
        if self.prefix is not None:
            path = Path(f"{self.prefix}report.txt")
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(body)
        self.out.write(body)


def _potential_bound_note(rep: Reporter, graph: Graph, c=None) -> None:
    g = graph if c is None else graph.with_potential(c)
    rep.text(f"max c(x)/m(x) = {max_potential_ratio(g):.6g}")


def _cmd_validate(cfg: RunConfig, graph: Graph, rep: Reporter) -> None:
    rep.text(f"graph with {graph.size} vertices and {len(graph.edges)} edges: valid")


def _cmd_spectrum(cfg: RunConfig, graph: Graph, rep: Reporter) -> None:
    op = assemble(graph)
    spec = eigendecompose(op)
    bound = 1e-9 * (1 + op.norm_inf())
    rep.text(f"{spec.size} eigenvalues in [{spec.lambdas[0]:.10g}, {spec.lambdas[-1]:.10g}]")
    _potential_bound_note(rep, graph)
    rep.check("residual bound", spec.residual_bound, bound)
    rep.table("spectrum.csv", ("n", "lambda", "residual"),
              ((k + 1, lam, res) for k, (lam, res) in enumerate(zip(spec.lambdas, spec.residuals))))
    if cfg.dump_matrix:
        rep.raw("matrix.csv", op.to_csv())


def _cmd_weyl(cfg: RunConfig, graph: Graph, rep: Reporter) -> None:
    spec = eigendecompose(assemble(graph))
    defects = analysis.local_weyl_check(spec, graph.m)
    rep.check("local Weyl law, max vertex defect", float(defects.max()), cfg.tolerances["weyl"])
    rep.table("weyl.csv", ("vertex", "defect"), zip(graph.labels, defects))


def _cmd_heat(cfg: RunConfig, graph: Graph, rep: Reporter) -> None:
    hk = HeatKernel(eigendecompose(assemble(graph)))
    tol = cfg.tolerances["heat"]
    worst = -math.inf
    rows = []
    pairs = [(x, y) for x in range(graph.size) for y in range(graph.size)] if graph.size <= 20 \
        else [(x, x) for x in range(graph.size)]
    for t in cfg.times:
        P = hk.matrix(t)
        diag_excess = np.diag(P) - 1.0 / graph.m
        worst = max(worst, float(diag_excess.max()))
        for x, y in pairs:
            rows.append((t, graph.labels[x], graph.labels[y], hk.kernel(t, x, y)))
    rep.check("diagonal bound, max p_t(x,x) - 1/m(x)", worst, tol)
    rep.table("heat.csv", ("t", "x", "y", "p"), rows)


def _potential(cfg: RunConfig, graph: Graph) -> np.ndarray:
    if cfg.potential is None:
        raise InputError(f"{cfg.command} needs --c")
    try:
        return parse_potential_spec(cfg.potential, graph.size)
    except (RuleSyntaxError, ValueError) as exc:
        raise InputError(str(exc)) from None


def _cmd_compare(cfg: RunConfig, graph: Graph, rep: Reporter) -> None:
    c = _potential(cfg, graph)
    report = analysis.spectral_comparison(graph, c)
    rtol = cfg.tolerances["compare"]
    _potential_bound_note(rep, graph, graph.c + c)
    rep.text(f"target sum c/m           = {report.target!r}")
    rep.text(f"sum of eigenvalue shifts = {report.total!r}")
    rep.check("spectral comparison discrepancy", report.discrepancy, report.tolerance(rtol))
    rep.check("largest downward eigenvalue shift", max(0.0, -float(report.diffs.min())), 1e-9)
    rep.table("compare.csv", ("n", "lambda0", "lambdac", "diff", "partial_sum"),
              ((k + 1, a, b, d, s) for k, (a, b, d, s) in enumerate(
                  zip(report.lambdas0, report.lambdasc, report.diffs, report.partial_sums))))


def _cmd_hadamard(cfg: RunConfig, graph: Graph, rep: Reporter) -> None:
    c = _potential(cfg, graph)
    _potential_bound_note(rep, graph, graph.c + c)
    tol = cfg.tolerances["hadamard"]
    indices = [cfg.n] if cfg.n is not None else range(1, graph.size + 1)
    rows = []
    worst = 0.0
    skipped = 0
    for n in indices:
        try:
            exact = analysis.hadamard_derivative(graph, c, cfg.tau, n)
            approx = analysis.hadamard_fd_oracle(graph, c, cfg.tau, n, cfg.h)
        except (analysis.NonSimpleEigenvalueError, analysis.EigenvalueCrossingError) as exc:
            if cfg.n is not None:
                raise InputError(str(exc)) from None
            skipped += 1
            continue
        err = abs(exact - approx) / max(abs(exact), 1e-300) if exact else abs(approx)
        worst = max(worst, err)
        rows.append((n, exact, approx, err))
    total = float(np.sum(analysis.hadamard_derivatives(graph, c, cfg.tau)))
    mass = math.fsum(c / graph.m)
    if skipped:
        rep.text(f"skipped {skipped} non-simple or crossing eigenvalues")
    rep.check("Hadamard vs central difference, max relative error", worst, tol)
    rep.check("sum of derivatives vs sum c/m", abs(total - mass), 1e-8 * (1 + mass))
    rep.table("hadamard.csv", ("n", "analytic", "central_difference", "relative_error"), rows)


def _cmd_converge(cfg: RunConfig, rep: Reporter) -> None:
    if not is_generator(cfg.input) or cfg.input.startswith("random"):
        raise InputError("converge needs a family generator (paper-path or path:...)")
    family, N = resolve_family(cfg.input)
    sizes = cfg.sizes or ((N,) if N else None)
    if not sizes:
        raise InputError("converge needs --sizes or N= in the generator")
    if cfg.potential is None:
        raise InputError("converge needs --c")
    try:
        c_rule = parse_rule(cfg.potential)
    except RuleSyntaxError as exc:
        raise InputError(str(exc)) from None
    study = analysis.convergence_study(family, c_rule, sizes, cfg.K)
    rtol = cfg.tolerances["compare"]
    if study.target_infinite:
        rep.text(f"c/m = {study.ratio_rule}: series diverges, infinite-graph target is +inf")
    elif study.infinite_target is not None:
        rep.text(f"c/m = {study.ratio_rule}: infinite-graph target {study.infinite_target!r}")
    rows = []
    for row in study.rows:
        r = row.report
        tail = study.tails.get(row.N)
        extra = f", tail {tail:.6g}" if tail is not None else ""
        rep.check(f"N={row.N} {row.flavor.value}: discrepancy (target {r.target:.10g}{extra})",
                  r.discrepancy, r.tolerance(rtol))
        gaps = list(row.gaps) + [float("nan")] * (cfg.K - row.gaps.size)
        rows.append((row.N, row.flavor.value, r.total, r.target, *gaps))
    rep.table("converge.csv", ("N", "flavor", "partial_sum", "target",
                               *(f"gap_{k}" for k in range(1, cfg.K + 1))), rows)


def run(cfg: RunConfig, out=None) -> int:
    rep = Reporter(cfg.output, out)
    try:
        if cfg.command == "converge":
            _cmd_converge(cfg, rep)
        else:
            graph = resolve_input(cfg.input, cfg.flavor)
            problems = validate(graph)
            if problems:
                for p in problems:
                    rep.text(f"invalid: {p}")
                rep.flush()
                return 2
            handler = {
                "validate": _cmd_validate, "spectrum": _cmd_spectrum, "weyl": _cmd_weyl,
                "heat": _cmd_heat, "compare": _cmd_compare, "hadamard": _cmd_hadamard,
            }[cfg.command]
            handler(cfg, graph, rep)
    except (InputError, InvalidGraphError, ValueError, IndexError) as exc:
        rep.text(f"error: {exc}")
        rep.flush()
        return 2
    except (EigensolveError, RuntimeError) as exc:
        rep.text(f"FAIL  {exc}")
        rep.flush()
        return 1
    rep.flush()
    return 1 if rep.failed else 0


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(t) for t in text.split(",") if t.strip())


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.split(",") if t.strip())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graph-spectra", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--input", required=True, help="graph file or generator spec")
    parser.add_argument("--flavor", default="neumann", choices=[f.value for f in TruncationFlavor])
    parser.add_argument("--output", help="path prefix for CSV and text reports")
    parser.add_argument("--c", dest="potential", help="potential: closed form in n, or a value file")
    parser.add_argument("--t", dest="times", type=_floats, default=(1e-3, 1e-2, 1e-1, 1.0),
                        help="comma-separated heat times")
    parser.add_argument("--tau", type=float, default=0.5)
    parser.add_argument("--n", type=int, help="1-based eigenvalue index for hadamard")
    parser.add_argument("--h", type=float, default=1e-4, help="finite-difference step")
    parser.add_argument("--sizes", type=_ints, help="comma-separated truncation sizes")
    parser.add_argument("--K", type=int, default=5, help="number of eigenvalue gaps to record")
    parser.add_argument("--dump-matrix", action="store_true")
    for name, default in DEFAULT_TOLERANCES.items():
        parser.add_argument(f"--{name}-tol", type=float, default=default)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    cfg = RunConfig(
        command=args.command,
        input=args.input,
        flavor=TruncationFlavor.parse(args.flavor),
        tolerances={name: getattr(args, f"{name}_tol") for name in DEFAULT_TOLERANCES},
        output=args.output,
        potential=args.potential,
        times=args.times,
        tau=args.tau,
        n=args.n,
        h=args.h,
        sizes=args.sizes,
        K=args.K,
        dump_matrix=args.dump_matrix,
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
