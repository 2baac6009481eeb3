"""Command-line front end.

Usage::

    grover-period analyze --bethe 1,2,3
    grover-period simulate --graph edges.txt --steps 10
    grover-period enumerate --max-levels 4 --max-degree 3 --max-vertices 40
    grover-period spectrum --bethe 2,3

Exit codes: 0 success, 1 a sweep found a disagreement, 2 bad input.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import bethe_spectrum as bs
from .exact_algebra import charpoly_exact
from .graph_core import BetheSpec, Graph, GraphError, SpecError, betti_and_bipartite, bethe_graph, load_edge_list, transition_matrix
from .grover_walk import (
    DEFAULT_DENSE_LIMIT,
    SizeLimitError,
    WalkState,
    build_grover,
    bruteforce_period,
    lift_spectrum,
    numeric_spectrum,
    spectrum_mismatch,
    step,
    vertex_distribution,
)
from .periodicity import AgreementOptions, classify_bethe, enumerate_bethe, spectral_period_bethe, verify_agreement

EXIT_OK, EXIT_DISAGREE, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    bethe: BetheSpec | None = None
    graph_path: str | None = None
    steps: int = 10
    cap: int | None = None
    max_levels: int = 4
    max_degree: int = 3
    max_vertices: int = 40
    output_format: str = "json"
    confirm_bruteforce: bool = False
    dense_limit: int = DEFAULT_DENSE_LIMIT
    initial_arc: int = 0
    numeric: bool = False
    workers: int = 1

    def load_graph(self) -> Graph:
        if self.bethe is not None:
            return bethe_graph(self.bethe)[0]
        try:
            return load_edge_list(Path(self.graph_path).read_text())
        except OSError as exc:
            raise InputError(str(exc)) from None


def _frac(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _dump(doc, out) -> None:
    out.write(json.dumps(doc, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_analyze(cfg: RunConfig) -> dict:
    spec = cfg.bethe
    if spec is None:
        raise InputError("analyze needs --bethe")
    g_seq = bs.g_sequence(spec)
    p_seq = bs.p_sequence(spec)
    spectral = spectral_period_bethe(spec)
    doc = {
        "spec": str(spec),
        "vertex_count": spec.vertex_count,
        "arc_count": spec.arc_count,
        "level_sizes": list(spec.level_sizes),
        "hopping_rates": [_frac(x) for x in bs.hopping_rates(spec).D],
        "omega": list(bs.branching_levels(spec)),
        "g": [{"index": i, "polynomial": str(q), "coefficients": q.to_json()} for i, q in enumerate(g_seq)],
        "p": [{"index": i, "polynomial": str(q), "coefficients": q.to_json()} for i, q in enumerate(p_seq)],
        "transforms": [e.to_json() for e in spectral.evidence],
        "classification": classify_bethe(spec).to_json(),
        "spectral": spectral.to_json(),
        "checks": {
            "p_equals_monic_g": bs.verify_p_equals_monic_g(spec),
            "quotient_eigenvectors": bs.a_eigvec_recurrence_check(spec),
            "dimension_count": bs.dimension_count_check(spec),
        },
    }
    if spec.vertex_count <= bs.DEFAULT_VERTEX_LIMIT:
        doc["checks"]["charpoly_factorization"] = bs.charpoly_factorization_check(spec)
        doc["checks"]["aperp_eigenfunctions"] = all(
            bs.verify_eigenfunction(spec, bs.aperp_eigenfunction(spec, i)) for i in bs.branching_levels(spec)
        )
    if cfg.confirm_bruteforce:
        g, _ = bethe_graph(spec)
        cap = cfg.cap or (4 * spectral.period if spectral.period else 1000)
        k = bruteforce_period(build_grover(g), cap)
        doc["bruteforce"] = {"cap": cap, "period": k}
    return doc


def cmd_simulate(cfg: RunConfig, out) -> None:
    g = cfg.load_graph()
    if cfg.steps < 0:
        raise InputError("--steps must be nonnegative")
    if not 0 <= cfg.initial_arc < g.arc_count:
        raise InputError(f"--initial-arc must be in [0, {g.arc_count})")
    if cfg.numeric and g.arc_count > cfg.dense_limit:
        raise SizeLimitError(f"{g.arc_count} arcs exceeds the dense limit {cfg.dense_limit}")
    U = build_grover(g)
    state = WalkState.basis(g.arc_count, cfg.initial_arc, exact=not cfg.numeric)
    rows = []
    for t in range(cfg.steps + 1):
        for v, prob in sorted(vertex_distribution(g, state).items()):
            rows.append((t, v, _frac(prob) if state.exact else repr(float(prob))))
        if t < cfg.steps:
            state = step(U, state)
    if cfg.output_format == "json":
        _dump([{"time": t, "vertex": v, "probability": p} for t, v, p in rows], out)
        return
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["time", "vertex", "probability"])
    writer.writerows(rows)


def _sweep_line(args) -> dict:
    spec, opts = args
    report = verify_agreement(spec, opts)
    return {
        "spec": str(spec),
        "classifier": report.classifier.to_json(),
        "spectral": report.spectral.to_json(),
        "bruteforce": report.bruteforce.to_json(),
        "agreement": report.agreement,
    }


def cmd_enumerate(cfg: RunConfig, out) -> int:
    for b in (cfg.max_levels, cfg.max_degree, cfg.max_vertices):
        if b < 1:
            raise InputError("bounds must be positive")
    opts = AgreementOptions(graph_route=True, bruteforce=cfg.confirm_bruteforce, cap=cfg.cap)
    specs = list(enumerate_bethe(cfg.max_levels, cfg.max_degree, cfg.max_vertices))
    jobs = [(s, opts) for s in specs]
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            lines = list(pool.map(_sweep_line, jobs, chunksize=4))
    else:
        lines = map(_sweep_line, jobs)
    counts = {"specs": 0, "periodic": 0, "aperiodic": 0, "disagreements": 0}
    for line in lines:
        _dump(line, out)
        counts["specs"] += 1
        counts["periodic" if line["spectral"]["periodic"] else "aperiodic"] += 1
        counts["disagreements"] += not line["agreement"]
    _dump({"summary": counts}, out)
    return EXIT_DISAGREE if counts["disagreements"] else EXIT_OK


def cmd_spectrum(cfg: RunConfig) -> dict:
    g = cfg.load_graph()
    U = build_grover(g)
    cp = charpoly_exact(transition_matrix(g))
    b1, bip = betti_and_bipartite(g)
    lifted = lift_spectrum(cp, b1, bip, g.arc_count)
    numeric = numeric_spectrum(U, cfg.dense_limit)
    pts = lifted.points()
    return {
        "vertex_count": g.vertex_count,
        "arc_count": g.arc_count,
        "betti_number": b1,
        "bipartite": bip,
        "charpoly_T": {"polynomial": str(cp), "coefficients": cp.to_json()},
        "lifted": lifted.to_json(),
        "lifted_points": [[round(z.real, 12), round(z.imag, 12)] for z in pts],
        "numeric": [[round(complex(z).real, 12), round(complex(z).imag, 12)] for z in numeric],
        "max_mismatch": spectrum_mismatch(pts, list(numeric)),
    }


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="grover-period", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_input(p, graph_allowed=True):
        grp = p.add_mutually_exclusive_group(required=True)
        grp.add_argument("--bethe", help="comma-separated level degrees, e.g. 2,3,1")
        if graph_allowed:
            grp.add_argument("--graph", help="edge-list file of 0-based vertex pairs")

    p = sub.add_parser("analyze", help="spectral analysis of a Bethe tree")
    add_input(p, graph_allowed=False)
    p.add_argument("--confirm-bruteforce", action="store_true")
    p.add_argument("--cap", type=int)

    p = sub.add_parser("simulate", help="vertex distribution over time")
    add_input(p)
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--initial-arc", type=int, default=0)
    p.add_argument("--numeric", action="store_true", help="floating point instead of exact amplitudes")
    p.add_argument("--format", dest="output_format", choices=("csv", "json"), default="csv")
    p.add_argument("--dense-limit", type=int, default=DEFAULT_DENSE_LIMIT)

    p = sub.add_parser("enumerate", help="verify every Bethe tree within bounds")
    p.add_argument("--max-levels", type=int, default=4)
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--max-vertices", type=int, default=40)
    p.add_argument("--confirm-bruteforce", action="store_true")
    p.add_argument("--cap", type=int)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("spectrum", help="lifted versus numeric spectrum of U")
    add_input(p)
    p.add_argument("--dense-limit", type=int, default=DEFAULT_DENSE_LIMIT)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    bethe = BetheSpec.parse(ns.bethe) if getattr(ns, "bethe", None) else None
    fields = {k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__ and v is not None}
    fields.pop("bethe", None)
    return RunConfig(bethe=bethe, graph_path=getattr(ns, "graph", None), **fields)


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        ns = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        cfg = config_from_args(ns)
        if cfg.subcommand == "analyze":
            _dump(cmd_analyze(cfg), out)
        elif cfg.subcommand == "simulate":
            cmd_simulate(cfg, out)
        elif cfg.subcommand == "enumerate":
            return cmd_enumerate(cfg, out)
        elif cfg.subcommand == "spectrum":
            _dump(cmd_spectrum(cfg), out)
    except (InputError, SpecError, GraphError, SizeLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
