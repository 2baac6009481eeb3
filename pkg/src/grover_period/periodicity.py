"""Deciding whether the Grover walk on a Bethe tree is periodic, three ways.

* :func:`classify_bethe` matches the degree sequence against the known
  periodic families (paths, subdivided stars, S_k(B(1,2,3)), S_k(B(s,3))).
* :func:`spectral_period_bethe` / :func:`spectral_period_graph` certify the
  period, or its absence, from the exact spectrum of the random walk.
* :func:`~grover_period.grover_walk.bruteforce_period` powers U directly.

:func:`verify_agreement` runs all of them on one spec.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

from .bethe_spectrum import branching_levels, p_sequence
from .exact_algebra import (
    CyclotomicFactorization,
    NotCyclotomic,
    RationalPolynomial,
    charpoly_exact,
    cyclotomic_product_test,
    order_lcm,
    zhukovskij_transform,
)
from .graph_core import BetheSpec, Graph, betti_and_bipartite, bethe_graph, transition_matrix
from .grover_walk import DEFAULT_CAP, SizeLimitError, build_grover, bruteforce_period, lift_spectrum

PATH = "Path"
STAR = "SubdividedStar"
B123 = "SubdividedB123"
BS3 = "SubdividedBs3"
APERIODIC = "Aperiodic"


@dataclass(frozen=True)
class Classification:
    family: str
    parameters: dict[str, int]
    period: int | None
    also_matches: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "parameters": dict(sorted(self.parameters.items())),
            "period": self.period,
            "also_matches": list(self.also_matches),
        }


def _ones(seq) -> bool:
    return all(x == 1 for x in seq)


def classify_bethe(spec: BetheSpec) -> Classification:
    """Match ``spec`` against the periodic families, first match wins."""
    d = spec.degrees
    n = spec.n
    if _ones(d):
        return Classification(PATH, {"n": n}, 2 * n)
    if d[0] >= 2 and _ones(d[1:]):
        k, m = n, d[0]
        also = (f"{PATH}(n={2 * k})",) if m == 2 else ()
        return Classification(STAR, {"k": k, "l": m + 1}, 4 * k, also)
    if n % 2 == 0:
        k = n // 2
        if d[k] >= 2 and _ones(d[:k]) and _ones(d[k + 1:]):
            return Classification(STAR, {"k": k, "l": d[k] + 2}, 4 * k)
    if n % 3 == 0:
        k = n // 3
        rest = d[:k] + d[k + 1:2 * k] + d[2 * k + 1:]
        if d[k] == 2 and d[2 * k] == 3 and _ones(rest):
            return Classification(B123, {"k": k}, 12 * k)
    if n % 2 == 0:
        k = n // 2
        if d[0] >= 2 and d[k] == 3 and _ones(d[1:k]) and _ones(d[k + 1:]):
            return Classification(BS3, {"k": k, "s": d[0]}, 12 * k)
    return Classification(APERIODIC, {}, None)


# ---------------------------------------------------------------------------
# spectral route
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TransformEvidence:
    label: str
    polynomial: RationalPolynomial
    transform: RationalPolynomial
    result: CyclotomicFactorization | NotCyclotomic

    def to_json(self) -> dict:
        out = {
            "label": self.label,
            "polynomial": str(self.polynomial),
            "transform": str(self.transform),
            "transform_coefficients": self.transform.to_json(),
        }
        if isinstance(self.result, CyclotomicFactorization):
            out["cyclotomic_factors"] = self.result.to_json()
            out["order"] = order_lcm(self.result)
        else:
            out["not_cyclotomic"] = self.result.reason
        return out


@dataclass(frozen=True)
class SpectralResult:
    """``period`` is None when the walk is not periodic; ``witness`` then names
    the first polynomial whose transform is not a cyclotomic product."""

    period: int | None
    evidence: tuple[TransformEvidence, ...]
    witness: TransformEvidence | None = None

    @property
    def periodic(self) -> bool:
        return self.period is not None

    def to_json(self) -> dict:
        out = {"periodic": self.periodic, "period": self.period}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def _test(label: str, poly: RationalPolynomial) -> TransformEvidence:
    F = zhukovskij_transform(poly)
    return TransformEvidence(label, poly, F, cyclotomic_product_test(F))


def _combine(evidence: list[TransformEvidence], extra_order: int = 1) -> SpectralResult:
    witness = next((e for e in evidence if isinstance(e.result, NotCyclotomic)), None)
    if witness is not None:
        return SpectralResult(None, tuple(evidence), witness)
    period = math.lcm(extra_order, *(order_lcm(e.result) for e in evidence))
    return SpectralResult(period, tuple(evidence))


def spectral_period_bethe(spec: BetheSpec) -> SpectralResult:
    """Test p_i for every branching age i and p_{n+1}; the period is the lcm
    of the orders of the cyclotomic factors of their transforms."""
    p = p_sequence(spec)
    ages = list(branching_levels(spec)) + [spec.n + 1]
    return _combine([_test(f"p_{i}", p[i]) for i in ages])


def spectral_period_graph(g: Graph, vertex_limit: int = 60) -> SpectralResult:
    """Same test on the full char(T) of an arbitrary connected graph.

    Eigenvalues +-1 of T already appear as Phi_1 / Phi_2 factors; the only
    addition is the -1 eigenvalue U acquires from cycles (b1 >= 2) or
    bipartiteness.
    """
    if g.vertex_count > vertex_limit:
        raise SizeLimitError(f"{g.vertex_count} vertices exceeds the limit {vertex_limit}")
    cp = charpoly_exact(transition_matrix(g))
    b1, bip = betti_and_bipartite(g)
    lifted = lift_spectrum(cp, b1, bip, g.arc_count)
    return _combine([_test("char(T)", cp)], 2 if lifted.mult_minus_one else 1)


# ---------------------------------------------------------------------------
# agreement harness
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AgreementOptions:
    graph_route: bool = True
    graph_vertex_limit: int = 60
    bruteforce: bool = True
    bruteforce_budget: int = 200_000   # steps x arcs
    cap: int | None = None
    method: str = "filtered"


@dataclass(frozen=True)
class BruteForceResult:
    status: str                  # "period", "none_within_cap" or "skipped"
    period: int | None = None
    cap: int | None = None

    def to_json(self) -> dict:
        return {"status": self.status, "period": self.period, "cap": self.cap}


@dataclass(frozen=True)
class PeriodicityReport:
    spec: BetheSpec
    classifier: Classification
    spectral: SpectralResult
    graph_spectral: SpectralResult | None
    bruteforce: BruteForceResult
    agreement: bool
    notes: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "spec": str(self.spec),
            "classifier": self.classifier.to_json(),
            "spectral": self.spectral.to_json(),
            "graph_spectral": None if self.graph_spectral is None else self.graph_spectral.to_json(),
            "bruteforce": self.bruteforce.to_json(),
            "agreement": self.agreement,
            "notes": list(self.notes),
        }


def verify_agreement(spec: BetheSpec, options: AgreementOptions | None = None) -> PeriodicityReport:
    """Run every route on ``spec`` and record whether they agree.

    A brute-force run that finds nothing within its cap agrees with an
    aperiodic verdict, or with a period larger than the cap.
    """
    opts = options or AgreementOptions()
    cls = classify_bethe(spec)
    spectral = spectral_period_bethe(spec)
    notes = []
    verdicts = [cls.period, spectral.period]

    graph_res = None
    if opts.graph_route and spec.vertex_count <= opts.graph_vertex_limit:
        g, _ = bethe_graph(spec)
        graph_res = spectral_period_graph(g, opts.graph_vertex_limit)
        verdicts.append(graph_res.period)
    elif opts.graph_route:
        notes.append("graph route skipped: too many vertices")

    expected = spectral.period
    cap = opts.cap or (4 * expected if expected else DEFAULT_CAP)
    brute = BruteForceResult("skipped")
    consistent = True
    if opts.bruteforce:
        steps = expected if expected and expected <= cap else cap
        if steps * spec.arc_count <= opts.bruteforce_budget:
            g, _ = bethe_graph(spec)
            k = bruteforce_period(build_grover(g), cap, opts.method)
            if k is None:
                brute = BruteForceResult("none_within_cap", None, cap)
                consistent = expected is None or expected > cap
            else:
                brute = BruteForceResult("period", k, cap)
                verdicts.append(k)
        else:
            notes.append("brute force skipped: over budget")

    agreement = consistent and len(set(verdicts)) == 1
    return PeriodicityReport(spec, cls, spectral, graph_res, brute, agreement, tuple(notes))


def enumerate_bethe(max_levels: int, max_degree: int, max_vertices: int) -> Iterator[BetheSpec]:
    """All specs with n <= max_levels, 1 <= d(i) <= max_degree and at most
    max_vertices vertices, in lexicographic order."""
    if min(max_levels, max_degree, max_vertices) < 1:
        raise ValueError("bounds must be positive")

    def walk(prefix: tuple[int, ...], last_size: int, total: int):
        for d in range(1, max_degree + 1):
            size = last_size * d
            if total + size > max_vertices:
                break
            spec = prefix + (d,)
            yield BetheSpec(spec)
            if len(spec) < max_levels:
                yield from walk(spec, size, total + size)

    yield from walk((), 1, 1)
