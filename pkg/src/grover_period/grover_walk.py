"""Exact Grover transfer matrix, walk evolution and the spectral lift from T to U."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from .exact_algebra import RationalPolynomial, squarefree_decomposition
from .graph_core import Graph

DEFAULT_DENSE_LIMIT = 2000
DEFAULT_CAP = 1000
# below 2**20: residue products are < 2**40, so float64 dot products over
# fewer than 2**13 arcs are exact.
_FILTER_PRIME = 1_000_003
_FILTER_MAX_ARCS = 1 << 13


class SizeLimitError(ValueError):
    pass


@dataclass(frozen=True)
class GroverOperator:
    """Sparse exact-rational U indexed by symmetric arcs.

    ``columns[f]`` lists ``(e, U[e, f])`` for the nonzero entries of column f.
    """

    arc_count: int
    columns: tuple[tuple[tuple[int, Fraction], ...], ...]

    @property
    def entries(self) -> dict[tuple[int, int], Fraction]:
        return {(e, f): x for f, col in enumerate(self.columns) for e, x in col}

    def to_dense(self) -> np.ndarray:
        A = np.zeros((self.arc_count, self.arc_count))
        for f, col in enumerate(self.columns):
            for e, x in col:
                A[e, f] = float(x)
        return A

    def apply(self, vec: Sequence) -> list:
        out = [0] * self.arc_count
        for f, x in enumerate(vec):
            if x:
                for e, u in self.columns[f]:
                    out[e] += u * x
        return out


def build_grover(g: Graph) -> GroverOperator:
    """U[e, f] = 2/deg(t(f)) - [e = f^-1] whenever t(f) = o(e), else 0."""
    cols = []
    for f, (_, v) in enumerate(g.arcs):
        w = Fraction(2, g.degree(v))
        back = g.inverse_arc(f)
        col = []
        for x in g.adjacency[v]:
            e = g.arc_index[(v, x)]
            val = w - 1 if e == back else w
            if val:
                col.append((e, val))
        cols.append(tuple(sorted(col)))
    return GroverOperator(g.arc_count, tuple(cols))


def is_orthogonal(U: GroverOperator) -> bool:
    """Exact check of U^T U = I through pairwise column inner products."""
    cols = [dict(c) for c in U.columns]
    for f in range(U.arc_count):
        for h in range(f, U.arc_count):
            a, b = cols[f], cols[h]
            if len(a) > len(b):
                a, b = b, a
            dot = sum((x * b[e] for e, x in a.items() if e in b), Fraction(0))
            if dot != (1 if f == h else 0):
                return False
    return True


# ---------------------------------------------------------------------------
# walk states
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WalkState:
    amplitudes: tuple
    exact: bool = True

    @classmethod
    def basis(cls, arc_count: int, arc: int, exact: bool = True) -> WalkState:
        one, zero = (Fraction(1), Fraction(0)) if exact else (1.0, 0.0)
        return cls(tuple(one if i == arc else zero for i in range(arc_count)), exact)

    @classmethod
    def of(cls, amplitudes: Sequence, exact: bool = True) -> WalkState:
        conv = Fraction if exact else float
        return cls(tuple(conv(a) for a in amplitudes), exact)

    def norm_squared(self):
        return sum((a * a for a in self.amplitudes), Fraction(0) if self.exact else 0.0)


def step(U: GroverOperator, s: WalkState) -> WalkState:
    if len(s.amplitudes) != U.arc_count:
        raise ValueError(f"state has {len(s.amplitudes)} amplitudes, operator has {U.arc_count} arcs")
    out = U.apply(s.amplitudes)
    if s.exact:
        return WalkState(tuple(Fraction(x) for x in out), True)
    return WalkState(tuple(float(x) for x in out), False)


def evolve(U: GroverOperator, s: WalkState, t: int) -> WalkState:
    if t < 0:
        raise ValueError("t must be nonnegative")
    if len(s.amplitudes) != U.arc_count:
        raise ValueError(f"state has {len(s.amplitudes)} amplitudes, operator has {U.arc_count} arcs")
    for _ in range(t):
        s = step(U, s)
    return s


def vertex_distribution(g: Graph, s: WalkState) -> dict[int, object]:
    """Squared amplitudes summed over arcs by terminal vertex."""
    if len(s.amplitudes) != g.arc_count:
        raise ValueError("state size does not match the graph")
    zero = Fraction(0) if s.exact else 0.0
    dist = {v: zero for v in range(g.vertex_count)}
    for (_, v), a in zip(g.arcs, s.amplitudes):
        dist[v] += a * a
    return dist


# ---------------------------------------------------------------------------
# brute-force period
# ---------------------------------------------------------------------------

def _is_identity(cols: list[dict[int, Fraction]]) -> bool:
    return all(len(c) == 1 and c.get(f) == 1 for f, c in enumerate(cols))


def _exact_power_is_identity(U: GroverOperator, k: int) -> bool:
    # apply U^k to every basis vector; sparse columns, exact arithmetic
    for f in range(U.arc_count):
        vec = {f: Fraction(1)}
        for _ in range(k):
            nxt: dict[int, Fraction] = {}
            for a, x in vec.items():
                for e, u in U.columns[a]:
                    nxt[e] = nxt.get(e, 0) + u * x
            vec = {e: x for e, x in nxt.items() if x}
        if vec != {f: 1}:
            return False
    return True


def _bruteforce_exact(U: GroverOperator, cap: int) -> int | None:
    cols = [{f: Fraction(1)} for f in range(U.arc_count)]
    for k in range(1, cap + 1):
        nxt = []
        for col in cols:
            out: dict[int, Fraction] = {}
            for a, x in col.items():
                for e, u in U.columns[a]:
                    out[e] = out.get(e, 0) + u * x
            nxt.append({e: x for e, x in out.items() if x})
        cols = nxt
        if _is_identity(cols):
            return k
    return None


def _bruteforce_filtered(U: GroverOperator, cap: int) -> int | None:
    # U^k != I mod p implies U^k != I; candidates passing the filter are
    # confirmed exactly, so the first returned k is the exact period.
    p = _FILTER_PRIME
    n = U.arc_count
    if n >= _FILTER_MAX_ARCS:
        raise SizeLimitError(f"{n} arcs is too many for the modular filter")
    M = np.zeros((n, n))
    for f, col in enumerate(U.columns):
        for e, x in col:
            M[e, f] = x.numerator * pow(x.denominator, -1, p) % p
    eye = np.eye(n)
    P = eye.copy()
    for k in range(1, cap + 1):
        P = np.fmod(M @ P, p)
        if np.array_equal(P, eye) and _exact_power_is_identity(U, k):
            return k
    return None


def bruteforce_period(U: GroverOperator, cap: int = DEFAULT_CAP, method: str = "filtered") -> int | None:
    """Smallest k <= cap with U^k = I, or None if there is none.

    ``method="exact"`` multiplies exact sparse powers and compares each with
    the identity.  ``method="filtered"`` screens powers modulo a prime and
    confirms candidates exactly; both return the same answer.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    if method == "exact":
        return _bruteforce_exact(U, cap)
    if method == "filtered":
        if any(x.denominator % _FILTER_PRIME == 0 for col in U.columns for _, x in col):
            return _bruteforce_exact(U, cap)
        return _bruteforce_filtered(U, cap)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# spectra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LiftedSpectrum:
    """sigma(U) described exactly from char(T).

    Each entry of ``unit_circle_factors`` is a monic squarefree factor q of
    char(T) with no roots at +-1 and the multiplicity of its roots; every root
    mu of q contributes exp(+-i arccos mu), each with that multiplicity.
    """

    unit_circle_factors: tuple[tuple[RationalPolynomial, int], ...]
    mult_plus_one: int
    mult_minus_one: int

    @property
    def total(self) -> int:
        return 2 * sum(q.degree * m for q, m in self.unit_circle_factors) + self.mult_plus_one + self.mult_minus_one

    def points(self, dps: int = 40) -> list[complex]:
        pts = [1 + 0j] * self.mult_plus_one + [-1 + 0j] * self.mult_minus_one
        for q, mult in self.unit_circle_factors:
            for mu in real_roots(q, dps):
                theta = math.acos(max(-1.0, min(1.0, mu)))
                pts.extend([cmath.exp(1j * theta), cmath.exp(-1j * theta)] * mult)
        return pts

    def to_json(self) -> dict:
        return {
            "mult_plus_one": self.mult_plus_one,
            "mult_minus_one": self.mult_minus_one,
            "unit_circle_factors": [
                {"factor": str(q), "coefficients": q.to_json(), "multiplicity": m}
                for q, m in self.unit_circle_factors
            ],
        }


def real_roots(q: RationalPolynomial, dps: int = 40) -> list[float]:
    """Roots of a squarefree real-rooted q, computed in high precision."""
    if q.degree == 1:
        return [float(-q.coeffs[0] / q.coeffs[1])]
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(q.coeffs)]
        roots = mpmath.polyroots(coeffs, maxsteps=400, extraprec=4 * dps)
    return sorted(float(mpmath.re(r)) for r in roots)


def split_plus_minus_one(charpoly: RationalPolynomial) -> tuple[RationalPolynomial, int, int]:
    """Divide out (x - 1)^a (x + 1)^b; returns the cofactor, a and b."""
    counts = []
    rest = charpoly
    for r in (1, -1):
        lin = RationalPolynomial([-r, 1], charpoly.var)
        c = 0
        while True:
            q, rem = divmod(rest, lin)
            if not rem.is_zero():
                break
            rest, c = q, c + 1
        counts.append(c)
    return rest, counts[0], counts[1]


def lift_spectrum(charpoly_T: RationalPolynomial, b1: int, is_bipartite: bool,
                  arc_count: int | None = None) -> LiftedSpectrum:
    """Spectral mapping from char(T) to sigma(U).

    mu = +-1 in sigma(T) lift to a single eigenvalue +-1 each; on top of these
    U has b1 extra eigenvalues 1 and b1 - 1 + [bipartite] extra eigenvalues -1.
    """
    rest, a_plus, a_minus = split_plus_minus_one(charpoly_T)
    factors = tuple(squarefree_decomposition(rest))
    lifted = LiftedSpectrum(factors, b1 + a_plus, b1 - 1 + int(is_bipartite) + a_minus)
    if lifted.mult_minus_one < 0 or (arc_count is not None and lifted.total != arc_count):
        raise ValueError(f"lifted multiplicity {lifted.total} does not match {arc_count} arcs")
    return lifted


def numeric_spectrum(U: GroverOperator, dense_limit: int = DEFAULT_DENSE_LIMIT) -> np.ndarray:
    if U.arc_count > dense_limit:
        raise SizeLimitError(f"{U.arc_count} arcs exceeds the dense limit {dense_limit}")
    return np.linalg.eigvals(U.to_dense())


def _angle_key(z: complex) -> float:
    a = cmath.phase(z)
    return a + 2 * math.pi if a < -math.pi + 1e-7 else a


def spectrum_mismatch(a: Sequence[complex], b: Sequence[complex]) -> float:
    """Largest componentwise distance after sorting both multisets by angle."""
    if len(a) != len(b):
        return math.inf
    sa = sorted(a, key=_angle_key)
    sb = sorted(b, key=_angle_key)
    return max((abs(x - y) for x, y in zip(sa, sb)), default=0.0)
