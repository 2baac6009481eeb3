"""Spectrum of the random walk on a generalized Bethe tree.

The level partition of B(d(0), ..., d(n-1)) is equitable, so the symmetrised
walk matrix restricted to the span of level indicators is a Jacobi matrix
whose squared off-diagonal entries are the hopping rates D_0..D_{n-1}.  The
remaining eigenvalues live on functions with zero level sums and are the roots
of the polynomials g_i for the branching ages i.

Polynomials are in the variable ``x`` (standing for the eigenvalue lambda).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact_algebra import (
    RationalPolynomial,
    charpoly_exact,
    quotient_ring_reduce,
    zhukovskij_transform,
)
from .graph_core import BetheSpec, bethe_graph, transition_matrix
from .grover_walk import SizeLimitError, real_roots

VAR = "x"
X = RationalPolynomial([0, 1], VAR)
ONE = RationalPolynomial([1], VAR)
DEFAULT_VERTEX_LIMIT = 60


@dataclass(frozen=True)
class HoppingRates:
    D: tuple[Fraction, ...]


def hopping_rates(spec: BetheSpec) -> HoppingRates:
    """D_0 = 1/(d(1)+1) and D_i = d(i) / ((d(i)+1)(d(i+1)+1)), using d(n) = 0."""
    d = spec.d
    rates = [Fraction(1, d(1) + 1)]
    for i in range(1, spec.n):
        rates.append(Fraction(d(i), (d(i) + 1) * (d(i + 1) + 1)))
    return HoppingRates(tuple(rates))


def branching_levels(spec: BetheSpec) -> tuple[int, ...]:
    """Ages i in [1, n] whose level C_{n-i} has at least two children per vertex."""
    return tuple(i for i in range(1, spec.n + 1) if spec.d(spec.n - i) >= 2)


@dataclass(frozen=True)
class Segment:
    age: int        # K_j
    gap: int        # k_j = K_j - K_{j-1}
    children: int   # d(n - K_j)


def branching_segments(spec: BetheSpec) -> tuple[list[Segment], int]:
    """Branching ages with the gaps between them, plus the top gap n - K_l."""
    segs = []
    prev = 0
    for age in branching_levels(spec):
        segs.append(Segment(age, age - prev, spec.d(spec.n - age)))
        prev = age
    return segs, spec.n - prev


# ---------------------------------------------------------------------------
# quotient matrix and the two polynomial sequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuotientTridiagonal:
    """Walk matrix on the level indicators Psi_0..Psi_n.

    Only the squared couplings are stored: the coupling between Psi_m and
    Psi_{m+1} is sqrt(rates[m]).
    """

    rates: tuple[Fraction, ...]

    @property
    def size(self) -> int:
        return len(self.rates) + 1

    def squared_form(self, start: int = 0) -> list[list[Fraction]]:
        """Non-symmetric tridiagonal (1 above, D below) similar to the block from ``start``."""
        m = self.size - start
        M = [[Fraction(0)] * m for _ in range(m)]
        for a in range(m - 1):
            M[a][a + 1] = Fraction(1)
            M[a + 1][a] = self.rates[start + a]
        return M

    def charpoly(self) -> RationalPolynomial:
        return charpoly_exact(self.squared_form(), VAR)

    def dense(self):
        import numpy as np

        J = np.zeros((self.size, self.size))
        for m, r in enumerate(self.rates):
            J[m, m + 1] = J[m + 1, m] = math.sqrt(r)
        return J


def quotient_tridiagonal(spec: BetheSpec) -> QuotientTridiagonal:
    return QuotientTridiagonal(hopping_rates(spec).D)


def g_sequence(spec: BetheSpec) -> list[RationalPolynomial]:
    """g_0..g_{n+1}: g_i = (d(n-i+1)+1) x g_{i-1} - d(n-i+1) g_{i-2} for i in [2, n],
    and g_{n+1} = d(0) (x g_n - g_{n-1})."""
    n, d = spec.n, spec.d
    g = [ONE, X]
    for i in range(2, n + 1):
        c = d(n - i + 1)
        g.append(X * g[i - 1] * (c + 1) - g[i - 2] * c)
    g.append((X * g[n] - g[n - 1]) * d(0))
    return g


def p_sequence(spec: BetheSpec) -> list[RationalPolynomial]:
    """p_0..p_{n+1}: p_i = x p_{i-1} - D_{n-i+1} p_{i-2}."""
    D = hopping_rates(spec).D
    n = spec.n
    p = [ONE, X]
    for i in range(2, n + 2):
        p.append(X * p[i - 1] - p[i - 2] * D[n - i + 1])
    return p


def p_by_determinant(spec: BetheSpec, i: int) -> RationalPolynomial:
    """det(xI - J^(i)) for the trailing i x i block of the quotient matrix."""
    if i == 0:
        return ONE
    Q = quotient_tridiagonal(spec)
    return charpoly_exact(Q.squared_form(Q.size - i), VAR)


def verify_p_equals_monic_g(spec: BetheSpec) -> bool:
    return all(p == g.monic() for p, g in zip(p_sequence(spec), g_sequence(spec)))


# ---------------------------------------------------------------------------
# Chebyshev polynomials
# ---------------------------------------------------------------------------

def chebyshev(kind: str, i: int) -> RationalPolynomial:
    """T_i (kind "first") or U_i (kind "second"); U_{-1} = 0."""
    if kind not in ("first", "second"):
        raise ValueError(f"unknown kind {kind!r}")
    if i == -1 and kind == "second":
        return RationalPolynomial((), VAR)
    if i < 0:
        raise ValueError("degree must be nonnegative")
    prev, cur = ONE, (X if kind == "first" else X * 2)
    if i == 0:
        return prev
    for _ in range(i - 1):
        prev, cur = cur, X * cur * 2 - prev
    return cur


def chebyshev_identity_check(i: int, kind: str) -> bool:
    """(2z)^i T_i((z+1/z)/2) = 2^(i-1)(z^(2i)+1) and
    (2z)^i U_i((z+1/z)/2) = 2^i sum_j z^(2i-2j), as polynomial identities."""
    if i < 1:
        raise ValueError("i must be positive")
    L = chebyshev(kind, i)
    lead = L.leading
    lhs = zhukovskij_transform(L.monic()) * lead
    if kind == "first":
        rhs = (RationalPolynomial.monomial(2 * i, 1, "z") + 1) * 2 ** (i - 1)
    else:
        rhs = RationalPolynomial([1 if k % 2 == 0 else 0 for k in range(2 * i + 1)], "z") * 2 ** i
    return lhs == rhs


def first_branching_age(spec: BetheSpec) -> int:
    """Smallest age K with d(n-K) >= 2, or n for a path."""
    omega = branching_levels(spec)
    return omega[0] if omega else spec.n


def claim_path_check(spec: BetheSpec) -> bool:
    """p_i = T_i / 2^(i-1) for every age i up to the first branching age."""
    p = p_sequence(spec)
    return all(p[i] == chebyshev("first", i) * Fraction(1, 2 ** (i - 1))
               for i in range(1, first_branching_age(spec) + 1))


# ---------------------------------------------------------------------------
# eigenfunctions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SymbolicEigenfunction:
    spec: BetheSpec
    age: int
    v_star: int
    v1: int
    v2: int
    values: dict[int, RationalPolynomial]


def aperp_eigenfunction(spec: BetheSpec, i: int, v_star: int | None = None,
                        children: tuple[int, int] | None = None) -> SymbolicEigenfunction:
    """Antisymmetric eigenfunction for the roots of g_i, supported below v_star.

    Descendants of v1 at level n-j carry g_j, those of v2 carry -g_j
    (j in [0, i-1]); every other vertex carries 0.
    """
    n = spec.n
    if i not in branching_levels(spec):
        raise ValueError(f"age {i} is not a branching age of {spec}")
    g, part = bethe_graph(spec)
    level = n - i
    if v_star is None:
        v_star = part.levels[level][0]
    if v_star not in part.levels[level]:
        raise ValueError(f"vertex {v_star} is not on level {level}")
    kids = part.children(v_star)
    if len(kids) < 2:
        raise ValueError(f"vertex {v_star} has fewer than two children")
    v1, v2 = children if children is not None else (kids[0], kids[1])
    if v1 == v2 or v1 not in kids or v2 not in kids:
        raise ValueError("children pair must be two distinct children of v_star")
    gs = g_sequence(spec)
    zero = RationalPolynomial((), VAR)
    values = {v: zero for v in range(g.vertex_count)}
    for top, sign in ((v1, 1), (v2, -1)):
        layer = [top]
        for lev in range(level + 1, n + 1):
            for v in layer:
                values[v] = gs[n - lev] * sign
            layer = [c for v in layer for c in part.children(v)]
    return SymbolicEigenfunction(spec, i, v_star, v1, v2, values)


def verify_eigenfunction(spec: BetheSpec, f: SymbolicEigenfunction, i: int | None = None) -> bool:
    """(T f)(x) = lambda f(x) in Q[lambda]/(monic g_i) at every vertex, and zero level sums."""
    i = f.age if i is None else i
    g, part = bethe_graph(spec)
    modulus = g_sequence(spec)[i].monic()
    zero = RationalPolynomial((), VAR)
    for v in range(g.vertex_count):
        acc = zero
        for u in g.adjacency[v]:
            acc = acc + f.values[u]
        residual = acc * Fraction(1, g.degree(v)) - X * f.values[v]
        if not quotient_ring_reduce(residual, modulus).is_zero():
            return False
    for layer in part.levels:
        total = zero
        for v in layer:
            total = total + f.values[v]
        if not total.is_zero():
            return False
    return True


def a_eigvec_recurrence_check(spec: BetheSpec, tol: float = 1e-8) -> bool:
    """Eigenvectors of the quotient matrix built from the p-sequence.

    Exact part: each p_i equals the determinant of the trailing block and the
    three-term recurrence holds modulo p_{n+1}.  Numeric part: at every root r
    of p_{n+1}, the vector with component c_j p_j(r) on Psi_{n-j}, where
    c_j = 1 / prod_{t<j} sqrt(D_{n-1-t}), is an eigenvector for r.
    """
    import numpy as np

    n = spec.n
    D = hopping_rates(spec).D
    p = p_sequence(spec)
    top = p[n + 1]
    for i in range(n + 2):
        if p[i] != p_by_determinant(spec, i):
            return False
    for i in range(1, n + 1):
        resid = p[i + 1] - (X * p[i] - p[i - 1] * D[n - i])
        if not quotient_ring_reduce(resid, top).is_zero():
            return False
    J = quotient_tridiagonal(spec).dense()
    scale = [1.0]
    for j in range(1, n + 1):
        scale.append(scale[-1] / math.sqrt(D[n - j]))
    for r in real_roots(top):
        vec = np.zeros(n + 1)
        for j in range(n + 1):
            vec[n - j] = scale[j] * _eval(p[j], r)
        if np.linalg.norm(J @ vec - r * vec) > tol * np.linalg.norm(vec):
            return False
    return True


def _eval(poly: RationalPolynomial, r: float) -> float:
    acc = 0.0
    for c in reversed(poly.coeffs):
        acc = acc * r + float(c)
    return acc


# ---------------------------------------------------------------------------
# full characteristic polynomial
# ---------------------------------------------------------------------------

def aperp_multiplicities(spec: BetheSpec) -> dict[int, int]:
    """m_i = |C_{n-i}| (d(n-i) - 1) for each branching age i."""
    sizes = spec.level_sizes
    n = spec.n
    return {i: sizes[n - i] * (spec.d(n - i) - 1) for i in branching_levels(spec)}


def dimension_count_check(spec: BetheSpec) -> bool:
    return sum(i * m for i, m in aperp_multiplicities(spec).items()) + spec.n + 1 == spec.vertex_count


def predicted_charpoly(spec: BetheSpec) -> RationalPolynomial:
    p = p_sequence(spec)
    out = p[spec.n + 1]
    for i, m in aperp_multiplicities(spec).items():
        out = out * p[i] ** m
    return out


def transition_charpoly(spec: BetheSpec, vertex_limit: int = DEFAULT_VERTEX_LIMIT) -> RationalPolynomial:
    if spec.vertex_count > vertex_limit:
        raise SizeLimitError(f"{spec.vertex_count} vertices exceeds the limit {vertex_limit}")
    g, _ = bethe_graph(spec)
    return charpoly_exact(transition_matrix(g), VAR)


def charpoly_factorization_check(spec: BetheSpec, vertex_limit: int = DEFAULT_VERTEX_LIMIT) -> bool:
    """char(T) = p_{n+1} prod_{i in Omega} p_i^{m_i}, computed independently on both sides."""
    return transition_charpoly(spec, vertex_limit) == predicted_charpoly(spec)
