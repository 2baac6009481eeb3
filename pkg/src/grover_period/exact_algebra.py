"""Exact univariate polynomial arithmetic over the rationals.

Everything here is exact: coefficients are :class:`fractions.Fraction` and no
floating point value is ever produced.  Besides the usual ring operations the
module provides cyclotomic polynomials, the Zhukovskij substitution
``lambda = (z + 1/z) / 2`` and a cyclotomic-product test, which together decide
whether every root of a real-rooted polynomial is the real part of a root of
unity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


class PolynomialError(ValueError):
    """Raised for invalid polynomial operations (division by zero, bad modulus)."""


def _strip(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def _frac(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


class RationalPolynomial:
    """Dense polynomial with rational coefficients, stored low-to-high.

    Instances are immutable and hashable.  The zero polynomial has an empty
    coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable[Number] = (), var: str = "x"):
        object.__setattr__(self, "coeffs", _strip([Fraction(c) for c in coeffs]))
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("RationalPolynomial is immutable")

    # -- constructors -------------------------------------------------------
    @classmethod
    def constant(cls, c: Number, var: str = "x") -> RationalPolynomial:
        return cls([c], var)

    @classmethod
    def monomial(cls, degree: int, coeff: Number = 1, var: str = "x") -> RationalPolynomial:
        return cls([0] * degree + [coeff], var)

    @classmethod
    def from_roots(cls, roots: Iterable[Number], var: str = "x") -> RationalPolynomial:
        p = cls([1], var)
        for r in roots:
            p = p * cls([-Fraction(r), 1], var)
        return p

    def with_var(self, var: str) -> RationalPolynomial:
        return RationalPolynomial(self.coeffs, var)

    # -- basic queries ------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def monic(self) -> RationalPolynomial:
        if self.is_zero():
            raise PolynomialError("zero polynomial has no monic associate")
        lead = self.leading
        return RationalPolynomial([c / lead for c in self.coeffs], self.var)

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> RationalPolynomial:
        if isinstance(other, RationalPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalPolynomial([other], self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RationalPolynomial(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalPolynomial([c * other for c in self.coeffs], self.var)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RationalPolynomial((), self.var)
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return RationalPolynomial(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise PolynomialError("negative exponent")
        result = RationalPolynomial([1], self.var)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise PolynomialError("division by the zero polynomial")
        rem = list(self.coeffs)
        db = other.degree
        lead = other.leading
        if len(rem) - 1 < db:
            return RationalPolynomial((), self.var), self
        quot = [Fraction(0)] * (len(rem) - db)
        b = other.coeffs
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] / lead
            quot[k] = c
            if c:
                for j in range(db + 1):
                    rem[k + j] -= c * b[j]
        return RationalPolynomial(quot, self.var), RationalPolynomial(rem[:db], self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, RationalPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _strip([Fraction(other)])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        """Horner evaluation; works for any ring element supporting * and +."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> RationalPolynomial:
        return RationalPolynomial([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def compose(self, other: RationalPolynomial) -> RationalPolynomial:
        acc = RationalPolynomial((), other.var)
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    # -- presentation -------------------------------------------------------
    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = self.var if k == 1 else f"{self.var}^{k}"
                if mag == 1:
                    body = mono
                elif mag.denominator == 1:
                    body = f"{mag}*{mono}"
                else:
                    body = f"({mag})*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"RationalPolynomial({str(self)!r}, var={self.var!r})"

    def to_json(self) -> list[str]:
        """Low-to-high coefficient array of ``"num/den"`` strings."""
        return [_frac(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str], var: str = "x") -> RationalPolynomial:
        return cls([Fraction(s) for s in data], var)


# ---------------------------------------------------------------------------
# gcd, squarefree decomposition, quotient ring
# ---------------------------------------------------------------------------

def poly_gcd(a: RationalPolynomial, b: RationalPolynomial) -> RationalPolynomial:
    """Monic gcd (the zero polynomial if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a if a.is_zero() else a.monic()


def squarefree_decomposition(f: RationalPolynomial) -> list[tuple[RationalPolynomial, int]]:
    """Yun's algorithm: monic squarefree, pairwise coprime factors with multiplicity.

    Only factors of positive degree are returned; the product of
    ``factor**mult`` equals ``f.monic()``.
    """
    if f.degree < 1:
        return []
    f = f.monic()
    out = []
    a = poly_gcd(f, f.derivative())
    b = f // a
    c = f.derivative() // a
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = b // a
        c = d // a
        if a.degree > 0:
            out.append((a, i))
        d = c - b.derivative()
        i += 1
    return out


def quotient_ring_reduce(a: RationalPolynomial, modulus: RationalPolynomial) -> RationalPolynomial:
    """Canonical representative of ``a`` in Q[x]/(modulus)."""
    if modulus.degree < 1 or not modulus.is_monic():
        raise PolynomialError("modulus must be monic of degree >= 1")
    return a % modulus


# ---------------------------------------------------------------------------
# cyclotomic machinery
# ---------------------------------------------------------------------------

def euler_phi(m: int) -> int:
    """Euler's totient by trial factorisation."""
    if m < 1:
        raise ValueError("m must be positive")
    result, n, p = m, m, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def _int_divmod(num: list[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    """Division of integer coefficient lists (low-to-high) by a monic divisor."""
    rem = list(num)
    db = len(den) - 1
    if len(rem) - 1 < db:
        return [], rem
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - 1 - db, -1, -1):
        c = rem[k + db]
        quot[k] = c
        if c:
            for j in range(db):
                rem[k + j] -= c * den[j]
            rem[k + db] = 0
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem


@lru_cache(maxsize=None)
def _cyclotomic_int(m: int) -> tuple[int, ...]:
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num, rem = _int_divmod(num, _cyclotomic_int(d))
            assert not rem, (m, d)
    return tuple(num)


def cyclotomic_poly(m: int, var: str = "z") -> RationalPolynomial:
    """Phi_m, obtained by dividing z^m - 1 by Phi_d for every proper divisor d."""
    if m < 1:
        raise ValueError("m must be positive")
    return RationalPolynomial(_cyclotomic_int(m), var)


def zhukovskij_transform(f: RationalPolynomial, var: str = "z") -> RationalPolynomial:
    """Expand ``(2z)^i f((z + 1/z)/2)`` for monic ``f`` of degree ``i``.

    The k-th coefficient c_k of f contributes ``c_k 2^(i-k) z^(i-k) (z^2+1)^k``.
    """
    if f.degree < 1:
        raise PolynomialError("transform needs degree >= 1")
    if not f.is_monic():
        raise PolynomialError("transform needs a monic polynomial")
    i = f.degree
    out = [Fraction(0)] * (2 * i + 1)
    for k, c in enumerate(f.coeffs):
        if not c:
            continue
        scale = c * 2 ** (i - k)
        for t in range(k + 1):
            out[i - k + 2 * t] += scale * math.comb(k, t)
    return RationalPolynomial(out, var)


@dataclass(frozen=True)
class CyclotomicFactorization:
    """``factors`` maps m to the multiplicity of Phi_m in the tested polynomial."""

    factors: dict[int, int]
    residual_is_one: bool = True

    def reconstruct(self, var: str = "z") -> RationalPolynomial:
        p = RationalPolynomial([1], var)
        for m, mult in sorted(self.factors.items()):
            p = p * cyclotomic_poly(m, var) ** mult
        return p

    def to_json(self) -> dict:
        return {str(m): k for m, k in sorted(self.factors.items())}


@dataclass(frozen=True)
class NotCyclotomic:
    """Certificate that a polynomial is not a product of cyclotomic polynomials."""

    polynomial: RationalPolynomial
    reason: str
    partial_factors: dict[int, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "polynomial": str(self.polynomial),
            "coefficients": self.polynomial.to_json(),
            "reason": self.reason,
        }


def _peel(coeffs: list[int], m: int) -> tuple[list[int], int]:
    phi = _cyclotomic_int(m)
    mult = 0
    while len(coeffs) >= len(phi):
        q, r = _int_divmod(coeffs, phi)
        if r:
            break
        coeffs = q
        mult += 1
    return coeffs, mult


def cyclotomic_product_test(F: RationalPolynomial) -> CyclotomicFactorization | NotCyclotomic:
    """Decide whether ``F`` is a product of cyclotomic polynomials.

    Candidates are all m <= 2 deg(F)^2 with phi(m) <= deg(F); the bound is
    complete because phi(m) >= sqrt(m/2).  Candidates are located on the
    squarefree part of F and multiplicities are then peeled from F itself.
    """
    if F.is_zero():
        raise PolynomialError("zero polynomial")
    if not F.is_integral():
        return NotCyclotomic(F, "non-integer coefficient")
    if not F.is_monic() or F.coeffs[0] not in (1, -1):
        return NotCyclotomic(F, "not monic with constant term +-1")
    deg = F.degree
    if deg == 0:
        if F.coeffs[0] == 1:
            return CyclotomicFactorization({})
        return NotCyclotomic(F, "constant -1")
    core = F.monic() // poly_gcd(F, F.derivative())
    core_c = [int(c) for c in core.coeffs]
    full_c = [int(c) for c in F.coeffs]
    factors: dict[int, int] = {}
    for m in range(1, 2 * deg * deg + 1):
        if len(core_c) == 1:
            break
        if euler_phi(m) > len(core_c) - 1:
            continue
        core_c, hit = _peel(core_c, m)
        if hit:
            full_c, mult = _peel(full_c, m)
            factors[m] = mult
    if full_c == [1]:
        return CyclotomicFactorization(factors)
    return NotCyclotomic(F, "residual is not 1", dict(factors))


def order_lcm(fac: CyclotomicFactorization) -> int:
    """Least common multiple of the orders m of the Phi_m factors."""
    if not fac.residual_is_one:
        raise ValueError("factorization is incomplete")
    return math.lcm(1, *fac.factors)


# ---------------------------------------------------------------------------
# characteristic polynomial
# ---------------------------------------------------------------------------

def charpoly_exact(M: Sequence[Sequence[Number]], var: str = "x") -> RationalPolynomial:
    """det(xI - M) by Hessenberg reduction followed by the Hessenberg recurrence.

    O(n^3) field operations; exact over Q.
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix must be square")
    H = [[Fraction(x) for x in row] for row in M]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if H[i][m - 1] != 0), None)
        if piv is None:
            continue
        if piv != m:
            H[piv], H[m] = H[m], H[piv]
            for row in H:
                row[piv], row[m] = row[m], row[piv]
        t = H[m][m - 1]
        row_m = H[m]
        for i in range(m + 1, n):
            u = H[i][m - 1]
            if u == 0:
                continue
            u /= t
            row_i = H[i]
            for j in range(m - 1, n):
                if row_m[j]:
                    row_i[j] -= u * row_m[j]
            for row in H:
                if row[i]:
                    row[m] += u * row[i]
    x = RationalPolynomial([0, 1], var)
    polys = [RationalPolynomial([1], var)]
    for m in range(n):
        p = (x - H[m][m]) * polys[m]
        t = Fraction(1)
        for i in range(1, m + 1):
            t *= H[m - i + 1][m - i]
            if t == 0:
                break
            h = H[m - i][m]
            if h:
                p = p - polys[m - i] * (t * h)
        polys.append(p)
    return polys[n]
