"""Hilbert series of monomial ideals and the data derived from them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence


def _minimalize(gens) -> tuple:
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return tuple(sorted(out))


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _padd(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _trim(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


@lru_cache(maxsize=200000)
def _numerator(gens: tuple) -> tuple:
    """K-polynomial N(t) with HS(R/I) = N(t) / (1-t)^n, by pivot-variable splitting."""
    if not gens:
        return (1,)
    if any(sum(g) == 0 for g in gens):
        return (0,)
    n = len(gens[0])
    # base case: pairwise coprime generators
    support = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    seen = set()
    coprime = True
    for s in support:
        if seen & s:
            coprime = False
            break
        seen |= s
    if coprime:
        out = [1]
        for g in gens:
            d = sum(g)
            f = [0] * (d + 1)
            f[0], f[d] = 1, -1
            out = _pmul(out, f)
        return tuple(out)
    # pivot on the variable shared by the most mixed generators; a pure power of
    # that variable in a minimal set has a larger exponent, so the pivot is not in I
    mixed = [g for g in gens if sum(1 for e in g if e) > 1]
    counts = [0] * n
    for g in mixed:
        for i, e in enumerate(g):
            if e:
                counts[i] += 1
    x = max(range(n), key=lambda i: counts[i])
    exps = sorted(g[x] for g in mixed if g[x])
    e = exps[len(exps) // 2]
    pivot = tuple(e if i == x else 0 for i in range(n))
    # N(I) = N(I + (pivot)) + t^e N(I : pivot)
    plus = _minimalize([g for g in gens] + [pivot])
    colon = _minimalize([tuple(max(a - b, 0) for a, b in zip(g, pivot)) for g in gens])
    left = _numerator(plus)
    right = [0] * e + list(_numerator(colon))
    return tuple(_trim(_padd(left, right)))


def hilbert_numerator(gens: Sequence[Sequence[int]], n: int) -> list[int]:
    gens = [tuple(g) for g in gens]
    if any(len(g) != n for g in gens):
        raise ValueError("exponent vectors have the wrong length")
    return list(_numerator(_minimalize(gens)))


def binomial_poly(top_shift: int, k: int) -> list[Fraction]:
    """Coefficients (in n) of the polynomial binom(n + top_shift, k)."""
    out = [Fraction(1)]
    for i in range(k):
        out = [Fraction(0)] + out
        c = Fraction(top_shift - i)
        for j in range(len(out) - 1):
            out[j] += c * out[j + 1]
    return [x / factorial(k) for x in out]


def binom_value(m: int, k: int) -> int:
    """binom(m, k) as a polynomial in m evaluated at any integer m."""
    if k < 0:
        return 0
    num = 1
    for i in range(k):
        num *= m - i
    return num // factorial(k)


@dataclass(frozen=True)
class HilbertData:
    """Hilbert data of a graded quotient R/I (or of a graded module)."""

    numerator: tuple  # N(t) with HS = N(t) / (1 - t)^nvars
    nvars: int
    h: tuple  # reduced numerator: HS = h(t) / (1 - t)^krull_dim
    krull_dim: int
    poly: tuple  # Hilbert polynomial coefficients, constant term first
    degree: int
    regularity_index: int  # HF(m) = HP(m) for all m >= this

    @property
    def dim(self) -> int:
        """Projective dimension (-1 for the empty scheme)."""
        return self.krull_dim - 1

    def hilbert_function(self, m: int) -> int:
        if m < 0:
            return 0
        return sum(c * comb(m - i + self.nvars - 1, self.nvars - 1) for i, c in enumerate(self.numerator) if i <= m)

    def hilbert_polynomial(self, m: int) -> Fraction:
        return sum(c * Fraction(m) ** i for i, c in enumerate(self.poly))

    def series(self, upto: int) -> list[int]:
        return [self.hilbert_function(m) for m in range(upto + 1)]

    def poly_str(self, var: str = "n") -> str:
        terms = []
        for i in range(len(self.poly) - 1, -1, -1):
            c = self.poly[i]
            if c == 0:
                continue
            cs = str(c)
            if i == 0:
                terms.append(cs)
            elif i == 1:
                terms.append(f"{cs}{var}" if c != 1 else var)
            else:
                terms.append(f"{cs}{var}^{i}" if c != 1 else f"{var}^{i}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def hilbert_data_from_numerator(numerator: Sequence[int], nvars: int) -> HilbertData:
    num = _trim(numerator)
    if all(c == 0 for c in num):
        return HilbertData(tuple(num), nvars, (0,), -1, (Fraction(0),), 0, 0)
    h = list(num)
    d = nvars
    while d > 0 and sum(h) == 0:
        # divide by (1 - t)
        q = []
        acc = 0
        for c in h[:-1]:
            acc += c
            q.append(acc)
        h = _trim(q) if q else [0]
        d -= 1
    if d == 0:
        poly = (Fraction(0),)
        degree = 0
    else:
        # HP(m) = sum_i h_i binom(m - i + d - 1, d - 1)
        coeffs = [Fraction(0)] * d
        for i, c in enumerate(h):
            if c:
                for j, b in enumerate(binomial_poly(d - 1 - i, d - 1)):
                    coeffs[j] += c * b
        poly = tuple(_trim(coeffs)) if any(coeffs) else (Fraction(0),)
        degree = sum(h)
    reg = max(len(h) - 1 - d + 1, 0)
    return HilbertData(tuple(num), nvars, tuple(h), d, tuple(poly), degree, reg)


def hilbert_data_of_monomials(gens, nvars: int) -> HilbertData:
    return hilbert_data_from_numerator(hilbert_numerator(gens, nvars), nvars)


def poly_from_coeffs(coeffs: Sequence) -> tuple:
    return tuple(Fraction(c) for c in _trim([Fraction(c) for c in coeffs]))
