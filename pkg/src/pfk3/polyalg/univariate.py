"""Univariate polynomials over F_p: roots and irreducible factor degrees.

Coefficient lists are low degree first.  Factorization is delegated to
sympy's dense F_p routines (Cantor-Zassenhaus: distinct-degree then
equal-degree splitting); everything returned is re-verified here.
"""

from __future__ import annotations

from dataclasses import dataclass

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_diff, gf_factor, gf_gcd, gf_mul, gf_from_int_poly


@dataclass(frozen=True)
class Factorization:
    factors: tuple  # ((coeffs low-first, multiplicity), ...) monic irreducible
    roots: tuple  # ((root, multiplicity), ...) sorted by root
    degrees: tuple  # irreducible factor degrees, with multiplicity, sorted
    squarefree: bool
    leading: int

    @property
    def root_multiset(self) -> list[int]:
        return sorted(r for r, k in self.roots for _ in range(k))


def trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def evaluate(f, x: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def _to_gf(f, p):
    return gf_from_int_poly(list(reversed([c % p for c in f])), p)


def _from_gf(g):
    return [int(c) for c in reversed(g)]


def multiply(f, g, p):
    return _from_gf(gf_mul(_to_gf(f, p), _to_gf(g, p), p, ZZ))


def from_roots(roots, p, lead: int = 1):
    out = [lead % p]
    for r in roots:
        out = multiply(out, [-r % p, 1], p)
    return out


def is_squarefree(f, p) -> bool:
    g = _to_gf(f, p)
    return len(gf_gcd(g, gf_diff(g, p, ZZ), p, ZZ)) == 1


def univariate_roots(f, p: int) -> Factorization:
    """Roots with multiplicity and irreducible factor degrees of f over F_p."""
    f = trim([c % p for c in f])
    if len(f) < 2:
        raise ValueError("need a polynomial of degree >= 1")
    lead, facs = gf_factor(_to_gf(f, p), p, ZZ)
    factors = []
    roots = []
    for g, k in facs:
        coeffs = _from_gf(g)
        factors.append((tuple(coeffs), k))
        if len(coeffs) == 2:
            r = (-coeffs[0]) % p
            if evaluate(f, r, p):
                raise ArithmeticError("recovered root does not vanish")
            roots.append((r, k))
    prod = [int(lead)]
    for g, k in factors:
        for _ in range(k):
            prod = multiply(prod, list(g), p)
    if trim(prod) != f:
        raise ArithmeticError("factor product does not reproduce the input")
    factors.sort()
    roots.sort()
    degrees = tuple(sorted(len(g) - 1 for g, k in factors for _ in range(k)))
    return Factorization(tuple(factors), tuple(roots), degrees, is_squarefree(f, p), int(lead))
