"""Points of zero-dimensional projective schemes over F_p by slicing and univariate solving."""

from __future__ import annotations

from dataclasses import dataclass

from ..exactmath import nullspace
from .groebner import _make_reducer, _nf, groebner_basis
from .hilbert import hilbert_data_of_monomials
from .ideal import GradedIdeal, NotZeroDimensional
from .ring import MultiPoly
from .univariate import Factorization, univariate_roots


@dataclass
class Eliminant:
    coeffs: list  # monic, low degree first
    factorization: Factorization
    chart: tuple  # coefficients of the chart form l
    projection: tuple  # coefficients of the projection form u
    chart_length: int
    algebra: AffineAlgebra = None

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


class AffineAlgebra:
    """k[x]/(I + (l - 1)): the coordinate ring on the affine chart {l = 1}."""

    def __init__(self, ideal: GradedIdeal, chart: list):
        ring = self.ring = ideal.ring
        self.chart = ring.linear_form(chart)
        self.budget = ideal.budget
        self.base = list(ideal.gb) + [self.chart - ring.one()]
        self.gb = groebner_basis(self.base, ideal.budget)
        self.reducers = [_make_reducer(ring, dict(g.terms), 0) for g in self.gb]
        hd = hilbert_data_of_monomials([g.lead_exponents() for g in self.gb], ring.n)
        if hd.krull_dim > 0:
            raise NotZeroDimensional("affine chart is not zero-dimensional")
        self.dim = sum(hd.h) if hd.krull_dim == 0 else 0

    def point_at(self, u: MultiPoly, r: int):
        """Coordinates of the unique point with u = r, or None if it is not a reduced point."""
        ring = self.ring
        gb = groebner_basis(self.gb + [u - ring.const(r)], self.budget)
        if len(gb) != ring.n or any(g.total_degree() != 1 or len(g.variables()) != 1 for g in gb):
            return None
        pt = [0] * ring.n
        for g in gb:
            (i,) = g.variables()
            pt[i] = (-g.terms.get(0, 0)) % ring.p
        return tuple(pt)

    def reduce(self, f: MultiPoly) -> dict:
        return _nf(dict(f.terms), self.reducers, self.ring)

    def min_poly(self, u: MultiPoly) -> list:
        """Minimal polynomial of the class of u, via the Krylov sequence 1, u, u^2, ..."""
        F = self.ring.field
        vecs = []
        cur = self.reduce(self.ring.one())
        keys: dict = {}
        for deg in range(self.dim + 1):
            for m in cur:
                keys.setdefault(m, len(keys))
            vecs.append(cur)
            rows = [[v.get(m, 0) for m in keys] for v in vecs]
            # dependency among the columns v_0..v_deg
            cols = [list(c) for c in zip(*rows)] if rows else []
            ker = nullspace(F, cols, len(vecs)) if cols else [tuple([1])]
            if ker:
                rel = list(ker[0])
                lead = rel[-1]
                if lead:
                    inv = F.inv(lead)
                    return [c * inv % F.p for c in rel]
            cur = self.reduce(MultiPoly(self.ring, cur) * u)
        raise ArithmeticError("no minimal polynomial found")


def eliminant(ideal: GradedIdeal, rng, tries: int = 10) -> Eliminant:
    """Univariate eliminant of a random linear projection on a random affine chart."""
    ring = ideal.ring
    F = ring.field
    for _ in range(tries):
        chart = [F.random_nonzero(rng) for _ in range(ring.n)]
        alg = AffineAlgebra(ideal, chart)
        proj = [F.random(rng) for _ in range(ring.n)]
        u = ring.linear_form(proj)
        coeffs = alg.min_poly(u)
        if len(coeffs) >= 2 or alg.dim == 0:
            fac = univariate_roots(coeffs, F.p) if len(coeffs) >= 2 else None
            return Eliminant(coeffs, fac, tuple(chart), tuple(proj), alg.dim, alg)
    raise ArithmeticError("could not find a separating projection")


def normalize_point(F, v):
    """Scale so the first nonzero coordinate is 1."""
    j = next(i for i, x in enumerate(v) if x)
    inv = F.inv(v[j])
    return tuple(x * inv % F.p for x in v)


def split_points(elim: Eliminant) -> list:
    """(point, multiplicity) for every F_p-root of the eliminant that lifts to a reduced point."""
    out = []
    if elim.factorization is None:
        return out
    alg = elim.algebra
    u = alg.ring.linear_form(elim.projection)
    for r, mult in elim.factorization.roots:
        pt = alg.point_at(u, r)
        if pt is not None:
            out.append((normalize_point(alg.ring.field, pt), mult))
    return out
