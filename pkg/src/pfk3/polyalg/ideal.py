"""Homogeneous ideals: Gröbner cache, Hilbert data, quotients, saturation, lengths."""

from __future__ import annotations

from typing import Iterable, Sequence

from ..exactmath import rref_rows
from .groebner import Budget, ResourceLimit, _make_reducer, _nf, groebner_basis, normal_form
from .hilbert import HilbertData, hilbert_data_of_monomials
from ..rng import SplitMix64
from .ring import MonomialOrder, MultiPoly, PolyRing


class NotZeroDimensional(ValueError):
    pass


class ChartDisagreement(RuntimeError):
    pass


class GradedIdeal:
    """An ideal of a PolyRing given by generators; Gröbner basis and Hilbert data are cached.

    Generators must be homogeneous unless ``homogeneous=False`` (used internally
    for affine charts and elimination tricks).
    """

    def __init__(self, ring: PolyRing, gens: Iterable[MultiPoly], homogeneous: bool = True, budget: Budget | None = None):
        self.ring = ring
        self.gens = tuple(g for g in gens if g.terms)
        for g in self.gens:
            if g.ring != ring:
                raise ValueError("generator from a different ring")
        if homogeneous and not all(g.is_homogeneous() for g in self.gens):
            raise ValueError("generators must be homogeneous")
        self.homogeneous = all(g.is_homogeneous() for g in self.gens)
        self.budget = budget
        self._gb: list[MultiPoly] | None = None
        self._hilbert: HilbertData | None = None

    def __repr__(self):
        return f"GradedIdeal({len(self.gens)} generators in {self.ring})"

    # -- Gröbner basis -----------------------------------------------------------------
    @property
    def gb(self) -> list[MultiPoly]:
        if self._gb is None:
            self._gb = self._compute_gb()
        return self._gb

    def groebner(self) -> GradedIdeal:
        self.gb
        return self

    def _compute_gb(self) -> list[MultiPoly]:
        ring = self.ring
        if not self.homogeneous:
            return groebner_basis(list(self.gens), self.budget)
        linear = [g for g in self.gens if g.total_degree() == 1]
        if not linear:
            return groebner_basis(list(self.gens), self.budget)
        lin_rows = linear_reduce(ring, linear)
        reds = [_make_reducer(ring, dict(f.terms), 1) for f in lin_rows]
        rest = []
        for g in self.gens:
            if g.total_degree() > 1:
                r = _nf(dict(g.terms), reds, ring)
                if r:
                    rest.append(MultiPoly(ring, r))
        gb = groebner_basis(rest, self.budget) if rest else []
        if any(f.total_degree() == 0 for f in gb):
            return [ring.one()]
        return sorted(lin_rows + gb, key=lambda f: f.lm())

    def normal_form(self, f: MultiPoly) -> MultiPoly:
        return normal_form(f, self.gb)

    def contains(self, f: MultiPoly) -> bool:
        return not self.normal_form(f).terms

    __contains__ = contains

    def contains_ideal(self, other: GradedIdeal) -> bool:
        return all(self.contains(g) for g in other.gens)

    def is_unit(self) -> bool:
        return any(not g.terms or g.total_degree() == 0 for g in self.gb)

    def same_as(self, other: GradedIdeal) -> bool:
        """Equality of ideals via reduced Gröbner bases."""
        return [g.terms for g in self.gb] == [g.terms for g in other.gb]

    def lead_exponents(self) -> list[tuple]:
        return [g.lead_exponents() for g in self.gb]

    # -- Hilbert data ------------------------------------------------------------------
    def hilbert(self) -> HilbertData:
        if not self.homogeneous:
            raise ValueError("Hilbert data needs a homogeneous ideal")
        if self._hilbert is None:
            self._hilbert = hilbert_data_of_monomials(self.lead_exponents(), self.ring.n)
        return self._hilbert

    @property
    def dim(self) -> int:
        return self.hilbert().dim

    @property
    def degree(self) -> int:
        return self.hilbert().degree

    # -- constructions -----------------------------------------------------------------
    def __add__(self, other):
        gens = other.gens if isinstance(other, GradedIdeal) else tuple(other)
        return GradedIdeal(self.ring, self.gens + tuple(gens), homogeneous=False, budget=self.budget)

    def with_order(self, order: MonomialOrder) -> GradedIdeal:
        ring2 = self.ring.with_order(order)
        return GradedIdeal(ring2, [ring2.convert(g) for g in self.gens], homogeneous=False, budget=self.budget)

    def quotient(self, J: GradedIdeal | Sequence[MultiPoly]) -> GradedIdeal:
        """I : J as the intersection of the principal quotients I : g."""
        gens = J.gens if isinstance(J, GradedIdeal) else tuple(J)
        parts = [self.quotient_element(g) for g in gens]
        out = parts[0]
        for q in parts[1:]:
            out = out.intersect(q)
        return out

    def quotient_element(self, g: MultiPoly) -> GradedIdeal:
        var = _single_variable(g)
        if self.homogeneous and var is not None:
            return self._quotient_variable(var, power=1)
        inter = self.intersect(GradedIdeal(self.ring, [g], homogeneous=False))
        return GradedIdeal(self.ring, [divide_exact(h, g) for h in inter.gb], homogeneous=False, budget=self.budget)

    def _quotient_variable(self, var: int, power: int | None) -> GradedIdeal:
        """I : x^power (power=None for saturation) by the revlex trick with x last."""
        ring = self.ring
        perm = [i for i in range(ring.n) if i != var] + [var]
        R2 = ring.with_order(MonomialOrder.grevlex(ring.n, perm=perm))
        gb2 = GradedIdeal(R2, [R2.convert(g) for g in self.gens], budget=self.budget).gb
        out = []
        for g in gb2:
            k = min(R2.decode(m)[var] for m in g.terms)
            if power is not None:
                k = min(k, power)
            if k:
                xk = R2.encode([k if i == var else 0 for i in range(ring.n)])
                g = MultiPoly(R2, {m - xk: c for m, c in g.terms.items()})
            out.append(ring.convert(g))
        return GradedIdeal(ring, out, homogeneous=self.homogeneous, budget=self.budget)

    def saturate_variable(self, var: int) -> GradedIdeal:
        return self._quotient_variable(var, power=None)

    def intersect(self, other: GradedIdeal) -> GradedIdeal:
        """I ∩ J by eliminating t from t*I + (1 - t)*J."""
        ring = self.ring
        names = ("_t",) + ring.names
        R2 = PolyRing(names, ring.field, MonomialOrder.block(len(names), 1))
        t = R2.gen(0)
        vm = list(range(1, len(names)))
        gens = [t * R2.convert(g, vm) for g in self.gens] + [(1 - t) * R2.convert(g, vm) for g in other.gens]
        gb = groebner_basis(gens, self.budget)
        back = [g for g in gb if all(R2.decode(m)[0] == 0 for m in g.terms)]
        out = [_drop_first(ring, R2, g) for g in back]
        hom = self.homogeneous and other.homogeneous
        return GradedIdeal(ring, out, homogeneous=hom and all(f.is_homogeneous() for f in out), budget=self.budget)

    def saturate(self, J: GradedIdeal | Sequence[MultiPoly] | None = None, max_steps: int = 200) -> GradedIdeal:
        """I : J^∞ by iterated quotients until the ideal stabilizes (J defaults to the irrelevant ideal)."""
        ring = self.ring
        if J is None:
            J = GradedIdeal(ring, ring.gens)
        Jg = J.gens if isinstance(J, GradedIdeal) else tuple(J)
        irrelevant = sorted(v for v in (_single_variable(g) for g in Jg) if v is not None) == list(range(ring.n))
        if irrelevant and self.homogeneous and self.hilbert().krull_dim == 0:
            # m^k ⊂ I, so I : m^∞ = (1)
            return GradedIdeal(ring, [ring.one()])
        if irrelevant and self.homogeneous:
            section = self.linear_section()
            if section is not None:
                lin, small, back = section
                sat = small.saturate()
                return GradedIdeal(ring, lin + [ring.convert(g, back) for g in sat.gb], budget=self.budget)
        cur = self
        for _ in range(max_steps):
            nxt = cur.quotient(Jg)
            if nxt.same_as(cur):
                return cur
            cur = nxt
        raise ResourceLimit("saturation did not stabilize")

    def linear_section(self):
        """Split off the linear members of the reduced basis.

        Returns (linear forms, the rest as an ideal in the free variables, index
        map back), or None when there is nothing to split.  Reduced-basis tails
        avoid leading variables, so the rest lives in the free variables already.
        """
        ring = self.ring
        lin = [g for g in self.gb if g.total_degree() == 1]
        if not lin or len(lin) == ring.n:
            return None
        pivots = {g.lead_exponents().index(1) for g in lin}
        free = [i for i in range(ring.n) if i not in pivots]
        S = PolyRing([ring.names[i] for i in free], ring.field)
        to_small = [free.index(i) if i in free else -1 for i in range(ring.n)]
        rest = [S.convert(g, to_small) for g in self.gb if g.total_degree() != 1]
        return lin, GradedIdeal(S, rest, budget=self.budget), free

    def saturate_by_element(self, f: MultiPoly) -> GradedIdeal:
        """I : f^∞ as (I + (1 - t f)) ∩ R; an independent route used as a cross-check."""
        ring = self.ring
        names = ("_t",) + ring.names
        R2 = PolyRing(names, ring.field, MonomialOrder.block(len(names), 1))
        t = R2.gen(0)
        vm = list(range(1, len(names)))
        gens = [R2.convert(g, vm) for g in self.gens] + [1 - t * R2.convert(f, vm)]
        gb = groebner_basis(gens, self.budget)
        back = [_drop_first(ring, R2, g) for g in gb if all(R2.decode(m)[0] == 0 for m in g.terms)]
        return GradedIdeal(ring, back, homogeneous=False, budget=self.budget)

    def eliminate(self, variables: Sequence[int]) -> GradedIdeal:
        """I ∩ k[other variables]."""
        ring = self.ring
        keep = [i for i in range(ring.n) if i not in set(variables)]
        order = list(variables) + keep
        names = tuple(ring.names[i] for i in order)
        R2 = PolyRing(names, ring.field, MonomialOrder.block(ring.n, len(variables)))
        vm = [order.index(i) for i in range(ring.n)]
        gb = groebner_basis([R2.convert(g, vm) for g in self.gens], self.budget)
        k = len(variables)
        out = []
        for g in gb:
            if all(not any(R2.decode(m)[:k]) for m in g.terms):
                out.append(ring.convert(g, [order[j] for j in range(ring.n)]))
        return GradedIdeal(ring, out, homogeneous=False, budget=self.budget)

    # -- zero-dimensional schemes ------------------------------------------------------
    def chart_length(self, rng: SplitMix64) -> int:
        """dim_k of the coordinate ring on the random affine chart {l = 1}."""
        ring = self.ring
        F = ring.field
        a = [F.random_nonzero(rng) for _ in range(ring.n)]
        gb = groebner_basis(list(self.gb) + [ring.linear_form(a) - ring.one()], self.budget)
        lead = [g.lead_exponents() for g in gb]
        hd = hilbert_data_of_monomials(lead, ring.n)
        if hd.krull_dim > 0:
            raise NotZeroDimensional("affine chart is not zero-dimensional")
        return sum(hd.h) if hd.krull_dim == 0 else 0

    def zero_dim_length(self, rng: SplitMix64 | None = None, charts: int = 2, retries: int = 8) -> int:
        """Length of a zero-dimensional projective scheme.

        The saturated ideal's stabilized Hilbert function is compared with the
        quotient dimension on ``charts`` random affine charts; a chart that drops
        points at infinity disagrees and is resampled.
        """
        hd = self.hilbert()
        if hd.dim != 0:
            raise NotZeroDimensional(f"projective dimension is {hd.dim}, Hilbert polynomial {hd.poly_str()}")
        sat = self.saturate()
        shd = sat.hilbert()
        length = shd.hilbert_function(shd.regularity_index + 1)
        if length != hd.poly[0]:
            raise ArithmeticError("saturation changed the Hilbert polynomial")
        rng = rng or SplitMix64(0)
        agreed = 0
        for _ in range(charts + retries):
            if self.chart_length(rng) == length:
                agreed += 1
                if agreed == charts:
                    return int(length)
        raise ChartDisagreement("affine charts disagree with the saturated length")


def _drop_first(ring: PolyRing, R2: PolyRing, g: MultiPoly) -> MultiPoly:
    terms = {}
    for m, c in g.terms.items():
        terms[ring.encode(R2.decode(m)[1:])] = c
    return MultiPoly(ring, terms)


def _single_variable(g: MultiPoly):
    if len(g.terms) != 1:
        return None
    e = g.ring.decode(next(iter(g.terms)))
    if sum(e) == 1:
        return e.index(1)
    return None


def linear_reduce(ring: PolyRing, linear: Sequence[MultiPoly]) -> list[MultiPoly]:
    """RREF of linear forms with columns in decreasing variable order (pivot = leading term)."""
    cols = sorted(range(ring.n), key=lambda i: ring.gen(i).lm(), reverse=True)
    rows = []
    for f in linear:
        c = f.linear_coefficients()
        rows.append([c[i] for i in cols])
    R, pivots = rref_rows(ring.field, rows, ring.n)
    out = []
    for row in R:
        coeffs = [0] * ring.n
        for j, v in enumerate(row):
            coeffs[cols[j]] = v
        out.append(ring.linear_form(coeffs))
    return out


def divide_exact(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """f / g, raising if g does not divide f."""
    ring = f.ring
    p = ring.p
    rest = dict(f.terms)
    q = {}
    lg = g.lm()
    inv = pow(g.terms[lg], -1, p)
    while rest:
        m = max(rest)
        if not ring.divides(lg, m):
            raise ArithmeticError("inexact division")
        c = rest[m] * inv % p
        qm = m - lg
        q[qm] = c
        for gm, gc in g.terms.items():
            nm = gm + qm
            v = (rest.get(nm, 0) - c * gc) % p
            if v:
                rest[nm] = v
            else:
                rest.pop(nm, None)
    return MultiPoly(ring, q)


def irrelevant_ideal(ring: PolyRing) -> GradedIdeal:
    return GradedIdeal(ring, ring.gens)
