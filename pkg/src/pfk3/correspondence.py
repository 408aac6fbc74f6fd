"""The correspondence Γ ⊂ X × Y: pairs ([P], [φ]) with P ∩ rad(φ) ≠ 0, studied fiber by fiber."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .construction import PfaffianInstance, XPoint, point_on_X, point_on_Y
from .exactmath import DIM_V, PluckerVector, plane_basis, rank_of, wedge, wedge4_matrix
from .polyalg.hilbert import HilbertData
from .polyalg.ideal import GradedIdeal
from .polyalg.points import eliminant, split_points
from .rng import stream

FIBER_SCHEMA_VERSION = 1
_TAG_FIBER = 0x4642


class RadicalError(ValueError):
    """The form at y does not have a 2-dimensional radical."""


class NonGenericFiber(ValueError):
    pass


class InstanceRejected(RuntimeError):
    pass


def radical_basis(inst: PfaffianInstance, y) -> tuple:
    phi = inst.form_at(y)
    if phi.rank() != 4:
        raise RadicalError(f"radical not 2-dimensional (rank {phi.rank()})")
    r1, r2 = phi.radical()
    return tuple(r1), tuple(r2)


@dataclass
class SchubertCycle:
    y: tuple
    radical: tuple
    forms: list  # 15 linear forms in the Plücker variables
    rank: int
    _hilbert: HilbertData | None = field(default=None, repr=False)

    def ideal(self, inst: PfaffianInstance) -> GradedIdeal:
        return GradedIdeal(inst.x_ring, inst.plucker_quadrics + self.forms, budget=inst.budget)

    def hilbert(self, inst: PfaffianInstance) -> HilbertData:
        if self._hilbert is None:
            self._hilbert = self.ideal(inst).hilbert()
        return self._hilbert


def schubert_cycle(inst: PfaffianInstance, y) -> SchubertCycle:
    """Planes meeting rad(φ): ω ∧ r1 ∧ r2 = 0, as 15 linear forms of rank 6."""
    r1, r2 = radical_basis(inst, y)
    M = wedge4_matrix(wedge(r1, r2, inst.field), inst.field)
    forms = [inst.x_ring.linear_form(row) for row in M.rows]
    return SchubertCycle(tuple(y), (r1, r2), forms, M.rank())


@dataclass
class FiberOverY:
    y: tuple
    ideal: GradedIdeal
    dim: int
    length: int | None = None
    factor_degrees: tuple = ()
    squarefree: bool | None = None
    eliminant: list = field(default_factory=list)
    split: list = field(default_factory=list)  # (Plücker point, multiplicity)
    seconds: float = 0.0

    @property
    def generic(self) -> bool:
        return self.dim == 0 and self.length == 4

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "schema_version": FIBER_SCHEMA_VERSION,
            "point": list(self.y),
            "dimension": self.dim,
            "length": self.length,
            "eliminant_factor_degrees": list(self.factor_degrees),
            "eliminant_squarefree": self.squarefree,
            "split_points": [{"plucker": list(p), "multiplicity": k} for p, k in self.split],
            "status": "generic" if self.generic else "degenerate",
        }
        if timing:
            d["seconds"] = round(self.seconds, 6)
        return d


def fiber_over_Y(inst: PfaffianInstance, y, seed: int = 0) -> FiberOverY:
    """Γ_φ = X ∩ Σ_φ: length, eliminant factorization and the F_p-rational points."""
    t0 = time.perf_counter()
    sc = schubert_cycle(inst, y)
    R = inst.x_ring
    I = GradedIdeal(R, list(inst.X_ideal.gb) + sc.forms, budget=inst.budget)
    hd = I.hilbert()
    fib = FiberOverY(tuple(y), I, hd.dim)
    if hd.dim != 0:
        fib.seconds = time.perf_counter() - t0
        return fib
    rng = stream(inst.seed or 0, _TAG_FIBER, *y, seed)
    fib.length = I.zero_dim_length(rng)
    el = eliminant(I, rng)
    fib.eliminant = list(el.coeffs)
    if el.factorization is not None:
        fib.factor_degrees = el.factorization.degrees
        fib.squarefree = el.factorization.squarefree
        fib.split = [(PluckerVector(p), k) for p, k in split_points(el)]
    fib.seconds = time.perf_counter() - t0
    return fib


@dataclass(frozen=True)
class XiPoint:
    plucker: PluckerVector
    residue_degree: int
    basis: tuple | None = None  # witness 2-plane for split points
    meets_radical: bool | None = None


def xi_points(inst: PfaffianInstance, y, seed: int = 0, fiber: FiberOverY | None = None) -> list[XiPoint]:
    """ξ(y): the split points with their witness planes, plus one entry per non-linear factor."""
    fib = fiber or fiber_over_Y(inst, y, seed)
    if fib.dim != 0:
        raise NonGenericFiber(f"fiber has dimension {fib.dim}")
    sc = schubert_cycle(inst, y)
    F = inst.field
    out = []
    for w, _ in fib.split:
        if not inst.on_X(w) or any(f.evaluate(list(w)) for f in sc.forms):
            raise ArithmeticError("split point violates a defining equation")
        basis = plane_basis(w, F)
        meets = rank_of(F, list(basis) + list(sc.radical)) <= 3
        if not meets:
            raise ArithmeticError("split plane misses the radical")
        out.append(XiPoint(w, 1, basis, meets))
    for d in fib.factor_degrees:
        if d > 1:
            out.append(XiPoint(PluckerVector([0] * 15), d))
    return out


@dataclass
class FiberOverX:
    point: XPoint
    matrix: list  # 2 x 6 linear forms in the y-variables
    ideal: GradedIdeal
    hilbert: HilbertData

    @property
    def p_columns_vanish(self) -> bool:
        return not any(self.matrix[i][j].terms for i in range(2) for j in range(2))


def _complete_basis(F, p1, p2) -> list:
    """(p1, p2, w1, ..., w4) with w's standard basis vectors."""
    vecs = [tuple(p1), tuple(p2)]
    for i in range(DIM_V):
        e = tuple(1 if j == i else 0 for j in range(DIM_V))
        if rank_of(F, vecs + [e]) == len(vecs) + 1:
            vecs.append(e)
    return vecs


def fiber_over_X(inst: PfaffianInstance, pt: XPoint) -> FiberOverX:
    """Γ_P ⊂ Y: 2x2 minors of M(y)_ij = φ_y(p_i, v_j)."""
    F = inst.field
    R = inst.y_ring
    p1, p2 = pt.basis
    vs = _complete_basis(F, p1, p2)
    M = [[R.linear_form([phi(p, v) for phi in inst.forms]) for v in vs] for p in (p1, p2)]
    minors = []
    for a in range(DIM_V):
        for b in range(a + 1, DIM_V):
            m = M[0][a] * M[1][b] - M[0][b] * M[1][a]
            if m.terms:
                minors.append(m)
    I = GradedIdeal(R, minors, budget=inst.budget)
    return FiberOverX(pt, M, I, I.hilbert())


def sample_X_points(inst: PfaffianInstance, k: int, seed: int = 0) -> list[XPoint]:
    """k pairwise distinct points of X."""
    out, seen = [], set()
    t = 0
    while len(out) < k:
        pt = point_on_X(inst, stream(seed, 0x5850, t).next_u64())
        t += 1
        if pt.plucker not in seen:
            seen.add(pt.plucker)
            out.append(pt)
        if t > 10 * k + 20:
            raise RuntimeError("could not find enough distinct points of X")
    return out


def sample_Y_points(inst: PfaffianInstance, k: int, seed: int = 0) -> list[tuple]:
    return [point_on_Y(inst, stream(seed, 0x5950, t).next_u64()) for t in range(k)]


@dataclass
class FlatnessReport:
    polynomials: list
    constant: bool
    offending: list


def flatness_evidence(inst: PfaffianInstance, points: list[XPoint]) -> FlatnessReport:
    """Hilbert polynomials of Γ_P over the given points; flatness predicts one polynomial."""
    polys = [fiber_over_X(inst, pt).hilbert.poly_str() for pt in points]
    ref = polys[0] if polys else None
    bad = [i for i, s in enumerate(polys) if s != ref]
    return FlatnessReport(polys, not bad, bad)


@dataclass
class PairRecord:
    index: int
    transversal_rank: int | None
    fibers_differ: bool | None
    skipped: str | None = None

    @property
    def passed(self) -> bool:
        return self.skipped is None and self.transversal_rank == 4 and bool(self.fibers_differ)


def distinctness_checks(inst: PfaffianInstance, pairs: list[tuple[XPoint, XPoint]]) -> list[PairRecord]:
    """P ∩ Q = 0 and Γ_P ≠ Γ_Q for each pair."""
    F = inst.field
    out = []
    for i, (P, Q) in enumerate(pairs):
        if P.plucker == Q.plucker:
            out.append(PairRecord(i, None, None, "identical points"))
            continue
        r = rank_of(F, list(P.basis) + list(Q.basis))
        gP = fiber_over_X(inst, P).ideal.gb
        gQ = fiber_over_X(inst, Q).ideal.gb
        out.append(PairRecord(i, r, gP != gQ))
    return out


@dataclass(frozen=True)
class RadicalWitness:
    index: int
    value: int
    radical: tuple


def radical_not_on_X(inst: PfaffianInstance, y) -> RadicalWitness:
    """Some φ_i is nonzero on rad(φ_y), so [rad φ_y] is not a point of X."""
    r1, r2 = radical_basis(inst, y)
    for i, phi in enumerate(inst.forms):
        v = phi(r1, r2)
        if v:
            return RadicalWitness(i, v, (r1, r2))
    raise InstanceRejected("every form vanishes on the radical plane")
