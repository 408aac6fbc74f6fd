"""Twisted cubics in P^3 as 2x2 minors of a 3x2 matrix of linear forms, on the cubic surface det A = 0."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .exactmath import DEFAULT_PRIME, PrimeField, rank_of
from .polyalg.hilbert import HilbertData, binom_value
from .polyalg.ideal import GradedIdeal
from .polyalg.modules import FreeModule, ModulePresentation, free_resolution, hom_module
from .polyalg.ring import MultiPoly, PolyRing
from .rng import stream

P3_NAMES = ("x", "y", "z", "w")
TWISTED_CUBIC_BETTI = [(2, 2, 2), (3, 3)]


class DegenerateMatrix(ValueError):
    pass


def p3_ring(p: int = DEFAULT_PRIME) -> PolyRing:
    return PolyRing(P3_NAMES, p)


class LinearMatrix3:
    """A 3x3 matrix of linear forms in x, y, z, w."""

    def __init__(self, ring: PolyRing, entries):
        self.ring = ring
        self.entries = [list(r) for r in entries]
        if len(self.entries) != 3 or any(len(r) != 3 for r in self.entries):
            raise ValueError("need a 3x3 matrix")
        for r in self.entries:
            for e in r:
                if e.terms and e.total_degree() != 1 or not e.is_homogeneous():
                    raise ValueError("entries must be linear forms")
        if not self.det().terms:
            raise DegenerateMatrix("det A vanishes identically")

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def minor(self, rows, cols) -> MultiPoly:
        (a, b), (c, d) = rows, cols
        E = self.entries
        return E[a][c] * E[b][d] - E[a][d] * E[b][c]

    def det(self) -> MultiPoly:
        E = self.entries
        return (E[0][0] * self.minor((1, 2), (1, 2)) - E[0][1] * self.minor((1, 2), (0, 2))
                + E[0][2] * self.minor((1, 2), (0, 1)))

    def adjugate(self) -> list[list[MultiPoly]]:
        """adj(A)[j][i] = (-1)^(i+j) times the minor deleting row i and column j."""
        out = [[None] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                rows = tuple(r for r in range(3) if r != i)
                cols = tuple(c for c in range(3) if c != j)
                m = self.minor(rows, cols)
                out[j][i] = m if (i + j) % 2 == 0 else -m
        return out

    def combine(self, combo) -> list[list[MultiPoly]]:
        """The 3x2 matrix A * combo."""
        R = self.ring
        out = []
        for i in range(3):
            row = []
            for j in range(2):
                acc = R.zero()
                for k in range(3):
                    acc = acc + self.entries[i][k].scale(combo[k][j])
                row.append(acc)
            out.append(row)
        return out


def matmul(X, Y, ring: PolyRing):
    return [[sum((X[i][k] * Y[k][j] for k in range(len(Y))), ring.zero()) for j in range(len(Y[0]))]
            for i in range(len(X))]


def random_linear_matrix(seed: int, p: int = DEFAULT_PRIME) -> LinearMatrix3:
    R = p3_ring(p)
    F = R.field
    rng = stream(seed, 0x4133)
    while True:
        E = [[R.linear_form([F.random(rng) for _ in range(4)]) for _ in range(3)] for _ in range(3)]
        try:
            return LinearMatrix3(R, E)
        except DegenerateMatrix:
            continue


def classical_matrix(seed: int = 0, p: int = DEFAULT_PRIME) -> LinearMatrix3:
    """Columns 1, 2 are [[x, y], [y, z], [z, w]]; column 3 is random."""
    R = p3_ring(p)
    F = R.field
    x, y, z, w = R.gens
    rng = stream(seed, 0x434C)
    third = [R.linear_form([F.random(rng) for _ in range(4)]) for _ in range(3)]
    return LinearMatrix3(R, [[x, y, third[0]], [y, z, third[1]], [z, w, third[2]]])


def random_combo(seed: int, p: int = DEFAULT_PRIME) -> list[list[int]]:
    F = PrimeField(p)
    rng = stream(seed, 0x434F)
    while True:
        c = [[F.random(rng) for _ in range(2)] for _ in range(3)]
        if rank_of(F, [list(col) for col in zip(*c)]) == 2:
            return c


STANDARD_COMBO = [[1, 0], [0, 1], [0, 0]]


@dataclass
class DetCurve:
    A: LinearMatrix3
    combo: list
    A0: list
    minors: list
    ideal: GradedIdeal
    hilbert: HilbertData

    @property
    def ring(self) -> PolyRing:
        return self.A.ring


def make_det_curve(A: LinearMatrix3, combo=STANDARD_COMBO) -> DetCurve:
    """C = V(2x2 minors of A0), A0 = two independent column combinations of A."""
    R = A.ring
    F = R.field
    if rank_of(F, [list(col) for col in zip(*combo)]) != 2:
        raise ValueError("combination columns are dependent")
    A0 = A.combine(combo)
    minors = []
    for drop in range(3):
        a, b = [r for r in range(3) if r != drop]
        minors.append(A0[a][0] * A0[b][1] - A0[a][1] * A0[b][0])
    I = GradedIdeal(R, minors)
    hd = I.hilbert()
    if hd.dim != 1:
        raise DegenerateMatrix(f"minors have projective dimension {hd.dim}, not 1")
    if I.normal_form(A.det()).terms:
        raise ArithmeticError("det A is not in the curve ideal")
    return DetCurve(A, [list(r) for r in combo], A0, minors, I, hd)


@dataclass
class ResolutionShape:
    betti: list
    matches: bool
    binomial_ok: bool  # alternating sum of the resolution equals 3n + 1
    surface_series_ok: bool  # I_{C/S} = I_{C/P3} minus R(-3), against a Gröbner count

    @property
    def passed(self) -> bool:
        return self.matches and self.binomial_ok and self.surface_series_ok


def resolution_shape(C: DetCurve, degrees: int = 10) -> ResolutionShape:
    R = C.ring
    F = FreeModule(R, (0,))
    betti = free_resolution(F, [(m,) for m in C.minors])
    binom_ok = all(
        comb(n + 3, 3) - 3 * binom_value(n + 1, 3) + 2 * binom_value(n, 3) == 3 * n + 1 == C.hilbert.hilbert_function(n)
        for n in range(degrees + 1)
    )
    # 0 -> R(-3) -> I_C -> I_{C/S} -> 0
    M = ModulePresentation.ideal_image(R, C.minors, modulo=[C.A.det()])
    hf = M.hilbert_function()
    series_ok = all(
        hf(n) == comb(n + 3, 3) - C.hilbert.hilbert_function(n) - binom_value(n, 3)
        for n in range(degrees + 1)
    )
    return ResolutionShape([tuple(b) for b in betti], [tuple(b) for b in betti] == TWISTED_CUBIC_BETTI,
                           binom_ok, series_ok)


@dataclass
class PeriodicReport:
    cramer_right: bool
    cramer_left: bool
    adj_quadrics: bool
    composites_vanish_mod_det: bool
    truncated_series_ok: bool

    @property
    def passed(self) -> bool:
        return all((self.cramer_right, self.cramer_left, self.adj_quadrics, self.composites_vanish_mod_det,
                    self.truncated_series_ok))


def two_periodic_check(A: LinearMatrix3, curve: DetCurve | None = None) -> PeriodicReport:
    """A adj(A) = adj(A) A = det(A) I, and the period-2 complex over R/(det A)."""
    R = A.ring
    d = A.det()
    B = A.adjugate()
    E = A.entries
    AB = matmul(E, B, R)
    BA = matmul(B, E, R)
    scalar = [[d if i == j else R.zero() for j in range(3)] for i in range(3)]
    right = AB == scalar
    left = BA == scalar
    quad = all(b.is_homogeneous() and b.total_degree() in (2, -1) for row in B for b in row)
    S = GradedIdeal(R, [d])
    vanish = all(not S.normal_form(e).terms for M in (AB, BA) for row in M for e in row)

    # ... -> R_S(-5)^3 -> R_S(-3)^3 -> R_S(-2)^3 -> I_{C/S} -> 0, truncated after three steps
    series_ok = True
    if curve is not None:
        hf_s = S.hilbert().hilbert_function
        M = ModulePresentation.ideal_image(R, curve.minors, modulo=[d])
        hf = M.hilbert_function()
        for n in range(6):
            alt = 3 * hf_s(n - 2) - 3 * hf_s(n - 3) + 3 * hf_s(n - 5)
            series_ok &= alt == hf(n) == 3 * comb(n, 2)
    return PeriodicReport(right, left, quad, vanish, series_ok)


def hom_dimension(C: DetCurve, degree: int = 0) -> int:
    """dim_k Hom(I_{C/S}, O_S)_degree, with S = V(det A) and I_{C/S} = I_C / (det A)."""
    R = C.ring
    d = C.A.det()
    M = ModulePresentation.ideal_image(R, C.minors, modulo=[d])
    N = ModulePresentation.quotient_ring(R, [d])
    return hom_module(M, N).dim(degree)


def hom_control(A: LinearMatrix3) -> int:
    """dim Hom(R_S, R_S)_0, which is 1."""
    N = ModulePresentation.quotient_ring(A.ring, [A.det()])
    return hom_module(N, N).dim(0)


def same_span_check(A: LinearMatrix3, combo, g) -> bool:
    """combo and combo * g (g an invertible 2x2) give the same curve ideal."""
    R = A.ring
    F = R.field
    combo2 = [[sum(combo[i][k] * g[k][j] for k in range(2)) % F.p for j in range(2)] for i in range(3)]
    C1 = make_det_curve(A, combo)
    C2 = make_det_curve(A, combo2)
    return C1.ideal.same_as(C2.ideal)
