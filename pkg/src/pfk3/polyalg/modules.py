"""Graded free modules over a PolyRing: submodule Gröbner bases, syzygies, resolutions, Hom.

A vector of a free module ⊕ R(-d_i) is encoded as a polynomial that is linear
in extra "basis" variables e_i (weight d_i), so the ideal Gröbner engine runs
unchanged; pairs whose lcm involves two different basis variables are skipped.
Syzygies come from the usual trick: Gröbner basis of {f_j + s_j} under an order
where every e-term beats every s-term; the members free of e are syzygies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .groebner import _make_reducer, _nf, groebner_basis
from .hilbert import hilbert_numerator
from .ring import FIELD, MonomialOrder, MultiPoly, PolyRing

Vector = tuple  # of MultiPoly


@dataclass(frozen=True)
class FreeModule:
    ring: PolyRing
    shifts: tuple  # basis element i has degree shifts[i]

    @property
    def rank(self) -> int:
        return len(self.shifts)

    def zero(self) -> Vector:
        return tuple(self.ring.zero() for _ in self.shifts)

    def basis_vector(self, i: int) -> Vector:
        return tuple(self.ring.one() if j == i else self.ring.zero() for j in range(self.rank))

    def degree(self, v: Vector):
        """Degree of a homogeneous vector (None for zero)."""
        degs = {g + d for f, d in zip(v, self.shifts) for g in f.degrees()}
        if not degs:
            return None
        if len(degs) != 1:
            raise ValueError("vector is not homogeneous")
        return degs.pop()


class _Encoder:
    """Embeds vectors of free modules into a ring with basis variables."""

    def __init__(self, ring: PolyRing, blocks: Sequence[Sequence[int]], position_first: bool):
        self.base = ring
        self.n = ring.n
        self.sizes = [len(b) for b in blocks]
        weights_all = [w for b in blocks for w in b]
        lo = min(weights_all, default=0)
        wts = [w - lo + 1 for w in weights_all]
        nm = len(weights_all)
        N = self.n + nm
        names = list(ring.names) + [f"_e{k}" for k in range(nm)]
        rows = []
        if position_first and len(blocks) > 1:
            rows.append([0] * self.n + [1] * self.sizes[0] + [0] * (nm - self.sizes[0]))
        rows.append([1] * self.n + wts)
        rows.append([1] * N)
        rows += MonomialOrder._revlex_rows(N, list(range(N)))
        self.ring = PolyRing(names, ring.field, MonomialOrder("module", rows))
        self.offsets = [self.n + sum(self.sizes[:b]) for b in range(len(blocks))]
        self.mask = sum(((1 << FIELD) - 1) << (FIELD * k) for k in range(self.n, N))

    def embed(self, v: Vector, block: int = 0) -> MultiPoly:
        R = self.ring
        terms = {}
        off = self.offsets[block]
        for i, f in enumerate(v):
            for m, c in f.terms.items():
                e = list(self.base.decode(m)) + [0] * (R.n - self.n)
                e[off + i] = 1
                terms[R.encode(e)] = c
        return MultiPoly(R, terms)

    def split(self, g: MultiPoly) -> list[Vector]:
        """Coordinates of g in every block."""
        R = self.ring
        parts = [[dict() for _ in range(s)] for s in self.sizes]
        for m, c in g.terms.items():
            e = R.decode(m)
            k = next(k for k in range(self.n, R.n) if e[k])
            b = max(i for i, off in enumerate(self.offsets) if off <= k)
            parts[b][k - self.offsets[b]][self.base.encode(e[: self.n])] = c
        return [tuple(MultiPoly(self.base, t) for t in blk) for blk in parts]

    def lead_component(self, g: MultiPoly):
        e = self.ring.decode(g.lm())
        k = next(k for k in range(self.n, self.ring.n) if e[k])
        return k - self.n, e[: self.n]

    def gb(self, polys):
        return groebner_basis(polys, module_mask=self.mask)


def _is_zero(v: Vector) -> bool:
    return not any(f.terms for f in v)


def submodule_gb(F: FreeModule, gens: Sequence[Vector]):
    enc = _Encoder(F.ring, [F.shifts], position_first=False)
    return enc, enc.gb([enc.embed(v) for v in gens if not _is_zero(v)])


def reduce_vector(F: FreeModule, gens: Sequence[Vector], v: Vector) -> Vector:
    enc, gb = submodule_gb(F, gens)
    reds = [_make_reducer(enc.ring, dict(g.terms), 0) for g in gb]
    r = MultiPoly(enc.ring, _nf(dict(enc.embed(v).terms), reds, enc.ring))
    return enc.split(r)[0]


def syzygies(F: FreeModule, gens: Sequence[Vector]) -> tuple[FreeModule, list[Vector]]:
    """Generators of the kernel of ⊕ R(-deg g_j) -> F, e_j ↦ g_j."""
    degs = tuple(F.degree(g) if not _is_zero(g) else 0 for g in gens)
    G = FreeModule(F.ring, degs)
    if not gens:
        return G, []
    enc = _Encoder(F.ring, [F.shifts, degs], position_first=True)
    polys = []
    for j, g in enumerate(gens):
        unit = tuple(F.ring.one() if k == j else F.ring.zero() for k in range(len(gens)))
        polys.append(enc.embed(g, 0) + enc.embed(unit, 1))
    out = []
    for h in enc.gb(polys):
        top, syz = enc.split(h)
        if _is_zero(top):
            out.append(syz)
    return G, out


def minimal_generators(F: FreeModule, gens: Sequence[Vector], modulo: Sequence[Vector] = ()) -> list[Vector]:
    """A minimal homogeneous generating set of (gens + modulo) / modulo, drawn from gens."""
    cands = sorted((v for v in gens if not _is_zero(v)), key=lambda v: F.degree(v))
    kept: list[Vector] = []
    enc = _Encoder(F.ring, [F.shifts], position_first=False)
    base = [enc.embed(v) for v in modulo if not _is_zero(v)]
    for v in cands:
        gb = enc.gb(base + [enc.embed(u) for u in kept]) if (base or kept) else []
        reds = [_make_reducer(enc.ring, dict(g.terms), 0) for g in gb]
        if _nf(dict(enc.embed(v).terms), reds, enc.ring):
            kept.append(v)
    return kept


def quotient_hilbert_function(F: FreeModule, gens: Sequence[Vector]) -> Callable[[int], int]:
    """d ↦ dim_k (F / <gens>)_d, from the lead-term module of a Gröbner basis."""
    enc, gb = submodule_gb(F, gens)
    comps: list[list] = [[] for _ in range(F.rank)]
    for g in gb:
        i, e = enc.lead_component(g)
        comps[i].append(tuple(e))
    n = F.ring.n
    nums = [hilbert_numerator(c, n) for c in comps]

    def hf(d: int) -> int:
        total = 0
        for num, s in zip(nums, F.shifts):
            m = d - s
            if m < 0:
                continue
            total += sum(c * _comb(m - i + n - 1, n - 1) for i, c in enumerate(num) if i <= m)
        return total

    return hf


def _comb(a, b):
    from math import comb

    return comb(a, b) if a >= 0 else 0


def free_resolution(F: FreeModule, gens: Sequence[Vector], max_length: int = 10) -> list[tuple]:
    """Graded Betti numbers as degree tuples per homological step, starting with the generators."""
    cur = minimal_generators(F, gens)
    table = [tuple(sorted(F.degree(v) for v in cur))]
    space = F
    for _ in range(max_length):
        if not cur:
            break
        G, syz = syzygies(space, cur)
        cur = minimal_generators(G, syz)
        space = G
        if not cur:
            break
        table.append(tuple(sorted(G.degree(v) for v in cur)))
    return table


@dataclass
class ModulePresentation:
    """The graded module coker(⊕ R(-deg r) -> F0) with relation vectors in F0."""

    free: FreeModule
    relations: list = field(default_factory=list)

    @property
    def ring(self):
        return self.free.ring

    @classmethod
    def free_module(cls, ring, shifts=(0,)):
        return cls(FreeModule(ring, tuple(shifts)), [])

    @classmethod
    def quotient_ring(cls, ring, ideal_gens: Sequence[MultiPoly]):
        """R / (ideal_gens)."""
        F = FreeModule(ring, (0,))
        return cls(F, [(g,) for g in ideal_gens if g.terms])

    @classmethod
    def ideal_image(cls, ring, gens: Sequence[MultiPoly], modulo: Sequence[MultiPoly] = ()):
        """(gens + modulo) / (modulo), presented on the given generators."""
        gens = list(gens)
        modulo = [m for m in modulo if m.terms]
        F = FreeModule(ring, (0,))
        degs = tuple(g.total_degree() for g in gens)
        _, syz = syzygies(F, [(g,) for g in gens + modulo])
        rels = [tuple(v[: len(gens)]) for v in syz]
        rels = [r for r in rels if not _is_zero(r)]
        P = FreeModule(ring, degs)
        return cls(P, minimal_generators(P, rels))

    def relation_degrees(self):
        return tuple(self.free.degree(r) for r in self.relations)

    def hilbert_function(self) -> Callable[[int], int]:
        return quotient_hilbert_function(self.free, self.relations)


@dataclass
class HomResult:
    presentation: ModulePresentation
    _source: FreeModule
    _hf_all: Callable[[int], int]
    _hf_kernel: Callable[[int], int]

    def dim(self, d: int) -> int:
        """Dimension of the degree-d piece of Hom(M, N)."""
        return self._hf_all(d) - self._hf_kernel(d)


def hom_module(M: ModulePresentation, N: ModulePresentation) -> HomResult:
    """Hom(M, N) = ker(Hom(F0, N) -> Hom(F1, N)) with its graded-piece dimensions."""
    R = M.ring
    a = M.free.shifts
    b = N.free.shifts
    phi = M.relations
    c = M.relation_degrees()
    psi = N.relations
    r0, s0 = len(a), len(b)
    H0 = FreeModule(R, tuple(b[k] - a[i] for i in range(r0) for k in range(s0)))
    H1 = FreeModule(R, tuple(b[k] - c[j] for j in range(len(phi)) for k in range(s0)))

    def place(vec_in_G0, slot, count):
        out = [R.zero()] * (count * s0)
        for k in range(s0):
            out[slot * s0 + k] = vec_in_G0[k]
        return tuple(out)

    R0 = [place(q, i, r0) for i in range(r0) for q in psi]
    R1 = [place(q, j, len(phi)) for j in range(len(phi)) for q in psi]
    images = []
    for i in range(r0):
        for k in range(s0):
            out = [R.zero()] * (len(phi) * s0)
            for j, col in enumerate(phi):
                out[j * s0 + k] = col[i]
            images.append(tuple(out))
    if phi:
        _, syz = syzygies(H1, images + R1) if (images + R1) else (None, [])
        kernel = [tuple(v[: len(images)]) for v in syz]
        kernel = [v for v in kernel if not _is_zero(v)]
    else:
        kernel = [H0.basis_vector(t) for t in range(H0.rank)]
    gens = minimal_generators(H0, kernel, modulo=R0)
    degs = tuple(H0.degree(v) for v in gens)
    P = FreeModule(R, degs)
    if gens:
        _, syz2 = syzygies(H0, gens + R0)
        rels = [tuple(v[: len(gens)]) for v in syz2]
        rels = minimal_generators(P, [r for r in rels if not _is_zero(r)])
    else:
        rels = []
    hf_all = quotient_hilbert_function(H0, R0)
    hf_k = quotient_hilbert_function(H0, list(kernel) + R0)
    return HomResult(ModulePresentation(P, rels), H0, hf_all, hf_k)
