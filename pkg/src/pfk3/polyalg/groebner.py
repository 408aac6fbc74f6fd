"""Buchberger's algorithm with the sugar strategy and Gebauer-Möller pair criteria."""

from __future__ import annotations

import heapq
import os
import time
from dataclasses import dataclass, field

from .ring import DegreeOverflow, MultiPoly, PolyRing


class ResourceLimit(RuntimeError):
    """A Gröbner run exceeded its configured budget."""


@dataclass
class Budget:
    max_basis: int = 20000
    max_degree: int = 100
    max_ms: float | None = None

    @classmethod
    def from_env(cls) -> Budget:
        ms = os.environ.get("PFK3_BUDGET_MS")
        return cls(max_ms=float(ms) if ms else None)


DEFAULT_BUDGET = Budget.from_env()


@dataclass
class GBStats:
    pairs_total: int = 0
    pairs_reduced: int = 0
    zero_reductions: int = 0
    seconds: float = 0.0


@dataclass
class _Reducer:
    lm: int
    lme: int
    tail: list
    sugar: int
    terms: dict = field(repr=False)


def _nf(terms: dict, reducers: list, ring: PolyRing, cache: dict | None = None) -> dict:
    """Full normal form of ``terms`` (consumed) by monic ``reducers``."""
    if not terms:
        return {}
    p = ring.p
    expmask = ring.expmask
    guard = ring.guard
    nred = len(reducers)
    heap = [-m for m in terms]
    heapq.heapify(heap)
    out = {}
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        m = -pop(heap)
        c = terms.pop(m, None)
        if c is None:
            continue
        hit = None
        if cache is not None:
            k = cache.get(m)
            if k is not None:
                if k >= 0:
                    hit = reducers[k]
                    start = nred
                else:
                    start = -k - 1
            else:
                start = 0
        else:
            start = 0
        if hit is None:
            me = (m & expmask) | guard
            for k in range(start, nred):
                r = reducers[k]
                if (me - r.lme) & guard == guard:
                    hit = r
                    if cache is not None:
                        cache[m] = k
                    break
            else:
                if cache is not None:
                    cache[m] = -nred - 1
        if hit is None:
            out[m] = c
            continue
        q = m - hit.lm
        for tm, tc in hit.tail:
            nm = tm + q
            v = terms.get(nm)
            if v is None:
                if nm & guard:
                    raise DegreeOverflow("exponent overflow during reduction")
                terms[nm] = (-c * tc) % p
                push(heap, -nm)
            else:
                v = (v - c * tc) % p
                if v:
                    terms[nm] = v
                else:
                    del terms[nm]
    return out


def _make_reducer(ring: PolyRing, terms: dict, sugar: int) -> _Reducer:
    lm = max(terms)
    inv = pow(terms[lm], -1, ring.p)
    p = ring.p
    if inv != 1:
        terms = {m: c * inv % p for m, c in terms.items()}
    tail = [(m, c) for m, c in terms.items() if m != lm]
    return _Reducer(lm, (lm & ring.expmask), tail, sugar, terms)


def normal_form(f: MultiPoly, basis: list[MultiPoly]) -> MultiPoly:
    """Full normal form of f with respect to ``basis`` (a Gröbner basis for canonical output)."""
    ring = f.ring
    reds = [_make_reducer(ring, dict(g.terms), 0) for g in basis if g.terms]
    return MultiPoly(ring, _nf(dict(f.terms), reds, ring))


def groebner_basis(
    polys: list[MultiPoly],
    budget: Budget | None = None,
    module_mask: int = 0,
    stats: GBStats | None = None,
) -> list[MultiPoly]:
    """Reduced Gröbner basis (monic, sorted by increasing leading monomial).

    ``module_mask`` marks exponent fields of module-basis variables: pairs whose
    lcm has degree >= 2 in those variables are skipped, which turns this into
    a Gröbner engine for submodules of free modules (see ``modules``).
    """
    budget = budget or DEFAULT_BUDGET
    polys = [f for f in polys if f.terms]
    if not polys:
        return []
    ring = polys[0].ring
    t0 = time.monotonic()
    deadline = t0 + budget.max_ms / 1000.0 if budget.max_ms else None
    stats = stats if stats is not None else GBStats()

    mdeg = ring.mdeg
    divides = ring.divides
    lcm = ring.lcm_exponent
    coprime = ring.coprime
    from_exponent = ring.from_exponent

    G: list[_Reducer] = []
    active: list[int] = []
    pairs: dict = {}
    heap: list = []
    cache: dict = {}

    def module_ok(l):
        return not module_mask or mdeg(l & module_mask) <= 1

    def update(h: int):
        rh = G[h]
        lh = rh.lm
        cand = [(g, lcm(lh, G[g].lm)) for g in active]
        kept = []
        while cand:
            g, l = cand.pop()
            if coprime(lh, G[g].lm) or not (
                any(divides(l2, l) for _, l2 in cand) or any(divides(l2, l) for _, l2 in kept)
            ):
                kept.append((g, l))
        for key, (sug, l) in list(pairs.items()):
            i, j = key
            if divides(lh, l) and lcm(G[i].lm, lh) != l and lcm(G[j].lm, lh) != l:
                del pairs[key]
        dh = mdeg(lh)
        for g, l in kept:
            if coprime(lh, G[g].lm) or not module_ok(l):
                continue
            rg = G[g]
            dl = mdeg(l)
            sug = max(rh.sugar + dl - dh, rg.sugar + dl - mdeg(rg.lm))
            key = (g, h)
            pairs[key] = (sug, l)
            heapq.heappush(heap, (sug, l, g, h))
            stats.pairs_total += 1
        active[:] = [g for g in active if not divides(lh, G[g].lm)]
        active.append(h)

    def add(terms: dict, sugar: int):
        if len(G) >= budget.max_basis:
            raise ResourceLimit(f"basis size exceeded {budget.max_basis}")
        r = _make_reducer(ring, terms, sugar)
        if mdeg(r.lm) > budget.max_degree:
            raise ResourceLimit(f"degree exceeded {budget.max_degree}")
        G.append(r)
        update(len(G) - 1)

    for f in sorted(polys, key=lambda f: (f.total_degree(), max(f.terms))):
        reds = [G[g] for g in active]
        r = _nf(dict(f.terms), reds, ring)
        if r:
            add(r, f.total_degree())

    while heap:
        sug, l, i, j = heapq.heappop(heap)
        if pairs.pop((i, j), None) is None:
            continue
        if deadline is not None and time.monotonic() > deadline:
            raise ResourceLimit(f"wall-clock budget of {budget.max_ms} ms exceeded")
        gi, gj = G[i], G[j]
        l = from_exponent(l)
        qi, qj = l - gi.lm, l - gj.lm
        p = ring.p
        s = {m + qi: c for m, c in gi.tail}
        for m, c in gj.tail:
            nm = m + qj
            v = (s.get(nm, 0) - c) % p
            if v:
                s[nm] = v
            else:
                s.pop(nm, None)
        stats.pairs_reduced += 1
        r = _nf(s, G, ring, cache)
        if r:
            add(r, sug)
        else:
            stats.zero_reductions += 1

    # interreduce the minimal basis
    final = [G[g] for g in active]
    final.sort(key=lambda r: r.lm)
    out = []
    for k, r in enumerate(final):
        others = final[:k] + final[k + 1 :]
        tail = _nf(dict(r.tail), others, ring)
        tail[r.lm] = 1
        out.append(MultiPoly(ring, tail))
    stats.seconds += time.monotonic() - t0
    return out


def is_groebner(basis: list[MultiPoly]) -> bool:
    """Buchberger criterion: all S-polynomials reduce to zero (independent check)."""
    if not basis:
        return True
    ring = basis[0].ring
    reds = [_make_reducer(ring, dict(g.terms), 0) for g in basis]
    p = ring.p
    for a in range(len(reds)):
        for b in range(a + 1, len(reds)):
            ga, gb = reds[a], reds[b]
            l = ring.lcm(ga.lm, gb.lm)
            qa, qb = l - ga.lm, l - gb.lm
            s = {m + qa: c for m, c in ga.tail}
            for m, c in gb.tail:
                nm = m + qb
                v = (s.get(nm, 0) - c) % p
                if v:
                    s[nm] = v
                else:
                    s.pop(nm, None)
            if _nf(s, reds, ring):
                return False
    return True
