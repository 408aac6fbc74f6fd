from itertools import combinations_with_replacement

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from pfk3.polyalg.groebner import Budget, ResourceLimit, groebner_basis, is_groebner, normal_form
from pfk3.polyalg.hilbert import hilbert_data_of_monomials
from pfk3.polyalg.ideal import GradedIdeal, NotZeroDimensional
from pfk3.polyalg.modules import FreeModule, ModulePresentation, free_resolution, hom_module
from pfk3.polyalg.points import eliminant, split_points
from pfk3.polyalg.ring import MonomialOrder, PolyRing
from pfk3.polyalg.univariate import from_roots, is_squarefree, multiply, univariate_roots
from pfk3.rng import SplitMix64

P = 32003
R3 = PolyRing(("x", "y", "z"), P)
SX = sympy.symbols("x y z")


def to_sympy(f):
    return sum(c * sympy.prod([v ** e for v, e in zip(SX, f.ring.decode(m))]) for m, c in f.terms.items())


def from_sympy(ring, g):
    poly = sympy.Poly(g, *SX, modulus=P)
    return ring.from_dict({e: int(c) % P for e, c in poly.terms()})


term = st.tuples(st.integers(1, P - 1), st.tuples(*[st.integers(0, 2)] * 3))
polys = st.lists(st.lists(term, min_size=1, max_size=3), min_size=2, max_size=3)


@given(polys)
@settings(max_examples=40, deadline=None)
def test_groebner_matches_sympy(system):
    fs = [R3.from_dict({e: c for c, e in terms}) for terms in system]
    fs = [f for f in fs if f.terms]
    ours = groebner_basis(fs)
    ref = sympy.groebner([to_sympy(f) for f in fs], *SX, modulus=P, order="grevlex")
    theirs = [from_sympy(R3, g) for g in ref.exprs]
    assert {frozenset(g.monic().terms.items()) for g in ours} == {frozenset(g.monic().terms.items()) for g in theirs}
    assert is_groebner(ours)
    for f in fs:
        assert not normal_form(f, ours).terms


def test_groebner_lex_order():
    R = PolyRing(("x", "y", "z"), P, "lex")
    x, y, z = R.gens
    gb = groebner_basis([x * x + y * z - 1, x * y - z, y * y - x])
    assert is_groebner(gb)
    # lex puts a univariate polynomial in z last
    assert all(R.decode(m)[:2] == (0, 0) for m in gb[0].terms)


def test_budget_exhaustion():
    x, y, z = R3.gens
    cubics = [x ** 3 + 2 * y ** 2 * z + 5 * x * z * z, y ** 3 - x * x * z + 7 * z ** 3, z ** 3 + x * y * z - 3 * x ** 3]
    assert max(g.total_degree() for g in groebner_basis(cubics)) > 4
    with pytest.raises(ResourceLimit):
        groebner_basis(cubics, Budget(max_degree=4))
    with pytest.raises(ResourceLimit):
        groebner_basis(cubics, Budget(max_basis=3))


def _brute_hf(gens, nvars, d):
    count = 0
    for c in combinations_with_replacement(range(nvars), d):
        e = [c.count(i) for i in range(nvars)]
        count += not any(all(a >= b for a, b in zip(e, g)) for g in gens)
    return count


@given(st.lists(st.tuples(*[st.integers(0, 3)] * 4), min_size=1, max_size=5))
@settings(max_examples=100, deadline=None)
def test_monomial_hilbert_function_by_counting(gens):
    gens = [g for g in gens if any(g)]
    hd = hilbert_data_of_monomials(gens, 4)
    for d in range(7):
        assert hd.hilbert_function(d) == _brute_hf(gens, 4, d)


def test_known_hilbert_polynomials():
    x, y, z = R3.gens
    assert GradedIdeal(R3, [x * x]).hilbert().poly_str() == "2n + 1"
    assert GradedIdeal(R3, [x, y]).hilbert().poly_str() == "1"
    conic = GradedIdeal(R3, [x * z - y * y])
    assert (conic.dim, conic.degree) == (1, 2)
    assert GradedIdeal(R3, [x, y, z]).hilbert().dim == -1


def test_saturation_agrees_with_element_route():
    R = PolyRing(("x", "y", "z", "w"), P)
    x, y, z, w = R.gens
    # twisted cubic ideal times the irrelevant ideal: same scheme, different ideal
    I = GradedIdeal(R, [x * z - y * y, y * w - z * z, x * w - y * z])
    J = GradedIdeal(R, [g * v for g in I.gens for v in R.gens])
    assert not J.same_as(I)
    assert J.saturate().same_as(I)
    assert J.saturate_by_element(x).same_as(I)


def test_unit_saturation_of_primary_ideal():
    x, y, z = R3.gens
    I = GradedIdeal(R3, [x ** 2, y ** 3, z, x * y])
    assert I.saturate().is_unit()


def test_linear_section():
    R = PolyRing(("a", "b", "c", "d"), P)
    a, b, c, d = R.gens
    I = GradedIdeal(R, [a - b, c * c - b * d])
    lin, small, free = I.linear_section()
    assert len(lin) == 1 and small.ring.n == 3 and len(free) == 3


def test_quotient_and_intersection():
    x, y, z = R3.gens
    I = GradedIdeal(R3, [x * y, x * z])
    assert I.quotient_element(x).same_as(GradedIdeal(R3, [y, z]))
    both = GradedIdeal(R3, [x]).intersect(GradedIdeal(R3, [y]))
    assert both.same_as(GradedIdeal(R3, [x * y]))


def test_elimination():
    x, y, z = R3.gens
    I = GradedIdeal(R3, [x - y * y, z - y ** 3], homogeneous=False)
    E = I.eliminate([1])
    assert E.contains(x ** 3 - z ** 2)


def _point_ideal(pts):
    """Ideal of a finite set of points in P^2, as products of linear forms through them."""
    x, y, z = R3.gens
    ideals = [GradedIdeal(R3, [p[1] * x - p[0] * y, p[2] * x - p[0] * z, p[2] * y - p[1] * z]) for p in pts]
    out = ideals[0]
    for J in ideals[1:]:
        out = out.intersect(J)
    return out


def test_zero_dim_length_and_points():
    pts = [(1, 2, 3), (1, 5, 7), (1, 0, 11), (1, 9, 9)]
    I = _point_ideal(pts)
    assert I.zero_dim_length(SplitMix64(1)) == 4
    el = eliminant(I, SplitMix64(2))
    assert el.degree == 4 and el.factorization.squarefree
    found = {p for p, _ in split_points(el)}
    assert found == set(pts)


def test_zero_dim_length_rejects_curves():
    x, y, z = R3.gens
    with pytest.raises(NotZeroDimensional):
        GradedIdeal(R3, [x * y - z * z]).zero_dim_length()


def test_univariate_roots_and_factor_degrees():
    f = from_roots([3, 5, 5, 100], P)
    fac = univariate_roots(f, P)
    assert fac.root_multiset == [3, 5, 5, 100]
    assert not fac.squarefree and not is_squarefree(f, P)
    irreducible = [1, 0, 1]  # x^2 + 1, irreducible since 32003 = 3 mod 4
    g = multiply(irreducible, from_roots([7, 8], P), P)
    fg = univariate_roots(g, P)
    assert fg.degrees == (1, 1, 2) and fg.squarefree


@given(st.lists(st.integers(0, P - 1), min_size=1, max_size=6, unique=True))
@settings(max_examples=50, deadline=None)
def test_roots_recovered(roots):
    fac = univariate_roots(from_roots(roots, P), P)
    assert fac.root_multiset == sorted(roots)
    assert fac.degrees == (1,) * len(roots)


def test_koszul_resolution():
    x, y, z = R3.gens
    betti = free_resolution(FreeModule(R3, (0,)), [(x,), (y,), (z,)])
    assert betti == [(1, 1, 1), (2, 2, 2), (3,)]


def test_twisted_cubic_resolution():
    R = PolyRing(("x", "y", "z", "w"), P)
    x, y, z, w = R.gens
    betti = free_resolution(FreeModule(R, (0,)), [(x * z - y * y,), (y * w - z * z,), (x * w - y * z,)])
    assert betti == [(2, 2, 2), (3, 3)]


def test_hom_of_cyclic_modules():
    x, y, z = R3.gens
    Rm = ModulePresentation.free_module(R3)
    Q = ModulePresentation.quotient_ring(R3, [x])
    assert hom_module(Rm, Rm).dim(0) == 1
    assert hom_module(Rm, Rm).dim(1) == 3
    assert hom_module(Q, Q).dim(0) == 1
    assert hom_module(Q, Rm).dim(0) == 0  # x is a nonzerodivisor on R
    assert hom_module(Q, Q).dim(1) == 2


def test_monomial_orders_differ():
    lex = MonomialOrder.lex(3)
    grevlex = MonomialOrder.grevlex(3)
    assert lex != grevlex
    R = PolyRing(("x", "y", "z"), P, lex)
    x, y, z = R.gens
    assert (x + y ** 5).lead_exponents() == (1, 0, 0)
    x, y, z = R3.gens
    assert (x + y ** 5).lead_exponents() == (0, 5, 0)


def test_packed_lcm_and_coprime():
    R = PolyRing(("a", "b", "c", "d"), P)
    rng = SplitMix64(3)
    for _ in range(300):
        ea = tuple(rng.randrange(6) for _ in range(4))
        eb = tuple(rng.randrange(6) for _ in range(4))
        a, b = R.encode(ea), R.encode(eb)
        assert R.decode(R.lcm(a, b)) == tuple(max(u, v) for u, v in zip(ea, eb))
        assert R.coprime(a, b) == all(u == 0 or v == 0 for u, v in zip(ea, eb))
        assert R.divides(a, R.lcm(a, b))


def test_arithmetic_identities():
    x, y, z = R3.gens
    f = (x + 2 * y - z) ** 3
    assert f.is_homogeneous() and f.total_degree() == 3
    assert (f - f).is_zero()
    assert f.diff(0) == 3 * (x + 2 * y - z) ** 2
    assert f.evaluate([1, 1, 1]) == 8
    assert R3.parse("x^2 - 3*y*z") == x * x - 3 * y * z
