"""Numerical K-theory of a cubic fourfold Y ⊂ P^5 and the Mukai lattice of a degree-14 K3 surface.

Classes live in Q[h]/(h^5) through their Chern characters, with ∫ h^4 = 3.
Alongside the Chern character each class may carry a formal combination of
named generators (O(k), O_y) so mutation results can be read off directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .polyalg.hilbert import binom_value, binomial_poly

TOP = 4  # h^5 = 0
DEGREE_Y = 3
DEGREE_X = 14


def _series_mul(a, b):
    out = [Fraction(0)] * (TOP + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(TOP + 1 - i):
                out[i + j] += x * b[j]
    return out


def _series_pow(a, k):
    out = [Fraction(1)] + [Fraction(0)] * TOP
    for _ in range(k):
        out = _series_mul(out, a)
    return out


def _series_inv(a):
    """1/a for a power series with a[0] != 0."""
    out = [Fraction(0)] * (TOP + 1)
    out[0] = 1 / Fraction(a[0])
    for n in range(1, TOP + 1):
        s = sum(a[k] * out[n - k] for k in range(1, n + 1))
        out[n] = -s / a[0]
    return out


def _exp(c: Fraction):
    """e^{c h} truncated."""
    out, term = [], Fraction(1)
    for i in range(TOP + 1):
        out.append(term)
        term = term * c / (i + 1)
    return out


def _todd_factor(c: Fraction):
    """ch h / (1 - e^{-ch}) as a series in h (c != 0)."""
    # (1 - e^{-ch}) / h = Σ_{i>=0} (-1)^i c^{i+1} h^i / (i+1)!
    q = [Fraction(0)] * (TOP + 1)
    fact = Fraction(1)
    for i in range(TOP + 1):
        fact *= i + 1
        q[i] = (-1) ** i * Fraction(c) ** (i + 1) / fact
    inv = _series_inv(q)
    return [Fraction(c) * x for x in inv]


@lru_cache(maxsize=None)
def todd_Y() -> tuple:
    """td(T_Y) = td(O(1))^6 / td(O(3)) from 0 -> T_Y -> T_P5|_Y -> O(3) -> 0."""
    num = _series_pow(_todd_factor(Fraction(1)), 6)
    return tuple(_series_mul(num, _series_inv(_todd_factor(Fraction(3)))))


def integrate(v) -> Fraction:
    return Fraction(v[TOP]) * DEGREE_Y


@dataclass(frozen=True)
class KClass:
    ch: tuple  # coefficients of 1, h, ..., h^4
    terms: tuple = field(default=(), compare=False)  # formal (name, coefficient) pairs

    def __add__(self, other: KClass) -> KClass:
        return KClass(tuple(a + b for a, b in zip(self.ch, other.ch)), _merge(self.terms, other.terms, 1))

    def __sub__(self, other: KClass) -> KClass:
        return KClass(tuple(a - b for a, b in zip(self.ch, other.ch)), _merge(self.terms, other.terms, -1))

    def __neg__(self) -> KClass:
        return self.scale(-1)

    def __rmul__(self, c) -> KClass:
        return self.scale(c)

    def scale(self, c) -> KClass:
        c = Fraction(c)
        return KClass(tuple(c * a for a in self.ch), tuple((n, c * k) for n, k in self.terms if c * k))

    def is_zero(self) -> bool:
        return not any(self.ch)

    def dual(self) -> tuple:
        return tuple((-1) ** i * a for i, a in enumerate(self.ch))

    def coefficient(self, name: str) -> Fraction:
        return dict(self.terms).get(name, Fraction(0))

    def __str__(self):
        if not self.terms:
            return "0" if self.is_zero() else f"ch={list(map(str, self.ch))}"
        parts = []
        for n, k in self.terms:
            s = "+" if k > 0 else "-"
            a = abs(k)
            parts.append(f"{s} {'' if a == 1 else str(a) + '*'}{n}")
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]


def _merge(a, b, sign):
    d = {}
    order = []
    for n, k in list(a) + [(n, sign * k) for n, k in b]:
        if n not in d:
            order.append(n)
            d[n] = Fraction(0)
        d[n] += k
    return tuple((n, d[n]) for n in sorted(order, key=_term_key) if d[n])


def _term_key(name: str):
    if name == "O_y":
        return (-1, 0)
    if name == "O":
        return (0, 0)
    if name.startswith("O(") and name.endswith(")"):
        return (0, -int(name[2:-1]))
    return (1, name)


def line_bundle(k: int) -> KClass:
    name = "O" if k == 0 else f"O({k})"
    return KClass(tuple(_exp(Fraction(k))), ((name, Fraction(1)),))


def skyscraper() -> KClass:
    """[O_y]: ch = h^4 / 3, the class of a point."""
    return KClass((0, 0, 0, 0, Fraction(1, DEGREE_Y)), (("O_y", Fraction(1)),))


def euler_pairing(a: KClass, b: KClass) -> Fraction:
    """χ(a, b) = ∫ ch(a)^∨ ch(b) td(T_Y)."""
    return integrate(_series_mul(_series_mul(list(a.dual()), list(b.ch)), list(todd_Y())))


def chi_line_bundle_oracle(n: int) -> int:
    """χ(O_Y(n)) = binom(n+5, 5) - binom(n+2, 5) from 0 -> O(n-3) -> O(n) -> O_Y(n) -> 0 on P^5."""
    return binom_value(n + 5, 5) - binom_value(n + 2, 5)


def mutate(k: int, b: KClass) -> KClass:
    """Left mutation past O(k) on classes: b - χ(O(k), b) O(k)."""
    ok = line_bundle(k)
    return b - ok.scale(euler_pairing(ok, b))


def pr_class(b: KClass) -> KClass:
    return mutate(-1, mutate(0, mutate(1, b)))


def koszul_surface_class() -> KClass:
    """[I_{S/Y}(2)] from 0 -> O -> O(1)^2 -> I_{S/Y}(2) -> 0 (S a complete intersection of two hyperplanes)."""
    return line_bundle(1).scale(2) - line_bundle(0)


def koszul_curve_class() -> KClass:
    """[I_{C0/Y}(2)] from 0 -> O(-1) -> O^3 -> O(1)^3 -> I_{C0/Y}(2) -> 0."""
    return line_bundle(1).scale(3) - line_bundle(0).scale(3) + line_bundle(-1)


def serre_symmetric(a: KClass, b: KClass) -> bool:
    """χ(a, b) = χ(b, a ⊗ O(-3)), with ω_Y = O(-3)."""
    return euler_pairing(a, b) == euler_pairing(b, twist(a, -3))


def twist(a: KClass, k: int) -> KClass:
    return KClass(tuple(_series_mul(list(a.ch), _exp(Fraction(k)))))


@dataclass
class SkyscraperReport:
    result: KClass
    chain: list  # χ coefficients removed at O(1), O, O(-1)
    coefficients: dict
    expected: dict
    passed: bool


def pr_skyscraper() -> SkyscraperReport:
    """pr[O_y] = O_y - O(1) + 5 O - 10 O(-1), the ranks of a truncated Koszul complex."""
    b = skyscraper()
    chain = []
    for k in (1, 0, -1):
        chain.append(euler_pairing(line_bundle(k), b))
        b = mutate(k, b)
    coeffs = {n: b.coefficient(n) for n in ("O_y", "O(1)", "O", "O(-1)")}
    expected = {"O_y": 1, "O(1)": -1, "O": 5, "O(-1)": -10}
    ok = coeffs == expected or coeffs == {n: -v for n, v in expected.items()}
    return SkyscraperReport(b, chain, coeffs, expected, ok)


@dataclass
class ENReport:
    coefficients: list  # of the alternating binomial sum, constant term first
    expected: list
    values: list  # n = 0..3
    degree: int
    passed: bool


def en_class_check() -> ENReport:
    """binom(n+5,5) - 6 binom(n+3,5) + 8 binom(n+2,5) - 3 binom(n+1,5) = (2n+1)(n+1)."""
    terms = [(1, 5), (-6, 3), (8, 2), (-3, 1)]
    total = [Fraction(0)] * 6
    for c, shift in terms:
        for i, a in enumerate(binomial_poly(shift, 5)):
            total[i] += c * a
    while len(total) > 1 and total[-1] == 0:
        total.pop()
    expected = [Fraction(1), Fraction(3), Fraction(2)]
    values = [sum(c * binom_value(n + s, 5) for c, s in terms) for n in range(4)]
    degree = int(total[-1] * 2) if len(total) == 3 else -1  # leading coefficient times 2!
    ok = total == expected and values == [1, 6, 15, 28] and degree == 4
    return ENReport(total, expected, values, degree, ok)


@dataclass(frozen=True)
class MukaiVector:
    r: Fraction
    d: Fraction
    s: Fraction

    def __add__(self, o):
        return MukaiVector(self.r + o.r, self.d + o.d, self.s + o.s)

    def __sub__(self, o):
        return MukaiVector(self.r - o.r, self.d - o.d, self.s - o.s)

    def scale(self, c):
        return MukaiVector(c * self.r, c * self.d, c * self.s)


def mukai_vector(r, d, s) -> MukaiVector:
    return MukaiVector(Fraction(r), Fraction(d), Fraction(s))


V_OX = mukai_vector(1, 0, 1)
V_POINT = mukai_vector(0, 0, 1)


def mukai(v: MukaiVector, w: MukaiVector) -> Fraction:
    return DEGREE_X * v.d * w.d - v.r * w.s - w.r * v.s


def mukai_chi(v: MukaiVector, w: MukaiVector) -> Fraction:
    return -mukai(v, w)


def ext1_dim(v: MukaiVector) -> Fraction:
    """dim Ext^1(E, E) = <v, v> + 2 for a simple sheaf E."""
    return mukai(v, v) + 2


def ideal_sheaf_vector(length: int) -> MukaiVector:
    """v(I_ξ) = v(O_X) - length * v(O_pt)."""
    return V_OX - V_POINT.scale(length)
