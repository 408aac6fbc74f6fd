"""Polynomial rings over F_p with packed-integer monomials.

A monomial is a single Python int ``(key << EXPBITS) | exps``:

* ``exps`` packs the exponent vector, ``FIELD`` bits per variable, with the top
  bit of every field kept clear as a guard so divisibility is one subtraction;
* ``key`` packs the weight-row values ``W @ e`` of the monomial order, most
  significant row first, so integer comparison *is* the monomial order.

Both halves are additive, so multiplying monomials is integer addition.
"""

from __future__ import annotations

from typing import Sequence

from ..exactmath import PrimeField

FIELD = 8
MAX_EXP = (1 << (FIELD - 1)) - 1
DIGIT = 20


class DegreeOverflow(ArithmeticError):
    pass


class MonomialOrder:
    """A monomial order given by nonnegative integer weight rows.

    Rows are compared lexicographically; they must separate monomials, which
    every constructor below guarantees by ending with a revlex tail.
    """

    def __init__(self, name: str, rows: Sequence[Sequence[int]]):
        self.name = name
        self.rows = tuple(tuple(int(w) for w in r) for r in rows)
        if any(w < 0 for r in self.rows for w in r):
            raise ValueError("weight rows must be nonnegative")

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"MonomialOrder({self.name!r})"

    @staticmethod
    def _revlex_rows(n, perm):
        # partial sums s_{n-1}, ..., s_1 over the variables in perm order
        rows = []
        for k in range(n - 1, 0, -1):
            r = [0] * n
            for v in perm[:k]:
                r[v] = 1
            rows.append(r)
        return rows

    @classmethod
    def grevlex(cls, n: int, weights: Sequence[int] | None = None, perm: Sequence[int] | None = None):
        """Degree reverse lexicographic; ``perm`` lists variables from largest to smallest."""
        perm = list(range(n)) if perm is None else list(perm)
        rows = []
        if weights is not None and any(w != 1 for w in weights):
            rows.append(list(weights))
        rows.append([1] * n)
        rows += cls._revlex_rows(n, perm)
        tag = "grevlex" if perm == list(range(n)) else f"grevlex{tuple(perm)}"
        return cls(tag if weights is None else f"w{tag}", rows)

    @classmethod
    def lex(cls, n: int):
        return cls("lex", [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def block(cls, n: int, k: int, prefix: Sequence[Sequence[int]] = ()):
        """Elimination order: the first k variables dominate, grevlex inside each block."""
        rows = [list(r) for r in prefix]
        first = [1 if i < k else 0 for i in range(n)]
        rows.append(first)
        for j in range(k - 1, 0, -1):
            rows.append([1 if i < j else 0 for i in range(n)])
        second = [0 if i < k else 1 for i in range(n)]
        rows.append(second)
        for j in range(n - 1, k, -1):
            rows.append([1 if k <= i < j else 0 for i in range(n)])
        return cls(f"block{k}", rows)


class PolyRing:
    """F_p[x_0, ..., x_{n-1}] with a fixed monomial order."""

    def __init__(self, names: Sequence[str] | int, field: PrimeField | int, order: MonomialOrder | str = "grevlex"):
        if isinstance(names, int):
            names = [f"x{i}" for i in range(names)]
        self.names = tuple(names)
        self.n = len(self.names)
        self.field = field if isinstance(field, PrimeField) else PrimeField(field)
        self.p = self.field.p
        if isinstance(order, str):
            if order == "grevlex":
                order = MonomialOrder.grevlex(self.n)
            elif order == "lex":
                order = MonomialOrder.lex(self.n)
            else:
                raise ValueError(f"unknown order {order!r}")
        if any(len(r) != self.n for r in order.rows):
            raise ValueError("order rows do not match the number of variables")
        self.order = order
        self.expbits = FIELD * self.n
        self.expmask = (1 << self.expbits) - 1
        self.guard = sum(1 << (FIELD * i + FIELD - 1) for i in range(self.n))
        self.ones = sum(1 << (FIELD * i) for i in range(self.n))
        self._nrows = len(order.rows)
        # contribution of x_i to the packed monomial
        self._var_mono = []
        for i in range(self.n):
            key = 0
            for r in order.rows:
                key = (key << DIGIT) | r[i]
            self._var_mono.append((key << self.expbits) | (1 << (FIELD * i)))

    def __repr__(self):
        return f"PolyRing({list(self.names)}, p={self.p}, {self.order.name})"

    def __eq__(self, other):
        return isinstance(other, PolyRing) and (self.names, self.p, self.order) == (other.names, other.p, other.order)

    def __hash__(self):
        return hash((self.names, self.p, self.order))

    def with_order(self, order: MonomialOrder | str, names: Sequence[str] | None = None) -> PolyRing:
        return PolyRing(self.names if names is None else names, self.field, order)

    # -- monomials -------------------------------------------------------------------
    def encode(self, exps: Sequence[int]) -> int:
        m = 0
        for i, e in enumerate(exps):
            if e:
                if e > MAX_EXP:
                    raise DegreeOverflow(f"exponent {e} exceeds {MAX_EXP}")
                m += e * self._var_mono[i]
        return m

    def decode(self, m: int) -> tuple:
        x = m & self.expmask
        out = []
        mask = (1 << FIELD) - 1
        for _ in range(self.n):
            out.append(x & mask)
            x >>= FIELD
        return tuple(out)

    def mdeg(self, m: int) -> int:
        """Total degree of a packed monomial (digit-sum by multiplication)."""
        return (((m & self.expmask) * self.ones) >> (FIELD * (self.n - 1))) & ((1 << FIELD) - 1) if self.n else 0

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return (((b & self.expmask) | g) - (a & self.expmask)) & g == g

    def lcm(self, a: int, b: int) -> int:
        return self.from_exponent(self.lcm_exponent(a, b))

    def lcm_exponent(self, a: int, b: int) -> int:
        """Exponent part of lcm(a, b): fieldwise max without unpacking."""
        g = self.guard
        ea, eb = a & self.expmask, b & self.expmask
        sel = ((((ea | g) - eb) & g) >> (FIELD - 1)) * 0xFF
        return (ea & sel) | (eb & ~sel & self.expmask)

    def from_exponent(self, e: int) -> int:
        """Full packed monomial (order key included) from its exponent part."""
        return self.encode(self.decode(e))

    def support(self, m: int) -> int:
        """Guard-bit mask of the variables occurring in m."""
        return (((m & self.expmask) | self.guard) - self.ones) & self.guard

    def coprime(self, a: int, b: int) -> bool:
        return not (self.support(a) & self.support(b))

    # -- construction ----------------------------------------------------------------
    @property
    def gens(self) -> tuple:
        return tuple(MultiPoly(self, {v: 1}) for v in self._var_mono)

    def gen(self, i: int) -> MultiPoly:
        return MultiPoly(self, {self._var_mono[i]: 1})

    def zero(self) -> MultiPoly:
        return MultiPoly(self, {})

    def one(self) -> MultiPoly:
        return MultiPoly(self, {0: 1})

    def const(self, c) -> MultiPoly:
        c = self.field(c)
        return MultiPoly(self, {0: c} if c else {})

    def from_dict(self, d: dict) -> MultiPoly:
        terms = {}
        p = self.p
        for exps, c in d.items():
            c = self.field(c)
            if c:
                m = self.encode(exps)
                c = (terms.get(m, 0) + c) % p
                if c:
                    terms[m] = c
                else:
                    terms.pop(m, None)
        return MultiPoly(self, terms)

    def linear_form(self, coeffs: Sequence) -> MultiPoly:
        return MultiPoly(self, {self._var_mono[i]: self.field(c) for i, c in enumerate(coeffs) if self.field(c)})

    def parse(self, text: str) -> MultiPoly:
        """Parse an expression like ``"x^2 - 3*y*z"`` in this ring's variable names."""
        ns = dict(zip(self.names, self.gens))
        val = eval(text.replace("^", "**"), {"__builtins__": {}}, ns)
        return val if isinstance(val, MultiPoly) else self.const(val)

    def convert(self, f: MultiPoly, var_map: Sequence[int] | None = None) -> MultiPoly:
        """Re-encode ``f`` from another ring; ``var_map[i]`` is the index in self of f's x_i."""
        if var_map is None:
            var_map = [self.names.index(nm) for nm in f.ring.names]
        terms = {}
        for m, c in f.terms.items():
            e = f.ring.decode(m)
            ne = [0] * self.n
            for i, x in enumerate(e):
                if x:
                    ne[var_map[i]] += x
            terms[self.encode(ne)] = c
        return MultiPoly(self, terms)


class MultiPoly:
    """A polynomial: ``terms`` maps packed monomials to nonzero residues.

    Treated as immutable; every operation returns a new polynomial.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- inspection ------------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def lm(self) -> int:
        return max(self.terms)

    def lc(self) -> int:
        return self.terms[max(self.terms)]

    def lead_exponents(self) -> tuple:
        return self.ring.decode(self.lm())

    def sorted_terms(self) -> list[tuple[tuple, int]]:
        """(exponents, coefficient) pairs, strictly decreasing in the monomial order."""
        return [(self.ring.decode(m), self.terms[m]) for m in sorted(self.terms, reverse=True)]

    def total_degree(self) -> int:
        return max((self.ring.mdeg(m) for m in self.terms), default=-1)

    def degrees(self) -> set:
        return {self.ring.mdeg(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_part(self, d: int) -> MultiPoly:
        return MultiPoly(self.ring, {m: c for m, c in self.terms.items() if self.ring.mdeg(m) == d})

    def variables(self) -> set:
        used = 0
        for m in self.terms:
            used |= m & self.ring.expmask
        return {i for i in range(self.ring.n) if (used >> (FIELD * i)) & ((1 << FIELD) - 1)}

    def linear_coefficients(self) -> list[int]:
        """Coefficient vector of a linear form."""
        out = [0] * self.ring.n
        for m, c in self.terms.items():
            e = self.ring.decode(m)
            if sum(e) != 1:
                raise ValueError("not a linear form")
            out[e.index(1)] = c
        return out

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            c = self.ring.field.signed(c)
            mono = "*".join(
                nm if x == 1 else f"{nm}^{x}" for nm, x in zip(self.ring.names, e) if x
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- arithmetic ------------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        p = self.ring.p
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = (t.get(m, 0) + c) % p
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return MultiPoly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return MultiPoly(self.ring, {m: p - c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> MultiPoly:
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        p = self.ring.p
        return MultiPoly(self.ring, {m: v * c % p for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        other = self._coerce(other)
        p = self.ring.p
        guard = self.ring.guard
        t: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 + m2
                if m & guard:
                    raise DegreeOverflow("exponent overflow in product")
                t[m] = (t.get(m, 0) + c1 * c2) % p
        return MultiPoly(self.ring, {m: c for m, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def monic(self) -> MultiPoly:
        return self.scale(pow(self.lc(), -1, self.ring.p)) if self.terms else self

    def mul_monomial(self, m: int, c: int = 1) -> MultiPoly:
        p = self.ring.p
        return MultiPoly(self.ring, {k + m: v * c % p for k, v in self.terms.items()})

    def __call__(self, *point):
        return self.evaluate(point[0] if len(point) == 1 and isinstance(point[0], (list, tuple)) else point)

    def evaluate(self, point: Sequence[int]) -> int:
        p = self.ring.p
        total = 0
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, self.ring.decode(m)):
                if e:
                    v = v * pow(x, e, p) % p
            total += v
        return total % p

    def substitute(self, images: Sequence[MultiPoly | int], ring: PolyRing | None = None) -> MultiPoly:
        """Ring map sending x_i to images[i] (all in ``ring``)."""
        ring = ring or self.ring
        images = [im if isinstance(im, MultiPoly) else ring.const(im) for im in images]
        out = ring.zero()
        cache: dict = {}
        for m, c in self.terms.items():
            term = ring.const(c)
            for i, e in enumerate(self.ring.decode(m)):
                if e:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = images[i] ** e
                    term = term * cache[key]
            out = out + term
        return out

    def diff(self, i: int) -> MultiPoly:
        p = self.ring.p
        t = {}
        vm = self.ring._var_mono[i]
        for m, c in self.terms.items():
            e = self.ring.decode(m)[i]
            if e and e % p:
                t[m - vm] = c * e % p
        return MultiPoly(self.ring, t)
