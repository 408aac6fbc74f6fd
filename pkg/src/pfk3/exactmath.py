"""Exact scalars, dense matrices, Pfaffians and Plücker coordinates on a 6-dimensional V.

Field elements are plain Python values: ``int`` residues in ``[0, p)`` for a
prime field and :class:`fractions.Fraction` for the rationals.  A field object
carries the arithmetic so matrices can stay simple tuples of values.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

DEFAULT_PRIME = 32003
DIM_V = 6


class FieldError(ValueError):
    pass


class NotSkewError(ValueError):
    pass


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    from sympy import isprime

    return bool(isprime(n))


class PrimeField:
    """The field F_p; elements are ints in [0, p)."""

    def __init__(self, p: int = DEFAULT_PRIME):
        if p < 5 or not is_prime(p):
            raise FieldError(f"characteristic must be a prime >= 5, got {p}")
        self.p = p
        self.zero = 0
        self.one = 1

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def random(self, rng) -> int:
        return rng.randrange(self.p)

    def random_nonzero(self, rng) -> int:
        return 1 + rng.randrange(self.p - 1)

    def signed(self, a: int) -> int:
        """Symmetric representative in (-p/2, p/2], handy for printing."""
        return a - self.p if a > self.p // 2 else a


class RationalField:
    """The field Q with Fraction elements."""

    zero = Fraction(0)
    one = Fraction(1)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __call__(self, x) -> Fraction:
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    def random(self, rng) -> Fraction:
        return Fraction(rng.randrange(-50, 51), rng.randrange(1, 8))

    def random_nonzero(self, rng) -> Fraction:
        while True:
            x = self.random(rng)
            if x:
                return x


QQ = RationalField()


class Matrix:
    """Immutable dense matrix over a field."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field, rows: Iterable[Iterable]):
        self.field = field
        self.rows = tuple(tuple(field(x) for x in r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, field, n):
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field, m, n):
        return cls(field, [[0] * n for _ in range(m)])

    @classmethod
    def from_columns(cls, field, cols):
        cols = [list(c) for c in cols]
        return cls(field, list(zip(*cols)))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Matrix({self.field!r}, {[list(r) for r in self.rows]})"

    @property
    def shape(self):
        return self.nrows, self.ncols

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> Matrix:
        return Matrix(self.field, zip(*self.rows)) if self.rows else self

    T = property(transpose)

    def __add__(self, other):
        F = self.field
        return Matrix(F, [[F.add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        F = self.field
        return Matrix(F, [[F.sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c):
        F = self.field
        return Matrix(F, [[F.mul(c, a) for a in r] for r in self.rows])

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            cols = list(zip(*other.rows))
            return Matrix(self.field, [[self._dot(r, c) for c in cols] for r in self.rows])
        return tuple(self._dot(r, other) for r in self.rows)

    def _dot(self, r, c):
        s = sum(a * b for a, b in zip(r, c))
        return self.field(s) if isinstance(self.field, PrimeField) else s

    def apply(self, v: Sequence):
        return self @ tuple(v)

    def rref(self):
        """Reduced row echelon form and pivot columns."""
        R, pivots = _rref(self.field, [list(r) for r in self.rows], self.ncols)
        return Matrix(self.field, R) if R else Matrix.zeros(self.field, 0, self.ncols), pivots

    def rank(self) -> int:
        return len(_rref(self.field, [list(r) for r in self.rows], self.ncols)[1])

    def kernel(self) -> list[tuple]:
        """Basis of the right null space {v : M v = 0}."""
        return nullspace(self.field, self.rows, self.ncols)

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        return determinant(self.field, self.rows)

    def inverse(self) -> Matrix:
        n = self.nrows
        F = self.field
        aug = [list(r) + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(self.rows)]
        R, piv = _rref(F, aug, 2 * n)
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise ZeroDivisionError("singular matrix")
        return Matrix(F, [r[n:] for r in R[:n]])

    def is_skew(self) -> bool:
        F = self.field
        n = self.nrows
        if n != self.ncols:
            return False
        return all(self.rows[i][i] == F.zero for i in range(n)) and all(
            F.add(self.rows[i][j], self.rows[j][i]) == F.zero for i in range(n) for j in range(i + 1, n)
        )


def _rref(F, R, ncols):
    """In-place Gauss-Jordan on a list of row lists; returns (nonzero rows, pivots)."""
    pivots = []
    r = 0
    nrows = len(R)
    prime = isinstance(F, PrimeField)
    p = F.p if prime else None
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if R[i][c] != 0), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = F.inv(R[r][c])
        if prime:
            R[r] = [x * inv % p for x in R[r]]
        else:
            R[r] = [x * inv for x in R[r]]
        row = R[r]
        for i in range(nrows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                if prime:
                    R[i] = [(a - f * b) % p for a, b in zip(R[i], row)]
                else:
                    R[i] = [a - f * b for a, b in zip(R[i], row)]
        pivots.append(c)
        r += 1
    return R[:r], pivots


def rref_rows(F, rows, ncols):
    return _rref(F, [list(r) for r in rows], ncols)


def nullspace(F, rows, ncols) -> list[tuple]:
    R, pivots = _rref(F, [list(r) for r in rows], ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [F.zero] * ncols
        v[fcol] = F.one
        for row, pc in zip(R, pivots):
            v[pc] = F.neg(row[fcol])
        basis.append(tuple(v))
    return basis


def rank_of(F, vectors) -> int:
    vectors = [list(v) for v in vectors]
    if not vectors:
        return 0
    return len(_rref(F, vectors, len(vectors[0]))[1])


def determinant(F, rows):
    """Determinant by Gaussian elimination with row swaps."""
    A = [list(r) for r in rows]
    n = len(A)
    det = F.one
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return F.zero
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = F.neg(det)
        det = F.mul(det, A[c][c])
        inv = F.inv(A[c][c])
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = F.mul(A[i][c], inv)
                A[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(A[i], A[c])]
    return det


class SkewForm:
    """An alternating bilinear form on V, stored as its skew matrix."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: Matrix):
        if not matrix.is_skew():
            raise NotSkewError("matrix is not alternating")
        self.matrix = matrix

    @classmethod
    def from_upper(cls, field, upper: Sequence, n: int = DIM_V):
        """Build from the row-major strictly-upper-triangular entries."""
        M = [[field.zero] * n for _ in range(n)]
        for (i, j), a in zip(itertools.combinations(range(n), 2), upper):
            M[i][j] = field(a)
            M[j][i] = field.neg(field(a))
        return cls(Matrix(field, M))

    @property
    def field(self):
        return self.matrix.field

    @property
    def n(self):
        return self.matrix.nrows

    def upper(self) -> tuple:
        return tuple(self.matrix[i, j] for i, j in itertools.combinations(range(self.n), 2))

    def __call__(self, v, w):
        F = self.field
        s = sum(v[i] * self.matrix.rows[i][j] * w[j] for i in range(self.n) for j in range(self.n))
        return F(s)

    def __add__(self, other):
        return SkewForm(self.matrix + other.matrix)

    def scale(self, c):
        return SkewForm(self.matrix.scale(c))

    def __eq__(self, other):
        return isinstance(other, SkewForm) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"SkewForm({self.upper()})"

    def rank(self) -> int:
        return self.matrix.rank()

    def pfaffian(self):
        return pfaffian(self)

    def radical(self):
        return radical(self)


def standard_symplectic(field, n: int = DIM_V) -> SkewForm:
    M = [[0] * n for _ in range(n)]
    for k in range(0, n - 1, 2):
        M[k][k + 1] = 1
        M[k + 1][k] = -1
    return SkewForm(Matrix(field, M))


def random_skew(field, rng, n: int = DIM_V) -> SkewForm:
    return SkewForm.from_upper(field, [field.random(rng) for _ in range(n * (n - 1) // 2)], n)


def _as_skew(m) -> SkewForm:
    if isinstance(m, SkewForm):
        return m
    if isinstance(m, Matrix):
        return SkewForm(m)
    raise NotSkewError(f"expected a skew form, got {type(m).__name__}")


def pfaffian(m) -> object:
    """Pfaffian by skew-symmetric congruence elimination (Parlett-Reid style).

    Uses pf(B A B^T) = det(B) pf(A) with unimodular B, so each step peels off
    a 2x2 block [[0, a], [-a, 0]] and multiplies the running product by a.
    """
    m = _as_skew(m)
    F = m.field
    n = m.n
    if n % 2:
        return F.zero
    A = [list(r) for r in m.matrix.rows]
    pf = F.one
    for k in range(0, n - 1, 2):
        kp = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
        if kp is None:
            return F.zero
        if kp != k + 1:
            A[k + 1], A[kp] = A[kp], A[k + 1]
            for r in A:
                r[k + 1], r[kp] = r[kp], r[k + 1]
            pf = F.neg(pf)
        a = A[k][k + 1]
        pf = F.mul(pf, a)
        inv_a = F.inv(a)
        for i in range(k + 2, n):
            # kill A[k][i] with row/col k+1, then A[k+1][i] with row/col k
            c = F.mul(A[k][i], inv_a)
            if c:
                _congruence_step(F, A, i, k + 1, c)
            d = F.mul(A[k + 1][i], F.neg(inv_a))
            if d:
                _congruence_step(F, A, i, k, d)
    return pf


def _congruence_step(F, A, i, j, c):
    """row_i -= c row_j ; col_i -= c col_j."""
    A[i] = [F.sub(x, F.mul(c, y)) for x, y in zip(A[i], A[j])]
    for r in A:
        r[i] = F.sub(r[i], F.mul(c, r[j]))


def pfaffian_expand(entries, n: int | None = None):
    """Pfaffian by expansion along the first row.

    Works for any entries supporting ``+``, ``-`` and ``*`` (ints, Fractions,
    polynomials).  Exponential in n; fine up to 6x6.
    """
    n = len(entries) if n is None else n

    def rec(idx):
        if not idx:
            return 1
        i = idx[0]
        total = None
        for pos in range(1, len(idx)):
            j = idx[pos]
            rest = idx[1:pos] + idx[pos + 1 :]
            term = entries[i][j] * rec(rest)
            if pos % 2 == 0:
                term = -term
            total = term if total is None else total + term
        return total

    return rec(tuple(range(n)))


def radical(m) -> list[tuple]:
    """Basis of ker(m); its dimension is 6 - rank."""
    m = _as_skew(m)
    return m.matrix.kernel()


# --- Plücker coordinates on Λ²V and Λ⁴V -------------------------------------------------

PAIRS = tuple(itertools.combinations(range(DIM_V), 2))
PAIR_INDEX = {pq: k for k, pq in enumerate(PAIRS)}
QUADS = tuple(itertools.combinations(range(DIM_V), 4))
QUAD_INDEX = {q: k for k, q in enumerate(QUADS)}


def _perm_sign(seq) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


# (quad index, a-pair index, b-pair index, sign) for e_a ∧ e_b = sign e_quad
_WEDGE4_TABLE = tuple(
    (QUAD_INDEX[q], PAIR_INDEX[a], PAIR_INDEX[tuple(x for x in q if x not in a)],
     _perm_sign(a + tuple(x for x in q if x not in a)))
    for q in QUADS
    for a in itertools.combinations(q, 2)
)


class PluckerVector(tuple):
    """15 coordinates of a 2-vector in Λ²V, indexed by pairs i<j."""

    __slots__ = ()

    def __new__(cls, coords):
        coords = tuple(coords)
        if len(coords) != len(PAIRS):
            raise ValueError("a Plücker vector has 15 coordinates")
        return super().__new__(cls, coords)

    def coord(self, i, j):
        if i < j:
            return self[PAIR_INDEX[(i, j)]]
        if i > j:
            return -self[PAIR_INDEX[(j, i)]]
        return 0

    def is_zero(self):
        return not any(self)


def wedge(v, w, field) -> PluckerVector:
    """v ∧ w: the 2x2 minors of the 2x6 matrix with rows v, w."""
    return PluckerVector(field(v[i] * w[j] - v[j] * w[i]) for i, j in PAIRS)


def wedge4(a, b, field) -> tuple:
    """The product Λ²V x Λ²V -> Λ⁴V in the basis e_i∧e_j∧e_k∧e_l (i<j<k<l)."""
    out = [0] * len(QUADS)
    for q, ia, ib, s in _WEDGE4_TABLE:
        out[q] += s * a[ia] * b[ib]
    return tuple(field(x) for x in out)


def wedge4_matrix(b, field) -> Matrix:
    """Matrix of the linear map a ↦ wedge4(a, b) (15 x 15, rows indexed by quads)."""
    M = [[0] * len(PAIRS) for _ in QUADS]
    for q, ia, ib, s in _WEDGE4_TABLE:
        M[q][ia] += s * b[ib]
    return Matrix(field, M)


def plucker_relations():
    """The 15 quadrics p_ij p_kl - p_ik p_jl + p_il p_jk, as (sign, pair, pair) triples."""
    rels = []
    for i, j, k, l in QUADS:
        rels.append((
            (1, PAIR_INDEX[(i, j)], PAIR_INDEX[(k, l)]),
            (-1, PAIR_INDEX[(i, k)], PAIR_INDEX[(j, l)]),
            (1, PAIR_INDEX[(i, l)], PAIR_INDEX[(j, k)]),
        ))
    return rels


def plucker_residuals(w, field) -> list:
    return [field(sum(s * w[a] * w[b] for s, a, b in rel)) for rel in plucker_relations()]


def plane_basis(w: Sequence, field) -> tuple[tuple, tuple]:
    """A basis (p1, p2) of the 2-plane with decomposable Plücker vector w.

    Contracting w = p∧q with dual basis vectors gives vectors in the plane; two
    rows of the skew matrix of w through a nonzero entry span it.
    """
    w = PluckerVector(w)
    k = next((k for k, c in enumerate(w) if c), None)
    if k is None:
        raise ValueError("zero Plücker vector")
    i, j = PAIRS[k]
    p1 = tuple(field(w.coord(i, t)) for t in range(DIM_V))
    p2 = tuple(field(w.coord(j, t)) for t in range(DIM_V))
    return p1, p2


def plane_meets(F, basis1, basis2) -> bool:
    """True iff span(basis1) ∩ span(basis2) ≠ 0."""
    return rank_of(F, list(basis1) + list(basis2)) < len(basis1) + len(basis2)
