"""Pfaffian instances: a 6-dimensional space L of skew forms on V = F_p^6, the cubic Y and the K3 surface X.

Y ⊂ P(L*) is the Pfaffian cubic pf(Σ y_i φ_i) = 0.  X ⊂ Gr(2, V) ⊂ P^14 is cut out
by the 15 Plücker quadrics and the 6 linear forms ω ↦ φ_i(ω).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property

import jsonschema

from .exactmath import (DEFAULT_PRIME, DIM_V, PAIRS, Matrix, PluckerVector, PrimeField, SkewForm,
                        is_prime, pfaffian_expand, plane_basis, plucker_relations, plucker_residuals,
                        rank_of)
from .polyalg.groebner import Budget
from .polyalg.ideal import GradedIdeal
from .polyalg.points import eliminant, normalize_point
from .polyalg.ring import MultiPoly, PolyRing
from .polyalg.univariate import univariate_roots
from .rng import ALGORITHM, stream

Y_NAMES = tuple(f"y{i}" for i in range(DIM_V))
PLUCKER_NAMES = tuple(f"p{i}{j}" for i, j in PAIRS)

FORMAT = "pfk3-instance"
FORMAT_VERSION = 1
NOT_CERTIFIED = ("X contains no line", "Y contains no plane", "Y contains no quadric surface")

# stream tags
_TAG_FORMS = 0x464F524D
_TAG_Y = 0x59
_TAG_X = 0x58
_TAG_CERT = 0x43455254


class CertificateFailure(RuntimeError):
    def __init__(self, check: str, detail: str = ""):
        super().__init__(f"{check}: {detail}" if detail else check)
        self.check = check


class GenericityExhausted(RuntimeError):
    def __init__(self, attempts: list):
        self.attempts = attempts
        why = "; ".join(f"attempt {a}: {msg}" for a, msg in attempts)
        super().__init__(f"genericity exhausted ({why})")


class InstanceFormatError(ValueError):
    pass


class SamplingExhausted(RuntimeError):
    pass


@dataclass
class GenericityReport:
    Y_smooth: bool = False
    Y_witness: dict = field(default_factory=dict)
    X_dim: int | None = None
    X_degree: int | None = None
    X_hilbert_poly: str | None = None
    X_point_smoothness: list = field(default_factory=list)  # projective Jacobian coranks
    retries: int = 0
    smoothness_scope: str = "sampled"
    not_certified: tuple = NOT_CERTIFIED
    failed: str | None = None

    @property
    def passed(self) -> bool:
        return self.failed is None

    def to_dict(self) -> dict:
        return {
            "Y_smooth": self.Y_smooth,
            "Y_witness": self.Y_witness,
            "X_dim": self.X_dim,
            "X_degree": self.X_degree,
            "X_hilbert_poly": self.X_hilbert_poly,
            "X_point_smoothness": list(self.X_point_smoothness),
            "retries": self.retries,
            "smoothness_scope": self.smoothness_scope,
            "not_certified": list(self.not_certified),
            "failed": self.failed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> GenericityReport:
        d = dict(d)
        d["not_certified"] = tuple(d.get("not_certified", NOT_CERTIFIED))
        return cls(**d)


@dataclass(frozen=True)
class XPoint:
    plucker: PluckerVector
    basis: tuple  # (p1, p2)


class PfaffianInstance:
    """A basis φ_1..φ_6 of L with the derived cubic and K3 ideal."""

    def __init__(self, forms, p: int = DEFAULT_PRIME, seed: int | None = None, attempt: int = 0,
                 certificate: GenericityReport | None = None, budget: Budget | None = None):
        self.field = PrimeField(p)
        self.p = p
        self.forms = tuple(f if isinstance(f, SkewForm) else SkewForm.from_upper(self.field, f) for f in forms)
        if len(self.forms) != DIM_V:
            raise ValueError("need six skew forms")
        self.seed = seed
        self.attempt = attempt
        self.certificate = certificate
        self.budget = budget
        self.y_ring = PolyRing(Y_NAMES, self.field)
        self.x_ring = PolyRing(PLUCKER_NAMES, self.field)

    def __repr__(self):
        return f"PfaffianInstance(seed={self.seed}, p={self.p}, attempt={self.attempt})"

    def form_at(self, y) -> SkewForm:
        """The skew form Σ y_i φ_i."""
        F = self.field
        n = DIM_V
        rows = [[sum(y[k] * f.matrix[i, j] for k, f in enumerate(self.forms)) % F.p for j in range(n)]
                for i in range(n)]
        return SkewForm(Matrix(F, rows))

    @cached_property
    def Y_cubic(self) -> MultiPoly:
        R = self.y_ring
        entries = [[R.linear_form([f.matrix[i, j] for f in self.forms]) for j in range(DIM_V)]
                   for i in range(DIM_V)]
        return pfaffian_expand(entries)

    @cached_property
    def plucker_quadrics(self) -> list[MultiPoly]:
        R = self.x_ring
        g = R.gens
        out = []
        for rel in plucker_relations():
            q = R.zero()
            for s, a, b in rel:
                q = q + (g[a] * g[b]).scale(s)
            out.append(q)
        return out

    @cached_property
    def linear_forms(self) -> list[MultiPoly]:
        """ω ↦ φ_k(ω) = Σ_{i<j} φ_k[i][j] p_ij."""
        return [self.x_ring.linear_form(list(f.upper())) for f in self.forms]

    @cached_property
    def X_ideal(self) -> GradedIdeal:
        return GradedIdeal(self.x_ring, self.plucker_quadrics + self.linear_forms, budget=self.budget)

    def on_X(self, w) -> bool:
        F = self.field
        return (not any(plucker_residuals(w, F))
                and not any(f.evaluate(list(w)) for f in self.linear_forms))

    def on_Y(self, y) -> bool:
        return self.Y_cubic.evaluate(list(y)) == 0


# --- sampling -------------------------------------------------------------------------------

def _random_forms(F: PrimeField, rng) -> list[SkewForm]:
    return [SkewForm.from_upper(F, [F.random(rng) for _ in PAIRS]) for _ in range(DIM_V)]


def sample_instance(seed: int, p: int = DEFAULT_PRIME, max_retries: int = 8, points: int = 20,
                    budget: Budget | None = None) -> PfaffianInstance:
    """A certified instance; attempt k draws L from the sub-seed (seed, k)."""
    if not is_prime(p) or p <= 10**4:
        raise ValueError("p must be a prime larger than 10^4")
    F = PrimeField(p)
    failures = []
    for attempt in range(max_retries):
        rng = stream(seed, _TAG_FORMS, p, attempt)
        inst = PfaffianInstance(_random_forms(F, rng), p, seed, attempt, budget=budget)
        report = certify_instance(inst, points=points)
        report.retries = attempt
        if report.passed:
            inst.certificate = report
            return inst
        failures.append((attempt, report.failed))
    raise GenericityExhausted(failures)


def certify_instance(inst: PfaffianInstance, points: int = 20) -> GenericityReport:
    """Run the genericity certificates; the first failing check is named in ``failed``."""
    rep = GenericityReport()
    R = inst.y_ring
    f = inst.Y_cubic
    jac = GradedIdeal(R, [f] + [f.diff(i) for i in range(R.n)], budget=inst.budget)
    hd = jac.hilbert()
    rep.Y_witness = {"jacobian_dim": hd.dim, "jacobian_h_vector": list(hd.h)}
    if hd.dim >= 0:
        rep.failed = "Y singular"
        return rep
    sat = jac.saturate()
    rep.Y_witness["saturation"] = [str(g) for g in sat.gb]
    if not sat.is_unit():
        rep.failed = "Y singular"
        return rep
    rep.Y_smooth = True

    xh = inst.X_ideal.hilbert()
    rep.X_dim = xh.dim
    rep.X_degree = xh.degree
    rep.X_hilbert_poly = xh.poly_str()
    if xh.dim != 2 or xh.degree != 14:
        rep.failed = "X dimension/degree"
        return rep

    base = inst.seed if inst.seed is not None else 0
    for t in range(points):
        try:
            pt = point_on_X(inst, stream(base, _TAG_CERT, inst.attempt, t).next_u64())
        except SamplingExhausted:
            rep.failed = "X point sampling"
            return rep
        c = jacobian_corank(inst, pt.plucker)
        rep.X_point_smoothness.append(c)
        if c != 2:
            rep.failed = "X singular at a sampled point"
            return rep
    return rep


def jacobian_corank(inst: PfaffianInstance, w) -> int:
    """Projective tangent dimension of X at [w]: 15 - rank(Jacobian) - 1."""
    pt = list(w)
    rows = [[g.diff(i).evaluate(pt) for i in range(len(PAIRS))] for g in inst.X_ideal.gens]
    return len(PAIRS) - rank_of(inst.field, rows) - 1


def point_on_Y(inst: PfaffianInstance, seed: int, tries: int = 200) -> tuple:
    """A point of Y(F_p) with rank-4 form, by fixing five coordinates and solving the cubic."""
    F = inst.field
    rng = stream(inst.seed or 0, _TAG_Y, seed)
    T = PolyRing(["t"], F)
    t = T.gen(0)
    for _ in range(tries):
        j = rng.randrange(DIM_V)
        images = [t if i == j else T.const(F.random(rng)) for i in range(DIM_V)]
        g = inst.Y_cubic.substitute(images, T)
        coeffs = [0] * 4
        for m, c in g.terms.items():
            coeffs[T.decode(m)[0]] = c
        if not any(coeffs[1:]):
            continue
        roots = univariate_roots(coeffs, F.p).roots
        if not roots:
            continue
        r = roots[rng.randrange(len(roots))][0]
        y = [r if i == j else images[i].evaluate([0]) for i in range(DIM_V)]
        if not any(y) or inst.form_at(y).rank() != 4:
            continue
        y = normalize_point(F, y)
        assert inst.on_Y(y)
        return y
    raise SamplingExhausted("no rank-4 point of Y found")


def point_on_X(inst: PfaffianInstance, seed: int, tries: int = 50) -> XPoint:
    """A point of X(F_p): slice by two random hyperplanes (14 points) and split one off."""
    F = inst.field
    R = inst.x_ring
    rng = stream(inst.seed or 0, _TAG_X, seed)
    for _ in range(tries):
        cuts = [R.linear_form([F.random(rng) for _ in PAIRS]) for _ in range(2)]
        J = GradedIdeal(R, list(inst.X_ideal.gb) + cuts, budget=inst.budget)
        if J.hilbert().dim != 0:
            continue
        el = eliminant(J, rng)
        if el.factorization is None:
            continue
        simple = [r for r, k in el.factorization.roots if k == 1]
        if not simple:
            continue
        r = simple[rng.randrange(len(simple))]
        w = el.algebra.point_at(R.linear_form(el.projection), r)
        if w is None:
            continue
        w = normalize_point(F, w)
        w = PluckerVector(w)
        if not inst.on_X(w):
            raise ArithmeticError("sampled point is not on X")
        p1, p2 = plane_basis(w, F)
        if any(phi(p1, p2) for phi in inst.forms):
            raise ArithmeticError("forms do not vanish on the sampled plane")
        return XPoint(w, (p1, p2))
    raise SamplingExhausted("no F_p-point of X found")


# --- instance files ---------------------------------------------------------------------------

def poly_to_json(f: MultiPoly) -> dict:
    terms = f.sorted_terms()
    return {"exponents": [list(e) for e, _ in terms], "coefficients": [int(c) for _, c in terms]}


def poly_from_json(ring: PolyRing, d: dict) -> MultiPoly:
    if len(d["exponents"]) != len(d["coefficients"]):
        raise InstanceFormatError("exponent and coefficient arrays differ in length")
    return ring.from_dict({tuple(e): c for e, c in zip(d["exponents"], d["coefficients"])})


_POLY = {
    "type": "object",
    "required": ["exponents", "coefficients"],
    "properties": {
        "exponents": {"type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
        "coefficients": {"type": "array", "items": {"type": "integer"}},
    },
}

INSTANCE_SCHEMA = {
    "type": "object",
    "required": ["format", "version", "algorithm", "prime", "seed", "attempt", "forms", "y_cubic",
                 "x_ideal", "certificate"],
    "properties": {
        "format": {"const": FORMAT},
        "version": {"const": FORMAT_VERSION},
        "algorithm": {"type": "string"},
        "prime": {"type": "integer", "minimum": 5},
        "seed": {"type": ["integer", "null"]},
        "attempt": {"type": "integer", "minimum": 0},
        "forms": {"type": "array", "minItems": 6, "maxItems": 6,
                  "items": {"type": "array", "minItems": 15, "maxItems": 15, "items": {"type": "integer"}}},
        "y_cubic": {"type": "object", "required": ["variables", "poly"],
                    "properties": {"variables": {"type": "array"}, "poly": _POLY}},
        "x_ideal": {"type": "object", "required": ["variables", "generators"],
                    "properties": {"variables": {"type": "array"},
                                   "generators": {"type": "array", "minItems": 21, "maxItems": 21,
                                                  "items": _POLY}}},
        "certificate": {"type": ["object", "null"]},
    },
}


def instance_to_dict(inst: PfaffianInstance) -> dict:
    return {
        "format": FORMAT,
        "version": FORMAT_VERSION,
        "algorithm": ALGORITHM,
        "prime": inst.p,
        "seed": inst.seed,
        "attempt": inst.attempt,
        "forms": [[int(a) for a in f.upper()] for f in inst.forms],
        "y_cubic": {"variables": list(Y_NAMES), "poly": poly_to_json(inst.Y_cubic)},
        "x_ideal": {"variables": list(PLUCKER_NAMES),
                    "generators": [poly_to_json(g) for g in inst.plucker_quadrics + inst.linear_forms]},
        "certificate": inst.certificate.to_dict() if inst.certificate else None,
    }


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"


def dumps_instance(inst: PfaffianInstance) -> str:
    return canonical_json(instance_to_dict(inst))


def loads_instance(text: str) -> PfaffianInstance:
    """Parse and validate an instance file; stored generators must match the forms."""
    try:
        d = json.loads(text)
        jsonschema.validate(d, INSTANCE_SCHEMA)
    except (json.JSONDecodeError, jsonschema.ValidationError) as exc:
        raise InstanceFormatError(str(exc).splitlines()[0]) from exc
    if not is_prime(d["prime"]):
        raise InstanceFormatError("prime field is not prime")
    cert = GenericityReport.from_dict(d["certificate"]) if d["certificate"] else None
    inst = PfaffianInstance(d["forms"], d["prime"], d["seed"], d["attempt"], cert)
    if poly_from_json(inst.y_ring, d["y_cubic"]["poly"]) != inst.Y_cubic:
        raise InstanceFormatError("stored cubic does not match the forms")
    stored = [poly_from_json(inst.x_ring, g) for g in d["x_ideal"]["generators"]]
    if stored != inst.plucker_quadrics + inst.linear_forms:
        raise InstanceFormatError("stored X generators do not match the forms")
    return inst
