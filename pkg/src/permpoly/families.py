"""Constructors for the permutation-polynomial families.

Every builder returns a :class:`ConstructionReport` carrying the expanded
polynomial over the top field, the verdict predicted by the family's gcd and
membership conditions, and (after :func:`verify_report`) the verdict of an
exhaustive check.  The theorems behind the families are "if and only if"
statements, so the two verdicts must agree whenever the builder accepted its
parameters.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Any, Callable, Optional

import numpy as np

from . import association as assoc
from .errors import (
    BadBeta,
    BadBinomialParams,
    BadDelta,
    BadExponentRange,
    BadGamma,
    BadShape,
    BadTower,
    ConditionFailed,
    IndeterminatePoint,
    MissingParameter,
    NotAssociated,
    NotMonic,
    NotSelfAssociated,
    ParamConstraintViolated,
    PermPolyError,
    RelationFailed,
    TooLarge,
)
from .field_core import Field, FieldElement, parse_field_spec
from .mu_maps import (
    H_offdiagonal_base_points,
    H_sigma_gap_rootfree,
    bijects_mu_to_line,
    permutes_mu,
    roots_in_mu,
)
from .poly_core import Polynomial, RationalMap, bullet, format_polynomial, format_polynomial_sparse, mu_reverse, parse_polynomial
from .verify import is_permutation_of_field

SCHEMA_VERSION = 1

INT_PARAMS = {"n", "k", "s", "t", "d", "j", "i", "lab_k"}
ELEMENT_PARAMS = {"beta", "gamma", "delta", "alpha", "xi", "i_elt", "a", "A", "B",
                  "A1", "A2", "B1", "B2", "C1", "C2"}
POLY_PARAMS = {"L", "M", "H", "f", "g"}

# family -> (required, optional)
FAMILY_PARAMS: dict[str, tuple[set[str], set[str]]] = {
    "zieve11": ({"n", "k", "beta", "gamma"}, set()),
    "zieve12": ({"n", "k", "beta", "delta"}, set()),
    "good-pair": ({"L", "M", "k"}, {"beta"}),
    "twisted": ({"L", "M", "k", "n", "gamma"}, {"beta"}),
    "self-assoc": ({"L", "beta", "t", "s", "k"}, set()),
    "anydeg": ({"L", "s", "k"}, set()),
    "ex2": ({"i", "a", "s", "k"}, set()),
    "grado2": ({"A1", "A2", "C1", "C2", "xi", "k"}, {"i_elt", "n", "gamma"}),
    "grado3": ({"A1", "B1", "B2", "k"}, {"i_elt", "n", "gamma"}),
    "ex1": ({"H", "k"}, {"alpha"}),
    "ext-general": ({"L", "M", "beta", "k"}, set()),
    "ext-self": ({"L", "beta", "t", "s", "k"}, set()),
    "lab-k3": ({"A", "B", "j", "lab_k", "s", "k"}, set()),
    "h-bullet": ({"H", "L", "M", "beta", "d", "k"}, set()),
    "search-h": ({"f", "g", "gamma", "L", "M", "beta", "d", "k"}, set()),
}

FAMILY_ENUM = {
    "zieve11": "Zieve11", "zieve12": "Zieve12", "good-pair": "GoodPair", "self-assoc": "SelfAssoc",
    "twisted": "Twisted", "grado2": "Grado2", "grado3": "Grado3", "anydeg": "AnyDegEven",
    "ex2": "Ex2Binomial", "ext-general": "ExtGeneral", "ext-self": "ExtSelf", "lab-k3": "LABk3",
    "h-bullet": "HBullet", "search-h": "SearchH", "ex1": "Ex1Cubic",
}
_ENUM_TO_CLI = {v.lower(): k for k, v in FAMILY_ENUM.items()}


def normalize_family(name: str) -> str:
    key = name.strip().lower().replace("_", "-")
    if key in FAMILY_PARAMS:
        return key
    if key.replace("-", "") in _ENUM_TO_CLI:
        return _ENUM_TO_CLI[key.replace("-", "")]
    raise PermPolyError(f"unknown family {name!r}")


@dataclass
class FamilySpec:
    family: str
    field: Field
    params: dict[str, Any]

    def __post_init__(self):
        self.family = normalize_family(self.family)
        required, optional = FAMILY_PARAMS[self.family]
        missing = required - set(self.params)
        if missing:
            raise MissingParameter(f"{self.family} needs {', '.join(sorted(missing))}")
        extra = set(self.params) - required - optional
        if extra:
            raise PermPolyError(f"{self.family} does not take {', '.join(sorted(extra))}")
        self.params = {k: _coerce_param(self.field, k, v) for k, v in self.params.items()}

    def __getitem__(self, key):
        return self.params[key]

    def get(self, key, default=None):
        return self.params.get(key, default)

    def to_text(self) -> str:
        lines = [f"family = {self.family}", f"field = {self.field.spec_string()}"]
        for k in sorted(self.params):
            lines.append(f"{k} = {_format_param(self.params[k])}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "FamilySpec":
        entries = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise PermPolyError(f"expected 'key = value', got {raw!r}")
            entries.append((key.strip(), value.strip()))
        if not entries or entries[0][0] != "family":
            raise PermPolyError("the family name must come first")
        family = entries[0][1]
        rest = dict(entries[1:])
        if "field" not in rest:
            raise MissingParameter("field")
        F = parse_field_spec(rest.pop("field"))
        return cls(family, F, rest)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "family_enum": FAMILY_ENUM[self.family],
            "field": self.field.spec_string(),
            "params": {k: _format_param(v) for k, v in sorted(self.params.items())},
        }


def _coerce_param(F: Field, key: str, value):
    if key in INT_PARAMS:
        return int(value)
    if key in ELEMENT_PARAMS:
        if isinstance(value, str):
            return F.parse_element(value)
        return F(value)
    if key in POLY_PARAMS:
        if isinstance(value, Polynomial):
            if value.field != F:
                raise PermPolyError(f"parameter {key} is over another field")
            return value
        if isinstance(value, str):
            return parse_polynomial(F, value)
        return Polynomial(F, value)
    raise PermPolyError(f"unknown parameter {key!r}")


def _format_param(v) -> str:
    if isinstance(v, Polynomial):
        return format_polynomial(v)
    return str(v)


@dataclass
class ConstructionReport:
    spec: FamilySpec
    poly: Polynomial
    predicted: bool
    conditions: list[tuple[str, bool]]
    verified: Optional[bool] = None
    certificate: Optional[assoc.AssociationCertificate] = None
    aux: dict[str, Polynomial] = dc_field(default_factory=dict)
    timing: dict[str, float] = dc_field(default_factory=dict)
    witness: Optional[tuple[FieldElement, FieldElement]] = None

    @property
    def consistent(self) -> Optional[bool]:
        return None if self.verified is None else self.verified == self.predicted

    def to_dict(self) -> dict:
        d = {
            "schema_version": SCHEMA_VERSION,
            "spec": self.spec.to_dict(),
            "poly": {
                "degree": self.poly.degree,
                "sparse": format_polynomial_sparse(self.poly),
            },
            "conditions": [{"name": n, "holds": h} for n, h in self.conditions],
            "predicted": self.predicted,
            "verified": self.verified,
            "consistent": self.consistent,
            "timing_s": {k: round(v, 6) for k, v in self.timing.items()},
        }
        if self.certificate is not None:
            d["certificate"] = self.certificate.to_dict()
        if self.aux:
            d["aux"] = {k: format_polynomial(v) for k, v in self.aux.items()}
        if self.witness is not None:
            d["collision_witness"] = [str(self.witness[0]), str(self.witness[1])]
        return d


def verify_report(report: ConstructionReport) -> ConstructionReport:
    t0 = time.perf_counter()
    res = is_permutation_of_field(report.poly, report.spec.field)
    report.timing["verify"] = time.perf_counter() - t0
    report.verified = res.is_permutation
    report.witness = res.collision_witness
    return report


# --------------------------------------------------------------------------
# shared pieces

def _require_q2(F: Field) -> None:
    if F.tower_degree != 2:
        raise BadTower(f"family needs GF(q^2) over GF(q); got tower degree {F.tower_degree}")


def _in_mu(x: FieldElement, n: int) -> bool:
    return x.field.pow(x.code, n) == 1


def _in_base(x: FieldElement) -> bool:
    return x.field.frob(x.code) == x.code


def _safe_permutes_mu(R: RationalMap, n: Optional[int] = None) -> bool:
    try:
        return permutes_mu(R, n)
    except IndeterminatePoint:
        return False


def _safe_bijects_line(R: RationalMap) -> bool:
    try:
        return bijects_mu_to_line(R)
    except IndeterminatePoint:
        return False


def _positive_exponent(r: int) -> None:
    if r <= 0:
        raise ParamConstraintViolated("exponent_not_positive", f"x-exponent {r} must be positive")


def x_power_times(r: int, inner: Polynomial, d: int) -> Polynomial:
    """x^r * inner(x^d)."""
    return inner.substitute_power(d).shift(r)


def _report(spec, poly, conditions, **kw) -> ConstructionReport:
    predicted = all(h for _, h in conditions)
    return ConstructionReport(spec, poly, predicted, conditions, **kw)


# --------------------------------------------------------------------------
# Zieve's two families

def zieve11_polynomial(F: Field, n: int, k: int, beta: FieldElement, gamma: FieldElement) -> Polynomial:
    q = F.q
    y = Polynomial.x(F)
    inner = (y.scale(gamma) - beta) ** n - ((y - gamma.frobenius() * beta) ** n).scale(gamma)
    return x_power_times(n + k * (q + 1), inner, q - 1)


def zieve12_polynomial(F: Field, n: int, k: int, beta: FieldElement, delta: FieldElement) -> Polynomial:
    q = F.q
    y = Polynomial.x(F)
    inner = (y.scale(delta) - beta * delta.frobenius()) ** n - ((y - beta) ** n).scale(delta)
    return x_power_times(n + k * (q + 1), inner, q - 1)


def build_zieve(spec: FamilySpec) -> ConstructionReport:
    F = spec.field
    _require_q2(F)
    q = F.q
    n, k, beta = spec["n"], spec["k"], spec["beta"]
    if n <= 0 or k < 0:
        raise ParamConstraintViolated("n_k_range", "need n > 0 and k >= 0")
    if not _in_mu(beta, q + 1):
        raise BadBeta(f"beta = {beta} is not in mu_{q + 1}")
    t0 = time.perf_counter()
    if spec.family == "zieve11":
        gamma = spec["gamma"]
        if _in_mu(gamma, q + 1):
            raise BadGamma(f"gamma = {gamma} lies in mu_{q + 1}")
        poly = zieve11_polynomial(F, n, k, beta, gamma)
        conditions = [
            ("gcd(n+2k,q-1)=1", math.gcd(n + 2 * k, q - 1) == 1),
            ("gcd(n,q+1)=1", math.gcd(n, q + 1) == 1),
        ]
    elif spec.family == "zieve12":
        delta = spec["delta"]
        if _in_base(delta):
            raise BadDelta(f"delta = {delta} lies in GF({q})")
        poly = zieve12_polynomial(F, n, k, beta, delta)
        conditions = [("gcd(n(n+2k),q-1)=1", math.gcd(n * (n + 2 * k), q - 1) == 1)]
    else:
        raise PermPolyError(f"build_zieve cannot build {spec.family}")
    return _report(spec, poly, conditions, timing={"construct": time.perf_counter() - t0})


# --------------------------------------------------------------------------
# beta-associated pairs

def good_pair_conditions(L: Polynomial, M: Polynomial, beta: Optional[FieldElement], k: int) -> tuple[list[tuple[str, bool]], Optional[FieldElement]]:
    """The three requirements of a (beta, k)-good pair; beta is looked up when None."""
    q = L.field.q
    try:
        if beta is None:
            beta = assoc.find_association(L, M)
            associated = beta is not None
        else:
            associated = assoc.is_beta_associated(L, M, beta)
    except PermPolyError:
        associated = False
    conditions = [
        ("L ~_beta M", associated),
        ("gcd(deg L+2k,q-1)=1", math.gcd(L.degree + 2 * k, q - 1) == 1),
        ("L/M permutes mu_{q+1}", _safe_permutes_mu(RationalMap(L, M), q + 1)),
    ]
    return conditions, beta


def is_good_pair(L: Polynomial, M: Polynomial, beta: Optional[FieldElement], k: int) -> bool:
    conditions, _ = good_pair_conditions(L, M, beta, k)
    return all(h for _, h in conditions)


def build_good_pair(spec: FamilySpec, L: Optional[Polynomial] = None, M: Optional[Polynomial] = None,
                    beta: Optional[FieldElement] = None, certificate=None) -> ConstructionReport:
    """GoodPair: x^(deg L + k(q+1)) M(x^(q-1)).  Twisted: x^(n deg L + k(q+1)) (L^n - gamma M^n)(x^(q-1))."""
    F = spec.field
    _require_q2(F)
    q = F.q
    L = spec["L"] if L is None else L
    M = spec["M"] if M is None else M
    beta = spec.get("beta") if beta is None else beta
    k = spec["k"]
    t0 = time.perf_counter()
    if beta is None:
        try:
            beta = assoc.find_association(L, M)
        except PermPolyError as exc:
            raise NotAssociated(str(exc)) from exc
        if beta is None:
            raise NotAssociated("no beta in mu_{q+1} associates L and M")
    else:
        try:
            ok = assoc.is_beta_associated(L, M, beta)
        except PermPolyError as exc:
            raise NotAssociated(str(exc)) from exc
        if not ok:
            raise NotAssociated(f"L and M are not {beta}-associated")
    dL = L.degree
    twisted = spec.family == "twisted" or "gamma" in spec.params
    mu_ok = _safe_permutes_mu(RationalMap(L, M), q + 1)
    if not twisted:
        _positive_exponent(dL + k * (q + 1))
        poly = x_power_times(dL + k * (q + 1), M, q - 1)
        conditions = [("gcd(deg L+2k,q-1)=1", math.gcd(dL + 2 * k, q - 1) == 1),
                      ("L/M permutes mu_{q+1}", mu_ok)]
    else:
        n, gamma = spec["n"], spec["gamma"]
        if n <= 0:
            raise ParamConstraintViolated("n_positive", "twisted construction needs n > 0")
        if _in_mu(gamma, q + 1):
            raise BadGamma(f"gamma = {gamma} lies in mu_{q + 1}")
        r = n * dL + k * (q + 1)
        _positive_exponent(r)
        poly = x_power_times(r, L ** n - (M ** n).scale(gamma), q - 1)
        conditions = [("gcd(n*deg L+2k,q-1)=1", math.gcd(n * dL + 2 * k, q - 1) == 1),
                      ("gcd(n,q+1)=1", math.gcd(n, q + 1) == 1),
                      ("L/M permutes mu_{q+1}", mu_ok)]
    if certificate is None:
        certificate = assoc.AssociationCertificate("pair", beta)
    return _report(spec, poly, conditions, certificate=certificate, aux={"L": L, "M": M},
                   timing={"construct": time.perf_counter() - t0})


# --------------------------------------------------------------------------
# self-associated polynomials

def anydeg_polynomial(F: Field, a: list[FieldElement]) -> Polynomial:
    """sum_i (a_i x^i + a_i^q x^(q-i)) for i = 0 .. len(a)-1."""
    q = F.q
    terms = []
    for i, ai in enumerate(a):
        terms.append((i, ai))
        terms.append((q - i, ai.frobenius()))
    return Polynomial.from_terms(F, terms)


def _check_anydeg_shape(L: Polynomial) -> None:
    F = L.field
    q = F.q
    if L.degree > q:
        raise BadShape(f"degree {L.degree} exceeds q = {q}")
    half = (q - 1) // 2
    for i in range(half + 1):
        if F.frob(L.coeff(i).code) != L.coeff(q - i).code:
            raise BadShape(f"coefficient of x^{q - i} is not the q-th power of that of x^{i}")
    for i in range(half + 1, q - half):
        if L.coeff(i).code != 0:
            raise BadShape(f"middle coefficient x^{i} must vanish")


def ex2_polynomial(F: Field, i: int, a: FieldElement) -> Polynomial:
    q = F.q
    return Polynomial.from_terms(F, [(i, a), (q - i, a.frobenius())])


def self_assoc_conditions(L: Polynomial, t: int, s: int, k: int, n: Optional[int] = None) -> list[tuple[str, bool]]:
    F = L.field
    q = F.q
    n = F.mu_order if n is None else n
    return [
        (f"gcd(s-t,{n})=1", math.gcd(s - t, n) == 1),
        (f"gcd(s+k*{n},q-1)=1", math.gcd(s + k * n, q - 1) == 1),
        (f"L has no roots in mu_{n}", not roots_in_mu(L, n)),
    ]


def build_self_assoc(spec: FamilySpec) -> ConstructionReport:
    """x^(s + k(q+1)) L(x^(q-1)) for a (beta, t)-self-associated L."""
    F = spec.field
    _require_q2(F)
    q = F.q
    s, k = spec["s"], spec["k"]
    t0 = time.perf_counter()
    fam = spec.family
    if fam == "self-assoc":
        L, beta, t = spec["L"], spec["beta"], spec["t"]
        if not _in_mu(beta, q + 1):
            raise BadBeta(f"beta = {beta} is not in mu_{q + 1}")
        if not assoc.is_self_associated(L, beta, t):
            raise NotSelfAssociated(f"L is not ({beta}, {t})-self-associated")
    elif fam == "anydeg":
        if q % 2:
            raise BadShape("this family needs q even")
        L = spec["L"]
        _check_anydeg_shape(L)
        beta, t = F.one, q
    elif fam == "ex2":
        i, a = spec["i"], spec["a"]
        if q % 2:
            raise BadBinomialParams("q must be even")
        if i < 0 or (q + 1) % (2 * i + 1):
            raise BadBinomialParams(f"2i+1 = {2 * i + 1} does not divide q+1 = {q + 1}")
        if a.code == 0 or F.pow(a.code, (F.size - 1) // (2 * i + 1)) == 1:
            raise BadBinomialParams("a^((q^2-1)/(2i+1)) must differ from 1")
        L = ex2_polynomial(F, i, a)
        beta, t = F.one, q
    else:
        raise PermPolyError(f"build_self_assoc cannot build {fam}")
    r = s + k * (q + 1)
    if s < 0 or k < 0:
        raise ParamConstraintViolated("s_k_range", "need s, k >= 0")
    _positive_exponent(r)
    poly = x_power_times(r, L, q - 1)
    conditions = self_assoc_conditions(L, t, s, k, q + 1)
    cert = assoc.AssociationCertificate("self", beta, t)
    return _report(spec, poly, conditions, certificate=cert, aux={"L": L},
                   timing={"construct": time.perf_counter() - t0})


def scan_sk(conditions_fn: Callable[[int, int], bool], limit: int) -> Optional[tuple[int, int]]:
    """First (s, k) in lexicographic order over [0, limit)^2 with conditions_fn(s, k)."""
    for s in range(limit):
        for k in range(limit):
            if s + k > 0 and conditions_fn(s, k):
                return s, k
    return None


def first_valid_sk(F: Field, t: int, n: Optional[int] = None) -> Optional[tuple[int, int]]:
    """Deterministic (s, k) meeting both gcd requirements of the self-associated construction."""
    q = F.q
    n = F.mu_order if n is None else n
    return scan_sk(lambda s, k: math.gcd(s - t, n) == 1 and math.gcd(s + k * n, q - 1) == 1, q * q)


# --------------------------------------------------------------------------
# explicit pairs

def trace_to_prime(x: FieldElement) -> FieldElement:
    """Tr_{GF(q)|GF(p)}(x) = x + x^p + ... + x^(q/p)."""
    F = x.field
    acc = 0
    y = x.code
    for _ in range(F.base_power):
        acc = F.add(acc, y)
        y = F.pow(y, F.p)
    return FieldElement(F, acc)


def _grado2_i(F: Field, xi: FieldElement) -> FieldElement:
    # i^2 = i + xi
    for c in range(F.size):
        if F.add(F.mul(c, c), F.add(c, xi.code)) == 0:
            return FieldElement(F, c)
    raise ParamConstraintViolated("no_i", "x^2 + x + xi has no root")


def grado2_pair(F: Field, A1, A2, C1, C2, xi, i_elt=None) -> tuple[Polynomial, Polynomial]:
    """The explicit degree-two pair, with the validations of its side conditions."""
    _require_q2(F)
    q = F.q
    if q % 2:
        raise ParamConstraintViolated("q_not_even", f"q = {q}")
    for name, v in (("A1", A1), ("A2", A2), ("C1", C1), ("C2", C2), ("xi", xi)):
        if not _in_base(v):
            raise ParamConstraintViolated(f"{name}_not_in_base", str(v))
    if trace_to_prime(xi).code != 1:
        raise ParamConstraintViolated("trace_not_one", f"Tr(xi) = {trace_to_prime(xi)}")
    i = _grado2_i(F, xi) if i_elt is None else i_elt
    if i * i != i + xi:
        raise ParamConstraintViolated("i_relation", "need i^2 = i + xi")
    a = C1 + (i + 1) * C2
    c = A1 + (i + 1) * A2
    if (A1 + i * A2) * (C1 + i * C2) == 0:
        raise ParamConstraintViolated("product_zero", "(A1 + i A2)(C1 + i C2) must be nonzero")
    alpha2 = A1 * A1 + A1 * A2 + C1 * C1 + C1 * C2 + xi * (A2 * A2 + C2 * C2)
    if alpha2 == 0:
        raise ParamConstraintViolated("alpha2_zero", "A1^2 + A1A2 + C1^2 + C1C2 + xi(A2^2 + C2^2) must be nonzero")
    L = Polynomial(F, [c, 0, a])
    M = Polynomial(F, [C1 + i * C2, 0, A1 + i * A2])
    return L, M


def _grado3_i(F: Field) -> FieldElement:
    for c in range(1, F.size):
        if F.frob(c) == F.neg(c):
            return FieldElement(F, c)
    raise ParamConstraintViolated("no_i", "no nonzero i with i^q = -i")


def grado3_pair(F: Field, A1, B1, B2, i_elt=None) -> tuple[Polynomial, Polynomial]:
    _require_q2(F)
    q = F.q
    if q % 2 == 0:
        raise ParamConstraintViolated("q_not_odd", f"q = {q}")
    if (q + 1) % 3 == 0:
        raise ParamConstraintViolated("three_divides_qplus1", f"q + 1 = {q + 1}")
    for name, v in (("A1", A1), ("B1", B1), ("B2", B2)):
        if not _in_base(v):
            raise ParamConstraintViolated(f"{name}_not_in_base", str(v))
    i = _grado3_i(F) if i_elt is None else i_elt
    if i.code == 0 or i.frobenius() != -i:
        raise ParamConstraintViolated("i_relation", "need i != 0 and i^q = -i")
    if A1 * (3 * A1 - 2 * B1) == 0:
        raise ParamConstraintViolated("A1_constraint", "A1 (3 A1 - 2 B1) must be nonzero")
    return grado3_raw(F, A1, B1, B2, i)


def grado3_raw(F: Field, A1, B1, B2, i) -> tuple[Polynomial, Polynomial]:
    """The displayed cubic pair without any validation (used to probe the constraint's necessity)."""
    L = Polynomial(F, [A1, B1 - i * B2, -3 * A1 + B1 - i * B2, -A1])
    M = Polynomial(F, [-A1, -3 * A1 + B1 + i * B2, B1 + i * B2, A1])
    return L, M


def ex1_alphas(F: Field) -> list[FieldElement]:
    """Roots of x^2 - 3x + 1 lying in mu_{q+1}, ascending."""
    q = F.q
    out = []
    for c in range(F.size):
        a = FieldElement(F, c)
        if a * a - 3 * a + 1 == 0 and _in_mu(a, q + 1):
            out.append(a)
    return out


def ex1_pair(F: Field, alpha: Optional[FieldElement] = None) -> tuple[Polynomial, Polynomial, FieldElement]:
    _require_q2(F)
    p, e = F.p, F.base_power
    if e % 2 == 0:
        raise ParamConstraintViolated("odd_power", f"q = {p}^{e} needs an odd exponent")
    if p % 40 not in (7, 17, 23, 33):
        raise ParamConstraintViolated("characteristic_mod_40", f"p = {p} is {p % 40} mod 40")
    if alpha is None:
        roots = ex1_alphas(F)
        if not roots:
            raise ParamConstraintViolated("no_alpha", "x^2 - 3x + 1 has no root in mu_{q+1}")
        alpha = roots[0]
    if alpha * alpha - 3 * alpha + 1 != 0:
        raise ParamConstraintViolated("alpha_equation", "alpha^2 - 3 alpha + 1 != 0")
    if not _in_mu(alpha, F.q + 1):
        raise ParamConstraintViolated("alpha_not_in_mu", str(alpha))
    x = Polynomial.x(F)
    L = (x - alpha) * (x * x * alpha - 1)
    M = (x * alpha - 1) * (x * x - alpha)
    return L, M, alpha


def build_explicit_pair(spec: FamilySpec) -> tuple[Polynomial, Polynomial, assoc.AssociationCertificate]:
    F = spec.field
    fam = spec.family
    if fam == "grado2":
        L, M = grado2_pair(F, spec["A1"], spec["A2"], spec["C1"], spec["C2"], spec["xi"], spec.get("i_elt"))
        beta = assoc.find_association(L, M)
        if beta is None:
            raise NotAssociated("degree-two pair is not associated")
        return L, M, assoc.AssociationCertificate("pair", beta)
    if fam == "grado3":
        L, M = grado3_pair(F, spec["A1"], spec["B1"], spec["B2"], spec.get("i_elt"))
        if not assoc.is_beta_associated(L, M, F.one):
            raise NotAssociated("cubic pair is not 1-associated")
        return L, M, assoc.AssociationCertificate("pair", F.one)
    if fam == "ex1":
        L, M, alpha = ex1_pair(F, spec.get("alpha"))
        # the relation L^q = beta x^-3 L on mu_{q+1} forces beta = alpha^-2
        beta = (alpha * alpha).inverse()
        if not (assoc.is_self_associated(L, beta, 3) and assoc.is_self_associated(M, beta, 3)):
            raise NotSelfAssociated("cubic pair is not (alpha^-2, 3)-self-associated")
        return L, M, assoc.AssociationCertificate("self", beta, 3)
    raise PermPolyError(f"{fam} is not an explicit-pair family")


def build_explicit_family(spec: FamilySpec) -> ConstructionReport:
    """Feed an explicit pair into the construction it certifies."""
    L, M, cert = build_explicit_pair(spec)
    if spec.family == "ex1":
        return build_H_family(spec, L=L, M=M, beta=cert.beta, d=3, certificate=cert)
    return build_good_pair(spec, L=L, M=M, beta=cert.beta, certificate=cert)


# --------------------------------------------------------------------------
# bijections mu_{q+1} -> GF(q) U {inf}

def h_bullet_polynomial(H: Polynomial, L: Polynomial, M: Polynomial, d: int, k: int) -> Polynomial:
    q = H.field.q
    return x_power_times(d * H.degree + k * (q + 1), bullet(H, L, M), q - 1)


def search_h(f: Polynomial, g: Polynomial, gamma: FieldElement) -> Polynomial:
    """H = g f - gamma f after validating f, g and gamma."""
    F = f.field
    base = np.array(F.base_codes(), dtype=np.int64)
    if not (f.is_monic() and g.is_monic()):
        raise NotMonic("f and g must be monic")
    for name, P in (("f", f), ("g", g)):
        if any(F.frob(c) != c for c in P.codes):
            raise ParamConstraintViolated(f"{name}_not_over_base", f"{name} must have coefficients in GF(q)")
    if np.any(f.eval_codes(base) == 0):
        raise ParamConstraintViolated("f_has_root", "f has a root in GF(q)")
    if len(np.unique(g.eval_codes(base))) != len(base):
        raise ParamConstraintViolated("g_not_permutation", "g does not permute GF(q)")
    if gamma.code == 0 or gamma.frobenius() != -gamma:
        raise BadGamma("need gamma != 0 with gamma^q = -gamma")
    return g * f - f.scale(gamma)


def build_H_family(spec: FamilySpec, L: Optional[Polynomial] = None, M: Optional[Polynomial] = None,
                   beta: Optional[FieldElement] = None, d: Optional[int] = None,
                   certificate=None) -> ConstructionReport:
    """x^(dn + k(q+1)) (H . L/M)(x^(q-1)) with the three hypotheses checked up front."""
    F = spec.field
    _require_q2(F)
    q = F.q
    k = spec["k"]
    L = spec["L"] if L is None else L
    M = spec["M"] if M is None else M
    beta = spec["beta"] if beta is None else beta
    d = spec["d"] if d is None else d
    t0 = time.perf_counter()
    if spec.family == "search-h":
        H = search_h(spec["f"], spec["g"], spec["gamma"])
    else:
        H = spec["H"]
    if not H.is_monic():
        raise NotMonic("H must be monic")
    if not _in_mu(beta, q + 1):
        raise BadBeta(f"beta = {beta} is not in mu_{q + 1}")
    if not (assoc.is_self_associated(L, beta, d) and assoc.is_self_associated(M, beta, d)):
        raise NotSelfAssociated(f"L and M must both be ({beta}, {d})-self-associated")
    if not _safe_bijects_line(RationalMap(L, M)):
        raise ConditionFailed("i", "L/M is not a bijection from mu_{q+1} onto GF(q) U {inf}")
    pts = H_offdiagonal_base_points(H)
    if pts:
        a, b = pts[0]
        raise ConditionFailed("ii", f"point ({a}; {b}) off the diagonal")
    if not H_sigma_gap_rootfree(H):
        raise ConditionFailed("iii", "H^sigma - H has a root in GF(q)")
    n = H.degree
    r = d * n + k * (q + 1)
    _positive_exponent(r)
    poly = x_power_times(r, bullet(H, L, M), q - 1)
    conditions = [
        ("(i) L/M bijects mu_{q+1} onto GF(q) U {inf}", True),
        ("(ii) no off-diagonal GF(q)-points", True),
        ("(iii) H^sigma - H rootfree on GF(q)", True),
        ("gcd(dn+k(q+1),q-1)=1", math.gcd(r, q - 1) == 1),
    ]
    if certificate is None:
        certificate = assoc.AssociationCertificate("self", beta, d)
    return _report(spec, poly, conditions, certificate=certificate, aux={"H": H, "L": L, "M": M},
                   timing={"construct": time.perf_counter() - t0})


# --------------------------------------------------------------------------
# extension fields GF(q^kappa)

def lab_polynomial(F: Field, A: FieldElement, B: FieldElement, j: int, lab_k: int) -> Polynomial:
    """A x^(3kq+3j) + B x^((k+j)q+2j-k) + A^q x^(3jq+3j-3k) + A^(q^2), k = lab_k."""
    q = F.q
    Aq = A.frobenius()
    Aq2 = Aq.frobenius()
    return Polynomial.from_terms(F, [
        (3 * lab_k * q + 3 * j, A),
        ((lab_k + j) * q + 2 * j - lab_k, B),
        (3 * j * q + 3 * j - 3 * lab_k, Aq),
        (0, Aq2),
    ])


def lab_quadratic_roots(F: Field) -> list[FieldElement]:
    """B in GF(q) with B^2 - 3B + 9 = 0."""
    return [b for b in F.base_elements() if b * b - 3 * b + 9 == 0]


def build_extension_family(spec: FamilySpec) -> ConstructionReport:
    F = spec.field
    kappa = F.tower_degree
    if kappa < 2:
        raise BadTower("need a proper extension GF(q^kappa), kappa >= 2")
    q = F.q
    n = F.mu_order
    k = spec["k"]
    t0 = time.perf_counter()
    fam = spec.family
    if fam == "ext-general":
        L, M, beta = spec["L"], spec["M"], spec["beta"]
        if not _in_mu(beta, n):
            raise BadBeta(f"beta = {beta} is not in mu_{n}")
        if not assoc.mu_relation(M, L, beta, L.degree, n):
            raise RelationFailed(f"M^q != beta x^(-deg L) L on mu_{n}")
        r = L.degree + k * n
        _positive_exponent(r)
        poly = x_power_times(r, M, q - 1)
        conditions = [(f"gcd(deg L+k*{n},q-1)=1", math.gcd(r, q - 1) == 1),
                      (f"L/M permutes mu_{n}", _safe_permutes_mu(RationalMap(L, M), n))]
        return _report(spec, poly, conditions, certificate=None, aux={"L": L, "M": M},
                       timing={"construct": time.perf_counter() - t0})
    if fam == "ext-self":
        L, beta, t = spec["L"], spec["beta"], spec["t"]
    elif fam == "lab-k3":
        if kappa != 3:
            raise BadTower("L_{A,B} lives over GF(q^3)")
        j, lab_k, A, B = spec["j"], spec["lab_k"], spec["A"], spec["B"]
        if not (0 < j <= lab_k and 3 * lab_k <= q):
            raise BadExponentRange(f"need 0 < j <= k <= q/3, got j={j}, k={lab_k}, q={q}")
        if not _in_base(B):
            raise ParamConstraintViolated("B_not_in_base", str(B))
        L = lab_polynomial(F, A, B, j, lab_k)
        beta, t = F.one, 3 * lab_k * q + 3 * j
    else:
        raise PermPolyError(f"build_extension_family cannot build {fam}")
    if not _in_mu(beta, n):
        raise BadBeta(f"beta = {beta} is not in mu_{n}")
    if not assoc.mu_relation(L, L, beta, t, n):
        raise RelationFailed(f"L^q != beta x^(-{t}) L on mu_{n}")
    s = spec["s"]
    r = s + k * n
    _positive_exponent(r)
    poly = x_power_times(r, L, q - 1)
    conditions = self_assoc_conditions(L, t, s, k, n)
    return _report(spec, poly, conditions, certificate=assoc.AssociationCertificate("self", beta, t),
                   aux={"L": L}, timing={"construct": time.perf_counter() - t0})


# --------------------------------------------------------------------------
# dispatch

BUILDERS: dict[str, Callable[[FamilySpec], ConstructionReport]] = {
    "zieve11": build_zieve,
    "zieve12": build_zieve,
    "good-pair": build_good_pair,
    "twisted": build_good_pair,
    "self-assoc": build_self_assoc,
    "anydeg": build_self_assoc,
    "ex2": build_self_assoc,
    "grado2": build_explicit_family,
    "grado3": build_explicit_family,
    "ex1": build_explicit_family,
    "h-bullet": build_H_family,
    "search-h": build_H_family,
    "ext-general": build_extension_family,
    "ext-self": build_extension_family,
    "lab-k3": build_extension_family,
}


def construct(spec: FamilySpec, verify: bool = False) -> ConstructionReport:
    report = BUILDERS[spec.family](spec)
    if verify:
        verify_report(report)
    return report


# --------------------------------------------------------------------------
# good-pair enumeration

ENUMERATION_LIMIT = 5_000_000


def _good_pairs_for_leads(args) -> list[tuple[tuple[int, ...], tuple[int, ...], int]]:
    field_spec, degree, leads = args
    F = parse_field_spec(field_spec)
    q = F.q
    mu = F.mu_codes(q + 1)
    out = []
    for lead in leads:
        for low in np.ndindex(*([F.size] * degree)):
            L = Polynomial.from_codes(F, tuple(int(c) for c in low) + (lead,))
            R = mu_reverse(L, degree)
            if R.degree != degree:
                continue
            # L/M = beta * L/R, and beta is in mu_{q+1}, so one test covers every beta
            if not _safe_permutes_mu(RationalMap(L, R), q + 1):
                continue
            for b in mu:
                M = R.scale(FieldElement(F, F.inv(b)))
                if M != L:
                    out.append((L.codes, M.codes, b))
    return out


def enumerate_good_pairs(F: Field, degree: int, k: int, jobs: int = 1) -> list[tuple[Polynomial, Polynomial, FieldElement]]:
    """All (beta, k)-good pairs (L, M) of the given degree, M = beta^-1 * reverse(L).

    Sorted by (L codes, M codes, beta code).
    """
    _require_q2(F)
    q = F.q
    if degree < 1:
        raise PermPolyError("degree must be positive")
    work = (F.size - 1) * F.size ** degree
    if work > ENUMERATION_LIMIT:
        raise TooLarge(f"{work} candidate polynomials exceed the enumeration limit")
    if math.gcd(degree + 2 * k, q - 1) != 1:
        return []
    leads = list(range(1, F.size))
    jobs = max(1, min(jobs, len(leads)))
    chunks = [(F.spec_string(), degree, leads[i::jobs]) for i in range(jobs)]
    if jobs == 1:
        raw = _good_pairs_for_leads(chunks[0])
    else:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            raw = [item for part in ex.map(_good_pairs_for_leads, chunks) for item in part]
    raw.sort()
    return [(Polynomial.from_codes(F, l), Polynomial.from_codes(F, m), FieldElement(F, b)) for l, m, b in raw]


def grado2_closed_form(F: Field, k: int) -> list[tuple[Polynomial, Polynomial, FieldElement]]:
    """The degree-two parametrization (with the proof's beta on M), sorted like enumerate_good_pairs."""
    _require_q2(F)
    q = F.q
    if q % 2 or math.gcd(k + 1, q - 1) != 1:
        return []
    xi = next(x for x in F.base_elements() if trace_to_prime(x).code == 1)
    base = F.base_elements()
    out = set()
    mu = F.mu_codes(q + 1)
    for A1 in base:
        for A2 in base:
            for C1 in base:
                for C2 in base:
                    try:
                        L, M = grado2_pair(F, A1, A2, C1, C2, xi)
                    except ParamConstraintViolated:
                        continue
                    for b in mu:
                        Mb = M.scale(FieldElement(F, F.inv(b)))
                        out.add((L.codes, Mb.codes, b))
    return [(Polynomial.from_codes(F, l), Polynomial.from_codes(F, m), FieldElement(F, b)) for l, m, b in sorted(out)]
