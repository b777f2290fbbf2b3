"""Dense univariate polynomials and rational maps over a :class:`Field`.

Coefficients are kept as a tuple of field codes, lowest degree first, without
trailing zeros; the zero polynomial is the empty tuple and has degree
``ZERO_DEGREE`` (-1).

Functions on the cyclic group mu_N are handled exactly by reduction modulo
x^N - 1: two reduced polynomials agree on all N points of mu_N iff they are
equal, so identities "for every x in mu_N" become coefficient comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import IndeterminatePoint, MixedFields, ModByZero, PermPolyError
from .field_core import Field, FieldElement

ZERO_DEGREE = -1


class _Infinity:
    """The point at infinity of the projective line; equal only to itself."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


def _strip(codes: Iterable[int]) -> tuple[int, ...]:
    c = list(codes)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class Polynomial:
    __slots__ = ("field", "codes")

    def __init__(self, field: Field, coeffs: Iterable = ()):
        """Build from coefficients low to high.

        Entries may be FieldElements of ``field`` or ints, which are read as
        elements of the prime field (not as raw codes; see ``from_codes``).
        """
        self.field = field
        self.codes = _strip(field(c).code for c in coeffs)

    @classmethod
    def from_codes(cls, field: Field, codes: Iterable[int]) -> "Polynomial":
        obj = cls.__new__(cls)
        obj.field = field
        obj.codes = _strip(codes)
        return obj

    @classmethod
    def x(cls, field: Field) -> "Polynomial":
        return cls.from_codes(field, (0, 1))

    @classmethod
    def monomial(cls, field: Field, e: int, coeff=1) -> "Polynomial":
        c = field(coeff).code
        return cls.from_codes(field, [0] * e + [c])

    @classmethod
    def constant(cls, field: Field, coeff) -> "Polynomial":
        return cls.from_codes(field, (field(coeff).code,))

    @classmethod
    def from_terms(cls, field: Field, terms: Iterable[tuple[int, object]]) -> "Polynomial":
        """Sparse constructor from (exponent, coefficient) pairs; repeated exponents add."""
        acc: dict[int, int] = {}
        for e, c in terms:
            code = field(c).code
            acc[e] = field.add(acc.get(e, 0), code)
        if not acc:
            return cls.from_codes(field, ())
        out = [0] * (max(acc) + 1)
        for e, code in acc.items():
            out[e] = code
        return cls.from_codes(field, out)

    # -- basic properties -------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.codes) - 1

    def is_zero(self) -> bool:
        return not self.codes

    @property
    def coeffs(self) -> list[FieldElement]:
        return [FieldElement(self.field, c) for c in self.codes]

    def coeff(self, i: int) -> FieldElement:
        return FieldElement(self.field, self.codes[i] if 0 <= i < len(self.codes) else 0)

    @property
    def leading(self) -> FieldElement:
        return self.coeff(self.degree)

    def is_monic(self) -> bool:
        return bool(self.codes) and self.codes[-1] == 1

    def terms(self) -> list[tuple[int, int]]:
        """Nonzero (exponent, code) pairs, ascending exponent."""
        return [(e, c) for e, c in enumerate(self.codes) if c]

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self.codes == other.codes

    def __hash__(self):
        return hash((self.field._key, self.codes))

    def __repr__(self):
        if not self.codes:
            return "0"
        parts = []
        for e, c in reversed(self.terms()):
            coef = self.field.format_code(c)
            mono = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
            if e and c == 1:
                parts.append(mono)
            else:
                parts.append(f"({coef}){mono}")
        return " + ".join(parts)

    def _check(self, other: "Polynomial") -> None:
        if other.field is not self.field and other.field != self.field:
            raise MixedFields("polynomials over different fields")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (FieldElement, int)):
            return Polynomial.constant(self.field, other)
        return NotImplemented

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        F = self.field
        a, b = self.codes, other.codes
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Polynomial.from_codes(F, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Polynomial.from_codes(F, [F.neg(c) for c in self.codes])

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (FieldElement, int)):
            return self.scale(self.field(other))
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        a, b = self.codes, other.codes
        if not a or not b:
            return Polynomial.from_codes(self.field, ())
        F = self.field
        exp, log, add = F._exp, F._log, F.add
        out = [0] * (len(a) + len(b) - 1)
        b_terms = [(j, log[c]) for j, c in enumerate(b) if c]
        for i, ca in enumerate(a):
            if not ca:
                continue
            la = log[ca]
            for j, lb in b_terms:
                out[i + j] = add(out[i + j], exp[la + lb])
        return Polynomial.from_codes(F, out)

    __rmul__ = __mul__

    def scale(self, c: FieldElement) -> "Polynomial":
        F = self.field
        k = F(c).code
        return Polynomial.from_codes(F, [F.mul(k, x) for x in self.codes])

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise PermPolyError("negative polynomial power")
        result = Polynomial.constant(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, k: int) -> "Polynomial":
        """Multiply by x^k."""
        if not self.codes:
            return self
        return Polynomial.from_codes(self.field, (0,) * k + self.codes)

    def substitute_power(self, d: int) -> "Polynomial":
        """P(x^d)."""
        if not self.codes or d == 1:
            return self
        out = [0] * ((len(self.codes) - 1) * d + 1)
        for e, c in self.terms():
            out[e * d] = c
        return Polynomial.from_codes(self.field, out)

    def compose(self, other: "Polynomial") -> "Polynomial":
        """P(Q(x))."""
        self._check(other)
        result = Polynomial.from_codes(self.field, ())
        for c in reversed(self.codes):
            result = result * other + Polynomial.from_codes(self.field, (c,))
        return result

    def __divmod__(self, other: "Polynomial"):
        self._check(other)
        if not other.codes:
            raise ModByZero("polynomial division by zero")
        F = self.field
        rem = list(self.codes)
        db = other.degree
        inv_lead = F.inv(other.codes[-1])
        quot = [0] * max(len(rem) - db, 0)
        while len(rem) - 1 >= db and rem:
            c = F.mul(rem[-1], inv_lead)
            shift = len(rem) - 1 - db
            quot[shift] = c
            for i, bc in enumerate(other.codes):
                rem[shift + i] = F.sub(rem[shift + i], F.mul(c, bc))
            while rem and rem[-1] == 0:
                rem.pop()
        return Polynomial.from_codes(F, quot), Polynomial.from_codes(F, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    # -- evaluation -------------------------------------------------------

    def __call__(self, x: FieldElement) -> FieldElement:
        F = self.field
        x = F(x)
        acc = 0
        for c in reversed(self.codes):
            acc = F.add(F.mul(acc, x.code), c)
        return FieldElement(F, acc)

    def eval_codes(self, xs) -> np.ndarray:
        """Vectorized evaluation at an array of codes (sum of powers via log tables)."""
        F = self.field
        xs = np.asarray(xs, dtype=np.int64)
        out = np.zeros(xs.shape, dtype=np.int64)
        if not self.codes:
            return out
        n = F.size - 1
        logx = F._log_arr[xs]
        zero = xs == 0
        for e, c in self.terms():
            if e == 0:
                term = np.full(xs.shape, c, dtype=np.int64)
            else:
                term = F._exp_arr[(logx * e + F._log[c]) % n]
                term = np.where(zero, 0, term)
            out = F.vadd(out, term)
        return out

    # -- Frobenius-related ------------------------------------------------

    def sigma(self) -> "Polynomial":
        """Apply a -> a^q to every coefficient."""
        F = self.field
        return Polynomial.from_codes(F, [F.frob(c) for c in self.codes])

    def reduce_cyclic(self, n: int) -> "Polynomial":
        """Remainder modulo x^n - 1."""
        if len(self.codes) <= n:
            return self
        F = self.field
        out = [0] * n
        for e, c in self.terms():
            out[e % n] = F.add(out[e % n], c)
        return Polynomial.from_codes(F, out)


# --------------------------------------------------------------------------

def poly_eval(P: Polynomial, x: FieldElement) -> FieldElement:
    return P(x)


def poly_ring_ops(P: Polynomial, Q, op: str) -> Polynomial:
    """add, sub, mul, pow (Q an int), compose, mod."""
    if op == "pow":
        return P ** int(Q)
    if op == "add":
        return P + Q
    if op == "sub":
        return P - Q
    if op == "mul":
        return P * Q
    if op == "compose":
        return P.compose(Q)
    if op == "mod":
        return P % Q
    raise PermPolyError(f"unknown polynomial operation {op}")


def sigma_conjugate(H: Polynomial) -> Polynomial:
    return H.sigma()


def frobenius_on_mu(L: Polynomial, n: int) -> Polynomial:
    """Reduced polynomial R with R(x) = L(x)^q for all x in mu_n."""
    F = L.field
    q = F.q
    out = [0] * n
    for e, c in L.terms():
        k = (q * e) % n
        out[k] = F.add(out[k], F.frob(c))
    return Polynomial.from_codes(F, out)


def mu_reverse(L: Polynomial, t: int) -> Polynomial:
    """The polynomial of degree <= q equal to x^t * L(x)^q on mu_{q+1}.

    On mu_{q+1} we have x^q = 1/x, so this is x^t * L^sigma(1/x) reduced
    modulo x^{q+1} - 1.
    """
    F = L.field
    n = F.q + 1
    out = [0] * n
    for e, c in L.terms():
        k = (t - e) % n
        out[k] = F.add(out[k], F.frob(c))
    return Polynomial.from_codes(F, out)


def bullet(N: Polynomial, L: Polynomial, M: Polynomial) -> Polynomial:
    """M^deg(N) * N(L/M) = sum n_i L^i M^(deg N - i)."""
    L._check(N)
    L._check(M)
    if N.is_zero():
        raise PermPolyError("bullet is undefined for N = 0")
    n = N.degree
    F = N.field
    lpow = [Polynomial.constant(F, 1)]
    for _ in range(n):
        lpow.append(lpow[-1] * L)
    result = Polynomial.from_codes(F, ())
    mpow = Polynomial.constant(F, 1)
    # walk i downward so M's power grows one step at a time
    for i in range(n, -1, -1):
        c = N.codes[i]
        if c:
            result = result + (lpow[i] * mpow).scale(FieldElement(F, c))
        mpow = mpow * M
    return result


@dataclass(frozen=True)
class RationalMap:
    num: Polynomial
    den: Polynomial

    def __post_init__(self):
        self.num._check(self.den)
        if self.den.is_zero():
            raise PermPolyError("rational map with zero denominator")

    @property
    def field(self) -> Field:
        return self.num.field

    def __call__(self, x: FieldElement):
        return rational_eval(self, x)

    def eval_codes(self, xs) -> np.ndarray:
        """Projective values at an array of codes; infinity is encoded as ``field.size``."""
        F = self.field
        xs = np.asarray(xs, dtype=np.int64)
        lv = self.num.eval_codes(xs)
        mv = self.den.eval_codes(xs)
        both = (lv == 0) & (mv == 0)
        if np.any(both):
            bad = int(xs[np.argmax(both)])
            raise IndeterminatePoint(FieldElement(F, bad))
        pole = mv == 0
        safe = np.where(pole, 1, mv)
        vals = F.vdiv(lv, safe)
        return np.where(pole, F.size, vals)

    def __repr__(self):
        return f"({self.num!r}) / ({self.den!r})"


def rational_eval(R: RationalMap, x: FieldElement):
    lv, mv = R.num(x), R.den(x)
    if mv.code == 0:
        if lv.code == 0:
            raise IndeterminatePoint(x)
        return INFINITY
    return lv / mv


# --------------------------------------------------------------------------
# text forms

def format_polynomial(P: Polynomial) -> str:
    """Dense form: coefficient element strings joined by commas, low to high."""
    if P.is_zero():
        return "0" if P.field.m == 1 else ",".join("0" * P.field.m)
    return ",".join(P.field.format_code(c) for c in P.codes)


def format_polynomial_sparse(P: Polynomial) -> str:
    return ";".join(f"{e}:{P.field.format_code(c)}" for e, c in P.terms())


def parse_polynomial(field: Field, text: str) -> Polynomial:
    """Parse dense ``c0,c1,...`` (flat coordinates grouped by m, or one element per
    ``;``-separated chunk) or sparse ``e:coeff;e:coeff``."""
    text = text.strip()
    if not text:
        return Polynomial.from_codes(field, ())
    if ":" in text:
        terms = []
        for chunk in text.split(";"):
            if not chunk.strip():
                continue
            e, _, c = chunk.partition(":")
            terms.append((int(e), field.parse_element(c)))
        return Polynomial.from_terms(field, terms)
    if ";" in text:
        return Polynomial(field, [field.parse_element(c) for c in text.split(";") if c.strip()])
    parts = [s.strip() for s in text.split(",") if s.strip()]
    m = field.m
    if len(parts) % m:
        raise PermPolyError(f"{len(parts)} coordinates is not a multiple of the extension degree {m}")
    digits = [int(s) for s in parts]
    return Polynomial(field, [digits[i:i + m] for i in range(0, len(digits), m)])


def polynomial_from_elements(field: Field, coeffs: Sequence) -> Polynomial:
    return Polynomial(field, coeffs)
