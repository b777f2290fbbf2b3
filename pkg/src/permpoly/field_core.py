"""Arithmetic in GF(p^m) with a designated base subfield GF(q), q = p^e.

Elements are stored as integer codes: the coordinate vector (c_0, ..., c_{m-1})
with respect to the power basis of the modulus is packed as sum(c_i * p^i).
The integer order of codes is the canonical element order used everywhere
(sorting, witnesses, "smallest primitive element").

Multiplication goes through log/antilog tables of a fixed primitive element,
so every field is fully tabulated at construction time.  That is what bounds
the supported size (``MAX_FIELD_SIZE``).  Besides the scalar operations on
codes there are numpy-vectorized variants (``vadd``, ``vmul``, ``vpow``, ...)
used by the exhaustive scans.
"""

from __future__ import annotations

import functools
import itertools
import math
import re
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    BadTower,
    DivisionByZero,
    FieldTooLarge,
    MixedFields,
    NonPrime,
    NotADivisor,
    PermPolyError,
    ReducibleModulus,
)

MAX_FIELD_SIZE = 1 << 20
_ADD_TABLE_LIMIT = 1024


# --------------------------------------------------------------------------
# integer helpers

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


# --------------------------------------------------------------------------
# GF(p)[x] helpers on coefficient lists (low to high); used only to vet and
# tabulate the modulus.

def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    a = _fp_trim([c % p for c in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _fp_trim(a)
    return a


def _fp_mulmod(a: Sequence[int], b: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _fp_mod(out, f, p)


def _fp_powmod(a: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _fp_mod(a, f, p)
    while e:
        if e & 1:
            result = _fp_mulmod(result, base, f, p)
        base = _fp_mulmod(base, base, f, p)
        e >>= 1
    return result


def _fp_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _fp_trim([c % p for c in a]), _fp_trim([c % p for c in b])
    while b:
        a, b = b, _fp_mod(a, b, p)
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic f over GF(p)."""
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    # x^(p^m) == x mod f
    xp = x
    powers = {}
    for i in range(1, m + 1):
        xp = _fp_powmod(xp, p, f, p)
        powers[i] = xp
    if _fp_trim([(c - d) % p for c, d in itertools.zip_longest(powers[m], x, fillvalue=0)]):
        return False
    for r in prime_factors(m):
        g = [(c - d) % p for c, d in itertools.zip_longest(powers[m // r], x, fillvalue=0)]
        if len(_fp_gcd(f, g, p)) > 1:
            return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m (low-to-high lists)."""
    if m == 1:
        return (0, 1)
    # a zero constant term means x divides f
    for low in itertools.product(range(1, p), *[range(p)] * (m - 1)):
        f = list(low) + [1]
        if any(sum(c * pow(r, i, p) for i, c in enumerate(f)) % p == 0 for r in range(p)):
            continue
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # unreachable


# --------------------------------------------------------------------------

class Field:
    """GF(p^m) with a designated base subfield GF(p^base_power).

    Use :func:`make_field` rather than calling the constructor; it validates
    the input and caches instances.
    """

    def __init__(self, p: int, m: int, base_power: int, modulus: Sequence[int]):
        self.p = p
        self.m = m
        self.base_power = base_power
        self.modulus = tuple(modulus)
        self.size = p ** m
        self.q = p ** base_power
        self.tower_degree = m // base_power
        self._key = (p, m, base_power, self.modulus)
        self._build_tables()

    # -- construction -----------------------------------------------------

    def _digits_of(self, code: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.m):
            code, r = divmod(code, p)
            out.append(r)
        return out

    def _code_of(self, digits: Iterable[int]) -> int:
        code = 0
        for d in reversed(list(digits)):
            code = code * self.p + d
        return code

    def _mul_matrix(self, digits: Sequence[int]) -> np.ndarray:
        """Matrix of v -> c*v on coordinate vectors, c given by its digits."""
        p, m, f = self.p, self.m, self.modulus
        cols = []
        v = list(digits) + [0] * (m - len(digits))
        for _ in range(m):
            cols.append(v)
            top = v[-1]
            v = [0] + v[:-1]
            if top:
                v = [(v[i] - top * f[i]) % p for i in range(m)]
        return np.array(cols, dtype=np.int64).T

    def _find_primitive(self) -> list[int]:
        n = self.size - 1
        f, p = list(self.modulus), self.p
        cofactors = [n // r for r in prime_factors(n)]
        for code in range(1, self.size):
            g = _fp_trim(self._digits_of(code))
            if all(_fp_powmod(g, e, f, p) != [1] for e in cofactors):
                return self._digits_of(code)
        raise AssertionError("field has no primitive element")  # unreachable

    def _build_tables(self) -> None:
        p, m, size = self.p, self.m, self.size
        n = size - 1
        self._weights = p ** np.arange(m, dtype=np.int64)
        codes = np.arange(size, dtype=np.int64)
        self._digits = (codes[:, None] // self._weights[None, :]) % p

        g = self._find_primitive()
        self.primitive_code = self._code_of(g)
        powers = np.zeros((1, m), dtype=np.int64)
        powers[0, 0] = 1
        gk = g  # digits of g^len(powers)
        f = list(self.modulus)
        while len(powers) < n:
            mat = self._mul_matrix(gk)
            powers = np.vstack([powers, (powers @ mat.T) % p])
            gk = _fp_mulmod(_fp_trim(list(gk)), _fp_trim(list(gk)), f, p)
            gk = gk + [0] * (m - len(gk))
        powers = powers[:n]
        exp_arr = powers @ self._weights
        if len(np.unique(exp_arr)) != n:
            raise AssertionError("log table construction failed")
        log_arr = np.zeros(size, dtype=np.int64)
        log_arr[exp_arr] = np.arange(n, dtype=np.int64)
        self._exp_arr = exp_arr
        self._log_arr = log_arr
        self._exp = exp_arr.tolist() * 2
        self._log = log_arr.tolist()
        self._neg_arr = ((-self._digits) % p) @ self._weights
        self._neg = self._neg_arr.tolist()
        self._add_table = None
        self._add_arr = None
        if p != 2 and size <= _ADD_TABLE_LIMIT:
            tab = ((self._digits[:, None, :] + self._digits[None, :, :]) % p) @ self._weights
            self._add_arr = tab
            self._add_table = tab.tolist()
        q = self.q
        self._frob_arr = np.where(codes == 0, 0, exp_arr[(log_arr * q) % n])
        self._frob = self._frob_arr.tolist()

    # -- identity ---------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Field) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Field({self.spec_string()})"

    def __reduce__(self):
        return (make_field, (self.p, self.m, self.base_power, self.modulus))

    def spec_string(self) -> str:
        mod = ",".join(str(c) for c in self.modulus)
        return f"{self.p}^{self.m}/{self.base_power}:{mod}"

    # -- element construction ---------------------------------------------

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise MixedFields("element belongs to another field")
            return value
        if isinstance(value, (int, np.integer)):
            return FieldElement(self, int(value) % self.p)
        if isinstance(value, str):
            return self.parse_element(value)
        digits = [int(c) for c in value]
        if len(digits) > self.m or any(not 0 <= c < self.p for c in digits):
            raise PermPolyError(f"bad coordinate vector {digits} for {self}")
        return FieldElement(self, self._code_of(digits))

    def element(self, code: int) -> "FieldElement":
        return FieldElement(self, code)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def gen(self) -> "FieldElement":
        """Class of x in GF(p)[x]/(modulus)."""
        if self.m == 1:
            return FieldElement(self, (-self.modulus[0]) % self.p)
        return FieldElement(self, self.p)

    @property
    def primitive(self) -> "FieldElement":
        return FieldElement(self, self.primitive_code)

    def elements(self) -> Iterator["FieldElement"]:
        for code in range(self.size):
            yield FieldElement(self, code)

    def base_elements(self) -> list["FieldElement"]:
        return [FieldElement(self, c) for c in self.base_codes()]

    @functools.cached_property
    def _base_codes(self) -> list[int]:
        return [c for c in range(self.size) if self._frob[c] == c]

    def base_codes(self) -> list[int]:
        """Codes of GF(q) inside this field, ascending."""
        return list(self._base_codes)

    def parse_element(self, text: str) -> "FieldElement":
        parts = [s.strip() for s in text.split(",") if s.strip()]
        try:
            digits = [int(s) for s in parts]
        except ValueError:
            raise PermPolyError(f"cannot parse element {text!r}") from None
        return self(digits)

    def format_code(self, code: int) -> str:
        return ",".join(str(d) for d in self._digits_of(code))

    def digits(self, code: int) -> tuple[int, ...]:
        return tuple(self._digits_of(code))

    # -- scalar arithmetic on codes ---------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a][b]
        p = self.p
        out, w = 0, 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * w
            w *= p
        return out

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self._exp[(-self._log[a]) % (self.size - 1)]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise DivisionByZero("division by zero")
        if a == 0:
            return 0
        return self._exp[(self._log[a] - self._log[b]) % (self.size - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e > 0:
                return 0
            if e == 0:
                return 1
            raise DivisionByZero("negative power of zero")
        return self._exp[(self._log[a] * e) % (self.size - 1)]

    def frob(self, a: int) -> int:
        return self._frob[a]

    def log(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("log of zero")
        return self._log[a]

    def exp(self, k: int) -> int:
        return self._exp[k % (self.size - 1)]

    # -- vectorized arithmetic on code arrays -----------------------------

    def vadd(self, a: np.ndarray, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self._add_arr is not None:
            return self._add_arr[a, b]
        return ((self._digits[a] + self._digits[b]) % self.p) @ self._weights

    def vneg(self, a) -> np.ndarray:
        return self._neg_arr[np.asarray(a, dtype=np.int64)]

    def vsub(self, a, b) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        n = self.size - 1
        out = self._exp_arr[(self._log_arr[a] + self._log_arr[b]) % n]
        return np.where((a == 0) | (b == 0), 0, out)

    def vpow(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        n = self.size - 1
        out = self._exp_arr[(self._log_arr[a] * (e % n)) % n]
        if e > 0:
            return np.where(a == 0, 0, out)
        if e == 0:
            return np.ones_like(a)
        if np.any(a == 0):
            raise DivisionByZero("negative power of zero")
        return out

    def vinv(self, a) -> np.ndarray:
        return self.vpow(a, -1)

    def vdiv(self, a, b) -> np.ndarray:
        return self.vmul(a, self.vinv(b))

    def vfrob(self, a) -> np.ndarray:
        return self._frob_arr[np.asarray(a, dtype=np.int64)]

    def all_codes(self) -> np.ndarray:
        return np.arange(self.size, dtype=np.int64)

    # -- subgroups --------------------------------------------------------

    def mu_codes(self, d: int) -> list[int]:
        n = self.size - 1
        if d <= 0 or n % d:
            raise NotADivisor(f"{d} does not divide {n}")
        step = n // d
        return [self._exp[i * step] for i in range(d)]

    @property
    def mu_order(self) -> int:
        """(q^kappa - 1)/(q - 1): q+1 for GF(q^2), q^2+q+1 for GF(q^3)."""
        return (self.size - 1) // (self.q - 1)


class FieldElement:
    """Immutable element of a :class:`Field`."""

    __slots__ = ("field", "code")

    def __init__(self, field: Field, code: int):
        self.field = field
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.digits(self.code)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise MixedFields("operands belong to different fields")
            return other.code
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(self.code, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(b, self.code))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(self.code, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(b, self.code))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, int(e)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.code))

    def frobenius(self) -> "FieldElement":
        return FieldElement(self.field, self.field.frob(self.code))

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, (int, np.integer)):
            return self.code == int(other) % self.field.p
        return NotImplemented

    def __lt__(self, other: "FieldElement"):
        return self.code < other.code

    def __hash__(self):
        return hash((self.field._key, self.code))

    def __str__(self):
        return self.field.format_code(self.code)

    def __repr__(self):
        return f"<{self.field.p}^{self.field.m}: {self}>"


# --------------------------------------------------------------------------
# module-level operations

@functools.lru_cache(maxsize=None)
def _make_field_cached(p: int, m: int, base_power: int, modulus: tuple[int, ...] | None) -> Field:
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if m < 1 or base_power < 1 or m % base_power:
        raise BadTower(f"base power {base_power} does not divide extension degree {m}")
    if p ** m > MAX_FIELD_SIZE:
        raise FieldTooLarge(f"{p}^{m} exceeds the supported size {MAX_FIELD_SIZE}")
    if modulus is None:
        modulus = smallest_irreducible(p, m)
    else:
        if len(modulus) != m + 1 or modulus[-1] != 1 or any(not 0 <= c < p for c in modulus):
            raise ReducibleModulus(f"modulus {list(modulus)} is not monic of degree {m} over GF({p})")
        if not is_irreducible(list(modulus), p):
            raise ReducibleModulus(f"modulus {list(modulus)} is reducible over GF({p})")
    return Field(p, m, base_power, modulus)


def make_field(p: int, m: int, base_power: int | None = None, modulus: Sequence[int] | None = None) -> Field:
    """GF(p^m) with base subfield GF(p^base_power).

    ``base_power`` defaults to m/2 for even m (the GF(q^2) setting) and to 1
    otherwise.  Without a modulus the lexicographically smallest monic
    irreducible (coefficients compared low degree first) is used.
    """
    if base_power is None:
        base_power = m // 2 if m % 2 == 0 else 1
    mod = None if modulus is None else tuple(int(c) for c in modulus)
    return _make_field_cached(int(p), int(m), int(base_power), mod)


_SPEC_RE = re.compile(r"^\s*(\d+)\s*\^\s*(\d+)\s*/\s*(\d+)\s*(?::\s*([\d,\s]+))?\s*$")


def parse_field_spec(text: str) -> Field:
    """Parse ``"p^m/e[:c0,...,cm]"``, e.g. ``"3^2/1:1,0,1"``."""
    mt = _SPEC_RE.match(text)
    if not mt:
        raise PermPolyError(f"bad field spec {text!r}; expected p^m/e[:c0,...,cm]")
    p, m, e = (int(mt.group(i)) for i in (1, 2, 3))
    modulus = None
    if mt.group(4):
        modulus = [int(c) for c in mt.group(4).split(",") if c.strip()]
    return make_field(p, m, e, modulus)


def arith(a: FieldElement, b: FieldElement | None, op: str, exponent: int | None = None) -> FieldElement:
    """Dispatch one of add, sub, mul, div, pow, neg, inv."""
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** exponent
    if b is None:
        raise PermPolyError(f"operation {op} needs two operands")
    if a.field != b.field:
        raise MixedFields("operands belong to different fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise PermPolyError(f"unknown operation {op}")


def frobenius(a: FieldElement) -> FieldElement:
    """a -> a^q for the designated base field GF(q)."""
    return a.frobenius()


def in_base_subfield(a: FieldElement) -> bool:
    return a.field.frob(a.code) == a.code


def mu_subgroup(field: Field, d: int) -> list[FieldElement]:
    """The d-th roots of unity as powers g^(i*(size-1)/d) of the primitive element."""
    return [FieldElement(field, c) for c in field.mu_codes(d)]
