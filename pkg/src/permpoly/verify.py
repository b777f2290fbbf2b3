"""Exhaustive permutation checks and the Tucker-Zieve (AGW) criterion."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import MixedFields, NotADivisor, TooLarge
from .field_core import MAX_FIELD_SIZE, Field, FieldElement
from .poly_core import Polynomial


@dataclass(frozen=True)
class PermutationReport:
    is_permutation: bool
    image_size: int
    collision_witness: Optional[tuple[FieldElement, FieldElement]] = None

    def to_dict(self) -> dict:
        d = {"is_permutation": self.is_permutation, "image_size": self.image_size}
        if self.collision_witness is not None:
            a, b = self.collision_witness
            d["collision_witness"] = [str(a), str(b)]
        else:
            d["collision_witness"] = None
        return d


def _values_on_field(P: Polynomial, F: Field) -> np.ndarray:
    if P.field != F:
        raise MixedFields("polynomial is not over the given field")
    if F.size > MAX_FIELD_SIZE:
        raise TooLarge(f"field of size {F.size} exceeds the exhaustive-check ceiling")
    return P.eval_codes(F.all_codes())


def is_permutation_of_field(P: Polynomial, F: Optional[Field] = None) -> PermutationReport:
    """Evaluate P everywhere and mark the image.

    On failure the witness is the smallest colliding pair (a, b), a < b, in
    canonical element order.
    """
    F = P.field if F is None else F
    vals = _values_on_field(P, F)
    seen = np.zeros(F.size, dtype=bool)
    seen[vals] = True
    image = int(seen.sum())
    if image == F.size:
        return PermutationReport(True, image)
    # first index whose value already appeared earlier gives b; a is that earlier index
    first = np.full(F.size, -1, dtype=np.int64)
    order = np.arange(F.size)
    first_idx = np.unique(vals, return_index=True)[1]
    first[vals[first_idx]] = first_idx
    dup = order[first[vals] != order]
    # smallest a that collides: the minimum over first occurrences of repeated values
    repeated_vals = np.unique(vals[dup])
    a = int(first[repeated_vals].min())
    b = int(dup[vals[dup] == vals[a]].min())
    return PermutationReport(False, image, (FieldElement(F, a), FieldElement(F, b)))


def is_permutation_sorted(P: Polynomial, F: Optional[Field] = None) -> bool:
    """Independent second route: scalar Horner evaluation, sort, scan neighbours."""
    F = P.field if F is None else F
    vals = sorted(P(FieldElement(F, c)).code for c in range(F.size))
    return all(vals[i] != vals[i + 1] for i in range(len(vals) - 1))


def permutes_subgroup(values_fn, F: Field, n: int) -> bool:
    mu = np.array(F.mu_codes(n), dtype=np.int64)
    vals = values_fn(mu)
    in_mu = (vals != 0) & (F.vpow(vals, n) == 1)
    return bool(np.all(in_mu)) and len(np.unique(vals)) == n


def check_agw_criterion(r: int, d: int, h: Polynomial, F: Optional[Field] = None) -> tuple[bool, bool]:
    """Both sides of: x^r h(x^d) permutes F  <=>  gcd(r, d) = 1 and x^r h(x)^d permutes mu_{(|F|-1)/d}.

    Returned separately so that callers test the equivalence instead of assuming it.
    """
    F = h.field if F is None else F
    n_total = F.size - 1
    if d <= 0 or n_total % d:
        raise NotADivisor(f"{d} does not divide {n_total}")
    if r <= 0:
        raise ValueError("r must be positive")
    P = h.substitute_power(d).shift(r)
    lhs = is_permutation_of_field(P, F).is_permutation
    if math.gcd(r, d) != 1:
        return lhs, False
    m = n_total // d

    def g(xs):
        return F.vmul(F.vpow(xs, r), F.vpow(h.eval_codes(xs), d))

    return lhs, permutes_subgroup(g, F, m)
