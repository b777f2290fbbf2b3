"""Bijection tests for rational maps on mu_{q+1}, exhaustive curve-point scans,
and the degree-one classifications.

Values of a rational map are computed projectively: a pole evaluates to
infinity, which is never an element of mu_{q+1} (so a pole makes
``permutes_mu`` false) but is a legitimate value for maps onto
GF(q) U {infinity}.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .field_core import Field, FieldElement
from .poly_core import Polynomial, RationalMap

POLE_CONVENTION = {
    "permutes_mu": "a pole on mu maps to infinity, which is not in mu, so the map is not a permutation",
    "bijects_mu_to_line": "a pole on mu maps to infinity, a valid point of GF(q) U {infinity}",
}


def mu_array(field: Field, n: Optional[int] = None) -> np.ndarray:
    n = field.mu_order if n is None else n
    return np.array(field.mu_codes(n), dtype=np.int64)


def function_key(R: RationalMap, n: Optional[int] = None) -> tuple[int, ...]:
    """Projective values on mu_n in the fixed enumeration order; identifies R as a function."""
    return tuple(int(v) for v in R.eval_codes(mu_array(R.field, n)))


def _in_mu(field: Field, values: np.ndarray, n: int) -> np.ndarray:
    finite = values < field.size
    safe = np.where(finite, values, 0)
    return finite & (field.vpow(safe, n) == 1)


def _in_line(field: Field, values: np.ndarray) -> np.ndarray:
    finite = values < field.size
    safe = np.where(finite, values, 0)
    return ~finite | (field.vfrob(safe) == safe)


def permutes_mu(R: RationalMap, n: Optional[int] = None) -> bool:
    """Does x -> L(x)/M(x) permute mu_n (default: mu_{q+1}, or the norm-one group of the tower)?"""
    F = R.field
    n = F.mu_order if n is None else n
    vals = R.eval_codes(mu_array(F, n))
    if not np.all(_in_mu(F, vals, n)):
        return False
    return len(np.unique(vals)) == n


def bijects_mu_to_line(R: RationalMap) -> bool:
    F = R.field
    n = F.q + 1
    vals = R.eval_codes(mu_array(F, n))
    if not np.all(_in_line(F, vals)):
        return False
    return len(np.unique(vals)) == n


def roots_in_mu(P: Polynomial, n: Optional[int] = None) -> list[FieldElement]:
    F = P.field
    mu = mu_array(F, n)
    vals = P.eval_codes(mu)
    return [FieldElement(F, int(c)) for c in sorted(mu[vals == 0])]


def offdiagonal_mu_points(R: RationalMap, n: Optional[int] = None) -> list[tuple[FieldElement, FieldElement]]:
    """All (a, b) in mu_n^2, a != b, with L(a)M(b) = L(b)M(a), sorted by code."""
    F = R.field
    mu = np.sort(mu_array(F, n))
    lv = R.num.eval_codes(mu)
    mv = R.den.eval_codes(mu)
    left = F.vmul(lv[:, None], mv[None, :])
    hit = left == left.T
    np.fill_diagonal(hit, False)
    ia, ib = np.nonzero(hit)
    return [(FieldElement(F, int(mu[i])), FieldElement(F, int(mu[j]))) for i, j in zip(ia, ib)]


def H_offdiagonal_base_points(H: Polynomial) -> list[tuple[FieldElement, FieldElement]]:
    """Pairs (x, y) in GF(q)^2, x != y, with H(x) = xi * H(y) for some xi in GF(q).

    The product over xi includes xi = 0, so a root x of H pairs with every y.
    """
    F = H.field
    base = np.array(F.base_codes(), dtype=np.int64)
    hv = H.eval_codes(base)
    hx = hv[:, None]
    hy = hv[None, :]
    ratio = F.vdiv(np.broadcast_to(hx, (len(base), len(base))), np.where(hy == 0, 1, hy))
    ratio_in_base = F.vfrob(ratio) == ratio
    hit = np.where(hy == 0, hx == 0, ratio_in_base)
    np.fill_diagonal(hit, False)
    ia, ib = np.nonzero(hit)
    return [(FieldElement(F, int(base[i])), FieldElement(F, int(base[j]))) for i, j in zip(ia, ib)]


def H_sigma_gap_rootfree(H: Polynomial) -> bool:
    """H^sigma - H has no root in GF(q)."""
    F = H.field
    gap = H.sigma() - H
    base = np.array(F.base_codes(), dtype=np.int64)
    return bool(np.all(gap.eval_codes(base) != 0))


# --------------------------------------------------------------------------
# degree-one maps

def _dedup(maps, n=None) -> list[RationalMap]:
    seen = {}
    for R in maps:
        seen.setdefault(function_key(R, n), R)
    return list(seen.values())


def enumerate_degree_one_mu_bijections(field: Field) -> list[RationalMap]:
    """beta/x and (x - gamma^q beta)/(gamma x - beta) for beta in mu_{q+1}, gamma outside it.

    gamma = 0 is allowed (it gives the maps x -> c x, c in mu_{q+1}).  The
    list is deduplicated as functions on mu_{q+1}.
    """
    F = field
    n = F.q + 1
    mu = F.mu_codes(n)
    mu_set = set(mu)
    x = Polynomial.x(F)
    maps = [RationalMap(Polynomial.from_codes(F, (b,)), x) for b in mu]
    for g in range(F.size):
        if g in mu_set:
            continue
        gq = F.frob(g)
        for b in mu:
            num = Polynomial.from_codes(F, (F.neg(F.mul(gq, b)), 1))
            den = Polynomial.from_codes(F, (F.neg(b), g))
            maps.append(RationalMap(num, den))
    return _dedup(maps, n)


def enumerate_degree_one_line_bijections(field: Field) -> list[RationalMap]:
    """(rho x + rho^q)/(eps x + eps^q) with rho, eps nonzero and rho^(q-1) != eps^(q-1)."""
    F = field
    q = F.q
    maps = []
    for rho in range(1, F.size):
        rq = F.frob(rho)
        for eps in range(1, F.size):
            if F.pow(rho, q - 1) == F.pow(eps, q - 1):
                continue
            num = Polynomial.from_codes(F, (rq, rho))
            den = Polynomial.from_codes(F, (F.frob(eps), eps))
            maps.append(RationalMap(num, den))
    return _dedup(maps, q + 1)


def brute_force_degree_one(field: Field, target: str = "mu") -> dict[tuple[int, ...], tuple[int, int, int, int]]:
    """Every map (a x + b)/(c x + d) over the field with ad - bc != 0 that is a bijection
    mu_{q+1} -> mu_{q+1} (target "mu") or mu_{q+1} -> GF(q) U {inf} (target "line").

    Maps are normalized to c = 1, or c = 0 and d = 1, and scanned in bulk.
    Returns {function key: (a, b, c, d) codes of the first representative}.
    """
    F = field
    n = F.q + 1
    X = mu_array(F, n)
    size = F.size
    codes = np.arange(size, dtype=np.int64)
    found: dict[tuple[int, ...], tuple[int, int, int, int]] = {}

    # c = 1: (a x + b) / (x + d), det = a d - b
    A, B, D = (g.ravel() for g in np.meshgrid(codes, codes, codes, indexing="ij"))
    C = np.ones_like(A)
    # c = 0, d = 1: a x + b with a != 0
    A0, B0 = (g.ravel() for g in np.meshgrid(codes[1:], codes, indexing="ij"))
    A = np.concatenate([A, A0])
    B = np.concatenate([B, B0])
    C = np.concatenate([C, np.zeros_like(A0)])
    D = np.concatenate([D, np.ones_like(A0)])
    det = F.vsub(F.vmul(A, D), F.vmul(B, C))
    keep = det != 0
    A, B, C, D = A[keep], B[keep], C[keep], D[keep]

    num = F.vadd(F.vmul(A[:, None], X[None, :]), B[:, None])
    den = F.vadd(F.vmul(C[:, None], X[None, :]), D[:, None])
    pole = den == 0
    vals = np.where(pole, size, F.vdiv(num, np.where(pole, 1, den)))
    if target == "mu":
        ok = _in_mu(F, vals, n).all(axis=1)
    elif target == "line":
        ok = _in_line(F, vals).all(axis=1)
    else:
        raise ValueError(f"unknown target {target!r}")
    srt = np.sort(vals, axis=1)
    ok &= (np.diff(srt, axis=1) != 0).all(axis=1)
    for idx in np.nonzero(ok)[0]:
        key = tuple(int(v) for v in vals[idx])
        found.setdefault(key, (int(A[idx]), int(B[idx]), int(C[idx]), int(D[idx])))
    return found


def classify_degree_one(field: Field, target: str = "mu") -> dict:
    """Compare the closed-form family with the exhaustive scan, as functions on mu_{q+1}."""
    n = field.q + 1
    if target == "mu":
        closed = enumerate_degree_one_mu_bijections(field)
    else:
        closed = enumerate_degree_one_line_bijections(field)
    closed_keys = {function_key(R, n) for R in closed}
    brute = brute_force_degree_one(field, target)
    brute_keys = set(brute)
    return {
        "target": target,
        "closed_form": closed,
        "closed_form_count": len(closed_keys),
        "brute_force_count": len(brute_keys),
        "missing_from_closed_form": sorted(brute_keys - closed_keys),
        "extra_in_closed_form": sorted(closed_keys - brute_keys),
    }


def three_way_decomposition(R: RationalMap, n: Optional[int] = None) -> dict[str, bool]:
    """The three ingredients of permutes_mu, computed separately."""
    F = R.field
    n = F.mu_order if n is None else n
    no_poles = not roots_in_mu(R.den, n)
    no_collisions = not offdiagonal_mu_points(R, n)
    if no_poles:
        vals = R.eval_codes(mu_array(F, n))
        image_in_mu = bool(np.all(_in_mu(F, vals, n)))
    else:
        image_in_mu = False
    return {"no_poles": no_poles, "no_collisions": no_collisions, "image_in_mu": image_in_mu}


def mu_table(R: Optional[RationalMap], field: Field, n: Optional[int] = None) -> list[dict]:
    """Rows (x, value) over mu_n; value is "inf" at poles."""
    n = field.q + 1 if n is None else n
    mu = field.mu_codes(n)
    rows = []
    vals = R.eval_codes(np.array(mu)) if R is not None else [None] * len(mu)
    for i, (c, v) in enumerate(zip(mu, vals)):
        row = {"index": i, "x": field.format_code(c)}
        if R is not None:
            row["value"] = "inf" if int(v) == field.size else field.format_code(int(v))
        rows.append(row)
    return rows

