"""beta-associated pairs and (beta, t)-self-associated polynomials.

L ~_beta M means L(x)^q = beta * x^(-deg L) * M(x) on mu_{q+1}; L is
(beta, t)-self-associated when L(x)^q = beta * x^(-t) * L(x) there.  Both are
decided by comparing reductions modulo x^(q+1) - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import BetaNotInMu, PermPolyError, DegreeMismatch, EqualPolynomials, SelfAssociatedResult
from .field_core import FieldElement
from .poly_core import Polynomial, frobenius_on_mu, mu_reverse


@dataclass(frozen=True)
class AssociationCertificate:
    kind: str  # "pair" or "self"
    beta: FieldElement
    t: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("pair", "self"):
            raise PermPolyError(f"unknown certificate kind {self.kind!r}")
        _check_beta(self.beta)

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "beta": str(self.beta)}
        if self.t is not None:
            d["t"] = self.t
        return d


def _check_beta(beta: FieldElement, n: Optional[int] = None) -> None:
    F = beta.field
    n = F.q + 1 if n is None else n
    if F.pow(beta.code, n) != 1:
        raise BetaNotInMu(f"{beta} is not an {n}-th root of unity")


def is_beta_associated(L: Polynomial, M: Polynomial, beta: FieldElement) -> bool:
    if L.degree != M.degree:
        raise DegreeMismatch(f"deg L = {L.degree} but deg M = {M.degree}")
    if L == M:
        raise EqualPolynomials("the pair relation needs L != M; use is_self_associated")
    _check_beta(beta)
    n = L.field.q + 1
    return mu_reverse(L, L.degree) == M.scale(beta).reduce_cyclic(n)


def is_self_associated(L: Polynomial, beta: FieldElement, t: int) -> bool:
    _check_beta(beta)
    n = L.field.q + 1
    return mu_reverse(L, t) == L.scale(beta).reduce_cyclic(n)


def associate_of(L: Polynomial, beta: FieldElement) -> Polynomial:
    """The unique M of degree <= q with L ~_beta M."""
    _check_beta(beta)
    M = mu_reverse(L, L.degree).scale(beta.inverse())
    if M == L:
        raise SelfAssociatedResult("L is its own associate; it is self-associated")
    return M


def find_association(L: Polynomial, M: Polynomial) -> Optional[FieldElement]:
    """The beta in mu_{q+1} with L ~_beta M, or None."""
    if L.degree != M.degree:
        raise DegreeMismatch(f"deg L = {L.degree} but deg M = {M.degree}")
    if L == M:
        raise EqualPolynomials("the pair relation needs L != M")
    F = L.field
    n = F.q + 1
    lhs = mu_reverse(L, L.degree)
    rhs = M.reduce_cyclic(n)
    if rhs.is_zero() or lhs.is_zero():
        return None
    # beta is forced by any coefficient where the reduced M is nonzero
    i = next(e for e, c in enumerate(rhs.codes) if c)
    if i >= len(lhs.codes) or lhs.codes[i] == 0:
        return None
    beta = FieldElement(F, F.div(lhs.codes[i], rhs.codes[i]))
    if F.pow(beta.code, n) != 1:
        return None
    return beta if lhs == rhs.scale(beta) else None


def mu_relation(A: Polynomial, B: Polynomial, beta: FieldElement, t: int, n: int) -> bool:
    """A(x)^q == beta * x^(-t) * B(x) for all x in mu_n (any tower degree)."""
    lhs = frobenius_on_mu(A, n)
    rhs = B.scale(beta)
    F = A.field
    out = [0] * n
    for e, c in rhs.terms():
        k = (e - t) % n
        out[k] = F.add(out[k], c)
    return lhs == Polynomial.from_codes(F, out)
