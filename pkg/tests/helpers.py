"""Random objects and pointwise oracles shared by the test modules."""

import random

from permpoly.field_core import FieldElement, make_field
from permpoly.poly_core import Polynomial


def q_field(p: int, e: int):
    return make_field(p, 2 * e, e)


def rand_elt(F, rng: random.Random, nonzero: bool = False) -> FieldElement:
    lo = 1 if nonzero else 0
    return FieldElement(F, rng.randrange(lo, F.size))


def rand_poly(F, rng: random.Random, degree: int) -> Polynomial:
    """Exactly the given degree (nonzero leading coefficient)."""
    codes = [rng.randrange(F.size) for _ in range(degree)] + [rng.randrange(1, F.size)]
    return Polynomial.from_codes(F, codes)


def rand_mu(F, rng: random.Random, n=None) -> FieldElement:
    n = F.q + 1 if n is None else n
    return FieldElement(F, rng.choice(F.mu_codes(n)))


def mu_points(F, n=None):
    n = F.q + 1 if n is None else n
    return [FieldElement(F, c) for c in F.mu_codes(n)]


def pointwise_associated(L, M, beta) -> bool:
    """L(x)^q == beta x^(-deg L) M(x) at every x in mu_{q+1}, by direct evaluation."""
    q = L.field.q
    return all(L(x) ** q == beta * x ** (-L.degree % (q + 1)) * M(x) for x in mu_points(L.field))


def pointwise_self_associated(L, beta, t) -> bool:
    q = L.field.q
    return all(L(x) ** q == beta * x ** (-t % (q + 1)) * L(x) for x in mu_points(L.field))


def permutes_by_evaluation(P) -> bool:
    F = P.field
    return len({P(FieldElement(F, c)).code for c in range(F.size)}) == F.size
