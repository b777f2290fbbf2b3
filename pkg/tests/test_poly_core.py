import random

import pytest
from hypothesis import given, strategies as st

from permpoly.errors import IndeterminatePoint, MixedFields, ModByZero, PermPolyError
from permpoly.field_core import FieldElement, make_field
from permpoly.poly_core import (
    INFINITY,
    Polynomial,
    RationalMap,
    bullet,
    format_polynomial,
    format_polynomial_sparse,
    mu_reverse,
    parse_polynomial,
    poly_eval,
    poly_ring_ops,
    rational_eval,
    sigma_conjugate,
)

from helpers import mu_points, q_field, rand_elt, rand_poly


def P(F, *coeffs):
    return Polynomial(F, list(coeffs))


def test_eval_examples(F9):
    u = F9.parse_element("0,1")
    assert poly_eval(P(F9, 1, 0, 1), u) == F9.zero
    assert poly_eval(Polynomial(F9, []), u) == F9.zero
    assert Polynomial(F9, []).degree == -1


def test_ring_op_examples():
    F3 = make_field(3, 1)
    x = Polynomial.x(F3)
    assert poly_ring_ops(x + 1, x + 2, "mul") == P(F3, 2, 0, 1)
    assert poly_ring_ops(x ** 2, x + 1, "compose") == P(F3, 1, 2, 1)
    F9 = make_field(3, 2, 1)
    y = Polynomial.x(F9)
    assert poly_ring_ops(y ** 5, y ** 4 - 1, "mod") == y
    with pytest.raises(ModByZero):
        y % Polynomial(F9, [])
    with pytest.raises(MixedFields):
        y + x


def test_sigma_conjugate_examples(F9):
    u = F9.parse_element("0,1")
    x = Polynomial.x(F9)
    assert sigma_conjugate(x ** 3 - u) == x ** 3 - 2 * u
    base = P(F9, 1, 2, 0, 1)
    assert sigma_conjugate(base) == base
    assert sigma_conjugate(Polynomial(F9, [])).is_zero()


def test_mu_reverse_examples(F9):
    u = F9.parse_element("0,1")
    x = Polynomial.x(F9)
    L = x - u
    R = mu_reverse(L, 1)
    for z in mu_points(F9):
        assert R(z) == L(z) ** 3 * z
    c = F9.parse_element("1,2")
    assert mu_reverse(Polynomial.constant(F9, c), 0) == Polynomial.constant(F9, c.frobenius())
    assert mu_reverse(x ** 4, 0) == Polynomial.constant(F9, 1)


def test_bullet_examples(F9, rng):
    u = F9.parse_element("0,1")
    x = Polynomial.x(F9)
    L, M = x.scale(u) + u, x - 1
    assert bullet(x, L, M) == L
    g = F9.parse_element("1,1")
    assert bullet(x - g, L, M) == L - M.scale(g)
    d = F9.parse_element("2,1")
    B = bullet(x ** 3 - d, L, M)
    assert B == L ** 3 - (M ** 3).scale(d)
    for z in rng.sample([FieldElement(F9, c) for c in range(9)], 5):
        if M(z):
            assert B(z) == M(z) ** 3 * ((L(z) / M(z)) ** 3 - d)
    with pytest.raises(PermPolyError):
        bullet(Polynomial(F9, []), L, M)


def test_rational_eval_examples(F9):
    u = F9.parse_element("0,1")
    x = Polynomial.x(F9)
    assert rational_eval(RationalMap(x, x), u) == F9.one
    assert rational_eval(RationalMap(x + 1, x - 1), F9.one) is INFINITY
    with pytest.raises(IndeterminatePoint):
        rational_eval(RationalMap(x - u, x - u), u)
    assert INFINITY != F9.zero


def test_zero_denominator_rejected(F9):
    with pytest.raises(PermPolyError):
        RationalMap(Polynomial.x(F9), Polynomial(F9, []))


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2)])
def test_mu_reverse_matches_pointwise(p, e):
    F = q_field(p, e)
    q = F.q
    rng = random.Random(p * 10 + e)
    for _ in range(60):
        L = rand_poly(F, rng, rng.randrange(0, q + 1))
        t = rng.randrange(0, q + 1)
        R = mu_reverse(L, t)
        assert R.degree <= q
        for z in mu_points(F):
            assert R(z) == L(z) ** q * z ** t


@pytest.mark.parametrize("p,e", [(3, 1), (2, 2), (5, 1)])
def test_bullet_degree_law_and_evaluation(p, e):
    F = q_field(p, e)
    rng = random.Random(7 * p + e)
    for _ in range(50):
        d = rng.randrange(1, 4)
        L, M = rand_poly(F, rng, d), rand_poly(F, rng, d)
        N = rand_poly(F, rng, rng.randrange(0, 4))
        B = bullet(N, L, M)
        assert B.degree <= M.degree * N.degree
        for c in range(F.size):
            z = FieldElement(F, c)
            if M(z):
                assert B(z) == M(z) ** N.degree * N(L(z) / M(z))


def test_vectorized_eval_matches_horner():
    F = make_field(2, 6, 3)
    rng = random.Random(3)
    xs = list(range(F.size))
    for _ in range(20):
        Q = rand_poly(F, rng, rng.randrange(0, 30))
        assert list(Q.eval_codes(xs)) == [Q(FieldElement(F, c)).code for c in xs]


def test_substitute_and_shift(F9):
    x = Polynomial.x(F9)
    h = x + 2
    assert h.substitute_power(3).shift(2) == x ** 5 + x ** 2 * 2


def test_text_forms(F9):
    u = F9.parse_element("0,1")
    x = Polynomial.x(F9)
    Q = x ** 3 * u + 2
    assert format_polynomial(Q) == "2,0,0,0,0,0,0,1"
    assert parse_polynomial(F9, format_polynomial(Q)) == Q
    assert format_polynomial_sparse(Q) == "0:2,0;3:0,1"
    assert parse_polynomial(F9, "0:2,0;3:0,1") == Q
    assert parse_polynomial(F9, "2,0;0,0;0,0;0,1") == Q
    with pytest.raises(PermPolyError):
        parse_polynomial(F9, "1,0,1")


F27 = make_field(3, 3, 1)
coeff_lists = st.lists(st.integers(0, 26), max_size=6)


@given(coeff_lists, coeff_lists, coeff_lists)
def test_ring_axioms(a, b, c):
    A, B, C = (Polynomial.from_codes(F27, v) for v in (a, b, c))
    assert (A + B) + C == A + (B + C)
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C
    assert A * B == B * A


@given(coeff_lists, coeff_lists)
def test_division_identity(a, b):
    A, B = Polynomial.from_codes(F27, a), Polynomial.from_codes(F27, b)
    if B.is_zero():
        return
    Qt, Rm = divmod(A, B)
    assert Qt * B + Rm == A
    assert Rm.degree < B.degree


def test_power_matches_repeated_product(F9, rng):
    Q = rand_poly(F9, rng, 2)
    acc = Polynomial.constant(F9, 1)
    for n in range(7):
        assert Q ** n == acc
        acc = acc * Q


def test_scalar_lifting(F9):
    x = Polynomial.x(F9)
    c = rand_elt(F9, random.Random(1), nonzero=True)
    assert (x + c) - c == x
    assert (x * c).leading == c
