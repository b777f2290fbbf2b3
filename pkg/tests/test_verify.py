import random

import pytest

from permpoly.errors import MixedFields, NotADivisor
from permpoly.field_core import FieldElement, make_field
from permpoly.poly_core import Polynomial
from permpoly.verify import (
    check_agw_criterion,
    is_permutation_of_field,
    is_permutation_sorted,
)

from helpers import q_field, rand_poly


def test_frobenius_power_permutes():
    for p, e in [(2, 1), (3, 1), (2, 2), (5, 1)]:
        F = q_field(p, e)
        assert is_permutation_of_field(Polynomial.x(F) ** F.q).is_permutation


def test_square_collides_in_f9(F9):
    rep = is_permutation_of_field(Polynomial.x(F9) ** 2)
    assert not rep.is_permutation
    a, b = rep.collision_witness
    assert (str(a), str(b)) == ("1,0", "2,0")
    assert a * a == b * b
    assert rep.image_size == 5
    assert rep.to_dict()["collision_witness"] == ["1,0", "2,0"]


def test_grado2_output_permutes(F16):
    w = F16.base_elements()[2]
    x = Polynomial.x(F16)
    assert is_permutation_of_field(x ** 8 + x ** 2 * w).is_permutation


def test_report_invariant(F9):
    rng = random.Random(0)
    for _ in range(100):
        P = rand_poly(F9, rng, rng.randrange(1, 12))
        rep = is_permutation_of_field(P)
        assert rep.is_permutation == (rep.image_size == 9) == (rep.collision_witness is None)
        if rep.collision_witness:
            a, b = rep.collision_witness
            assert a.code < b.code and P(a) == P(b)


@pytest.mark.parametrize("p,m", [(3, 2), (2, 4), (5, 2), (2, 6)])
def test_two_independent_checks_agree(p, m):
    F = make_field(p, m)
    rng = random.Random(p + m)
    perms = 0
    for _ in range(80):
        P = rand_poly(F, rng, rng.randrange(1, 8))
        if rng.random() < 0.5:
            # monomials hit permutations often enough to exercise both outcomes
            P = Polynomial.x(F) ** rng.randrange(1, F.size)
        fast = is_permutation_of_field(P).is_permutation
        assert fast == is_permutation_sorted(P)
        perms += fast
    assert perms > 0


def test_witness_is_smallest_colliding_pair(F9):
    P = Polynomial.x(F9) ** 4
    a, b = is_permutation_of_field(P).collision_witness
    pairs = [(i, j) for i in range(9) for j in range(i + 1, 9)
             if P(FieldElement(F9, i)) == P(FieldElement(F9, j))]
    assert (a.code, b.code) == min(pairs)


def test_errors(F9, F4):
    with pytest.raises(MixedFields):
        is_permutation_of_field(Polynomial.x(F9), F4)
    with pytest.raises(NotADivisor):
        check_agw_criterion(1, 3, Polynomial.x(F9))
    big = make_field(2, 20, 10)
    assert is_permutation_of_field(Polynomial.x(big) ** 3).is_permutation is False


def test_agw_examples(F9):
    x = Polynomial.x(F9)
    lhs, rhs = check_agw_criterion(1, 2, x + 2)
    assert lhs == rhs
    lhs, rhs = check_agw_criterion(2, 2, x + 2)
    assert (lhs, rhs) == (False, False)
    lhs, rhs = check_agw_criterion(3, 1, Polynomial.constant(F9, 1))
    assert (lhs, rhs) == (True, True)


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1)])
def test_agw_random(p, e):
    F = q_field(p, e)
    rng = random.Random(100 * p + e)
    ds = [d for d in range(1, F.size) if (F.size - 1) % d == 0]
    for _ in range(100):
        d = rng.choice(ds)
        r = rng.randrange(1, F.size)
        h = rand_poly(F, rng, rng.randrange(0, 5))
        lhs, rhs = check_agw_criterion(r, d, h)
        assert lhs == rhs
