import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from permpoly.errors import (
    BadTower,
    DivisionByZero,
    FieldTooLarge,
    MixedFields,
    NonPrime,
    NotADivisor,
    ReducibleModulus,
)
from permpoly.field_core import (
    FieldElement,
    arith,
    frobenius,
    in_base_subfield,
    is_irreducible,
    make_field,
    mu_subgroup,
    parse_field_spec,
    smallest_irreducible,
)

from helpers import q_field


def test_make_field_with_given_modulus(F9):
    F = make_field(3, 2, 1, [1, 0, 1])
    assert F.size == 9 and F.q == 3
    assert F == F9


def test_default_modulus_of_f4_is_the_unique_quadratic():
    assert make_field(2, 2, 1).modulus == (1, 1, 1)


def test_reducible_modulus_rejected():
    with pytest.raises(ReducibleModulus):
        make_field(3, 2, 1, [2, 0, 1])


def test_bad_inputs():
    with pytest.raises(NonPrime):
        make_field(4, 2, 1)
    with pytest.raises(BadTower):
        make_field(3, 3, 2)
    with pytest.raises(FieldTooLarge):
        make_field(2, 21, 1)


def test_default_modulus_is_smallest_irreducible():
    # lexicographic on (c0, c1, ...), monic
    assert smallest_irreducible(3, 2) == (1, 0, 1)
    assert smallest_irreducible(2, 4) == (1, 0, 0, 1, 1)
    for p, m in [(2, 3), (3, 2), (5, 2), (2, 4)]:
        best = smallest_irreducible(p, m)
        # nothing smaller in the same order is irreducible
        for c in range(p ** m):
            digits = [(c // p ** i) % p for i in range(m)]
            cand = tuple(digits) + (1,)
            if tuple(digits) >= best[:m]:
                break
            assert not is_irreducible(cand, p)


def test_arith_examples(F9, F4):
    u = F9.parse_element("0,1")
    assert u * u == F9(2)
    w = F4.parse_element("0,1")
    assert w * (w + 1) == F4.one
    assert arith(u, None, "inv") == 2 * u
    assert arith(u, u, "mul") == F9(2)
    assert arith(u, None, "pow", 4) == F9.one


def test_arith_errors(F9, F4):
    with pytest.raises(DivisionByZero):
        F9.one / F9.zero
    with pytest.raises(MixedFields):
        arith(F9.one, F4.one, "add")


def test_frobenius_examples(F9, F4):
    u = F9.parse_element("0,1")
    assert frobenius(u) == 2 * u
    assert frobenius(F9.one) == F9.one
    w = F4.parse_element("0,1")
    assert frobenius(w) == w + 1


def test_mu_subgroup_examples(F9, F4):
    u = F9.parse_element("0,1")
    assert set(mu_subgroup(F9, 4)) == {F9(1), F9(2), u, 2 * u}
    w = F4.parse_element("0,1")
    assert set(mu_subgroup(F4, 3)) == {F4.one, w, w + 1}
    with pytest.raises(NotADivisor):
        mu_subgroup(F9, 5)


def test_in_base_subfield(F9):
    u = F9.parse_element("0,1")
    assert in_base_subfield(F9(2))
    assert not in_base_subfield(u)
    assert not in_base_subfield(u + 1)


def test_base_subfield_has_q_elements():
    for p, e in [(2, 1), (2, 2), (3, 1), (5, 1), (2, 3), (3, 2)]:
        F = q_field(p, e)
        assert len(F.base_codes()) == p ** e
        assert sum(in_base_subfield(x) for x in F.elements()) == p ** e


@pytest.mark.parametrize("p,m", [(2, 4), (3, 2), (5, 2), (7, 2), (2, 6), (3, 3)])
def test_group_order_and_frobenius_laws(p, m):
    F = make_field(p, m)
    rng = random.Random(p * 100 + m)
    for _ in range(1000):
        a = FieldElement(F, rng.randrange(1, F.size))
        assert a ** (F.size - 1) == F.one
    for _ in range(200):
        a = FieldElement(F, rng.randrange(F.size))
        b = FieldElement(F, rng.randrange(F.size))
        assert frobenius(a + b) == frobenius(a) + frobenius(b)
        assert frobenius(a * b) == frobenius(a) * frobenius(b)
        x = a
        for _ in range(F.tower_degree):
            x = frobenius(x)
        assert x == a


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)])
def test_mu_subgroup_structure(p, e):
    F = q_field(p, e)
    q = F.q
    for d in (q - 1, q + 1, F.size - 1):
        if d <= 0:
            continue
        group = mu_subgroup(F, d)
        assert len(group) == d == len(set(group))
        s = set(group)
        for a in group[:6]:
            assert a.inverse() in s
            for b in group[:6]:
                assert a * b in s
    for x in mu_subgroup(F, q + 1):
        assert x ** q == x.inverse()


def test_mu_subgroup_order_is_generator_powers(F9):
    g = F9.primitive
    assert [x.code for x in mu_subgroup(F9, 4)] == [(g ** (2 * i)).code for i in range(4)]
    # smallest primitive element in code order
    smaller = [c for c in range(1, g.code) if len({F9.pow(c, k) for k in range(8)}) == 8]
    assert smaller == []


def test_vectorized_ops_match_scalar():
    F = make_field(3, 4, 2)
    rng = np.random.default_rng(1)
    a = rng.integers(0, F.size, 500)
    b = rng.integers(1, F.size, 500)
    assert list(F.vadd(a, b)) == [F.add(int(x), int(y)) for x, y in zip(a, b)]
    assert list(F.vmul(a, b)) == [F.mul(int(x), int(y)) for x, y in zip(a, b)]
    assert list(F.vdiv(a, b)) == [F.div(int(x), int(y)) for x, y in zip(a, b)]
    assert list(F.vpow(a, 7)) == [F.pow(int(x), 7) for x in a]
    assert list(F.vfrob(a)) == [F.frob(int(x)) for x in a]


def test_field_spec_roundtrip():
    F = parse_field_spec("3^2/1")
    assert F.spec_string() == "3^2/1:1,0,1"
    assert parse_field_spec(F.spec_string()) == F
    assert parse_field_spec("2^4/2").q == 4


def test_large_field_construction_is_quick():
    F = make_field(2, 20, 10)
    assert F.size == 1 << 20 and F.q == 1024


@given(st.integers(0, 80), st.integers(0, 80), st.integers(0, 80))
def test_field_axioms_f81(a, b, c):
    F = make_field(3, 4, 2)
    x, y, z = (FieldElement(F, v) for v in (a, b, c))
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == F.zero
    if x:
        assert x * x.inverse() == F.one


def test_element_parsing_and_printing(F9):
    u = F9.parse_element("0,1")
    assert str(u) == "0,1"
    assert F9.parse_element(str(2 * u + 1)) == 2 * u + 1
    assert F9(5) == F9(2)
