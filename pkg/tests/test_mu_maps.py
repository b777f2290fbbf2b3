import random

import pytest

from permpoly.errors import IndeterminatePoint
from permpoly.families import ex1_pair, grado3_pair, grado3_raw, _grado3_i
from permpoly.field_core import FieldElement
from permpoly.mu_maps import (
    H_offdiagonal_base_points,
    H_sigma_gap_rootfree,
    bijects_mu_to_line,
    brute_force_degree_one,
    classify_degree_one,
    enumerate_degree_one_line_bijections,
    enumerate_degree_one_mu_bijections,
    function_key,
    mu_table,
    offdiagonal_mu_points,
    permutes_mu,
    roots_in_mu,
    three_way_decomposition,
)
from permpoly.poly_core import Polynomial, RationalMap

from helpers import q_field, rand_elt, rand_mu, rand_poly


def X(F):
    return Polynomial.x(F)


def test_beta_over_x_permutes(F9):
    for b in F9.mu_codes(4):
        R = RationalMap(Polynomial.constant(F9, FieldElement(F9, b)), X(F9))
        assert permutes_mu(R)
        assert offdiagonal_mu_points(R) == []


def test_gamma_shape_permutes(F9, rng):
    x = X(F9)
    mu = set(F9.mu_codes(4))
    for _ in range(10):
        b = rand_mu(F9, rng)
        g = FieldElement(F9, rng.choice([c for c in range(1, 9) if c not in mu]))
        R = RationalMap(x - g.frobenius() * b, x.scale(g) - b)
        assert permutes_mu(R)
        assert offdiagonal_mu_points(R) == []


def test_grado3_map_permutes(F49):
    L, M = grado3_pair(F49, F49.one, F49.zero, F49.zero)
    assert permutes_mu(RationalMap(L, M))


def test_degenerate_grado3_has_collisions_or_poles(F49):
    # A1 (3 A1 - 2 B1) = 0 through B1 = 3 A1 / 2
    A1 = F49.one
    B1 = F49(3) / F49(2)
    i = _grado3_i(F49)
    L, M = grado3_raw(F49, A1, B1, F49.zero, i)
    R = RationalMap(L, M)
    try:
        assert not permutes_mu(R)
    except IndeterminatePoint:
        pass


def test_line_bijection_examples(F9, F49):
    u = F9.parse_element("0,1")
    x = X(F9)
    rho, eps = u, F9.one
    R = RationalMap(x.scale(rho) + rho.frobenius(), x.scale(eps) + eps.frobenius())
    assert bijects_mu_to_line(R)
    L, M, _ = ex1_pair(F49)
    assert bijects_mu_to_line(RationalMap(L, M))
    assert not bijects_mu_to_line(RationalMap(x, Polynomial.constant(F9, 1)))


def test_constant_map_hits_every_offdiagonal_pair(F9):
    x = X(F9)
    # L = M vanish together at -1, which lies in mu_4
    R = RationalMap(x + 1, x + 1)
    pts = offdiagonal_mu_points(RationalMap(Polynomial.constant(F9, 1), Polynomial.constant(F9, 1)))
    assert len(pts) == 4 * 3
    with pytest.raises(IndeterminatePoint):
        permutes_mu(R)


def test_offdiagonal_points_are_sorted(F9):
    R = RationalMap(X(F9) ** 2, Polynomial.constant(F9, 1))
    pts = offdiagonal_mu_points(R)
    assert pts and pts == sorted(pts, key=lambda ab: (ab[0].code, ab[1].code))
    for a, b in pts:
        assert a != b and a ** 2 == b ** 2


def test_H_base_points_examples():
    F9 = q_field(3, 1)
    d = F9.parse_element("0,1")
    x = X(F9)
    assert H_offdiagonal_base_points(x ** 1 - d) == []
    F25 = q_field(5, 1)
    u = F25.parse_element("0,1")
    y = X(F25)
    assert H_offdiagonal_base_points(y ** 3 - u) == []
    assert H_offdiagonal_base_points(y ** 2 - u) != []
    # search-h instance over F_9
    f, g, gam = x ** 2 + 1, x, F9.parse_element("0,1")
    H = g * f - f.scale(gam)
    assert H_offdiagonal_base_points(H) == []
    assert H_sigma_gap_rootfree(H)


def test_H_sigma_gap_examples(F9):
    x = X(F9)
    d = F9.parse_element("1,1")
    assert H_sigma_gap_rootfree(x ** 3 - d)
    assert not H_sigma_gap_rootfree(x ** 3 + x + 2)


def test_xi_zero_counts_roots(F9):
    # H with a root in GF(q) pairs that root with every other base element
    x = X(F9)
    pts = H_offdiagonal_base_points(x - 1)
    assert (F9.one, F9.zero) in pts and (F9.one, F9(2)) in pts


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1)])
def test_degree_one_classifications(p, e):
    F = q_field(p, e)
    q = F.q
    for target in ("mu", "line"):
        res = classify_degree_one(F, target)
        assert res["missing_from_closed_form"] == []
        assert res["extra_in_closed_form"] == []
        assert res["closed_form_count"] == q * (q * q - 1)


def test_closed_forms_satisfy_predicates(F9):
    for R in enumerate_degree_one_mu_bijections(F9):
        assert permutes_mu(R)
    for R in enumerate_degree_one_line_bijections(F9):
        assert bijects_mu_to_line(R)
        assert not permutes_mu(R)


def test_brute_force_representatives_are_normalized(F9):
    reps = brute_force_degree_one(F9, "mu")
    for a, b, c, d in reps.values():
        assert c == 1 or (c == 0 and d == 1)


@pytest.mark.parametrize("p,e", [(3, 1), (2, 2), (5, 1), (2, 3)])
def test_three_way_decomposition(p, e):
    F = q_field(p, e)
    rng = random.Random(5 * p + e)
    for _ in range(80):
        d = rng.randrange(1, 4)
        R = RationalMap(rand_poly(F, rng, d), rand_poly(F, rng, d))
        if any(R.num(z).code == 0 and R.den(z).code == 0 for z in
               (FieldElement(F, c) for c in F.mu_codes(F.q + 1))):
            with pytest.raises(IndeterminatePoint):
                permutes_mu(R)
            continue
        parts = three_way_decomposition(R)
        assert permutes_mu(R) == all(parts.values())


def test_roots_in_mu(F9):
    x = X(F9)
    assert roots_in_mu(x - 1) == [F9.one]
    assert roots_in_mu(x ** 2 + x + 2) == []
    assert len(roots_in_mu(x ** 4 - 1)) == 4


def test_function_key_and_table(F9):
    R = RationalMap(X(F9) + 1, X(F9) - 1)
    key = function_key(R)
    assert F9.size in key  # pole at 1
    rows = mu_table(R, F9)
    assert [r["value"] for r in rows].count("inf") == 1
    assert len(mu_table(None, F9)) == 4


def test_random_elements_stay_in_field(F9, rng):
    assert 0 <= rand_elt(F9, rng).code < 9
