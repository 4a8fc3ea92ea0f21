"""Core arithmetic: Laurent polynomials and exact linear algebra."""

import random
from fractions import Fraction

import pytest

from skelcollar.exact import (
    InconsistentSystem,
    LaurentPoly,
    NotInvertible,
    RatMatrix,
    ZeroIntoNegativePower,
    iter_exponent_boxes,
    poly_mat,
    poly_mat_det,
    poly_mat_identity,
    poly_mat_mul,
    poly_mat_substitute,
)

LP = LaurentPoly


def rand_poly(rng, names=("x", "y"), max_terms=4, span=3):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exps = tuple(rng.randint(-span, span) for _ in names)
        terms[exps] = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    return LP(names, terms)


def test_canonical_form_drops_zeros_and_unused_vars():
    p = LP(("y", "x"), {(0, 2): 3, (0, 0): 0})
    assert p.variables == ("x",)
    assert p == LP.var("x") ** 2 * 3


def test_variables_sorted_and_equality_is_structural():
    p = LP(("b", "a"), {(1, 2): 1})
    q = LP(("a", "b"), {(2, 1): 1})
    assert p == q
    assert hash(p) == hash(q)


def test_addition_merges_and_cancels():
    x = LP.var("x")
    assert x + (-x) == LP.zero()
    assert (x + 1) + (x - 1) == 2 * x


def test_ring_axioms_randomized():
    rng = random.Random(20260816)
    for _ in range(40):
        a, b, c = (rand_poly(rng) for _ in range(3))
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a + LP.zero() == a
        assert a * LP.const(1) == a


def test_negative_powers_are_exact():
    x = LP.var("x")
    assert x**-3 * x**3 == LP.const(1)
    assert (2 * x).inverse() == LP(("x",), {(-1,): Fraction(1, 2)})
    with pytest.raises(NotInvertible):
        (x + 1).inverse()


def test_substitute_matches_evaluate():
    rng = random.Random(7)
    for _ in range(30):
        p = rand_poly(rng)
        vals = {"x": Fraction(rng.randint(1, 5)), "y": Fraction(-rng.randint(1, 5))}
        direct = p.evaluate(vals)
        via_sub = p.substitute({k: LP.const(v) for k, v in vals.items()})
        assert via_sub.is_constant and via_sub.constant_value() == direct


def test_substitute_composes():
    x, y = LP.var("x"), LP.var("y")
    p = x**2 * y - y**-1
    q = p.substitute({"x": y + 1})
    assert q == (y + 1) ** 2 * y - y**-1


def test_zero_into_negative_power_raises():
    p = LP.var("x") ** -1
    with pytest.raises(ZeroIntoNegativePower):
        p.substitute({"x": LP.zero()})
    with pytest.raises(ZeroIntoNegativePower):
        p.evaluate({"x": 0})


def test_zero_into_positive_power_is_fine():
    p = LP.var("x") ** 2 + 5
    assert p.substitute({"x": LP.zero()}) == LP.const(5)


def test_diff_product_rule():
    rng = random.Random(11)
    for _ in range(25):
        a, b = rand_poly(rng), rand_poly(rng)
        lhs = (a * b).diff("x")
        rhs = a.diff("x") * b + a * b.diff("x")
        assert lhs == rhs


def test_diff_negative_exponent():
    x = LP.var("x")
    assert (x**-2).diff("x") == -2 * x**-3


def test_unit_monomial_detection():
    x, u = LP.var("x"), LP.var("u")
    assert (3 * x**2).is_unit_monomial()
    assert not (x + 1).is_unit_monomial()
    assert (x * u).is_unit_monomial({"x", "u"})
    assert not (x * u).is_unit_monomial({"x"})
    assert LP.const(5).is_unit_monomial(set())


def test_homogeneous_degree():
    x, y = LP.var("x"), LP.var("y")
    assert (x * y + y**2).homogeneous_degree(["x", "y"]) == 2
    assert (x + y**2).homogeneous_degree(["x", "y"]) is None
    assert (x * y + x).homogeneous_degree(["x"]) == 1


def test_json_round_trip():
    rng = random.Random(3)
    for _ in range(20):
        p = rand_poly(rng)
        assert LP.from_json(p.to_json()) == p
    third = LP(("z",), {(-1,): Fraction(1, 3)})
    assert LP.from_json(third.to_json()) == third


def test_str_is_readable():
    x, y = LP.var("x"), LP.var("y")
    assert str(x**2 - y) in ("x^2 - y", "-y + x^2")
    assert str(LP.zero()) == "0"
    assert str(LP.const(Fraction(-1, 2))) == "-1/2"


def test_immutable():
    p = LP.var("x")
    with pytest.raises(AttributeError):
        p.variables = ("y",)


# -- RatMatrix -----------------------------------------------------------------


def test_solve_small_system():
    m = RatMatrix.from_rows([[1, 2], [3, 4]])
    assert m.solve([5, 11]) == (Fraction(1), Fraction(2))


def test_solve_rational_entries():
    m = RatMatrix.from_rows([[Fraction(1, 2), Fraction(1, 3)], [1, 1]])
    x = m.solve([1, Fraction(5, 2)])
    assert m.mul_vec(x) == (Fraction(1), Fraction(5, 2))


def test_solve_inconsistent():
    m = RatMatrix.from_rows([[1, 1], [2, 2]])
    with pytest.raises(InconsistentSystem):
        m.solve([1, 3])


def test_solve_underdetermined_returns_particular_solution():
    m = RatMatrix.from_rows([[1, 1, 1]])
    x = m.solve([6])
    assert m.mul_vec(x) == (Fraction(6),)


def test_rank_and_kernel_dimensions():
    rng = random.Random(99)
    for _ in range(30):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        m = RatMatrix.from_rows(
            [[Fraction(rng.randint(-3, 3)) for _ in range(c)] for _ in range(r)]
        )
        rk = m.rank()
        ker = m.kernel()
        assert rk + len(ker) == c
        for v in ker:
            assert m.mul_vec(v) == (Fraction(0),) * r


def test_kernel_of_known_matrix():
    m = RatMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    (v,) = m.kernel()
    assert m.mul_vec(v) == (Fraction(0), Fraction(0))
    assert v != (0, 0, 0)


def test_identity_and_rank_full():
    assert RatMatrix.identity(4).rank() == 4
    assert RatMatrix.identity(4).kernel() == ()


# -- polynomial matrices --------------------------------------------------------


def test_poly_mat_mul_and_identity():
    x = LP.var("x")
    a = poly_mat([[x, 1], [0, x**-1]])
    i2 = poly_mat_identity(2)
    assert poly_mat_mul(a, i2) == a
    assert poly_mat_mul(i2, a) == a


def test_poly_mat_det():
    z = LP.var("z")
    m = poly_mat([[z**2, z], [0, z**-2]])
    assert poly_mat_det(m) == LP.const(1)
    m3 = poly_mat([[1, 2, 3], [0, 1, 4], [5, 6, 0]])
    assert poly_mat_det(m3) == LP.const(1)


def test_poly_mat_substitute():
    z, w = LP.var("z"), LP.var("w")
    m = poly_mat([[z, 0], [0, z**-1]])
    n = poly_mat_substitute(m, {"z": w**2})
    assert n == poly_mat([[w**2, 0], [0, w**-2]])


def test_iter_exponent_boxes():
    pts = list(iter_exponent_boxes((-1, 1), (0, 1)))
    assert len(pts) == 6
    assert (-1, 0) in pts and (1, 1) in pts
    assert list(iter_exponent_boxes()) == [()]
