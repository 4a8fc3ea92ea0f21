"""Action vector field, potential solving, Hamiltonian identity."""

import itertools
import random
from fractions import Fraction

import pytest

from skelcollar.exact import LaurentPoly, RatMatrix
from skelcollar.potential import (
    NotHamiltonian,
    Potential,
    SymplecticStructure,
    VectorField,
    action_vector_field,
    hamiltonian_residual,
    solve_potential,
    symbolic_test_field,
    symplectic_gradient,
)
from skelcollar.skeleton import TorusAction, standard_action

LP = LaurentPoly


def v(name):
    return LP.var(name)


def test_action_field_standard_weights():
    f = action_vector_field(standard_action(3))
    assert f.components == (
        -v("x1"),
        -2 * v("x2"),
        -3 * v("x3"),
        v("y1"),
        2 * v("y2"),
        3 * v("y3"),
    )


def test_action_field_zero_weights_gives_zero_field():
    f = action_vector_field((0, 0, 0))
    assert f == VectorField.zero(3)


def test_action_field_single_weight():
    f = action_vector_field((1,))
    assert f.components == (-v("x1"), v("y1"))


def test_action_field_accepts_plain_sequences_and_actions():
    assert action_vector_field((4, 7)) == action_vector_field(TorusAction((4, 7)))


def test_solve_potential_standard_weights():
    for n in (1, 2, 3):
        x = action_vector_field(standard_action(n))
        pot = solve_potential(x, SymplecticStructure(n), kappa=2)
        expected = v("c")
        for i in range(1, n + 1):
            expected = expected - 2 * i * v(f"x{i}") * v(f"y{i}")
        assert pot.h == expected
        assert pot.kappa == 2


def test_solve_potential_zero_field_is_constant():
    pot = solve_potential(VectorField.zero(2), SymplecticStructure(2))
    assert pot.h == v("c")


def test_solve_potential_kappa_one():
    x = action_vector_field((3, 5))
    pot = solve_potential(x, SymplecticStructure(2), kappa=1)
    assert pot.h == v("c") - 3 * v("x1") * v("y1") - 5 * v("x2") * v("y2")
    assert pot.h.diff("x1") == -3 * v("y1")
    assert pot.h.diff("y2") == -5 * v("x2")


def test_solve_potential_rejects_mismatched_field():
    bad = VectorField((v("x1"), v("y1")))  # both coefficients +1, not a pair
    with pytest.raises(NotHamiltonian):
        solve_potential(bad, SymplecticStructure(1))
    also_bad = VectorField((v("y1"), v("x1")))
    with pytest.raises(NotHamiltonian):
        solve_potential(also_bad, SymplecticStructure(1))


def test_residual_vanishes_symbolically():
    for n in (1, 2, 3):
        x = action_vector_field(standard_action(n))
        omega = SymplecticStructure(n)
        pot = solve_potential(x, omega)
        z = symbolic_test_field(n)
        assert hamiltonian_residual(pot, x, omega, z).is_zero


def test_residual_vanishes_for_all_small_weight_vectors():
    omega = SymplecticStructure(2)
    z = symbolic_test_field(2)
    for w1, w2 in itertools.product(range(-10, 11), repeat=2):
        x = action_vector_field((w1, w2))
        pot = solve_potential(x, omega)
        assert hamiltonian_residual(pot, x, omega, z).is_zero


def test_residual_vanishes_for_sampled_weights_up_to_dimension_six():
    rng = random.Random(123)
    for n in range(3, 7):
        omega = SymplecticStructure(n)
        z = symbolic_test_field(n)
        for _ in range(5):
            w = tuple(rng.randint(-10, 10) for _ in range(n))
            x = action_vector_field(w)
            pot = solve_potential(x, omega)
            assert hamiltonian_residual(pot, x, omega, z).is_zero


def test_residual_trivial_case():
    omega = SymplecticStructure(1)
    pot = Potential(v("c"), "c", Fraction(2))
    zero = VectorField.zero(1)
    assert hamiltonian_residual(pot, zero, omega, symbolic_test_field(1)).is_zero


def test_perturbed_coefficient_leaves_residual():
    n = 2
    x = action_vector_field(standard_action(n))
    omega = SymplecticStructure(n)
    pot = solve_potential(x, omega)
    perturbed = Potential(pot.h + v("x1") * v("y1"), "c", pot.kappa)
    res = hamiltonian_residual(perturbed, x, omega, symbolic_test_field(n))
    assert not res.is_zero
    assert res == v("x1") * v("b1") + v("y1") * v("a1")


def test_symplectic_gradient_recovers_scaled_field():
    for n in (1, 2, 4):
        x = action_vector_field(standard_action(n))
        omega = SymplecticStructure(n)
        pot = solve_potential(x, omega, kappa=2)
        grad = symplectic_gradient(pot, omega)
        assert grad.components == tuple(2 * comp for comp in x.components)


def test_critical_points_are_isolated_at_origin():
    # the linear system dh = 0 in the 2n coordinates has full rank
    for n in (1, 2, 3):
        x = action_vector_field(standard_action(n))
        omega = SymplecticStructure(n)
        pot = solve_potential(x, omega)
        names = [f"x{i}" for i in range(1, n + 1)] + [f"y{i}" for i in range(1, n + 1)]
        rows = []
        for var in names:
            d = pot.h.diff(var)
            rows.append(
                [Fraction(d.terms.get((1,), 0)) if d.variables == (w,) else Fraction(0) for w in names]
            )
        m = RatMatrix.from_rows(rows)
        assert m.kernel() == ()


def test_potential_validates_bilinearity():
    with pytest.raises(ValueError):
        Potential(v("c") + v("x1") ** 2, "c", Fraction(2))


def test_pairing_is_antisymmetric():
    omega = SymplecticStructure(2)
    f = symbolic_test_field(2)
    g = VectorField(
        (v("p1"), v("p2"), v("q1"), v("q2"))
    )
    assert omega.pairing(f, g) == -omega.pairing(g, f)
