"""Free quadratic space: anchors, exact relations, moment formulas."""

import numpy as np
import pytest

from qwnlab.algebra import FunctionAlgebra, MatrixAlgebra, random_element
from qwnlab.bosonic import ANNIHILATION, CREATION, NUMBER
from qwnlab.combinatorics import cumulant_weight
from qwnlab.free import FreeSpace
from qwnlab.graded import GradedVector


def one_point_space(gamma=1.0, max_grade=4):
    return FreeSpace(FunctionAlgebra([1.0]), max_grade, gamma=gamma)


def test_one_point_gram_anchors():
    space = one_point_space()
    # grade 1: gamma * state(chi * chi) = 1
    assert space.gram(1)[0, 0] == pytest.approx(1.0)
    # grade 2: the two interval splittings contribute 1 each
    assert space.gram(2)[0, 0] == pytest.approx(2.0)


def test_one_point_annihilation_action():
    space = one_point_space()
    out = space.operator_matrix(ANNIHILATION, np.ones(1), 2) @ np.ones(1)
    assert out[0] == pytest.approx(2.0)


def test_exact_operator_relations():
    alg = FunctionAlgebra([0.5, 1.0])
    space = FreeSpace(alg, max_grade=3, gamma=0.75)
    rng = np.random.default_rng(6)
    phi = random_element(alg, rng, dyadic=True)
    psi = random_element(alg, rng, dyadic=True)
    zeta = random_element(alg, rng, dyadic=True)
    pairing = 0.75 * alg.state(alg.mul(alg.star(psi), phi))
    for k in range(3):
        size = alg.dim**k
        contract = space.operator_matrix(
            ANNIHILATION, psi, k + 1
        ) @ space.operator_matrix(CREATION, phi, k)
        expected = pairing * np.eye(size) + space.operator_matrix(
            NUMBER, alg.mul(alg.star(psi), phi), k
        )
        assert np.allclose(contract, expected, atol=1e-13)
        shift = space.operator_matrix(NUMBER, zeta, k + 1) @ space.operator_matrix(
            CREATION, phi, k
        )
        assert np.allclose(
            shift,
            space.operator_matrix(CREATION, alg.mul(zeta, phi), k),
            atol=1e-13,
        )


def test_number_of_unit_is_identity_above_vacuum():
    space = FreeSpace(FunctionAlgebra([0.5, 0.25]), max_grade=3)
    one = space.algebra.unit()
    for k in range(1, 4):
        assert np.allclose(
            space.operator_matrix(NUMBER, one, k), np.eye(2**k)
        )
    assert np.allclose(space.operator_matrix(NUMBER, one, 0), np.zeros((1, 1)))


def test_field_moment_anchors():
    space = one_point_space(gamma=0.5, max_grade=3)
    chi = np.ones(1)
    s = 1.5
    # second moment: gamma * state(chi^2); third: s * gamma * state(chi^3)
    assert space.moment_operator(s, [chi, chi]) == pytest.approx(0.5)
    assert space.moment_operator(s, [chi, chi, chi]) == pytest.approx(s * 0.5)


def test_moment_operator_equals_noncrossing_formula():
    alg = MatrixAlgebra(2)
    space = FreeSpace(alg, max_grade=3, gamma=0.5)
    rng = np.random.default_rng(13)
    symbols = [random_element(alg, rng) for _ in range(5)]
    op = space.moment_operator(2.0, symbols)
    formula = space.moment_formula(2.0, symbols)
    assert op == pytest.approx(formula, rel=1e-12)


def test_cumulant_closed_form_matches_weight():
    space = one_point_space(gamma=0.75)
    chi = np.ones(1)
    for n in range(2, 6):
        assert space.cumulant_closed_form(2.0, [chi] * n) == pytest.approx(
            0.75 * cumulant_weight(n, 2.0)
        )


def test_centered_products_of_disjoint_symbols_vanish():
    # freeness: alternating centered factors from disjointly supported
    # symbol families have vacuum moment zero
    alg = FunctionAlgebra([0.5, 0.5, 1.0])
    space = FreeSpace(alg, max_grade=3)
    rng = np.random.default_rng(17)
    a = random_element(alg, rng, support=[0])
    b = random_element(alg, rng, support=[1, 2])
    value = space.centered_product_expectation(1.0, [[a], [b], [a]])
    assert abs(value) < 1e-12


def test_gram_positive_for_matrix_algebra():
    space = FreeSpace(MatrixAlgebra(2), max_grade=3)
    for k in range(1, 4):
        gram = space.gram(k)
        eigs = np.linalg.eigvalsh(0.5 * (gram + gram.conj().T))
        assert eigs.min() > -1e-10


def test_vacuum_expectation_word_order():
    alg = FunctionAlgebra([0.5, 0.25])
    space = FreeSpace(alg, max_grade=2, gamma=2.0)
    rng = np.random.default_rng(3)
    phi = random_element(alg, rng)
    psi = random_element(alg, rng)
    measured = space.vacuum_expectation(((ANNIHILATION, phi), (CREATION, psi)))
    expected = 2.0 * alg.state(alg.mul(alg.star(phi), psi))
    assert measured == pytest.approx(expected)
    # creation alone has no vacuum component
    assert space.vacuum_expectation(((CREATION, phi),)) == 0.0
