"""Normal-ordering engine, classical limits, and the obstruction certificate.

Hand-computed anchors used below, all over a single point of weight t with
the abstract relation table at its defaults (gamma0 = 1, scalar 2, number 4,
number shift 2):

- one swap of (annihilation, creation) produces the reversed word, the
  scalar 2 * gamma0 * <phi, psi>, and 4 times a number operator, in one step;
- the second field moment is 2 * gamma0 * t (only the scalar from one swap
  survives at the vacuum);
- the third field moment is s * shift * 2 * gamma0 * mu(chi^3): at s = 2
  this is 8 * gamma0 * t abstractly and 4 * gamma0 * t with the measured
  table, whose number shift is 1;
- the obstruction quadratic form at (gamma0, l, c) = (1, 0.5, -2) evaluates
  to -1 with minimizer -2 and minimum -1.
"""

import numpy as np
import pytest

from qwnlab.rewrite import (
    ANNIHILATION,
    CREATION,
    LINEAR_ANNIHILATION,
    LINEAR_CREATION,
    NUMBER,
    MAX_WORD_LENGTH,
    NormalForm,
    RelationTable,
    RewriteBudgetError,
    RewriteEngine,
    SymbolTable,
    UnsupportedRelationError,
    check_engine_vs_operators,
    check_nogo,
    check_nogo_grid,
    check_strategy_independence,
    check_termination,
    gamma_moment_check,
    make_function_engine,
    nogo_certificate,
)
from qwnlab.algebra import FunctionAlgebra


WEIGHTS = [0.5, 0.25]


def make_engine(table=None):
    return make_function_engine(WEIGHTS, table)


def test_single_swap_terms_and_step_count():
    engine = make_engine()
    syms = engine.symbols
    phi = syms.intern(np.array([1.0, 2.0]))
    psi = syms.intern(np.array([0.5, -1.0]))
    form = engine.normal_order(((ANNIHILATION, phi), (CREATION, psi)))
    assert form.steps == 1
    pairing = 0.5 * 1.0 * 0.5 + 0.25 * 2.0 * (-1.0)
    number_symbol = syms.mul(syms.star(phi), psi)
    expected = {
        ((CREATION, psi), (ANNIHILATION, phi)): 1.0 + 0j,
        (): 2.0 * pairing + 0j,
        ((NUMBER, number_symbol),): 4.0 + 0j,
    }
    assert form.terms == expected


def test_normal_word_is_untouched():
    engine = make_engine()
    sid = engine.symbols.intern(np.array([1.0, 1.0]))
    word = ((CREATION, sid), (NUMBER, sid), (ANNIHILATION, sid))
    form = engine.normal_order(word, coefficient=3.0)
    assert form.steps == 0
    assert form.terms == {word: 3.0 + 0j}


def test_number_operators_commute():
    engine = make_engine()
    x = engine.symbols.intern(np.array([1.0, 0.0]))
    y = engine.symbols.intern(np.array([0.0, 1.0]))
    one_way = engine.normal_order(((NUMBER, x), (NUMBER, y)))
    other = engine.normal_order(((NUMBER, y), (NUMBER, x)))
    assert one_way.terms == other.terms


def test_zero_inputs_short_circuit():
    engine = make_engine()
    zero = engine.symbols.intern(np.zeros(2))
    live = engine.symbols.intern(np.ones(2))
    form = engine.normal_order(((ANNIHILATION, zero), (CREATION, live)))
    assert form.terms == {} and form.steps == 0
    form = engine.normal_order(((ANNIHILATION, live), (CREATION, live)), 0.0)
    assert form.terms == {} and form.steps == 0


def test_word_validation():
    engine = make_engine()
    sid = engine.symbols.intern(np.ones(2))
    with pytest.raises(ValueError):
        engine.normal_order((("q", sid),))
    long_word = ((NUMBER, sid),) * (MAX_WORD_LENGTH + 1)
    with pytest.raises(ValueError):
        engine.normal_order(long_word)
    with pytest.raises(ValueError):
        engine.normal_order(((NUMBER, sid), (NUMBER, sid)), strategy="random")


def test_budget_error():
    engine = make_engine()
    sid = engine.symbols.intern(np.ones(2))
    word = ((ANNIHILATION, sid), (CREATION, sid))
    with pytest.raises(RewriteBudgetError):
        engine.normal_order(word, max_steps=0)


def test_unsupported_pairs():
    engine = make_engine()
    sid = engine.symbols.intern(np.ones(2))
    with pytest.raises(UnsupportedRelationError, match=r"\(a, n\)"):
        engine.normal_order(((LINEAR_ANNIHILATION, sid), (NUMBER, sid)))
    with pytest.raises(UnsupportedRelationError, match=r"\(n, a\*\)"):
        engine.normal_order(((NUMBER, sid), (LINEAR_CREATION, sid)))


def test_engine_requires_commutative_backing():
    from qwnlab.algebra import MatrixAlgebra

    with pytest.raises(ValueError):
        SymbolTable(MatrixAlgebra(2))


def test_symbol_interning_flushes_negative_zero():
    syms = SymbolTable(FunctionAlgebra([1.0]))
    plain = syms.intern(np.array([0.0]))
    signed = syms.intern(np.array([-0.0]))
    assert plain == signed


def test_product_interning_is_order_independent():
    # elementwise complex products may differ by an ulp between x*y and y*x
    # under fused multiply-adds; the table must intern both orders to the
    # same id or normal forms stop cancelling
    syms = SymbolTable(FunctionAlgebra([0.5, 0.25, 0.125]))
    rng = np.random.default_rng(11)
    for _ in range(50):
        a = syms.intern(rng.standard_normal(3) + 1j * rng.standard_normal(3))
        b = syms.intern(rng.standard_normal(3) + 1j * rng.standard_normal(3))
        assert syms.mul(a, b) == syms.mul(b, a)


def test_field_moment_anchors():
    t = 0.5
    engine = make_function_engine([t])
    chi = engine.symbols.intern(np.ones(1))
    assert engine.field_moment((chi,)) == pytest.approx(0.0)
    assert engine.field_moment((chi, chi)) == pytest.approx(2.0 * t)
    assert engine.field_moment((chi,) * 3) == pytest.approx(8.0 * t)
    measured = make_function_engine([t], RelationTable.from_measured())
    chi_m = measured.symbols.intern(np.ones(1))
    assert measured.field_moment((chi_m,) * 3) == pytest.approx(4.0 * t)


def test_commuting_family_with_full_precision_inputs():
    # regression: these inputs are not dyadic, so exact cancellation leans
    # on the order-independent product interning above
    engine = make_engine()
    rng = np.random.default_rng(3)
    phi = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    psi = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    records = engine.check_commuting_family(2.0, phi, psi)
    assert [r.name for r in records] == [
        "classical.commuting_family",
        "classical.field_normality",
    ]
    for record in records:
        assert record.status == "pass", record
        assert record.residual == 0.0


def test_factorization_check_and_validation():
    engine = make_engine()
    f1 = np.array([1.5, 0.0])
    f2 = np.array([0.0, -0.75])
    records = engine.check_factorization(2.0, f1, f2, (2, 2))
    assert all(r.status == "pass" for r in records)
    with pytest.raises(ValueError):
        engine.check_factorization(2.0, f1, np.array([1.0, 1.0]), (2, 2))
    with pytest.raises(ValueError):
        engine.check_factorization(2.0, f1, f2, (5, 4))


def test_strategy_independence_and_termination():
    rng = np.random.default_rng(9)
    for record in check_strategy_independence(rng, trials=4, max_len=5):
        assert record.status == "pass", record
    for record in check_termination(rng, words=200, max_len=8):
        assert record.status == "pass", record


def test_engine_matches_operator_matrices():
    rng = np.random.default_rng(13)
    for record in check_engine_vs_operators(rng, trials=6, max_len=5):
        assert record.status == "pass", record


def test_gamma_moments_abstract_table():
    records = gamma_moment_check(1.0, 1.0)
    by_name = {}
    for record in records:
        by_name.setdefault(record.name, record)
    assert by_name["classical.gamma_moments"].status == "pass"
    assert by_name["classical.gamma_literal_scaling"].status == "reported"
    anchor = by_name["classical.chi_squared_third_moment"]
    assert anchor.status == "pass"
    assert anchor.residual == 0.0
    # the unit chi-squared anchor only applies at gamma0 = t = 1
    names = [r.name for r in gamma_moment_check(2.0, 1.5)]
    assert "classical.chi_squared_third_moment" not in names
    assert "classical.gamma_moments" in names


def test_gamma_moments_at_other_parameters():
    for gamma0, t in ((2.0, 1.5), (1.0, 3.0)):
        records = gamma_moment_check(gamma0, t)
        matched = [r for r in records if r.name == "classical.gamma_moments"]
        assert matched and matched[0].status == "pass"
    with pytest.raises(ValueError):
        gamma_moment_check(1.0, 1.0, m_max=7)


def test_nogo_certificate_anchor():
    value, minimizer, minimum = nogo_certificate(1.0, 0.5, -2.0)
    assert (value, minimizer, minimum) == (-1.0, -2.0, -1.0)
    with pytest.raises(ValueError):
        nogo_certificate(1.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        nogo_certificate(-1.0, 0.5, 1.0)


def test_nogo_checks_pass():
    for record in check_nogo(1.0, 0.5, -2.0):
        assert record.status == "pass", record
    # positive side of the threshold: minimum is nonnegative
    _, _, minimum = nogo_certificate(0.5, 4.0, 0.0)
    assert minimum > 0
    rng = np.random.default_rng(5)
    for record in check_nogo_grid(rng, pairs=12):
        assert record.status == "pass", record


def test_normal_form_helpers():
    form = NormalForm()
    assert form.coefficient() == 0j
    assert form.max_abs_coefficient() == 0.0
    form = NormalForm(terms={(): 2.0 + 0j, (("n", 0),): -3.0 + 0j})
    assert form.coefficient() == 2.0 + 0j
    assert form.max_abs_coefficient() == 3.0


def test_vacuum_moment_of_quadratic_square():
    engine = RewriteEngine(SymbolTable(FunctionAlgebra([0.25, 0.75])))
    sid = engine.symbols.intern(np.array([1.0, 1.0]))
    word = (
        (ANNIHILATION, sid),
        (CREATION, sid),
    )
    assert engine.vacuum_moment(word) == pytest.approx(2.0)
    assert engine.vacuum_moment(((CREATION, sid), (ANNIHILATION, sid))) == 0j
