import itertools
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from ckhopf.catalog import build_so_z3, coupling, galilei, permute_indices, so3_seed
from ckhopf.coeff import JAssignment, JMonomial, JPolynomial, SingularityError, ZSeries
from ckhopf.hopf import (
    HOPF_CHECKS,
    Element,
    QuantumAlgebra,
    Tensor,
    antipode_square_report,
    check_hopf_axioms,
    classical_lie_algebra,
    contract_hopf,
    extend_antipode,
    extend_coproduct,
    extend_counit,
    is_primitive,
    multiply,
    normal_form,
    quantum_from_json,
    quantum_to_json,
    tensor_multiply,
    transform_hopf,
)
from ckhopf.liealg import ck_multiplier, ck_orthogonal, parse_pair_label
from oracles import GENS, element_terms, power_series_element, primitive, published_galilei, published_so_z3

N = 6
X01, X02, X12 = 0, 1, 2
Q02 = build_so_z3("X02")


def undeformed(corrupt=None):
    rel = {("X01", "X02"): {(X12,): 1}, ("X02", "X12"): {(X01,): 1}, ("X12", "X01"): {(X02,): 1}}
    antipode = {g: {(i,): -1} for i, g in enumerate(GENS)}
    if corrupt:
        antipode[corrupt] = {(GENS.index(corrupt),): 1}
    return QuantumAlgebra(GENS, rel, {g: primitive(g, N) for g in GENS}, {g: 0 for g in GENS}, antipode, N)


def raw(*word):
    return Element({tuple(word): 1}, N)


# --- normal form -------------------------------------------------------------


def test_swap_uses_bracket():
    j1 = sp.Symbol("j1")
    expected = Element(element_terms([(("X01", "X02"), 1), (("X12",), -(j1**2))], N), N)
    assert normal_form(Q02, raw(X02, X01)) == expected


def test_swap_with_series_valued_bracket():
    z = sp.Symbol("z")
    pieces = [(("X01", "X12"), 1)] + power_series_element("X02", lambda u: sp.sinh(u) / z, N)
    out = normal_form(Q02, raw(X12, X01))
    assert out == Element(element_terms(pieces, N), N)
    assert out.terms[(X02, X02, X02)] == ZSeries({2: JPolynomial.constant(Fraction(1, 6))}, N)


def test_ordered_word_is_unchanged():
    x = raw(X01, X01, X12)
    assert x.is_normal()
    assert normal_form(Q02, x) == x


elements = st.lists(
    st.tuples(st.lists(st.integers(0, 2), max_size=3).map(tuple), st.integers(-3, 3).filter(bool)),
    min_size=1,
    max_size=3,
).map(lambda ts: Element({w: c for w, c in ts}, N))


@given(elements)
@settings(max_examples=100, deadline=None)
def test_normal_form_is_idempotent(x):
    once = normal_form(Q02, x)
    assert once.is_normal()
    assert normal_form(Q02, once) == once


@pytest.mark.parametrize("primitive_label", ["X01", "X02", "X12"])
def test_rewriting_is_confluent_on_length_three_words(primitive_label):
    Q = build_so_z3(primitive_label)
    for w in itertools.product(range(3), repeat=3):
        x = raw(*w)
        ins = normal_form(Q, x, "insertion")
        assert normal_form(Q, x, "leftmost") == ins
        assert normal_form(Q, x, "rightmost") == ins


def test_unknown_strategy():
    with pytest.raises(ValueError):
        normal_form(Q02, raw(X12, X01), "random")


words = st.lists(st.integers(0, 2), max_size=3).map(lambda w: raw(*w))


@given(words, words, words)
@settings(max_examples=100, deadline=None)
def test_multiplication_is_associative(x, y, w):
    assert multiply(Q02, multiply(Q02, x, y), w) == multiply(Q02, x, multiply(Q02, y, w))


# --- products ----------------------------------------------------------------


def test_tensor_legs_multiply_independently():
    a = Tensor(2, {((X01,), ()): 1}, N)
    b = Tensor(2, {((), (X01,)): 1}, N)
    assert tensor_multiply(Q02, a, b) == Tensor(2, {((X01,), (X01,)): 1}, N)
    c = Tensor(2, {((), (X02,)): 1}, N)
    d = Tensor(2, {((X02,), ()): 1}, N)
    assert tensor_multiply(Q02, c, d) == Tensor(2, {((X02,), (X02,)): 1}, N)


def test_tensor_rank_mismatch():
    with pytest.raises(ValueError):
        tensor_multiply(Q02, Tensor.unit(2, N), Tensor.unit(3, N))


def test_exponentials_are_inverse():
    plus = Element(element_terms(power_series_element("X02", lambda u: sp.exp(u / 2), N), N), N)
    minus = Element(element_terms(power_series_element("X02", lambda u: sp.exp(-u / 2), N), N), N)
    assert multiply(Q02, minus, plus) == Element.one(N)


# --- Hopf maps on words ------------------------------------------------------


def test_counit_of_generators():
    for g in GENS:
        assert extend_counit(Q02, Q02.gen(g)).is_zero()
    assert extend_counit(Q02, Element.one(N)) == ZSeries.one(N)


@pytest.mark.parametrize("primitive_label", ["X01", "X02", "X12"])
def test_counit_annihilates_nonempty_words(primitive_label):
    Q = build_so_z3(primitive_label)
    for k in (1, 2, 3):
        for w in itertools.combinations_with_replacement(range(3), k):
            assert extend_counit(Q, raw(*w)).is_zero()


def test_primitive_coproduct():
    assert extend_coproduct(Q02, Q02.gen("X02")) == primitive("X02", N)
    assert is_primitive(Q02, "X02") and not is_primitive(Q02, "X01")
    assert extend_coproduct(Q02, Element.one(N)) == Tensor.unit(2, N)


def test_antipode_is_anti_homomorphism():
    lhs = extend_antipode(Q02, raw(X01, X02))
    rhs = multiply(Q02, Q02.antipode[X02], Q02.antipode[X01])
    assert lhs == rhs
    assert extend_antipode(Q02, Element.one(N)) == Element.one(N)


# --- axioms ------------------------------------------------------------------


@pytest.mark.parametrize("primitive_label", ["X01", "X02", "X12"])
def test_deformed_algebras_are_hopf(primitive_label):
    report = check_hopf_axioms(build_so_z3(primitive_label))
    assert set(report.checks) == set(HOPF_CHECKS)
    assert report.passed, report.lines()


def test_undeformed_limit_is_hopf():
    assert check_hopf_axioms(undeformed()).passed


def test_corrupted_antipode_breaks_h3():
    report = check_hopf_axioms(undeformed(corrupt="X01"))
    # both sides of the two-sided form equal 2 X01, so only the standard form sees it
    assert report["H3-paper"].passed
    assert not report["H3-standard"].passed
    assert any("X01" in where for where, _ in report["H3-standard"].failures)
    assert report["H1"].passed


def test_corrupted_bracket_breaks_coproduct_homomorphism():
    Q = Q02
    rel = {(Q.generators[b], Q.generators[a]): v for (b, a), v in Q.relations.items()}
    # drop the sinh tail: the deformed coproduct no longer respects the relation
    rel[("X12", "X01")] = Element({(X02,): 1}, N)
    bad = QuantumAlgebra(
        GENS, rel,
        {Q.generators[i]: t for i, t in Q.coproduct.items()},
        {Q.generators[i]: c for i, c in Q.counit.items()},
        {Q.generators[i]: x for i, x in Q.antipode.items()},
        N,
    )
    assert not check_hopf_axioms(bad)["hom-coproduct"].passed


# --- transformation and contraction ------------------------------------------


SCALING = {g: ck_multiplier(*parse_pair_label(g)) for g in GENS}


def test_identity_transform():
    seed = so3_seed()
    assert transform_hopf(seed, {}, JMonomial()) == seed


def test_transform_reproduces_x02_coupling():
    Q = transform_hopf(so3_seed(), SCALING, JMonomial(1, (1, 1)))
    assert Q == published_so_z3("X02")


def test_transform_of_permuted_seed():
    seed = permute_indices(so3_seed(), (0, 2, 1))
    Q = transform_hopf(seed, SCALING, JMonomial(1, (1,)))
    assert Q == published_so_z3("X01")
    assert coupling("X01").z_multiplier == JMonomial(1, (1,))


def test_classical_part_is_ck_algebra():
    assert classical_lie_algebra(Q02) == ck_orthogonal(2)


@pytest.mark.parametrize("primitive_label", ["X01", "X02", "X12"])
def test_contraction_gives_galilei_fixture(primitive_label):
    Q = contract_hopf(build_so_z3(primitive_label), JAssignment.parse("dual,dual"))
    assert Q == published_galilei(primitive_label)
    assert check_hopf_axioms(Q).passed


def test_contraction_reports_singular_location():
    Q = QuantumAlgebra(
        ("A", "B"),
        {("B", "A"): {(0,): ZSeries.constant(JMonomial(1, (-1,)).to_poly(), N)}},
        {"A": Tensor(2, {((), (0,)): 1, ((0,), ()): 1}, N), "B": Tensor(2, {((), (1,)): 1, ((1,), ()): 1}, N)},
        {"A": 0, "B": 0},
        {"A": {(0,): -1}, "B": {(1,): -1}},
        N,
    )
    with pytest.raises(SingularityError) as info:
        contract_hopf(Q, JAssignment.parse("dual"))
    assert "relation [B, A]" in info.value.location


def test_antipode_squares():
    assert antipode_square_report(galilei("X02")).involutive
    zX02 = {(X02,): ZSeries.z(1, N)}
    sq21 = antipode_square_report(galilei("X01"))
    assert not sq21.involutive
    assert sq21.images["X12"] == Element({(X12,): 1}, N) - Element(zX02, N)
    sq22 = antipode_square_report(galilei("X12"))
    assert sq22.images["X01"] == Element({(X01,): 1}, N) + Element(zX02, N)


def test_json_round_trip():
    for Q in (Q02, galilei("X12")):
        assert quantum_from_json(quantum_to_json(Q)) == Q
