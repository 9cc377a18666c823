import itertools

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from ckhopf.coeff import EpsilonScaling, JAssignment, SingularityError, ZSeries, evaluate
from ckhopf.liealg import (
    Grading,
    LieAlgebra,
    UnsupportedMapError,
    abelian,
    center_dimension,
    check_grading,
    check_jacobi,
    check_scaling_preserves_grading,
    ck_orthogonal,
    ck_scaling,
    contract_bracket,
    derived_series_dimensions,
    graded_contraction,
    lie_from_json,
    lie_to_json,
    pair_label,
    parse_pair_label,
    so_structure,
)
from oracles import brute_force_jacobi, poly_from_sympy, so_bracket_oracle

SO3 = LieAlgebra.from_labels(
    ("X01", "X02", "X12"),
    {("X01", "X02"): {"X12": 1}, ("X02", "X12"): {"X01": 1}, ("X12", "X01"): {"X02": 1}},
)
Z2 = Grading([2], {"X02": 0, "X01": 1, "X12": 1})


def scaling(**e):
    return EpsilonScaling(e)


def test_labels():
    assert pair_label(0, 2) == "X02"
    assert pair_label(3, 12) == "X3,12"
    assert parse_pair_label("X3,12") == (3, 12)
    assert parse_pair_label("X01") == (0, 1)
    with pytest.raises(ValueError):
        parse_pair_label("Y")


def test_antisymmetry_is_stored_once():
    L = LieAlgebra.from_labels(("A", "B"), {("B", "A"): {"A": 1}})
    assert L.brackets == {(0, 1): {0: ZSeries.constant(-1)}}
    assert L.bracket_basis(1, 0) == {0: ZSeries.constant(1)}


# --- Jacobi ------------------------------------------------------------------


def test_jacobi_so3_passes():
    assert check_jacobi(SO3) == []


def test_jacobi_abelian_passes():
    assert check_jacobi(abelian(["a", "b", "c", "d"])) == []


def test_corrupted_so3_is_still_a_lie_algebra():
    # every cyclic 3-dim table satisfies Jacobi: each term is [X, X] = 0
    table = {(0, 1): {2: 2}, (1, 2): {0: 1}, (0, 2): {1: -1}}
    assert brute_force_jacobi(SO3.basis, table) == set()
    assert check_jacobi(LieAlgebra(SO3.basis, table)) == []


def test_jacobi_violation_on_corrupted_so4():
    L = ck_orthogonal(3).map_coefficients(lambda c: evaluate(c, JAssignment.uniform(3, "unit")))
    table = {k: {c: v.coefficient(0).monomials()[0].coef.re for c, v in vec.items()} for k, vec in L.brackets.items()}
    a, b, c = L.index("X01"), L.index("X02"), L.index("X12")
    table[(a, b)] = {c: 2}
    bad = LieAlgebra(L.basis, table)
    found = {v.triple for v in check_jacobi(bad)}
    assert found == brute_force_jacobi(L.basis, table)
    assert ("X01", "X02", "X13") in found


# --- contract_bracket --------------------------------------------------------


def test_contraction_to_euclidean_type():
    E = contract_bracket(SO3, scaling(X01=1, X02=1, X12=0))
    assert E == LieAlgebra.from_labels(
        SO3.basis, {("X02", "X12"): {"X01": 1}, ("X12", "X01"): {"X02": 1}}
    )
    assert check_jacobi(E) == []


def test_identity_scaling_is_identity():
    assert contract_bracket(SO3, scaling(X01=0, X02=0, X12=0)) == SO3


def test_singular_contraction():
    with pytest.raises(SingularityError) as info:
        contract_bracket(SO3, scaling(X01=0, X02=0, X12=1))
    assert info.value.location == "bracket"


def test_missing_exponent_is_an_error():
    with pytest.raises(KeyError):
        contract_bracket(SO3, scaling(X01=0, X02=0))


@given(st.tuples(*[st.integers(0, 3)] * 6))
@settings(max_examples=100, deadline=None)
def test_regular_contraction_preserves_jacobi(e):
    L = ck_orthogonal(3).map_coefficients(lambda c: evaluate(c, JAssignment.uniform(3, "unit")))
    phi = EpsilonScaling(dict(zip(L.basis, e)))
    try:
        C = contract_bracket(L, phi)
    except SingularityError:
        return
    assert check_jacobi(C) == []


# --- Cayley-Klein family -----------------------------------------------------


def test_ck_so3_brackets():
    L = ck_orthogonal(2)
    j1, j2 = sp.symbols("j1 j2")
    assert L.structure_constant("X01", "X02", "X12") == ZSeries.constant(poly_from_sympy(j1**2))
    assert L.structure_constant("X02", "X12", "X01") == ZSeries.constant(poly_from_sympy(j2**2))
    assert L.structure_constant("X12", "X01", "X02") == ZSeries.constant(1)


def test_ck_so3_at_unit_is_classical():
    L = ck_orthogonal(2).map_coefficients(lambda c: evaluate(c, JAssignment.uniform(2, "unit")))
    assert L == SO3


def test_ck_so4_bracket():
    L = ck_orthogonal(3)
    assert L.bracket_basis(L.index("X01"), L.index("X03")) == {
        L.index("X13"): ZSeries.constant(poly_from_sympy(sp.Symbol("j1") ** 2))
    }


@pytest.mark.parametrize("n", [2, 3, 4])
def test_ck_orthogonal_matches_matrix_oracle(n):
    L = ck_orthogonal(n)
    oracle = so_bracket_oracle(n)
    js = sp.symbols(f"j1:{n + 1}")
    for a, b in itertools.combinations(range(L.dimension), 2):
        pa, pb = parse_pair_label(L.basis[a]), parse_pair_label(L.basis[b])
        expected = oracle.get((pa, pb), {})
        got = L.bracket_basis(a, b)
        assert {L.basis[c] for c in got} == {pair_label(*pc) for pc in expected}
        for pc, expr in expected.items():
            expr = expr.subs({s: sp.Symbol(f"j{i + 1}") for i, s in enumerate(js)})
            assert got[L.index(pair_label(*pc))] == ZSeries.constant(poly_from_sympy(expr))


def test_so_structure_is_integral():
    pairs, table = so_structure(3)
    assert len(pairs) == 6
    assert all(isinstance(v, int) for vec in table.values() for v in vec.values())


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_ck_orthogonal_satisfies_jacobi(n):
    L = ck_orthogonal(n)
    assert L.dimension == n * (n + 1) // 2
    assert check_jacobi(L) == []


@pytest.mark.parametrize("n", [2, 3])
def test_evaluation_commutes_with_contraction(n):
    L = ck_orthogonal(n)
    classical = L.map_coefficients(lambda c: evaluate(c, JAssignment.uniform(n, "unit")))
    for values in itertools.product(["unit", "dual"], repeat=n):
        a = JAssignment.parse(",".join(values))
        dual = [k + 1 for k, v in enumerate(values) if v == "dual"]
        assert L.map_coefficients(lambda c: evaluate(c, a)) == contract_bracket(classical, ck_scaling(n, dual))


def test_ck_scaling_counts_contracted_indices():
    phi = ck_scaling(3, [1, 3])
    assert phi["X01"] == 1 and phi["X12"] == 0 and phi["X03"] == 2 and phi["X13"] == 1


# --- gradings ----------------------------------------------------------------


def test_z2_grading_of_so3():
    assert check_grading(SO3, Z2) == []


def test_trivial_grading():
    L = ck_orthogonal(3)
    assert check_grading(L, Grading([1], {lab: 0 for lab in L.basis})) == []


def test_bad_grading_is_reported():
    bad = Grading([2], {"X02": 1, "X01": 1, "X12": 1})
    found = {(v.pair, v.component) for v in check_grading(SO3, bad)}
    assert (("X01", "X12"), "X02") in found


def test_grading_validates_residues():
    with pytest.raises(ValueError):
        Grading([2], {"X01": 2})
    with pytest.raises(KeyError):
        Z2.grade("X03")


def test_graded_contraction_all_ones_is_identity():
    out = graded_contraction(SO3, Z2, {(0, 0): 1, (0, 1): 1, (1, 1): 1})
    assert out.algebra == SO3 and out.admissible


def test_graded_contraction_to_abelian():
    out = graded_contraction(SO3, Z2, {(0, 0): 1, (0, 1): 0, (1, 1): 0})
    assert out.algebra.brackets == {}
    assert out.jacobi_violations == []


def test_graded_contraction_keeps_odd_odd_block():
    out = graded_contraction(SO3, Z2, {(0, 0): 1, (0, 1): 0, (1, 1): 1})
    # only [X12, X01] = X02 survives; the lone nonzero bracket cannot break Jacobi
    assert out.algebra == LieAlgebra.from_labels(SO3.basis, {("X12", "X01"): {"X02": 1}})
    assert out.admissible


def test_graded_contraction_flags_inadmissible_parameters():
    # Z2 grading of so(4) by "touches index 0"; scaling the mixed block by 2 breaks Jacobi
    L = ck_orthogonal(3).map_coefficients(lambda c: evaluate(c, JAssignment.uniform(3, "unit")))
    g = Grading([2], {lab: (1 if "0" in lab else 0) for lab in L.basis})
    assert check_grading(L, g) == []
    good = graded_contraction(L, g, {(0, 0): 1, (0, 1): 1, (1, 1): 0})
    assert good.admissible
    bad = graded_contraction(L, g, {(0, 0): 1, (0, 1): 2, (1, 1): 1})
    assert bad.jacobi_violations


def test_graded_contraction_requires_symmetric_eps():
    with pytest.raises(ValueError):
        graded_contraction(SO3, Z2, {(0, 1): 1, (1, 0): 0, (0, 0): 1, (1, 1): 1})
    with pytest.raises(ValueError):
        graded_contraction(SO3, Z2, {(0, 0): 1})


def test_diagonal_scalings_preserve_grading():
    assert check_scaling_preserves_grading(scaling(X01=2, X02=0, X12=1), Z2)
    assert check_scaling_preserves_grading(np.eye(3, dtype=int), Z2)
    with pytest.raises(UnsupportedMapError):
        check_scaling_preserves_grading(np.array([[1, 1, 0], [0, 1, 0], [0, 0, 1]]), Z2)


def test_grading_json_round_trip():
    assert Grading.from_json(Z2.to_json()) == Z2
    assert Z2.to_json() == {"group": [2], "grades": {"X02": 0, "X01": 1, "X12": 1}}


# --- invariants and serialisation --------------------------------------------


def test_structure_invariants():
    assert derived_series_dimensions(SO3) == [3]
    assert center_dimension(SO3) == 0
    heis = LieAlgebra.from_labels(SO3.basis, {("X12", "X01"): {"X02": 1}})
    assert derived_series_dimensions(heis) == [3, 1, 0]
    assert center_dimension(heis) == 1


def test_lie_json_round_trip():
    L = ck_orthogonal(3)
    d = lie_to_json(L)
    assert "X01,X02" in d["brackets"]
    assert lie_from_json(d) == L
