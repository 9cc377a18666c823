import itertools

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from ckhopf.bialg import (
    Bialgebra,
    Cocommutator,
    bialgebra_from_quantum,
    check_cocycle,
    check_cojacobi,
    cocommutator_from_json,
    cocommutator_to_json,
    contract_bialgebra,
    contract_cocommutator,
    contract_mixed,
    dual_algebra,
    first_order_cocommutator,
)
from ckhopf.catalog import build_so_z3
from ckhopf.coeff import EpsilonScaling, JAssignment, SingularityError, ZSeries, evaluate
from ckhopf.hopf import contract_hopf
from ckhopf.liealg import LieAlgebra, abelian, ck_orthogonal
from oracles import brute_force_jacobi

BASIS = ("X01", "X02", "X12")
SO3 = ck_orthogonal(2).map_coefficients(lambda c: evaluate(c, JAssignment.uniform(2, "unit")))
ETA = Cocommutator.from_labels(BASIS, {"X01": {("X01", "X02"): 1}, "X12": {("X12", "X02"): 1}})
B = Bialgebra(SO3, ETA)


def scaling(z=0, **e):
    return EpsilonScaling(e, z)


def dense(L: LieAlgebra):
    d = L.dimension
    C = [[[0] * d for _ in range(d)] for _ in range(d)]
    for (a, b), vec in L.brackets.items():
        for c, v in vec.items():
            x = sp.Rational(str(v.coefficient(0).monomials()[0].coef.re))
            C[a][b][c], C[b][a][c] = x, -x
    return C


def dense_eta(eta: Cocommutator):
    d = eta.dimension
    T = [[[0] * d for _ in range(d)] for _ in range(d)]
    for a in range(d):
        for (b, c), v in eta.tensor(a).items():
            T[a][b][c] = sp.Rational(str(v.coefficient(0).monomials()[0].coef.re))
    return T


def brute_force_cocycle(L: LieAlgebra, eta: Cocommutator) -> set:
    """Pairs (X, Y) where eta([X,Y]) differs from the adjoint expansion."""
    C, T, d = dense(L), dense_eta(eta), L.dimension
    bad = set()
    for x, y in itertools.combinations(range(d), 2):
        for p, q in itertools.product(range(d), repeat=2):
            lhs = sum(C[x][y][k] * T[k][p][q] for k in range(d))
            rhs = sum(T[x][p][c] * C[c][y][q] + T[x][c][q] * C[c][y][p] for c in range(d))
            rhs -= sum(T[y][p][c] * C[c][x][q] + T[y][c][q] * C[c][x][p] for c in range(d))
            if lhs != rhs:
                bad.add((L.basis[x], L.basis[y]))
    return bad


# --- data --------------------------------------------------------------------


def test_wedge_normal_form():
    eta = Cocommutator.from_labels(BASIS, {"X12": {("X12", "X02"): 1, ("X02", "X12"): 1}})
    assert eta.eta == {}
    assert ETA.of(2) == {(1, 2): ZSeries.constant(-1)}
    assert ETA.format_lines() == ["eta(X01) = X01^X02", "eta(X02) = 0", "eta(X12) = -X02^X12"]


def test_basis_mismatch():
    with pytest.raises(ValueError):
        Bialgebra(SO3, Cocommutator.zero(("a", "b", "c")))


# --- cocycle and co-Jacobi ---------------------------------------------------


def test_cocycle_passes_for_first_order_cocommutator():
    assert check_cocycle(B) == []
    assert brute_force_cocycle(SO3, ETA) == set()


def test_zero_cocommutator_is_a_cocycle():
    assert check_cocycle(Bialgebra(SO3, Cocommutator.zero(BASIS))) == []


def test_wrong_wedge_breaks_cocycle():
    bad = Cocommutator.from_labels(BASIS, {"X01": {("X02", "X12"): 1}, "X12": {("X12", "X02"): 1}})
    found = {v.pair for v in check_cocycle(Bialgebra(SO3, bad))}
    assert found
    assert found == brute_force_cocycle(SO3, bad)


coefs = st.integers(-2, 2)
etas = st.fixed_dictionaries(
    {a: st.fixed_dictionaries({p: coefs for p in itertools.combinations(range(3), 2)}) for a in range(3)}
).map(lambda d: Cocommutator(BASIS, d))


@given(etas)
@settings(max_examples=100, deadline=None)
def test_cocycle_matches_brute_force(eta):
    assert {v.pair for v in check_cocycle(Bialgebra(SO3, eta))} == brute_force_cocycle(SO3, eta)


def test_cojacobi_examples():
    assert check_cojacobi(B) == []
    assert check_cojacobi(Cocommutator.zero(BASIS)) == []
    # dual brackets [X01*, X02*] = X01*, [X01*, X12*] = X02*
    bad = Cocommutator.from_labels(BASIS, {"X01": {("X01", "X02"): 1}, "X02": {("X01", "X12"): 1}})
    assert check_cojacobi(Bialgebra(abelian(BASIS), bad))
    assert brute_force_jacobi(BASIS, {(0, 1): {0: 1}, (0, 2): {1: 1}})


@given(etas)
@settings(max_examples=100, deadline=None)
def test_cojacobi_matches_brute_force(eta):
    D = dual_algebra(eta)
    table = {k: {c: sp.Integer(int(str(v))) for c, v in vec.items()} for k, vec in D.brackets.items()}
    found = {tuple(lab.rstrip("*") for lab in v.triple) for v in check_cojacobi(eta)}
    assert found == brute_force_jacobi(BASIS, table)


# --- contraction -------------------------------------------------------------


def test_identity_scaling_keeps_eta():
    assert contract_cocommutator(B, scaling(X01=0, X02=0, X12=0)) == ETA


def test_grading_consistent_scaling_keeps_eta():
    assert contract_cocommutator(B, scaling(X01=1, X02=0, X12=1)) == ETA


def test_term_dropped_when_z_absorbs_the_scaling():
    psi = scaling(z=2, X01=0, X02=1, X12=0)
    assert contract_cocommutator(B, psi) == Cocommutator.zero(BASIS)


def test_term_singular_without_z_scaling():
    with pytest.raises(SingularityError) as info:
        contract_cocommutator(B, scaling(X01=0, X02=1, X12=0))
    assert info.value.location == "cocommutator"


def test_identity_bialgebra_contraction():
    zero = scaling(X01=0, X02=0, X12=0)
    r = contract_bialgebra(B, zero, zero)
    assert r.bialgebra == B
    assert r.consistent and r.is_bialgebra


def test_heisenberg_limit_is_consistent():
    phi = scaling(z=2, X01=1, X02=2, X12=1)
    r = contract_bialgebra(B, phi, phi)
    assert r.bialgebra.algebra == LieAlgebra.from_labels(BASIS, {("X12", "X01"): {"X02": 1}})
    assert r.bialgebra.cocommutator == ETA
    assert r.consistent and r.is_bialgebra


def test_heisenberg_limit_without_z_scaling_is_singular():
    phi = scaling(X01=1, X02=2, X12=1)
    with pytest.raises(SingularityError):
        contract_bialgebra(B, phi, phi)


def test_divergent_mixed_limit_is_flagged():
    r = contract_bialgebra(B, scaling(X01=0, X02=0, X12=0), scaling(X01=1, X02=0, X12=1))
    assert r.bialgebra.cocommutator == ETA  # eta limit converges
    assert r.mixed is None and "eps^-1" in r.mixed_error
    assert not r.consistent
    assert "MISMATCH" in "\n".join(r.lines())


exps = st.integers(0, 3)


def limit_or_error(f, *args):
    try:
        return f(*args)
    except SingularityError:
        return "singular"


@given(exps, exps, exps, exps)
@settings(max_examples=100, deadline=None)
def test_same_map_gives_matching_limits(e01, e02, e12, ez):
    phi = scaling(z=ez, X01=e01, X02=e02, X12=e12)
    direct = limit_or_error(contract_cocommutator, B, phi)
    assert limit_or_error(contract_mixed, B, phi, phi) == direct
    if direct != "singular":
        assert all(b < c for w in direct.eta.values() for b, c in w)


# --- from quantum algebras ---------------------------------------------------


def test_first_order_cocommutator_of_x02_coupling():
    Q = contract_hopf(build_so_z3("X02"), JAssignment.uniform(2, "unit"))
    eta = first_order_cocommutator(Q)
    assert eta == ETA
    assert eta.of(1) == {}


@pytest.mark.parametrize("primitive_label", ["X01", "X02", "X12"])
def test_catalog_bialgebras_are_bialgebras(primitive_label):
    Bq = bialgebra_from_quantum(build_so_z3(primitive_label))
    assert Bq.cocommutator.of(BASIS.index(primitive_label)) == {}
    assert check_cocycle(Bq) == []
    assert check_cojacobi(Bq) == []


def test_symbolic_first_order_cocommutator():
    # z* X*02 = z X02, so no j-factors survive in the exponentials
    assert first_order_cocommutator(build_so_z3("X02")) == ETA


def test_json_round_trip():
    d = cocommutator_to_json(ETA)
    assert d["eta"]["X01"][0]["wedge"] == ["X01", "X02"]
    assert cocommutator_from_json(d) == ETA
