"""
Cayley-Klein Lie algebras and their contractions
================================================

"""

from ckhopf.coeff import EpsilonScaling, JAssignment, evaluate
from ckhopf.liealg import (
    Grading,
    check_jacobi,
    ck_orthogonal,
    ck_scaling,
    contract_bracket,
    graded_contraction,
)

# so(4; j1, j2, j3) with symbolic parameters
L = ck_orthogonal(3)
print(L)
print("Jacobi violations:", len(check_jacobi(L)))

# setting j1 to a dual unit is the same as an Inonu-Wigner scaling
a = JAssignment.parse("dual,unit,unit")
unit = JAssignment.uniform(3, "unit")
classical = L.map_coefficients(lambda c: evaluate(c, unit))
lim = contract_bracket(classical, ck_scaling(3, [1]))
assert L.map_coefficients(lambda c: evaluate(c, a)) == lim
print(lim)

# an explicit scaling of so(3): the Euclidean-type limit
so3 = ck_orthogonal(2).map_coefficients(lambda c: evaluate(c, JAssignment.uniform(2, "unit")))
print(contract_bracket(so3, EpsilonScaling({"X01": 1, "X02": 1, "X12": 0})))

# Z2-graded contraction keeping only the odd-odd block
g = Grading([2], {"X02": 0, "X01": 1, "X12": 1})
out = graded_contraction(so3, g, {(0, 0): 1, (0, 1): 0, (1, 1): 1})
print(out.algebra, "admissible:", out.admissible)
