"""
Lie bialgebra limits
====================

The first-order cocommutator of a quantum algebra and its contraction by
one or two scalings.
"""

from ckhopf.bialg import bialgebra_from_quantum, check_cocycle, check_cojacobi, contract_bialgebra
from ckhopf.catalog import build_so_z3
from ckhopf.coeff import EpsilonScaling, JAssignment
from ckhopf.hopf import contract_hopf

Q = contract_hopf(build_so_z3("X02"), JAssignment.uniform(2, "unit"))
B = bialgebra_from_quantum(Q)
print(B)
print("cocycle:", not check_cocycle(B), " co-Jacobi:", not check_cojacobi(B))

# same map on bracket and cocommutator; z absorbs two powers of eps
phi = EpsilonScaling({"X01": 1, "X02": 2, "X12": 1}, z=2)
print("\n".join(contract_bialgebra(B, phi, phi).lines()))

# different maps: eta converges but the mixed composition does not
ident = EpsilonScaling({"X01": 0, "X02": 0, "X12": 0})
psi = EpsilonScaling({"X01": 1, "X02": 0, "X12": 1})
print("\n".join(contract_bialgebra(B, ident, psi).lines()))
