"""
Quantum Galilei algebras from so_z(3)
=====================================

Build the three couplings, send both Cayley-Klein parameters to dual
units and look at what survives.
"""

from ckhopf.catalog import build_so_z3, galilei, isomorphism_distinguishers
from ckhopf.coeff import JAssignment
from ckhopf.hopf import antipode_square_report, check_hopf_axioms, contract_hopf

# the coupling with X02 primitive, symbolic j1, j2 and z-series to order 6
Q = build_so_z3("X02")
print(Q)

# every Hopf axiom holds order by order
print("\n".join(check_hopf_axioms(Q).lines()))

# j1 = iota1, j2 = iota2: the dual-unit limit of every structure constant
G = contract_hopf(Q, JAssignment.parse("dual,dual"))
assert G == galilei("X02")

# the antipode squares separate the X02 limit from the other two
for p in ("X02", "X01", "X12"):
    sq = antipode_square_report(galilei(p))
    print(p, "involutive" if sq.involutive else "non-involutive")
    for g, image in sq.images.items():
        print("   gamma^2(%s) = %s" % (g, galilei(p).format(image)))

print("\n".join(isomorphism_distinguishers(galilei("X02"), galilei("X01")).lines()))
print("\n".join(isomorphism_distinguishers(galilei("X01"), galilei("X12")).lines()))
