"""
Primitive generators in so_z(n+1)
=================================

Count ordered choices of disjoint primitive pairs and ask which dual-unit
contractions the coproduct allows.
"""

from ckhopf.catalog import allowed_contractions, canonical_primitive_set, enumerate_primitive_sets
from ckhopf.liealg import pair_label

# ordered selections: 6 for so(4), 30 for so(5)
for n in (3, 4):
    print(n, len(enumerate_primitive_sets(n, 2)))

# the nested set X0n, X1,n-1, ...
for n in range(2, 7):
    p = canonical_primitive_set(n)
    verdicts = allowed_contractions(n, p)
    allowed = sum(v.allowed for v in verdicts)
    print(" ".join(pair_label(*q) for q in p), "%d/%d allowed (%s)" % (allowed, len(verdicts), verdicts[0].basis))

# for n = 2 the answer is computed from the full Hopf structure
for v in allowed_contractions(2, [(0, 2)]):
    print(v.assignment, v.basis, "allowed" if v.allowed else v.reason)
