"""Quantum Cayley-Klein algebras so_z(3; j; X) and their Galilei limits.

The three couplings differ only in which rotation generator is primitive.
Each is produced from the same U_z(so(3)) seed by a Weyl relabelling of the
indices followed by the Cayley-Klein rescaling ``X = J X*``, ``z* = J_p z``
with ``J_p`` the multiplier of the primitive generator.  For so_z(n+1),
n >= 3, only the combinatorics of primitive sets and a model of the
coproduct-induced singularities are available.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Protocol, Sequence

from .coeff import (
    DEFAULT_ORDER,
    JAssignment,
    JMonomial,
    JValue,
    SingularityError,
    ZSeries,
    series_apply,
)
from .hopf import (
    Element,
    QuantumAlgebra,
    Tensor,
    antipode_square_report,
    classical_lie_algebra,
    contract_hopf,
    is_primitive,
    relabel,
    transform_hopf,
)
from .liealg import (
    center_dimension,
    ck_multiplier,
    derived_series_dimensions,
    pair_label,
    parse_pair_label,
)

SO3_GENERATORS = ("X01", "X02", "X12")

# Weyl relabellings that move the seed primitive X02 to the chosen generator
COUPLING_PERMUTATIONS = {
    "X02": (0, 1, 2),
    "X01": (0, 2, 1),
    "X12": (1, 0, 2),
}

Z_DIMENSION = {
    "X02": "unspecified",
    "X01": "[z]=sec (primitive X01 generates time translations)",
    "X12": "[z]=cm/sec (primitive X12 generates Galilei boosts)",
}


def so3_seed(order: int = DEFAULT_ORDER) -> QuantumAlgebra:
    """U_z(so(3)) with primitive X02 (starred generators, parameter z*).

    Delta X02 = 1 (x) X02 + X02 (x) 1,
    Delta X   = X (x) exp(z X02/2) + exp(-z X02/2) (x) X   for X = X01, X12,
    u = 0, gamma(X02) = -X02,
    gamma(X01) = -cos(z/2) X01 + sin(z/2) X12,
    gamma(X12) = -cos(z/2) X12 - sin(z/2) X01,
    [X01, X02] = X12, [X02, X12] = X01, [X12, X01] = sinh(z X02)/z.
    """
    from fractions import Fraction

    N = order
    x01, x02, x12 = 0, 1, 2
    half_z = ZSeries.z(1, N, Fraction(1, 2))

    sinhc = {}
    for k in range(N // 2 + 1):
        sinhc[(x02,) * (2 * k + 1)] = ZSeries.z(2 * k, N, Fraction(1, math.factorial(2 * k + 1)))

    plus, minus = {}, {}
    for k in range(N + 1):
        c = Fraction(1, 2**k * math.factorial(k))
        plus[(x02,) * k] = ZSeries.z(k, N, c)
        minus[(x02,) * k] = ZSeries.z(k, N, c * (-1) ** k)

    def skew(x):
        terms = {}
        for w, c in plus.items():
            terms[((x,), w)] = c
        for w, c in minus.items():
            terms[(w, (x,))] = c
        return Tensor(2, terms, N)

    cos = series_apply("cos", half_z)
    sin = series_apply("sin", half_z)
    return QuantumAlgebra(
        SO3_GENERATORS,
        relations={
            ("X02", "X01"): {(x12,): -1},
            ("X12", "X02"): {(x01,): -1},
            ("X12", "X01"): sinhc,
        },
        coproduct={
            "X02": Tensor(2, {((), (x02,)): 1, ((x02,), ()): 1}, N),
            "X01": skew(x01),
            "X12": skew(x12),
        },
        counit={g: 0 for g in SO3_GENERATORS},
        antipode={
            "X02": {(x02,): -1},
            "X01": {(x01,): -cos, (x12,): sin},
            "X12": {(x12,): -cos, (x01,): -sin},
        },
        order=N,
        metadata={"params": 2},
    )


def permute_indices(Q: QuantumAlgebra, sigma: Sequence[int]) -> QuantumAlgebra:
    """Relabel X_{mu nu} -> X_{sigma(mu) sigma(nu)}, with X_{nu mu} = -X_{mu nu}."""
    mapping = {}
    for g in Q.generators:
        mu, nu = parse_pair_label(g)
        a, b = sigma[mu], sigma[nu]
        mapping[g] = (1, pair_label(a, b)) if a < b else (-1, pair_label(b, a))
    return relabel(Q, mapping, Q.generators)


def build_so_z3(primitive: str, order: int = DEFAULT_ORDER) -> QuantumAlgebra:
    """so_z(3; j; primitive) with symbolic j1, j2."""
    c = coupling(primitive)
    seed = permute_indices(so3_seed(order), c.permutation)
    scaling = {g: ck_multiplier(*parse_pair_label(g)) for g in SO3_GENERATORS}
    Q = transform_hopf(seed, scaling, c.z_multiplier)
    Q.metadata.update({"name": f"so_z3:{primitive}", "primitive": primitive, "z_dimension": c.z_dimension})
    return Q


def galilei(primitive: str, order: int = DEFAULT_ORDER, mode: str = "limit") -> QuantumAlgebra:
    """The quantum Galilei algebra so_z(3; iota1, iota2; primitive)."""
    Q = contract_hopf(build_so_z3(primitive, order), JAssignment.uniform(2, JValue.DUAL), mode)
    Q.metadata["name"] = f"galilei:{primitive}"
    return Q


CATALOG_NAMES = tuple(
    [f"so_z3:{p}" for p in ("X01", "X02", "X12")]
    + [f"galilei:{p}" for p in ("X01", "X02", "X12")]
    + ["so3_seed"]
)


def from_catalog(name: str, order: int = DEFAULT_ORDER) -> QuantumAlgebra:
    if name == "so3_seed":
        return so3_seed(order)
    family, _, primitive = name.partition(":")
    if family == "so_z3" and primitive in COUPLING_PERMUTATIONS:
        return build_so_z3(primitive, order)
    if family == "galilei" and primitive in COUPLING_PERMUTATIONS:
        return galilei(primitive, order)
    raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(CATALOG_NAMES)}")


# ---------------------------------------------------------------------------
# primitive sets


PrimitiveSet = tuple  # tuple of (mu, nu) pairs, mu < nu, all indices distinct


def validate_primitive_set(n: int, p: Iterable[tuple[int, int]]) -> PrimitiveSet:
    p = tuple((int(mu), int(nu)) for mu, nu in p)
    used = [i for pair in p for i in pair]
    if any(mu >= nu for mu, nu in p):
        raise ValueError("each primitive pair needs mu < nu")
    if len(set(used)) != len(used) or any(not 0 <= i <= n for i in used):
        raise ValueError(f"pairs must use distinct indices from 0..{n}")
    return p


def primitive_set_count(n: int, k: int) -> int:
    """(n+1)! / (2^k (n+1-2k)!) ordered choices of k disjoint pairs."""
    return math.factorial(n + 1) // (2**k * math.factorial(n + 1 - 2 * k))


def enumerate_primitive_sets(n: int, k: int) -> list[PrimitiveSet]:
    """All ordered k-tuples of pairwise disjoint index pairs from {0..n}."""
    if 2 * k > n + 1:
        raise ValueError("need 2k <= n+1")
    pairs = list(itertools.combinations(range(n + 1), 2))
    out = []

    def extend(chosen, used):
        if len(chosen) == k:
            out.append(tuple(chosen))
            return
        for p in pairs:
            if p[0] not in used and p[1] not in used:
                extend(chosen + [p], used | set(p))

    extend([], frozenset())
    return out


def canonical_primitive_set(n: int) -> PrimitiveSet:
    """Nested pairs (0, n), (1, n-1), ..., k = floor((n+1)/2) of them.

    For even n the middle index n/2 stays unpaired.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    return tuple((i, n - i) for i in range((n + 1) // 2) if i < n - i)


def primitive_multiplier(p: PrimitiveSet) -> JMonomial:
    """z* = J_p z with J_p the product of J over the primitive pairs."""
    m = JMonomial()
    for mu, nu in p:
        m = m * ck_multiplier(mu, nu)
    return m


@dataclass(frozen=True)
class CouplingDescriptor:
    """Which generators are primitive, as a Weyl image of the canonical set."""

    n: int
    permutation: tuple[int, ...]
    primitive_set: PrimitiveSet
    z_multiplier: JMonomial
    z_dimension: str = "unspecified"

    @classmethod
    def from_permutation(cls, n: int, sigma: Sequence[int], z_dimension: str = "unspecified"):
        sigma = tuple(sigma)
        if sorted(sigma) != list(range(n + 1)):
            raise ValueError(f"{sigma} is not a permutation of 0..{n}")
        p = tuple(
            (min(sigma[mu], sigma[nu]), max(sigma[mu], sigma[nu])) for mu, nu in canonical_primitive_set(n)
        )
        return cls(n, sigma, p, primitive_multiplier(p), z_dimension)


def coupling(primitive: str) -> CouplingDescriptor:
    """The so_z(3) coupling whose primitive generator is ``primitive``."""
    if primitive not in COUPLING_PERMUTATIONS:
        raise ValueError(f"primitive must be one of {sorted(COUPLING_PERMUTATIONS)}")
    return CouplingDescriptor.from_permutation(2, COUPLING_PERMUTATIONS[primitive], Z_DIMENSION[primitive])


# ---------------------------------------------------------------------------
# coproduct models for n >= 3


class CoproductModel(Protocol):
    name: str

    def mixing_coefficients(self, n: int, p: PrimitiveSet) -> list[tuple[str, JMonomial]]:
        """Monomials whose dual limits decide whether a contraction exists."""


@dataclass(frozen=True)
class AntipodeMixingModel:
    """Generalises the n = 2 pattern of the antipode.

    In so_z(3) the antipode rotates each pair of generators conjugate under
    the primitive X_{mu nu}; the mixing term carries J_a / J_b times an odd
    power of J_p.  Here every primitive X_{mu nu} rotates the pairs
    (X_{mu rho}, X_{nu rho}) (single conjugates, smallest power J_p^1), and
    generators touching two primitive pairs are mixed with their doubly
    conjugate partner through products of two sines (J_p^2).
    """

    name: str = "antipode-mixing"

    def mixing_coefficients(self, n: int, p: PrimitiveSet) -> list[tuple[str, JMonomial]]:
        Jp = primitive_multiplier(p)
        partner = {}
        for mu, nu in p:
            partner[mu], partner[nu] = nu, mu
        out = []

        def J(a, b):
            return ck_multiplier(a, b)

        def lab(a, b):
            return pair_label(min(a, b), max(a, b))

        for mu, nu in p:
            for rho in range(n + 1):
                if rho in (mu, nu):
                    continue
                a, b = lab(mu, rho), lab(nu, rho)
                out.append((f"{a}->{b}", J(mu, rho) * J(nu, rho).inverse() * Jp))
                out.append((f"{b}->{a}", J(nu, rho) * J(mu, rho).inverse() * Jp))
        for a, b in itertools.combinations(range(n + 1), 2):
            if a in partner and b in partner and partner[a] != b:
                a2, b2 = partner[a], partner[b]
                out.append((f"{lab(a, b)}->{lab(a2, b2)}", J(a, b) * J(a2, b2).inverse() * Jp**2))
        return out


MODELS: dict[str, CoproductModel] = {"antipode-mixing": AntipodeMixingModel()}
DEFAULT_MODEL = "antipode-mixing"


def _dual_regular(m: JMonomial, a: JAssignment) -> str | None:
    for k, e in m.exponents.items():
        if e < 0 and a[k] is JValue.DUAL:
            return f"j{k}^{e}"
    return None


@dataclass
class Verdict:
    assignment: JAssignment
    allowed: bool
    basis: str  # "exact" | "model"
    reason: str = ""

    def to_json(self) -> dict:
        d = {
            "assignment": self.assignment.as_dict(),
            "verdict": "allowed" if self.allowed else "singular",
            "basis": self.basis,
        }
        if self.reason:
            d["reason"] = self.reason
        return d


def dual_unit_assignments(n: int) -> list[JAssignment]:
    return [
        JAssignment(tuple(JValue.DUAL if bit else JValue.UNIT for bit in bits))
        for bits in itertools.product((0, 1), repeat=n)
    ]


def allowed_contractions(
    n: int,
    p: Iterable[tuple[int, int]],
    model: "str | CoproductModel" = DEFAULT_MODEL,
    exact: bool | None = None,
    order: int = DEFAULT_ORDER,
) -> list[Verdict]:
    """Verdict for every one of the 2^n dual/unit assignments.

    For n = 2 the full Hopf structure is contracted (``exact``, the
    default there); otherwise the verdict comes from the coproduct model.
    """
    p = validate_primitive_set(n, p)
    if exact is None:
        exact = n == 2
    if isinstance(model, str):
        model = MODELS[model]
    verdicts = []
    if exact:
        if n != 2 or len(p) != 1:
            raise ValueError("exact verdicts need n = 2 and a single primitive pair")
        Q = build_so_z3(pair_label(*p[0]), order)
        for a in dual_unit_assignments(n):
            try:
                contract_hopf(Q, a)
                verdicts.append(Verdict(a, True, "exact"))
            except SingularityError as exc:
                verdicts.append(Verdict(a, False, "exact", str(exc)))
        return verdicts
    coefficients = model.mixing_coefficients(n, p)
    for a in dual_unit_assignments(n):
        bad = [(what, _dual_regular(m, a)) for what, m in coefficients]
        bad = [f"{what}: {why}" for what, why in bad if why]
        verdicts.append(Verdict(a, not bad, "model", "; ".join(bad)))
    return verdicts


# ---------------------------------------------------------------------------
# invariants that can separate Hopf algebras


@dataclass
class DistinguisherReport:
    invariants: dict  # name -> (value for Q1, value for Q2)
    witnesses: list

    @property
    def distinguished(self) -> bool:
        return bool(self.witnesses)

    def lines(self) -> list[str]:
        out = []
        for name, (v1, v2) in self.invariants.items():
            mark = "differs" if name in self.witnesses else "agrees"
            out.append(f"{name:<22} {str(v1):<20} {str(v2):<20} {mark}".rstrip())
        out.append("distinguished by " + ", ".join(self.witnesses) if self.witnesses else "not distinguished")
        return out


def hopf_invariants(Q: QuantumAlgebra) -> dict:
    L = classical_lie_algebra(Q)
    return {
        "antipode-square": "involutive" if antipode_square_report(Q).involutive else "non-involutive",
        "derived-series": tuple(derived_series_dimensions(L)),
        "center-dimension": center_dimension(L),
        "counit-kernel": sum(1 for c in Q.counit.values() if not c),
        "primitive-generators": sum(1 for g in Q.generators if is_primitive(Q, g)),
    }


def isomorphism_distinguishers(Q1: QuantumAlgebra, Q2: QuantumAlgebra) -> DistinguisherReport:
    """Compare Hopf invariants; a difference proves non-isomorphism.

    Agreement of every invariant proves nothing, so the report only ever
    says "distinguished" or "not distinguished".
    """
    if Q1.dimension != Q2.dimension:
        raise ValueError("algebras have different numbers of generators")
    i1, i2 = hopf_invariants(Q1), hopf_invariants(Q2)
    invariants = {k: (i1[k], i2[k]) for k in i1}
    return DistinguisherReport(invariants, [k for k, (a, b) in invariants.items() if a != b])
