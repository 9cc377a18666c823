"""Finite-dimensional Lie algebras as structure-constant tables.

Brackets are stored for basis pairs ``a < b`` only; ``[X_b, X_a]`` is read
off by antisymmetry.  Coefficients are :class:`~ckhopf.coeff.ZSeries`, so
the same tables carry symbolic Cayley-Klein parameters.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .coeff import (
    DEFAULT_ORDER,
    EpsilonScaling,
    JMonomial,
    SingularityError,
    ZSeries,
    _acc,
    series_from_json,
    series_to_json,
)

Vector = dict  # {basis index: ZSeries}


def pair_label(mu: int, nu: int) -> str:
    """Label of the rotation generator in the (x_mu, x_nu) plane."""
    if mu < 10 and nu < 10:
        return f"X{mu}{nu}"
    return f"X{mu},{nu}"


def parse_pair_label(label: str) -> tuple[int, int]:
    body = label.lstrip("X")
    if "," in body:
        mu, nu = body.split(",")
        return int(mu), int(nu)
    if len(body) != 2 or not body.isdigit():
        raise ValueError(f"not a rotation label: {label!r}")
    return int(body[0]), int(body[1])


def ck_multiplier(mu: int, nu: int) -> JMonomial:
    """J_{mu nu} = j_{mu+1} * ... * j_nu."""
    if mu > nu:
        mu, nu = nu, mu
    return JMonomial(1, (0,) * mu + (1,) * (nu - mu))


@dataclass(eq=False)
class LieAlgebra:
    basis: tuple[str, ...]
    brackets: dict  # {(a, b): {c: ZSeries}} with a < b
    order: int = DEFAULT_ORDER

    def __post_init__(self):
        self.basis = tuple(self.basis)
        if len(set(self.basis)) != len(self.basis):
            raise ValueError("basis labels must be unique")
        clean = {}
        for (a, b), vec in self.brackets.items():
            if a == b:
                raise ValueError("bracket of a basis element with itself is zero")
            sign = 1
            if a > b:
                a, b, sign = b, a, -1
            out = clean.setdefault((a, b), {})
            for c, coef in vec.items():
                _acc(out, c, ZSeries.coerce(coef, self.order) * sign)
        self.brackets = {k: v for k, v in clean.items() if v}

    @classmethod
    def from_labels(cls, basis: Sequence[str], brackets: Mapping, order: int = DEFAULT_ORDER):
        """Build from ``{("X01", "X02"): {"X12": coef}}``-style data."""
        idx = {lab: i for i, lab in enumerate(basis)}
        table = {
            (idx[a], idx[b]): {idx[c]: coef for c, coef in vec.items()}
            for (a, b), vec in brackets.items()
        }
        return cls(tuple(basis), table, order)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def index(self, label: str) -> int:
        return self.basis.index(label)

    def bracket_basis(self, a: int, b: int) -> Vector:
        if a == b:
            return {}
        if a < b:
            return self.brackets.get((a, b), {})
        return {c: -v for c, v in self.brackets.get((b, a), {}).items()}

    def bracket(self, x: Vector, y: Vector) -> Vector:
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                if a == b:
                    continue
                cab = ca * cb
                for c, v in self.bracket_basis(a, b).items():
                    _acc(out, c, cab * v)
        return out

    def structure_constant(self, a: str, b: str, c: str) -> ZSeries:
        vec = self.bracket_basis(self.index(a), self.index(b))
        return vec.get(self.index(c), ZSeries.zero(self.order))

    def map_coefficients(self, f) -> "LieAlgebra":
        table = {}
        for key, vec in self.brackets.items():
            table[key] = {c: f(v) for c, v in vec.items()}
        return LieAlgebra(self.basis, table, self.order)

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.basis == other.basis and self.brackets == other.brackets

    def format_brackets(self) -> list[str]:
        lines = []
        for (a, b) in sorted(self.brackets):
            lines.append(f"[{self.basis[a]}, {self.basis[b]}] = {format_vector(self, self.brackets[(a, b)])}")
        return lines

    def __str__(self):
        return "\n".join(self.format_brackets()) or "(abelian)"


def format_vector(L: LieAlgebra, vec: Vector) -> str:
    if not vec:
        return "0"
    parts = []
    for c in sorted(vec):
        coef = str(vec[c])
        if coef == "1":
            parts.append(L.basis[c])
        elif coef == "-1":
            parts.append("-" + L.basis[c])
        else:
            parts.append(f"({coef})*{L.basis[c]}")
    return " + ".join(parts).replace("+ -", "- ")


def abelian(basis: Sequence[str], order: int = DEFAULT_ORDER) -> LieAlgebra:
    return LieAlgebra(tuple(basis), {}, order)


# ---------------------------------------------------------------------------
# Jacobi


@dataclass(frozen=True)
class JacobiViolation:
    triple: tuple[str, str, str]
    residual: dict  # {label: ZSeries}


def check_jacobi(L: LieAlgebra) -> list[JacobiViolation]:
    """All basis triples whose Jacobi sum is nonzero (empty list = pass)."""
    violations = []
    for a, b, c in itertools.combinations(range(L.dimension), 3):
        total: dict = {}
        for x, y, w in ((a, b, c), (b, c, a), (c, a, b)):
            inner = L.bracket_basis(x, y)
            for k, v in L.bracket(inner, {w: ZSeries.one(L.order)}).items():
                _acc(total, k, v)
        if total:
            violations.append(
                JacobiViolation(
                    (L.basis[a], L.basis[b], L.basis[c]),
                    {L.basis[k]: v for k, v in sorted(total.items())},
                )
            )
    return violations


# ---------------------------------------------------------------------------
# contraction by diagonal scalings


def _exponent_vector(L: LieAlgebra, phi: EpsilonScaling) -> list[int]:
    return [phi[label] for label in L.basis]


def contract_bracket(L: LieAlgebra, phi: EpsilonScaling) -> LieAlgebra:
    """Inonu-Wigner limit of the bracket under a diagonal scaling.

    With ``X'_a = eps**e_a X_a`` the structure constant ``C_ab^c`` picks up
    ``eps**(e_a + e_b - e_c)``: positive powers vanish in the limit, negative
    powers make the limit singular.
    """
    e = _exponent_vector(L, phi)
    table = {}
    for (a, b), vec in L.brackets.items():
        out = {}
        for c, coef in vec.items():
            power = e[a] + e[b] - e[c]
            if power < 0:
                raise SingularityError(
                    f"[{L.basis[a]}, {L.basis[b]}] component {L.basis[c]} "
                    f"scales as eps^{power}",
                    monomial=(L.basis[a], L.basis[b], L.basis[c]),
                    location="bracket",
                )
            if power == 0:
                out[c] = coef
        if out:
            table[(a, b)] = out
    return LieAlgebra(L.basis, table, L.order)


def _rotation_matrix(n: int, mu: int, nu: int) -> np.ndarray:
    m = np.zeros((n + 1, n + 1), dtype=np.int64)
    m[nu, mu] = 1
    m[mu, nu] = -1
    return m


def so_structure(n: int) -> tuple[list[tuple[int, int]], dict]:
    """Integer structure constants of so(n+1) in the rotation basis.

    Generators are realised as ``E_{nu mu} - E_{mu nu}``; for n = 2 this
    gives [X01, X02] = X12, [X02, X12] = X01, [X12, X01] = X02.
    """
    pairs = [(mu, nu) for mu in range(n + 1) for nu in range(mu + 1, n + 1)]
    mats = [_rotation_matrix(n, mu, nu) for mu, nu in pairs]
    table = {}
    for a, b in itertools.combinations(range(len(pairs)), 2):
        comm = mats[a] @ mats[b] - mats[b] @ mats[a]
        vec = {}
        for c, (mu, nu) in enumerate(pairs):
            # coordinate of a rotation generator is its (nu, mu) entry
            coef = int(comm[nu, mu])
            if coef:
                vec[c] = coef
        if vec:
            table[(a, b)] = vec
    return pairs, table


def ck_orthogonal(n: int, order: int = DEFAULT_ORDER) -> LieAlgebra:
    """The Cayley-Klein algebra so(n+1; j) with symbolic j_1..j_n.

    Obtained from so(n+1) by ``X_{mu nu} = J_{mu nu} X*_{mu nu}``, so each
    structure constant becomes ``C * J_a J_b / J_c``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    pairs, table = so_structure(n)
    J = [ck_multiplier(mu, nu) for mu, nu in pairs]
    scaled = {}
    for (a, b), vec in table.items():
        scaled[(a, b)] = {
            c: ZSeries.constant((J[a] * J[b] * J[c].inverse() * coef).to_poly(), order)
            for c, coef in vec.items()
        }
    return LieAlgebra(tuple(pair_label(mu, nu) for mu, nu in pairs), scaled, order)


def ck_scaling(n: int, dual: Iterable[int], z: int = 0) -> EpsilonScaling:
    """Exponents counting the contracted parameters inside each J_{mu nu}."""
    dual = set(dual)
    exps = {}
    for mu in range(n + 1):
        for nu in range(mu + 1, n + 1):
            exps[pair_label(mu, nu)] = sum(1 for k in range(mu + 1, nu + 1) if k in dual)
    return EpsilonScaling(exps, z)


# ---------------------------------------------------------------------------
# gradings


@dataclass(frozen=True)
class Grading:
    """Grading of a basis by the finite Abelian group Z_{m1} x ... x Z_{mr}."""

    group: tuple[int, ...]
    grades: tuple[tuple[str, tuple[int, ...]], ...]

    def __init__(self, group: Sequence[int], grades: Mapping[str, object]):
        group = tuple(int(m) for m in group)
        if not group or any(m < 1 for m in group):
            raise ValueError("group orders must be positive")
        norm = []
        for label, g in grades.items():
            g = (g,) if isinstance(g, int) else tuple(g)
            if len(g) != len(group) or any(not 0 <= x < m for x, m in zip(g, group)):
                raise ValueError(f"invalid group element {g} for {label}")
            norm.append((label, g))
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "grades", tuple(norm))

    def grade(self, label: str) -> tuple[int, ...]:
        for lab, g in self.grades:
            if lab == label:
                return g
        raise KeyError(f"basis label {label!r} has no grade")

    def add(self, g: tuple[int, ...], h: tuple[int, ...]) -> tuple[int, ...]:
        return tuple((x + y) % m for x, y, m in zip(g, h, self.group))

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(m) for m in self.group)))

    def to_json(self) -> dict:
        grades = {lab: (g[0] if len(g) == 1 else list(g)) for lab, g in self.grades}
        return {"group": list(self.group), "grades": grades}

    @classmethod
    def from_json(cls, d: Mapping) -> "Grading":
        return cls(d["group"], d["grades"])


@dataclass(frozen=True)
class GradingViolation:
    pair: tuple[str, str]
    component: str
    expected: tuple[int, ...]
    found: tuple[int, ...]


def check_grading(L: LieAlgebra, g: Grading) -> list[GradingViolation]:
    """Basis brackets with a component outside V_{mu + nu} (empty list = pass)."""
    grade = [g.grade(lab) for lab in L.basis]
    out = []
    for (a, b), vec in sorted(L.brackets.items()):
        target = g.add(grade[a], grade[b])
        for c in sorted(vec):
            if grade[c] != target:
                out.append(GradingViolation((L.basis[a], L.basis[b]), L.basis[c], target, grade[c]))
    return out


@dataclass
class GradedContraction:
    algebra: LieAlgebra
    grading_violations: list
    jacobi_violations: list

    @property
    def admissible(self) -> bool:
        return not self.jacobi_violations and not self.grading_violations


def graded_contraction(L: LieAlgebra, g: Grading, eps: Mapping) -> GradedContraction:
    """Multiply each block [V_mu, V_nu] by eps_{mu nu}.

    ``eps`` maps pairs of group elements (or plain ints for a single cyclic
    factor) to coefficients; it must be symmetric, and a missing pair is an
    error.  Admissibility of the parameters is exactly the Jacobi identity
    of the result, which is reported rather than assumed.
    """
    if check_grading(L, g):
        raise ValueError("the algebra is not graded by the given grading")

    def key(x):
        return (x,) if isinstance(x, int) else tuple(x)

    table = {}
    for (mu, nu), val in eps.items():
        k1, k2 = key(mu), key(nu)
        val = ZSeries.coerce(val, L.order)
        for k in ((k1, k2), (k2, k1)):
            if k in table and table[k] != val:
                raise ValueError(f"eps is not symmetric at {k}")
            table[k] = val

    grade = [g.grade(lab) for lab in L.basis]
    out = {}
    for (a, b), vec in L.brackets.items():
        k = (grade[a], grade[b])
        if k not in table:
            raise ValueError(f"eps has no entry for grades {k}")
        factor = table[k]
        scaled = {}
        for c, coef in vec.items():
            _acc(scaled, c, coef * factor)
        if scaled:
            out[(a, b)] = scaled
    result = LieAlgebra(L.basis, out, L.order)
    return GradedContraction(result, check_grading(result, g), check_jacobi(result))


class UnsupportedMapError(ValueError):
    """Only diagonal contraction maps are supported."""


def check_scaling_preserves_grading(phi, g: Grading) -> bool:
    """Whether a contraction map keeps every V_mu inside itself.

    A diagonal map (an :class:`EpsilonScaling`, or a diagonal matrix) always
    does.  Non-diagonal maps are outside the supported class and raise
    :class:`UnsupportedMapError`.
    """
    if isinstance(phi, EpsilonScaling):
        labels = {lab for lab, _ in g.grades}
        missing = [lab for lab, _ in phi.exponents if lab not in labels]
        if missing:
            raise ValueError(f"scaling refers to ungraded labels {missing}")
        return True
    m = np.asarray(phi, dtype=object)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise UnsupportedMapError("contraction map must be a square matrix")
    off = [(i, j) for i in range(m.shape[0]) for j in range(m.shape[1]) if i != j and m[i, j] != 0]
    if off:
        raise UnsupportedMapError("non-diagonal contraction maps are not supported")
    return True


# ---------------------------------------------------------------------------
# invariants used to tell algebras apart


def _specialize(v: ZSeries) -> "object":
    from .coeff import GaussianRational

    total = GaussianRational(0)
    for (k, exps), c in v.terms.items():
        if k:
            continue
        term = c
        for idx, e in enumerate(exps):
            term = term * GaussianRational(_GENERIC[idx % len(_GENERIC)]) ** e
        total = total + term
    return total


_GENERIC = (3, 5, 7, 11, 13, 17, 19, 23)


def _rank(rows: list[list]) -> int:
    """Rank over Q(i) by exact Gaussian elimination."""
    rows = [list(r) for r in rows if any(r)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank][col]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col] / p
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _span_basis(L: LieAlgebra, vectors: list[dict]) -> list[dict]:
    """A maximal independent subset of vectors (z^0 part, generic j)."""
    chosen: list[list] = []
    out = []
    for v in vectors:
        row = [_specialize(v[c]) if c in v else 0 for c in range(L.dimension)]
        if _rank(chosen + [row]) > len(chosen):
            chosen.append(row)
            out.append(v)
    return out


def derived_series_dimensions(L: LieAlgebra) -> list[int]:
    """dim L, dim [L, L], dim [[L,L],[L,L]], ... until it stabilises.

    Coefficients are read at z^0 with symbolic parameters set to fixed
    generic values.
    """
    one = ZSeries.one(L.order)
    current = _span_basis(L, [{a: one} for a in range(L.dimension)])
    dims = [len(current)]
    while current:
        brackets = [L.bracket(x, y) for x, y in itertools.combinations(current, 2)]
        nxt = _span_basis(L, [b for b in brackets if b])
        if len(nxt) == dims[-1]:
            break
        dims.append(len(nxt))
        current = nxt
    return dims


def center_dimension(L: LieAlgebra) -> int:
    """dim of the centre: d - rank of the map x -> ([x, X_b])_b."""
    d = L.dimension
    # row for each basis a: concatenated coordinates of [X_a, X_b] over b
    rows = []
    for a in range(d):
        row = []
        for b in range(d):
            vec = L.bracket_basis(a, b)
            row.extend(_specialize(vec[c]) if c in vec else 0 for c in range(d))
        rows.append(row)
    return d - _rank(rows)


# ---------------------------------------------------------------------------
# JSON


def lie_to_json(L: LieAlgebra) -> dict:
    brackets = {}
    for (a, b) in sorted(L.brackets):
        brackets[f"{L.basis[a]},{L.basis[b]}"] = [
            {"basis": L.basis[c], "coef": series_to_json(v)} for c, v in sorted(L.brackets[(a, b)].items())
        ]
    return {"basis": list(L.basis), "N": L.order, "brackets": brackets}


def split_pair_key(key: str, labels: Sequence[str]) -> tuple[str, str]:
    """Split ``"A,B"`` into two labels; labels such as ``X0,10`` contain commas."""
    parts = key.split(",")
    for i in range(1, len(parts)):
        a, b = ",".join(parts[:i]).strip(), ",".join(parts[i:]).strip()
        if a in labels and b in labels:
            return a, b
    raise ValueError(f"cannot split {key!r} into two basis labels")


def lie_from_json(d: Mapping) -> LieAlgebra:
    basis = list(d["basis"])
    order = int(d.get("N", DEFAULT_ORDER))
    table = {}
    for key, items in d.get("brackets", {}).items():
        a, b = split_pair_key(key, basis)
        table[(a, b)] = {it["basis"]: series_from_json(it["coef"]) for it in items}
    return LieAlgebra.from_labels(basis, table, order)
