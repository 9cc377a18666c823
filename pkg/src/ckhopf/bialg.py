"""Lie bialgebras: cocommutators, the cocycle and co-Jacobi conditions, and
their contraction under a pair of diagonal scalings.

A cocommutator is stored in wedge form, ``eta(X_a) = sum f * X_b ^ X_c`` with
``b < c`` and ``X_b ^ X_c = X_b (x) X_c - X_c (x) X_b``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .coeff import (
    DEFAULT_ORDER,
    EpsilonScaling,
    JAssignment,
    JMonomial,
    JValue,
    SingularityError,
    ZSeries,
    _acc,
    evaluate,
    series_from_json,
    series_to_json,
)
from .hopf import QuantumAlgebra, classical_lie_algebra
from .liealg import JacobiViolation, LieAlgebra, check_jacobi, contract_bracket

Wedges = dict  # {(b, c): ZSeries} with b < c


@dataclass(eq=False)
class Cocommutator:
    basis: tuple[str, ...]
    eta: dict  # {a: {(b, c): ZSeries}}
    order: int = DEFAULT_ORDER

    def __post_init__(self):
        self.basis = tuple(self.basis)
        clean = {}
        for a, wedges in self.eta.items():
            out: dict = {}
            for (b, c), coef in wedges.items():
                if b == c:
                    continue
                coef = ZSeries.coerce(coef, self.order)
                if b > c:
                    b, c, coef = c, b, -coef
                _acc(out, (b, c), coef)
            if out:
                clean[a] = out
        self.eta = clean

    @classmethod
    def from_labels(cls, basis: Sequence[str], eta: Mapping, order: int = DEFAULT_ORDER):
        """Build from ``{"X01": {("X01", "X02"): coef}}``-style data."""
        idx = {lab: i for i, lab in enumerate(basis)}
        table = {
            idx[a]: {(idx[b], idx[c]): coef for (b, c), coef in wedges.items()}
            for a, wedges in eta.items()
        }
        return cls(tuple(basis), table, order)

    @classmethod
    def zero(cls, basis: Sequence[str], order: int = DEFAULT_ORDER) -> "Cocommutator":
        return cls(tuple(basis), {}, order)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def of(self, a: int) -> Wedges:
        return self.eta.get(a, {})

    def tensor(self, a: int) -> dict:
        """eta(X_a) expanded into ``{(b, c): coef}`` over all ordered pairs."""
        out = {}
        for (b, c), v in self.of(a).items():
            out[(b, c)] = v
            out[(c, b)] = -v
        return out

    def __eq__(self, other):
        if not isinstance(other, Cocommutator):
            return NotImplemented
        return self.basis == other.basis and self.eta == other.eta

    def format_lines(self) -> list[str]:
        lines = []
        for a, lab in enumerate(self.basis):
            parts = []
            for (b, c), v in sorted(self.of(a).items()):
                wedge = f"{self.basis[b]}^{self.basis[c]}"
                s = str(v)
                parts.append(wedge if s == "1" else "-" + wedge if s == "-1" else f"({s})*{wedge}")
            rhs = " + ".join(parts).replace("+ -", "- ") if parts else "0"
            lines.append(f"eta({lab}) = {rhs}")
        return lines

    def __str__(self):
        return "\n".join(self.format_lines())


@dataclass(eq=False)
class Bialgebra:
    algebra: LieAlgebra
    cocommutator: Cocommutator

    def __post_init__(self):
        if self.algebra.basis != self.cocommutator.basis:
            raise ValueError("bracket and cocommutator must share one basis")

    def __eq__(self, other):
        if not isinstance(other, Bialgebra):
            return NotImplemented
        return self.algebra == other.algebra and self.cocommutator == other.cocommutator

    def __str__(self):
        return f"{self.algebra}\n{self.cocommutator}"


# ---------------------------------------------------------------------------
# cocycle and co-Jacobi


@dataclass(frozen=True)
class CocycleViolation:
    pair: tuple[str, str]
    residual: dict  # {(label, label): ZSeries}


def _apply_eta(eta: Cocommutator, vec: dict) -> dict:
    out: dict = {}
    for a, ca in vec.items():
        for bc, v in eta.tensor(a).items():
            _acc(out, bc, ca * v)
    return out


def _ad_tensor(L: LieAlgebra, t: dict, y: int, right: bool) -> dict:
    """``[t, 1(x)Y + Y(x)1]`` (right=True) or ``[1(x)Y + Y(x)1, t]``."""
    one = ZSeries.one(L.order)
    out: dict = {}
    for (p, q), c in t.items():
        if right:
            left_leg = L.bracket({p: one}, {y: one})
            right_leg = L.bracket({q: one}, {y: one})
        else:
            left_leg = L.bracket({y: one}, {p: one})
            right_leg = L.bracket({y: one}, {q: one})
        for r, v in right_leg.items():
            _acc(out, (p, r), c * v)
        for r, v in left_leg.items():
            _acc(out, (r, q), c * v)
    return out


def check_cocycle(B: Bialgebra) -> list[CocycleViolation]:
    """Basis pairs where ``eta([X, Y])`` differs from the adjoint expression."""
    L, eta = B.algebra, B.cocommutator
    violations = []
    for x in range(L.dimension):
        for y in range(x + 1, L.dimension):
            lhs = _apply_eta(eta, L.bracket_basis(x, y))
            total = dict(lhs)
            for key, v in _ad_tensor(L, eta.tensor(x), y, right=True).items():
                _acc(total, key, -v)
            for key, v in _ad_tensor(L, eta.tensor(y), x, right=False).items():
                _acc(total, key, -v)
            if total:
                residual = {(L.basis[p], L.basis[q]): v for (p, q), v in sorted(total.items())}
                violations.append(CocycleViolation((L.basis[x], L.basis[y]), residual))
    return violations


def dual_algebra(eta: Cocommutator) -> LieAlgebra:
    """The bracket on the dual space read off the cocommutator.

    ``[X_b*, X_c*] = sum_a f_a^{bc} X_a*`` where f_a^{bc} is the coefficient
    of ``X_b ^ X_c`` in eta(X_a).
    """
    table: dict = {}
    for a, wedges in eta.eta.items():
        for (b, c), v in wedges.items():
            table.setdefault((b, c), {})[a] = v
    return LieAlgebra(tuple(lab + "*" for lab in eta.basis), table, eta.order)


def check_cojacobi(B: Bialgebra | Cocommutator) -> list[JacobiViolation]:
    eta = B.cocommutator if isinstance(B, Bialgebra) else B
    return check_jacobi(dual_algebra(eta))


# ---------------------------------------------------------------------------
# contraction


def contract_cocommutator(B: Bialgebra | Cocommutator, psi: EpsilonScaling) -> Cocommutator:
    """Limit of eta under the diagonal scaling psi by exponent counting.

    With ``X'_a = eps**psi_a X_a`` and ``z_old = eps**psi.z z_new`` the
    coefficient of ``X_b ^ X_c`` in eta(X_a) picks up
    ``eps**(psi_a + psi.z - psi_b - psi_c)``.
    """
    eta = B.cocommutator if isinstance(B, Bialgebra) else B
    e = [psi[lab] for lab in eta.basis]
    table = {}
    for a, wedges in eta.eta.items():
        out = {}
        for (b, c), v in wedges.items():
            power = e[a] + psi.z - e[b] - e[c]
            if power < 0:
                raise SingularityError(
                    f"eta({eta.basis[a]}) component {eta.basis[b]}^{eta.basis[c]} scales as eps^{power}",
                    monomial=(eta.basis[a], eta.basis[b], eta.basis[c]),
                    location="cocommutator",
                )
            if power == 0:
                out[(b, c)] = v
        if out:
            table[a] = out
    return Cocommutator(eta.basis, table, eta.order)


def contract_mixed(B: Bialgebra | Cocommutator, phi: EpsilonScaling, psi: EpsilonScaling) -> Cocommutator:
    """``(Psi (x) Psi) o eta o Phi^-1`` with eps kept as an extra Laurent
    variable, followed by the eps -> 0 limit through :func:`evaluate`."""
    eta = B.cocommutator if isinstance(B, Bialgebra) else B
    nvars = max((v.nvars() for w in eta.eta.values() for v in w.values()), default=0)
    slot = nvars  # eps lives in parameter position nvars+1
    def eps(k: int) -> JMonomial:
        return JMonomial(1, (0,) * slot + (k,))

    limit = JAssignment((JValue.SYMBOLIC,) * slot + (JValue.DUAL,))
    table = {}
    for a, lab in enumerate(eta.basis):
        # X'_a = eps^phi_a X_a, z_old = eps^z z_new, X_b = eps^-psi_b X'_b
        pre = eps(phi[lab] + psi.z)
        out = {}
        for (b, c), v in eta.of(a).items():
            m = pre * eps(-psi[eta.basis[b]] - psi[eta.basis[c]])
            try:
                lim = evaluate(v.scale_j(m), limit)
            except SingularityError:
                power = phi[lab] + psi.z - psi[eta.basis[b]] - psi[eta.basis[c]]
                raise SingularityError(
                    f"eta({lab}) component {eta.basis[b]}^{eta.basis[c]} scales as eps^{power}",
                    monomial=(lab, eta.basis[b], eta.basis[c]),
                    location="mixed cocommutator",
                ) from None
            if lim:
                out[(b, c)] = lim
        if out:
            table[a] = out
    return Cocommutator(eta.basis, table, eta.order)


@dataclass
class BialgebraContraction:
    bialgebra: Bialgebra  # bracket via phi, cocommutator via psi
    mixed: Cocommutator | None  # the (Psi (x) Psi) o eta o Phi^-1 limit, None if divergent
    mixed_error: str | None = None
    cocycle: list = field(default_factory=list)
    cojacobi: list = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return self.mixed is not None and self.mixed == self.bialgebra.cocommutator

    @property
    def is_bialgebra(self) -> bool:
        return not self.cocycle and not self.cojacobi

    def lines(self) -> list[str]:
        out = [str(self.bialgebra)]
        if self.mixed is None:
            out.append(f"mixed limit diverges: {self.mixed_error}")
        out.append(f"two-map consistency: {'pass' if self.consistent else 'MISMATCH'}")
        out.append(f"cocycle: {'pass' if not self.cocycle else f'{len(self.cocycle)} violations'}")
        out.append(f"co-Jacobi: {'pass' if not self.cojacobi else f'{len(self.cojacobi)} violations'}")
        return out


def contract_bialgebra(B: Bialgebra, phi: EpsilonScaling, psi: EpsilonScaling) -> BialgebraContraction:
    """Contract the bracket with phi and eta with psi, then compare with the
    mixed limit and re-check the bialgebra conditions.

    Singular bracket or eta limits raise; a divergent mixed limit is reported
    as an inconsistency instead.
    """
    L = contract_bracket(B.algebra, phi)
    eta = contract_cocommutator(B.cocommutator, psi)
    try:
        mixed, err = contract_mixed(B.cocommutator, phi, psi), None
    except SingularityError as exc:
        mixed, err = None, str(exc)
    out = Bialgebra(L, eta)
    return BialgebraContraction(out, mixed, err, check_cocycle(out), check_cojacobi(out))


# ---------------------------------------------------------------------------
# classical limit of a quantum algebra


def first_order_cocommutator(Q: QuantumAlgebra) -> Cocommutator:
    """The z^1 coefficient of ``Delta - Delta^op`` on each generator."""
    table = {}
    for i, g in enumerate(Q.generators):
        t = Q.coproduct[i]
        skew = t - t.opposite()
        wedges = {}
        for legs, c in skew.terms.items():
            head = c.coefficient(1)
            if not head:
                continue
            if any(len(w) != 1 for w in legs):
                shown = " (x) ".join(Q.format_word(w) for w in legs)
                raise ValueError(f"z^1 part of Delta({g}) - Delta^op({g}) leaves L(x)L: {shown}")
            b, c_ = legs[0][0], legs[1][0]
            if b < c_:
                wedges[(b, c_)] = ZSeries({0: head}, Q.order)
        if wedges:
            table[i] = wedges
    return Cocommutator(Q.generators, table, Q.order)


def bialgebra_from_quantum(Q: QuantumAlgebra) -> Bialgebra:
    return Bialgebra(classical_lie_algebra(Q), first_order_cocommutator(Q))


# ---------------------------------------------------------------------------
# JSON


def cocommutator_to_json(eta: Cocommutator) -> dict:
    body = {}
    for a, lab in enumerate(eta.basis):
        body[lab] = [
            {"wedge": [eta.basis[b], eta.basis[c]], "coef": series_to_json(v)}
            for (b, c), v in sorted(eta.of(a).items())
        ]
    return {"basis": list(eta.basis), "N": eta.order, "eta": body}


def cocommutator_from_json(d: Mapping) -> Cocommutator:
    eta = d["eta"]
    basis = tuple(d.get("basis") or eta.keys())
    order = int(d.get("N", DEFAULT_ORDER))
    table = {
        a: {tuple(item["wedge"]): series_from_json(item["coef"]) for item in items}
        for a, items in eta.items()
    }
    return Cocommutator.from_labels(basis, table, order)
