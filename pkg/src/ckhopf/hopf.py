"""Quantum (Hopf) algebras with PBW normal forms over truncated z-series.

An algebra is given by generators in a fixed PBW order, the commutator of
every out-of-order pair, and the Hopf maps on generators.  Elements are
linear combinations of *words* (tuples of generator indices); a word is in
normal form when its letters are nondecreasing.  Normal forms are computed
by the rewriting rule ``X_b X_a -> X_a X_b + [X_b, X_a]`` for ``b > a``.
Series-valued commutators such as sinh(z X)/z only add longer words at
higher powers of z, so truncation at z^N makes rewriting terminate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .coeff import (
    DEFAULT_ORDER,
    JAssignment,
    JMonomial,
    SingularityError,
    ZSeries,
    _acc,
    evaluate,
    series_from_json,
    series_to_json,
)
from .liealg import LieAlgebra, split_pair_key

Word = tuple


# ---------------------------------------------------------------------------
# elements and tensors


class Element:
    """Linear combination ``{word: ZSeries}`` in the algebra."""

    __slots__ = ("terms", "order")

    def __init__(self, terms: Mapping[Word, object] | None = None, order: int = DEFAULT_ORDER):
        self.order = order
        clean: dict = {}
        for w, c in (terms or {}).items():
            c = ZSeries.coerce(c, order)
            if c.order > order:
                c = c.truncate(order)
            _acc(clean, tuple(w), c)
        self.terms = clean

    @classmethod
    def _raw(cls, terms: dict, order: int) -> "Element":
        x = object.__new__(cls)
        x.terms = terms
        x.order = order
        return x

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> "Element":
        return cls._raw({(): ZSeries.one(order)}, order)

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> "Element":
        return cls._raw({}, order)

    @classmethod
    def word(cls, w: Sequence[int], coef=1, order: int = DEFAULT_ORDER) -> "Element":
        return cls({tuple(w): coef}, order)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_normal(self) -> bool:
        return all(list(w) == sorted(w) for w in self.terms)

    def __add__(self, other: "Element") -> "Element":
        out = dict(self.terms)
        for w, c in other.terms.items():
            _acc(out, w, c)
        return Element._raw(out, min(self.order, other.order))

    def __neg__(self):
        return Element._raw({w: -c for w, c in self.terms.items()}, self.order)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, c) -> "Element":
        out: dict = {}
        for w, v in self.terms.items():
            _acc(out, w, v * c)
        return Element._raw(out, self.order)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Element({self.terms!r})"


class Tensor:
    """Element of the r-fold tensor power: ``{(word_1, ..., word_r): ZSeries}``."""

    __slots__ = ("rank", "terms", "order")

    def __init__(self, rank: int, terms: Mapping[tuple, object] | None = None, order: int = DEFAULT_ORDER):
        self.rank = rank
        self.order = order
        clean: dict = {}
        for legs, c in (terms or {}).items():
            legs = tuple(tuple(w) for w in legs)
            if len(legs) != rank:
                raise ValueError(f"expected {rank} legs, got {len(legs)}")
            _acc(clean, legs, ZSeries.coerce(c, order))
        self.terms = clean

    @classmethod
    def _raw(cls, rank: int, terms: dict, order: int) -> "Tensor":
        t = object.__new__(cls)
        t.rank = rank
        t.terms = terms
        t.order = order
        return t

    @classmethod
    def unit(cls, rank: int, order: int = DEFAULT_ORDER) -> "Tensor":
        return cls._raw(rank, {((),) * rank: ZSeries.one(order)}, order)

    @classmethod
    def from_element(cls, x: Element) -> "Tensor":
        return cls._raw(1, {(w,): c for w, c in x.terms.items()}, x.order)

    def to_element(self) -> Element:
        if self.rank != 1:
            raise ValueError("only rank-1 tensors are algebra elements")
        return Element._raw({legs[0]: c for legs, c in self.terms.items()}, self.order)

    def __add__(self, other: "Tensor") -> "Tensor":
        if self.rank != other.rank:
            raise ValueError("tensor rank mismatch")
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return Tensor._raw(self.rank, out, min(self.order, other.order))

    def __neg__(self):
        return Tensor._raw(self.rank, {k: -c for k, c in self.terms.items()}, self.order)

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + (-other)

    def scale(self, c) -> "Tensor":
        out: dict = {}
        for k, v in self.terms.items():
            _acc(out, k, v * c)
        return Tensor._raw(self.rank, out, self.order)

    def opposite(self) -> "Tensor":
        """Swap the two legs of a rank-2 tensor."""
        if self.rank != 2:
            raise ValueError("opposite is defined for rank 2")
        return Tensor._raw(2, {(b, a): c for (a, b), c in self.terms.items()}, self.order)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Tensor({self.rank}, {self.terms!r})"


def _times(c1: ZSeries, c2: ZSeries) -> ZSeries:
    if c1.terms.keys() == {(0, ())} and c1.terms[(0, ())] == 1:
        return c2 if c2.order <= c1.order else c2.truncate(c1.order)
    if c2.terms.keys() == {(0, ())} and c2.terms[(0, ())] == 1:
        return c1 if c1.order <= c2.order else c1.truncate(c2.order)
    return c1 * c2


# ---------------------------------------------------------------------------
# the algebra


class QuantumAlgebra:
    """Generators, commutation relations and Hopf maps on generators.

    ``relations[(b, a)]`` (indices, ``b > a`` in PBW order) is the element
    ``[X_b, X_a]``.  Missing pairs commute.  ``coproduct``, ``counit`` and
    ``antipode`` are keyed by generator index.  Instances are treated as
    immutable; the multiplication caches only memoise pure results.
    """

    def __init__(
        self,
        generators: Sequence[str],
        relations: Mapping,
        coproduct: Mapping,
        counit: Mapping,
        antipode: Mapping,
        order: int = DEFAULT_ORDER,
        metadata: Mapping | None = None,
    ):
        self.generators = tuple(generators)
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("generator labels must be unique")
        self.order = order
        self.metadata = dict(metadata or {})
        idx = self._index

        rel = {}
        for (b, a), val in relations.items():
            b, a = idx(b), idx(a)
            if a == b:
                raise ValueError("a generator commutes with itself")
            val = _as_element(val, order)
            if b < a:
                b, a, val = a, b, -val
            if (b, a) in rel and rel[(b, a)] != val:
                raise ValueError(f"conflicting relations for {self.generators[b]}, {self.generators[a]}")
            rel[(b, a)] = val
        self.relations = rel

        self.coproduct = {idx(k): _as_tensor(v, order) for k, v in coproduct.items()}
        self.counit = {idx(k): ZSeries.coerce(v, order) for k, v in counit.items()}
        self.antipode = {idx(k): _as_element(v, order) for k, v in antipode.items()}
        for name, table in (("coproduct", self.coproduct), ("counit", self.counit), ("antipode", self.antipode)):
            missing = [g for i, g in enumerate(self.generators) if i not in table]
            if missing:
                raise ValueError(f"{name} undefined on {missing}")

        self._one = ZSeries.one(order)
        self._gen_cache: dict = {}
        self._words_cache: dict = {}
        self._delta_cache: dict = {}
        self._gamma_cache: dict = {}

    def _index(self, g) -> int:
        if isinstance(g, int):
            if not 0 <= g < len(self.generators):
                raise IndexError(f"generator index {g} out of range")
            return g
        try:
            return self.generators.index(g)
        except ValueError:
            raise KeyError(f"unknown generator {g!r}") from None

    @property
    def dimension(self) -> int:
        return len(self.generators)

    @property
    def pbw_order(self) -> tuple[str, ...]:
        return self.generators

    def nparams(self) -> int:
        """Number of Cayley-Klein parameters appearing in the structure."""
        n = self.metadata.get("params")
        if n is not None:
            return int(n)
        found = 0
        for x in self._all_series():
            found = max(found, x.nvars())
        return found

    def _all_series(self):
        for x in self.relations.values():
            yield from x.terms.values()
        for t in self.coproduct.values():
            yield from t.terms.values()
        yield from self.counit.values()
        for x in self.antipode.values():
            yield from x.terms.values()

    def gen(self, g, coef=1) -> Element:
        return Element.word((self._index(g),), coef, self.order)

    def word(self, *labels) -> Element:
        return Element.word(tuple(self._index(g) for g in labels), 1, self.order)

    def commutator_of(self, b: int, a: int) -> Element:
        """[X_b, X_a] for any pair of generator indices."""
        if a == b:
            return Element.zero(self.order)
        if b > a:
            return self.relations.get((b, a), Element.zero(self.order))
        return -self.relations.get((a, b), Element.zero(self.order))

    # -- multiplication kernel ------------------------------------------------

    def _mul_word_gen(self, w: Word, g: int) -> dict:
        """Normal form of (normal word w) * X_g."""
        if not w or w[-1] <= g:
            return {w + (g,): self._one}
        key = (w, g)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        head, b = w[:-1], w[-1]
        out: dict = {}
        # head X_b X_g = head X_g X_b + head [X_b, X_g]
        for u, c in self._mul_word_gen(head, g).items():
            for v, c2 in self._mul_word_gen(u, b).items():
                _acc(out, v, _times(c, c2))
        rel = self.relations.get((b, g))
        if rel is not None:
            for r, c in rel.terms.items():
                for v, c2 in self._mul_words(head, r).items():
                    _acc(out, v, _times(c, c2))
        self._gen_cache[key] = out
        return out

    def _mul_words(self, u: Word, v: Word) -> dict:
        """Normal form of (normal word u) * (arbitrary word v)."""
        if not v:
            return {u: self._one}
        key = (u, v)
        hit = self._words_cache.get(key)
        if hit is not None:
            return hit
        cur = {u: self._one}
        for g in v:
            nxt: dict = {}
            for w, c in cur.items():
                for w2, c2 in self._mul_word_gen(w, g).items():
                    _acc(nxt, w2, _times(c, c2))
            cur = nxt
        self._words_cache[key] = cur
        return cur

    # -- coproduct / antipode on words -----------------------------------------

    def _delta_word(self, w: Word) -> Tensor:
        hit = self._delta_cache.get(w)
        if hit is not None:
            return hit
        if not w:
            out = Tensor.unit(2, self.order)
        else:
            out = tensor_multiply(self, self._delta_word(w[:-1]), self.coproduct[w[-1]])
        self._delta_cache[w] = out
        return out

    def _gamma_word(self, w: Word) -> Element:
        hit = self._gamma_cache.get(w)
        if hit is not None:
            return hit
        if not w:
            out = Element.one(self.order)
        else:
            # anti-homomorphism: gamma(w' X) = gamma(X) gamma(w')
            out = multiply(self, self.antipode[w[-1]], self._gamma_word(w[:-1]))
        self._gamma_cache[w] = out
        return out

    def _counit_word(self, w: Word) -> ZSeries:
        out = ZSeries.one(self.order)
        for g in w:
            out = out * self.counit[g]
        return out

    # -- comparison / display ----------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, QuantumAlgebra):
            return NotImplemented
        return (
            self.generators == other.generators
            and self.order == other.order
            and {k: v for k, v in self.relations.items() if v} == {k: v for k, v in other.relations.items() if v}
            and self.coproduct == other.coproduct
            and self.counit == other.counit
            and self.antipode == other.antipode
        )

    __hash__ = None

    def format_word(self, w: Word) -> str:
        if not w:
            return "1"
        parts = []
        for g, grp in itertools.groupby(w):
            k = len(list(grp))
            parts.append(self.generators[g] + (f"^{k}" if k > 1 else ""))
        return "*".join(parts)

    def format(self, x: "Element | Tensor") -> str:
        if isinstance(x, Element):
            items = [((w,), c) for w, c in x.terms.items()]
        else:
            items = list(x.terms.items())
        if not items:
            return "0"
        parts = []
        for legs, c in sorted(items, key=lambda kv: (tuple((len(w), w) for w in kv[0]))):
            body = " (x) ".join(self.format_word(w) for w in legs)
            cs = str(c)
            if cs == "1":
                parts.append(body)
            elif cs == "-1":
                parts.append("-" + body if len(legs) == 1 else f"-({body})")
            elif body == "1" or body == " (x) ".join(["1"] * len(legs)) and len(legs) == 1:
                parts.append(f"({cs})")
            else:
                parts.append(f"({cs})*{body}" if len(legs) == 1 else f"({cs})*({body})")
        return " + ".join(parts).replace("+ -", "- ")

    def describe(self) -> list[str]:
        lines = [f"generators (PBW order): {', '.join(self.generators)}", f"truncation order N = {self.order}"]
        for key, val in self.metadata.items():
            lines.append(f"{key}: {val}")
        lines.append("relations:")
        for a, b in itertools.combinations(range(self.dimension), 2):
            val = self.commutator_of(b, a)
            lines.append(f"  [{self.generators[b]}, {self.generators[a]}] = {self.format(val)}")
        lines.append("coproduct:")
        for i, g in enumerate(self.generators):
            lines.append(f"  Delta({g}) = {self.format(self.coproduct[i])}")
        lines.append("counit:")
        for i, g in enumerate(self.generators):
            lines.append(f"  u({g}) = {self.counit[i]}")
        lines.append("antipode:")
        for i, g in enumerate(self.generators):
            lines.append(f"  gamma({g}) = {self.format(self.antipode[i])}")
        return lines

    def __str__(self):
        return "\n".join(self.describe())


def _as_element(x, order: int) -> Element:
    if isinstance(x, Element):
        return x
    if isinstance(x, Mapping):
        return Element(x, order)
    return Element({(): x}, order)


def _as_tensor(x, order: int) -> Tensor:
    if isinstance(x, Tensor):
        return x
    return Tensor(2, x, order)


# ---------------------------------------------------------------------------
# normal forms and products


STRATEGIES = ("insertion", "leftmost", "rightmost")


def normal_form(Q: QuantumAlgebra, x: Element, strategy: str = "insertion") -> Element:
    """PBW normal form of a combination of arbitrary words.

    ``"insertion"`` multiplies letters in one at a time through the memoised
    kernel.  ``"leftmost"`` / ``"rightmost"`` rewrite raw words, always at
    the leftmost (outermost-first) or rightmost (innermost-first) adjacent
    inversion; they exist to cross-check confluence of the relations.
    """
    if strategy == "insertion":
        out: dict = {}
        for w, c in x.terms.items():
            for v, c2 in Q._mul_words((), w).items():
                _acc(out, v, _times(c, c2))
        return Element._raw(out, x.order)
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown rewriting strategy {strategy!r}")
    return _rewrite(Q, x, rightmost=strategy == "rightmost")


def _rewrite(Q: QuantumAlgebra, x: Element, rightmost: bool) -> Element:
    pending = dict(x.terms)
    done: dict = {}
    while pending:
        w, c = pending.popitem()
        positions = [i for i in range(len(w) - 1) if w[i] > w[i + 1]]
        if not positions:
            _acc(done, w, c)
            continue
        i = positions[-1] if rightmost else positions[0]
        b, a = w[i], w[i + 1]
        _acc(pending, w[:i] + (a, b) + w[i + 2 :], c)
        for r, cr in Q.relations.get((b, a), Element.zero()).terms.items():
            _acc(pending, w[:i] + r + w[i + 2 :], _times(c, cr))
    return Element._raw(done, x.order)


def multiply(Q: QuantumAlgebra, x: Element, y: Element) -> Element:
    if not x.is_normal():
        x = normal_form(Q, x)
    out: dict = {}
    for u, cu in x.terms.items():
        for v, cv in y.terms.items():
            c = _times(cu, cv)
            if not c:
                continue
            for w, cw in Q._mul_words(u, v).items():
                _acc(out, w, _times(c, cw))
    return Element._raw(out, min(x.order, y.order))


def tensor_multiply(Q: QuantumAlgebra, s: Tensor, t: Tensor) -> Tensor:
    """Leg-wise product (no braiding) of two tensors of equal rank."""
    if s.rank != t.rank:
        raise ValueError(f"rank mismatch: {s.rank} vs {t.rank}")
    out: dict = {}
    for legs1, c1 in s.terms.items():
        for legs2, c2 in t.terms.items():
            c = _times(c1, c2)
            if not c:
                continue
            factors = [Q._mul_words(u, v).items() for u, v in zip(legs1, legs2)]
            for combo in itertools.product(*factors):
                coef = c
                for _, cw in combo:
                    coef = _times(coef, cw)
                _acc(out, tuple(w for w, _ in combo), coef)
    return Tensor._raw(s.rank, out, min(s.order, t.order))


def commutator(Q: QuantumAlgebra, x: Element, y: Element) -> Element:
    return multiply(Q, x, y) - multiply(Q, y, x)


def tensor_commutator(Q: QuantumAlgebra, s: Tensor, t: Tensor) -> Tensor:
    return tensor_multiply(Q, s, t) - tensor_multiply(Q, t, s)


# ---------------------------------------------------------------------------
# extension of the Hopf maps from generators


def extend_coproduct(Q: QuantumAlgebra, x: Element) -> Tensor:
    """Delta as an algebra homomorphism (Delta(1) = 1 (x) 1)."""
    x = x if x.is_normal() else normal_form(Q, x)
    out: dict = {}
    for w, c in x.terms.items():
        for legs, c2 in Q._delta_word(w).terms.items():
            _acc(out, legs, _times(c, c2))
    return Tensor._raw(2, out, x.order)


def extend_counit(Q: QuantumAlgebra, x: Element) -> ZSeries:
    """u as an algebra homomorphism to the coefficient ring (u(1) = 1)."""
    out = ZSeries.zero(x.order)
    for w, c in x.terms.items():
        out = out + c * Q._counit_word(w)
    return out


def extend_antipode(Q: QuantumAlgebra, x: Element) -> Element:
    """gamma as an anti-homomorphism: gamma(xy) = gamma(y) gamma(x)."""
    out: dict = {}
    for w, c in x.terms.items():
        for v, c2 in Q._gamma_word(w).terms.items():
            _acc(out, v, _times(c, c2))
    return Element._raw(out, x.order)


def _on_leg(t: Tensor, leg: int, f: Callable[[Word], Tensor], rank_out: int) -> Tensor:
    """Apply a map word -> tensor to one leg, splicing the result in."""
    out: dict = {}
    cache: dict = {}
    for legs, c in t.terms.items():
        w = legs[leg]
        if w not in cache:
            cache[w] = f(w)
        for inner, c2 in cache[w].terms.items():
            _acc(out, legs[:leg] + inner + legs[leg + 1 :], _times(c, c2))
    return Tensor._raw(rank_out, out, t.order)


def coproduct_on_leg(Q: QuantumAlgebra, t: Tensor, leg: int) -> Tensor:
    return _on_leg(t, leg, Q._delta_word, t.rank + 1)


def counit_on_leg(Q: QuantumAlgebra, t: Tensor, leg: int) -> Tensor:
    def u(w):
        return Tensor._raw(0, {(): Q._counit_word(w)}, Q.order)

    return _on_leg(t, leg, u, t.rank - 1)


def antipode_on_leg(Q: QuantumAlgebra, t: Tensor, leg: int) -> Tensor:
    return _on_leg(t, leg, lambda w: Tensor.from_element(Q._gamma_word(w)), t.rank)


def multiply_legs(Q: QuantumAlgebra, t: Tensor) -> Element:
    """m(a (x) b) = ab for a rank-2 tensor."""
    if t.rank != 2:
        raise ValueError("multiply_legs needs a rank-2 tensor")
    out: dict = {}
    for (u, v), c in t.terms.items():
        for w, c2 in Q._mul_words(u, v).items():
            _acc(out, w, _times(c, c2))
    return Element._raw(out, t.order)


# ---------------------------------------------------------------------------
# axiom checks


@dataclass
class CheckResult:
    name: str
    passed: bool = True
    failures: list = field(default_factory=list)  # (where, residual text)

    def fail(self, where: str, residual: str) -> None:
        self.passed = False
        self.failures.append((where, residual))


@dataclass
class HopfReport:
    checks: dict  # name -> CheckResult

    def __getitem__(self, name: str) -> CheckResult:
        return self.checks[name]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def lines(self) -> list[str]:
        out = []
        for name, c in self.checks.items():
            out.append(f"{name:<15} {'pass' if c.passed else 'FAIL'}")
            for where, res in c.failures:
                out.append(f"    {where}: residual {res}")
        return out


HOPF_CHECKS = ("H1", "H2", "H2-standard", "H3-paper", "H3-standard", "hom-coproduct", "hom-counit", "hom-antipode")


def check_hopf_axioms(Q: QuantumAlgebra) -> HopfReport:
    """Coassociativity, counit and antipode axioms plus compatibility.

    H2 and H3 are checked as two-sided equalities (each side against the
    other) and, separately, in standard form against ``a`` resp. ``u(a) 1``.
    The homomorphism checks compare Delta, u and gamma applied to each
    relation with the commutator of the images.
    """
    checks = {name: CheckResult(name) for name in HOPF_CHECKS}
    N = Q.order
    for i, g in enumerate(Q.generators):
        d = Q.coproduct[i]
        left = coproduct_on_leg(Q, d, 1)
        right = coproduct_on_leg(Q, d, 0)
        if left != right:
            checks["H1"].fail(g, Q.format(left - right))

        a = Tensor.from_element(Q.gen(i))
        id_u = counit_on_leg(Q, d, 1)
        u_id = counit_on_leg(Q, d, 0)
        if id_u != u_id:
            checks["H2"].fail(g, Q.format(id_u - u_id))
        for side, val in (("(id x u)", id_u), ("(u x id)", u_id)):
            if val != a:
                checks["H2-standard"].fail(f"{g} {side}", Q.format(val - a))

        m_id_s = multiply_legs(Q, antipode_on_leg(Q, d, 1))
        m_s_id = multiply_legs(Q, antipode_on_leg(Q, d, 0))
        if m_id_s != m_s_id:
            checks["H3-paper"].fail(g, Q.format(m_id_s - m_s_id))
        unit = Element({(): Q.counit[i]}, N)
        for side, val in (("m(id x gamma)", m_id_s), ("m(gamma x id)", m_s_id)):
            if val != unit:
                checks["H3-standard"].fail(f"{g} {side}", Q.format(val - unit))

    for (b, a), rel in sorted(Q.relations.items()):
        where = f"[{Q.generators[b]}, {Q.generators[a]}]"
        lhs = extend_coproduct(Q, rel)
        rhs = tensor_commutator(Q, Q.coproduct[b], Q.coproduct[a])
        if lhs != rhs:
            checks["hom-coproduct"].fail(where, Q.format(lhs - rhs))
        cu = extend_counit(Q, rel) - (Q.counit[b] * Q.counit[a] - Q.counit[a] * Q.counit[b])
        if cu:
            checks["hom-counit"].fail(where, str(cu))
        lhs = extend_antipode(Q, rel)
        rhs = commutator(Q, Q.antipode[a], Q.antipode[b])
        if lhs != rhs:
            checks["hom-antipode"].fail(where, Q.format(lhs - rhs))
    return HopfReport(checks)


# ---------------------------------------------------------------------------
# transformations


def _map_element(x: Element, f: Callable[[Word, ZSeries], tuple]) -> Element:
    out: dict = {}
    for w, c in x.terms.items():
        w2, c2 = f(w, c)
        _acc(out, w2, c2)
    return Element._raw(out, x.order)


def _map_tensor(t: Tensor, f: Callable[[Word, ZSeries], tuple]) -> Tensor:
    out: dict = {}
    for legs, c in t.terms.items():
        new_legs = []
        for w in legs:
            w2, c = f(w, c)
            new_legs.append(w2)
        _acc(out, tuple(new_legs), c)
    return Tensor._raw(t.rank, out, t.order)


def transform_hopf(
    Q: QuantumAlgebra, scaling: Mapping[str, JMonomial], z_multiplier: JMonomial
) -> QuantumAlgebra:
    """Rescale generators ``X_a = J_a X*_a`` and the parameter ``z* = J z``.

    Every X*_a in the relations and Hopf maps is replaced by ``J_a^-1 X_a``
    and every z* by ``J z``; the images of X_a are J_a times the images of
    X*_a.  Parameters stay symbolic, so negative powers are fine here.
    """
    J = [scaling.get(g, JMonomial()) for g in Q.generators]
    J_inv = [m.inverse() for m in J]
    z_mul = z_multiplier

    # per leg only the generator factors; z is substituted once per term
    def subst(w: Word, c: ZSeries):
        m = JMonomial()
        for g in w:
            m = m * J_inv[g]
        return w, c.scale_j(m)

    def on_z(w: Word, c: ZSeries):
        return w, c.substitute_z(z_mul)

    def scaled(x, m: JMonomial):
        return x.scale(ZSeries.constant(m.to_poly(), Q.order))

    def el(x: Element, m: JMonomial) -> Element:
        return scaled(_map_element(_map_element(x, on_z), subst), m)

    def tens(t: Tensor, m: JMonomial) -> Tensor:
        t = Tensor._raw(t.rank, {legs: c.substitute_z(z_mul) for legs, c in t.terms.items()}, t.order)
        return scaled(_map_tensor(t, subst), m)

    relations = {
        (Q.generators[b], Q.generators[a]): el(val, J[b] * J[a]) for (b, a), val in Q.relations.items()
    }
    coproduct = {Q.generators[i]: tens(t, J[i]) for i, t in Q.coproduct.items()}
    counit = {Q.generators[i]: c.substitute_z(z_mul).scale_j(J[i]) for i, c in Q.counit.items()}
    antipode = {Q.generators[i]: el(x, J[i]) for i, x in Q.antipode.items()}
    return QuantumAlgebra(Q.generators, relations, coproduct, counit, antipode, Q.order, Q.metadata)


def relabel(
    Q: QuantumAlgebra,
    mapping: Mapping[str, tuple[int, str]],
    generators: Sequence[str] | None = None,
) -> QuantumAlgebra:
    """Rename generators, ``X_old -> sign * X_new``, and re-normal-order.

    ``generators`` fixes the PBW order of the result (default: sorted new
    labels).  Words that fall out of order are rewritten with the relabelled
    relations.
    """
    new_labels = sorted(lab for _, lab in mapping.values()) if generators is None else list(generators)
    pos = {lab: i for i, lab in enumerate(new_labels)}
    image = [pos[mapping[g][1]] for g in Q.generators]
    sign = [mapping[g][0] for g in Q.generators]

    def f(w: Word, c: ZSeries):
        s = 1
        for g in w:
            s *= sign[g]
        return tuple(image[g] for g in w), (c if s == 1 else -c)

    raw_rel = {}
    for (b, a), val in Q.relations.items():
        v = _map_element(val, f)
        if sign[a] * sign[b] == -1:
            v = -v
        raw_rel[(image[b], image[a])] = v
    zero_hopf = {lab: Tensor.unit(2, Q.order) for lab in new_labels}
    provisional = QuantumAlgebra(
        new_labels,
        raw_rel,
        zero_hopf,
        {lab: 0 for lab in new_labels},
        {lab: Element.zero(Q.order) for lab in new_labels},
        Q.order,
    )
    relations = {k: normal_form(provisional, v, "leftmost") for k, v in provisional.relations.items()}
    target = QuantumAlgebra(
        new_labels, relations, zero_hopf, {lab: 0 for lab in new_labels},
        {lab: Element.zero(Q.order) for lab in new_labels}, Q.order,
    )

    def nf_tensor(t: Tensor) -> Tensor:
        out = Tensor(t.rank, {}, t.order)
        for legs, c in t.terms.items():
            parts = [normal_form(target, Element({w: 1}, t.order)).terms.items() for w in legs]
            acc: dict = {}
            for combo in itertools.product(*parts):
                coef = c
                for _, cw in combo:
                    coef = _times(coef, cw)
                _acc(acc, tuple(w for w, _ in combo), coef)
            out = out + Tensor._raw(t.rank, acc, t.order)
        return out

    coproduct, counit, antipode = {}, {}, {}
    for i, g in enumerate(Q.generators):
        new = new_labels[image[i]]
        s = sign[i]
        coproduct[new] = nf_tensor(_map_tensor(Q.coproduct[i], f)).scale(s)
        counit[new] = Q.counit[i] * s
        antipode[new] = normal_form(target, _map_element(Q.antipode[i], f)).scale(s)
    return QuantumAlgebra(new_labels, relations, coproduct, counit, antipode, Q.order, Q.metadata)


def contract_hopf(Q: QuantumAlgebra, a: JAssignment, mode: str = "limit") -> QuantumAlgebra:
    """Substitute j-values (dual units as limits) into every structure map.

    Raises :class:`SingularityError` naming the map, generator and term when
    any coefficient has a negative power of a dual parameter.
    """

    def ev(c: ZSeries, where: str) -> ZSeries:
        try:
            return evaluate(c, a, mode)
        except SingularityError as exc:
            raise exc.at(where) from None

    def ev_element(x: Element, where: str) -> Element:
        out: dict = {}
        for w, c in x.terms.items():
            _acc(out, w, ev(c, f"{where}, term {Q.format_word(w)}"))
        return Element._raw(out, x.order)

    def ev_tensor(t: Tensor, where: str) -> Tensor:
        out: dict = {}
        for legs, c in t.terms.items():
            _acc(out, legs, ev(c, f"{where}, term {' (x) '.join(Q.format_word(w) for w in legs)}"))
        return Tensor._raw(t.rank, out, t.order)

    G = Q.generators
    relations = {
        (G[b], G[a]): ev_element(val, f"relation [{G[b]}, {G[a]}]") for (b, a), val in Q.relations.items()
    }
    coproduct = {G[i]: ev_tensor(t, f"coproduct of {G[i]}") for i, t in Q.coproduct.items()}
    counit = {G[i]: ev(c, f"counit of {G[i]}") for i, c in Q.counit.items()}
    antipode = {G[i]: ev_element(x, f"antipode of {G[i]}") for i, x in Q.antipode.items()}
    meta = dict(Q.metadata)
    meta["contraction"] = str(a)
    return QuantumAlgebra(G, relations, coproduct, counit, antipode, Q.order, meta)


@dataclass
class AntipodeSquare:
    images: dict  # generator label -> Element
    involutive: bool


def antipode_square_report(Q: QuantumAlgebra) -> AntipodeSquare:
    images = {}
    involutive = True
    for i, g in enumerate(Q.generators):
        sq = extend_antipode(Q, Q.antipode[i])
        images[g] = sq
        if sq != Q.gen(i):
            involutive = False
    return AntipodeSquare(images, involutive)


def classical_lie_algebra(Q: QuantumAlgebra) -> LieAlgebra:
    """The z^0, linear part of the relations as a Lie algebra."""
    table = {}
    for (b, a), val in Q.relations.items():
        vec = {}
        for w, c in val.terms.items():
            head = c.coefficient(0)
            if not head:
                continue
            if len(w) != 1:
                raise ValueError(
                    f"relation [{Q.generators[b]}, {Q.generators[a]}] is not linear at z^0"
                )
            vec[w[0]] = ZSeries({0: head}, Q.order)
        if vec:
            table[(b, a)] = vec
    return LieAlgebra(Q.generators, table, Q.order)


def is_primitive(Q: QuantumAlgebra, g) -> bool:
    i = Q._index(g)
    return Q.coproduct[i] == Tensor(2, {((), (i,)): 1, ((i,), ()): 1}, Q.order)


# ---------------------------------------------------------------------------
# JSON


def element_to_json(Q: QuantumAlgebra, x: Element) -> list:
    return [
        {"word": [Q.generators[g] for g in w], "coef": series_to_json(c)}
        for w, c in sorted(x.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))
    ]


def element_from_json(generators: Sequence[str], items, order: int) -> Element:
    idx = {g: i for i, g in enumerate(generators)}
    return Element({tuple(idx[g] for g in it["word"]): series_from_json(it["coef"]) for it in items}, order)


def tensor_to_json(Q: QuantumAlgebra, t: Tensor) -> list:
    key = lambda kv: tuple((len(w), w) for w in kv[0])  # noqa: E731
    return [
        {"legs": [[Q.generators[g] for g in w] for w in legs], "coef": series_to_json(c)}
        for legs, c in sorted(t.terms.items(), key=key)
    ]


def tensor_from_json(generators: Sequence[str], items, order: int, rank: int = 2) -> Tensor:
    idx = {g: i for i, g in enumerate(generators)}
    return Tensor(
        rank,
        {tuple(tuple(idx[g] for g in w) for w in it["legs"]): series_from_json(it["coef"]) for it in items},
        order,
    )


def quantum_to_json(Q: QuantumAlgebra) -> dict:
    G = Q.generators
    return {
        "generators": list(G),
        "pbw_order": list(Q.pbw_order),
        "N": Q.order,
        "relations": {
            f"{G[b]},{G[a]}": element_to_json(Q, val) for (b, a), val in sorted(Q.relations.items()) if val
        },
        "coproduct": {G[i]: tensor_to_json(Q, Q.coproduct[i]) for i in range(len(G))},
        "counit": {G[i]: series_to_json(Q.counit[i]) for i in range(len(G))},
        "antipode": {G[i]: element_to_json(Q, Q.antipode[i]) for i in range(len(G))},
        "metadata": dict(Q.metadata),
    }


def quantum_from_json(d: Mapping) -> QuantumAlgebra:
    G = list(d.get("pbw_order") or d["generators"])
    N = int(d.get("N", DEFAULT_ORDER))
    relations = {}
    for key, items in d.get("relations", {}).items():
        b, a = split_pair_key(key, G)
        relations[(b, a)] = element_from_json(G, items, N)
    return QuantumAlgebra(
        G,
        relations,
        {g: tensor_from_json(G, v, N) for g, v in d["coproduct"].items()},
        {g: series_from_json(v) for g, v in d["counit"].items()},
        {g: element_from_json(G, v, N) for g, v in d["antipode"].items()},
        N,
        d.get("metadata", {}),
    )
