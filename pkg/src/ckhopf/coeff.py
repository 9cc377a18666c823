"""Exact coefficient arithmetic.

Coefficients live in Q(i)[j_1^{+-1}, ..., j_n^{+-1}][[z]] / (z^{N+1}):
Laurent polynomials in the Cayley-Klein parameters over the Gaussian
rationals, tensored with power series in the deformation parameter z that
are truncated at order N.  Everything is exact; nothing is ever a float.

Dual (Study) units are handled by :func:`evaluate`: symbolic cancellation
happens first (``j1 * j1**-1 == 1`` inside the Laurent ring), and only then
is the dual value substituted, as the epsilon -> 0 limit of each monomial.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Union

DEFAULT_ORDER = 6

Exponents = tuple  # dense exponent tuple, trailing zeros stripped


class SingularityError(ArithmeticError):
    """A contraction limit does not exist (negative power of a dual unit)."""

    def __init__(self, message, *, monomial=None, index=None, location=None):
        super().__init__(message)
        self.monomial = monomial
        self.index = index
        self.location = location

    def at(self, location: str) -> "SingularityError":
        where = location if self.location is None else f"{location}: {self.location}"
        return SingularityError(
            f"{location}: {self.args[0]}",
            monomial=self.monomial,
            index=self.index,
            location=where,
        )


class SemanticsWarning(UserWarning):
    """An odd power of a dual unit was discarded by the limit rule.

    Under order-2 nilpotent semantics (iota**2 == 0) a lone ``iota**1`` term
    would survive, so the two readings disagree on that coefficient.
    """


# ---------------------------------------------------------------------------
# Gaussian rationals


class GaussianRational:
    """Exact complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("imaginary part given twice")
            self.re, self.im = re.re, re.im
            return
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def _make(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        g = object.__new__(cls)
        g.re = re
        g.im = im
        return g

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return cls._make(Fraction(x), _ZERO_F)
        if isinstance(x, str):
            return cls._make(Fraction(x), _ZERO_F)
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussianRational")

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussianRational._make(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._make(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussianRational._make(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational._make(a * c, _ZERO_F)
        return GaussianRational._make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        norm = self.re * self.re + self.im * self.im
        if not norm:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational._make(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE_G
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._make(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        im = "i" if self.im == 1 else "-i" if self.im == -1 else f"{self.im}*i"
        if not self.re:
            return im
        sign = "-" if self.im < 0 else "+"
        mag = "i" if abs(self.im) == 1 else f"{abs(self.im)}*i"
        return f"({self.re} {sign} {mag})"


_ZERO_F = Fraction(0)
ZERO_G = GaussianRational._make(Fraction(0), Fraction(0))
ONE_G = GaussianRational._make(Fraction(1), Fraction(0))
I_G = GaussianRational._make(Fraction(0), Fraction(1))

Scalar = Union[int, Fraction, GaussianRational]


# ---------------------------------------------------------------------------
# exponent-tuple helpers


def _strip(exps) -> Exponents:
    exps = list(exps)
    while exps and exps[-1] == 0:
        exps.pop()
    return tuple(exps)


def _add_exps(a: Exponents, b: Exponents) -> Exponents:
    if not b:
        return a
    if not a:
        return b
    if len(a) < len(b):
        a, b = b, a
    r = list(a)
    for i, e in enumerate(b):
        r[i] += e
    while r and r[-1] == 0:
        r.pop()
    return tuple(r)


def _scale_exps(a: Exponents, k: int) -> Exponents:
    if k == 0:
        return ()
    return tuple(e * k for e in a)


def _exps_from_mapping(m: Mapping[int, int]) -> Exponents:
    if not m:
        return ()
    if min(m) < 1:
        raise ValueError("j-indices start at 1")
    dense = [0] * max(m)
    for k, e in m.items():
        dense[k - 1] += int(e)
    return _strip(dense)


def _sort_key(exps: Exponents, width: int):
    return exps + (0,) * (width - len(exps))


def _format_j(exps: Exponents) -> str:
    parts = []
    for k, e in enumerate(exps, start=1):
        if e == 1:
            parts.append(f"j{k}")
        elif e:
            parts.append(f"j{k}^{e}")
    return "*".join(parts)


def _acc(d: dict, key, value) -> None:
    """d[key] += value, dropping the entry when it cancels."""
    old = d.get(key)
    if old is None:
        if value:
            d[key] = value
        return
    new = old + value
    if new:
        d[key] = new
    else:
        del d[key]


# ---------------------------------------------------------------------------
# Laurent monomials and polynomials in j


@dataclass(frozen=True)
class JMonomial:
    """``coef * j_1^e_1 * ... * j_n^e_n`` with integer (possibly negative) e_k."""

    coef: GaussianRational = ONE_G
    exps: Exponents = ()

    def __post_init__(self):
        object.__setattr__(self, "coef", GaussianRational.coerce(self.coef))
        object.__setattr__(self, "exps", _strip(self.exps))
        if not self.coef:
            raise ValueError("a j-monomial needs a nonzero coefficient; use JPolynomial() for zero")

    @classmethod
    def j(cls, k: int, e: int = 1) -> "JMonomial":
        return cls(ONE_G, _exps_from_mapping({k: e}))

    @classmethod
    def from_exponents(cls, exponents: Mapping[int, int], coef: Scalar = 1) -> "JMonomial":
        return cls(GaussianRational.coerce(coef), _exps_from_mapping(exponents))

    @property
    def exponents(self) -> dict[int, int]:
        return {k: e for k, e in enumerate(self.exps, start=1) if e}

    def __mul__(self, other):
        if isinstance(other, JMonomial):
            return JMonomial(self.coef * other.coef, _add_exps(self.exps, other.exps))
        if isinstance(other, (int, Fraction, GaussianRational)):
            if not other:
                return JPolynomial()
            return JMonomial(self.coef * other, self.exps)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "JMonomial":
        return JMonomial(self.coef.inverse(), tuple(-e for e in self.exps))

    def __pow__(self, k: int) -> "JMonomial":
        return JMonomial(self.coef ** k, _scale_exps(self.exps, k))

    def to_poly(self) -> "JPolynomial":
        return JPolynomial({self.exps: self.coef})

    def __str__(self):
        return str(self.to_poly())


class JPolynomial:
    """Laurent polynomial in j_1..j_n with Gaussian-rational coefficients.

    Stored as ``{exponent tuple: coefficient}``; the constructor merges equal
    exponent vectors and drops zero coefficients, so every instance is in
    canonical form.  Iteration order (``monomials()``) is lexicographic on
    the exponent vector, j_1 first.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exponents, Scalar] | None = None):
        clean: dict = {}
        if terms:
            for exps, c in terms.items():
                _acc(clean, _strip(exps), GaussianRational.coerce(c))
        self.terms = clean

    @classmethod
    def _raw(cls, terms: dict) -> "JPolynomial":
        p = object.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def constant(cls, c: Scalar) -> "JPolynomial":
        c = GaussianRational.coerce(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def j(cls, k: int, e: int = 1) -> "JPolynomial":
        return JMonomial.j(k, e).to_poly()

    @classmethod
    def coerce(cls, x) -> "JPolynomial":
        if isinstance(x, JPolynomial):
            return x
        if isinstance(x, JMonomial):
            return x.to_poly()
        return cls.constant(x)

    def monomials(self) -> list[JMonomial]:
        width = max((len(e) for e in self.terms), default=0)
        return [
            JMonomial(self.terms[e], e)
            for e in sorted(self.terms, key=lambda e: _sort_key(e, width))
        ]

    def is_zero(self) -> bool:
        return not self.terms

    __bool__ = lambda self: bool(self.terms)  # noqa: E731

    def nvars(self) -> int:
        return max((len(e) for e in self.terms), default=0)

    def __add__(self, other):
        other = JPolynomial.coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            _acc(out, e, c)
        return JPolynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return JPolynomial._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-JPolynomial.coerce(other))

    def __rsub__(self, other):
        return JPolynomial.coerce(other) - self

    def __mul__(self, other):
        other = JPolynomial.coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                _acc(out, _add_exps(e1, e2), c1 * c2)
        return JPolynomial._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            return self.monomials()[0].inverse().to_poly() ** (-k)
        out = JPolynomial.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, JPolynomial):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, GaussianRational, JMonomial)):
            return self.terms == JPolynomial.coerce(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"JPolynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for m in self.monomials():
            js = _format_j(m.exps)
            c = m.coef
            if not js:
                s = str(c)
            elif c == 1:
                s = js
            elif c == -1:
                s = "-" + js
            else:
                s = f"{c}*{js}"
            out.append(s)
        return " + ".join(out).replace("+ -", "- ")


def normalize(p: JPolynomial | Iterable[JMonomial]) -> JPolynomial:
    """Canonical form of a sum of Laurent monomials.

    Equal exponent vectors are merged and zero terms dropped; exponents have
    already been added exactly, so ``j1 * j1**-1`` is the constant 1 before
    any dual-unit value is ever substituted.
    """
    if isinstance(p, JPolynomial):
        terms = p.terms
        return JPolynomial({e: terms[e] for e in (m.exps for m in p.monomials())})
    out: dict = {}
    for m in p:
        _acc(out, m.exps, m.coef)
    return JPolynomial._raw(out)


# ---------------------------------------------------------------------------
# truncated z-series


class ZSeries:
    """Power series sum_k c_k z^k, c_k in the j-Laurent ring, truncated at z^N.

    Internally a flat ``{(k, exps): coefficient}`` map; :attr:`coeffs` gives
    the ``{k: JPolynomial}`` view.  Arithmetic between series of different
    orders truncates to the smaller order.
    """

    __slots__ = ("order", "terms")

    def __init__(self, coeffs: Mapping[int, object] | None = None, order: int = DEFAULT_ORDER):
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        self.order = order
        flat: dict = {}
        for k, c in (coeffs or {}).items():
            if k < 0:
                raise ValueError("negative z-exponent in ZSeries")
            if k > order:
                continue
            for e, v in JPolynomial.coerce(c).terms.items():
                _acc(flat, (k, e), v)
        self.terms = flat

    @classmethod
    def _raw(cls, terms: dict, order: int) -> "ZSeries":
        s = object.__new__(cls)
        s.order = order
        s.terms = terms
        return s

    @classmethod
    def constant(cls, c, order: int = DEFAULT_ORDER) -> "ZSeries":
        return cls({0: JPolynomial.coerce(c)}, order)

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> "ZSeries":
        return cls._raw({(0, ()): ONE_G}, order)

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> "ZSeries":
        return cls._raw({}, order)

    @classmethod
    def z(cls, k: int = 1, order: int = DEFAULT_ORDER, coef=1) -> "ZSeries":
        return cls({k: JPolynomial.coerce(coef)}, order)

    @classmethod
    def coerce(cls, x, order: int = DEFAULT_ORDER) -> "ZSeries":
        if isinstance(x, ZSeries):
            return x
        return cls.constant(x, order)

    @property
    def coeffs(self) -> dict[int, JPolynomial]:
        out: dict[int, dict] = {}
        for (k, e), c in self.terms.items():
            out.setdefault(k, {})[e] = c
        return {k: JPolynomial._raw(out[k]) for k in sorted(out)}

    def coefficient(self, k: int) -> JPolynomial:
        return JPolynomial._raw({e: c for (kk, e), c in self.terms.items() if kk == k})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def valuation(self) -> int | None:
        """Lowest z-exponent present, or None for the zero series."""
        return min((k for k, _ in self.terms), default=None)

    def nvars(self) -> int:
        return max((len(e) for _, e in self.terms), default=0)

    def truncate(self, order: int) -> "ZSeries":
        if order > self.order:
            raise ValueError("cannot raise the truncation order of a series")
        return ZSeries._raw({key: c for key, c in self.terms.items() if key[0] <= order}, order)

    def _other(self, other) -> "ZSeries | None":
        if isinstance(other, ZSeries):
            return other
        if isinstance(other, (int, Fraction, GaussianRational, JMonomial, JPolynomial)):
            return ZSeries.constant(other, self.order)
        return None

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        order = min(self.order, other.order)
        out = {key: c for key, c in self.terms.items() if key[0] <= order}
        for key, c in other.terms.items():
            if key[0] <= order:
                _acc(out, key, c)
        return ZSeries._raw(out, order)

    __radd__ = __add__

    def __neg__(self):
        return ZSeries._raw({key: -c for key, c in self.terms.items()}, self.order)

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            c = GaussianRational.coerce(other)
            if not c:
                return ZSeries._raw({}, self.order)
            return ZSeries._raw({key: v * c for key, v in self.terms.items()}, self.order)
        other = self._other(other)
        if other is None:
            return NotImplemented
        order = min(self.order, other.order)
        out: dict = {}
        for (k1, e1), c1 in self.terms.items():
            for (k2, e2), c2 in other.terms.items():
                k = k1 + k2
                if k <= order:
                    _acc(out, (k, _add_exps(e1, e2)), c1 * c2)
        return ZSeries._raw(out, order)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("ZSeries powers must be nonnegative")
        out = ZSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, ZSeries):
            return self.order == other.order and self.terms == other.terms
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.order, frozenset(self.terms.items())))

    def substitute_z(self, multiplier: JMonomial) -> "ZSeries":
        """Replace z by ``multiplier * z`` (coefficient of z^k gains multiplier^k)."""
        out: dict = {}
        for (k, e), c in self.terms.items():
            m = multiplier ** k
            _acc(out, (k, _add_exps(e, m.exps)), c * m.coef)
        return ZSeries._raw(out, self.order)

    def scale_j(self, m: JMonomial) -> "ZSeries":
        if not m.coef:
            return ZSeries._raw({}, self.order)
        out = {(k, _add_exps(e, m.exps)): c * m.coef for (k, e), c in self.terms.items()}
        return ZSeries._raw(out, self.order)

    def z_shift(self, shift: int) -> "ZSeries":
        """Multiply by z**shift.

        A negative shift divides by a power of z: the low coefficients must
        vanish and the result is only known to order ``N + shift``.
        """
        if shift >= 0:
            return ZSeries._raw(
                {(k + shift, e): c for (k, e), c in self.terms.items() if k + shift <= self.order},
                self.order,
            )
        low = self.valuation()
        if low is not None and low < -shift:
            raise ValueError(f"cannot divide by z^{-shift}: series has a z^{low} term")
        order = self.order + shift
        if order < 0:
            raise ValueError("shift exceeds truncation order")
        return ZSeries._raw({(k + shift, e): c for (k, e), c in self.terms.items()}, order)

    def __repr__(self):
        return f"ZSeries({self}, N={self.order})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, p in self.coeffs.items():
            ps = str(p)
            if k == 0:
                parts.append(ps)
                continue
            zk = "z" if k == 1 else f"z^{k}"
            if ps == "1":
                parts.append(zk)
            elif ps == "-1":
                parts.append("-" + zk)
            elif len(p.terms) == 1 and "(" not in ps:
                parts.append(f"{ps}*{zk}")
            else:
                parts.append(f"({ps})*{zk}")
        return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# assignments, scalings, evaluation


class JValue(enum.Enum):
    UNIT = "unit"
    DUAL = "dual"
    IMAGINARY = "imaginary"
    SYMBOLIC = "symbolic"

    @classmethod
    def parse(cls, s: "str | JValue") -> "JValue":
        if isinstance(s, JValue):
            return s
        aliases = {"1": "unit", "iota": "dual", "i": "imaginary", "j": "symbolic", "sym": "symbolic"}
        s = s.strip().lower()
        return cls(aliases.get(s, s))


@dataclass(frozen=True)
class JAssignment:
    """Value of each Cayley-Klein parameter j_1..j_n."""

    values: tuple[JValue, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(JValue.parse(v) for v in self.values))

    @classmethod
    def parse(cls, text: str) -> "JAssignment":
        """``"dual,unit"`` or ``"j1=dual,j2=unit"``."""
        items = [t for t in text.split(",") if t.strip()]
        if items and all("=" in t for t in items):
            mapping = {}
            for t in items:
                key, val = t.split("=", 1)
                mapping[int(key.strip().lstrip("j"))] = val
            return cls.from_mapping(mapping)
        return cls(tuple(items))

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, "str | JValue"]) -> "JAssignment":
        n = max(mapping, default=0)
        if sorted(mapping) != list(range(1, n + 1)):
            raise ValueError("every index 1..n must be assigned exactly once")
        return cls(tuple(mapping[k] for k in range(1, n + 1)))

    @classmethod
    def uniform(cls, n: int, value: "str | JValue") -> "JAssignment":
        return cls((JValue.parse(value),) * n)

    @property
    def n(self) -> int:
        return len(self.values)

    def __getitem__(self, k: int) -> JValue:
        return self.values[k - 1]

    def as_dict(self) -> dict[str, str]:
        return {f"j{k}": v.value for k, v in enumerate(self.values, start=1)}

    def __str__(self):
        return ",".join(v.value for v in self.values)


@dataclass(frozen=True)
class EpsilonScaling:
    """Diagonal Laurent scaling of a basis, used for contraction limits.

    ``exponents[a] = e`` means the contracted basis vector is
    ``X'_a = eps**e * X_a``, the same direction as the Cayley-Klein map
    ``X = J * X*``.  ``z`` is the exponent in ``z_old = eps**z * z_new``.
    """

    exponents: tuple[tuple[str, int], ...]
    z: int = 0

    def __init__(self, exponents: Mapping[str, int] | Iterable[tuple[str, int]], z: int = 0):
        items = exponents.items() if isinstance(exponents, Mapping) else exponents
        object.__setattr__(self, "exponents", tuple((str(k), int(v)) for k, v in items))
        object.__setattr__(self, "z", int(z))

    @classmethod
    def identity(cls, labels: Iterable[str]) -> "EpsilonScaling":
        return cls({lab: 0 for lab in labels})

    def __getitem__(self, label: str) -> int:
        for k, v in self.exponents:
            if k == label:
                return v
        raise KeyError(f"no epsilon exponent for basis label {label!r}")

    def as_dict(self) -> dict[str, int]:
        return dict(self.exponents)


_I_POWERS = (ONE_G, I_G, -ONE_G, -I_G)


def evaluate(s: ZSeries, a: JAssignment, mode: str = "limit") -> ZSeries:
    """Substitute values for the j-parameters of a series.

    unit -> 1, imaginary -> i, symbolic -> unchanged.  A dual j_k is the
    epsilon -> 0 limit of ``j_k = eps``: a term with a negative j_k power is
    singular (:class:`SingularityError`), a positive power vanishes, power
    zero is kept.  In ``"strict"`` mode a :class:`SemanticsWarning` is issued
    when a discarded term carried an odd dual power.
    """
    if mode not in ("limit", "strict"):
        raise ValueError(f"unknown dual semantics {mode!r}")
    values = a.values
    out: dict = {}
    odd_dropped = []
    for (k, exps), c in s.terms.items():
        if len(exps) > len(values):
            raise ValueError(f"series uses j{len(exps)} but assignment covers only {len(values)}")
        keep = []
        dropped = False
        for idx, e in enumerate(exps):
            v = values[idx]
            if not e or v is JValue.SYMBOLIC:
                keep.append(e)
                continue
            keep.append(0)
            if v is JValue.DUAL:
                if e < 0:
                    raise SingularityError(
                        f"negative power j{idx + 1}^{e} of a dual unit in "
                        f"{JMonomial(c, exps)}*z^{k}",
                        monomial=(k, JMonomial(c, exps)),
                        index=idx + 1,
                    )
                dropped = True
                if e % 2:
                    odd_dropped.append((idx + 1, e, k))
            elif v is JValue.IMAGINARY:
                c = c * _I_POWERS[e % 4]
        if not dropped:
            _acc(out, (k, _strip(keep)), c)
    if mode == "strict" and odd_dropped:
        where = ", ".join(f"j{i}^{e} at z^{k}" for i, e, k in odd_dropped)
        warnings.warn(
            f"limit semantics discarded odd dual powers ({where}); "
            "nilpotent semantics would keep the first-order terms",
            SemanticsWarning,
            stacklevel=2,
        )
    return ZSeries._raw(out, s.order)


# ---------------------------------------------------------------------------
# elementary functions of series


def taylor_coefficient(f: str, k: int) -> Fraction:
    """k-th Maclaurin coefficient of one of sin, cos, sinh, cosh, exp."""
    inv = Fraction(1, math.factorial(k))
    if f == "exp":
        return inv
    if f == "sinh":
        return inv if k % 2 else _ZERO_F
    if f == "cosh":
        return _ZERO_F if k % 2 else inv
    if f == "sin":
        return (-inv if (k // 2) % 2 else inv) if k % 2 else _ZERO_F
    if f == "cos":
        return _ZERO_F if k % 2 else (-inv if (k // 2) % 2 else inv)
    raise ValueError(f"unsupported function {f!r}")


SERIES_FUNCTIONS = ("sin", "cos", "sinh", "cosh", "exp")


def series_apply(f: str, argument: ZSeries) -> ZSeries:
    """``f(argument)`` truncated at the argument's order.

    The argument must have no z^0 term, so only powers up to N contribute.
    """
    if f not in SERIES_FUNCTIONS:
        raise ValueError(f"unsupported function {f!r}")
    if argument.coefficient(0):
        raise ValueError(f"{f}: argument has a nonzero constant term")
    N = argument.order
    out = ZSeries.zero(N)
    power = ZSeries.one(N)
    for k in range(N + 1):
        c = taylor_coefficient(f, k)
        if c:
            out = out + power * c
        power = power * argument
        if not power:
            break
    return out


# ---------------------------------------------------------------------------
# JSON


def _rat_to_json(q: Fraction) -> str:
    return str(q)


def gaussian_to_json(c: GaussianRational) -> dict:
    return {"re": _rat_to_json(c.re), "im": _rat_to_json(c.im)}


def gaussian_from_json(d) -> GaussianRational:
    if isinstance(d, (str, int)):
        return GaussianRational(Fraction(d))
    return GaussianRational(Fraction(d.get("re", "0")), Fraction(d.get("im", "0")))


def monomial_to_json(m: JMonomial) -> dict:
    return {"coef": gaussian_to_json(m.coef), "j": {str(k): e for k, e in m.exponents.items()}}


def monomial_from_json(d) -> JMonomial:
    return JMonomial(
        gaussian_from_json(d["coef"]),
        _exps_from_mapping({int(k): int(e) for k, e in d.get("j", {}).items()}),
    )


def poly_to_json(p: JPolynomial) -> list:
    return [monomial_to_json(m) for m in p.monomials()]


def poly_from_json(items) -> JPolynomial:
    return normalize(monomial_from_json(d) for d in items)


def series_to_json(s: ZSeries) -> dict:
    return {"N": s.order, "z": {str(k): poly_to_json(p) for k, p in s.coeffs.items()}}


def series_from_json(d) -> ZSeries:
    return ZSeries({int(k): poly_from_json(v) for k, v in d.get("z", {}).items()}, int(d["N"]))
