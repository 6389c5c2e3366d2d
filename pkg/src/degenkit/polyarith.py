"""Exact multivariate polynomials over the rationals.

Coefficients are :class:`fractions.Fraction`; exponent vectors are plain
tuples of non-negative ints whose length equals the size of the
:class:`VariableContext`.  Every value here is immutable once built.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from operator import neg
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

Rational = Fraction
Exponent = Tuple[int, ...]


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"cannot use {value!r} as an exact coefficient")


def format_rational(q: Fraction) -> str:
    """Serialize as ``"p/q"`` (or ``"p"`` when integral)."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class VariableContext:
    names: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if not self.names:
            raise ValueError("a variable context needs at least one variable")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")

    @property
    def n(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"undeclared variable {name!r}") from None

    def extend(self, names: Iterable[str]) -> "VariableContext":
        return VariableContext(self.names + tuple(names))

    def fresh_names(self, stem: str, count: int) -> Tuple[str, ...]:
        """``count`` names ``stem1, stem2, ...`` that do not clash with this context."""
        taken = set(self.names)
        while True:
            out = tuple(f"{stem}{k + 1}" for k in range(count))
            if taken.isdisjoint(out):
                return out
            stem += "_"

    def zero_exponent(self) -> Exponent:
        return (0,) * self.n

    def __str__(self):
        return ",".join(self.names)


def weight_of(beta: Sequence[int], w: Sequence[int]) -> int:
    """Weighted degree ``sum_m beta_m * w_m``."""
    if len(beta) != len(w):
        raise ValueError(f"length mismatch: exponent {len(beta)} vs weight {len(w)}")
    return sum(b * x for b, x in zip(beta, w))


def add_exponents(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def divides(a: Exponent, b: Exponent) -> bool:
    """True when the monomial ``x^a`` divides ``x^b``."""
    return all(x <= y for x, y in zip(a, b))


def lcm_exponent(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


# -- monomial orders ---------------------------------------------------------

_KINDS = ("lex", "grevlex", "weighted")
_KEY_CACHE_LIMIT = 500_000


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order given by a sort key.

    ``weighted`` compares the weight rows in sequence and falls back on
    ``tiebreak``.  Rows must be non-negative so the result is a well-order.
    """

    kind: str = "grevlex"
    weight_rows: Tuple[Tuple[int, ...], ...] = ()
    tiebreak: str = "grevlex"

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.tiebreak not in ("lex", "grevlex"):
            raise ValueError(f"unknown tiebreak {self.tiebreak!r}")
        rows = tuple(tuple(int(v) for v in row) for row in self.weight_rows)
        object.__setattr__(self, "weight_rows", rows)
        if self.kind == "weighted":
            if not rows:
                raise ValueError("weighted order needs at least one row")
            if any(v < 0 for row in rows for v in row):
                raise ValueError("weight rows of a monomial order must be non-negative")
            if len({len(row) for row in rows}) != 1:
                raise ValueError("weight rows have different lengths")
        object.__setattr__(self, "_keys", {})

    def key(self, e: Exponent):
        """Sort key: larger key means larger monomial."""
        cache = self._keys
        k = cache.get(e)
        if k is None:
            if len(cache) > _KEY_CACHE_LIMIT:
                cache.clear()
            k = cache[e] = self._key(e)
        return k

    def _key(self, e: Exponent):
        if self.kind == "lex":
            return e
        if self.kind == "grevlex":
            return _grevlex_key(e)
        head = tuple(sum(r * x for r, x in zip(row, e)) for row in self.weight_rows)
        tail = e if self.tiebreak == "lex" else _grevlex_key(e)
        return head + (tail,)

    def check_length(self, n: int) -> None:
        if self.kind == "weighted" and len(self.weight_rows[0]) != n:
            raise ValueError(
                f"order weights have length {len(self.weight_rows[0])}, context has {n} variables")


def _grevlex_key(e: Exponent):
    return (sum(e), tuple(map(neg, e[::-1])))


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def weighted_order(rows: Sequence[Sequence[int]], tiebreak: str = "grevlex") -> MonomialOrder:
    return MonomialOrder("weighted", tuple(tuple(r) for r in rows), tiebreak)


def compare(order: MonomialOrder, a: Exponent, b: Exponent) -> int:
    """Return -1, 0 or 1 as ``x^a`` is less than, equal to or greater than ``x^b``."""
    if len(a) != len(b):
        raise ValueError("exponent vectors from different contexts")
    order.check_length(len(a))
    ka, kb = order.key(tuple(a)), order.key(tuple(b))
    return (ka > kb) - (ka < kb)


# -- polynomials -------------------------------------------------------------


class Polynomial:
    """Sparse polynomial: a map from exponent tuples to nonzero Fractions."""

    __slots__ = ("ctx", "_terms", "_hash")

    def __init__(self, ctx: VariableContext, terms: Mapping[Exponent, object] = None):
        self.ctx = ctx
        clean: Dict[Exponent, Fraction] = {}
        if terms:
            n = ctx.n
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not fit context {ctx}")
                if any(x < 0 for x in e):
                    raise ValueError(f"negative exponent in {e}")
                c = as_rational(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
                    if not clean[e]:
                        del clean[e]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ctx: VariableContext, terms: Dict[Exponent, Fraction]) -> "Polynomial":
        # caller guarantees canonical terms
        p = cls.__new__(cls)
        p.ctx = ctx
        p._terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def zero(cls, ctx: VariableContext) -> "Polynomial":
        return cls._raw(ctx, {})

    @classmethod
    def constant(cls, ctx: VariableContext, c) -> "Polynomial":
        c = as_rational(c)
        return cls._raw(ctx, {ctx.zero_exponent(): c} if c else {})

    @classmethod
    def monomial(cls, ctx: VariableContext, e: Sequence[int], c=1) -> "Polynomial":
        return cls(ctx, {tuple(e): c})

    @classmethod
    def variable(cls, ctx: VariableContext, name: str) -> "Polynomial":
        e = [0] * ctx.n
        e[ctx.index(name)] = 1
        return cls._raw(ctx, {tuple(e): Fraction(1)})

    # basic access
    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return self._terms

    def items(self):
        return self._terms.items()

    def exponents(self):
        return self._terms.keys()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def coefficient(self, e: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(e), Fraction(0))

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def weights(self, row: Sequence[int]):
        return [weight_of(e, row) for e in self._terms]

    def min_weight(self, row: Sequence[int]):
        """Smallest weight of a term; ``None`` for the zero polynomial."""
        if not self._terms:
            return None
        return min(weight_of(e, row) for e in self._terms)

    def lowest_part(self, row: Sequence[int]) -> "Polynomial":
        """Sum of the terms of minimal ``row``-weight."""
        if not self._terms:
            return self
        low = self.min_weight(row)
        return Polynomial._raw(self.ctx, {e: c for e, c in self._terms.items()
                                          if weight_of(e, row) == low})

    def is_homogeneous(self, row: Sequence[int]) -> bool:
        return len(set(self.weights(row))) <= 1

    def leading_term(self, order: MonomialOrder) -> Tuple[Exponent, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms, key=order.key)
        return e, self._terms[e]

    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        """Terms in decreasing order."""
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def monic(self, order: MonomialOrder) -> "Polynomial":
        if not self._terms:
            return self
        _, c = self.leading_term(order)
        if c == 1:
            return self
        return self.scale(1 / c)

    # arithmetic
    def _check(self, other: "Polynomial"):
        if other.ctx != self.ctx:
            raise ValueError(f"context mismatch: {self.ctx} vs {other.ctx}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.ctx, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s += c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Polynomial._raw(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ctx, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "Polynomial":
        c = as_rational(c)
        if not c:
            return Polynomial.zero(self.ctx)
        return Polynomial._raw(self.ctx, {e: v * c for e, v in self._terms.items()})

    def mul_term(self, e: Exponent, c: Fraction) -> "Polynomial":
        return Polynomial._raw(self.ctx, {add_exponents(k, e): v * c
                                          for k, v in self._terms.items()})

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Polynomial._raw(self.ctx, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers need a non-negative integer exponent")
        result = Polynomial.constant(self.ctx, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.ctx, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ctx == other.ctx and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self._terms.items())))
        return self._hash

    # structural maps
    def substitute(self, values: Mapping[str, object]) -> "Polynomial":
        """Set some variables to rational constants (context unchanged)."""
        idx = {self.ctx.index(k): as_rational(v) for k, v in values.items()}
        out: Dict[Exponent, Fraction] = {}
        for e, c in self._terms.items():
            e = list(e)
            for i, v in idx.items():
                if e[i]:
                    c = c * v ** e[i]
                    e[i] = 0
            if c:
                e = tuple(e)
                s = out.get(e, 0) + c
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Polynomial._raw(self.ctx, out)

    def compose(self, target: VariableContext, images: Sequence["Polynomial"]) -> "Polynomial":
        """Ring map sending the i-th variable to ``images[i]`` (in ``target``)."""
        if len(images) != self.ctx.n:
            raise ValueError("need one image per variable")
        result = Polynomial.zero(target)
        cache = {}
        for e, c in self._terms.items():
            term = Polynomial.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    p = cache.get((i, k))
                    if p is None:
                        p = images[i] ** k
                        cache[(i, k)] = p
                    term = term * p
            result = result + term
        return result

    def to_context(self, target: VariableContext) -> "Polynomial":
        """Re-express in ``target`` by variable name; missing variables must not occur."""
        pos = []
        for i, name in enumerate(self.ctx.names):
            pos.append(target.names.index(name) if name in target.names else None)
        out = {}
        for e, c in self._terms.items():
            new = [0] * target.n
            for i, k in enumerate(e):
                if k:
                    if pos[i] is None:
                        raise ValueError(f"variable {self.ctx.names[i]} not in {target}")
                    new[pos[i]] = k
            out[tuple(new)] = c
        return Polynomial._raw(target, out)

    def variables_used(self) -> set:
        used = set()
        for e in self._terms:
            used.update(i for i, k in enumerate(e) if k)
        return used

    # printing
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def format_polynomial(p: Polynomial) -> str:
    """Canonical text form, terms in decreasing grevlex order."""
    if p.is_zero():
        return "0"
    pieces = []
    for e, c in p.sorted_terms(GREVLEX):
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        mono = "*".join(name if k == 1 else f"{name}^{k}"
                        for name, k in zip(p.ctx.names, e) if k)
        if not mono:
            body = format_rational(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_rational(a)}*{mono}"
        pieces.append((sign, body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def monomials_of_weight(row: Sequence[int], d: int) -> Iterator[Exponent]:
    """All exponents with ``row``-weight exactly ``d``; entries of row must be positive."""
    n = len(row)

    def rec(i, remaining, prefix):
        if i == n - 1:
            if remaining % row[i] == 0:
                yield prefix + (remaining // row[i],)
            return
        for k in range(remaining // row[i] + 1):
            yield from rec(i + 1, remaining - k * row[i], prefix + (k,))

    if d < 0:
        return iter(())
    return rec(0, d, ())


def monomials_up_to_degree(n: int, d: int) -> Iterator[Exponent]:
    for total in range(d + 1):
        yield from monomials_of_weight((1,) * n, total)
