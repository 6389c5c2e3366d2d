"""Buchberger's algorithm and the ideal operations built on it.

Reduced bases are computed with the normal selection strategy (smallest
lcm first) and Buchberger's two criteria.  Everything is exact.

Initial ideals for the *lowest*-weight direction are not reachable with a
global monomial order, so :class:`LowWeightBasis` homogenizes with an extra
variable ``h`` and flips the weights to ``M - w``; on the homogenized ideal
that order is global and its initial forms dehomogenize to the lowest-weight
forms of the original ideal.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .polyarith import (
    GREVLEX,
    Exponent,
    MonomialOrder,
    Polynomial,
    VariableContext,
    divides,
    lcm_exponent,
    monomials_of_weight,
    weight_of,
    weighted_order,
)

INF = float("inf")


class ResourceLimitError(RuntimeError):
    """A configured cap was hit; the computation gave no answer (not a wrong one)."""


@dataclass(frozen=True)
class Limits:
    max_pairs: int = 50_000
    max_degree: int = 120


DEFAULT_LIMITS = Limits()


@dataclass(frozen=True)
class Ideal:
    context: VariableContext
    generators: Tuple[Polynomial, ...] = ()

    def __post_init__(self):
        gens = []
        for g in self.generators:
            if g.ctx != self.context:
                raise ValueError(f"generator {g} lives in {g.ctx}, ideal in {self.context}")
            if g and g not in gens:
                gens.append(g)
        object.__setattr__(self, "generators", tuple(gens))

    def is_zero(self) -> bool:
        return not self.generators

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.generators)

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.context != self.context:
            raise ValueError("context mismatch")
        return Ideal(self.context, self.generators + other.generators)

    def __str__(self):
        if not self.generators:
            return "(0)"
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


@dataclass(frozen=True)
class GroebnerBasis:
    order: MonomialOrder
    elements: Tuple[Polynomial, ...]
    reduced: bool
    context: VariableContext

    def leading_exponents(self) -> List[Exponent]:
        return [g.leading_term(self.order)[0] for g in self.elements]

    def ideal(self) -> Ideal:
        return Ideal(self.context, self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


@dataclass(frozen=True)
class HilbertTable:
    grading: Tuple[int, ...]
    values: Tuple[int, ...]

    @property
    def bound(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, d: int) -> int:
        return self.values[d]

    def as_dict(self) -> Dict[int, int]:
        return dict(enumerate(self.values))


# -- core reduction ------------------------------------------------------------

class _Elt:
    """A basis element prepared for fast reduction."""

    __slots__ = ("lt", "terms")

    def __init__(self, lt: Exponent, terms: Dict[Exponent, Fraction]):
        self.lt = lt
        self.terms = terms  # monic: terms[lt] == 1


def _make_elt(terms: Dict[Exponent, Fraction], key) -> _Elt:
    lt = max(terms, key=key)
    c = terms[lt]
    if c != 1:
        inv = 1 / c
        terms = {e: v * inv for e, v in terms.items()}
    return _Elt(lt, terms)


def _sub_multiple(p: Dict[Exponent, Fraction], g: _Elt, shift: Exponent, c: Fraction):
    # p -= c * x^shift * g, in place
    for e, v in g.terms.items():
        e2 = tuple(a + b for a, b in zip(e, shift))
        s = p.get(e2)
        if s is None:
            p[e2] = -c * v
        else:
            s -= c * v
            if s:
                p[e2] = s
            else:
                del p[e2]


def _reduce(terms: Dict[Exponent, Fraction], basis: Sequence[_Elt], key,
            tail: bool = True) -> Dict[Exponent, Fraction]:
    """Remainder of ``terms`` on division by ``basis`` (full reduction if ``tail``)."""
    p = dict(terms)
    rem: Dict[Exponent, Fraction] = {}
    while p:
        e = max(p, key=key)
        c = p[e]
        for g in basis:
            lt = g.lt
            if all(a <= b for a, b in zip(lt, e)):
                _sub_multiple(p, g, tuple(b - a for a, b in zip(lt, e)), c)
                break
        else:
            if not tail:
                rem.update(p)
                return rem
            rem[e] = c
            del p[e]
    return rem


def _buchberger_raw(gens: Sequence[Dict[Exponent, Fraction]], order: MonomialOrder,
                    limits: Limits) -> List[Dict[Exponent, Fraction]]:
    key = order.key
    basis: List[_Elt] = []
    pending: set = set()
    heap: list = []
    counter = 0
    processed = 0

    def add(terms):
        nonlocal counter
        elt = _make_elt(terms, key)
        if sum(elt.lt) > limits.max_degree or max(sum(e) for e in elt.terms) > limits.max_degree:
            raise ResourceLimitError(
                f"basis element of degree above max_degree={limits.max_degree}")
        k = len(basis)
        basis.append(elt)
        for i in range(k):
            a, b = basis[i].lt, elt.lt
            if all(x == 0 or y == 0 for x, y in zip(a, b)):
                continue  # coprime leading terms: S-polynomial reduces to zero
            lcm = lcm_exponent(a, b)
            counter += 1
            heapq.heappush(heap, (key(lcm), sum(lcm), counter, i, k))
            pending.add((i, k))

    for g in gens:
        r = _reduce(g, basis, key)
        if r:
            add(r)

    while heap:
        _, _, _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        gi, gj = basis[i], basis[j]
        lcm = lcm_exponent(gi.lt, gj.lt)
        chain = False
        for k, gk in enumerate(basis):
            if k == i or k == j:
                continue
            if divides(gk.lt, lcm) and (min(i, k), max(i, k)) not in pending \
                    and (min(j, k), max(j, k)) not in pending:
                chain = True
                break
        if chain:
            continue
        processed += 1
        if processed > limits.max_pairs:
            raise ResourceLimitError(f"more than max_pairs={limits.max_pairs} S-pairs")
        s: Dict[Exponent, Fraction] = {}
        si = tuple(a - b for a, b in zip(lcm, gi.lt))
        sj = tuple(a - b for a, b in zip(lcm, gj.lt))
        for e, v in gi.terms.items():
            s[tuple(a + b for a, b in zip(e, si))] = v
        _sub_multiple(s, gj, sj, Fraction(1))
        r = _reduce(s, basis, key)
        if r:
            add(r)

    # minimalize, then interreduce
    elts = basis
    keep = []
    for idx, g in enumerate(elts):
        redundant = False
        for jdx, h in enumerate(elts):
            if jdx == idx:
                continue
            if divides(h.lt, g.lt) and (h.lt != g.lt or jdx < idx):
                redundant = True
                break
        if not redundant:
            keep.append(g)
    out = []
    for idx, g in enumerate(keep):
        others = [h for jdx, h in enumerate(keep) if jdx != idx]
        r = _reduce(g.terms, others, key)
        out.append(_make_elt(r, key))
    out.sort(key=lambda g: key(g.lt), reverse=True)
    return [g.terms for g in out]


def buchberger(ideal: Ideal, order: MonomialOrder = GREVLEX,
               limits: Optional[Limits] = None) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal`` (deterministic for fixed input)."""
    return _cached_gb(ideal, order, limits or DEFAULT_LIMITS)


@lru_cache(maxsize=1024)
def _cached_gb(ideal: Ideal, order: MonomialOrder, limits: Limits) -> GroebnerBasis:
    ctx = ideal.context
    order.check_length(ctx.n)
    raw = _buchberger_raw([dict(g.terms) for g in ideal.generators], order, limits)
    elements = tuple(Polynomial._raw(ctx, t) for t in raw)
    return GroebnerBasis(order, elements, True, ctx)


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    if f.ctx != gb.context:
        raise ValueError(f"context mismatch: {f.ctx} vs {gb.context}")
    key = gb.order.key
    elts = [_Elt(g.leading_term(gb.order)[0], dict(g.terms)) for g in gb.elements]
    return Polynomial._raw(f.ctx, _reduce(f.terms, elts, key))


class _Reducer:
    """Cached reduction data for repeated normal forms against one basis."""

    def __init__(self, gb: GroebnerBasis):
        self.gb = gb
        self.key = gb.order.key
        self.elts = [_Elt(g.leading_term(gb.order)[0], dict(g.terms)) for g in gb.elements]
        self.lts = [e.lt for e in self.elts]
        self.monomial = all(len(e.terms) == 1 for e in self.elts)

    def reduce(self, terms) -> Dict[Exponent, Fraction]:
        return _reduce(terms, self.elts, self.key)

    def is_member(self, f: Polynomial) -> bool:
        if not f:
            return True
        if self.monomial:
            return all(any(all(a <= b for a, b in zip(lt, e)) for lt in self.lts)
                       for e in f.terms)
        lead = max(f.terms, key=self.key)
        if not any(all(a <= b for a, b in zip(lt, lead)) for lt in self.lts):
            return False
        # a nonzero remainder shows already at the first irreducible leading term
        return not _reduce(f.terms, self.elts, self.key, tail=False)


@lru_cache(maxsize=1024)
def reducer(ideal: Ideal, order: MonomialOrder = GREVLEX) -> _Reducer:
    return _Reducer(buchberger(ideal, order))


def member(f: Polynomial, ideal: Ideal, order: MonomialOrder = GREVLEX) -> bool:
    """True iff ``f`` lies in ``ideal``."""
    if f.ctx != ideal.context:
        raise ValueError(f"context mismatch: {f.ctx} vs {ideal.context}")
    return reducer(ideal, order).is_member(f)


def contains(big: Ideal, small: Ideal) -> bool:
    return all(member(g, big) for g in small.generators)


def ideal_equal(a: Ideal, b: Ideal) -> bool:
    """Equality via reduced grevlex bases."""
    if a.context != b.context:
        raise ValueError("context mismatch")
    return buchberger(a).elements == buchberger(b).elements


def is_unit_ideal(ideal: Ideal) -> bool:
    return member(Polynomial.constant(ideal.context, 1), ideal)


def leading_ideal(ideal: Ideal, order: MonomialOrder = GREVLEX) -> List[Exponent]:
    return buchberger(ideal, order).leading_exponents()


# -- elimination and saturation ---------------------------------------------------

def eliminate(ideal: Ideal, drop: Sequence[str]) -> Ideal:
    """Generators of ``ideal`` intersected with the polynomial ring on the kept variables.

    The result lives in the context of the remaining variables (original order).
    """
    ctx = ideal.context
    drop = set(drop)
    for name in drop:
        ctx.index(name)
    keep = tuple(n for n in ctx.names if n not in drop)
    if not keep:
        raise ValueError("cannot eliminate every variable")
    sub = VariableContext(keep)
    row = tuple(1 if n in drop else 0 for n in ctx.names)
    gb = buchberger(ideal, weighted_order([row]))
    dropped = {ctx.index(n) for n in drop}
    gens = [g.to_context(sub) for g in gb.elements if not (g.variables_used() & dropped)]
    return Ideal(sub, tuple(gens))


def saturate(ideal: Ideal, f: Polynomial) -> Ideal:
    """``ideal : f^infinity`` via the Rabinowitsch trick."""
    ctx = ideal.context
    (s,) = ctx.fresh_names("sat", 1)
    big = ctx.extend([s])
    gens = [g.to_context(big) for g in ideal.generators]
    sv = Polynomial.variable(big, s)
    gens.append(Polynomial.constant(big, 1) - sv * f.to_context(big))
    return Ideal(ctx, eliminate(Ideal(big, tuple(gens)), [s]).generators)


def variable_product(ctx: VariableContext, names: Optional[Sequence[str]] = None) -> Polynomial:
    names = ctx.names if names is None else names
    e = [0] * ctx.n
    for nm in names:
        e[ctx.index(nm)] = 1
    return Polynomial.monomial(ctx, e)


# -- homogenization and lowest-weight initial ideals ------------------------------

def homogenize(f: Polynomial, hctx: VariableContext, degree: Optional[int] = None) -> Polynomial:
    """Standard-degree homogenization into ``hctx`` (= f.ctx plus one last variable)."""
    d = f.degree() if degree is None else degree
    out = {}
    for e, c in f.terms.items():
        out[e + (d - sum(e),)] = c
    return Polynomial._raw(hctx, out)


def dehomogenize(F: Polynomial, ctx: VariableContext) -> Polynomial:
    out: Dict[Exponent, Fraction] = {}
    for e, c in F.terms.items():
        k = e[:-1]
        s = out.get(k, 0) + c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return Polynomial._raw(ctx, out)


class LowWeightBasis:
    """Standard basis of an ideal for the order in which lower weight leads.

    ``rows`` are compared in sequence (lexicographically), so the initial
    form of ``f`` is the sum of its terms whose weight vector is
    lexicographically smallest.
    """

    def __init__(self, ideal: Ideal, rows: Sequence[Sequence[int]],
                 limits: Optional[Limits] = None):
        ctx = ideal.context
        rows = [tuple(int(v) for v in r) for r in rows]
        if not rows or any(len(r) != ctx.n for r in rows):
            raise ValueError("weight rows must match the number of variables")
        if any(v < 0 for r in rows for v in r):
            raise ValueError("weights must be non-negative")
        self.ideal = ideal
        self.rows = rows
        self.limits = limits or DEFAULT_LIMITS
        (hname,) = ctx.fresh_names("h", 1)
        self.hctx = ctx.extend([hname])
        affine = buchberger(ideal, GREVLEX, self.limits)
        hom = Ideal(self.hctx, tuple(homogenize(g, self.hctx) for g in affine.elements))
        self.flipped = [tuple(max(r) + 1 - v for v in r) + (max(r) + 1,) for r in rows]
        self.order = weighted_order(self.flipped)
        self.hgb = buchberger(hom, self.order, self.limits)
        initial, standard = [], []
        for G in self.hgb.elements:
            init = _lex_min_part(G, [r + (0,) for r in rows])
            initial.append(dehomogenize(init, ctx))
            standard.append(dehomogenize(G, ctx))
        self.standard_basis: Tuple[Polynomial, ...] = tuple(standard)
        self.initial_ideal = Ideal(ctx, tuple(initial))
        self._hred = _Reducer(self.hgb)

    @property
    def context(self) -> VariableContext:
        return self.ideal.context

    def order_of(self, f: Polynomial, max_steps: Optional[int] = None):
        """``max{i : f in F^i + I}`` for the single weight row of this basis.

        Returns ``INF`` when ``f`` lies in the ideal.
        """
        if len(self.rows) != 1:
            raise ValueError("order_of needs a single weight row")
        row = self.rows[0]
        if not f:
            return INF
        init_red = reducer(self.initial_ideal)
        low = f.lowest_part(row)
        if not init_red.is_member(low):
            # in(f) outside in(I) already forces f outside I
            return f.min_weight(row)
        if member(f, self.ideal):
            return INF
        steps = self.limits.max_degree if max_steps is None else max_steps
        F = dict(homogenize(f, self.hctx).terms)
        r = self._hred.reduce(F)
        hshift = (0,) * self.context.n + (1,)
        for _ in range(steps + 1):
            if not r:
                return INF
            rep = dehomogenize(Polynomial._raw(self.hctx, r), self.context)
            if not init_red.is_member(rep.lowest_part(row)):
                return rep.min_weight(row)
            r = self._hred.reduce({tuple(a + b for a, b in zip(e, hshift)): c
                                   for e, c in r.items()})
        raise ResourceLimitError(
            f"order of {f} not settled after {steps} homogenized reductions "
            "(the filtration may not be separated at this element)")


def _lex_min_part(F: Polynomial, rows: Sequence[Sequence[int]]) -> Polynomial:
    def wvec(e):
        return tuple(weight_of(e, r) for r in rows)
    best = min(wvec(e) for e in F.terms)
    return Polynomial._raw(F.ctx, {e: c for e, c in F.terms.items() if wvec(e) == best})


def lex_min_part(f: Polynomial, rows: Sequence[Sequence[int]]) -> Polynomial:
    """Terms of ``f`` whose weight vector under ``rows`` is lexicographically minimal."""
    if not f:
        return f
    return _lex_min_part(f, rows)


@lru_cache(maxsize=256)
def low_weight_basis(ideal: Ideal, rows: Tuple[Tuple[int, ...], ...],
                     limits: Optional[Limits] = None) -> LowWeightBasis:
    return LowWeightBasis(ideal, rows, limits)


def is_homogeneous_ideal(ideal: Ideal, row: Sequence[int]) -> bool:
    return all(g.is_homogeneous(row) for g in ideal.generators)


# -- Hilbert functions ---------------------------------------------------------------

def _grading_row(grading) -> Tuple[int, ...]:
    rows = [grading] if grading and isinstance(grading[0], int) else list(grading)
    total = tuple(sum(col) for col in zip(*rows))
    return total


def hilbert_function(ideal: Ideal, grading, bound: int) -> HilbertTable:
    """Dimensions of the graded pieces of ``P/I`` for weights ``0..bound``.

    Several rows are summed into one grading.  For an ideal that is not
    homogeneous for the grading, the pieces are those of the associated
    graded ring of its weight filtration (the lowest-weight degeneration),
    which agrees with the graded count whenever the ideal is homogeneous.
    """
    row = _grading_row(grading)
    if len(row) != ideal.context.n:
        raise ValueError("grading length does not match the number of variables")
    if any(v <= 0 for v in row):
        raise ValueError("Hilbert functions need strictly positive grading entries")
    if bound < 0:
        raise ValueError("bound must be non-negative")
    if is_homogeneous_ideal(ideal, row):
        lts = leading_ideal(ideal, weighted_order([row]))
    else:
        lts = leading_ideal(low_weight_basis(ideal, (row,)).initial_ideal)
    values = []
    for d in range(bound + 1):
        count = 0
        for e in monomials_of_weight(row, d):
            if not any(all(a <= b for a, b in zip(lt, e)) for lt in lts):
                count += 1
        values.append(count)
    return HilbertTable(row, tuple(values))


def hilbert_tables_per_row(ideal: Ideal, rows, bound: int) -> List[HilbertTable]:
    return [hilbert_function(ideal, [tuple(r)], bound) for r in rows]


def colength(ideal: Ideal) -> Optional[int]:
    """``dim_k P/I`` when finite, else ``None``."""
    lts = leading_ideal(ideal)
    n = ideal.context.n
    if not lts:
        return None
    if any(all(x == 0 for x in lt) for lt in lts):
        return 0
    # finite iff a pure power of every variable is a leading term
    pure = [None] * n
    for lt in lts:
        nz = [i for i, x in enumerate(lt) if x]
        if len(nz) == 1:
            i = nz[0]
            pure[i] = lt[i] if pure[i] is None else min(pure[i], lt[i])
    if any(p is None for p in pure):
        return None
    count = 0

    def rec(i, prefix):
        nonlocal count
        if i == n:
            if not any(all(a <= b for a, b in zip(lt, prefix)) for lt in lts):
                count += 1
            return
        for k in range(pure[i]):
            rec(i + 1, prefix + (k,))

    rec(0, ())
    return count
