"""Monomial weight filtrations, their weight functions and initial ideals.

A weight system assigns ``r`` non-negative weights to every variable.  The
filtration ``F^i P`` is spanned by monomials whose ``k``-th weight is at
least ``i_k`` for every ``k``; on ``R = P/I`` it induces
``(F^i P + I)/I`` whose associated graded ring is ``P/in_W(I)``, with
``in_W`` taking *lowest*-weight components.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .groebner import (
    INF,
    Ideal,
    Limits,
    buchberger,
    low_weight_basis,
    member,
    reducer,
)
from .polyarith import Exponent, Polynomial, VariableContext, monomials_up_to_degree


@dataclass(frozen=True)
class WeightSystem:
    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows:
            raise ValueError("a weight system needs at least one row")
        if len({len(r) for r in rows}) != 1:
            raise ValueError("weight rows have different lengths")
        for r in rows:
            if any(v < 0 for v in r):
                raise ValueError(f"negative weight in row {r}")
            if not any(r):
                raise ValueError("a weight row may not be identically zero")

    @property
    def r(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def composite(self, w: "CoWeight") -> Tuple[int, ...]:
        if len(w.w) != self.r:
            raise ValueError(f"coweight has length {len(w.w)}, weight system has rank {self.r}")
        return tuple(sum(wk * row[m] for wk, row in zip(w.w, self.rows)) for m in range(self.n))

    def check_context(self, ctx: VariableContext) -> None:
        if self.n != ctx.n:
            raise ValueError(f"weight rows have length {self.n}, context has {ctx.n} variables")


@dataclass(frozen=True)
class CoWeight:
    w: Tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(v) for v in self.w)
        object.__setattr__(self, "w", w)
        if not w or any(v < 0 for v in w):
            raise ValueError("coweight entries must be non-negative")
        if not any(w):
            raise ValueError("coweight may not be zero")


def default_coweight(W: WeightSystem) -> CoWeight:
    return CoWeight((1,) * W.r)


@dataclass(frozen=True)
class PresentedRing:
    """``P/I`` with an optional weight system; ``I`` must be proper."""

    ideal: Ideal
    weights: Optional[WeightSystem] = None

    def __post_init__(self):
        if member(Polynomial.constant(self.ideal.context, 1), self.ideal):
            raise ValueError("the defining ideal is the unit ideal (empty scheme)")
        if self.weights is not None:
            self.weights.check_context(self.ideal.context)

    @property
    def context(self) -> VariableContext:
        return self.ideal.context

    def require_weights(self, W: Optional[WeightSystem] = None) -> WeightSystem:
        W = W or self.weights
        if W is None:
            raise ValueError("no weight system given")
        W.check_context(self.context)
        return W


@dataclass(frozen=True)
class GradedRingReport:
    initial_ideal: Ideal
    verdict: str
    witness: Optional[object] = None


def filtration_ideal_generators(ctx: VariableContext, W: WeightSystem,
                                index: Sequence[int]) -> Ideal:
    """Minimal monomial generators of ``F^index P``."""
    W.check_context(ctx)
    index = tuple(int(v) for v in index)
    if len(index) != W.r:
        raise ValueError("index length must equal the rank of the weight system")
    if any(v < 0 for v in index):
        raise ValueError("filtration index must be non-negative")
    if not any(index):
        return Ideal(ctx, (Polynomial.constant(ctx, 1),))
    bounds = []
    for m in range(ctx.n):
        b = 0
        for k, ik in enumerate(index):
            wkm = W.rows[k][m]
            if wkm > 0 and ik > 0:
                b = max(b, -(-ik // wkm))
        bounds.append(b)

    def ok(e):
        return all(sum(a * r for a, r in zip(e, row)) >= ik for row, ik in zip(W.rows, index))

    gens = []
    for e in itertools.product(*(range(b + 1) for b in bounds)):
        if not ok(e):
            continue
        minimal = True
        for m in range(ctx.n):
            if e[m]:
                e2 = e[:m] + (e[m] - 1,) + e[m + 1:]
                if ok(e2):
                    minimal = False
                    break
        if minimal:
            gens.append(Polynomial.monomial(ctx, e))
    if not gens:
        raise ValueError("no monomial reaches that filtration level")
    gens.sort(key=lambda g: str(g))
    return Ideal(ctx, tuple(gens))


def wt_value(f: Polynomial, ring: PresentedRing, w: Optional[CoWeight] = None,
             W: Optional[WeightSystem] = None, limits: Optional[Limits] = None):
    """``max{i : f in F^i_c P + I}`` for the composite row ``c``; ``INF`` on ``I``."""
    W = ring.require_weights(W)
    w = w or default_coweight(W)
    c = W.composite(w)
    if f.ctx != ring.context:
        raise ValueError("polynomial and ring have different contexts")
    return low_weight_basis(ring.ideal, (c,), limits).order_of(f)


def initial_ideal(ring: PresentedRing, W: Optional[WeightSystem] = None,
                  limits: Optional[Limits] = None) -> Ideal:
    """``in_W(I)``, returned through its reduced grevlex basis."""
    W = ring.require_weights(W)
    return initial_ideal_of(ring.ideal, W.rows, limits)


def initial_ideal_of(ideal: Ideal, rows, limits: Optional[Limits] = None) -> Ideal:
    rows = tuple(tuple(r) for r in rows)
    init = low_weight_basis(ideal, rows, limits).initial_ideal
    return Ideal(ideal.context, buchberger(init).elements)


# -- multiplicativity sampling ----------------------------------------------------

@dataclass(frozen=True)
class MultiplicativityReport:
    trials: int
    passed: int
    seed: int
    counterexample: Optional[Tuple[Polynomial, Polynomial, object, object, object]] = None

    @property
    def ok(self) -> bool:
        return self.counterexample is None


_COEFFICIENTS = tuple(Fraction(c) for c in (-3, -2, -1, 1, 2, 3))


class PolynomialSampler:
    """Seeded sparse random polynomials.

    Each sample has 1..``max_terms`` terms of degree at most ``max_degree``
    with coefficients drawn from ``{-3..3}`` minus zero.  With probability
    ``hint_rate`` the lowest term group is replaced by a monomial multiple of
    one of ``hints`` (typically irreducible factors of initial-ideal
    generators), which makes zero-divisor counterexamples reachable.
    """

    def __init__(self, ctx: VariableContext, seed: int, max_degree: int = 4,
                 max_terms: int = 4, hints: Sequence[Polynomial] = (), hint_rate: float = 0.3):
        self.ctx = ctx
        self.rng = random.Random(seed)
        self.monomials: List[Exponent] = list(monomials_up_to_degree(ctx.n, max_degree))
        self.small: List[Exponent] = list(monomials_up_to_degree(ctx.n, 1))
        self.max_terms = max_terms
        self.hints = list(hints)
        self.hint_rate = hint_rate

    def coefficient(self) -> Fraction:
        return self.rng.choice(_COEFFICIENTS)

    def sparse(self) -> Polynomial:
        k = self.rng.randint(1, self.max_terms)
        terms = {e: self.coefficient()
                 for e in self.rng.sample(self.monomials, min(k, len(self.monomials)))}
        return Polynomial._raw(self.ctx, terms)

    def sample(self) -> Polynomial:
        f = self.sparse()
        if self.hints and self.rng.random() < self.hint_rate:
            h = self.rng.choice(self.hints)
            mono = Polynomial.monomial(self.ctx, self.rng.choice(self.small), self.coefficient())
            f = h * mono + f * Polynomial.monomial(self.ctx, self.rng.choice(self.small[1:] or self.small))
        return f


def multiplicativity_test(ring: PresentedRing, w: Optional[CoWeight] = None, trials: int = 1000,
                          seed: int = 0, W: Optional[WeightSystem] = None,
                          hints: Sequence[Polynomial] = (),
                          limits: Optional[Limits] = None) -> MultiplicativityReport:
    """Check ``wt(fg) = wt(f) + wt(g)`` on seeded random pairs; stop at the first failure."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    W = ring.require_weights(W)
    w = w or default_coweight(W)
    c = W.composite(w)
    basis = low_weight_basis(ring.ideal, (c,), limits)
    sampler = PolynomialSampler(ring.context, seed, hints=hints)
    ideal_red = reducer(ring.ideal)
    passed = 0
    for _ in range(trials):
        f = _sample_outside(sampler, ideal_red)
        g = _sample_outside(sampler, ideal_red)
        wf, wg = basis.order_of(f), basis.order_of(g)
        wfg = basis.order_of(f * g)
        if wfg != wf + wg:
            return MultiplicativityReport(passed + 1, passed, seed, (f, g, wf, wg, wfg))
        passed += 1
    return MultiplicativityReport(trials, passed, seed)


def _sample_outside(sampler: PolynomialSampler, ideal_red, attempts: int = 100) -> Polynomial:
    for _ in range(attempts):
        f = sampler.sample()
        if f and not ideal_red.is_member(f):
            return f
    raise ValueError("sampler keeps landing inside the ideal")


def is_valuative_pair(ring: PresentedRing, f: Polynomial, g: Polynomial, W=None, w=None) -> bool:
    """Whether ``wt(fg) = wt(f) + wt(g)`` for this one pair."""
    a, b = wt_value(f, ring, w, W), wt_value(g, ring, w, W)
    return wt_value(f * g, ring, w, W) == a + b


__all__ = [
    "INF", "WeightSystem", "CoWeight", "PresentedRing", "GradedRingReport",
    "filtration_ideal_generators", "wt_value", "initial_ideal", "initial_ideal_of",
    "multiplicativity_test", "MultiplicativityReport", "PolynomialSampler",
    "default_coweight", "is_valuative_pair",
]
