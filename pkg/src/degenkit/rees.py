"""Multi-graded extended Rees presentations and their fibers.

For a weight system with rows ``w_1..w_r`` the total space lives over
``A^r`` with coordinates ``t_1..t_r``.  A polynomial ``g`` is homogenized by
``x_m -> x_m * prod_k t_k^{w_{k,m}}`` followed by division by the largest
common monomial in the ``t``'s.  The fiber over ``t = 1`` is ``I`` and the
fiber over ``t = 0`` is the initial ideal when the family is flat.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .filtration import PresentedRing, WeightSystem, initial_ideal, initial_ideal_of
from .groebner import (
    HilbertTable,
    Ideal,
    Limits,
    buchberger,
    colength,
    hilbert_function,
    ideal_equal,
    low_weight_basis,
    saturate,
    variable_product,
)
from .polyarith import Polynomial, VariableContext


@dataclass(frozen=True)
class ReesPresentation:
    base: VariableContext
    context: VariableContext
    t_names: Tuple[str, ...]
    ideal: Ideal
    weights: WeightSystem

    def substitution_record(self) -> List[str]:
        """``y_m = x_m * t^...`` lines identifying the generic fiber with the base ring."""
        out = []
        for m, name in enumerate(self.base.names):
            factors = [name]
            for k, t in enumerate(self.t_names):
                e = self.weights.rows[k][m]
                if e == 1:
                    factors.append(t)
                elif e > 1:
                    factors.append(f"{t}^{e}")
            out.append(f"y_{name} = " + "*".join(factors))
        return out


def homogenize_in_t(g: Polynomial, ctx: VariableContext, W: WeightSystem) -> Polynomial:
    """Weight-homogenize ``g`` into ``ctx`` (base variables followed by the t's)."""
    n, r = g.ctx.n, W.r
    terms = {}
    for e, c in g.terms.items():
        texp = tuple(sum(row[m] * e[m] for m in range(n)) for row in W.rows)
        terms[e + texp] = c
    if not terms:
        return Polynomial.zero(ctx)
    low = tuple(min(k[n + j] for k in terms) for j in range(r))
    return Polynomial(ctx, {k[:n] + tuple(a - b for a, b in zip(k[n:], low)): c
                            for k, c in terms.items()})


def rees_presentation(ring: PresentedRing, W: Optional[WeightSystem] = None,
                      limits: Optional[Limits] = None) -> ReesPresentation:
    W = ring.require_weights(W)
    base = ring.context
    t_names = base.fresh_names("t", W.r)
    ctx = base.extend(t_names)
    if ring.ideal.is_zero():
        return ReesPresentation(base, ctx, t_names, Ideal(ctx), W)
    if W.r == 1:
        basis = low_weight_basis(ring.ideal, W.rows, limits).standard_basis
    else:
        # one rank-1 standard basis per row keeps each row's homogenization saturated
        basis = []
        for row in W.rows:
            basis.extend(low_weight_basis(ring.ideal, (row,), limits).standard_basis)
        basis.extend(low_weight_basis(ring.ideal, W.rows, limits).standard_basis)
    gens = tuple(homogenize_in_t(g, ctx, W) for g in basis)
    total = Ideal(ctx, gens)
    if W.r > 1:
        total = saturate(total, variable_product(ctx, t_names))
    total = Ideal(ctx, buchberger(total).elements)
    return ReesPresentation(base, ctx, t_names, total, W)


def fiber_at(rp: ReesPresentation, s: Sequence[int]) -> Ideal:
    s = tuple(int(v) for v in s)
    if len(s) != len(rp.t_names):
        raise ValueError(f"fiber point needs {len(rp.t_names)} coordinates")
    if any(v not in (0, 1) for v in s):
        raise ValueError("fiber coordinates must be 0 or 1")
    values = dict(zip(rp.t_names, s))
    gens = [g.substitute(values).to_context(rp.base) for g in rp.ideal.generators]
    return Ideal(rp.base, tuple(buchberger(Ideal(rp.base, tuple(gens))).elements))


def degenerate_ideal(J: Ideal, ring: PresentedRing, W: Optional[WeightSystem] = None,
                     limits: Optional[Limits] = None) -> Ideal:
    """Central fiber ``in_W(J + I)`` of the flat closure of ``(J + I)/I``."""
    W = ring.require_weights(W)
    return initial_ideal_of(J + ring.ideal, W.rows, limits)


@dataclass(frozen=True)
class ColengthReport:
    original: Optional[int]
    degenerate: Optional[int]

    @property
    def preserved(self) -> bool:
        return self.original == self.degenerate


def colength_check(J: Ideal, ring: PresentedRing, W: Optional[WeightSystem] = None) -> ColengthReport:
    total = J + ring.ideal
    return ColengthReport(colength(total), colength(degenerate_ideal(J, ring, W)))


@dataclass(frozen=True)
class FlatnessReport:
    flat: bool
    table_ring: HilbertTable
    table_fiber: HilbertTable
    torsion_free: bool
    partial: bool

    @property
    def tables_equal(self) -> bool:
        return self.table_ring.values == self.table_fiber.values


def composite_row(W: WeightSystem) -> Tuple[int, ...]:
    return tuple(sum(col) for col in zip(*W.rows))


def flatness_check(ring: PresentedRing, W: Optional[WeightSystem], bound: int,
                   presentation: Optional[ReesPresentation] = None) -> FlatnessReport:
    """Compare the Hilbert function of ``R`` with that of the central fiber.

    ``R``'s side uses the associated graded ring of the composite-weight
    filtration (the ideal's own graded pieces when it is homogeneous).  The
    fiber side is read off the presentation's ``t = 0`` specialization.  A
    presentation is also required to be free of ``t``-torsion.  When the
    composite grading has zero entries the Hilbert functions are taken on the
    subring of positively weighted variables and ``partial`` is set.
    """
    W = ring.require_weights(W)
    rp = presentation or rees_presentation(ring, W)
    c = composite_row(W)
    fiber0 = fiber_at(rp, (0,) * W.r)
    torsion_free = ideal_equal(saturate(rp.ideal, variable_product(rp.context, rp.t_names)),
                               rp.ideal)
    partial = any(v == 0 for v in c)
    if not partial:
        t_ring = hilbert_function(ring.ideal, c, bound)
        t_fiber = hilbert_function(fiber0, c, bound)
        flat = torsion_free and t_ring.values == t_fiber.values
    else:
        from .groebner import eliminate
        zero = [n for n, v in zip(ring.context.names, c) if v == 0]
        pos = tuple(v for v in c if v > 0)
        t_ring = hilbert_function(eliminate(ring.ideal, zero), pos, bound)
        t_fiber = hilbert_function(eliminate(fiber0, zero), pos, bound)
        flat = torsion_free
    return FlatnessReport(flat, t_ring, t_fiber, torsion_free, partial)


def truncated_presentation(rp: ReesPresentation, drop: int = 0) -> ReesPresentation:
    """Copy of ``rp`` with one generator removed (a deliberately broken family)."""
    gens = list(rp.ideal.generators)
    if not gens:
        raise ValueError("nothing to drop")
    del gens[drop % len(gens)]
    return ReesPresentation(rp.base, rp.context, rp.t_names, Ideal(rp.context, tuple(gens)),
                            rp.weights)


def iterated_vs_simultaneous(ring: PresentedRing, w1: Sequence[int], w2: Sequence[int]) -> bool:
    """Whether degenerating along ``w1`` then ``w2`` equals the two-row degeneration."""
    w1, w2 = tuple(w1), tuple(w2)
    step = initial_ideal_of(ring.ideal, (w1,))
    iterated = initial_ideal_of(step, (w2,))
    simultaneous = initial_ideal_of(ring.ideal, (w1, w2))
    return ideal_equal(iterated, simultaneous)


def general_fiber_matches(rp: ReesPresentation, ring: PresentedRing) -> bool:
    return ideal_equal(fiber_at(rp, (1,) * len(rp.t_names)), ring.ideal)


def central_fiber_matches(rp: ReesPresentation, ring: PresentedRing) -> bool:
    return ideal_equal(fiber_at(rp, (0,) * len(rp.t_names)), initial_ideal(ring, rp.weights))
