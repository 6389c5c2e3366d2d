"""Monomial valuations in a chart, compared with filtration weight functions.

A chart is a ring map from the ambient polynomial ring to a polynomial
ring in chart coordinates ``z``; the monomial valuation with weights ``w``
sends ``f`` to the smallest ``<beta, w>`` over the terms ``z^beta`` of its
image.  Two declaration styles are accepted:

* ``chart z1=x, z2=y`` names chart coordinates as linear forms in the
  ambient variables (the linear map must be invertible);
* ``chart x=z1, y=z1*u`` gives every ambient variable as a polynomial in new
  chart coordinates (ordered by first appearance).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .filtration import (
    CoWeight,
    PolynomialSampler,
    PresentedRing,
    WeightSystem,
    default_coweight,
    initial_ideal,
    wt_value,
)
from .groebner import INF, Ideal, is_unit_ideal, reducer
from .parsing import ChartSpec, parse_polynomial, tokenize
from .polyarith import Polynomial, VariableContext


class ChartError(ValueError):
    pass


@dataclass(frozen=True)
class MonomialChart:
    ambient: VariableContext
    coords: VariableContext
    images: Tuple[Polynomial, ...]   # image of each ambient variable, in coords
    weights: Tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(v) for v in self.weights)
        object.__setattr__(self, "weights", w)
        if len(self.images) != self.ambient.n:
            raise ChartError("need one image per ambient variable")
        if len(w) != self.coords.n:
            raise ChartError(f"vweights has {len(w)} entries, chart has {self.coords.n} coordinates")
        if any(v < 0 for v in w) or not any(w):
            raise ChartError("chart weights must be non-negative and not all zero")

    def pullback(self, f: Polynomial) -> Polynomial:
        if f.ctx != self.ambient:
            raise ChartError("polynomial is not in the chart's ambient ring")
        return f.compose(self.coords, list(self.images))

    def kills(self, ideal: Ideal) -> bool:
        """Whether the chart map factors through ``P/ideal``."""
        return all(not self.pullback(g) for g in ideal.generators)


def identity_chart(ctx: VariableContext, weights: Sequence[int]) -> MonomialChart:
    coords = VariableContext(tuple(f"z{i + 1}" for i in range(ctx.n)))
    images = tuple(Polynomial.variable(coords, nm) for nm in coords.names)
    return MonomialChart(ctx, coords, images, tuple(weights))


def chart_from_spec(spec: ChartSpec, ambient: VariableContext) -> MonomialChart:
    if spec.weights is None:
        raise ChartError("chart declared without vweights")
    lhs = [name for name, _ in spec.entries]
    if len(set(lhs)) != len(lhs):
        raise ChartError("chart assigns a name twice")
    in_ambient = [name in ambient.names for name in lhs]
    if all(in_ambient):
        return _chart_by_images(spec, ambient)
    if not any(in_ambient):
        return _chart_by_coordinates(spec, ambient)
    raise ChartError("chart mixes ambient variables and new coordinates on the left")


def _chart_by_images(spec: ChartSpec, ambient: VariableContext) -> MonomialChart:
    names: List[str] = []
    for _, rhs in spec.entries:
        for tok in tokenize(rhs):
            if tok.kind == "ident" and tok.text not in names:
                names.append(tok.text)
    if not names:
        raise ChartError("chart images use no coordinates")
    coords = VariableContext(tuple(names))
    given = {name: parse_polynomial(rhs, coords) for name, rhs in spec.entries}
    missing = [nm for nm in ambient.names if nm not in given]
    if missing:
        raise ChartError(f"chart gives no image for {', '.join(missing)}")
    images = tuple(given[nm] for nm in ambient.names)
    return MonomialChart(ambient, coords, images, spec.weights)


def _chart_by_coordinates(spec: ChartSpec, ambient: VariableContext) -> MonomialChart:
    coords = VariableContext(tuple(name for name, _ in spec.entries))
    forms = [parse_polynomial(rhs, ambient) for _, rhs in spec.entries]
    n = ambient.n
    if len(forms) != n:
        raise ChartError("coordinate charts need exactly one coordinate per ambient variable")
    M = []
    for f in forms:
        if f.degree() != 1 or f.coefficient((0,) * n):
            raise ChartError(f"chart coordinate {f} is not a linear form in the ambient variables")
        M.append([f.coefficient(tuple(int(k == j) for k in range(n))) for j in range(n)])
    inv = _invert(M)
    if inv is None:
        raise ChartError("chart coordinates are linearly dependent")
    # z = M x  =>  x = inv z
    images = []
    for j in range(n):
        terms = {tuple(int(k == i) for k in range(n)): inv[j][i] for i in range(n) if inv[j][i]}
        images.append(Polynomial(coords, terms))
    return MonomialChart(ambient, coords, tuple(images), spec.weights)


def _invert(M: List[List[Fraction]]) -> Optional[List[List[Fraction]]]:
    n = len(M)
    A = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        p = A[col][col]
        A[col] = [v / p for v in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                q = A[r][col]
                A[r] = [a - q * b for a, b in zip(A[r], A[col])]
    return [row[n:] for row in A]


def v_w(f: Polynomial, chart: MonomialChart):
    """Minimal chart weight of the terms of ``f``'s image; ``INF`` when the image is 0."""
    g = chart.pullback(f)
    if not g:
        return INF
    return g.min_weight(chart.weights)


def v_w_in_coordinates(g: Polynomial, weights: Sequence[int]):
    """The same valuation for a polynomial already written in chart coordinates."""
    if not g:
        return INF
    return g.min_weight(tuple(weights))


@dataclass(frozen=True)
class ChartComparison:
    samples: int
    passed: int
    seed: int
    refused: Optional[str] = None
    discrepancy: Optional[Tuple[Polynomial, object, object]] = None

    @property
    def ok(self) -> bool:
        return self.refused is None and self.discrepancy is None


def compare_with_chart(ring: PresentedRing, W: Optional[WeightSystem], chart: MonomialChart,
                       w: Optional[CoWeight] = None, samples: int = 500,
                       seed: int = 0) -> ChartComparison:
    """Check ``wt(f) = v_w(f)`` on seeded samples, after checking the hypotheses.

    Refuses (rather than guessing) when the central fiber is not integral or
    the chart map does not vanish on the ideal.
    """
    from .domaincheck import DOMAIN, check_domain

    W = ring.require_weights(W)
    w = w or default_coweight(W)
    init = initial_ideal(ring, W)
    if is_unit_ideal(init):
        return ChartComparison(0, 0, seed, refused="central fiber is empty")
    verdict = check_domain(init)
    if verdict.status != DOMAIN:
        return ChartComparison(0, 0, seed, refused=f"central fiber verdict is {verdict.status}")
    if chart.ambient != ring.context:
        return ChartComparison(0, 0, seed, refused="chart is declared over a different ring")
    if not chart.kills(ring.ideal):
        return ChartComparison(0, 0, seed, refused="chart map does not vanish on the ideal")
    sampler = PolynomialSampler(ring.context, seed)
    red = reducer(ring.ideal)
    passed = 0
    for _ in range(samples):
        f = sampler.sample()
        while not f or red.is_member(f):
            f = sampler.sample()
        a = wt_value(f, ring, w, W)
        b = v_w(f, chart)
        if a != b:
            return ChartComparison(passed + 1, passed, seed, discrepancy=(f, a, b))
        passed += 1
    return ChartComparison(samples, passed, seed)
