"""Brute-force reference computations that avoid the weighted-basis machinery."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from degenkit.filtration import WeightSystem, filtration_ideal_generators
from degenkit.groebner import INF, Ideal, member
from degenkit.polyarith import Polynomial, monomials_of_weight, weight_of


def rank(rows: List[Dict[Tuple[int, ...], Fraction]]) -> int:
    """Rank of sparse rational row vectors by Gaussian elimination."""
    pivots: Dict[Tuple[int, ...], Dict] = {}
    r = 0
    for row in rows:
        v = dict(row)
        while v:
            col = max(v)
            if col not in pivots:
                c = v[col]
                pivots[col] = {k: x / c for k, x in v.items()}
                r += 1
                break
            p = pivots[col]
            c = v[col]
            for k, x in p.items():
                s = v.get(k, 0) - c * x
                if s:
                    v[k] = s
                else:
                    v.pop(k, None)
    return r


def quotient_dimension(ideal: Ideal, row: Sequence[int], d: int) -> int:
    """``dim P / (I + F^{d+1})`` by linear algebra in the truncated ring."""
    n = ideal.context.n
    basis = [e for k in range(d + 1) for e in monomials_of_weight(row, k)]
    rows = []
    for g in ideal.generators:
        low = g.min_weight(row)
        for k in range(0, d - low + 1):
            for m in monomials_of_weight(row, k):
                v = {}
                for e, c in g.terms.items():
                    e2 = tuple(a + b for a, b in zip(e, m))
                    if weight_of(e2, row) <= d:
                        v[e2] = c
                if v:
                    rows.append(v)
    del n
    return len(basis) - rank(rows)


def filtered_hilbert(ideal: Ideal, row: Sequence[int], bound: int) -> List[int]:
    """``dim (F^d + I) / (F^{d+1} + I)`` for ``d <= bound``."""
    dims = [quotient_dimension(ideal, row, d) for d in range(bound + 1)]
    return [dims[0]] + [dims[d] - dims[d - 1] for d in range(1, bound + 1)]


def monomial_count(row: Sequence[int], bound: int) -> int:
    return sum(1 for k in range(bound + 1) for _ in monomials_of_weight(row, k))


def wt_by_membership(f: Polynomial, ideal: Ideal, row: Sequence[int], cap: int = 60):
    """``max{i : f in I + F^i}`` straight from the definition."""
    if member(f, ideal):
        return INF
    W = WeightSystem((tuple(row),))
    i = 0
    while i <= cap:
        Fi = filtration_ideal_generators(ideal.context, W, (i + 1,))
        if not member(f, ideal + Fi):
            return i
        i += 1
    raise AssertionError("weight above the oracle cap")
