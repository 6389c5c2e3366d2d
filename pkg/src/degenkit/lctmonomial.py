"""Log canonical thresholds of monomial ideals on affine space.

``lct(a) = min_w sum(w) / w(a)`` over non-negative weights, where
``w(a) = min <w, beta>`` over the exponents of the generators.  Two exact
routes are computed and cross-checked:

1. the minimum of ``sum(u) / b`` over the facets ``<u, x> >= b`` (``b > 0``)
   of the Newton polyhedron ``conv(exponents) + R^N_{>=0}``;
2. ``1 / s*`` where ``s* = min{s : (s, ..., s) in Newt(a)}``, a linear
   program solved by an exact simplex method.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

from .groebner import Ideal


class LctError(ValueError):
    pass


@dataclass(frozen=True)
class Facet:
    normal: Tuple[int, ...]
    offset: int


@dataclass(frozen=True)
class NewtonPolyhedron:
    exponents: Tuple[Tuple[int, ...], ...]
    facets: Tuple[Facet, ...]

    @property
    def dim(self) -> int:
        return len(self.exponents[0])

    def support(self, w: Sequence) -> Fraction:
        return min(sum(Fraction(a) * b for a, b in zip(w, e)) for e in self.exponents)

    def contains(self, point: Sequence) -> bool:
        return all(sum(Fraction(u) * p for u, p in zip(f.normal, point)) >= f.offset
                   for f in self.facets)


@dataclass(frozen=True)
class LctResult:
    c: Fraction
    rays: Tuple[Tuple[int, ...], ...]
    dual_value: Fraction


def monomial_exponents(ideal: Ideal) -> List[Tuple[int, ...]]:
    if ideal.is_zero():
        raise LctError("the zero ideal has lct 0 by convention; refusing")
    exps = []
    for g in ideal.generators:
        if not g.is_monomial():
            raise LctError(f"generator {g} is not a monomial")
        (e,) = g.terms
        exps.append(tuple(e))
    if any(not any(e) for e in exps):
        raise LctError("the ideal contains a unit (lct is +infinity)")
    return _minimal(exps)


def _minimal(exps: Sequence[Tuple[int, ...]]) -> List[Tuple[int, ...]]:
    out = []
    for e in sorted(set(exps)):
        if not any(f != e and all(a <= b for a, b in zip(f, e)) for f in exps):
            out.append(e)
    return out


def primitive(v: Sequence[Fraction]) -> Tuple[int, ...]:
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(x // g for x in ints) if g else tuple(ints)


def _nullspace_vector(rows: List[List[Fraction]], n: int) -> Optional[List[Fraction]]:
    """A nonzero vector orthogonal to ``rows`` when their rank is ``n - 1``."""
    A = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        A[r] = [v / p for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                q = A[i][c]
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    if r != n - 1:
        return None
    free = next(c for c in range(n) if c not in pivots)
    v = [Fraction(0)] * n
    v[free] = Fraction(1)
    for i, c in enumerate(pivots):
        v[c] = -A[i][free]
    return v


def newton_polyhedron(ideal_or_exponents) -> NewtonPolyhedron:
    if isinstance(ideal_or_exponents, Ideal):
        exps = monomial_exponents(ideal_or_exponents)
    else:
        exps = _minimal([tuple(e) for e in ideal_or_exponents])
    n = len(exps[0])
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    items = [("p", e) for e in exps] + [("r", e) for e in rays]
    found = {}
    for combo in itertools.combinations(range(len(items)), n):
        pts = [items[i][1] for i in combo if items[i][0] == "p"]
        rs = [items[i][1] for i in combo if items[i][0] == "r"]
        if not pts:
            continue
        base = pts[0]
        dirs = [[Fraction(a - b) for a, b in zip(p, base)] for p in pts[1:]]
        dirs += [[Fraction(x) for x in r] for r in rs]
        u = _nullspace_vector(dirs, n)
        if u is None:
            continue
        if all(x <= 0 for x in u):
            u = [-x for x in u]
        if any(x < 0 for x in u):
            continue
        u = primitive(u)
        b = min(sum(a * x for a, x in zip(u, e)) for e in exps)
        if sum(a * x for a, x in zip(u, base)) != b:
            continue
        found[u] = b
    facets = tuple(Facet(u, b) for u, b in sorted(found.items()))
    return NewtonPolyhedron(tuple(exps), facets)


# -- exact simplex -------------------------------------------------------------------

class LPError(RuntimeError):
    pass


def simplex_min(c: Sequence, A: Sequence[Sequence], b: Sequence) -> Tuple[Fraction, List[Fraction]]:
    """Minimize ``c.x`` subject to ``A x = b``, ``x >= 0`` exactly (two phases, Bland's rule)."""
    m, n = len(A), len(c)
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-v for v in A[i]]
            b[i] = -b[i]
    # phase 1 tableau with artificials n..n+m-1
    T = [A[i] + [Fraction(int(i == j)) for j in range(m)] + [b[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    width = n + m

    def pivot(r, col):
        p = T[r][col]
        T[r] = [v / p for v in T[r]]
        for i in range(m):
            if i != r and T[i][col]:
                q = T[i][col]
                T[i] = [a - q * bb for a, bb in zip(T[i], T[r])]
        basis[r] = col

    def run(cost, allowed):
        while True:
            # reduced costs
            red = []
            for j in range(width):
                if j not in allowed or j in basis:
                    continue
                rc = cost[j] - sum(cost[basis[i]] * T[i][j] for i in range(m))
                if rc < 0:
                    red.append(j)
            if not red:
                return
            col = min(red)  # Bland
            ratios = [(T[i][-1] / T[i][col], basis[i], i) for i in range(m) if T[i][col] > 0]
            if not ratios:
                raise LPError("linear program is unbounded")
            _, _, r = min(ratios)
            pivot(r, col)

    cost1 = [Fraction(0)] * n + [Fraction(1)] * m
    run(cost1, set(range(width)))
    if sum(T[i][-1] for i in range(m) if basis[i] >= n) != 0:
        raise LPError("linear program is infeasible")
    # drive remaining artificials out of the basis
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is not None:
                pivot(i, col)
    cost2 = [Fraction(v) for v in c] + [Fraction(0)] * m
    run(cost2, set(range(n)))
    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = T[i][-1]
    return sum(Fraction(ci) * xi for ci, xi in zip(c, x)), x


def diagonal_level(exps: Sequence[Tuple[int, ...]]) -> Fraction:
    """``min{s : (s,...,s) in Newt}`` by the simplex method."""
    k, n = len(exps), len(exps[0])
    # variables lambda_1..lambda_k, mu_1..mu_n, s with
    # sum_i lambda_i beta_i + mu - s*(1,...,1) = 0 and sum_i lambda_i = 1
    A, b = [], []
    for m_ in range(n):
        row = [Fraction(e[m_]) for e in exps]
        row += [Fraction(int(j == m_)) for j in range(n)]
        row.append(Fraction(-1))
        A.append(row)
        b.append(Fraction(0))
    A.append([Fraction(1)] * k + [Fraction(0)] * (n + 1))
    b.append(Fraction(1))
    cost = [Fraction(0)] * (k + n) + [Fraction(1)]
    value, _ = simplex_min(cost, A, b)
    return value


# -- thresholds ----------------------------------------------------------------------

def lct_by_facets(poly: NewtonPolyhedron) -> Tuple[Fraction, List[Tuple[int, ...]]]:
    best, rays = None, []
    for f in poly.facets:
        if f.offset <= 0:
            continue
        val = Fraction(sum(f.normal), f.offset)
        if best is None or val < best:
            best, rays = val, [f.normal]
        elif val == best:
            rays.append(f.normal)
    if best is None:
        raise LctError("Newton polyhedron has no facet with positive offset")
    return best, sorted(rays)


def lct(ideal: Ideal) -> LctResult:
    """Exact log canonical threshold, checked by both formulations."""
    poly = newton_polyhedron(ideal)
    c, rays = lct_by_facets(poly)
    s = diagonal_level(poly.exponents)
    if s <= 0:
        raise LctError("diagonal level is not positive")
    if Fraction(1) / s != c:
        raise AssertionError(f"lct formulations disagree: facets give {c}, diagonal gives {1 / s}")
    return LctResult(c, tuple(rays), Fraction(1) / s)


def verify_lc_place(w: Sequence[int], ideal_or_poly, c) -> bool:
    w = tuple(int(v) for v in w)
    if any(v < 0 for v in w) or not any(w):
        raise ValueError("weights must be non-negative and nonzero")
    poly = ideal_or_poly if isinstance(ideal_or_poly, NewtonPolyhedron) else newton_polyhedron(ideal_or_poly)
    return Fraction(sum(w)) == Fraction(c) * poly.support(w)


def lc_places(ideal: Ideal, c) -> Tuple[Tuple[int, ...], ...]:
    """Extreme rays of the cone of weights computing the threshold ``c``."""
    poly = newton_polyhedron(ideal)
    c = Fraction(c)
    true_c, _ = lct_by_facets(poly)
    if c != true_c:
        raise LctError(f"{c} is not the log canonical threshold (which is {true_c})")
    rays = tuple(sorted(f.normal for f in poly.facets
                        if f.offset > 0 and Fraction(sum(f.normal)) == c * f.offset))
    if not rays:
        raise LctError(f"{c} is not the log canonical threshold: no weight attains it")
    return rays
