"""Exact polytope invariants of toric log Fano pairs.

A polytope ``P`` containing the origin in its interior, written as
``{u : <n_F, u> >= -1}`` over its facets, encodes the anticanonical ring;
a lattice weight ``w`` gives the toric valuation ``v_w``.  Here

* ``A(w) = -min_P <u, w>``,
* ``S(w) = <barycenter(P), w> - min_P <u, w>``,

and ``S`` is the limit of the truncated averages computed from the lattice
points of ``mP``.
"""

from __future__ import annotations

import itertools
import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .lctmonomial import _nullspace_vector, primitive

Point = Tuple[Fraction, ...]
LATTICE_BUDGET = 10 ** 7


class PolytopeError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


def _dot(a, b) -> Fraction:
    return sum((Fraction(x) * Fraction(y) for x, y in zip(a, b)), Fraction(0))


def _affine_rank(points: Sequence[Point]) -> int:
    if not points:
        return -1
    base = points[0]
    rows = [[p[i] - base[i] for i in range(len(base))] for p in points[1:]]
    return _rank(rows)


def _rank(rows: List[List[Fraction]]) -> int:
    A = [list(r) for r in rows]
    if not A:
        return 0
    n = len(A[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, len(A)):
            if A[i][c]:
                q = A[i][c] / A[r][c]
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
        r += 1
    return r


def _det(M: List[List[Fraction]]) -> Fraction:
    A = [list(r) for r in M]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for i in range(c + 1, n):
            if A[i][c]:
                q = A[i][c] / A[c][c]
                A[i] = [a - q * b for a, b in zip(A[i], A[c])]
    return det


@dataclass(frozen=True)
class PolytopeFacet:
    normal: Tuple[int, ...]     # primitive inner normal
    offset: Fraction            # <normal, u> >= -offset on P
    vertices: frozenset         # indices into LatticePolytope.vertices


class LatticePolytope:
    """Full-dimensional polytope with the origin in its interior."""

    def __init__(self, vertices: Sequence[Sequence]):
        pts = sorted({tuple(Fraction(v) for v in p) for p in vertices})
        if not pts:
            raise PolytopeError("no vertices")
        n = len(pts[0])
        if any(len(p) != n for p in pts):
            raise PolytopeError("vertices of different dimensions")
        if _affine_rank(pts) != n:
            raise PolytopeError("degenerate polytope: vertices do not span the space")
        facets = _facets(pts)
        keep = [p for i, p in enumerate(pts) if _is_vertex(i, pts, facets)]
        if len(keep) != len(pts):
            # drop points that are not vertices and recompute
            pts = keep
            facets = _facets(pts)
        self.vertices: Tuple[Point, ...] = tuple(pts)
        self.dim = n
        self.facets: Tuple[PolytopeFacet, ...] = tuple(facets)
        if any(f.offset <= 0 for f in facets):
            raise PolytopeError("the origin is not in the interior of the polytope")
        self._vb = None

    @property
    def fano_normalized(self) -> bool:
        return all(f.offset == 1 for f in self.facets)

    @property
    def is_lattice(self) -> bool:
        return all(v.denominator == 1 for p in self.vertices for v in p)

    def rays(self) -> List[Tuple[int, ...]]:
        return sorted(f.normal for f in self.facets)

    def contains(self, u) -> bool:
        return all(_dot(f.normal, u) >= -f.offset for f in self.facets)

    def __repr__(self):
        vs = "; ".join(",".join(str(c) for c in v) for v in self.vertices)
        return f"LatticePolytope({vs})"


def _is_vertex(i, pts, facets) -> bool:
    through = [f for f in facets if i in f.vertices]
    normals = [[Fraction(x) for x in f.normal] for f in through]
    return _rank(normals) == len(pts[0])


def _facets(pts: Sequence[Point]) -> List[PolytopeFacet]:
    n = len(pts[0])
    found: Dict[Tuple[int, ...], PolytopeFacet] = {}
    for combo in itertools.combinations(range(len(pts)), n):
        base = pts[combo[0]]
        dirs = [[pts[i][k] - base[k] for k in range(n)] for i in combo[1:]]
        u = _nullspace_vector(dirs, n)
        if u is None:
            continue
        vals = [_dot(u, p) for p in pts]
        b = _dot(u, base)
        if all(v >= b for v in vals):
            pass
        elif all(v <= b for v in vals):
            u = [-x for x in u]
        else:
            continue
        normal = primitive(u)
        if normal in found:
            continue
        level = min(_dot(normal, p) for p in pts)
        on = frozenset(i for i, p in enumerate(pts) if _dot(normal, p) == level)
        if _affine_rank([pts[i] for i in on]) != n - 1:
            continue
        found[normal] = PolytopeFacet(normal, -level, on)
    return [found[k] for k in sorted(found)]


# -- volume and barycenter -------------------------------------------------------------

def _triangulate_face(P: LatticePolytope, face: frozenset, dim: int) -> List[List[int]]:
    """Pulling triangulation of a face from its lexicographically first vertex."""
    if dim == 0:
        return [[next(iter(face))]]
    v0 = min(face, key=lambda i: P.vertices[i])
    seen = set()
    out = []
    for f in P.facets:
        sub = face & f.vertices
        if v0 in sub or sub in seen:
            continue
        if _affine_rank([P.vertices[i] for i in sub]) != dim - 1:
            continue
        seen.add(sub)
        for simplex in _triangulate_face(P, sub, dim - 1):
            out.append([v0] + simplex)
    return out


def triangulation(P: LatticePolytope) -> List[List[Point]]:
    """Simplices coning the centroid of the vertices over each facet's triangulation."""
    center = tuple(sum(v[k] for v in P.vertices) / len(P.vertices) for k in range(P.dim))
    simplices = []
    for f in P.facets:
        for s in _triangulate_face(P, f.vertices, P.dim - 1):
            simplices.append([center] + [P.vertices[i] for i in s])
    return simplices


def volume_and_barycenter(P: LatticePolytope) -> Tuple[Fraction, Point]:
    if P._vb is not None:
        return P._vb
    n = P.dim
    total = Fraction(0)
    moment = [Fraction(0)] * n
    fact = math.factorial(n)
    for s in triangulation(P):
        M = [[p[k] - s[0][k] for k in range(n)] for p in s[1:]]
        vol = abs(_det(M)) / fact
        total += vol
        for k in range(n):
            moment[k] += vol * sum(p[k] for p in s) / (n + 1)
    if total == 0:
        raise PolytopeError("degenerate polytope")
    P._vb = (total, tuple(m / total for m in moment))
    return P._vb


# -- valuative invariants ------------------------------------------------------------

def _as_weight(w) -> Tuple[Fraction, ...]:
    w = tuple(Fraction(v) for v in w)
    if not any(w):
        raise ValueError("the weight must be nonzero")
    return w


def min_pairing(w, P: LatticePolytope) -> Fraction:
    return min(_dot(v, w) for v in P.vertices)


def minimizing_vertices(w, P: LatticePolytope) -> List[Point]:
    m = min_pairing(w, P)
    return [v for v in P.vertices if _dot(v, w) == m]


def A_value(w, P: LatticePolytope) -> Fraction:
    w = _as_weight(w)
    return -min_pairing(w, P)


def S_closed_form(w, P: LatticePolytope) -> Fraction:
    w = _as_weight(w)
    _, bary = volume_and_barycenter(P)
    return _dot(bary, w) - min_pairing(w, P)


def _column_bounds(P: LatticePolytope, m: int, prefix: Sequence[int]):
    """Integer range of the last coordinate of ``mP`` above ``prefix`` (or None)."""
    lo, hi = None, None
    n = P.dim
    for f in P.facets:
        a = f.normal
        rest = sum(a[k] * prefix[k] for k in range(n - 1))
        # a_last * x >= -m*offset - rest
        rhs = -m * f.offset - rest
        al = a[n - 1]
        if al == 0:
            if rhs > 0:
                return None
        elif al > 0:
            b = math.ceil(rhs / al)
            lo = b if lo is None else max(lo, b)
        else:
            b = math.floor(rhs / al)
            hi = b if hi is None else min(hi, b)
    if lo is None or hi is None or lo > hi:
        return None
    return lo, hi


def lattice_columns(P: LatticePolytope, m: int, budget: int = LATTICE_BUDGET):
    """Yield ``(prefix, lo, hi)`` describing ``mP`` intersected with the integer lattice."""
    vol, _ = volume_and_barycenter(P)
    n = P.dim
    estimate = vol * m ** n
    if estimate > budget:
        raise BudgetExceeded(f"about {float(estimate):.3g} lattice points exceeds budget {budget}")
    box = [(math.floor(m * min(v[k] for v in P.vertices)), math.ceil(m * max(v[k] for v in P.vertices)))
           for k in range(n)]
    if n == 1:
        b = _column_bounds(P, m, ())
        if b:
            yield (), b[0], b[1]
        return
    for prefix in itertools.product(*(range(a, b + 1) for a, b in box[:-1])):
        bounds = _column_bounds(P, m, prefix)
        if bounds:
            yield prefix, bounds[0], bounds[1]


def lattice_point_count(P: LatticePolytope, m: int, budget: int = LATTICE_BUDGET) -> int:
    return sum(hi - lo + 1 for _, lo, hi in lattice_columns(P, m, budget))


def lattice_points(P: LatticePolytope, m: int = 1, budget: int = LATTICE_BUDGET) -> List[Tuple[int, ...]]:
    out = []
    for prefix, lo, hi in lattice_columns(P, m, budget):
        out.extend(tuple(prefix) + (x,) for x in range(lo, hi + 1))
    return out


def S_truncated(w, P: LatticePolytope, m: int, budget: int = LATTICE_BUDGET) -> Fraction:
    """``H_{w,m} / (m * #(mP cap Z^n))`` with ``H = sum_u (<u,w> - m*min_P<.,w>)``."""
    if m < 1:
        raise ValueError("m must be at least 1")
    w = _as_weight(w)
    mn = min_pairing(w, P)
    count = 0
    total = Fraction(0)
    n = P.dim
    for prefix, lo, hi in lattice_columns(P, m, budget):
        k = hi - lo + 1
        head = sum(w[i] * prefix[i] for i in range(n - 1))
        total += k * head + w[n - 1] * Fraction((lo + hi) * k, 2)
        count += k
    if count == 0:
        raise PolytopeError("no lattice points in mP")
    H = total - m * mn * count
    return H / (m * count)


# -- linearity on cones of the normal fan -----------------------------------------------

@dataclass
class LinearityReport:
    ok: bool
    samples: int
    failures: List[Tuple[Fraction, Fraction]]
    violation: Optional[Tuple[Point, Point]] = None

    @property
    def precondition_met(self) -> bool:
        return self.violation is None


def linearity_check(P: LatticePolytope, w1, w2, samples: int = 50, seed: int = 0) -> LinearityReport:
    """``S`` and ``A`` are additive on ``a*w1 + b*w2`` when both weights share a cone."""
    w1, w2 = _as_weight(w1), _as_weight(w2)
    v1, v2 = minimizing_vertices(w1, P), minimizing_vertices(w2, P)
    if not set(v1) & set(v2):
        return LinearityReport(False, 0, [], (v1[0], v2[0]))
    rng = random.Random(seed)
    s1, s2 = S_closed_form(w1, P), S_closed_form(w2, P)
    a1, a2 = A_value(w1, P), A_value(w2, P)
    failures = []
    done = 0
    while done < samples:
        a = Fraction(rng.randint(0, 30), rng.randint(1, 12))
        b = Fraction(rng.randint(0, 30), rng.randint(1, 12))
        if a == 0 and b == 0:
            continue
        w = tuple(a * x + b * y for x, y in zip(w1, w2))
        done += 1
        if not any(w):
            continue
        if S_closed_form(w, P) != a * s1 + b * s2 or A_value(w, P) != a * a1 + b * a2:
            failures.append((a, b))
    return LinearityReport(not failures, done, failures)


# -- delta estimate ------------------------------------------------------------------

@dataclass
class DeltaEstimate:
    ratio_AS: Fraction          # min A/S
    ratio_SA: Fraction          # S/A at the same ray
    ray: Tuple[int, ...]
    per_ray: List[Tuple[Tuple[int, ...], Fraction]]
    grid_min: Fraction


def delta_estimate(P: LatticePolytope, grid: int = 2) -> DeltaEstimate:
    """Minimum of ``A/S`` over the rays of the normal fan, with a grid cross-check.

    On each cone both forms are linear, so the ratio is extremal on rays;
    the grid of small integer weights must never beat the ray minimum.
    """
    rays = P.rays()
    if not rays:
        raise PolytopeError("degenerate fan")
    per_ray = []
    for u in rays:
        per_ray.append((u, A_value(u, P) / S_closed_form(u, P)))
    best_ray, best = min(per_ray, key=lambda t: (t[1], t[0]))
    grid_min = best
    for w in itertools.product(range(-grid, grid + 1), repeat=P.dim):
        if not any(w):
            continue
        s = S_closed_form(w, P)
        if s > 0:
            grid_min = min(grid_min, A_value(w, P) / s)
    if grid_min < best:
        raise AssertionError("grid weight beats every fan ray; the per-cone argument failed")
    return DeltaEstimate(best, 1 / best, best_ray, per_ray, grid_min)


# -- Ehrhart consistency -------------------------------------------------------------

def boundary_lattice_points_2d(P: LatticePolytope) -> int:
    if P.dim != 2 or not P.is_lattice:
        raise PolytopeError("Pick's formula needs a lattice polygon")
    total = 0
    for f in P.facets:
        a, b = [P.vertices[i] for i in sorted(f.vertices)]
        total += math.gcd(int(a[0] - b[0]), int(a[1] - b[1]))
    return total


def ehrhart_coefficients(P: LatticePolytope) -> List[Fraction]:
    """Coefficients ``c_0..c_n`` interpolated from ``L(0)=1`` and ``L(1..n)``."""
    if not P.is_lattice:
        raise PolytopeError("Ehrhart polynomials need integer vertices")
    n = P.dim
    xs = list(range(n + 1))
    ys = [Fraction(1)] + [Fraction(lattice_point_count(P, m)) for m in range(1, n + 1)]
    # solve the Vandermonde system exactly
    M = [[Fraction(x) ** k for k in range(n + 1)] + [y] for x, y in zip(xs, ys)]
    for c in range(n + 1):
        piv = next(i for i in range(c, n + 1) if M[i][c])
        M[c], M[piv] = M[piv], M[c]
        p = M[c][c]
        M[c] = [v / p for v in M[c]]
        for i in range(n + 1):
            if i != c and M[i][c]:
                q = M[i][c]
                M[i] = [a - q * b for a, b in zip(M[i], M[c])]
    return [M[k][-1] for k in range(n + 1)]


def ehrhart_value(coeffs: Sequence[Fraction], m: int) -> Fraction:
    return sum(c * m ** k for k, c in enumerate(coeffs))


# -- input format ------------------------------------------------------------------

def parse_polytope(text: str) -> LatticePolytope:
    """``dim 2; vertex -1,-1; vertex 2,-1; vertex -1,2;`` (``#`` starts a comment)."""
    text = re.sub(r"#[^\n]*", "", text)
    dim = None
    verts = []
    for lineno, stmt in enumerate(re.split(r"[;\n]", text), 1):
        stmt = stmt.strip()
        if not stmt:
            continue
        head, _, rest = stmt.partition(" ")
        if head == "dim":
            try:
                dim = int(rest)
            except ValueError:
                raise PolytopeError(f"bad dimension {rest!r}") from None
        elif head == "vertex":
            try:
                verts.append(tuple(Fraction(c.strip()) for c in rest.split(",")))
            except (ValueError, ZeroDivisionError):
                raise PolytopeError(f"bad vertex {rest!r}") from None
        else:
            raise PolytopeError(f"unknown statement {stmt!r}")
    if dim is None:
        raise PolytopeError("missing 'dim' statement")
    if any(len(v) != dim for v in verts):
        raise PolytopeError("vertex dimension does not match 'dim'")
    return LatticePolytope(verts)
