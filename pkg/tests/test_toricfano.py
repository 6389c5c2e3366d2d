from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from degenkit.toricfano import (
    A_value,
    BudgetExceeded,
    LatticePolytope,
    PolytopeError,
    S_closed_form,
    S_truncated,
    boundary_lattice_points_2d,
    delta_estimate,
    ehrhart_coefficients,
    ehrhart_value,
    lattice_point_count,
    lattice_points,
    linearity_check,
    minimizing_vertices,
    parse_polytope,
    volume_and_barycenter,
)
from polytopes import BL1_P2, CUBE, HEXAGON, P1XP1, P2, P3, PLANAR, SEGMENT

F = Fraction


def test_volume_and_barycenter_examples():
    assert volume_and_barycenter(P2) == (F(9, 2), (0, 0))
    assert volume_and_barycenter(P1XP1) == (4, (0, 0))
    assert volume_and_barycenter(SEGMENT) == (2, (0,))
    assert volume_and_barycenter(CUBE) == (8, (0, 0, 0))
    vol, bary = volume_and_barycenter(P3)
    assert vol == F(4 ** 3, 6) and bary == (0, 0, 0)


def test_blowup_barycenter_by_decomposition():
    # triangle minus the corner triangle (-1,-1),(0,-1),(-1,0) of area 1/2, centroid (-2/3,-2/3)
    vol, bary = volume_and_barycenter(BL1_P2)
    assert vol == F(9, 2) - F(1, 2)
    expected = tuple((F(9, 2) * 0 - F(1, 2) * F(-2, 3)) / vol for _ in range(2))
    assert bary == expected == (F(1, 12), F(1, 12))


def test_A_and_S_examples():
    assert A_value((1, 0), P2) == 1
    assert A_value((1, 1), P2) == 2
    assert A_value((0, 1), P2) == 1
    assert S_closed_form((1, 0), P2) == 1
    assert S_closed_form((1, 1), P2) == 2
    for w in [(1, 0), (2, 3), (-1, 5)]:
        assert S_closed_form(w, P1XP1) == A_value(w, P1XP1)
        assert S_closed_form(w, HEXAGON) == A_value(w, HEXAGON)


def test_truncated_S_at_level_one():
    pts = lattice_points(P2, 1)
    assert len(pts) == 10
    H = sum(u[0] + 1 for u in pts)
    assert S_truncated((1, 0), P2, 1) == F(H, 10)


def test_truncated_S_symmetric():
    for m in (1, 2, 5):
        for w in [(1, 0), (1, 2)]:
            # sum of <u, w> vanishes, so H/(m*count) is exactly A
            assert S_truncated(w, P1XP1, m) == A_value(w, P1XP1)


def test_truncated_S_converges():
    assert abs(S_truncated((1, 0), P2, 200) - S_closed_form((1, 0), P2)) <= F(2, 200)


@pytest.mark.parametrize("P", PLANAR, ids=["P2", "Bl1P2", "P1xP1", "pentagon", "hexagon"])
def test_truncation_tail(P):
    for w in P.rays()[:2]:
        S = S_closed_form(w, P)
        errs = [abs(S_truncated(w, P, m) - S) for m in (10, 20, 40, 80, 160)]
        consts = [e * m for e, m in zip(errs, (10, 20, 40, 80, 160))]
        assert all(a >= b for a, b in zip(errs, errs[1:])), errs
        assert max(consts) <= 2, consts


def test_lattice_budget():
    with pytest.raises(BudgetExceeded):
        lattice_point_count(CUBE, 1000)
    with pytest.raises(ValueError):
        S_truncated((1, 0), P2, 0)


def brute_count(P, m):
    lo = [int(min(v[k] for v in P.vertices)) * m for k in range(P.dim)]
    hi = [int(max(v[k] for v in P.vertices)) * m for k in range(P.dim)]
    return sum(1 for u in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))
               if P.contains(tuple(F(x, m) for x in u)))


@pytest.mark.parametrize("P", PLANAR + [CUBE, P3, SEGMENT],
                         ids=["P2", "Bl1P2", "P1xP1", "pentagon", "hexagon", "cube", "P3", "segment"])
def test_ehrhart_consistency(P):
    coeffs = ehrhart_coefficients(P)
    vol, _ = volume_and_barycenter(P)
    assert coeffs[-1] == vol and coeffs[0] == 1
    for m in range(1, 21):
        assert lattice_point_count(P, m) == ehrhart_value(coeffs, m)
    for m in range(1, 4):
        assert lattice_point_count(P, m) == brute_count(P, m)
    if P.dim == 2:
        # Pick: L(m) = A m^2 + (B/2) m + 1
        B = boundary_lattice_points_2d(P)
        assert coeffs == [1, F(B, 2), vol]


def test_cube_ehrhart():
    assert ehrhart_coefficients(CUBE) == [1, 6, 12, 8]
    assert ehrhart_coefficients(P2) == [1, F(9, 2), F(9, 2)]


def test_delta_examples():
    est = delta_estimate(P2)
    assert est.ratio_AS == 1 and all(r == 1 for _, r in est.per_ray)
    for P in (P1XP1, HEXAGON):
        assert delta_estimate(P).ratio_AS == 1


def test_blowup_delta_hand_derivation():
    # Hand derivation for the blow-up of P^2 at a torus-fixed point:
    #   area 4, barycenter b = (1/12, 1/12) (see the decomposition test above);
    #   A(w) = -min over vertices, S(w) = <b, w> + A(w).
    #   w = (1,1):   A = 1, S = 1/6 + 1 = 7/6,   A/S = 6/7   (exceptional divisor)
    #   w = (1,0):   A = 1, S = 1/12 + 1 = 13/12, A/S = 12/13  (and (0,1) by symmetry)
    #   w = (-1,-1): A = 1, S = -1/6 + 1 = 5/6,  A/S = 6/5
    # so min A/S = 6/7 at (1,1).
    hand = {(1, 1): F(6, 7), (1, 0): F(12, 13), (0, 1): F(12, 13), (-1, -1): F(6, 5)}
    est = delta_estimate(BL1_P2)
    assert dict(est.per_ray) == hand
    assert est.ratio_AS == F(6, 7) and est.ray == (1, 1)
    assert est.ratio_SA == F(7, 6)


@pytest.mark.parametrize("P", PLANAR, ids=["P2", "Bl1P2", "P1xP1", "pentagon", "hexagon"])
def test_ratio_scale_invariant(P):
    for u in P.rays():
        r = A_value(u, P) / S_closed_form(u, P)
        for k in (2, 3, F(1, 2)):
            w = tuple(k * x for x in u)
            assert A_value(w, P) / S_closed_form(w, P) == r


def _cones(P):
    rays = P.rays()
    for u, v in itertools.combinations(rays, 2):
        if set(minimizing_vertices(u, P)) & set(minimizing_vertices(v, P)):
            yield u, v


@pytest.mark.parametrize("P", PLANAR, ids=["P2", "Bl1P2", "P1xP1", "pentagon", "hexagon"])
def test_ratio_extremal_on_rays(P):
    for u, v in _cones(P):
        ru = A_value(u, P) / S_closed_form(u, P)
        rv = A_value(v, P) / S_closed_form(v, P)
        for a, b in [(1, 1), (1, 3), (5, 2)]:
            w = tuple(a * x + b * y for x, y in zip(u, v))
            r = A_value(w, P) / S_closed_form(w, P)
            assert min(ru, rv) <= r <= max(ru, rv)
            if ru == rv:
                assert r == ru


def test_linearity_examples():
    rep = linearity_check(P2, (1, 0), (0, 1))
    assert rep.ok and rep.precondition_met and rep.samples == 50
    rep = linearity_check(P2, (1, 0), (-1, 0))
    assert not rep.precondition_met and not rep.ok
    # no vertex minimizes both, so the report names one minimizer of each
    assert rep.violation == ((-1, -1), (2, -1))
    assert rep.samples == 0


def test_parse_polytope():
    P = parse_polytope("dim 2; vertex -1,-1; vertex 2,-1; vertex -1,2;")
    assert P.vertices == P2.vertices
    # a redundant point on an edge is dropped
    Q = parse_polytope("dim 2\nvertex -1,-1\nvertex 2,-1\nvertex -1,2\nvertex 0,-1  # on an edge\n")
    assert Q.vertices == P2.vertices
    for bad in ["vertex 1,2", "dim 2; vertex 1", "dim 2; vertex a,b", "dim 2; face 1,2",
                "dim 2; vertex 1,1; vertex 2,2; vertex 3,3",
                "dim 2; vertex 1,1; vertex 2,1; vertex 1,2"]:
        with pytest.raises(PolytopeError):
            parse_polytope(bad)


def test_rational_polytope_allowed_but_not_lattice():
    P = LatticePolytope([(F(-1, 2), -1), (1, -1), (1, 1), (F(-1, 2), 1)])
    assert not P.is_lattice and not P.fano_normalized
    with pytest.raises(PolytopeError):
        ehrhart_coefficients(P)
