from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import load, poly, ring_of
from degenkit.filtration import (
    INF,
    CoWeight,
    PolynomialSampler,
    PresentedRing,
    WeightSystem,
    filtration_ideal_generators,
    initial_ideal,
    initial_ideal_of,
    is_valuative_pair,
    multiplicativity_test,
    wt_value,
)
from degenkit.groebner import Ideal, contains, ideal_equal, is_unit_ideal, member
from degenkit.polyarith import Polynomial, VariableContext
from instances import CURATED
from oracles import wt_by_membership

XY = VariableContext(("x", "y"))


def gens_of(ideal):
    return sorted(str(g) for g in ideal.generators)


def test_filtration_generator_examples():
    assert gens_of(filtration_ideal_generators(XY, WeightSystem(((1, 1),)), (2,))) == \
        ["x*y", "x^2", "y^2"]
    assert gens_of(filtration_ideal_generators(XY, WeightSystem(((3, 2),)), (6,))) == \
        ["x*y^2", "x^2", "y^3"]
    assert gens_of(filtration_ideal_generators(XY, WeightSystem(((3, 2), (0, 1))), (0, 0))) == ["1"]
    with pytest.raises(ValueError):
        filtration_ideal_generators(XY, WeightSystem(((1, 1),)), (-1,))


def test_filtration_generators_match_enumeration():
    # every monomial of bounded degree lies in F^i exactly when its weight is >= i
    W = WeightSystem(((3, 2), (1, 4)))
    for index in itertools.product(range(7), range(7)):
        F = filtration_ideal_generators(XY, W, index)
        for e in itertools.product(range(8), repeat=2):
            inside = all(sum(a * b for a, b in zip(row, e)) >= i for row, i in zip(W.rows, index))
            assert member(Polynomial.monomial(XY, e), F) == inside


@pytest.mark.parametrize("rows", [((1, 1),), ((3, 2),), ((2, 1), (0, 3))])
def test_filtration_axioms(rows):
    W = WeightSystem(rows)
    idx = list(itertools.product(range(5), repeat=W.r))
    for i, j in itertools.product(idx, idx):
        Fi = filtration_ideal_generators(XY, W, i)
        Fj = filtration_ideal_generators(XY, W, j)
        Fij = filtration_ideal_generators(XY, W, tuple(a + b for a, b in zip(i, j)))
        for g, h in itertools.product(Fi.generators, Fj.generators):
            assert member(g * h, Fij)
        if all(a <= b for a, b in zip(i, j)):
            assert contains(Fi, Fj)


def test_wt_examples():
    W = WeightSystem(((3, 2),))
    ring = PresentedRing(Ideal(XY), W)
    assert wt_value(poly(XY, "x^2*y^3"), ring) == 12
    node = ring_of("vars x,y; y^2 - x^2 - x^3", [(1, 1)])
    ctx = node.context
    assert wt_value(poly(ctx, "y - x"), node) == 1
    assert wt_value(poly(ctx, "x^3"), node) == 3
    assert wt_value(poly(ctx, "y^2 - x^2"), node) == 3
    assert wt_value(poly(ctx, "y^2 - x^2 - x^3"), node) == INF
    assert wt_value(poly(ctx, "7"), node) == 0


def test_wt_on_node_agrees_with_membership_oracle():
    node = ring_of("vars x,y; y^2 - x^2 - x^3", [(1, 1)])
    ctx = node.context
    for text in ["y - x", "y + x", "y^2 - x^2", "(y - x)^2", "x^3", "y^2 - x^2 - x^3 + x^5",
                 "(y - x)*(y + x)*x", "y^3 - x^2*y"]:
        f = poly(ctx, text)
        assert wt_value(f, node) == wt_by_membership(f, node.ideal, (1, 1)), text


def test_wt_uses_composite_coweight():
    ring = ring_of("vars x,y,z; x*y - z^2", [(1, 0, 1), (0, 2, 1)])
    ctx = ring.context
    f = poly(ctx, "x + y")
    assert wt_value(f, ring, CoWeight((1, 0))) == 0
    assert wt_value(f, ring, CoWeight((1, 1))) == 1
    assert wt_value(f, ring, CoWeight((2, 1))) == 2


@pytest.mark.parametrize("inst", CURATED[:11], ids=lambda i: i.name)
def test_wt_agrees_with_membership_oracle_on_samples(inst):
    ring = inst.ring
    row = inst.weights.rows[0]
    sampler = PolynomialSampler(ring.context, seed=5, max_degree=3)
    for _ in range(15):
        f = sampler.sample()
        assert wt_value(f, ring) == wt_by_membership(f, ring.ideal, row)


def test_initial_ideal_examples():
    cusp = ring_of("vars x,y; x^2 - y^3", [(3, 2)])
    assert ideal_equal(initial_ideal(cusp), cusp.ideal)
    node = ring_of("vars x,y; y^2 - x^2 - x^3", [(1, 1)])
    assert gens_of(initial_ideal(node)) == ["x^2 - y^2"]


def test_initial_ideal_of_affine_line_is_unit():
    # lowest-weight part of x + y + 1 is the constant: the central fiber is empty
    line = ring_of("vars x,y; x + y + 1", [(1, 1)])
    assert is_unit_ideal(initial_ideal(line))


def test_initial_ideal_collects_syzygy_leading_forms():
    # the generators' lowest parts give only (x); y*(x - y^2) - x*y = -y^3 adds y^3
    ring = ring_of("vars x,y; x - y^2; x*y", [(1, 1)])
    init = initial_ideal(ring)
    assert member(poly(ring.context, "y^3"), init)
    assert member(poly(ring.context, "x"), init)


def test_initial_ideal_fixed_on_homogeneous_ideals():
    for inst in CURATED:
        ring = inst.ring
        if all(g.is_homogeneous(row) for g in ring.ideal.generators for row in inst.rows):
            assert ideal_equal(initial_ideal(ring), ring.ideal), inst.name


def test_rank_two_initial_ideal_is_lexicographic():
    _, I = load("vars x,y,z; x*y - z^2 - x^2*z")
    init = initial_ideal_of(I, ((1, 1, 1), (0, 1, 0)))
    # row 1 keeps x*y - z^2; row 2 then picks the term without y
    assert gens_of(init) == ["z^2"]


def test_multiplicativity_examples():
    quadric = CURATED[0].ring
    rep = multiplicativity_test(quadric, trials=300, seed=1)
    assert rep.ok and rep.passed == 300
    node = ring_of("vars x,y; y^2 - x^2 - x^3", [(1, 1)])
    ctx = node.context
    assert not is_valuative_pair(node, poly(ctx, "y - x"), poly(ctx, "y + x"))
    assert wt_value(poly(ctx, "(y - x)*(y + x)"), node) == 3
    plane = PresentedRing(Ideal(XY), WeightSystem(((2, 5),)))
    assert multiplicativity_test(plane, trials=300, seed=2).ok


def test_multiplicativity_deterministic():
    node = ring_of("vars x,y; y^2 - x^2 - x^3", [(1, 1)])
    ctx = node.context
    hints = (poly(ctx, "y - x"), poly(ctx, "y + x"))
    a = multiplicativity_test(node, trials=500, seed=3, hints=hints)
    b = multiplicativity_test(node, trials=500, seed=3, hints=hints)
    assert a == b
    assert not a.ok
    f, g, wf, wg, wfg = a.counterexample
    assert wfg != wf + wg
    assert wfg == wt_value(f * g, node)


def test_multiplicativity_requires_trials():
    with pytest.raises(ValueError):
        multiplicativity_test(CURATED[0].ring, trials=0)


SUPERADD_RINGS = [CURATED[0], CURATED[1], CURATED[3], CURATED[9]]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, len(SUPERADD_RINGS) - 1), st.integers(0, 10 ** 6))
def test_superadditivity(k, seed):
    ring = SUPERADD_RINGS[k].ring
    sampler = PolynomialSampler(ring.context, seed, max_degree=3)
    f, g = sampler.sample(), sampler.sample()
    wf, wg = wt_value(f, ring), wt_value(g, ring)
    assert wt_value(f * g, ring) >= wf + wg
    assert wt_value(f + g, ring) >= min(wf, wg)


def test_quotient_weight_well_defined_on_domain():
    ring = CURATED[0].ring
    rng = PolynomialSampler(ring.context, 11, max_degree=2)
    red = lambda p: p if p and not member(p, ring.ideal) else None  # noqa: E731
    checked = 0
    while checked < 40:
        f, g, h = rng.sample(), rng.sample(), rng.sample()
        if not (red(f) and red(g) and red(h)):
            continue
        assert wt_value(f * h, ring) - wt_value(g * h, ring) == wt_value(f, ring) - wt_value(g, ring)
        checked += 1


def test_quotient_weight_depends_on_representative_off_domain():
    node = ring_of("vars x,y; y^2 - x^2 - x^3", [(1, 1)])
    ctx = node.context
    f, g, h = poly(ctx, "y - x"), poly(ctx, "1"), poly(ctx, "y + x")
    # (y - x)/1 = ((y - x)(y + x))/(y + x), yet the differences disagree
    assert wt_value(f, node) - wt_value(g, node) == 1
    assert wt_value(f * h, node) - wt_value(g * h, node) == 2


def test_weight_system_validation():
    with pytest.raises(ValueError):
        WeightSystem(((0, 0),))
    with pytest.raises(ValueError):
        WeightSystem(((1, -1),))
    with pytest.raises(ValueError):
        CoWeight((0, 0))
    with pytest.raises(ValueError):
        PresentedRing(Ideal(XY, (Polynomial.constant(XY, 1),)))


def test_sampler_is_seeded_and_bounded():
    s1, s2 = PolynomialSampler(XY, 9), PolynomialSampler(XY, 9)
    assert [s1.sample() for _ in range(20)] == [s2.sample() for _ in range(20)]
    for p in [s1.sample() for _ in range(200)]:
        assert p and p.degree() <= 4 and len(p) <= 4
        assert all(c in (-3, -2, -1, 1, 2, 3) for c in p.terms.values())
