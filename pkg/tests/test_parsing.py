from __future__ import annotations

import random
from fractions import Fraction

import pytest

from degenkit.parsing import (
    ParseError,
    format_ideal,
    parse_file,
    parse_ideal,
    parse_int_rows,
    parse_polynomial,
)
from degenkit.polyarith import Polynomial, VariableContext


def test_basic_examples():
    ctx, gens = parse_ideal("vars x,y; x^2 - y^3")
    assert ctx.names == ("x", "y")
    assert gens == [Polynomial(ctx, {(2, 0): 1, (0, 3): -1})]
    ctx, gens = parse_ideal("vars x,y,z,w; x*y - z*w")
    assert ctx.n == 4 and len(gens) == 1
    ctx, gens = parse_ideal("vars x; x + x")
    assert gens == [Polynomial(ctx, {(1,): 2})]


def test_rationals_parentheses_comments():
    text = """# a comment
    vars a, b
    1/2*a^2 - (a - b)^2   # trailing
    3/6
    """
    ctx, gens = parse_ideal(text)
    a, b = Polynomial.variable(ctx, "a"), Polynomial.variable(ctx, "b")
    assert gens[0] == a * a * Fraction(1, 2) - (a - b) ** 2
    assert gens[1] == Polynomial.constant(ctx, Fraction(1, 2))


def test_multiline_parentheses_continue_statement():
    ctx, gens = parse_ideal("vars x,y\n(x +\n y)^2")
    assert len(gens) == 1


def test_directives():
    f = parse_file("vars x,y; y^2 - x^2 - x^3; weights (1,1); (0,1); coweight (2,1);"
                   " chart z1=x, z2=y; vweights (1,1);")
    assert f.weights == [(1, 1), (0, 1)]
    assert f.coweight == (2, 1)
    assert f.chart.entries == [("z1", "x"), ("z2", "y")]
    assert f.chart.weights == (1, 1)


@pytest.mark.parametrize("text, line, col", [
    ("vars x,y; x^2 - z", 1, 17),
    ("vars x,y;\nx^0", 2, 3),
    ("vars x;\n\nx ** 2", 3, 4),
    ("vars x; x^", 1, 10),
    ("vars x; (x + 1", 1, 15),
    ("x^2", 1, 1),
    ("vars x; x $ 1", 1, 11),
])
def test_error_positions(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_ideal(text)
    assert (info.value.line, info.value.col) == (line, col)


def test_error_messages():
    with pytest.raises(ParseError, match="undeclared variable"):
        parse_ideal("vars x; y")
    with pytest.raises(ParseError, match="positive integer"):
        parse_ideal("vars x; x^0")
    with pytest.raises(ParseError, match="duplicate"):
        parse_ideal("vars x,x; x")


def test_int_rows():
    assert parse_int_rows("1,1;0,1") == [(1, 1), (0, 1)]
    assert parse_int_rows("(3,2)") == [(3, 2)]
    with pytest.raises(ValueError):
        parse_int_rows("1,a")


def _random_ideal_text(rng: random.Random) -> str:
    n = rng.randint(1, 4)
    names = rng.sample(["x", "y", "z", "w", "u", "v", "t1", "s_2"], n)
    gens = []
    for _ in range(rng.randint(1, 3)):
        terms = []
        for _ in range(rng.randint(1, 4)):
            num, den = rng.randint(-9, 9), rng.randint(1, 4)
            coeff = f"{num}/{den}" if den > 1 else str(num)
            mono = "*".join(f"{v}^{rng.randint(1, 3)}" if rng.random() < 0.4 else v
                            for v in rng.sample(names, rng.randint(0, n)))
            if mono:
                terms.append(f"({coeff})*{mono}" if rng.random() < 0.5 else f"{coeff}*({mono})")
            else:
                terms.append(f"({coeff})")
        gens.append(" + ".join(terms))
    return f"vars {', '.join(names)};\n" + ";\n".join(gens)


def test_round_trip_corpus():
    rng = random.Random(20261014)
    fixed = [
        "vars x,y; x^2 - y^3", "vars x,y,z,w; x*y - z*w", "vars x,y; y^2 - x^2 - x^3",
        "vars x; x + x", "vars a,b,c; a*b*c - 1/3; a^2 + b^2 + c^2", "vars x,y; 0",
        "vars x,y; (x - y)^5", "vars p,q; -p; -q^7 + 2/9*p*q",
    ]
    corpus = fixed + [_random_ideal_text(rng) for _ in range(60)]
    assert len(corpus) >= 50
    for text in corpus:
        ctx, gens = parse_ideal(text)
        printed = format_ideal(ctx, gens)
        ctx2, gens2 = parse_ideal(printed)
        assert ctx2 == ctx
        assert gens2 == gens
        assert format_ideal(ctx2, gens2) == printed


def test_format_ideal_with_weights_round_trips():
    ctx, gens = parse_ideal("vars x,y; x^2 - y^3")
    text = format_ideal(ctx, gens, [(3, 2)])
    f = parse_file(text)
    assert f.weights == [(3, 2)]
    assert f.generators == gens


def test_parse_polynomial_in_context():
    ctx = VariableContext(("x", "y"))
    assert parse_polynomial("x*y - 1", ctx) == Polynomial(ctx, {(1, 1): 1, (0, 0): -1})


def test_weight_rows_accumulate():
    a = parse_file("vars x,y,z;\nz\nweights (3,2,1);\nweights (0,0,1);\n")
    b = parse_file("vars x,y,z;\nz\nweights (3,2,1)\n(0,0,1)\n")
    assert a.weights == b.weights == [(3, 2, 1), (0, 0, 1)]
