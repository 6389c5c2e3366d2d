from __future__ import annotations

import pytest

from degenkit.filtration import PresentedRing, WeightSystem
from degenkit.groebner import Ideal
from degenkit.parsing import parse_file, parse_polynomial


def load(text: str):
    """Parse an ideal file into ``(context, Ideal)``."""
    f = parse_file(text)
    return f.context, Ideal(f.context, tuple(f.generators))


def ring_of(text: str, rows=None) -> PresentedRing:
    f = parse_file(text)
    rows = rows if rows is not None else f.weights
    W = WeightSystem(tuple(map(tuple, rows))) if rows else None
    return PresentedRing(Ideal(f.context, tuple(f.generators)), W)


def poly(ctx, text):
    return parse_polynomial(text, ctx)


@pytest.fixture
def xy():
    ctx, _ = load("vars x,y;")
    return ctx


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS, line

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(line(number))
