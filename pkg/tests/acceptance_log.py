"""Collects one outcome line per acceptance criterion for the run summary."""

from __future__ import annotations

from typing import Dict, Tuple

RESULTS: Dict[int, Tuple[str, bool, str]] = {}


def record(number: int, title: str, passed: bool, detail: str = "") -> str:
    RESULTS[number] = (title, passed, detail)
    return line(number)


def line(number: int) -> str:
    title, passed, detail = RESULTS[number]
    tail = f" ({detail})" if detail else ""
    return f"criterion {number:2d} {'PASS' if passed else 'FAIL'}: {title}{tail}"
