import sys
from pathlib import Path

import pytest

from operadgb.parser import parse_polynomial
from operadgb.tree import Generator

sys.path.insert(0, str(Path(__file__).parent))

M = Generator("m", 2)
ALPHA = Generator("alpha", 1)
BR = Generator("br", 2)
GENS = {"m": M, "alpha": ALPHA, "br": BR}

# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE: dict = {}


def tree(text, gens=None):
    """A single monomial written in functional notation."""
    p = parse_polynomial(text, gens or GENS)
    (t,) = p.terms
    return t


def poly(text, gens=None, mode="shuffle"):
    return parse_polynomial(text, gens or GENS, mode=mode)


@pytest.fixture
def record():
    def _record(n, ok, detail=""):
        ACCEPTANCE[n] = (ok, detail)
        line = f"ACCEPTANCE {n}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(line)
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
