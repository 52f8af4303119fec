from fractions import Fraction

from hypothesis import strategies as st

from surfmld.algebra import Poly, WeightVector
from surfmld.parse import parse_rideal

EXAMPLE2 = "(x^2 + y^3, x*y^2)^(2/3)"


def example2():
    return parse_rideal(EXAMPLE2)


small_rats = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
nonzero_rats = small_rats.filter(bool)


@st.composite
def polys(draw, max_deg=4, max_terms=5, allow_const=True):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        a = draw(st.integers(0, max_deg))
        b = draw(st.integers(0, max_deg))
        if not allow_const and a == b == 0:
            continue
        terms[(a, b)] = draw(nonzero_rats)
    return Poly(terms)


@st.composite
def weights(draw, top=7):
    w1 = draw(st.integers(1, top))
    w2 = draw(st.integers(1, top))
    return WeightVector(w1, w2)


@st.composite
def reduced_weights(draw, top=7):
    w = draw(weights(top))
    return WeightVector(w.w1p, w.w2p)


# criterion number -> (passed, detail), filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'pass' if ok else 'fail'} ({detail})")
