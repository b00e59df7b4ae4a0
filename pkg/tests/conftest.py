from fractions import Fraction

from hypothesis import strategies as st

from quadcurves.algebra import BiPoly, UniPoly

small_fraction = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 6))

bipolys = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), small_fraction, max_size=6
).map(BiPoly)

unipolys = st.lists(small_fraction, max_size=5).map(UniPoly)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[key])
