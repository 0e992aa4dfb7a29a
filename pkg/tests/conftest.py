from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# filled by tests/test_acceptance.py, printed once at the end of the run
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def rationals(lo=-6, hi=6, max_den=7):
    return st.builds(
        Fraction, st.integers(lo * max_den, hi * max_den), st.integers(1, max_den)
    )


def non_integers(lo=-6, hi=6, max_den=7):
    return rationals(lo, hi, max_den).filter(lambda q: q.denominator != 1)
