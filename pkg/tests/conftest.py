import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def deltas(draw, min_size=1, max_size=12, radius=0.9):
    n = draw(st.integers(min_size, max_size))
    r = draw(st.lists(st.floats(0.05, radius), min_size=n, max_size=n))
    a = draw(st.lists(st.floats(0, 2 * np.pi), min_size=n, max_size=n))
    return np.array(r) * np.exp(1j * np.array(a))


@st.composite
def orderings(draw, n):
    return tuple(draw(st.lists(st.integers(0, 1), min_size=n, max_size=n)))


unit = st.floats(0, 2 * np.pi).map(lambda t: complex(np.exp(1j * t)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_delta(rng, n, radius=0.95):
    return np.sqrt(rng.uniform(0, radius**2, n)) * np.exp(1j * rng.uniform(0, 2 * np.pi, n))


# acceptance bookkeeping: one summary line per criterion -----------------------

ACCEPTANCE: dict[int, list[tuple[str, bool, str]]] = {}


@pytest.fixture
def record():
    def _record(criterion: int, check: str, passed: bool, detail: str = ""):
        ACCEPTANCE.setdefault(criterion, []).append((check, bool(passed), detail))
        return passed

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for c in sorted(ACCEPTANCE):
        checks = ACCEPTANCE[c]
        failed = [f"{name} ({detail})" for name, ok, detail in checks if not ok]
        status = "PASS" if not failed else "FAIL"
        line = f"criterion {c}: {status}  {len(checks) - len(failed)}/{len(checks)} checks"
        if failed:
            line += "  failing: " + "; ".join(failed)
        tr.write_line(line)
