import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ircgap.gauss_core import LINKS, ChannelSnr

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile("default")

db_value = st.floats(min_value=-20.0, max_value=40.0, allow_nan=False)


@st.composite
def channels(draw, lo=-20.0, hi=40.0):
    db = {k: draw(st.floats(min_value=lo, max_value=hi, allow_nan=False)) for k in LINKS}
    return ChannelSnr.from_db(draw(st.booleans()), **db)


def random_channels(n, seed, lo=-20.0, hi=40.0):
    """Seeded channels uniform in dB, alternating sign parity."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(n):
        db = dict(zip(LINKS, rng.uniform(lo, hi, len(LINKS))))
        out.append(ChannelSnr.from_db(i % 2 == 0, **db))
    return out


@pytest.fixture
def reference_db():
    return {"s11": 20.0, "s22": 20.0, "s12": 8.0, "s21": 8.0, "s13": 20.0, "s23": 20.0}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(lines):
        for line in lines[n]:
            terminalreporter.write_line(line)
