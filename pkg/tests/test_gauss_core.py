import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ircgap.gauss_core import (
    ChannelSnr,
    GaussianSystem,
    build_system,
    cap,
    db_to_linear,
    linear_to_db,
    mutual_info,
    signed_gains,
)

from conftest import channels


def test_cap_values():
    assert cap(0) == 0
    assert cap(1) == pytest.approx(0.5)
    assert cap(3) == pytest.approx(1.0)


@pytest.mark.parametrize("bad", [-1e-3, float("nan")])
def test_cap_rejects_bad_input(bad):
    with pytest.raises(ValueError):
        cap(bad)


@given(st.floats(min_value=-60, max_value=60))
def test_db_round_trip(db):
    assert linear_to_db(db_to_linear(db)) == pytest.approx(db, abs=1e-9)


def test_zero_linear_is_minus_infinity_db():
    assert linear_to_db(0.0) == -math.inf
    assert db_to_linear(-math.inf) == 0.0


def test_channel_validation():
    with pytest.raises(ValueError):
        ChannelSnr(1, 1, 1, 1, 1, 1, -1)
    with pytest.raises(ValueError):
        ChannelSnr(1, 1, 1, 1, 1, 1, math.inf)


def test_delta_parity():
    ch = ChannelSnr(4, 1, 9, 1, 1, 16, 1)
    # even parity: (sqrt(4*16) - sqrt(9*1))^2 = (8 - 3)^2
    assert ch.delta == pytest.approx(25.0)
    assert ch.replace(sign_parity=False).delta == pytest.approx(121.0)


def test_signed_gains_keep_parity():
    ch = ChannelSnr(4, 1, 9, 1, 1, 16, 1)
    g = signed_gains(ch, negate=("s13", "s23"))
    assert g["s13"] < 0 and g["s23"] < 0
    with pytest.raises(ValueError):
        signed_gains(ch, negate=("s13",))


def test_outer_system_moments():
    ch = ChannelSnr(1, 1, 1, 1, 1, 1, 4)
    sys = build_system(ch, 1.0)
    iy3, ix1 = sys.index(["Y3"])[0], sys.index(["X1"])[0]
    assert sys.cov[iy3, iy3] == pytest.approx(5.0)
    assert sys.cov[ix1, iy3] == pytest.approx(2.0)


def test_rho_out_of_range():
    with pytest.raises(ValueError):
        build_system(ChannelSnr(1, 1, 1, 1, 1, 1, 1), 1.5)


def test_genie_copy_mi():
    ch = ChannelSnr(1, 5, 1, 1, 1, 1, 1)
    sys = build_system(ch, 0.0)
    assert mutual_info(sys, ["X2"], ["V2"]) == pytest.approx(cap(5))


def test_point_to_point_high_snr():
    ch = ChannelSnr(1, 1, 1, 1, 1, 1, 100)
    sys = build_system(ch, 0.0)
    assert mutual_info(sys, ["X1"], ["Y3"]) == pytest.approx(cap(100), abs=1e-12)


def test_self_information_is_infinite():
    sys = build_system(ChannelSnr(1, 1, 1, 1, 1, 1, 1), 0.0)
    assert mutual_info(sys, ["X1"], ["X1"]) == math.inf


def test_unknown_label():
    sys = build_system(ChannelSnr(1, 1, 1, 1, 1, 1, 1), 0.0)
    with pytest.raises(KeyError):
        mutual_info(sys, ["X9"], ["Y1"])


def test_gaussian_system_checks():
    with pytest.raises(ValueError):
        GaussianSystem(("a", "a"), np.eye(2))
    with pytest.raises(ValueError):
        GaussianSystem(("a", "b"), np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        GaussianSystem(("a", "b"), np.array([[1.0, 2.0], [2.0, 1.0]]))


def _random_system(seed):
    rng = np.random.default_rng(seed)
    f = rng.normal(size=(5, 7))
    return GaussianSystem(tuple("abcde"), f @ f.T, f)


@given(st.integers(0, 10_000))
def test_mi_symmetry_and_nonnegativity(seed):
    sys = _random_system(seed)
    ab = mutual_info(sys, ["a"], ["b", "c"], ["d"])
    ba = mutual_info(sys, ["b", "c"], ["a"], ["d"])
    assert ab >= -1e-12
    assert ab == pytest.approx(ba, abs=1e-10)


@given(st.integers(0, 10_000))
def test_mi_chain_rule(seed):
    sys = _random_system(seed)
    whole = mutual_info(sys, ["a", "b"], ["c"], ["e"])
    parts = mutual_info(sys, ["a"], ["c"], ["e"]) + mutual_info(sys, ["b"], ["c"], ["a", "e"])
    assert whole == pytest.approx(parts, abs=1e-10)


@given(st.integers(0, 10_000))
def test_mi_matches_covariance_formula(seed):
    # Oracle: I(A;B) = 1/2 log2 det(K_A) det(K_B) / det(K_AB) straight from cov.
    sys = _random_system(seed)
    k = sys.cov
    a, b = [0, 1], [2]
    ref = 0.5 * math.log2(np.linalg.det(k[np.ix_(a, a)]) * np.linalg.det(k[np.ix_(b, b)])
                          / np.linalg.det(k[np.ix_(a + b, a + b)]))
    assert mutual_info(sys, ["a", "b"], ["c"]) == pytest.approx(ref, abs=1e-9)


@given(channels())
def test_from_db_round_trip(ch):
    back = ChannelSnr.from_db(ch.sign_parity, **ch.to_db())
    for k, v in ch.to_db().items():
        assert getattr(back, k) == pytest.approx(getattr(ch, k), rel=1e-12)
