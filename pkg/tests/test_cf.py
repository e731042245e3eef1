import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ircgap.cf import (
    KEYS,
    CfConfig,
    cf_gap_objective,
    cf_joint_region,
    cf_joint_rows,
    cf_region,
    cf_terms,
    cf_terms_logdet,
    hk_region,
    hk_terms,
    private_splits,
)
from ircgap.gauss_core import ChannelSnr, cap
from ircgap.geometry import contains, gap_per_dim, max_sum_rate, vertices
from ircgap.outer import outer_region_cor1

from conftest import channels, random_channels

noise = st.floats(min_value=0.05, max_value=50.0)


@settings(max_examples=60)
@given(channels(), noise)
def test_closed_forms_match_logdet(ch, n):
    a, b = cf_terms(ch, CfConfig(n)), cf_terms_logdet(ch, CfConfig(n))
    for k in KEYS:
        assert a.I[k] == pytest.approx(b.I[k], abs=1e-7), k
        assert a.Ip[k] == pytest.approx(b.Ip[k], abs=1e-7), k


@given(channels(), noise)
def test_ordering_chain(ch, n):
    t = cf_terms(ch, CfConfig(n))
    for I in (t.I, t.Ip):
        for k in "12":
            assert I[k + "1"] <= I[k + "2"] + 1e-9
            assert I[k + "2"] <= I[k + "4"] + 1e-9
            assert I[k + "1"] <= I[k + "3"] + 1e-9
            assert I[k + "3"] <= I[k + "4"] + 1e-9


def test_power_split_formula():
    ch = ChannelSnr(10, 3, 1, 4, 10, 1, 6)
    a1, a2 = private_splits(ch, 2.0)
    assert a1 * (1 + 4 + 6 / 3) == pytest.approx(1.0)
    assert a2 * (1 + 3) == pytest.approx(1.0)


def test_dead_relay_large_noise_limit():
    ch = ChannelSnr(10, 3, 5, 4, 10, 2, 0.0)
    t = cf_terms(ch, CfConfig(1e6))
    for k in KEYS:
        assert abs(t.I[k] - t.Ip[k]) <= 1e-4


def test_no_common_messages():
    ch = ChannelSnr(10, 0.0, 5, 0.0, 10, 2, 0.0)
    t = cf_terms(ch, CfConfig(1.81))
    for k in "12":
        assert t.I[k + "1"] == pytest.approx(t.I[k + "2"], abs=1e-12)
        assert t.I[k + "3"] == pytest.approx(t.I[k + "4"], abs=1e-12)


def test_relay_free_terms_give_hk():
    ch = ChannelSnr(10, 3, 5, 4, 10, 2, 0.0)
    # s31 = 0 makes the CF splits equal the relay-free ones.
    from_ip = cf_joint_rows(cf_terms(ch, CfConfig(1.81)).Ip)
    ref = cf_joint_rows(hk_terms(ch))
    assert [b for _, b in from_ip] == pytest.approx([b for _, b in ref], abs=1e-12)


def test_hk_without_cross_links():
    ch = ChannelSnr(10, 0.0, 5, 0.0, 30, 2, 4)
    r = hk_region(ch)
    assert max_sum_rate(r) == pytest.approx(cap(10) + cap(30), abs=1e-12)
    v = vertices(r)
    assert v[:, 0].max() == pytest.approx(cap(10)) and v[:, 1].max() == pytest.approx(cap(30))


def _excess(outer, inner):
    """Largest violation of outer's planes by inner's vertices."""
    return max(a1 * v[0] + a2 * v[1] - b
               for (a1, a2), b in outer.bounds.items() for v in vertices(inner))


def test_hk_inside_cf_at_large_noise():
    # Same link range as the term-level limit check; the residual is O(s31/N).
    for ch in random_channels(100, 5, lo=-20.0, hi=20.0):
        assert _excess(cf_region(ch, CfConfig(1e6)), hk_region(ch)) <= 1e-4


def test_hk_inside_cf_residual_shrinks_with_noise():
    for ch in random_channels(50, 5):
        hk = hk_region(ch)
        e6, e9 = (max(0.0, _excess(cf_region(ch, CfConfig(n)), hk)) for n in (1e6, 1e9))
        assert e9 <= 1e-5 and e9 <= e6 + 1e-12


def test_weak_relay_matches_hk(reference_db):
    ch = ChannelSnr.from_db(True, s31=-15.0, **reference_db)
    cf = max(max_sum_rate(cf_region(ch)), max_sum_rate(hk_region(ch)))
    assert cf == pytest.approx(max_sum_rate(hk_region(ch)), abs=1e-3)


def test_reference_cf_gap(reference_db):
    ch = ChannelSnr.from_db(True, s31=0.0, **reference_db)
    assert gap_per_dim(outer_region_cor1(ch), cf_region(ch)) <= 1.32 + 1e-2


def test_containment_in_outer():
    for ch in random_channels(500, 12):
        outer = outer_region_cor1(ch)
        for inner in (cf_region(ch), hk_region(ch), cf_joint_region(ch)):
            assert all(contains(outer, v, tol=1e-9) for v in vertices(inner))


def test_objective_value():
    assert cf_gap_objective(1.81) == pytest.approx(1.3177, abs=1e-4)


def test_objective_minimum():
    grid = np.round(np.arange(0.5, 5.0 + 1e-9, 1e-3), 6)
    vals = np.array([cf_gap_objective(n) for n in grid])
    assert 1.70 <= grid[vals.argmin()] <= 1.95
    assert 1.31 <= vals.min() <= 1.33


def test_objective_diverges_at_zero():
    assert cf_gap_objective(1e-12) > 10


@pytest.mark.parametrize("n", [0.0, -1.0])
def test_objective_domain(n):
    with pytest.raises(ValueError):
        cf_gap_objective(n)


@pytest.mark.parametrize("n", [0.0, -2.0, math.inf, math.nan])
def test_config_validation(n):
    with pytest.raises(ValueError):
        CfConfig(n)
