import math

import numpy as np
import pytest
from hypothesis import given, settings

from ircgap.df import (
    TERM_DEFS,
    df_best_region,
    df_full_region,
    df_full_rows,
    df_partial_region,
    df_partial_rows,
    df_terms,
    df_terms_logdet,
    g1,
    g2,
    g31,
    g32,
)
from ircgap.gauss_core import ChannelSnr, cap
from ircgap.geometry import contains, gap_per_dim, max_sum_rate, vertices
from ircgap.outer import outer_region_cor1

from conftest import channels, random_channels


@settings(max_examples=60)
@given(channels())
def test_closed_forms_match_logdet(ch):
    a, b = df_terms(ch), df_terms_logdet(ch)
    for k in TERM_DEFS:
        assert a[k] == pytest.approx(b[k], abs=1e-7), k


@given(channels())
def test_g_factors_between_half_and_one(ch):
    for g in (g1(ch), g2(ch), g31(ch), g32(ch)):
        assert 0.5 - 1e-12 <= g <= 1 + 1e-12


def test_g2_without_cross_link():
    assert g2(ChannelSnr(5, 0, 1, 1, 1, 1, 1)) == 1.0


def test_r2_bound_without_links_into_receiver2():
    ch = ChannelSnr(5.0, 2.0, 3.0, 0.0, 7.0, 0.0, 4.0)
    assert g1(ch) == 1.0
    rows = df_full_rows(df_terms(ch))
    assert rows[2] == ((0, 1), pytest.approx(cap(7.0) - 0.5, abs=1e-12))


def test_dead_relay_link_in_partial_df():
    ch = ChannelSnr(5.0, 2.0, 3.0, 1.5, 7.0, 2.0, 0.0)
    t = df_terms(ch)
    assert t["U1;Y3|X3"] == pytest.approx(0.0, abs=1e-15)
    assert df_partial_rows(t)[0][1] == pytest.approx(t["X1;Y1|V1U1V2X3"], abs=1e-15)


def test_g31_limit():
    assert g31(ChannelSnr(1, 1, 1, 1, 1, 1, 1e12)) == pytest.approx(0.5, abs=1e-9)


def test_row_counts():
    t = df_terms(ChannelSnr(1, 2, 3, 4, 5, 6, 7))
    assert len(df_full_rows(t)) == 10 and len(df_partial_rows(t)) == 14


@given(channels())
def test_rhs_finite(ch):
    t = df_terms(ch)
    assert all(math.isfinite(b) for _, b in df_full_rows(t) + df_partial_rows(t))


def test_containment_in_outer():
    for ch in random_channels(500, 11):
        outer = outer_region_cor1(ch)
        for inner in (df_full_region(ch), df_partial_region(ch)):
            assert all(contains(outer, v, tol=1e-9) for v in vertices(inner))


@settings(max_examples=40)
@given(channels())
def test_best_contains_full(ch):
    best, full = df_best_region(ch), df_full_region(ch)
    assert all(contains(best, v, tol=1e-9) for v in vertices(full))


def test_best_equals_full_at_strong_relay(reference_db):
    ch = ChannelSnr.from_db(True, s31=25.0, **reference_db)
    assert max_sum_rate(df_best_region(ch)) == pytest.approx(max_sum_rate(df_full_region(ch)), abs=1e-9)


def test_reference_full_df_sum_rate(reference_db):
    ch = ChannelSnr.from_db(True, s31=25.0, **reference_db)
    # Sum rate spans two real dimensions.
    deficit = max_sum_rate(outer_region_cor1(ch)) - max_sum_rate(df_full_region(ch))
    assert deficit / 2 <= 1.0 + 1e-6


def test_reference_partial_df_gap(reference_db):
    ch = ChannelSnr.from_db(True, s31=14.0, **reference_db)
    assert gap_per_dim(outer_region_cor1(ch), df_partial_region(ch)) <= 1.5 + 1e-6
