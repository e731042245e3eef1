"""Decode-and-forward inner bounds for the Gaussian channel.

Auxiliaries follow the standard Gaussian choice for this scheme with
independent inputs:

    V1 = h21 X1 + h23 X3 + Z2'      (interference seen at receiver 2)
    V2 = h12 X2 + Z1'               (interference seen at receiver 1)
    V3 = h23 / sqrt(1 + s21) X3 + Z2''
    U1 = h31 X1 + Z3'               (layer decoded by the relay, partial DF)

and the binning cost replaced by its upper bound of half a bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .gauss_core import ChannelSnr, GaussianSystem, cap, mutual_info, signed_gains
from .geometry import HalfPlane, RateRegion, hull_union

R1, R2, SUM, TWO_R1, TWO_R2 = (1, 0), (0, 1), (1, 1), (2, 1), (1, 2)
BINNING = 0.5


def _log2(x: float) -> float:
    return math.log2(x)


def g1(ch: ChannelSnr) -> float:
    s21, s23 = ch.s21, ch.s23
    num = 1 + 2 * s21 + 2 * s23 + s21 ** 2 + 2 * s21 * s23
    den = 1 + 3 * s21 + 3 * s23 + 2 * s21 ** 2 + 4 * s21 * s23
    return num / den


def g2(ch: ChannelSnr) -> float:
    return (1 + ch.s12) / (1 + 2 * ch.s12)


def g31(ch: ChannelSnr) -> float:
    return (1 + ch.s31) / (1 + 2 * ch.s31)


def g32(ch: ChannelSnr) -> float:
    return (1 + ch.s21 + ch.s31) / (1 + ch.s21 + 2 * ch.s31)


@dataclass(frozen=True)
class DfTerms:
    """Information terms of the DF regions, in bits.

    Keys name the term I(A;B|C) as "A;B|C".
    """

    values: dict

    def __getitem__(self, k):
        return self.values[k]


# Term keys shared by the closed forms and the log-det evaluation.
TERM_DEFS = {
    "X1;Y3|X3": (["X1"], ["Y3"], ["X3"]),
    "X1;Y3|V1X3": (["X1"], ["Y3"], ["V1", "X3"]),
    "X1X3;Y1|V2": (["X1", "X3"], ["Y1"], ["V2"]),
    "X2;Y2|V1V3": (["X2"], ["Y2"], ["V1", "V3"]),
    "V1X2V3;Y2": (["V1", "X2", "V3"], ["Y2"], []),
    "X1X3;Y1|V1V2V3": (["X1", "X3"], ["Y1"], ["V1", "V2", "V3"]),
    "X1V2X3;Y1|V1V3": (["X1", "V2", "X3"], ["Y1"], ["V1", "V3"]),
    "V1X2V3;Y2|V2": (["V1", "X2", "V3"], ["Y2"], ["V2"]),
    "X1V2X3;Y1": (["X1", "V2", "X3"], ["Y1"], []),
    "X2;Y2|V1V2V3": (["X2"], ["Y2"], ["V1", "V2", "V3"]),
    "V1V3;Y2|X2": (["V1", "V3"], ["Y2"], ["X2"]),
    "X3;V1|V3": (["X3"], ["V1"], ["V3"]),
    "U1;Y3|X3": (["U1"], ["Y3"], ["X3"]),
    "U1;Y3|V1X3": (["U1"], ["Y3"], ["V1", "X3"]),
    "V1U1;Y3|X3": (["V1", "U1"], ["Y3"], ["X3"]),
    "X1;Y1|V1U1V2X3": (["X1"], ["Y1"], ["V1", "U1", "V2", "X3"]),
    "X1V2;Y1|V1U1X3": (["X1", "V2"], ["Y1"], ["V1", "U1", "X3"]),
}


def df_terms(ch: ChannelSnr) -> DfTerms:
    """Closed forms of every term used by the two DF regions."""
    s11, s12, s13 = ch.s11, ch.s12, ch.s13
    s21, s22, s23, s31 = ch.s21, ch.s22, ch.s23, ch.s31
    G1, G2 = g1(ch), g2(ch)
    # Quadratic form of receiver 1's gains against the posterior of
    # (X1, X3) given V1 and V3, scaled by det of that posterior precision.
    k = s11 + s13 + ch.delta + s11 * s23 / (1 + s21)
    kd = k / (1 + s21 + 2 * s23)
    u_den = 1 + s21 + s31
    v = {
        "X1;Y3|X3": cap(s31),
        "X1;Y3|V1X3": cap(s31 / (1 + s21)),
        "X1X3;Y1|V2": cap(G2 * (s11 + s13)),
        "X2;Y2|V1V3": cap(G1 * s22),
        "V1X2V3;Y2": cap(s21 + s22 + s23) + 0.5 * _log2(G1),
        "X1X3;Y1|V1V2V3": cap(G2 * kd),
        "X1V2X3;Y1|V1V3": cap(s12 + kd) + 0.5 * _log2(G2),
        "V1X2V3;Y2|V2": cap(s21 + s23 + s22 / (1 + s12)) + 0.5 * _log2(G1),
        "X1V2X3;Y1": cap(s11 + s12 + s13) + 0.5 * _log2(G2),
        "X2;Y2|V1V2V3": cap(G1 * s22 / (1 + s12)),
        "V1V3;Y2|X2": cap(s21 + s23) - cap((s21 + s23 + s21 * s23 / (1 + s21)) / (1 + s21 + 2 * s23)),
        "X3;V1|V3": cap(s23 / (1 + s21 + s23)),
        "U1;Y3|X3": cap(s31) + 0.5 * _log2(g31(ch)),
        "U1;Y3|V1X3": cap(s31 / (1 + s21)) + 0.5 * _log2(g32(ch)),
        "V1U1;Y3|X3": cap(s31) - cap(s31 / u_den),
        "X1;Y1|V1U1V2X3": cap(G2 * s11 / u_den),
        "X1V2;Y1|V1U1X3": cap(s12 + s11 / u_den) + 0.5 * _log2(G2),
    }
    return DfTerms(v)


def build_df_system(ch: ChannelSnr) -> GaussianSystem:
    """Jointly Gaussian inputs, outputs and auxiliaries of the DF scheme."""
    g = signed_gains(ch)
    v3_gain = g["s23"] / math.sqrt(1 + ch.s21)
    return GaussianSystem.from_linear({
        "X1": {"W1": 1.0},
        "X2": {"W2": 1.0},
        "X3": {"W3": 1.0},
        "Y1": {"W1": g["s11"], "W2": g["s12"], "W3": g["s13"], "Z1": 1.0},
        "Y2": {"W1": g["s21"], "W2": g["s22"], "W3": g["s23"], "Z2": 1.0},
        "Y3": {"W1": g["s31"], "Z3": 1.0},
        "V1": {"W1": g["s21"], "W3": g["s23"], "Z2g": 1.0},
        "V2": {"W2": g["s12"], "Z1g": 1.0},
        "V3": {"W3": v3_gain, "Z2h": 1.0},
        "U1": {"W1": g["s31"], "Z3g": 1.0},
    })


def df_terms_logdet(ch: ChannelSnr) -> DfTerms:
    """Same terms as ``df_terms`` evaluated through log-determinants."""
    sys = build_df_system(ch)
    return DfTerms({k: mutual_info(sys, *abc) for k, abc in TERM_DEFS.items()})


def _clip_region(rows, label) -> RateRegion:
    return RateRegion([HalfPlane(d[0], d[1], max(0.0, b)) for d, b in rows], label)


def df_full_rows(t: DfTerms, ib: float = BINNING) -> list:
    """The ten bounds of the full DF region as (direction, rhs)."""
    A, AV = t["X1;Y3|X3"], t["X1;Y3|V1X3"]
    B, C2 = t["X1X3;Y1|V2"], t["X2;Y2|V1V3"]
    D, E = t["V1X2V3;Y2"], t["X1X3;Y1|V1V2V3"]
    F, Gt = t["X1V2X3;Y1|V1V3"], t["V1X2V3;Y2|V2"]
    H, J = t["X1V2X3;Y1"], t["X2;Y2|V1V2V3"]
    return [
        (R1, A),
        (R1, B),
        (R2, C2 - ib),
        (SUM, E + D),
        (SUM, AV + D - ib),
        (SUM, F + Gt),
        (SUM, H + J - ib),
        (TWO_R1, E + H + Gt),
        (TWO_R1, AV + H + Gt - ib),
        (TWO_R2, F + J + D),
    ]


def df_partial_rows(t: DfTerms, ib: float = BINNING) -> list:
    """The fourteen bounds of the partial DF region as (direction, rhs)."""
    B, C2 = t["X1X3;Y1|V2"], t["X2;Y2|V1V3"]
    D, E = t["V1X2V3;Y2"], t["X1X3;Y1|V1V2V3"]
    F, Gt = t["X1V2X3;Y1|V1V3"], t["V1X2V3;Y2|V2"]
    H, J = t["X1V2X3;Y1"], t["X2;Y2|V1V2V3"]
    P1, P2 = t["U1;Y3|X3"], t["U1;Y3|V1X3"]
    P3, P4 = t["X1;Y1|V1U1V2X3"], t["X1V2;Y1|V1U1X3"]
    return [
        (R1, P1 + P3),
        (R1, B),
        (R2, C2 - ib),
        (SUM, E + D),
        (SUM, P2 + P3 + D - ib),
        (SUM, F + Gt),
        (SUM, P2 + P4 + Gt - ib),
        (SUM, H + J - ib),
        (SUM, P1 + P4 + J),
        (TWO_R1, E + H + Gt),
        (TWO_R1, E + P4 + P1 + Gt),
        (TWO_R1, P2 + P3 - ib + H + Gt),
        (TWO_R2, F + J + D),
        (TWO_R2, P2 + P4 - ib + J + D),
    ]


def df_full_region(ch: ChannelSnr) -> RateRegion:
    return _clip_region(df_full_rows(df_terms(ch)), "df-full")


def df_partial_region(ch: ChannelSnr) -> RateRegion:
    return _clip_region(df_partial_rows(df_terms(ch)), "df-partial")


def df_best_region(ch: ChannelSnr) -> RateRegion:
    return hull_union([df_full_region(ch), df_partial_region(ch)], "df")
