"""Compress-and-forward and Han-Kobayashi inner bounds.

Inputs are split as X_k = sqrt(a_k) V_k + sqrt(1 - a_k) X_k' with the
private power fixed so that it arrives at the unintended receiver at the
noise level. The relay quantizes Y3 with Gaussian noise of variance N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .gauss_core import ChannelSnr, GaussianSystem, cap, mutual_info
from .geometry import HalfPlane, RateRegion, hull_union

R1, R2, SUM, TWO_R1, TWO_R2 = (1, 0), (0, 1), (1, 1), (2, 1), (1, 2)
KEYS = ("11", "12", "13", "14", "21", "22", "23", "24")


@dataclass(frozen=True)
class CfConfig:
    n_compress: float = 1.81

    def __post_init__(self):
        if not (self.n_compress > 0) or math.isinf(self.n_compress):
            raise ValueError(f"n_compress must be finite and > 0, got {self.n_compress}")


@dataclass(frozen=True)
class CfTerms:
    """I[k+i] with the compression index, Ip[k+i] without it."""

    I: dict
    Ip: dict
    abar1: float
    abar2: float


def private_splits(ch: ChannelSnr, n: float) -> tuple:
    """(abar1, abar2); n = inf gives the relay-free split."""
    extra = 0.0 if math.isinf(n) else ch.s31 / (1 + n)
    return 1.0 / (1 + ch.s21 + extra), 1.0 / (1 + ch.s12)


def _half_log2(x: float) -> float:
    return max(0.0, 0.5 * math.log2(x))


def _relay_free(ch: ChannelSnr, a1: float, a2: float, relay_noise: bool = False) -> dict:
    """Terms of a destination that does not use the relay.

    With ``relay_noise`` the relay codeword is present and treated as
    noise, otherwise the relay is silent.
    """
    s11, s12, s21, s22 = ch.s11, ch.s12, ch.s21, ch.s22
    n1 = ch.s13 if relay_noise else 0.0
    n2 = ch.s23 if relay_noise else 0.0
    d1 = 1 + a2 * s12 + n1
    d2 = 1 + a1 * s21 + n2
    return {
        "11": _half_log2((d1 + a1 * s11) / d1),
        "12": _half_log2((d1 + s11) / d1),
        "13": _half_log2((1 + a1 * s11 + s12 + n1) / d1),
        "14": _half_log2((1 + s11 + s12 + n1) / d1),
        "21": _half_log2((d2 + a2 * s22) / d2),
        "22": _half_log2((d2 + s22) / d2),
        "23": _half_log2((1 + a2 * s22 + s21 + n2) / d2),
        "24": _half_log2((1 + s22 + s21 + n2) / d2),
    }


def _with_relay(ch: ChannelSnr, a1: float, a2: float, n: float) -> dict:
    s11, s12, s13 = ch.s11, ch.s12, ch.s13
    s21, s22, s23, s31 = ch.s21, ch.s22, ch.s23, ch.s31
    d1 = (1 + n) * (1 + a2 * s12)
    d2 = (1 + n) * (1 + a1 * s21) + a1 * s31

    def t1(p11, p12, p31):
        # p11, p12, p31: SNRs of the undecoded parts at Y1 and at the relay.
        via_relay = ((1 + n) * (1 + p11 + p12) + p31 * (1 + p12)) / d1
        direct = n * (1 + p11 + p12 + s13) / d1
        return min(_half_log2(via_relay), _half_log2(direct))

    def t2(p21, p22, p31):
        via_relay = ((1 + n) * (1 + p21 + p22) + p31 * (1 + p22)) / d2
        direct = n * (1 + p21 + p22 + s23) / d2
        return min(_half_log2(via_relay), _half_log2(direct))

    return {
        "11": t1(a1 * s11, a2 * s12, a1 * s31),
        "12": t1(s11, a2 * s12, s31),
        "13": t1(a1 * s11, s12, a1 * s31),
        "14": t1(s11, s12, s31),
        "21": t2(a1 * s21, a2 * s22, a1 * s31),
        "22": t2(a1 * s21, s22, a1 * s31),
        "23": t2(s21, a2 * s22, s31),
        "24": t2(s21, s22, s31),
    }


def cf_terms(ch: ChannelSnr, cfg: CfConfig = CfConfig(), relay_noise: bool = False) -> CfTerms:
    """Closed-form rate terms of the CF scheme, clipped at 0.

    ``Ip`` holds the relay-free counterparts with the same splits. With
    ``relay_noise`` they are evaluated with the relay codeword as noise,
    as seen by a destination that ignores the compression index.
    """
    a1, a2 = private_splits(ch, cfg.n_compress)
    return CfTerms(_with_relay(ch, a1, a2, cfg.n_compress),
                   _relay_free(ch, a1, a2, relay_noise), a1, a2)


def build_cf_system(ch: ChannelSnr, cfg: CfConfig = CfConfig()) -> GaussianSystem:
    """Inputs, common parts, outputs and the quantized relay output Yq."""
    a1, a2 = private_splits(ch, cfg.n_compress)
    g = {k: math.sqrt(getattr(ch, k)) for k in ("s11", "s12", "s13", "s21", "s22", "s23", "s31")}
    x1 = {"V1s": math.sqrt(1 - a1), "P1": math.sqrt(a1)}
    x2 = {"V2s": math.sqrt(1 - a2), "P2": math.sqrt(a2)}

    def scaled(d, c):
        return {k: c * v for k, v in d.items()}

    def add(*ds):
        out = {}
        for d in ds:
            for k, v in d.items():
                out[k] = out.get(k, 0.0) + v
        return out

    y3 = add(scaled(x1, g["s31"]), {"Z3": 1.0})
    return GaussianSystem.from_linear({
        "X1": x1,
        "X2": x2,
        "V1": {"V1s": 1.0},
        "V2": {"V2s": 1.0},
        "X3": {"W3": 1.0},
        "Y1": add(scaled(x1, g["s11"]), scaled(x2, g["s12"]), {"W3": g["s13"], "Z1": 1.0}),
        "Y2": add(scaled(x1, g["s21"]), scaled(x2, g["s22"]), {"W3": g["s23"], "Z2": 1.0}),
        "Y3": y3,
        "Yq": add(y3, {"Zq": math.sqrt(cfg.n_compress)}),
    })


def cf_terms_logdet(ch: ChannelSnr, cfg: CfConfig = CfConfig()) -> CfTerms:
    """The same terms evaluated with log-determinants."""
    sys = build_cf_system(ch, cfg)
    a1, a2 = private_splits(ch, cfg.n_compress)

    def I(a, b, c=()):
        return mutual_info(sys, a, b, c)

    out, free = {}, {}
    for k, j in (("1", "2"), ("2", "1")):
        xk, yk, vk, vj = "X" + k, "Y" + k, "V" + k, "V" + j
        loss = I("Yq", "Y3", [xk, vj, "X3", yk])
        conds = {
            "1": ([xk], [vk, vj]),
            "2": ([xk], [vj]),
            "3": ([xk, vj], [vk]),
            "4": ([xk, vj], []),
        }
        for i, (a, c) in conds.items():
            via_relay = I(a, [yk, "Yq"], c + ["X3"])
            direct = I(a + ["X3"], yk, c) - loss
            out[k + i] = max(0.0, min(via_relay, direct))
            free[k + i] = I(a, yk, c + ["X3"])
    return CfTerms(out, free, a1, a2)


def _clip(rows, label) -> RateRegion:
    return RateRegion([HalfPlane(d[0], d[1], max(0.0, b)) for d, b in rows], label)


def cf_joint_rows(I: dict) -> list:
    """Both destinations use the compression index."""
    rows = []
    for k, j, dk in (("1", "2", R1), ("2", "1", R2)):
        two = TWO_R1 if k == "1" else TWO_R2
        rows += [
            (dk, I[k + "2"]),
            (SUM, I[k + "1"] + I[j + "4"]),
            (SUM, I[k + "3"] + I[j + "3"]),
            (two, I[k + "1"] + I[k + "4"] + I[j + "3"]),
        ]
    return rows


def cf_single_rows(I: dict, Ip: dict, k: str) -> list:
    """Only destination k uses the compression index."""
    j = "2" if k == "1" else "1"
    dk, dj = (R1, R2) if k == "1" else (R2, R1)
    two_k, two_j = (TWO_R1, TWO_R2) if k == "1" else (TWO_R2, TWO_R1)
    return [
        (dk, I[k + "2"]),
        (dj, Ip[j + "2"]),
        (SUM, I[k + "1"] + Ip[j + "4"]),
        (SUM, I[k + "4"] + Ip[j + "1"]),
        (SUM, I[k + "3"] + Ip[j + "3"]),
        (two_k, I[k + "1"] + I[k + "4"] + Ip[j + "3"]),
        (two_j, I[k + "3"] + Ip[j + "1"] + Ip[j + "4"]),
    ]


def cf_joint_region(ch: ChannelSnr, cfg: CfConfig = CfConfig()) -> RateRegion:
    """Both destinations decode the compression index."""
    return _clip(cf_joint_rows(cf_terms(ch, cfg).I), "cf0")


def cf_region(ch: ChannelSnr, cfg: CfConfig = CfConfig()) -> RateRegion:
    """Hull of the three decoding options of the CF scheme."""
    t = cf_terms(ch, cfg)
    noisy = cf_terms(ch, cfg, relay_noise=True).Ip
    parts = [
        _clip(cf_joint_rows(t.I), "cf0"),
        _clip(cf_single_rows(t.I, noisy, "1"), "cf1"),
        _clip(cf_single_rows(t.I, noisy, "2"), "cf2"),
    ]
    return hull_union(parts, "cf")


def hk_terms(ch: ChannelSnr) -> dict:
    a1, a2 = private_splits(ch, math.inf)
    return _relay_free(ch, a1, a2)


def hk_region(ch: ChannelSnr) -> RateRegion:
    """Han-Kobayashi region with the relay switched off."""
    return _clip(cf_joint_rows(hk_terms(ch)), "hk")


def cf_gap_objective(n: float) -> float:
    """Worst-case CF gap bound as a function of the quantization noise."""
    if not n > 0:
        raise ValueError(f"n must be > 0, got {n}")
    lhs = cap(n) + cap((1 + 2 * n) / (2 + n))
    return (1 + cap(1 / n) + max(lhs, 1 + cap(1 / n))) / 2
