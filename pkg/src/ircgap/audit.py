"""Sweeps over the relay link and seeded randomized gap audits."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .cf import CfConfig, cf_joint_region, cf_region, hk_region
from .df import df_best_region, df_full_region, df_partial_region
from .gauss_core import LINKS, ChannelSnr, db_to_linear
from .geometry import gap_per_dim, hull_union, max_sum_rate
from .outer import outer_region_cor1

REFERENCE_DB = {"s11": 20.0, "s22": 20.0, "s12": 8.0, "s21": 8.0, "s13": 20.0, "s23": 20.0}
HIST_EDGES = np.round(np.arange(0.0, 3.0001, 0.1), 10)


@dataclass(frozen=True)
class SweepSpec:
    fixed_db: dict = field(default_factory=lambda: dict(REFERENCE_DB))
    lo_db: float = -15.0
    hi_db: float = 25.0
    step_db: float = 0.5
    cf_noise: float = 1.81
    sign_parity: bool = True

    def __post_init__(self):
        if not self.step_db > 0:
            raise ValueError("step must be > 0")
        if not self.lo_db < self.hi_db:
            raise ValueError("lo must be < hi")
        missing = set(LINKS) - {"s31"} - set(self.fixed_db)
        if missing:
            raise ValueError(f"missing fixed links: {sorted(missing)}")

    def grid(self) -> np.ndarray:
        n = int(math.floor((self.hi_db - self.lo_db) / self.step_db + 1e-9))
        return np.round(self.lo_db + self.step_db * np.arange(n + 1), 10)


SWEEP_COLUMNS = ("s31_db", "outer", "df", "cf", "hk", "gap_df", "gap_cf")


def sweep_row(spec: SweepSpec, s31_db: float) -> dict:
    ch = ChannelSnr.from_db(spec.sign_parity, s31=s31_db, **spec.fixed_db)
    outer = outer_region_cor1(ch)
    df = df_best_region(ch)
    cf = cf_region(ch, CfConfig(spec.cf_noise))
    hk = hk_region(ch)
    cf_hk = hull_union([cf, hk])
    return {
        "s31_db": float(s31_db),
        "outer": max_sum_rate(outer),
        "df": max_sum_rate(df),
        "cf": max(max_sum_rate(cf), max_sum_rate(hk)),
        "hk": max_sum_rate(hk),
        "gap_df": gap_per_dim(outer, df),
        "gap_cf": gap_per_dim(outer, cf_hk),
    }


def sweep(spec: SweepSpec) -> list:
    return [sweep_row(spec, x) for x in spec.grid()]


def sweep_csv(rows: list) -> str:
    lines = [",".join(SWEEP_COLUMNS)]
    for r in rows:
        lines.append(",".join(f"{r[c]:.6f}" for c in SWEEP_COLUMNS))
    return "\n".join(lines) + "\n"


class Regime(str, Enum):
    FULL_DF = "FullDf"
    PARTIAL_DF = "PartialDf"
    CF = "Cf"
    HK_NO_RELAY = "HkNoRelay"


def in_regime(regime: Regime, ch: ChannelSnr) -> bool:
    if regime is Regime.FULL_DF:
        return ch.s31 >= ch.s11
    if regime is Regime.PARTIAL_DF:
        return ch.s31 >= ch.s21
    if regime is Regime.CF:
        return ch.s31 <= ch.s21
    return ch.s31 <= ch.s11 / (1 + ch.s12) and ch.s31 <= ch.s21 / (1 + ch.s22)


def regime_inner(regime: Regime, ch: ChannelSnr, cfg: CfConfig):
    if regime is Regime.FULL_DF:
        return df_full_region(ch)
    if regime is Regime.PARTIAL_DF:
        return df_partial_region(ch)
    if regime is Regime.CF:
        return cf_region(ch, cfg)
    return hk_region(ch)


def regime_scheme(regime: Regime, ch: ChannelSnr, cfg: CfConfig):
    """The single scheme region of the regime, with its raw bounds.

    Used for the per-bound diagnostic; for Cf this is the variant where
    both destinations decode the compression index.
    """
    if regime is Regime.CF:
        return cf_joint_region(ch, cfg)
    return regime_inner(regime, ch, cfg)


@dataclass(frozen=True)
class AuditSpec:
    regime: Regime
    samples: int = 1000
    seed: int = 0
    snr_db_range: tuple = (-20.0, 40.0)
    cf_noise: float = 1.81
    max_draws_factor: int = 1000

    def __post_init__(self):
        object.__setattr__(self, "regime", Regime(self.regime))
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        lo, hi = self.snr_db_range
        if not lo < hi:
            raise ValueError("snr_db_range must have lo < hi")


class EmptyAuditError(RuntimeError):
    pass


def gap_audit(spec: AuditSpec) -> dict:
    """Largest gap over seeded channels drawn inside the regime.

    Link SNRs are uniform in dB. Draws outside the regime are rejected
    until ``samples`` channels are accepted (or the draw budget runs
    out). Each accepted channel is evaluated under both sign parities.
    """
    rng = np.random.default_rng(spec.seed)
    cfg = CfConfig(spec.cf_noise)
    lo, hi = spec.snr_db_range
    gaps, per_bound = [], []
    worst, arg = -1.0, None
    draws = 0
    budget = spec.samples * spec.max_draws_factor
    while len(gaps) < spec.samples and draws < budget:
        db = rng.uniform(lo, hi, size=len(LINKS))
        draws += 1
        base = ChannelSnr(*(db_to_linear(float(x)) for x in db))
        if not in_regime(spec.regime, base):
            continue
        g_ch, b_ch = 0.0, 0.0
        for parity in (True, False):
            ch = base.replace(sign_parity=parity)
            outer = outer_region_cor1(ch)
            inner = regime_inner(spec.regime, ch, cfg)
            g = gap_per_dim(outer, inner)
            scheme = regime_scheme(spec.regime, ch, cfg)
            b_ch = max(b_ch, gap_per_dim(outer, scheme, clip=False))
            if g > g_ch:
                g_ch = g
            if g > worst:
                worst, arg = g, (db, parity)
        gaps.append(g_ch)
        per_bound.append(b_ch)
    if not gaps:
        raise EmptyAuditError(
            f"no channel in regime {spec.regime.value} after {draws} draws")
    counts, _ = np.histogram(np.clip(gaps, 0, HIST_EDGES[-1]), bins=HIST_EDGES)
    db, parity = arg
    return {
        "regime": spec.regime.value,
        "seed": spec.seed,
        "samples": len(gaps),
        "draws": draws,
        "snr_db_range": list(spec.snr_db_range),
        "max_gap": float(max(gaps)),
        "max_gap_per_bound": float(max(per_bound)),
        "argmax": {
            **{k: round(float(v), 6) for k, v in zip(LINKS, db)},
            "sign_parity": "even" if parity else "odd",
        },
        "histogram": {
            "edges": [float(e) for e in HIST_EDGES],
            "counts": [int(c) for c in counts],
        },
    }
