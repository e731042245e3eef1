"""Gaussian primitives for the interference relay channel.

Channel SNRs, the capacity function, jointly Gaussian systems and
conditional mutual information computed from log-determinants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import Iterable, Mapping, Sequence

import numpy as np

LINKS = ("s11", "s12", "s13", "s21", "s22", "s23", "s31")

# Entries of the 2x2 gain matrix whose sign parity decides delta.
H_LINKS = ("s11", "s13", "s21", "s23")

EIG_CUTOFF = 1e-10


def cap(x: float) -> float:
    """Gaussian capacity 0.5*log2(1+x) in bits."""
    if x < 0 or math.isnan(x):
        raise ValueError(f"cap() needs a nonnegative SNR, got {x}")
    return 0.5 * math.log2(1.0 + x)


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def linear_to_db(lin: float) -> float:
    if lin <= 0:
        return -math.inf
    return 10.0 * math.log10(lin)


@dataclass(frozen=True)
class ChannelSnr:
    """Linear SNRs of the seven links plus the sign parity of H.

    ``sign_parity`` is True when H = [[h11, h13], [h21, h23]] has an even
    number of negative entries, which selects the minus sign in delta.
    """

    s11: float
    s12: float
    s13: float
    s21: float
    s22: float
    s23: float
    s31: float
    sign_parity: bool = True

    def __post_init__(self):
        for name in LINKS:
            v = getattr(self, name)
            if not isinstance(v, (int, float, np.floating, np.integer)):
                raise TypeError(f"{name} must be a real number")
            if not math.isfinite(v) or v < 0:
                raise ValueError(f"{name} must be finite and >= 0, got {v}")
            object.__setattr__(self, name, float(v))
        object.__setattr__(self, "sign_parity", bool(self.sign_parity))

    @classmethod
    def from_db(cls, sign_parity: bool = True, **db: float) -> "ChannelSnr":
        missing = set(LINKS) - set(db)
        if missing:
            raise ValueError(f"missing links: {sorted(missing)}")
        return cls(**{k: db_to_linear(db[k]) for k in LINKS}, sign_parity=sign_parity)

    def to_db(self) -> dict:
        return {k: linear_to_db(getattr(self, k)) for k in LINKS}

    def replace(self, **changes) -> "ChannelSnr":
        kw = {f.name: getattr(self, f.name) for f in fields(self)}
        kw.update(changes)
        return ChannelSnr(**kw)

    @property
    def delta(self) -> float:
        """det(H H^T) for unit-power independent inputs."""
        a = math.sqrt(self.s11 * self.s23)
        b = math.sqrt(self.s13 * self.s21)
        return (a - b) ** 2 if self.sign_parity else (a + b) ** 2


def signed_gains(ch: ChannelSnr, negate: Iterable[str] = ()) -> dict:
    """Amplitude gains sqrt(snr) with a sign pattern matching the parity.

    Even parity uses all-positive gains, odd parity negates h21. Extra
    links listed in ``negate`` are flipped on top of that, which must not
    change the parity of H.
    """
    negate = set(negate)
    unknown = negate - set(LINKS)
    if unknown:
        raise ValueError(f"unknown links: {sorted(unknown)}")
    if sum(1 for k in negate if k in H_LINKS) % 2:
        raise ValueError("negating these links would change the parity of H")
    g = {k: math.sqrt(getattr(ch, k)) for k in LINKS}
    if not ch.sign_parity:
        g["s21"] = -g["s21"]
    for k in negate:
        g[k] = -g[k]
    return g


@dataclass(frozen=True)
class GaussianSystem:
    """Zero-mean jointly Gaussian variables.

    ``factor`` (optional) writes each variable as a linear combination of
    independent unit Gaussians, so that cov = factor @ factor.T. Keeping it
    avoids the cancellation of Schur complements at high SNR.
    """

    labels: tuple
    cov: np.ndarray
    factor: np.ndarray = None

    def __post_init__(self):
        labels = tuple(self.labels)
        cov = np.asarray(self.cov, dtype=float)
        if len(set(labels)) != len(labels):
            raise ValueError("labels must be unique")
        if cov.shape != (len(labels), len(labels)):
            raise ValueError("covariance shape does not match labels")
        if not np.allclose(cov, cov.T, atol=1e-12, rtol=0):
            raise ValueError("covariance must be symmetric")
        if len(labels) and np.linalg.eigvalsh(cov).min() < -1e-9:
            raise ValueError("covariance must be positive semidefinite")
        cov = 0.5 * (cov + cov.T)
        if self.factor is None:
            w, v = np.linalg.eigh(cov)
            factor = v * np.sqrt(np.clip(w, 0.0, None))
        else:
            factor = np.asarray(self.factor, dtype=float)
            if factor.shape[0] != len(labels):
                raise ValueError("factor rows must match labels")
        cov.setflags(write=False)
        factor.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "cov", cov)
        object.__setattr__(self, "factor", factor)

    @classmethod
    def from_linear(cls, combos: Mapping[str, Mapping[str, float]]) -> "GaussianSystem":
        """Build from linear combinations of independent unit Gaussians.

        ``combos`` maps each label to {source_name: coefficient}.
        """
        labels, a = linear_factor(combos)
        return cls(labels, a @ a.T, a)

    def index(self, names: Iterable[str]) -> list:
        pos = {k: i for i, k in enumerate(self.labels)}
        out = []
        for n in names:
            if n not in pos:
                raise KeyError(f"unknown label {n!r}")
            out.append(pos[n])
        return out


def linear_factor(combos: Mapping[str, Mapping[str, float]], sources=None) -> tuple:
    """(labels, matrix) for a {label: {source: coef}} description."""
    if sources is None:
        sources = sorted({s for c in combos.values() for s in c})
    idx = {s: i for i, s in enumerate(sources)}
    a = np.zeros((len(combos), len(sources)))
    for r, c in enumerate(combos.values()):
        for s, v in c.items():
            a[r, idx[s]] += v
    return tuple(combos), a


def _as_names(x) -> list:
    if isinstance(x, str):
        return [x]
    return list(x)


def _residual(f: np.ndarray, b: list, c: list) -> np.ndarray:
    """Rows b of the factor with the row space of rows c projected out.

    Works on stacks: ``f`` has shape (..., n_vars, n_sources).
    """
    fb = f[..., b, :]
    if not c:
        return fb
    fc = f[..., c, :]
    _, sv, vt = np.linalg.svd(fc, full_matrices=False)
    keep = sv > 1e-12 * np.maximum(sv[..., :1], 1e-300)
    vt = vt * keep[..., :, None]
    return fb - (fb @ np.swapaxes(vt, -1, -2)) @ vt


def _logdet(m: np.ndarray) -> tuple:
    """(rank, log2 pseudo-determinant) over the trailing two axes."""
    w = np.linalg.eigvalsh(m)
    mask = w > EIG_CUTOFF
    return mask.sum(axis=-1), np.where(mask, np.log2(np.where(mask, w, 1.0)), 0.0).sum(axis=-1)


def mi_from_factor(f: np.ndarray, ia: list, ib: list, ic: list) -> np.ndarray:
    """I(A;B|C) for a (possibly stacked) factor and index lists."""
    cset = set(ic)
    ib = [i for i in dict.fromkeys(ib) if i not in cset]
    ia = [i for i in dict.fromkeys(ia) if i not in cset]
    lead = f.shape[:-2]
    if not ib or not ia:
        return np.zeros(lead)
    ac = list(dict.fromkeys(list(ic) + ia))
    r_c = _residual(f, ib, list(ic))
    r_ac = _residual(f, ib, ac)
    n1, l1 = _logdet(r_c @ np.swapaxes(r_c, -1, -2))
    n2, l2 = _logdet(r_ac @ np.swapaxes(r_ac, -1, -2))
    out = np.maximum(0.0, 0.5 * (l1 - l2))
    return np.where(n2 < n1, np.inf, out)


def mutual_info(sys: GaussianSystem, a, b, c=()) -> float:
    """I(A;B|C) in bits, clipped at 0.

    Degenerate conditionals use pseudo-determinants; if conditioning on A
    removes a dimension of B the information is infinite.
    """
    a, b, c = _as_names(a), _as_names(b), _as_names(c)
    ia, ib, ic = sys.index(a), sys.index(b), sys.index(c)
    return float(mi_from_factor(sys.factor, ia, ib, ic))


OUTER_LABELS = ("X1", "X2", "X3", "Y1", "Y2", "Y3", "V1", "V3", "V2")
OUTER_SOURCES = ("W1", "W2", "W3", "Z1", "Z2", "Z3", "Z2g", "Z3g", "Z1g")


def _outer_combos(g: dict, rho: float) -> dict:
    ortho = math.sqrt(max(0.0, 1.0 - rho * rho))
    x1 = {"W1": 1.0}
    x2 = {"W2": 1.0}
    x3 = {"W1": rho, "W3": ortho}

    def lin(*terms):
        out = {}
        for coef, var in terms:
            for s, v in var.items():
                out[s] = out.get(s, 0.0) + coef * v
        return out

    return {
        "X1": x1,
        "X2": x2,
        "X3": x3,
        "Y1": lin((g["s11"], x1), (g["s12"], x2), (g["s13"], x3), (1.0, {"Z1": 1.0})),
        "Y2": lin((g["s21"], x1), (g["s22"], x2), (g["s23"], x3), (1.0, {"Z2": 1.0})),
        "Y3": lin((g["s31"], x1), (1.0, {"Z3": 1.0})),
        "V1": lin((g["s21"], x1), (g["s23"], x3), (1.0, {"Z2g": 1.0})),
        "V3": lin((g["s31"], x1), (1.0, {"Z3g": 1.0})),
        "V2": lin((g["s12"], x2), (1.0, {"Z1g": 1.0})),
    }


def _check_rho(rho: float):
    if math.isnan(rho) or not -1.0 <= rho <= 1.0:
        raise ValueError(f"rho must lie in [-1, 1], got {rho}")


def build_system(ch: ChannelSnr, rho: float, negate: Iterable[str] = ()) -> GaussianSystem:
    """Inputs, outputs and genie signals of the Gaussian channel.

    X1, X2, X3 have unit power and corr(X1, X3) = rho. V1, V3 and V2 are
    copies of the interference signals at receiver 2, the relay and
    receiver 1, each with its own independent noise.
    """
    _check_rho(rho)
    labels, a = linear_factor(_outer_combos(signed_gains(ch, negate), rho), OUTER_SOURCES)
    return GaussianSystem(labels, a @ a.T, a)


def outer_factor_stack(ch: ChannelSnr, rhos: Sequence[float], negate: Iterable[str] = ()) -> np.ndarray:
    """Factors of ``build_system`` for many rho at once, shape (n, 9, 9)."""
    g = signed_gains(ch, negate)
    out = []
    for rho in rhos:
        _check_rho(rho)
        out.append(linear_factor(_outer_combos(g, float(rho)), OUTER_SOURCES)[1])
    return np.array(out)
