"""Fourier-Motzkin elimination over rate inequalities with symbolic bounds.

An inequality reads  sum_v a_v * v  <=  sum_s c_s * s  where v ranges over
rate variables and s over opaque information symbols. Coefficients are
exact ``Fraction`` values. Symbols are nonnegative unless declared
otherwise; any further relation between them must be declared as an
axiom ``lhs <= rhs``.

Redundancy tests look for a certificate: nonnegative multipliers on other
inequalities, on rate nonnegativity and on the axioms. Multipliers are found
with an LP and then re-verified in exact arithmetic, so a float glitch can
only keep an inequality, never drop one wrongly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

import numpy as np
from scipy.optimize import linprog

RATE_VARS = ("R10", "R11'", "R11''", "R20", "R22", "T10", "R1", "R2")
_RATE_ORDER = {v: i for i, v in enumerate(RATE_VARS)}
LP_TOL = 1e-9
# Rates of the final region, taken as nonnegative without an explicit row.
# Partial rates carry their nonnegativity as inequalities so that
# elimination sees it.
FINAL_RATES = ("R1", "R2")


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floating point coefficient; use Fraction or int")
    return Fraction(x)


def _clean(d: Mapping) -> dict:
    out = {}
    for k, v in d.items():
        v = _frac(v)
        if v:
            out[k] = out.get(k, Fraction(0)) + v
    return {k: v for k, v in out.items() if v}


def _add(*terms) -> dict:
    """Sum of (coefficient, dict) pairs."""
    out = {}
    for c, d in terms:
        for k, v in d.items():
            out[k] = out.get(k, Fraction(0)) + c * v
    return {k: v for k, v in out.items() if v}


@dataclass(frozen=True)
class InfoSymbol:
    name: str
    nonneg: bool = True


@dataclass(frozen=True)
class LinIneq:
    """sum rate[v] * v (<= or <) sum sym[s] * s."""

    rate: tuple
    sym: tuple
    strict: bool = False

    @classmethod
    def make(cls, rate: Mapping, sym: Mapping, strict: bool = False) -> "LinIneq":
        rate, sym = _clean(rate), _clean(sym)
        for v in rate:
            if v not in _RATE_ORDER:
                raise ValueError(f"unknown rate variable {v!r}")
        if not rate and not sym:
            raise ValueError("inequality has no nonzero coefficient")
        return cls(tuple(sorted(rate.items(), key=lambda kv: _RATE_ORDER[kv[0]])),
                   tuple(sorted(sym.items())), strict)

    @property
    def rates(self) -> dict:
        return dict(self.rate)

    @property
    def syms(self) -> dict:
        return dict(self.sym)

    @property
    def rate_free(self) -> bool:
        return not self.rate

    def key(self) -> tuple:
        return (tuple((_RATE_ORDER[v], c) for v, c in self.rate), self.sym)

    def __str__(self):
        return format_ineq(self)


@dataclass(frozen=True)
class Axiom:
    """lhs <= rhs between symbol combinations."""

    lhs: tuple
    rhs: tuple

    @classmethod
    def make(cls, lhs: Mapping, rhs: Mapping) -> "Axiom":
        return cls(tuple(sorted(_clean(lhs).items())), tuple(sorted(_clean(rhs).items())))

    @property
    def slack(self) -> dict:
        """rhs - lhs, a combination asserted to be >= 0."""
        return _add((1, dict(self.rhs)), (-1, dict(self.lhs)))

    def symbols(self) -> set:
        return {k for k, _ in self.lhs} | {k for k, _ in self.rhs}

    def __str__(self):
        return f"{_fmt_terms(dict(self.lhs))} <= {_fmt_terms(dict(self.rhs))}"


@dataclass(frozen=True)
class IneqSystem:
    inequalities: tuple
    axioms: tuple = ()
    symbols: tuple = ()

    def __post_init__(self):
        declared = {s.name: s for s in self.symbols}
        if len(declared) != len(self.symbols):
            raise ValueError("duplicate symbol declaration")
        seen = set()
        for q in self.inequalities:
            seen.update(k for k, _ in q.sym)
        for name in sorted(seen - set(declared)):
            declared[name] = InfoSymbol(name)
        for a in self.axioms:
            unknown = a.symbols() - set(declared)
            if unknown:
                raise ValueError(f"axiom references undeclared symbols {sorted(unknown)}")
        object.__setattr__(self, "inequalities", tuple(self.inequalities))
        object.__setattr__(self, "axioms", tuple(self.axioms))
        object.__setattr__(self, "symbols", tuple(declared[k] for k in sorted(declared)))

    def with_inequalities(self, ineqs: Iterable[LinIneq]) -> "IneqSystem":
        return IneqSystem(tuple(ineqs), self.axioms, self.symbols)

    @property
    def nonneg(self) -> dict:
        return {s.name: s.nonneg for s in self.symbols}

    def rate_vars(self) -> list:
        vs = {v for q in self.inequalities for v, _ in q.rate}
        return sorted(vs, key=_RATE_ORDER.get)

    def bounds(self) -> list:
        return [q for q in self.inequalities if not q.rate_free]

    def conditions(self) -> list:
        return [q for q in self.inequalities if q.rate_free]

    def __str__(self):
        return format_system(self)


# -- elimination -----------------------------------------------------------

def substitute(sys: IneqSystem, var: str, expr: Mapping) -> IneqSystem:
    """Replace ``var`` by the rate combination ``expr`` everywhere."""
    out = []
    for q in sys.inequalities:
        r = q.rates
        c = r.pop(var, Fraction(0))
        if c:
            r = _add((1, r), (c, _clean(expr)))
        out.append(LinIneq.make(r, q.syms, q.strict))
    return sys.with_inequalities(out)


def eliminate(sys: IneqSystem, var: str) -> IneqSystem:
    """Project ``var`` out by pairing every upper with every lower bound."""
    if var not in _RATE_ORDER:
        raise ValueError(f"unknown rate variable {var!r}")
    upper, lower, rest = [], [], []
    for q in sys.inequalities:
        c = q.rates.get(var, 0)
        (upper if c > 0 else lower if c < 0 else rest).append(q)
    out = list(rest)
    for u in upper:
        cu = u.rates[var]
        for lo in lower:
            cl = -lo.rates[var]
            rate = _add((cl, u.rates), (cu, lo.rates))
            sym = _add((cl, u.syms), (cu, lo.syms))
            if not rate and not sym:
                if u.strict or lo.strict:
                    out.append(None)  # 0 < 0: infeasible, kept visible below
                continue
            out.append(LinIneq.make(rate, sym, u.strict or lo.strict))
    if any(q is None for q in out):
        raise ValueError(f"system is infeasible after eliminating {var}")
    return sys.with_inequalities(out)


def canonicalize(sys: IneqSystem) -> IneqSystem:
    """Scale each inequality to coprime integer coefficients, dedupe, sort.

    Only positive scalings are used, so the direction is preserved. Copies
    that differ only in strictness merge into the strict one.
    """
    best = {}
    for q in sys.inequalities:
        n = _normalize(q)
        k = n.key()
        if k in best:
            n = LinIneq(n.rate, n.sym, n.strict or best[k].strict)
        best[k] = n
    return sys.with_inequalities(best[k] for k in sorted(best))


def _normalize(q: LinIneq) -> LinIneq:
    coeffs = [c for _, c in q.rate] + [c for _, c in q.sym]
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    num = 0
    for c in coeffs:
        num = gcd(num, abs(c.numerator * (den // c.denominator)))
    scale = Fraction(den, num)
    return LinIneq(tuple((v, c * scale) for v, c in q.rate),
                   tuple((s, c * scale) for s, c in q.sym), q.strict)


# -- certificates ------------------------------------------------------------

def _solve_exact(cols: list, target: list):
    """Exact solution x of sum_j x_j cols[j] = target, or None.

    ``cols`` are linearly independent Fraction vectors (an LP basis), so
    the solution, when it exists, is unique.
    """
    m, n = len(target), len(cols)
    a = [[cols[j][i] for j in range(n)] + [target[i]] for i in range(m)]
    piv, row = [], 0
    for j in range(n):
        p = next((i for i in range(row, m) if a[i][j] != 0), None)
        if p is None:
            continue
        a[row], a[p] = a[p], a[row]
        inv = 1 / a[row][j]
        a[row] = [x * inv for x in a[row]]
        for i in range(m):
            if i != row and a[i][j] != 0:
                f = a[i][j]
                a[i] = [x - f * y for x, y in zip(a[i], a[row])]
        piv.append(j)
        row += 1
    if any(a[i][n] != 0 for i in range(row, m)):
        return None
    x = [Fraction(0)] * n
    for r, j in enumerate(piv):
        x[j] = a[r][n]
    return x


def _certify(cols: list, target: list, free: int = 0) -> bool:
    """Is target a combination of cols, nonnegative beyond the first ``free``?"""
    if not any(target):
        return True
    if not cols:
        return False
    A = np.array([[float(c[i]) for c in cols] for i in range(len(target))])
    b = np.array([float(t) for t in target])
    bounds = [(None, None)] * free + [(0, None)] * (len(cols) - free)
    res = linprog(np.ones(len(cols)), A_eq=A, b_eq=b, bounds=bounds, method="highs")
    if res.status != 0:
        return False
    support = [j for j in range(len(cols)) if abs(res.x[j]) > LP_TOL]
    x = _solve_exact([cols[j] for j in support], target)
    if x is None:
        return False
    return all(v >= 0 for j, v in zip(support, x) if j >= free)


def _symbol_cone(sys: IneqSystem, names: list) -> list:
    """Generators of the cone of symbol combinations known to be >= 0."""
    nonneg = sys.nonneg
    gens = []
    for s in names:
        if nonneg.get(s, True):
            gens.append({s: Fraction(1)})
    gens += [a.slack for a in sys.axioms]
    return gens


def provably_nonneg(sys: IneqSystem, combo: Mapping) -> bool:
    """Is the symbol combination >= 0 from nonnegativity and the axioms?"""
    combo = _clean(combo)
    nonneg = sys.nonneg
    if all(c > 0 and nonneg.get(s, True) for s, c in combo.items()):
        return True
    names = sorted(set(combo) | {s for a in sys.axioms for s in a.symbols()})
    gens = _symbol_cone(sys, names)
    cols = [[g.get(s, Fraction(0)) for s in names] for g in gens]
    return _certify(cols, [combo.get(s, Fraction(0)) for s in names])


def remove_dominated(sys: IneqSystem) -> IneqSystem:
    """Drop A when some B with the same rate part has a provably smaller rhs.

    Mutually dominating inequalities keep the one first in canonical order,
    which makes the result independent of the input order.
    """
    qs = list(sys.inequalities)
    order = sorted(range(len(qs)), key=lambda i: qs[i].key())
    rank = {i: r for r, i in enumerate(order)}

    def dominates(b, a):  # rhs(b) <= rhs(a)
        return provably_nonneg(sys, _add((1, qs[a].syms), (-1, qs[b].syms)))

    keep = []
    for a in range(len(qs)):
        dropped = False
        for b in range(len(qs)):
            if a == b or qs[a].rate != qs[b].rate or not dominates(b, a):
                continue
            if not dominates(a, b) or rank[b] < rank[a]:
                dropped = True
                break
        if not dropped:
            keep.append(qs[a])
    return sys.with_inequalities(keep)


def implied(sys: IneqSystem, q: LinIneq, others: list) -> bool:
    """Is q a consequence of ``others``, R1, R2 >= 0 and the axioms?

    Certificate: q.rate = sum l_i a_i - sum r_v e_v (v in R1, R2) and
    q.rhs - sum l_i b_i is in the symbol cone, all multipliers >= 0.
    Strictness is ignored, i.e. closures are compared.
    """
    vars_ = sorted({v for p in others + [q] for v, _ in p.rate}, key=_RATE_ORDER.get)
    names = sorted({s for p in others + [q] for s, _ in p.sym}
                   | {s for a in sys.axioms for s in a.symbols()})
    nv = len(vars_)
    cols = []
    for p in others:
        r, s = p.rates, p.syms
        cols.append([r.get(v, Fraction(0)) for v in vars_]
                    + [s.get(n, Fraction(0)) for n in names])
    for i, v in enumerate(vars_):
        if v in FINAL_RATES:
            cols.append([Fraction(-1) if j == i else Fraction(0) for j in range(nv)]
                        + [Fraction(0)] * len(names))
    for g in _symbol_cone(sys, names):
        cols.append([Fraction(0)] * nv + [g.get(n, Fraction(0)) for n in names])
    r, s = q.rates, q.syms
    target = [r.get(v, Fraction(0)) for v in vars_] + [s.get(n, Fraction(0)) for n in names]
    return _certify(cols, target)


def remove_implied(sys: IneqSystem) -> IneqSystem:
    """Drop inequalities implied by the remaining ones, one at a time.

    Candidates are tried from the last in canonical order to the first,
    so the outcome is deterministic for a canonical input.
    """
    qs = list(canonicalize(sys).inequalities)
    for i in range(len(qs) - 1, -1, -1):
        others = qs[:i] + qs[i + 1:]
        if implied(sys, qs[i], others):
            qs = others
    return sys.with_inequalities(qs)


def drop_trivial(sys: IneqSystem) -> IneqSystem:
    """Remove rate-free inequalities that hold from the symbol cone alone."""
    keep = [q for q in sys.inequalities
            if not (q.rate_free and provably_nonneg(sys, q.syms))]
    return sys.with_inequalities(keep)


def rewrite(sys: IneqSystem, mapping: Mapping) -> IneqSystem:
    """Rename symbols in the inequalities (axioms are left untouched)."""
    out = []
    for q in sys.inequalities:
        s = {}
        for k, c in q.sym:
            k = mapping.get(k, k)
            s[k] = s.get(k, Fraction(0)) + c
        out.append(LinIneq.make(q.rates, s, q.strict))
    axioms = tuple(a for a in sys.axioms if not (a.symbols() & set(mapping)))
    return IneqSystem(tuple(out), axioms)


def _reduced_bounds(sys: IneqSystem) -> dict:
    return {q.key(): q for q in remove_dominated(canonicalize(sys)).bounds()}


def extra_keys(derived: IneqSystem, target: IneqSystem) -> set:
    return set(_reduced_bounds(derived)) - set(_reduced_bounds(target))


def check_against_target(derived: IneqSystem, target: IneqSystem) -> dict:
    """Compare rate bounds after canonicalize + remove_dominated.

    Rate-free inequalities of ``derived`` are reported as conditions.
    """
    d = remove_dominated(canonicalize(derived))
    dk, tk = _reduced_bounds(derived), _reduced_bounds(target)
    return {
        "matched": [format_ineq(tk[k]) for k in sorted(tk) if k in dk],
        "extra_in_derived": [format_ineq(dk[k]) for k in sorted(dk) if k not in tk],
        "missing": [format_ineq(tk[k]) for k in sorted(tk) if k not in dk],
        "conditions": [format_ineq(q) for q in d.conditions()],
    }


# -- text format -------------------------------------------------------------

_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?(I\([^()]*\)|[A-Za-z_][A-Za-z0-9_]*'*)\s*")
_NUM = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)\s*$")


def _parse_side(text: str) -> dict:
    text = text.strip()
    m = _NUM.match(text)
    if not text or (m and Fraction(m.group(2)) == 0):
        return {}
    out, pos = {}, 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text[pos:]!r}")
        if pos > 0 and not m.group(1):
            raise ValueError(f"missing operator before {m.group(3)!r}")
        c = Fraction(m.group(2) or 1) * (-1 if m.group(1) == "-" else 1)
        out[m.group(3)] = out.get(m.group(3), Fraction(0)) + c
        pos = m.end()
    return out


def _split_relation(line: str):
    for op in ("<=", "<", ">=", ">"):
        if op in line:
            lhs, rhs = line.split(op, 1)
            return lhs, op, rhs
    raise ValueError(f"no relation in {line!r}")


def parse_ineq(line: str) -> LinIneq:
    lhs, op, rhs = _split_relation(line)
    left, right = _parse_side(lhs), _parse_side(rhs)
    if op in (">=", ">"):
        left, right = right, left
    # Rates collect on the left, symbols on the right.
    moved = _add((1, left), (-1, right))
    rate = {k: c for k, c in moved.items() if k in _RATE_ORDER}
    sym = {k: -c for k, c in moved.items() if k not in _RATE_ORDER}
    return LinIneq.make(rate, sym, strict=op in ("<", ">"))


def parse_axiom(line: str) -> Axiom:
    lhs, op, rhs = _split_relation(line)
    left, right = _parse_side(lhs), _parse_side(rhs)
    if op in (">=", ">"):
        left, right = right, left
    if any(k in _RATE_ORDER for k in list(left) + list(right)):
        raise ValueError("axioms may only involve symbols")
    return Axiom.make(left, right)


def parse_system(text: str, symbols: Iterable[InfoSymbol] = ()) -> IneqSystem:
    """One inequality per line; ``axiom:`` lines declare axioms, ``#`` comments.

    Symbols used only in axioms must be declared through ``symbols``;
    those used in inequalities are declared nonnegative automatically.
    """
    ineqs, axioms = [], []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("axiom:"):
            axioms.append(parse_axiom(line[len("axiom:"):]))
        else:
            ineqs.append(parse_ineq(line))
    return IneqSystem(tuple(ineqs), tuple(axioms), tuple(symbols))


def _fmt_coef(c: Fraction, name: str, first: bool) -> str:
    sign = "-" if c < 0 else "+"
    a = abs(c)
    body = name if a == 1 else f"{a}*{name}"
    if first:
        return body if sign == "+" else f"-{body}"
    return f" {sign} {body}"


def _fmt_terms(d: Mapping) -> str:
    if not d:
        return "0"
    return "".join(_fmt_coef(c, k, i == 0) for i, (k, c) in enumerate(d.items()))


def format_ineq(q: LinIneq) -> str:
    # Positive symbol terms first so the rhs reads as sum minus penalties.
    sym = dict(sorted(q.sym, key=lambda kv: (kv[1] < 0, kv[0])))
    op = "<" if q.strict else "<="
    return f"{_fmt_terms(dict(q.rate))} {op} {_fmt_terms(sym)}"


def format_system(sys: IneqSystem) -> str:
    lines = [format_ineq(q) for q in sys.inequalities]
    lines += [f"axiom: {a}" for a in sys.axioms]
    return "\n".join(lines) + ("\n" if lines else "")
