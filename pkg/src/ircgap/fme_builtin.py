"""Decoding-constraint systems of the DF and CF schemes and their targets.

Symbols are written I(A;B|C) with the time-sharing variable left implicit.
For the CF systems, I1i / I2i are the rate terms of a destination using
the compression index and I1i' / I2i' those of a destination ignoring it;
user 1's private rate is R11'.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .cf import CfConfig, cf_terms
from .df import build_df_system
from .gauss_core import ChannelSnr, mutual_info

from .fme import (
    IneqSystem,
    InfoSymbol,
    canonicalize,
    check_against_target,
    drop_trivial,
    extra_keys,
    eliminate,
    parse_system,
    remove_implied,
    rewrite,
    substitute,
)

IB = "I(X3;V1|V3)"

# Binning, relay decoding, destination 1, destination 2 and nonnegativity.
DF_PARTIAL_CONSTRAINTS = f"""
R10 - T10 < -{IB}
R11' < I(U1;Y3|V1X3)
T10 + R11' < I(V1U1;Y3|X3) + {IB}
R11'' < I(X1;Y1|V1U1V2X3)
R11' + R11'' < I(X1X3;Y1|V1V2V3) + {IB}
T10 + R11' + R11'' < I(X1X3;Y1|V2) + {IB}
R11'' + R20 < I(X1V2;Y1|V1U1X3)
R11' + R11'' + R20 < I(X1V2X3;Y1|V1V3) + {IB}
T10 + R11' + R11'' + R20 < I(X1V2X3;Y1) + {IB}
R22 < I(X2;Y2|V1V2V3)
R20 + R22 < I(X2;Y2|V1V3)
T10 + R22 < I(V1X2V3;Y2|V2)
T10 + R20 + R22 < I(V1X2V3;Y2)
T10 < I(V1V3;Y2|X2)
-R10 <= 0
-R11' <= 0
-R11'' <= 0
-R20 <= 0
-R22 <= 0
"""

# U1 = X1 and no second private layer: the relay decodes the whole message.
DF_FULL_CONSTRAINTS = f"""
R10 - T10 < -{IB}
R11' < I(X1;Y3|V1X3)
T10 + R11' < I(X1;Y3|X3) + {IB}
R11' < I(X1X3;Y1|V1V2V3) + {IB}
T10 + R11' < I(X1X3;Y1|V2) + {IB}
R11' + R20 < I(X1V2X3;Y1|V1V3) + {IB}
T10 + R11' + R20 < I(X1V2X3;Y1) + {IB}
R22 < I(X2;Y2|V1V2V3)
R20 + R22 < I(X2;Y2|V1V3)
T10 + R22 < I(V1X2V3;Y2|V2)
T10 + R20 + R22 < I(V1X2V3;Y2)
T10 < I(V1V3;Y2|X2)
-R10 <= 0
-R11' <= 0
-R20 <= 0
-R22 <= 0
"""

# Orderings valid for every distribution of the DF schemes: chain rule,
# V2 - X2 - (everything else), and (V1, V3) independent of (V2, X2).
DF_AXIOMS = """
axiom: I(X1X3;Y1|V2) <= I(X1V2X3;Y1)
axiom: I(X1X3;Y1|V1V2V3) <= I(X1V2X3;Y1|V1V3)
axiom: I(V1V3;Y2|X2) <= I(V1X2V3;Y2|V2)
axiom: I(V1X2V3;Y2|V2) <= I(V1V3;Y2|X2) + I(X2;Y2|V1V2V3)
"""

# Partial DF adds U1 - X1 - (outputs) and V3 - X3 - (everything else).
DF_PARTIAL_AXIOMS = DF_AXIOMS + """
axiom: I(U1;Y3|X3) <= I(V1U1;Y3|X3)
axiom: I(U1;Y3|V1X3) <= I(V1U1;Y3|X3)
axiom: I(X1;Y1|V1U1V2X3) <= I(X1V2;Y1|V1U1X3)
axiom: I(X1;Y1|V1U1V2X3) <= I(X1X3;Y1|V1V2V3)
axiom: I(X1V2;Y1|V1U1X3) <= I(X1V2X3;Y1|V1V3)
axiom: I(X1V2X3;Y1|V1V3) <= I(X1V2;Y1|V1U1X3) + I(X1X3;Y1|V1V2V3)
"""

DF_PARTIAL_TARGET = f"""
R1 <= I(U1;Y3|X3) + I(X1;Y1|V1U1V2X3)
R1 <= I(X1X3;Y1|V2)
R2 <= I(X2;Y2|V1V3)
R2 <= I(V1X2V3;Y2) - {IB}
R1 + R2 <= I(X1X3;Y1|V1V2V3) + I(V1X2V3;Y2)
R1 + R2 <= I(U1;Y3|V1X3) + I(X1;Y1|V1U1V2X3) + I(V1X2V3;Y2) - {IB}
R1 + R2 <= I(X1V2X3;Y1|V1V3) + I(V1X2V3;Y2|V2)
R1 + R2 <= I(U1;Y3|V1X3) + I(X1V2;Y1|V1U1X3) + I(V1X2V3;Y2|V2) - {IB}
R1 + R2 <= I(X1V2X3;Y1) + I(V1X2V3;Y2|V2) - {IB}
R1 + R2 <= I(X1V2X3;Y1) + I(X2;Y2|V1V2V3)
R1 + R2 <= I(U1;Y3|X3) + I(X1V2;Y1|V1U1X3) + I(X2;Y2|V1V2V3)
2*R1 + R2 <= I(X1X3;Y1|V1V2V3) + I(X1V2X3;Y1) + I(V1X2V3;Y2|V2)
2*R1 + R2 <= I(X1X3;Y1|V1V2V3) + I(X1V2;Y1|V1U1X3) + I(U1;Y3|X3) + I(V1X2V3;Y2|V2)
2*R1 + R2 <= I(U1;Y3|V1X3) + I(X1;Y1|V1U1V2X3) + I(X1V2X3;Y1) + I(V1X2V3;Y2|V2) - {IB}
R1 + 2*R2 <= I(X1V2X3;Y1|V1V3) + I(X2;Y2|V1V2V3) + I(V1X2V3;Y2)
R1 + 2*R2 <= I(U1;Y3|V1X3) + I(X1V2;Y1|V1U1X3) + I(X2;Y2|V1V2V3) + I(V1X2V3;Y2) - {IB}
"""

DF_PARTIAL_EXTRAS = f"""
R1 <= I(X1X3;Y1|V1V2V3) + I(V1V3;Y2|X2)
R1 <= I(U1;Y3|V1X3) + I(X1;Y1|V1U1V2X3) + I(V1V3;Y2|X2) - {IB}
R2 <= I(X1V2;Y1|V1U1X3) + I(X2;Y2|V1V2V3)
R2 <= I(X1V2;Y1|V1U1X3) + I(V1X2V3;Y2|V2) - {IB}
"""

DF_FULL_TARGET = f"""
R1 <= I(X1;Y3|X3)
R1 <= I(X1X3;Y1|V2)
R2 <= I(X2;Y2|V1V3)
R2 <= I(V1X2V3;Y2) - {IB}
R1 + R2 <= I(X1X3;Y1|V1V2V3) + I(V1X2V3;Y2)
R1 + R2 <= I(X1;Y3|V1X3) + I(V1X2V3;Y2) - {IB}
R1 + R2 <= I(X1V2X3;Y1|V1V3) + I(V1X2V3;Y2|V2)
R1 + R2 <= I(X1V2X3;Y1) + I(V1X2V3;Y2|V2) - {IB}
R1 + R2 <= I(X1V2X3;Y1) + I(X2;Y2|V1V2V3)
2*R1 + R2 <= I(X1X3;Y1|V1V2V3) + I(X1V2X3;Y1) + I(V1X2V3;Y2|V2)
2*R1 + R2 <= I(X1;Y3|V1X3) + I(X1V2X3;Y1) + I(V1X2V3;Y2|V2) - {IB}
R1 + 2*R2 <= I(X1V2X3;Y1|V1V3) + I(X2;Y2|V1V2V3) + I(V1X2V3;Y2)
"""

DF_FULL_EXTRAS = f"""
R1 <= I(X1X3;Y1|V1V2V3) + I(V1V3;Y2|X2)
R1 <= I(X1;Y3|V1X3) + I(V1V3;Y2|X2) - {IB}
R2 <= I(X1V2X3;Y1|V1V3) + I(X2;Y2|V1V2V3) + {IB}
"""


def _cf_destination(k: str, relay: bool) -> str:
    """Decoding constraints at destination k, with or without the relay."""
    j = "2" if k == "1" else "1"
    own0, own1 = f"R{k}0", ("R11'" if k == "1" else "R22")
    other0 = f"R{j}0"
    p = "" if relay else "'"
    return (f"{own1} < I{k}1{p}\n"
            f"{own0} + {own1} < I{k}2{p}\n"
            f"{other0} + {own1} < I{k}3{p}\n"
            f"{own0} + {own1} + {other0} < I{k}4{p}\n")


def _cf_order_axioms(k: str, p: str) -> str:
    a = [f"I{k}1{p} <= I{k}2{p}", f"I{k}2{p} <= I{k}4{p}",
         f"I{k}1{p} <= I{k}3{p}", f"I{k}3{p} <= I{k}4{p}"]
    return "".join(f"axiom: {x}\n" for x in a)


_CF_NONNEG = "-R10 <= 0\n-R11' <= 0\n-R20 <= 0\n-R22 <= 0\n"


def _cf_rows(I: dict, k: str) -> str:
    """Compact CF bounds, with I mapping '1i'/'2i' to symbol names."""
    j = "2" if k == "1" else "1"
    rk, rj = f"R{k}", f"R{j}"
    return (f"{rk} <= {I[k + '2']}\n"
            f"{rk} + {rj} <= {I[k + '1']} + {I[j + '4']}\n"
            f"{rk} + {rj} <= {I[k + '3']} + {I[j + '3']}\n"
            f"2*{rk} + {rj} <= {I[k + '1']} + {I[k + '4']} + {I[j + '3']}\n")


def _cf_names(relay1: bool, relay2: bool) -> dict:
    out = {}
    for k, relay in (("1", relay1), ("2", relay2)):
        for i in "1234":
            out[k + i] = f"I{k}{i}" + ("" if relay else "'")
    return out


@dataclass(frozen=True)
class Builtin:
    name: str
    constraints: str
    axioms: str
    substitutions: tuple
    eliminate: tuple
    target: str
    extras: str
    rewrite: tuple = ()

    def _symbols(self) -> tuple:
        names = set()
        for text in (self.constraints, self.target, self.extras):
            for q in parse_system(text).inequalities:
                names.update(k for k, _ in q.sym)
        return tuple(InfoSymbol(n) for n in sorted(names))

    def system(self) -> IneqSystem:
        return parse_system(self.constraints + self.axioms, self._symbols())

    def target_system(self) -> IneqSystem:
        return parse_system(self.target + self.axioms, self._symbols())

    def extras_system(self) -> IneqSystem:
        return parse_system(self.extras + self.axioms, self._symbols())


_R1_SPLIT_PARTIAL = ("R11''", {"R1": 1, "R10": -1, "R11'": -1})
_R1_SPLIT_FULL = ("R11'", {"R1": 1, "R10": -1})
_R2_SPLIT = ("R22", {"R2": 1, "R20": -1})


def _cf_builtin(name: str, relay1: bool, relay2: bool) -> Builtin:
    names = _cf_names(relay1, relay2)
    axioms = _cf_order_axioms("1", "" if relay1 else "'") + _cf_order_axioms("2", "" if relay2 else "'")
    target = _cf_rows(names, "1") + _cf_rows(names, "2")
    extras = (f"R1 <= {names['11']} + {names['23']}\n"
              f"R2 <= {names['21']} + {names['13']}\n")
    return Builtin(
        name=name,
        constraints=_cf_destination("1", relay1) + _cf_destination("2", relay2) + _CF_NONNEG,
        axioms=axioms,
        substitutions=(_R1_SPLIT_FULL, _R2_SPLIT),
        eliminate=("R10", "R20"),
        target=target,
        extras=extras,
    )


BUILTINS = {
    "df-partial": Builtin(
        name="df-partial",
        constraints=DF_PARTIAL_CONSTRAINTS,
        axioms=DF_PARTIAL_AXIOMS,
        substitutions=(_R1_SPLIT_PARTIAL, _R2_SPLIT),
        eliminate=("T10", "R10", "R11'", "R20"),
        target=DF_PARTIAL_TARGET,
        extras=DF_PARTIAL_EXTRAS,
        rewrite=(("I(V1U1;Y3|X3)", "I(U1;Y3|X3)"),),
    ),
    "df-full": Builtin(
        name="df-full",
        constraints=DF_FULL_CONSTRAINTS,
        axioms=DF_AXIOMS,
        substitutions=(_R1_SPLIT_FULL, _R2_SPLIT),
        eliminate=("T10", "R10", "R20"),
        target=DF_FULL_TARGET,
        extras=DF_FULL_EXTRAS,
    ),
    "cf-joint": _cf_builtin("cf-joint", True, True),
    "cf-single-1": _cf_builtin("cf-single-1", True, False),
    "cf-single-2": _cf_builtin("cf-single-2", False, True),
}
BUILTINS["cf-single-k"] = BUILTINS["cf-single-1"]


def derive(b: Builtin) -> IneqSystem:
    """Run the elimination for a built-in system and reduce the result."""
    sys = b.system()
    for var, expr in b.substitutions:
        sys = substitute(sys, var, {k: Fraction(v) for k, v in expr.items()})
    for var in b.eliminate:
        sys = remove_implied(drop_trivial(canonicalize(eliminate(sys, var))))
    if b.rewrite:
        sys = rewrite(sys, dict(b.rewrite))
        t = b.target_system()
        sys = IneqSystem(sys.inequalities, t.axioms, t.symbols)
    return canonicalize(sys)


def fme_check(name: str) -> dict:
    """Derive a built-in system and compare it with its target.

    ``ok`` is true when the extras are exactly the expected redundant
    bounds and nothing from the target is missing.
    """
    if name not in BUILTINS:
        raise KeyError(f"unknown system {name!r}; choose from {sorted(BUILTINS)}")
    b = BUILTINS[name]
    derived = derive(b)
    report = check_against_target(derived, b.target_system())
    expected = canonicalize(b.extras_system())
    got = extra_keys(derived, b.target_system())
    report["system"] = b.name
    report["expected_extras"] = [str(q) for q in expected.inequalities]
    report["ok"] = got == {q.key() for q in expected.inequalities} and not report["missing"]
    return report


_SYMBOL = re.compile(r"^I\(([^;|]+);([^;|]+)(?:\|([^;|]*))?\)$")
_LABEL = re.compile(r"[A-Z][0-9]+")


def parse_mi_symbol(name: str) -> tuple:
    """'I(X1V2;Y1|V1X3)' -> (['X1', 'V2'], ['Y1'], ['V1', 'X3'])."""
    m = _SYMBOL.match(name)
    if not m:
        raise ValueError(f"not a mutual information symbol: {name!r}")
    return tuple(_LABEL.findall(g or "") for g in m.groups())


def df_symbol_values(ch: ChannelSnr, names, full: bool = False) -> dict:
    """Evaluate I(A;B|C) symbols on the Gaussian DF system.

    With ``full`` the relay decodes everything, so U1 is X1.
    """
    sys = build_df_system(ch)
    out = {}
    for n in names:
        a, b, c = parse_mi_symbol(n)
        if full:
            a, b, c = ([("X1" if x == "U1" else x) for x in g] for g in (a, b, c))
        out[n] = mutual_info(sys, a, b, c)
    return out


def cf_symbol_values(ch: ChannelSnr, cfg: CfConfig = CfConfig()) -> dict:
    """I1i / I2i with the compression index, I1i' / I2i' relay-silent."""
    t = cf_terms(ch, cfg)
    out = {f"I{k}": v for k, v in t.I.items()}
    out.update({f"I{k}'": v for k, v in t.Ip.items()})
    return out


def axiom_slacks(sys: IneqSystem, values: Mapping) -> list:
    """rhs - lhs of every axiom at the given symbol values."""
    return [float(sum(c * values[s] for s, c in a.slack.items())) for a in sys.axioms]


def symbol_values(name: str, ch: ChannelSnr, cfg: CfConfig = CfConfig()) -> dict:
    b = BUILTINS[name]
    if name.startswith("cf"):
        return cf_symbol_values(ch, cfg)
    return df_symbol_values(ch, [s.name for s in b.system().symbols], full=name == "df-full")
