"""Randomized gap audit of each operating regime.

Prints the clipped gap (the one the ceilings are stated for) next to the
per-bound deficit, which measures each bound family on its own.

Run: python demos/audit_regimes.py [samples] [seed]
"""

import sys

from ircgap.audit import AuditSpec, Regime, gap_audit

CEILING = {Regime.FULL_DF: 1.0, Regime.PARTIAL_DF: 1.5, Regime.CF: 1.32, Regime.HK_NO_RELAY: 1.0}


def main(samples=300, seed=1):
    print(f"{'regime':<10} {'ceiling':>7} {'gap':>7} {'per-bound':>9}")
    for regime, limit in CEILING.items():
        r = gap_audit(AuditSpec(regime, samples=samples, seed=seed))
        print(f"{regime.value:<10} {limit:7.2f} {r['max_gap']:7.3f} {r['max_gap_per_bound']:9.3f}")


if __name__ == "__main__":
    main(*(int(a) for a in sys.argv[1:3]))
