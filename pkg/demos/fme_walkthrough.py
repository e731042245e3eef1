"""Fourier-Motzkin elimination on a small system, then on a built-in one.

Run: python demos/fme_walkthrough.py
"""

from ircgap.fme import canonicalize, check_against_target, eliminate, format_system, parse_system
from ircgap.fme_builtin import fme_check

TOY = """
# one relay-decoded layer T10 feeding both rates
T10 <= I(X1;Y3|X3)
R1 - T10 <= I(X1;Y1|X3)
R1 + R2 - T10 <= I(X1X2;Y1|X3)
-T10 <= 0
"""


def main():
    sys_ = parse_system(TOY)
    print("input:\n" + format_system(sys_))
    out = canonicalize(eliminate(sys_, "T10"))
    print("after eliminating T10:\n" + format_system(out))

    target = parse_system("R1 <= I(X1;Y3|X3) + I(X1;Y1|X3)")
    r = check_against_target(out, target)
    print("extra bounds the target does not list:")
    for line in r["extra_in_derived"]:
        print("  " + line)

    for name in ("df-full", "df-partial"):
        r = fme_check(name)
        print(f"\n{name}: {'OK' if r['ok'] else 'MISMATCH'}, "
              f"{len(r['matched'])} matched, {len(r['extra_in_derived'])} extra")
        for line in r["extra_in_derived"]:
            print("  + " + line)


if __name__ == "__main__":
    main()
