"""Command-line entry point: regions, sweeps, gap audits and FME checks."""

from __future__ import annotations

import argparse
import json
import sys

from .audit import REFERENCE_DB, AuditSpec, EmptyAuditError, Regime, SweepSpec, gap_audit, sweep, sweep_csv
from .cf import CfConfig, cf_joint_rows, cf_region, cf_single_rows, cf_terms, hk_terms
from .df import df_full_rows, df_partial_rows, df_terms
from .fme_builtin import BUILTINS, fme_check
from .gauss_core import LINKS, ChannelSnr
from .geometry import HalfPlane, RateRegion, vertices
from .outer import (
    BOUND_DIRS,
    BOUND_NAMES,
    OuterConfig,
    cor1_bounds,
    decorr_ratio_check,
    outer_region_thm1_max,
    thm1_bounds,
)

EXIT_OK, EXIT_USAGE, EXIT_CHECK = 0, 1, 2
BOUNDS = ("outer-cor1", "outer-thm1", "df-full", "df-partial", "cf", "hk")
DECORR_LIMIT = 2.0 + 1e-3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; 2 is reserved for failed checks.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_channel(p, defaults=None, skip=()):
    for k in LINKS:
        if k in skip:
            continue
        d = None if defaults is None else defaults.get(k)
        p.add_argument(f"--{k}", type=float, default=d, required=d is None,
                       metavar="DB", help=f"{k.upper()} in dB")
    p.add_argument("--sign-parity", choices=("even", "odd"), default="even")


def _add_cf_noise(p):
    p.add_argument("--cf-noise", type=float, default=1.81, metavar="N",
                   help="relay quantization noise variance (default 1.81)")


def _add_out(p):
    p.add_argument("--out", metavar="PATH", help="write to a file instead of stdout")


def _channel(args) -> ChannelSnr:
    return ChannelSnr.from_db(args.sign_parity == "even", **{k: getattr(args, k) for k in LINKS})


def _emit(text: str, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _rows_json(rows, names=None) -> list:
    out = []
    for i, ((a1, a2), b) in enumerate(rows):
        r = {"a1": a1, "a2": a2, "b": float(b)}
        out.append({"name": names[i], **r} if names else r)
    return out


def _region_from_rows(rows, clip: bool) -> RateRegion:
    return RateRegion([HalfPlane(a1, a2, max(0.0, b) if clip else b) for (a1, a2), b in rows])


def _region_payload(args, ch: ChannelSnr) -> dict:
    cfg = CfConfig(args.cf_noise)
    out = {}
    raw, names = None, None
    if args.bound == "outer-cor1":
        raw, names = list(zip(BOUND_DIRS, cor1_bounds(ch))), BOUND_NAMES
    elif args.bound == "outer-thm1" and args.rho is not None:
        if not -1.0 <= args.rho <= 1.0:
            raise UsageError("--rho must lie in [-1, 1]")
        raw, names = list(zip(BOUND_DIRS, thm1_bounds(ch, args.rho))), BOUND_NAMES
        out["rho"] = args.rho
    elif args.bound == "df-full":
        raw = df_full_rows(df_terms(ch))
    elif args.bound == "df-partial":
        raw = df_partial_rows(df_terms(ch))
    elif args.bound == "hk":
        raw = cf_joint_rows(hk_terms(ch))

    if args.bound == "outer-thm1" and args.rho is None:
        region = outer_region_thm1_max(ch, OuterConfig())
        out["rho"] = "max over 201-point grid"
    elif args.bound == "cf":
        region = cf_region(ch, cfg)
        t = cf_terms(ch, cfg)
        noisy = cf_terms(ch, cfg, relay_noise=True).Ip
        out["cf_noise"] = args.cf_noise
        out["components"] = {
            "cf0": _rows_json(cf_joint_rows(t.I)),
            "cf1": _rows_json(cf_single_rows(t.I, noisy, "1")),
            "cf2": _rows_json(cf_single_rows(t.I, noisy, "2")),
        }
    else:
        # Inner bounds clip negative right-hand sides at 0.
        region = _region_from_rows(raw, clip=not args.bound.startswith("outer"))
    if raw is not None:
        out["bounds"] = _rows_json(raw, names)
    out["planes"] = [{"a1": a1, "a2": a2, "b": float(b)} for (a1, a2), b in region.bounds.items()]
    out["vertices"] = [] if region.is_empty else [[float(x), float(y)] for x, y in vertices(region)]
    return out


def cmd_region(args) -> int:
    ch = _channel(args)
    out = {
        "bound": args.bound,
        "channel_db": {k: getattr(args, k) for k in LINKS},
        "sign_parity": args.sign_parity,
        **_region_payload(args, ch),
    }
    _emit(_json(out), args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    fixed = {k: getattr(args, k) for k in LINKS if k != "s31"}
    spec = SweepSpec(fixed, args.lo_db, args.hi_db, args.step_db, args.cf_noise,
                     args.sign_parity == "even")
    _emit(sweep_csv(sweep(spec)), args.out)
    return EXIT_OK


def cmd_gap_audit(args) -> int:
    spec = AuditSpec(Regime(args.regime), args.samples, args.seed,
                     (args.snr_lo_db, args.snr_hi_db), args.cf_noise)
    try:
        report = gap_audit(spec)
    except EmptyAuditError as e:
        _emit(_json({"regime": args.regime, "seed": args.seed, "error": str(e)}), args.out)
        return EXIT_CHECK
    if args.max_gap is not None:
        report["limit"] = args.max_gap
        report["within_limit"] = report["max_gap"] <= args.max_gap
    _emit(_json(report), args.out)
    if args.max_gap is not None and not report["within_limit"]:
        return EXIT_CHECK
    return EXIT_OK


def _fme_text(r: dict) -> str:
    lines = [f"system: {r['system']}", f"status: {'OK' if r['ok'] else 'MISMATCH'}"]
    for key in ("matched", "extra_in_derived", "expected_extras", "missing", "conditions"):
        lines.append(f"{key} ({len(r[key])}):")
        lines += [f"  {x}" for x in r[key]]
    return "\n".join(lines) + "\n"


def cmd_fme_check(args) -> int:
    r = fme_check(args.system)
    _emit(_json(r) if args.json else _fme_text(r), args.out)
    return EXIT_OK if r["ok"] else EXIT_CHECK


def cmd_decorr_check(args) -> int:
    sup = decorr_ratio_check(args.grid_density)
    ok = sup <= DECORR_LIMIT
    _emit(_json({"grid_density": args.grid_density, "sup_ratio": sup,
                 "limit": DECORR_LIMIT, "ok": ok}), args.out)
    return EXIT_OK if ok else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ircgap", description="Capacity bounds for the Gaussian interference relay channel.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("region", help="print one inner or outer region as JSON")
    _add_channel(r)
    r.add_argument("--bound", choices=BOUNDS, required=True)
    r.add_argument("--rho", type=float, default=None,
                   help="outer-thm1 only: evaluate at this correlation instead of the grid hull")
    _add_cf_noise(r)
    _add_out(r)
    r.set_defaults(func=cmd_region)

    s = sub.add_parser("sweep", help="sweep s31 and write max sum-rates and gaps as CSV")
    _add_channel(s, defaults=REFERENCE_DB, skip=("s31",))
    s.add_argument("--lo-db", type=float, default=-15.0)
    s.add_argument("--hi-db", type=float, default=25.0)
    s.add_argument("--step-db", type=float, default=0.5)
    _add_cf_noise(s)
    _add_out(s)
    s.set_defaults(func=cmd_sweep)

    a = sub.add_parser("gap-audit", help="seeded randomized gap audit of one regime")
    a.add_argument("--regime", choices=[x.value for x in Regime], required=True)
    a.add_argument("--samples", type=int, default=1000)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--snr-lo-db", type=float, default=-20.0)
    a.add_argument("--snr-hi-db", type=float, default=40.0)
    a.add_argument("--max-gap", type=float, default=None,
                   help="exit with status 2 when the largest gap exceeds this value")
    _add_cf_noise(a)
    _add_out(a)
    a.set_defaults(func=cmd_gap_audit)

    f = sub.add_parser("fme-check", help="re-derive a built-in region by elimination")
    f.add_argument("system", choices=sorted(BUILTINS))
    f.add_argument("--json", action="store_true", help="JSON instead of text")
    _add_out(f)
    f.set_defaults(func=cmd_fme_check)

    d = sub.add_parser("decorr-check", help="sup of the decorrelation ratio over a grid")
    d.add_argument("--grid-density", type=int, default=50)
    _add_out(d)
    d.set_defaults(func=cmd_decorr_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as e:
        sys.stderr.write(f"ircgap: error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
