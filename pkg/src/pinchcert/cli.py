"""Command-line interface: threshold lookup, certificates, tables, verification.

Rational inputs are parsed exactly ("-1/3", "2"); decimal literals are
rejected so the branch boundary t = -1/2 can never be silently approximated.
Exit codes: 0 success, 1 mathematical violation or failed certificate check,
2 usage error.
"""

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from . import proof, verify
from .certificates import frac_str

RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


def _rational(text):
    if not RATIONAL.match(text):
        raise argparse.ArgumentTypeError(
            f"expected an exact rational like -1/3 or 2, got {text!r}"
        )
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise argparse.ArgumentTypeError("zero denominator")
    return Fraction(text)


def _dimension(text):
    try:
        n = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"dimension must be an integer, got {text!r}") from exc
    if n < 3:
        raise argparse.ArgumentTypeError(f"dimension must be at least 3, got {n}")
    return n


def _seed(text):
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from exc
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _dims(text):
    out = []
    for part in text.split(","):
        try:
            d = int(part)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"bad dimension {part!r}") from exc
        if not 3 <= d <= 8:
            raise argparse.ArgumentTypeError(
                f"verification dimensions must lie in 3..8, got {d}"
            )
        out.append(d)
    if not out:
        raise argparse.ArgumentTypeError("empty dimension list")
    return tuple(out)


def _t_range(text):
    """Either a single rational or start:stop:step (inclusive endpoints)."""
    parts = text.split(":")
    if len(parts) == 1:
        return [_rational(parts[0])]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            f"range must be start:stop:step with rational parts, got {text!r}"
        )
    start, stop, step = (_rational(p) for p in parts)
    if step <= 0:
        raise argparse.ArgumentTypeError("range step must be positive")
    if stop < start:
        raise argparse.ArgumentTypeError("range stop is below start")
    values = []
    v = start
    while v <= stop:
        values.append(v)
        v += step
    return values


def _default_seed():
    raw = os.environ.get("PINCH_SEED", "0")
    try:
        return _seed(raw)
    except argparse.ArgumentTypeError:
        return 0


def _epsilon_payload(n, t):
    eps = proof.threshold(n, t)
    requires = t > Fraction(-1, 2)
    branch = "t > -1/2" if requires else ("t = -1/2" if t == Fraction(-1, 2) else "t < -1/2")
    note = "Bach-flat case" if (n, t) == (4, Fraction(-1, 3)) else ""
    return {
        "n": n,
        "t": frac_str(t),
        "epsilon": frac_str(eps),
        "branch": branch,
        "requires_constant_R": requires,
        "note": note,
    }


def cmd_epsilon(args):
    payload = _epsilon_payload(args.n, args.t)
    if args.json:
        print(json.dumps(payload, sort_keys=True))
        return 0
    line = f"epsilon = {payload['epsilon']}"
    if payload["requires_constant_R"]:
        line += ", requires R = const"
    if payload["note"]:
        line += f", {payload['note']}"
    print(line)
    return 0


def cmd_certify(args):
    cert = proof.theorem_lookup(args.n, args.t)
    if not cert.check():
        print("certificate self-check failed", file=sys.stderr)
        return 1
    text = cert.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_table(args):
    rows = []
    for t in args.t:
        payload = _epsilon_payload(args.n, t)
        payload["excluded"] = args.n == 4 and t == Fraction(-1, 3)
        rows.append(payload)
    if args.json:
        print(json.dumps({"n": args.n, "rows": rows}, sort_keys=True))
        return 0
    print(f"n = {args.n}")
    for row in rows:
        line = f"  t = {row['t']:>8}   epsilon = {row['epsilon']}"
        if row["requires_constant_R"]:
            line += "   (requires R = const)"
        if row["excluded"]:
            line += "   (excluded)"
        print(line)
    return 0


def cmd_verify(args):
    cfg = verify.RunConfig(
        seed=args.seed,
        samples=args.samples,
        dims=args.dims,
        tol_identity=args.tol_identity,
        tol_norm=args.tol_norm,
        tol_ineq=args.tol_ineq,
        s_draws=args.s_draws,
    )
    result = verify.run_suite(args.suite, cfg)
    if args.format == "json":
        print(verify.report_json(result))
    else:
        print(verify.report_human(result))
    if args.out:
        with open(args.out, "w") as fh:
            for violation in result["violations"]:
                fh.write(json.dumps(violation, sort_keys=True) + "\n")
    return 0 if result["status"] == "pass" else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pinchcert",
        description="Exact pinching thresholds, certificates, and verification suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eps = sub.add_parser("epsilon", help="print the pinching threshold for (n, t)")
    p_eps.add_argument("--n", type=_dimension, required=True)
    p_eps.add_argument("--t", type=_rational, required=True)
    p_eps.add_argument("--json", action="store_true")
    p_eps.set_defaults(func=cmd_epsilon)

    p_cert = sub.add_parser("certify", help="emit the full certificate JSON for (n, t)")
    p_cert.add_argument("--n", type=_dimension, required=True)
    p_cert.add_argument("--t", type=_rational, required=True)
    p_cert.add_argument("--out", default=None)
    p_cert.set_defaults(func=cmd_certify)

    p_table = sub.add_parser("table", help="tabulate the threshold over a t-range")
    p_table.add_argument("--n", type=_dimension, required=True)
    p_table.add_argument("--t", type=_t_range, required=True,
                         help="single rational or start:stop:step")
    p_table.add_argument("--json", action="store_true")
    p_table.set_defaults(func=cmd_table)

    p_ver = sub.add_parser("verify", help="run a verification suite")
    p_ver.add_argument("suite", choices=["identities", "models", "inequalities", "all"])
    p_ver.add_argument("--seed", type=_seed, default=_default_seed(),
                       help="defaults to PINCH_SEED or 0; the flag wins")
    p_ver.add_argument("--samples", type=int, default=400,
                       help="total sample budget, split across the dimensions")
    p_ver.add_argument("--dims", type=_dims, default=(3, 4, 5, 6))
    p_ver.add_argument("--s-draws", type=int, default=10, dest="s_draws")
    p_ver.add_argument("--tol-identity", type=float, default=1e-12, dest="tol_identity")
    p_ver.add_argument("--tol-norm", type=float, default=1e-10, dest="tol_norm")
    p_ver.add_argument("--tol-ineq", type=float, default=1e-9, dest="tol_ineq")
    p_ver.add_argument("--format", choices=["human", "json"], default="human")
    p_ver.add_argument("--out", default=None, help="write the JSONL violation stream here")
    p_ver.set_defaults(func=cmd_verify)
    return parser


def _merge_t_values(argv):
    """Rewrite "--t -1/3" as "--t=-1/3" so argparse does not read the
    negative rational (or a range like -2:1:1/2) as an option string."""
    merged = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok == "--t" and i + 1 < len(argv):
            merged.append(f"--t={argv[i + 1]}")
            i += 2
        else:
            merged.append(tok)
            i += 1
    return merged


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(_merge_t_values(list(argv)))
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
