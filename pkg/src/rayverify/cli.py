"""Command-line interface for the verification engine.

Usage examples::

    rayverify verify sinnott --quad 5 --p 7 --prec 12
    rayverify verify rays --quad 5 --ell 11 --p 5
    rayverify verify gras --quad 5 --mode scan --d 50
    rayverify verify h90 --quad 13 --ell 53
    rayverify verify annihilator --quad 79 --mode both --p 3
    rayverify explore conjecture --quad 5 --p 3 --d 18
    rayverify cache stats

Exit status: 0 when every check passes or is inconclusive, 1 when any check
fails or refutes a claim, 2 on usage or computational errors.
"""

import argparse
import json
import sys

from . import __version__
from .harness import (
    COMMANDS,
    Cache,
    EXIT_ERROR,
    resolve_discriminant,
)

#: field used when neither --quad nor --field is given
DEFAULT_QUAD = {
    "sinnott": 5,
    "rays": 5,
    "gras": 5,
    "h90": 5,
    "annihilator": 79,
    "conjecture": 5,
}

_PASSTHROUGH = ("p", "d", "ell", "prec", "modulus", "mode")


def _add_common(sp):
    sp.add_argument(
        "--quad",
        type=int,
        help="radicand or fundamental discriminant of a real quadratic field",
    )
    sp.add_argument(
        "--field",
        help="abelian field as m:a1,a2,... (fixed field of the subgroup "
        "generated by the a_i in (Z/m)^*); must be real quadratic",
    )
    sp.add_argument("--p", type=int, help="verification prime")
    sp.add_argument("--d", type=int, help="twist / ray modulus / scan bound")
    sp.add_argument("--ell", type=int, help="auxiliary prime")
    sp.add_argument("--prec", type=int, help="p-adic digits to compare")
    sp.add_argument("--modulus", type=int, help="ray modulus")
    sp.add_argument("--mode", help="sub-mode of the command")
    sp.add_argument("--report", metavar="PATH", help="write the JSON report here")
    sp.add_argument("--cache", metavar="DIR", help="cache directory override")
    sp.add_argument("--seed", type=int, help="recorded in the report")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="rayverify",
        description="numerical verification of cyclotomic-unit and "
        "ray-class-group identities over real quadratic fields",
    )
    ap.add_argument(
        "--version", action="version", version="rayverify " + __version__
    )
    sub = ap.add_subparsers(dest="verb", required=True)
    v = sub.add_parser("verify", help="run a verification command")
    v.add_argument(
        "target", choices=["sinnott", "rays", "gras", "h90", "annihilator"]
    )
    _add_common(v)
    e = sub.add_parser("explore", help="run an exploratory comparison")
    e.add_argument("target", choices=["conjecture"])
    _add_common(e)
    c = sub.add_parser("cache", help="manage the certificate cache")
    c.add_argument("op", choices=["clear", "stats"])
    c.add_argument("--cache", metavar="DIR", help="cache directory override")
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.verb == "cache":
            cache = Cache(args.cache)
            if args.op == "clear":
                print("removed %d entries from %s" % (cache.clear(), cache.root))
            else:
                print(json.dumps(cache.stats(), indent=2, sort_keys=True))
            return 0
        if args.quad is None and args.field is None:
            args.quad = DEFAULT_QUAD[args.target]
        D = resolve_discriminant(args.quad, args.field)
        runner = COMMANDS[(args.verb, args.target)]
        opts = {
            k: v
            for k, v in vars(args).items()
            if k in _PASSTHROUGH and v is not None
        }
        if (args.verb, args.target) == ("verify", "annihilator"):
            opts["cache"] = Cache(args.cache)
        report = runner(D, **opts)
        report["seed"] = args.seed
        for check in report["checks"]:
            print("[%s] %s (%.2fs)" % (check["status"], check["name"], check["elapsed"]))
        s = report["summary"]
        print(
            "%s on discriminant %d: %d pass, %d fail, %d inconclusive, "
            "%d falsifies-paper"
            % (
                report["command"],
                D,
                s["pass"],
                s["fail"],
                s["inconclusive"],
                s["falsifies-paper"],
            )
        )
        if args.report:
            with open(args.report, "w") as fh:
                json.dump(report, fh, indent=2, sort_keys=True)
            print("report written to %s" % args.report)
        return report["exit_status"]
    except Exception as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
