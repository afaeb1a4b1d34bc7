"""Command line interface: verify, orbit, curve, prism, dynamics.

Every file written starts with a header holding the package version and
the full run configuration.  Exit codes: 0 pass, 1 certificate failure,
2 usage or fixture error.
"""

import argparse
import csv
import io
import json
import sys

from . import __version__, blv, checks, dynamics, prism
from .algebra.bigfloat import context, decimal_str, to_bigfloat
from .algebra.quadext import QuadExt
from .algebra.rat import rat, rat_str
from .fixtures import FixtureError, use_directory
from .projgeom.boxes import box_to_json, boxes_to_svg
from .projgeom.projective import canonical_invariant, prism_invariant

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def scalar(text):
    """A rational from ``p/q``, an integer or a terminating decimal."""
    try:
        return rat(text.strip())
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _s(x, prec=256):
    if isinstance(x, bool) or x is None:
        return x
    if hasattr(x, "context"):
        return decimal_str(x)
    if isinstance(x, QuadExt):
        return str(x)
    try:
        return rat_str(x)
    except (TypeError, ValueError):
        return decimal_str(to_bigfloat(x, context(prec)))


def run_config(args):
    cfg = {}
    for k, v in sorted(vars(args).items()):
        if k == "func":
            continue
        cfg[k] = rat_str(v) if hasattr(v, "denominator") and not isinstance(v, int) else v
    return cfg


def header(args):
    return {"tool": "prismgroups", "version": __version__, "config": run_config(args)}


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", newline=""), True


def _emit(text, path):
    fh, close = _open_out(path)
    try:
        fh.write(text)
    finally:
        if close:
            fh.close()


def _comment_header(args, mark="#"):
    return f"{mark} " + json.dumps(header(args), sort_keys=True) + "\n"


# -- verify ------------------------------------------------------------------------

def cmd_verify(args):
    suites = checks.SUITES if args.suite == "all" else (args.suite,)
    results = checks.run(suites, fast=args.fast, seed=args.seed)
    passed = all(c.passed for c in results)
    report = {"header": header(args), "passed": passed, "checks": [c.to_json() for c in results]}
    _emit(json.dumps(report, indent=1) + "\n", args.out)
    if args.out not in (None, "-"):
        for c in results:
            print(f"{'PASS' if c.passed else 'FAIL'}  {c.suite:8s} {c.name}", file=sys.stderr)
    return EXIT_OK if passed else EXIT_FAIL


# -- orbit -------------------------------------------------------------------------

def cmd_orbit(args):
    if args.depth < 0 or args.depth > args.max_depth:
        raise UsageError(f"depth must lie in [0, {args.max_depth}]")
    if not (-1 < args.c < 1 and -1 < args.d < 1):
        raise UsageError("c and d must lie in (-1, 1)")
    boxes = blv.orbit(args.c, args.d, args.a, args.b, args.depth)
    if args.format == "svg":
        body = boxes_to_svg(boxes)
        head = "<!-- " + json.dumps(header(args), sort_keys=True) + " -->\n"
        _emit(head + body, args.out)
    else:
        doc = {"header": header(args), "boxes": [box_to_json(Y, w) for w, Y in boxes]}
        _emit(json.dumps(doc, indent=1) + "\n", args.out)
    return EXIT_OK


# -- curve -------------------------------------------------------------------------

def cmd_curve(args):
    if args.samples < 2:
        raise UsageError("need at least two samples")
    buf = io.StringIO()
    buf.write(_comment_header(args))
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["b", "a"])
    n = args.samples
    for k in range(1, n + 1):
        b = rat(k, n + 1)
        a = blv.duality_curve_point(b, args.c, args.d, prec=args.prec)
        w.writerow([rat_str(b), _s(a, args.prec)])
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


# -- prism -------------------------------------------------------------------------

def _invariant_json(x):
    return {"raw": _s(x), "canonical": _s(canonical_invariant(x)), "log": _s(prism_invariant(x))}


def cmd_prism(args):
    if args.nongeneric:
        p = prism.PrismParams.nongeneric(args.r, args.s)
    else:
        if args.t is None:
            raise UsageError("--t is required unless --nongeneric is given")
        p = prism.PrismParams(args.r, args.s, args.t)
    scene = prism.build_scene(p)
    ev = prism.lambda_of(p, scene)
    out = {"header": header(args), "lambda": _s(ev.lam), "classification": ev.classification,
           "trace": _s(ev.trace), "det_S": _s(prism._demote(scene.detS)),
           "first_invariant": _invariant_json(prism.first_invariant(p, scene))}
    if ev.classification == "neutral":
        out["partner_invariant"] = None
    else:
        rep = prism.partner(p, scene)
        out["partner_invariant"] = _invariant_json(rep.tau_prime)
        out["swap_verified"] = rep.swap_verified
    _emit(json.dumps(out, indent=1) + "\n", args.out)
    return EXIT_OK


# -- dynamics ----------------------------------------------------------------------

def cmd_dynamics(args):
    cfg = dynamics.DynConfig(d=args.d, prec=args.prec, max_steps=args.steps, branch=args.branch,
                             matching=args.matching, unshear=args.unshear)
    p0 = dynamics.DynPoint.from_rst(args.r, args.s, args.t)
    orbit = dynamics.iterate(p0, cfg, args.steps)
    buf = io.StringIO()
    buf.write(_comment_header(args))
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["step", "r", "s", "t", "residual"])
    w.writerows(orbit.rows())
    _emit(buf.getvalue(), args.out)
    if args.trace is not None:
        lines = [json.dumps(header(args), sort_keys=True)]
        lines += [json.dumps(tr.record(k + 1)) for k, tr in enumerate(orbit.traces)]
        if orbit.error is not None:
            lines.append(json.dumps(orbit.error.record(len(orbit.traces) + 1)))
        _emit("\n".join(lines) + "\n", args.trace)
    if orbit.error is not None:
        print(f"orbit stopped after {len(orbit.traces)} steps: {orbit.error.error}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


# -- argument parsing --------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="prismgroups", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"prismgroups {__version__}")
    ap.add_argument("--fixtures", metavar="DIR", help="read polynomial fixtures from DIR")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the verification suites")
    v.add_argument("--suite", choices=("core", "monster", "blv", "all"), default="all")
    v.add_argument("--fast", action="store_true", help="sampled mode for the slow certificates")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out", help="JSON report path (default stdout)")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("orbit", help="boxes of the morphed orbit")
    for name, default in (("c", "0"), ("d", "0"), ("a", "1"), ("b", "1")):
        o.add_argument(f"--{name}", type=scalar, default=scalar(default))
    o.add_argument("--depth", type=int, default=2)
    o.add_argument("--max-depth", type=int, default=8)
    o.add_argument("--format", choices=("json", "svg"), default="json")
    o.add_argument("--out")
    o.set_defaults(func=cmd_orbit)

    c = sub.add_parser("curve", help="sample the duality curve as CSV (b, a)")
    c.add_argument("--c", type=scalar, required=True)
    c.add_argument("--d", type=scalar, required=True)
    c.add_argument("--samples", type=int, default=20)
    c.add_argument("--prec", type=int, default=256)
    c.add_argument("--out")
    c.set_defaults(func=cmd_curve)

    p = sub.add_parser("prism", help="eigenvalue and invariant report for (r, s, t)")
    p.add_argument("--r", type=scalar, required=True)
    p.add_argument("--s", type=scalar, required=True)
    p.add_argument("--t", type=scalar)
    p.add_argument("--nongeneric", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_prism)

    d = sub.add_parser("dynamics", help="iterate the shearing map")
    d.add_argument("--r", type=scalar, default=scalar("2"))
    d.add_argument("--s", type=scalar, default=scalar("1"))
    d.add_argument("--t", type=scalar, default=scalar("1/3"))
    d.add_argument("--d", type=scalar, default=scalar("1/2"))
    d.add_argument("--steps", type=int, default=1)
    d.add_argument("--prec", type=int, default=256)
    d.add_argument("--branch", choices=(dynamics.SWAP, dynamics.PRESERVE), default=dynamics.SWAP)
    d.add_argument("--matching", choices=(dynamics.RAW, dynamics.CANONICAL), default=dynamics.RAW)
    d.add_argument("--unshear", choices=(dynamics.PROSE, dynamics.INVERSE), default=dynamics.PROSE)
    d.add_argument("--out", help="orbit CSV path (default stdout)")
    d.add_argument("--trace", nargs="?", const="-", help="JSONL trace path (stdout without a value)")
    d.set_defaults(func=cmd_dynamics)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    use_directory(args.fixtures)
    try:
        return args.func(args)
    except FixtureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        use_directory(None)


if __name__ == "__main__":
    sys.exit(main())
