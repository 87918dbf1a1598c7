"""Command-line interface: ``t3 <command> ...``.

Exit codes: 0 success, 1 usage or input error, 2 internal inconsistency
(two independent computations disagreed).
"""

import argparse
import json
import random
import sys

from .diagram import (
    DiagramSyntaxError,
    DiagramValidationError,
    builtin_example,
    parse_diagram,
    serialize_diagram,
)
from .fox import TwistCharacter
from .invariants import render_polynomial, twisted_alexander
from .moves import (
    DEFAULT_VARIANTS,
    VARIANTS,
    MoveError,
    parse_log,
    replay,
    scramble,
    serialize_log,
)
from .presentation import (
    InconsistencyError,
    build_presentation,
    first_homology,
    homology_class,
    tietze_simplify,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _read(path):
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path):
    return parse_diagram(_read(path))


def _write(path, text):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True)


def _parse_twist(spec, torsion):
    assignment = {}
    for item in spec.split(","):
        f, sep, e = item.partition("=")
        if not sep:
            raise UsageError(f"bad --twist item {item!r}, expected f=e")
        try:
            f, e = int(f), int(e)
        except ValueError:
            raise UsageError(f"bad --twist item {item!r}, expected integers") from None
        if f in assignment:
            raise UsageError(f"factor {f} given twice; repeated factors are not supported")
        assignment[f] = e
    try:
        return TwistCharacter.from_factors(torsion, assignment)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _moves_arg(text):
    if text == "r":
        return DEFAULT_VARIANTS
    if text == "all":
        return VARIANTS
    names = tuple(text.split(","))
    bad = [n for n in names if n not in VARIANTS]
    if bad:
        raise UsageError(f"unknown move variant(s): {', '.join(bad)}")
    return names


def _signature(d):
    h = first_homology(d)
    classes = tuple(homology_class(d, i).as_tuple() for i in range(len(d.components)))
    delta = twisted_alexander(d).canonical
    return classes, (h.free_rank, h.torsion), delta


# ---------------------------------------------------------------------------
# commands

def cmd_validate(args, out):
    d = _load(args.file)
    out.append(f"valid: {len(d.components)} component(s), {len(d.crossings)} crossing(s), "
               f"{d.count('x')} x-puncture(s), {d.count('y')} y-puncture(s), "
               f"{d.count('z')} vertex(es)")


def cmd_example(args, out):
    try:
        text = serialize_diagram(builtin_example(args.name))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.output:
        _write(args.output, text)
    else:
        out.append(text.rstrip("\n"))


def cmd_group(args, out):
    d = _load(args.file)
    p = build_presentation(d)
    if not args.raw:
        p = tietze_simplify(p)
    out.append(_dump(p.to_json()) if args.json else p.render())


def cmd_homology(args, out):
    d = _load(args.file)
    h = first_homology(d)
    if args.json:
        out.append(_dump(h.to_json()))
    else:
        classes = ", ".join(str(c) for c in h.classes)
        out.append(f"H1 = {h.render()}; classes: {classes}")


def cmd_alexander(args, out):
    d = _load(args.file)
    sigma = None
    if args.twist:
        sigma = _parse_twist(args.twist, first_homology(d).torsion)
    res = twisted_alexander(d, sigma, collapse=not args.multivar)
    if args.json:
        out.append(_dump(res.to_json()))
    else:
        name = "Delta" if sigma is None or sigma.is_trivial() else "Delta^sigma"
        out.append(f"{name} = {render_polynomial(res.canonical)}")


def cmd_scramble(args, out):
    d = _load(args.file)
    if args.steps < 0:
        raise UsageError("--steps must be nonnegative")
    result, log = scramble(d, args.seed, args.steps, _moves_arg(args.moves))
    text = serialize_diagram(result)
    if args.output:
        _write(args.output, text)
    else:
        out.append(text.rstrip("\n"))
    if args.log:
        _write(args.log, serialize_log(log))


def cmd_verify(args, out):
    d = _load(args.file)
    ref = _signature(d)
    if args.replay:
        try:
            moves = parse_log(_read(args.replay))
            result = replay(d, moves)
        except MoveError as exc:
            raise UsageError(f"replay failed: {exc}") from None
        if _signature(result) != ref:
            out.append("replay: NOT invariant-stable")
            out.append(serialize_log(moves).rstrip("\n"))
            return 2
        out.append("replay: invariant-stable")
        return 0
    if args.trials < 0 or args.steps < 0:
        raise UsageError("--trials and --steps must be nonnegative")
    variants = _moves_arg(args.moves)
    rng = random.Random(args.seed)
    for i in range(args.trials):
        seed = rng.randrange(2 ** 32)
        result, log = scramble(d, seed, args.steps, variants)
        if _signature(result) != ref:
            out.append(f"{i}/{args.trials} invariant-stable; trial {i + 1} (seed {seed}) failed:")
            out.append(serialize_log(log).rstrip("\n"))
            return 2
    out.append(f"{args.trials}/{args.trials} invariant-stable")
    return 0


def build_parser():
    p = _Parser(prog="t3", description="Invariants of links in the 3-torus.")
    sub = p.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("validate", help="check a T3D file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("example", help="print a built-in diagram")
    s.add_argument("name")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_example)

    s = sub.add_parser("group", help="fundamental-group presentation")
    s.add_argument("file")
    s.add_argument("--raw", action="store_true", help="skip Tietze simplification")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_group)

    s = sub.add_parser("homology", help="first homology of the complement")
    s.add_argument("file")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("alexander", help="(twisted) Alexander polynomial")
    s.add_argument("file")
    s.add_argument("--twist", help="torsion character, e.g. 2=1")
    s.add_argument("--multivar", action="store_true", help="do not collapse to one variable")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_alexander)

    s = sub.add_parser("scramble", help="apply seeded random moves")
    s.add_argument("file")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--steps", type=int, required=True)
    s.add_argument("--moves", default="r", help="'r' (R1-R5, default), 'all', or a list")
    s.add_argument("-o", "--output")
    s.add_argument("--log")
    s.set_defaults(func=cmd_scramble)

    s = sub.add_parser("verify", help="check invariants are stable under scrambling")
    s.add_argument("file")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=20)
    s.add_argument("--steps", type=int, default=30)
    s.add_argument("--moves", default="r", help="'r' (R1-R5, default), 'all', or a list")
    s.add_argument("--replay", help="replay a move log instead of scrambling")
    s.set_defaults(func=cmd_verify)
    return p


def run(argv):
    """Run a command; returns (exit code, stdout text, stderr text)."""
    out = []
    try:
        args = build_parser().parse_args(argv)
        code = args.func(args, out) or 0
    except UsageError as exc:
        return 1, "", str(exc)
    except (DiagramSyntaxError, DiagramValidationError, MoveError) as exc:
        return 1, "", f"error: {exc}"
    except InconsistencyError as exc:
        return 2, "\n".join(out), f"internal inconsistency: {exc}"
    return code, "\n".join(out), ""


def main(argv=None):
    code, text, err = run(sys.argv[1:] if argv is None else argv)
    if text:
        print(text)
    if err:
        print(err, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
