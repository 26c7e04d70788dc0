"""Command-line interface.

Exit codes: 0 success, 1 a verification ran and failed, 2 invalid input,
3 a size cap was exceeded.
"""

from __future__ import annotations

import argparse
import sys
from typing import TextIO

from .arc_algebra import ALGEBRA_CAP, ArcAlgebra, tangle_bimodule
from .diagram import DiagramError
from .gluing import glue_verify
from .handles import (CABLE_CAP, HandleScopeError, attach_2_handle, attach_3_handle, attach_4_handle,
                      one_handle_report)
from .khovanov import CROSSING_CAP, CapExceeded, jones, kh, laurent_text
from .linalg import Field, GradedVectorSpace
from .report import dims_result, envelope, render, save_figure
from .textio import load_json, parse_module, parse_relations, read_diagram
from .tqft import THEORIES, FrobeniusSpec

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    """Raises instead of exiting so that ``run`` can be called in-process."""

    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {v}")
    return v


def _field(text: str) -> Field:
    try:
        return Field.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--theory", default="khovanov", choices=sorted(THEORIES))
    common.add_argument("--field", default=Field(2), type=_field, help="2, GF(p) or Q (default 2)")
    common.add_argument("--format", default="human", choices=("human", "machine"))
    common.add_argument("--threads", default=1, type=_positive)
    common.add_argument("--crossing-cap", default=CROSSING_CAP, type=_positive)
    common.add_argument("--matching-cap", default=ALGEBRA_CAP, type=_positive,
                        help="largest boundary size n for arc algebras H^n")
    common.add_argument("--cable-cap", default=CABLE_CAP, type=_positive)
    common.add_argument("--figure", metavar="PATH", help="write a bigraded dimension plot")

    p = _Parser(prog="lasagna", description="Khovanov homology, arc algebras and handle "
                                           "attachments for skein lasagna modules.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    s = sub.add_parser("kh", parents=[common], help="homology of a closed diagram")
    s.add_argument("file")
    s = sub.add_parser("jones", parents=[common], help="Jones polynomial of a closed diagram")
    s.add_argument("file")
    s = sub.add_parser("arc-algebra", parents=[common], help="the arc algebra H^n")
    s.add_argument("--n", type=int, required=True)
    s = sub.add_parser("bimodule", parents=[common], help="bimodule of an (m,n)-tangle")
    s.add_argument("file")
    s = sub.add_parser("glue-check", parents=[common],
                       help="compare a glued link with the tensor product of its halves")
    s.add_argument("--upper", required=True, help="(0,n)-tangle")
    s.add_argument("--lower", required=True, help="(n,0)-tangle")
    s = sub.add_parser("handle1", parents=[common], help="HH0 of an (n,n)-tangle bimodule")
    s.add_argument("--tangle", required=True)
    s = sub.add_parser("handle2", parents=[common], help="truncated 2-handle presentation")
    s.add_argument("--link", required=True, help="ambient closed diagram")
    s.add_argument("--knot", required=True, help="attaching knot")
    s.add_argument("--framing", type=int, default=None, help="overrides the knot file")
    s.add_argument("--max-cable", type=int, default=2)
    s = sub.add_parser("handle3", parents=[common], help="quotient by 3-handle relations")
    s.add_argument("--module", required=True)
    s.add_argument("--relations", required=True)
    s = sub.add_parser("handle4", parents=[common], help="4-handle (identity)")
    s.add_argument("--module", help="default: the ground field in bidegree (0,0)")
    s = sub.add_parser("selftest", parents=[common], help="run the acceptance criteria")
    s.add_argument("--only", type=int, nargs="*", help="criterion numbers")
    return p


def _check_n(n: int, cap: int) -> None:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > cap:
        raise CapExceeded("boundary size n", n, cap, "raise --matching-cap")


def _execute(args) -> tuple[dict, GradedVectorSpace | None, int]:
    spec = FrobeniusSpec.named(args.theory, args.field)
    cap = args.crossing_cap
    cmd = args.command
    if cmd == "kh":
        d = read_diagram(args.file)
        v = kh(d, spec, cap, args.threads)
        res = dims_result(v)
        res.update(crossings=d.n_crossings, writhe=d.writhe,
                   euler=[[q, c] for q, c in sorted(v.euler_characteristic().items())])
        return res, v, EXIT_OK
    if cmd == "jones":
        p = jones(read_diagram(args.file), cap)
        return {"jones": laurent_text(p), "coefficients": [[k, c] for k, c in sorted(p.items())]}, None, EXIT_OK
    if cmd == "arc-algebra":
        _check_n(args.n, args.matching_cap)
        alg = ArcAlgebra(args.n, spec, args.matching_cap)
        units = not alg.check_units()
        assoc = not alg.check_associativity()
        v = alg.dims
        res = {"n": args.n, "dims": v.to_records(), "total": v.total, "units": units,
               "associative": assoc}
        return res, v, EXIT_OK if units and assoc else EXIT_FAILED
    if cmd == "bimodule":
        d = read_diagram(args.file)
        _check_n(max(d.m, d.n) // 2, args.matching_cap)
        B = tangle_bimodule(d, spec, check=False, cap=cap, algebra_cap=args.matching_cap)
        ok = not B.check()
        v = B.dims
        return {"dims": v.to_records(), "total": v.total, "axioms": ok}, v, EXIT_OK if ok else EXIT_FAILED
    if cmd == "glue-check":
        up, low = read_diagram(args.upper), read_diagram(args.lower)
        _check_n(len(up.bottom) // 2, args.matching_cap)
        r = glue_verify(up, low, spec, cap)
        return r.to_json(), r.lhs_dims, EXIT_OK if r.passed else EXIT_FAILED
    if cmd == "handle1":
        d = read_diagram(args.tangle)
        _check_n(d.n // 2, args.matching_cap)
        r = one_handle_report(d, spec, cap, args.matching_cap)
        res = dims_result(r.dims)
        res["paths_agree"] = r.agree
        return res, r.dims, EXIT_OK if r.agree else EXIT_FAILED
    if cmd == "handle2":
        link, knot = read_diagram(args.link), read_diagram(args.knot)
        framing = knot.framing if args.framing is None else args.framing
        if framing != 0:
            raise HandleScopeError("2-handles are implemented for framing 0 only", "scope")
        pres = attach_2_handle(link, knot, args.max_cable, spec, cap, args.cable_cap, args.threads)
        res = pres.to_json()
        ok = all(pres.checks.values()) and pres.consistent()
        return res, pres.quotient_dims, EXIT_OK if ok else EXIT_FAILED
    if cmd == "handle3":
        module = parse_module(load_json(args.module))
        rels = parse_relations(load_json(args.relations), spec.field)
        v = attach_3_handle(module, rels)
        return dims_result(v), v, EXIT_OK
    if cmd == "handle4":
        module = parse_module(load_json(args.module)) if args.module else GradedVectorSpace({(0, 0): 1})
        v = attach_4_handle(module)
        return dims_result(v), v, EXIT_OK
    if cmd == "selftest":
        from .acceptance import run_all

        results = run_all(set(args.only) if args.only else None)
        ok = all(r.passed for r in results)
        return ({"criteria": [r.to_json() for r in results], "pass": ok}, None,
                EXIT_OK if ok else EXIT_FAILED)
    raise AssertionError(cmd)


def run(argv=None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        err.write(f"lasagna: error: {e}\n")
        return EXIT_INPUT
    except SystemExit as e:  # --help
        return int(e.code or 0)
    try:
        result, dims, code = _execute(args)
    except CapExceeded as e:  # before ValueError: CapExceeded subclasses it
        err.write(f"lasagna: cap exceeded: {e}\n")
        return EXIT_CAP
    except (DiagramError, ValueError, KeyError, TypeError, OSError) as e:
        err.write(f"lasagna: invalid input: {e}\n")
        return EXIT_INPUT
    report = envelope(args.command, args.theory, args.field.name, result)
    out.write(render(report, args.format))
    if args.figure and dims is not None:
        save_figure(dims, args.figure, f"{args.command} ({args.theory}, {args.field.name})")
    return code


def main() -> None:
    sys.exit(run())
