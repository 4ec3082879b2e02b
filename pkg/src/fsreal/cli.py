"""Command line surface.

Exit codes are the machine contract: 0 realizable / success, 1 not
realizable, 2 invalid input, 3 internal error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import formats
from .bruteforce import brute_force_continuous_1d, brute_force_discrete_1d
from .discrete import solve as solve_discrete
from .folding import solve_fpt
from .forward import compute_diagram_1d, compute_matrix, verify_witness
from .generators import PartitionInstance, gen_partition, gen_random_instance, gen_stretchability
from .model import FreeSpaceDiagram1D, FreeSpaceMatrix, Witness, rat, structural_problems
from .pseudopoly import solve_pseudo_poly
from .render import render_ascii, render_svg

EXIT_YES = 0
EXIT_NO = 1
EXIT_INVALID = 2
EXIT_INTERNAL = 3


class InputError(Exception):
    pass


def _read_instance(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    try:
        return formats.parse(text)
    except formats.FormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _write_output(text: str, path):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _cmd_forward(args) -> int:
    witness = _read_instance(args.curves)
    if not isinstance(witness, Witness):
        raise InputError("forward needs a curves file")
    eps = rat(args.eps) if args.eps is not None else witness.epsilon
    if args.as_kind == "diagram":
        instance = compute_diagram_1d(witness.curve_p, witness.curve_q, eps)
    else:
        instance = compute_matrix(witness.curve_p, witness.curve_q, eps)
    _write_output(formats.serialize(instance), args.out)
    return EXIT_YES


_SOLVERS = {
    "discrete1d": ("matrix", lambda inst: solve_discrete(inst)),
    "cont1d-fpt": ("diagram", lambda inst: solve_fpt(inst)),
    "cont1d-dp": ("diagram", lambda inst: solve_pseudo_poly(inst)),
    "brute-discrete": ("matrix", lambda inst: brute_force_discrete_1d(inst)),
    "brute-cont": ("diagram", lambda inst: brute_force_continuous_1d(inst)),
}


def _cmd_solve(args) -> int:
    instance = _read_instance(args.infile)
    want, run = _SOLVERS[args.mode]
    if want == "matrix" and not isinstance(instance, FreeSpaceMatrix):
        raise InputError(f"mode {args.mode} needs a matrix instance")
    if want == "diagram" and not isinstance(instance, FreeSpaceDiagram1D):
        raise InputError(f"mode {args.mode} needs a diagram1d instance")
    if isinstance(instance, FreeSpaceDiagram1D):
        problems = structural_problems(instance)
        if problems:
            raise InputError("invalid diagram: " + "; ".join(problems))
    try:
        witness = run(instance)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if witness is None:
        print("NO")
        return EXIT_NO
    print("YES")
    if args.witness:
        _write_output(formats.serialize(witness), args.witness)
    return EXIT_YES


def _cmd_gen(args) -> int:
    chosen = [k for k in ("partition", "stretchability", "random") if getattr(args, k) is not None]
    if len(chosen) != 1:
        raise InputError("choose exactly one of --partition / --stretchability / --random")
    if args.partition is not None:
        try:
            items = [int(v) for v in args.partition.split(",") if v.strip()]
            instance = gen_partition(PartitionInstance(items))
        except ValueError as exc:
            raise InputError(str(exc)) from None
    elif args.stretchability is not None:
        signs = _read_instance(args.stretchability)
        from .generators import SignVectorSet

        if not isinstance(signs, SignVectorSet):
            raise InputError("stretchability input must be a signvectors file")
        instance = gen_stretchability(signs)
    else:
        try:
            instance = gen_random_instance(args.random, kind=args.kind, mutate=args.mutate)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    _write_output(formats.serialize(instance), args.out)
    return EXIT_YES


def _cmd_verify(args) -> int:
    instance = _read_instance(args.instance)
    witness = _read_instance(args.witness)
    if not isinstance(witness, Witness):
        raise InputError("witness file must contain curves")
    if not isinstance(instance, (FreeSpaceMatrix, FreeSpaceDiagram1D)):
        raise InputError("instance must be a matrix or diagram1d file")
    try:
        ok = verify_witness(witness, instance)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    print("VERIFIED" if ok else "MISMATCH")
    return EXIT_YES if ok else EXIT_NO


def _cmd_render(args) -> int:
    instance = _read_instance(args.infile)
    if args.ascii:
        _write_output(render_ascii(instance), args.out)
    else:
        if args.out is None:
            raise InputError("render needs --out FILE.svg or --ascii")
        _write_output(render_svg(instance), args.out)
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fsreal", description="Free-space realizability toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    fwd = sub.add_parser("forward", help="compute a matrix/diagram from curves")
    fwd.add_argument("--curves", required=True)
    fwd.add_argument("--eps", default=None)
    fwd.add_argument("--as", dest="as_kind", choices=("matrix", "diagram"), default="matrix")
    fwd.add_argument("--out", default=None)
    fwd.set_defaults(func=_cmd_forward)

    slv = sub.add_parser("solve", help="decide realizability")
    slv.add_argument("--mode", required=True, choices=sorted(_SOLVERS))
    slv.add_argument("--in", dest="infile", required=True)
    slv.add_argument("--witness", default=None)
    slv.set_defaults(func=_cmd_solve)

    gen = sub.add_parser("gen", help="generate instances")
    gen.add_argument("--partition", default=None, metavar="A1,A2,...")
    gen.add_argument("--stretchability", default=None, metavar="SIGNS.json")
    gen.add_argument("--random", default=None, type=int, metavar="SEED")
    gen.add_argument("--kind", choices=("matrix", "diagram"), default="matrix")
    gen.add_argument("--mutate", action="store_true")
    gen.add_argument("--out", default=None)
    gen.set_defaults(func=_cmd_gen)

    ver = sub.add_parser("verify", help="check a witness against an instance")
    ver.add_argument("--instance", required=True)
    ver.add_argument("--witness", required=True)
    ver.set_defaults(func=_cmd_verify)

    ren = sub.add_parser("render", help="draw an instance or witness")
    ren.add_argument("--in", dest="infile", required=True)
    ren.add_argument("--out", default=None)
    ren.add_argument("--ascii", action="store_true")
    ren.set_defaults(func=_cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # invariant failures and bugs
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
