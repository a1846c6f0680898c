"""Command line: ``perverse-blocks <command>``.

Exit status is 0 on success, 1 when a verification suite fails and 2 on bad
input or any library error.
"""

import argparse
import logging
import os
import sys
from collections.abc import Sequence
from pathlib import Path

from perverse_blocks.blockfile import find_block_file
from perverse_blocks.brauer_tree import to_dot, to_text
from perverse_blocks.cyclo import A_of, Frac, a_of, phi, pi
from perverse_blocks.degrees import format_degree, format_param, parse_degree
from perverse_blocks.errors import PerverseBlocksError
from perverse_blocks.hecke import (
    chain_to_coxeter,
    classify_type,
    specialization_bijection,
)
from perverse_blocks.parameters import (
    NEGATIVE,
    POSITIVE,
    clear_denominators,
    reduce_kappa,
)
from perverse_blocks.partitions import parse_label
from perverse_blocks.star_algebra import decomposition_matrix, run_concrete, run_generic
from perverse_blocks.unipotent import (
    Block,
    GroupFamily,
    aA_char,
    classical_block,
    degree,
    from_block,
    pi_char,
)
from perverse_blocks.verify import SUITES, VerifySettings, run_suites

logger = logging.getLogger(__name__)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers, got {text!r}"
        ) from None


def _frac(text: str) -> Frac:
    try:
        return Frac.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _cmd_pi(args: argparse.Namespace) -> int:
    f = parse_degree(args.f)
    print(f"pi\t{pi(f, args.frac)}")
    print(f"a\t{a_of(f)}")
    print(f"A\t{A_of(f)}")
    print(f"phi\t{phi(f, args.frac)}")
    return 0


def _cmd_degree(args: argparse.Namespace) -> int:
    family = GroupFamily.parse(args.family)
    print(format_degree(degree(family, parse_label(args.label))))
    return 0


def _print_block(b: Block, fracs: Sequence[Frac]) -> None:
    print(b.describe())
    header = ["name", "degree", "aA", "param"] + [f"pi({frac})" for frac in fracs]
    print("\t".join(header))
    for i, c in enumerate(b.characters):
        exponent = -aA_char(b, i) / b.e
        shown = "-" if c.degree is None else format_degree(c.degree)
        cells = [c.name, shown, str(aA_char(b, i))]
        cells.append(format_param(c.omega, exponent))
        cells += [str(pi_char(b, i, frac)) for frac in fracs]
        print("\t".join(cells))


def _cmd_block(args: argparse.Namespace) -> int:
    family = GroupFamily.parse(args.family)
    b = classical_block(family, parse_label(args.core), args.d)
    kappas = args.kappa or [1]
    _print_block(b, [Frac(kappa, args.d) for kappa in kappas])
    if b.tree is not None:
        print("tree:")
        print(to_text(b.tree))
    return 0


def _cmd_tree(args: argparse.Namespace) -> int:
    f = find_block_file(args.block)
    tree = f.block.tree
    if tree is None:
        raise PerverseBlocksError(f"{f.name} has no tree")
    print(to_dot(tree, f.name) if args.format == "dot" else to_text(tree))
    return 0


def _cmd_algorithm(args: argparse.Namespace) -> int:
    values = args.pi
    e = args.e if args.e is not None else len(values)
    generic = run_generic(e, values)
    concrete = run_concrete(args.lbar, e, values) if args.lbar else None

    print("complexes:")
    for i, result in generic.items():
        chain = " -> ".join(f"P{j}" for j in result.projectives) or "0"
        print(f"X_{i}\tpi={result.pi}\t{chain}")
    print("cohomology:")
    for i, result in generic.items():
        cells = [f"H^-{j}={module}" for j, module in result.nonzero_cohomology()]
        print(f"X_{i}\t" + ("\t".join(cells) if cells else "-"))
    print("totals:")
    for i, result in generic.items():
        print(f"X_{i}\t" + " ".join(str(x) for x in result.alt_sum))
    print("green correspondents:")
    for i, result in generic.items():
        line = f"X_{i}\t{result.green}"
        if concrete is not None:
            line += f"\tdim={concrete[i].green_dimension}"
        print(line)
    matrix = decomposition_matrix(generic, values)
    print("decomposition matrix:")
    for i, row in enumerate(matrix.unipotent, start=1):
        print(f"chi_{i}\t" + " ".join(str(x) for x in row))
    print("exc\t" + " ".join(str(x) for x in matrix.exceptional))
    return 0


def _cmd_hecke(args: argparse.Namespace) -> int:
    f = find_block_file(args.block)
    b, frac = f.block, args.frac
    h = from_block(b)
    print(f"block\t{b.describe()}")
    print(f"parameters\t{h}")
    if all(omega in (POSITIVE, NEGATIVE) for omega, _ in h.params):
        reduced, reduced_frac = reduce_kappa(h, frac)
        cleared, cleared_frac = clear_denominators(reduced, reduced_frac)
        typed = classify_type(cleared)
        chain = chain_to_coxeter(typed)
        print(f"specialized\t{cleared} at {cleared_frac}")
        print(f"type\t({typed.s},{typed.t})")
        print(f"coxeter\t{chain.endpoint}")
        if args.chain:
            print("chain:")
            for step in chain.steps:
                print(step)
        print("pi\t" + " ".join(map(str, chain.pi())))
    else:
        print("type\tnone (parameters are not real)")
    bijection = specialization_bijection(b, frac)
    print(f"anchor\t{bijection.anchor}")
    for name in bijection.ordering():
        print(f"{bijection.offsets[name]}\t{name}\t{bijection.angles[name]}")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    settings = VerifySettings.from_env(
        seed=args.seed,
        scale=args.scale,
        workers=args.workers,
        data_dir=args.data_dir,
        include_conjectural=args.include_conjectural or None,
    )
    reports = run_suites(args.suites, settings)
    for report in reports:
        for line in report.lines():
            print(line)
        print(report.summary(), file=sys.stderr)
    return 0 if all(report.ok for report in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="perverse-blocks",
        description="perversity functions, Brauer trees and Hecke algebras "
        "for weight-1 unipotent blocks",
    )
    parser.add_argument(
        "--log-level",
        type=str.upper,
        choices=LOG_LEVELS,
        default=os.environ.get("PERVERSE_BLOCKS_LOG_LEVEL", "WARNING").upper(),
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("pi", help="pi, a, A and phi of a degree")
    p.add_argument("--f", required=True, help='degree, e.g. "q*P2^2*P6/2"')
    p.add_argument("--frac", required=True, type=_frac, help="k/d")
    p.set_defaults(run=_cmd_pi)

    p = commands.add_parser("degree", help="generic degree of a classical label")
    p.add_argument("--family", required=True, help="GL, GU, BC, D or 2D")
    p.add_argument("--label", required=True, help='"[2,1]", "{3,1}" or a symbol')
    p.set_defaults(run=_cmd_degree)

    p = commands.add_parser("block", help="a classical weight-1 block")
    p.add_argument("--family", required=True)
    p.add_argument("--core", required=True)
    p.add_argument("--d", required=True, type=int)
    p.add_argument("--kappa", type=_int_list, help="comma-separated kappa values")
    p.set_defaults(run=_cmd_block)

    p = commands.add_parser("tree", help="the Brauer tree of a block file")
    p.add_argument("block", help="bundled block name or path")
    p.add_argument("--format", choices=("text", "dot"), default="text")
    p.set_defaults(run=_cmd_tree)

    p = commands.add_parser("algorithm", help="run the star algebra algorithm")
    p.add_argument("--e", type=int)
    p.add_argument("--pi", required=True, type=_int_list)
    p.add_argument("--lbar", type=int, help="also compute dimensions at this lbar")
    p.set_defaults(run=_cmd_algorithm)

    p = commands.add_parser("hecke", help="Hecke parameters and perturbations")
    p.add_argument("--block", required=True, help="bundled block name or path")
    p.add_argument("--frac", required=True, type=_frac)
    p.add_argument("--chain", action="store_true", help="print every perturbation")
    p.set_defaults(run=_cmd_hecke)

    p = commands.add_parser("verify", help="run verification suites")
    p.add_argument("suites", nargs="+", choices=[*SUITES, "all"])
    p.add_argument("--seed", type=int)
    p.add_argument("--scale", type=float)
    p.add_argument("--workers", type=int)
    p.add_argument("--data-dir", type=Path)
    p.add_argument("--include-conjectural", action="store_true")
    p.set_defaults(run=_cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=args.log_level, format="%(levelname)s %(name)s: %(message)s"
    )
    try:
        return args.run(args)
    except ValueError as exc:
        # PerverseBlocksError and bad Frac arguments alike
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
