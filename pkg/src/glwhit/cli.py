"""Command-line front end: batch computations, example verification, JSON I/O.

All output is JSON on standard output (rationals as "p/q" strings, key order
fixed by construction).  Exit codes: 0 success, 2 domain errors (with a
structured error object), 64 usage errors.  Partitions and diagonal entries
are comma-separated on the command line; full matrices come from JSON files.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import suites
from .errors import DomainError
from .exactlin import QMatrix, jordan_type, parse_rat, rat_str
from .gln import LieElement, jordan_matrix, neutral_h
from .grading import heisenberg_data
from .partitions import Composition, Partition, dominance_leq
from .whittaker import (WhittakerPair, build_chain, critical_numbers,
                        search_perturbation)
from .glmain import construct
from .principal import plroot_system, principal_dominator
from .mirabolic import final_stage_shape, hom_split_check, verify_suite


def _emit(obj):
    print(json.dumps(obj, indent=2))


def _ints(text):
    return tuple(int(p) for p in text.split(","))


def _rats(text):
    return [parse_rat(p) for p in text.split(",")]


def _load_matrix(path) -> LieElement:
    with open(path) as fh:
        return LieElement(QMatrix.from_json(json.load(fh)))


def _load_pair(path) -> WhittakerPair:
    with open(path) as fh:
        data = json.load(fh)
    return WhittakerPair(LieElement(QMatrix.from_json(data["S"])),
                         LieElement(QMatrix.from_json(data["f"])))


def _print_sweep(name, summary):
    row = {"suite": name, "ok": summary["ok"]}
    for key in ("n_max", "pairs", "cases"):
        if key in summary:
            row[key] = summary[key]
    _emit(summary)
    line = "  ".join(f"{k}={v}" for k, v in row.items())
    print(line, file=sys.stderr)
    return 0 if summary["ok"] else 1


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_orbit_order(args):
    if args.sweep:
        return _print_sweep("orbit-order", suites.sweep_orbit_order(args.sweep))
    mu, lam = Partition(_ints(args.mu)), Partition(_ints(args.lam))
    _emit({"mu": list(mu.parts), "lam": list(lam.parts),
           "leq": dominance_leq(mu, lam)})
    return 0


def _cmd_jordan_type(args):
    x = _load_matrix(args.matrix)
    _emit({"type": list(jordan_type(x.matrix).parts)})
    return 0


def _cmd_critical(args):
    s = LieElement.diagonal(_rats(args.s))
    z = LieElement.diagonal(_rats(args.z))
    _emit({"critical": [rat_str(t) for t in critical_numbers(s, z)]})
    return 0


def _cmd_chain(args):
    if args.sweep:
        return _print_sweep("chain", suites.sweep_chain(args.sweep))
    if args.example:
        chain = (suites.glsame_chain() if args.example == "glsame"
                 else suites.glsmall_chain())
    else:
        if not (args.pair and args.pair_tilde):
            raise _Usage("chain needs --example or --pair/--pair-tilde")
        pair = _load_pair(args.pair)
        pair_tilde = _load_pair(args.pair_tilde)
        f_prime = _load_matrix(args.f_prime) if args.f_prime else None
        if f_prime is None and args.search:
            f_prime = search_perturbation(pair, pair_tilde).f_prime
        chain = build_chain(pair, pair_tilde, f_prime)
    out = chain.to_json()
    out["all_certificates_pass"] = chain.all_certificates_pass
    _emit(out)
    return 0 if chain.all_certificates_pass else 1


def _cmd_glmain(args):
    if args.sweep:
        return _print_sweep("glmain", suites.sweep_glmain(args.sweep))
    wit = construct(Partition(_ints(args.lam)), Partition(_ints(args.mu)))
    _emit(wit.to_json())
    return 0


def _cmd_deligne(args):
    if args.sweep:
        return _print_sweep("deligne", suites.sweep_deligne(args.sweep))
    from .grading import deligne_filtration, weight_filtration
    eta = Partition(_ints(args.eta))
    e = LieElement(jordan_matrix(eta).matrix.transpose())
    space = deligne_filtration(e, args.k)
    _emit({"eta": list(eta.parts), "k": args.k, "dim": space.dim,
           "equals_weight_filtration":
               space == weight_filtration(neutral_h(eta), args.k)})
    return 0


def _cmd_heisenberg(args):
    if args.sweep:
        return _print_sweep("heisenberg", suites.sweep_heisenberg(args.sweep))
    e = jordan_matrix(Partition(_ints(args.eta)))
    z = LieElement.diagonal(_rats(args.z)) if args.z else None
    data = heisenberg_data(e, z)
    out = data.to_json()
    out["all_checks_pass"] = data.all_checks_pass()
    _emit(out)
    return 0 if data.all_checks_pass() else 1


def _cmd_principal(args):
    if args.sweep:
        return _print_sweep("principal", suites.sweep_principal(args.sweep))
    eta = Partition(_ints(args.eta))
    f = jordan_matrix(eta)
    s = neutral_h(eta)
    if args.z:
        s = s + LieElement.diagonal(_rats(args.z))
    pair = WhittakerPair(s, f)
    rs = plroot_system(pair)
    out = rs.to_json()
    out["all_pass"] = rs.all_pass
    if rs.all_pass:
        out["principal_dominator"] = [
            rat_str(x) for x in principal_dominator(pair).diagonal_entries()]
    _emit(out)
    return 0 if rs.all_pass else 1


def _cmd_mirabolic(args):
    if args.sweep:
        return _print_sweep("mirabolic", suites.sweep_mirabolic(args.sweep))
    eta = Composition(_ints(args.eta))
    report = verify_suite(eta)
    report["final_stage_dim"] = final_stage_shape(eta).dim
    hom = hom_split_check(eta)
    report["hom_split_all"] = hom["all"]
    _emit(report)
    return 0 if report["all"] else 1


def _cmd_verify_examples(args):
    report = suites.verify_reference_examples()
    _emit(report)
    return 0 if report["all"] else 1


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(64, f"{self.prog}: error: {message}\n")


def _build_parser():
    parser = _Parser(prog="glwhit",
                     description="Exact linear-algebra toolkit for nilpotent "
                                 "orbit degenerations and deformation chains.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("orbit-order", help="dominance order on partitions")
    p.add_argument("--mu", help="comma-separated partition")
    p.add_argument("--lam", help="comma-separated partition")
    p.add_argument("--sweep", type=int, metavar="N",
                   help="verify dominance <=> rank sequences for all n <= N")
    p.set_defaults(func=_cmd_orbit_order)

    p = sub.add_parser("jordan-type", help="Jordan type of a nilpotent matrix")
    p.add_argument("--matrix", required=True, help="JSON matrix file")
    p.set_defaults(func=_cmd_jordan_type)

    p = sub.add_parser("critical", help="critical numbers of S_t = S + tZ")
    p.add_argument("--s", required=True, help="diagonal of S (rationals)")
    p.add_argument("--z", required=True, help="diagonal of Z (rationals)")
    p.set_defaults(func=_cmd_critical)

    p = sub.add_parser("chain", help="deformation chain with certificates")
    p.add_argument("--example", choices=["glsame", "glsmall"],
                   help="run a built-in gl_4 example")
    p.add_argument("--pair", help="JSON file with {S, f}")
    p.add_argument("--pair-tilde", help="JSON file with {S, f} for the target")
    p.add_argument("--f-prime", help="JSON matrix file for the perturbation")
    p.add_argument("--search", action="store_true",
                   help="search for a perturbation when none is supplied")
    p.add_argument("--sweep", type=int, metavar="N",
                   help="run the exhaustive chain suite for n <= N")
    p.set_defaults(func=_cmd_chain)

    p = sub.add_parser("glmain", help="degeneration witness for mu <= lam")
    p.add_argument("--lam", help="comma-separated partition")
    p.add_argument("--mu", help="comma-separated partition")
    p.add_argument("--sweep", type=int, metavar="N",
                   help="construct witnesses for all dominated pairs, n <= N")
    p.set_defaults(func=_cmd_glmain)

    p = sub.add_parser("deligne", help="canonical filtration of a nilpotent")
    p.add_argument("--eta", help="comma-separated partition")
    p.add_argument("--k", type=int, help="filtration degree")
    p.add_argument("--sweep", type=int, metavar="N",
                   help="compare against weight filtrations for all n <= N")
    p.set_defaults(func=_cmd_deligne)

    p = sub.add_parser("heisenberg", help="Heisenberg quotient data")
    p.add_argument("--eta", help="comma-separated partition")
    p.add_argument("--z", help="optional diagonal of a commuting Z")
    p.add_argument("--sweep", type=int, metavar="N",
                   help="check all nonzero nilpotent types for n <= N")
    p.set_defaults(func=_cmd_heisenberg)

    p = sub.add_parser("principal", help="regularized simple system report")
    p.add_argument("--eta", help="comma-separated partition (f = J_eta)")
    p.add_argument("--z", help="optional diagonal added to the neutral S")
    p.add_argument("--sweep", type=int, metavar="N",
                   help="run the exhaustive principal suite for n <= N")
    p.set_defaults(func=_cmd_principal)

    p = sub.add_parser("mirabolic", help="stabilizer-subalgebra stage checks")
    p.add_argument("--eta", help="comma-separated composition, length >= 2")
    p.add_argument("--sweep", type=int, metavar="N",
                   help="run all compositions of 2..N")
    p.set_defaults(func=_cmd_mirabolic)

    p = sub.add_parser("verify-paper-examples",
                       help="re-run the built-in worked examples against "
                            "their frozen expected outputs")
    p.set_defaults(func=_cmd_verify_examples)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _Usage as exc:
        print(f"glwhit: error: {exc}", file=sys.stderr)
        return 64
    except DomainError as exc:
        _emit({"error": {"type": type(exc).__name__, "message": str(exc)}})
        return 2


if __name__ == "__main__":
    sys.exit(main())
