"""``teamsem`` command line: parse, evaluate, denote, run law suites, separate.

Exit status: 0 pass, 1 semantic negative, 2 operational error, 3 no witness.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .algebra import denote, normal_form, render_normal_form
from .errors import NoWitness, TeamsemError
from .evaluation import Bounds, EvalContext, bind, resolve_constants, satisfies, truth_value
from .laws import DEFAULT_SEED, SUITES, full_abstraction_witness, run_suite
from .model import Structure, Team
from .parser import ParseError, parse, to_text
from .syntax import classify, free_vars

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR, EXIT_NO_WITNESS = 0, 1, 2, 3


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-s", "--structure", metavar="PATH", help="structure JSON file")
    common.add_argument("--dialect", choices=("bid", "dependence"), default="bid",
                        help="'dependence' reads \\/ as the split disjunction *")
    common.add_argument("--max-fn", type=int, default=Bounds.max_fn, metavar="N",
                        help="choice functions tried per existential (default %(default)s)")
    common.add_argument("--max-teams", type=int, default=Bounds.max_teams, metavar="N",
                        help="hypothetical teams tried per -* (default %(default)s)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for sampled sweeps")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--unicode", action="store_true", help="print formulas with logical symbols")

    formula = argparse.ArgumentParser(add_help=False)
    formula.add_argument("-f", "--formula", metavar="TEXT")
    formula.add_argument("--formula-file", metavar="PATH")

    p = argparse.ArgumentParser(prog="teamsem", description="Team semantics for dependence logic with BI connectives.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("parse", parents=[common, formula], help="syntax check and pretty-print")

    sp = sub.add_parser("eval", parents=[common, formula], help="does a team satisfy a formula")
    sp.add_argument("-t", "--team", metavar="PATH", required=True, help="team JSON file")

    sp = sub.add_parser("denote", parents=[common, formula], help="lower set of teams satisfying a formula")
    sp.add_argument("--vars", metavar="X,Y,...", help="variable set (default: free variables)")
    sp.add_argument("--normal-form", action="store_true", help="also print the join-of-tensors normal form")

    sp = sub.add_parser("laws", parents=[common], help="run a law suite")
    sp.add_argument("suite", help="one of: " + ", ".join(SUITES))
    sp.add_argument("--depth", type=int, default=3, help="formula depth for sweeps")
    sp.add_argument("--cap", type=int, default=1000, help="formulas per depth and scope before sampling")
    sp.add_argument("--sample", type=int, default=4096, help="random teams for |A|=3 dependency suites")

    sp = sub.add_parser("fullabs", parents=[common], help="separate two formulas by a context")
    sp.add_argument("phi")
    sp.add_argument("psi")
    sp.add_argument("-o", "--out-dir", default=".", metavar="DIR", help="where witness files go")
    return p


def _bounds(args) -> Bounds:
    if args.max_fn <= 0 or args.max_teams <= 0:
        raise UsageError("bounds must be positive")
    return Bounds(max_fn=args.max_fn, max_teams=args.max_teams)


def _structure(args, required: bool = True) -> Structure | None:
    if args.structure is None:
        if required:
            raise UsageError("a structure is required (-s PATH)")
        return None
    return Structure.load(args.structure)


def _formula_text(args) -> str:
    if args.formula is not None:
        if args.formula_file is not None:
            print("warning: both -f and --formula-file given; using -f", file=sys.stderr)
        return args.formula
    if args.formula_file is not None:
        return Path(args.formula_file).read_text()
    raise UsageError("a formula is required (-f TEXT or --formula-file PATH)")


def _parse(text: str, args, structure: Structure | None):
    consts = structure.constants if structure is not None else ()
    return parse(text, constants=consts, dialect=args.dialect)


def _emit(args, doc: dict, text: str) -> None:
    print(json.dumps(doc, indent=2) if args.json else text)


def cmd_parse(args) -> int:
    structure = _structure(args, required=False)
    f = _parse(_formula_text(args), args, structure)
    frag = classify(f)
    doc = {"formula": to_text(f, args.unicode), "fragment": frag.label,
           "free_variables": sorted(free_vars(f))}
    _emit(args, doc, f"{doc['formula']}\nfragment: {frag.label}\nfree variables: "
                     f"{', '.join(doc['free_variables']) or '(none)'}")
    return EXIT_OK


def cmd_eval(args) -> int:
    structure = _structure(args)
    team = Team.load(args.team)
    f = _parse(_formula_text(args), args, structure)
    ctx = EvalContext(structure, team.domain, _bounds(args))
    ok = satisfies(ctx, team, f)
    doc = {"formula": to_text(bind(ctx, f), args.unicode), "team": team.to_json(), "satisfied": ok}
    _emit(args, doc, "satisfied" if ok else "not satisfied")
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_denote(args) -> int:
    structure = _structure(args)
    bounds = _bounds(args)
    f = _parse(_formula_text(args), args, structure)
    if args.vars is not None:
        variables = sorted({v.strip() for v in args.vars.split(",") if v.strip()})
    else:
        variables = sorted(free_vars(resolve_constants(f, structure, ())))
    u = denote(structure, variables, f, bounds)
    doc = {"formula": to_text(f, args.unicode), "variables": variables,
           "maximal": u.to_json(), "members": len(u)}
    lines = [f"variables: {', '.join(variables) or '(none)'}",
             f"maximal teams ({len(u.maximal)}):"]
    lines += [f"  {t!r}" for t in u.sorted_maximal()] or ["  ∅"]
    lines.append(f"members: {len(u)}")
    if args.normal_form:
        nf = normal_form(u)
        doc["normal_form"] = [[list(map(list, a)) for a in row] for row in nf]
        lines.append("normal form: " + render_normal_form(nf, args.unicode))
    if not variables and not free_vars(resolve_constants(f, structure, ())):
        value = truth_value(structure, f, bounds)
        doc["truth_value"] = value.name
        lines.append(f"truth value: {value.name} ({value.value})")
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def cmd_laws(args) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    structure = _structure(args, required=False)
    report = run_suite(args.suite, structure, seed=args.seed, bounds=_bounds(args),
                       depth=args.depth, cap=args.cap, sample=args.sample)
    report.seed = args.seed
    _emit(args, report.to_json(), report.to_text())
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def cmd_fullabs(args) -> int:
    structure = _structure(args)
    phi = _parse(args.phi, args, structure)
    psi = _parse(args.psi, args, structure)
    sep = full_abstraction_witness(structure, phi, psi, _bounds(args))
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = {
        "structure": out / "fullabs-structure.json",
        "witness": out / "fullabs-witness.json",
        "context_phi": out / "fullabs-context-phi.txt",
        "context_psi": out / "fullabs-context-psi.txt",
        "report": out / "fullabs-report.json",
    }
    sep.structure.dump(files["structure"])
    sep.witness.dump(files["witness"])
    files["context_phi"].write_text(to_text(sep.context) + "\n")
    files["context_psi"].write_text(to_text(sep.context_psi) + "\n")
    files["report"].write_text(sep.report.dumps() + "\n")
    doc = sep.report.to_json() | {"context": sep.hole_context, "relation": sep.relation,
                                  "files": {k: str(v) for k, v in files.items()}}
    text = "\n".join([f"witness team: {sep.witness!r}",
                      f"context: {sep.hole_context}   ({sep.relation} = rel(T) over {', '.join(sep.order)})",
                      sep.report.to_text(),
                      "wrote " + ", ".join(str(v) for v in files.values())])
    _emit(args, doc, text)
    return EXIT_OK if sep.report.passed else EXIT_NEGATIVE


COMMANDS = {"parse": cmd_parse, "eval": cmd_eval, "denote": cmd_denote,
            "laws": cmd_laws, "fullabs": cmd_fullabs}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ParseError as e:
        print(e.render(), file=sys.stderr)
    except NoWitness as e:
        print(f"no witness: {e}", file=sys.stderr)
        return EXIT_NO_WITNESS
    except (TeamsemError, UsageError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
