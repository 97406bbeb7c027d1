"""Command-line entry point: classify, solve, reduce, verify, gen, experiment-mkds.

Exit codes: 0 on success, 1 when the instance is infeasible or the budget is
exceeded (or a verification suite fails), 2 on bad input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .classifier import classify, flat_report, human_report
from .errors import InfeasibleSource, InstanceTooLarge, MalformedInstance, MalformedRelation, ParseError, PreconditionError
from .instances import formats, generators
from .instances.model import ColoredGraph, Cnf3, DcspInstance, EvenOddSetInstance, MonotoneCircuit, NcInstance
from .relations import Language
from .solvers import (approx_ihsb, brute_force_dcsp, flat_outcome, human_outcome, nc_outcome, solve_auto,
                      solve_bijunctive, solve_linear_dcsp, solve_oddset_exact, solve_valid)
from .solvers.outcome import OPTIMAL, SolveOutcome

INPUT_ERRORS = (ParseError, MalformedInstance, MalformedRelation, PreconditionError, InstanceTooLarge,
                OSError)


class UsageError(Exception):
    pass


def _read(path, expected=None):
    obj = formats.load(path)
    if expected is not None and not isinstance(obj, expected):
        raise UsageError(f"{path}: expected a {expected.__name__} file")
    return obj


def _emit(text, out=None):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


# -- classify ------------------------------------------------------------------

def cmd_classify(args):
    language = _read(args.input, Language)
    result = classify(language)
    _emit(flat_report(result) if args.flat else human_report(result))
    return 0


# -- solve ---------------------------------------------------------------------

def _ihsb(instance, k):
    cls = classify(instance.language)
    if cls.width is None:
        raise PreconditionError(f"language is {cls.label}, not IHS-B")
    return approx_ihsb(instance, cls.width, cls.polarity, k)


DCSP_METHODS = {
    "auto": solve_auto,
    "brute": brute_force_dcsp,
    "valid": solve_valid,
    "bijunctive": solve_bijunctive,
    "ihsb": _ihsb,
    "linear": solve_linear_dcsp,
}


def _solve(obj, method, k, engine):
    if isinstance(obj, DcspInstance):
        if method not in DCSP_METHODS:
            raise UsageError(f"method {method!r} does not apply to DCSP instances")
        return DCSP_METHODS[method](obj, k), obj.variables, "deleted constraints"
    if isinstance(obj, EvenOddSetInstance):
        if method not in ("auto", "oddset"):
            raise UsageError(f"method {method!r} does not apply to Odd Set instances")
        return solve_oddset_exact(obj, k, engine or "auto"), None, "chosen elements"
    if isinstance(obj, NcInstance):
        if method not in ("auto", "nc"):
            raise UsageError(f"method {method!r} does not apply to Nearest Codeword instances")
        return nc_outcome(obj, k, engine or "syndrome"), None, "wrong coordinates"
    raise UsageError("solve takes .dcsp, .odds or .nc files")


def cmd_solve(args):
    obj = _read(args.input)
    outcome, variables, what = _solve(obj, args.method, args.k, args.engine)
    text = flat_outcome(outcome, variables) if args.flat else human_outcome(outcome, variables, what)
    _emit(text)
    return 0 if outcome.ok else 1


# -- reduce --------------------------------------------------------------------

def _edges():
    from . import reductions as r
    return {
        ("nc", "oddset"): (NcInstance, r.nc_to_oddset),
        ("evenodd", "oddset"): (EvenOddSetInstance, r.evenodd_to_odd),
        ("oddset", "b2"): (EvenOddSetInstance, r.oddset_to_dcspB2),
        ("b2", "b3"): (DcspInstance, r.dcspB2_to_dcspB3),
        ("b3", "nc"): (DcspInstance, r.dcspB3_to_nc),
        ("affine", "nc"): (DcspInstance, r.dcsp_to_nc),
        ("dcsp*", "dcsp"): (DcspInstance, r.eliminate_undeletable),
        ("dcsp", "dual"): (DcspInstance, r.dualize),
        ("circuit", "dcsp"): (MonotoneCircuit, r.mcs_to_dcsp),
        ("oddset", "squared"): (EvenOddSetInstance, r.oddset_self_improve),
        ("cnf", "oddset"): (Cnf3, None),
    }


def cmd_reduce(args):
    from .reductions import max3sat_to_oddset
    edges = _edges()
    key = (args.source, args.target)
    if key not in edges:
        known = ", ".join(f"{a}->{b}" for a, b in edges)
        raise UsageError(f"no reduction {args.source}->{args.target}; known: {known}")
    kind, build = edges[key]
    obj = _read(args.input, kind)
    try:
        if key == ("cnf", "oddset"):
            target = max3sat_to_oddset(obj, args.groups).instance
            alpha, note = 1, f"{args.groups} round-robin clause groups"
        else:
            artifact = build(obj)
            target, alpha, note = artifact.target, artifact.alpha, artifact.note
    except InfeasibleSource as exc:
        sys.stderr.write(f"infeasible source: {exc}\n")
        return 1
    formats.dump(target, args.output)
    sys.stdout.write(f"reduction={args.source}->{args.target}\nalpha={alpha}\nnote={note}\n")
    return 0


# -- verify --------------------------------------------------------------------

def cmd_verify(args):
    from .reductions.verify import MUTATION_SUITES, SUITES, run_suite
    # the mutation suites exist to fail, so 'all' leaves them out
    names = sorted(set(SUITES) - set(MUTATION_SUITES)) if args.reduction == "all" else [args.reduction]
    for name in names:
        if name not in SUITES:
            raise UsageError(f"unknown reduction suite {name!r}; known: {', '.join(sorted(SUITES))}")
    ok = True
    for name in names:
        report = run_suite(name, args.seeds, args.start)
        sys.stdout.write(report.text())
        ok = ok and report.passed
    return 0 if ok else 1


# -- gen -----------------------------------------------------------------------

def cmd_gen(args):
    kind, s = args.kind, args.seed
    if kind == "dcsp":
        if args.lang is None:
            raise UsageError("gen dcsp needs --lang")
        obj = generators.random_dcsp(_read(args.lang, Language), args.n, args.m, s,
                                     undeletable_fraction=args.undeletable_fraction)
    elif kind == "oddset":
        obj = generators.random_oddset(args.n, args.m, args.max_size, s, even_fraction=args.even_fraction)
    elif kind == "nc":
        obj = generators.random_nc(args.m, args.n, s, density=args.density)
    elif kind == "circuit":
        obj = generators.random_circuit(args.m, s, n_inputs=args.n)
    elif kind == "mkds":
        obj = generators.random_colored_graph(args.k, args.n, args.density, s)
    elif kind == "cnf":
        if args.planted:
            obj = generators.planted_satisfiable_cnf3(args.n, args.m, s)
        else:
            obj = generators.random_cnf3(args.n, args.m, s)
    else:
        raise UsageError(f"unknown kind {kind!r}")
    _emit(formats.serialize(obj), args.output)
    return 0


# -- experiment-mkds -----------------------------------------------------------

def _experiment_text(graph: ColoredGraph, result, flat):
    vertices = " ".join(str(v) for v in result["vertices"])
    if flat:
        lines = [f"edges={result['edges']}", f"vertices={vertices}", f"guesses={len(result['guesses'])}"]
        for pairs, opt, val in result["guesses"]:
            tag = ",".join(f"{i}-{j}" for i, j in pairs) or "none"
            lines.append(f"guess={tag} opt={'' if opt is None else opt} edges={'' if val is None else val}")
    else:
        lines = [f"best induced edges: {result['edges']}", f"vertices: {vertices}",
                 f"guesses tried: {len(result['guesses'])}"]
    return "\n".join(lines) + "\n"


def cmd_experiment_mkds(args):
    from .reductions.gadgets import experiment_mkds, kds_color_coding
    graph = _read(args.input, ColoredGraph)
    if args.repetitions is None:
        _emit(_experiment_text(graph, experiment_mkds(graph), args.flat))
        return 0
    k = args.k or graph.k
    best = None
    for i, colored in enumerate(kds_color_coding(graph.graph, k, args.seed, args.repetitions)):
        if any(not c for c in colored.classes):
            continue
        result = experiment_mkds(colored)
        if best is None or result["edges"] > best[1]["edges"]:
            best = (i, result)
    if best is None:
        sys.stdout.write("no coloring used every class\n")
        return 1
    i, result = best
    header = f"repetition={i}\n" if args.flat else f"best coloring: repetition {i} of {args.repetitions}\n"
    _emit(header + _experiment_text(graph, result, args.flat))
    return 0


# -- parser --------------------------------------------------------------------

def _nonnegative(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be a nonnegative integer")
    return value


def build_parser():
    p = argparse.ArgumentParser(prog="mincsp", description="Minimum-deletion Boolean CSP toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify a constraint language (.lang)")
    c.add_argument("input")
    c.add_argument("--flat", action="store_true", help="key=value output")
    c.set_defaults(run=cmd_classify)

    s = sub.add_parser("solve", help="solve a .dcsp, .odds or .nc instance")
    s.add_argument("input")
    s.add_argument("--k", type=_nonnegative, default=None, help="deletion budget")
    s.add_argument("--method", default="auto",
                   choices=sorted(set(DCSP_METHODS) | {"oddset", "nc"}))
    s.add_argument("--engine", default=None,
                   help="odd set: auto|gf2|enumerate|both; nearest codeword: syndrome|exhaustive|grouped|both")
    s.add_argument("--flat", action="store_true", help="key=value output")
    s.set_defaults(run=cmd_solve)

    r = sub.add_parser("reduce", help="apply a reduction and write the target instance")
    r.add_argument("--from", dest="source", required=True,
                   help="nc, evenodd, oddset, b2, b3, affine, dcsp*, dcsp, circuit, cnf")
    r.add_argument("--to", dest="target", required=True, help="oddset, b2, b3, nc, dcsp, dual, squared")
    r.add_argument("--groups", type=int, default=2, help="clause groups for cnf->oddset")
    r.add_argument("input")
    r.add_argument("output")
    r.set_defaults(run=cmd_reduce)

    v = sub.add_parser("verify", help="run a seeded verification suite for a reduction")
    v.add_argument("--reduction", required=True, help="suite name, or 'all' (every suite except mutations)")
    v.add_argument("--seeds", type=_nonnegative, default=50)
    v.add_argument("--start", type=_nonnegative, default=0, help="first seed")
    v.set_defaults(run=cmd_verify)

    g = sub.add_parser("gen", help="write a seeded random instance")
    g.add_argument("kind", choices=["dcsp", "oddset", "nc", "circuit", "mkds", "cnf"])
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--n", type=_nonnegative, default=8,
                   help="variables / elements / columns / inputs / vertices per class")
    g.add_argument("--m", type=_nonnegative, default=12, help="constraints / sets / rows / gates / clauses")
    g.add_argument("--k", type=_nonnegative, default=3, help="color classes (mkds)")
    g.add_argument("--lang", help="language file (dcsp)")
    g.add_argument("--max-size", type=_nonnegative, default=4, help="largest set (oddset)")
    g.add_argument("--density", type=float, default=0.5, help="matrix density (nc) or edge probability (mkds)")
    g.add_argument("--undeletable-fraction", type=float, default=0.0)
    g.add_argument("--even-fraction", type=float, default=0.0)
    g.add_argument("--planted", action="store_true", help="satisfiable formula (cnf)")
    g.add_argument("-o", "--output", help="write here instead of stdout")
    g.set_defaults(run=cmd_gen)

    e = sub.add_parser("experiment-mkds", help="densest multicolored subgraph via Odd Set gadgets")
    e.add_argument("input", help=".mkds colored graph")
    e.add_argument("--repetitions", type=_nonnegative, default=None,
                   help="ignore the given classes and try this many random colorings")
    e.add_argument("--k", type=_nonnegative, default=None, help="colors for --repetitions")
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--flat", action="store_true", help="key=value output")
    e.set_defaults(run=cmd_experiment_mkds)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except (UsageError, *INPUT_ERRORS) as exc:
        sys.stderr.write(f"mincsp {args.command}: error: {exc}\n")
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
