"""
Command-line entry point for the Kempe reconfiguration toolkit

Usage:
    python -m src.main count data/k3.json --k 3
    python -m src.main construct prop3 --k 3 --out out/prop3.json
    python -m src.main verify bipar --max-n 8
"""

import argparse
import json
import sys
from typing import List, Optional

from config import VERIFY_DEFAULTS
from src.cli_io import (
    GraphDocument,
    colorings_from_document,
    document_from,
    dump_document,
    export_dot,
    graph_from_document,
    load_document,
    save_document,
)
from src.constructions import gstarstar, pad_with_isolated, prop3_graph, prop4i_graph, prop4ii_graph
from src.errors import CapacityError, ConstructionError, InputError, InvariantError, ProvedClaimViolation
from src.graph_core import PartitionedGraph, find_coloring
from src.reconfig import are_kempe_equivalent, count_kempe_classes
from src.verify import (
    CLAIMS,
    CriticalParams,
    SearchParams,
    VerificationOutcome,
    VerifyParams,
    conjecture_search,
    critical_search,
    outcomes_frame,
    verify_theorem,
)

EXIT_OK = 0
EXIT_PROVED_FAILURE = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3

CONSTRUCTORS = {'prop3': prop3_graph, 'prop4i': prop4i_graph, 'prop4ii': prop4ii_graph}


def _load(path: str) -> GraphDocument:
    try:
        return load_document(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _plain_graph(obj):
    return obj.graph if isinstance(obj, PartitionedGraph) else obj


def _write_dot(path: Optional[str], obj, coloring=None):
    if not path:
        return
    with open(path, 'w', encoding='utf-8') as f:
        f.write(export_dot(obj, coloring))
    print(f"DOT written to: {path}", file=sys.stderr)


def _pluralize(count: int, word: str, plural: str) -> str:
    return f"{count} {word if count == 1 else plural}"


def cmd_count(args) -> int:
    doc = _load(args.file)
    obj = graph_from_document(doc)
    k = args.k or doc.k
    if k is None:
        raise InputError("palette size missing: pass --k or set k in the document")
    report = count_kempe_classes(_plain_graph(obj), k, args.cap, verbose=args.verbose)
    print(f"{_pluralize(report.num_colorings, 'coloring', 'colorings')}, "
          f"{_pluralize(report.num_classes, 'class', 'classes')}")
    if args.verbose:
        for rep, size in zip(report.representatives, report.class_sizes):
            print(f"  class of {list(rep.colors)}: {size} colorings", file=sys.stderr)
    _write_dot(args.dot, obj)
    return EXIT_OK


def cmd_equiv(args) -> int:
    doc = _load(args.file)
    obj = graph_from_document(doc)
    colorings = colorings_from_document(doc, args.k)
    for name in (args.c1, args.c2):
        if name not in colorings:
            known = ', '.join(sorted(colorings)) or 'none'
            raise InputError(f"no coloring named '{name}' (document has: {known})")
    verdict = are_kempe_equivalent(_plain_graph(obj), colorings[args.c1], colorings[args.c2], args.cap)
    print(verdict.status)
    if verdict.witness is not None:
        print(f"witness length: {len(verdict.witness)}")
    _write_dot(args.dot, obj, colorings[args.c1])
    if verdict.status == 'undecided':
        print(f"Warning: search stopped after {verdict.explored} colorings", file=sys.stderr)
        return EXIT_CAPACITY
    return EXIT_OK


def cmd_construct(args) -> int:
    if args.which == 'gss':
        if args.base is None:
            raise InputError("construct gss needs --base <file>")
        if args.pad_s or args.pad_t:
            raise InputError("padding applies to the proposition constructions only")
        gadget = gstarstar(_plain_graph(graph_from_document(_load(args.base))))
        coloring = find_coloring(gadget.gadget, 4)
        named = {'c1': coloring} if coloring is not None else None
        obj, doc = gadget.partition, document_from(gadget.partition, k=4, colorings=named)
    else:
        if args.k is None:
            raise InputError(f"construct {args.which} needs --k")
        cert = pad_with_isolated(CONSTRUCTORS[args.which](args.k), args.pad_s, args.pad_t)
        coloring = cert.c1
        obj, doc = cert.pg, document_from(cert.pg, k=cert.k, colorings={'c1': cert.c1, 'c2': cert.c2})

    if args.out:
        save_document(doc, args.out)
        print(f"Document saved to: {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(dump_document(doc))
    _write_dot(args.dot, obj, coloring)
    return EXIT_OK


def _print_outcome(outcome: VerificationOutcome, as_json: bool):
    if as_json:
        print(json.dumps(outcome.to_dict(), indent=2, sort_keys=True))
        return
    print(f"{outcome.claim}: {outcome.passed}/{outcome.tried} passed, "
          f"{len(outcome.failures)} failed, {len(outcome.skipped)} skipped")
    for note in outcome.notes:
        print(f"  note: {note}")
    for record in outcome.failures:
        print(f"  FAILED trial {record.trial}: {record.detail}")


def _dot_first_failure(path: Optional[str], outcomes: List[VerificationOutcome]):
    if not path:
        return
    for outcome in outcomes:
        for record in outcome.failures:
            if record.instance is not None:
                _write_dot(path, graph_from_document(GraphDocument.model_validate(record.instance)))
                return
    print("Warning: no failing instance to export", file=sys.stderr)


def cmd_verify(args) -> int:
    claims = list(CLAIMS) if args.claim == 'all' else [args.claim]
    params = VerifyParams(
        k=args.k, trials=args.trials, seed=args.seed, max_n=args.max_n, max_ell=args.max_ell,
        cap=args.cap, extended=args.extended, verbose=args.verbose,
    )
    outcomes = []
    for claim in claims:
        outcome = verify_theorem(claim, params)
        outcomes.append(outcome)
        _print_outcome(outcome, args.json)
    if len(outcomes) > 1 and not args.json:
        print()
        print(outcomes_frame(outcomes).to_string(index=False))
    _dot_first_failure(args.dot, outcomes)
    return EXIT_PROVED_FAILURE if any(o.failures for o in outcomes) else EXIT_OK


def cmd_search(args) -> int:
    if args.family == 'critical':
        outcome = critical_search(CriticalParams(
            k=args.k,
            max_n=args.max_n if args.max_n is not None else VERIFY_DEFAULTS['critical']['max_n'],
            cap=args.cap if args.cap is not None else VERIFY_DEFAULTS['instance_cap'],
            verbose=args.verbose,
        ))
        _print_outcome(outcome, args.json)
        _dot_first_failure(args.dot, [outcome])
        return EXIT_OK

    if args.seed is None:
        raise InputError("search over B+E_l graphs needs --seed")
    defaults = VERIFY_DEFAULTS['search']
    params = SearchParams(
        k=args.k if args.k is not None else defaults['k'],
        n_s=args.n_s, n_t=args.n_t, trials=args.trials, seed=args.seed,
        cap=args.cap if args.cap is not None else VERIFY_DEFAULTS['instance_cap'],
        max_ell=args.max_ell if args.max_ell is not None else defaults['max_ell'],
        verbose=args.verbose,
    )
    outcome = conjecture_search(params)
    _print_outcome(outcome, args.json)
    _dot_first_failure(args.dot, [outcome])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--dot', metavar='OUT', help="also export the graph as Graphviz DOT")
    common.add_argument('--verbose', action='store_true', help="progress output on stderr")

    parser = argparse.ArgumentParser(
        prog='kempe', description="Kempe-change reconfiguration of graph colorings",
    )
    sub = parser.add_subparsers(dest='command', required=True)

    count = sub.add_parser('count', parents=[common], help="count colorings and Kempe classes")
    count.add_argument('file')
    count.add_argument('--k', type=int)
    count.add_argument('--cap', type=int)
    count.set_defaults(handler=cmd_count)

    equiv = sub.add_parser('equiv', parents=[common], help="decide Kempe equivalence of two colorings")
    equiv.add_argument('file')
    equiv.add_argument('--c1', required=True)
    equiv.add_argument('--c2', required=True)
    equiv.add_argument('--k', type=int)
    equiv.add_argument('--cap', type=int)
    equiv.set_defaults(handler=cmd_equiv)

    construct = sub.add_parser('construct', parents=[common], help="build a certified instance")
    construct.add_argument('which', choices=sorted(CONSTRUCTORS) + ['gss'])
    construct.add_argument('--k', type=int)
    construct.add_argument('--base', help="base graph document for gss")
    construct.add_argument('--out', help="write the document here instead of stdout")
    construct.add_argument('--pad-s', type=int, default=0)
    construct.add_argument('--pad-t', type=int, default=0)
    construct.set_defaults(handler=cmd_construct)

    verify = sub.add_parser('verify', parents=[common], help="check a proved claim at desk scale")
    verify.add_argument('claim', choices=list(CLAIMS) + ['all'])
    verify.add_argument('--k', type=int)
    verify.add_argument('--trials', type=int)
    verify.add_argument('--seed', type=int, default=VERIFY_DEFAULTS['seed'])
    verify.add_argument('--max-n', type=int)
    verify.add_argument('--max-ell', type=int)
    verify.add_argument('--cap', type=int)
    verify.add_argument('--extended', action='store_true', help="include the K_4 gadget run")
    verify.add_argument('--json', action='store_true')
    verify.set_defaults(handler=cmd_verify)

    defaults = VERIFY_DEFAULTS['search']
    search = sub.add_parser('search', parents=[common], help="look for counterexamples to the open conjectures")
    search.add_argument(
        '--family', choices=['bpe', 'critical'], default='bpe',
        help="random B+E_l graphs (default) or the k-critical graphs of the atlas",
    )
    search.add_argument('--k', type=int)
    search.add_argument('--trials', type=int, default=defaults['trials'])
    search.add_argument('--seed', type=int)
    search.add_argument('--max-n', type=int, help="largest atlas graph for --family critical")
    search.add_argument('--n-s', type=int, default=defaults['n_s'])
    search.add_argument('--n-t', type=int, default=defaults['n_t'])
    search.add_argument('--max-ell', type=int)
    search.add_argument('--cap', type=int)
    search.add_argument('--json', action='store_true')
    search.set_defaults(handler=cmd_search)
    return parser


def cli(argv: Optional[List[str]] = None) -> int:
    """
    Run one command

    Args:
        argv: Arguments without the program name (defaults to sys.argv[1:])

    Returns:
        0 on success, 1 on a proved-claim failure, 2 on usage or input
        errors, 3 when a capacity limit stops the computation
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    try:
        return args.handler(args)
    except InputError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as e:
        print(f"Error: capacity exceeded: {e}", file=sys.stderr)
        print(f"partial: {e.partial_count} colorings enumerated before stopping")
        return EXIT_CAPACITY
    except ProvedClaimViolation as e:
        print(f"Error: {e}", file=sys.stderr)
        _print_outcome(e.outcome, getattr(args, 'json', False))
        return EXIT_PROVED_FAILURE
    except (ConstructionError, InvariantError) as e:
        print(f"Error: internal check failed: {e}", file=sys.stderr)
        return EXIT_PROVED_FAILURE


if __name__ == '__main__':
    sys.exit(cli())
