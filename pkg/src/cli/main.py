"""
@Description: Command line entry point; JSON results on stdout, logs on stderr
@version:
@License: MIT
@Author: neolib maintainers
@Date: 2026-09-05 13:28:52
@LastEditors: neolib maintainers
@LastEditTime: 2026-10-06 14:44:08
"""
import argparse
import json
import logging
import sys

from src import __version__
from src.cli.config import Config
from src.errors import BudgetExceeded, StabilizationError
from src.identities.chains import KINDS, enumerate_chains, load_chain, verify_chain
from src.implications.critical import build_critical_from_cycle
from src.implications.graph import build_instance_impl_graph
from src.minimality.instance import load_instance
from src.minimality.saturate import injectivize, minimality_params, saturate
from src.oracle.brute import brute_solve
from src.relations.typed import describe_row
from src.solver.solver import solve, verify_certificate
from src.solver.trace import TraceWriter, projection_table
from src.structures.ground import validate_presentation

logger = logging.getLogger('src.cli')

SCHEMA_VERSIONS = {'structure': 1, 'instance': 1, 'ops': 1, 'trace': 1}

EXIT_OK, EXIT_UNSAT, EXIT_HARD, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3, 4


def emit(result):
    sys.stdout.write(json.dumps(result, sort_keys=True, indent=2) + '\n')


def _rows(sig, rows):
    return sorted(describe_row(sig, row) for row in rows)


def _arc_config(sig, arc):
    return {
        'source': {'tuple': list(arc.source[0]), 'rows': _rows(sig, arc.source[1])},
        'target': {'tuple': list(arc.target[0]), 'rows': _rows(sig, arc.target[1])},
        'composed': arc.composed,
    }


def _load(args, config):
    ground = config.ground if args.structure else None
    instance = load_instance(args.instance, ground=ground)
    config.validate(instance.ground)
    return instance


def _minimal_injective(instance):
    k, ell = minimality_params(instance.ground)
    current = saturate(instance, k, ell)
    if current.is_trivial:
        return current
    current, _ = injectivize(current)
    return saturate(current, k, ell)


def cmd_solve(args, config):
    instance = _load(args, config)
    with TraceWriter(config.get('trace')) as trace:
        result = solve(instance, depth=config.get('depth'), trace=trace)
    sig = instance.ground.sig
    if result.status == 'sat':
        emit({'verdict': 'sat', 'certificate': result.certificate.get_config(),
              'verified': verify_certificate(instance, result.certificate)})
        return EXIT_OK
    if result.status == 'unsat':
        emit({'verdict': 'unsat', 'stage': result.stage})
        return EXIT_UNSAT
    emit({'verdict': 'hard', 'from_cycle': result.from_cycle,
          'arcs': [_arc_config(sig, arc) for arc in result.arcs]})
    return EXIT_HARD


def cmd_saturate(args, config):
    instance = _load(args, config)
    k, ell = minimality_params(instance.ground)
    seed = args.order_seed if args.order_seed is not None else config.get('seed')
    result = saturate(instance, k, ell, seed=seed)
    emit({'k': k, 'l': ell, 'seed': seed, 'trivial': result.is_trivial, 'rows': result.row_count(),
          'projections': projection_table(result).to_dict(orient='records')})
    return EXIT_UNSAT if result.is_trivial else EXIT_OK


def cmd_oracle(args, config):
    instance = _load(args, config)
    result = brute_solve(instance, budget=config.get('budget'))
    if result.status == 'sat':
        emit({'verdict': 'sat', 'certificate': result.certificate.get_config()})
        return EXIT_OK
    emit({'verdict': 'unsat', 'stage': result.stage})
    return EXIT_UNSAT


def cmd_impl_graph(args, config):
    instance = _minimal_injective(_load(args, config))
    if instance.is_trivial:
        emit({'trivial': True})
        return EXIT_UNSAT
    graph = build_instance_impl_graph(instance, depth=config.get('depth'), progress=sys.stderr.isatty(),
                                      verify_composed=True)
    result = graph.get_config()
    result['trivial'] = False
    if args.dot:
        with open(args.dot, 'w') as f:
            f.write(graph.to_dot())
        result['dot'] = args.dot
    emit(result)
    return EXIT_OK


def cmd_critical(args, config):
    instance = _minimal_injective(_load(args, config))
    if instance.is_trivial:
        emit({'critical': None, 'reason': 'instance is trivial after saturation'})
        return EXIT_UNSAT
    graph = build_instance_impl_graph(instance, depth=config.get('depth'), progress=sys.stderr.isatty(),
                                      verify_composed=True)
    cycle = graph.find_cycle()
    if cycle is None:
        emit({'critical': None, 'reason': 'implication graph has no cycle'})
        return EXIT_UNSAT
    try:
        critical = build_critical_from_cycle([arc.witness for arc in cycle], instance.ground)
    except ValueError as e:
        logger.warning('cycle found but no critical relation: %s', e)
        emit({'critical': None, 'reason': str(e)})
        return EXIT_UNSAT
    sig = instance.ground.sig
    emit({'critical': {
        'u': list(critical.u), 'v': list(critical.v),
        'C': _rows(sig, critical.C), 'D': _rows(sig, critical.D),
        'relation': critical.phi.rel.get_config(),
    }, 'cycle': [_arc_config(sig, arc) for arc in cycle]})
    return EXIT_OK


def cmd_identities(args, config):
    if args.action == 'verify':
        chain = load_chain(args.file, kind=args.kind)
        holds, failure = verify_chain(chain)
        emit({'kind': chain.kind, 'length': len(chain), 'holds': holds,
              'failure': None if failure is None else failure._asdict()})
        return EXIT_OK if holds else EXIT_UNSAT
    count, samples = enumerate_chains(args.n, args.length, args.kind, budget=args.max_tables,
                                      samples=args.samples, progress=sys.stderr.isatty())
    emit({'kind': args.kind, 'n': args.n, 'length': args.length, 'count': count,
          'samples': [chain.get_config()['tables'] for chain in samples]})
    return EXIT_OK


def cmd_validate(args, config):
    config.validate()
    report = validate_presentation(config.ground, depth=args.size)
    emit({'structure': config.ground.name, 'k': config.ground.k, 'b': config.ground.b,
          'd': config.ground.d, 'violations': report})
    return EXIT_UNSAT if report else EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog='neolib', description='Finitely bounded CSP solver and analysis tools')
    parser.add_argument('--version', action='store_true', help='print package and schema versions')
    parser.add_argument('--verbose', action='store_true', help='debug logging on stderr')
    parser.add_argument('--seed', type=int, help='propagation order seed, overrides NEOLIB_SEED')
    commands = parser.add_subparsers(dest='command')

    def with_instance(name, handler, summary):
        sub = commands.add_parser(name, help=summary)
        sub.add_argument('instance', help='instance JSON file')
        sub.add_argument('--structure', help='builtin name or structure JSON, overrides the instance file')
        sub.set_defaults(handler=handler)
        return sub

    sub = with_instance('solve', cmd_solve, 'decide an instance')
    sub.add_argument('--depth', type=int)
    sub.add_argument('--trace', help='JSON lines trace output')
    sub = with_instance('saturate', cmd_saturate, '(k, l)-minimal saturation')
    sub.add_argument('--order-seed', type=int, default=None, help='shuffle the propagation order')
    sub = with_instance('oracle', cmd_oracle, 'brute-force decision')
    sub.add_argument('--budget', type=int)
    sub = with_instance('impl-graph', cmd_impl_graph, 'implication graph of the saturated instance')
    sub.add_argument('--depth', type=int)
    sub.add_argument('--dot', help='write the graph as DOT')
    sub = with_instance('critical', cmd_critical, 'critical relation from an implication cycle')
    sub.add_argument('--depth', type=int)

    sub = commands.add_parser('identities', help='identity chains of ternary operations')
    sub.set_defaults(handler=cmd_identities)
    actions = sub.add_subparsers(dest='action', required=True)
    verify = actions.add_parser('verify')
    verify.add_argument('file', help='operation tables JSON')
    verify.add_argument('--kind', choices=KINDS, default=None)
    enum = actions.add_parser('enumerate')
    enum.add_argument('--n', type=int, default=2)
    enum.add_argument('--length', type=int, default=1)
    enum.add_argument('--kind', choices=KINDS, default='jonsson')
    enum.add_argument('--samples', type=int, default=3)
    enum.add_argument('--max-tables', type=int, default=1 << 20)

    sub = commands.add_parser('validate', help='bounded checks of a structure presentation')
    sub.add_argument('--structure')
    sub.add_argument('--size', type=int, default=5, help='largest structure size to extend to')
    sub.set_defaults(handler=cmd_validate)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(stream=sys.stderr, level=logging.DEBUG if args.verbose else logging.INFO,
                        format='%(asctime)s %(levelname)s %(name)s: %(message)s')
    if args.version:
        emit({'version': __version__, 'schemas': SCHEMA_VERSIONS})
        return EXIT_OK
    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_INPUT
    try:
        flags = ('structure', 'depth', 'budget', 'trace', 'seed')
        config = Config({key: getattr(args, key, None) for key in flags})
        return args.handler(args, config)
    except (BudgetExceeded, StabilizationError) as e:
        logger.error('%s', e)
        emit({'error': str(e), 'exit': EXIT_GUARD})
        return EXIT_GUARD
    except (ValueError, KeyError, OSError) as e:
        logger.error('%s', e)
        emit({'error': str(e), 'exit': EXIT_INPUT})
        return EXIT_INPUT


if __name__ == '__main__':
    sys.exit(main())
