import argparse
import logging
import sys

import numpy as np
from scipy.stats import binom

from cmlnkit.common.constant import def_logger
from cmlnkit.common.errors import CmlnError, ImproperModelError, SelfcheckError, NotLiftableError
from cmlnkit.common.file_util import read_text, write_text
from cmlnkit.common.yaml_util import load_engine_config, get_log_file_path, get_max_enumerated_atoms, \
    get_float_tolerance
from cmlnkit.cli.model_io import parse_model, parse_target, serialize_model
from cmlnkit.cli.report import format_value, grid_report, grid_rows, to_json, to_csv
from cmlnkit.expressivity.delta import DeltaSpec, compile_delta, compile_distribution
from cmlnkit.fourier.oracle_dft import count_distribution_via_wfomc
from cmlnkit.logic.parser import parse_formula
from cmlnkit.logic.syntax import Predicate, Variable, Implies, And, Not
from cmlnkit.logic.world import Domain
from cmlnkit.misc.log import setup_log_file
from cmlnkit.mln.distribution import count_distribution_bruteforce
from cmlnkit.mln.inference import partition_function, marginal
from cmlnkit.mln.model import CMln
from cmlnkit.numerics.backend import get_backend
from cmlnkit.polytope.rmp import relational_marginal_polytope, call_count_report
from cmlnkit.polytope.support import support_via_wfomc
from cmlnkit.wfomc.brute import wfomc_bruteforce
from cmlnkit.wfomc.lifted import wfomc_lifted_fo2
from cmlnkit.wfomc.oracle import WfomcOracle
from cmlnkit.wfomc.reduction import mln_to_wfomc
from cmlnkit.wfomc.theory import WfomcTask

logger = def_logger.getChild(__name__)
COMMAND_FUNC_DICT = dict()
SELFCHECK_MAX_DOMAIN_SIZE = 3


def register_command(func=None, *, key=None):
    def _register_command(func):
        COMMAND_FUNC_DICT[func.__name__ if key is None else key] = func
        return func

    if callable(func):
        return _register_command(func)
    return _register_command


def get_command(command_name):
    if command_name not in COMMAND_FUNC_DICT:
        raise ValueError('command `{}` is not expected'.format(command_name))
    return COMMAND_FUNC_DICT[command_name]


def get_argparser():
    parser = argparse.ArgumentParser(description='Exact inference for Markov logic networks with complex weights')
    parser.add_argument('--config', help='yaml file path of engine configuration')
    parser.add_argument('--log', help='log file path')
    parser.add_argument('--verbose', action='store_true', help='debug-level logging')
    common_parser = argparse.ArgumentParser(add_help=False)
    common_parser.add_argument('--engine', choices=['auto', 'brute', 'lifted'], help='WFOMC engine')
    common_parser.add_argument('--backend', choices=['exact', 'float'], help='numeric backend (default: inferred)')
    common_parser.add_argument('--out', help='output file path (default: stdout)')
    common_parser.add_argument('--format', choices=['json', 'csv', 'text'], help='output format')
    common_parser.add_argument('--log10', action='store_true', help='emit grid values in log10 scale')

    subparsers = parser.add_subparsers(dest='command')
    subparsers.required = True
    for name in ('partition', 'support', 'polytope'):
        subparser = subparsers.add_parser(name, parents=[common_parser])
        subparser.add_argument('model', help='model file path')
        if name == 'polytope':
            subparser.add_argument('--strategy', choices=['monotone_chain', 'lp_filter'], help='hull strategy')

    marginal_parser = subparsers.add_parser('marginal', parents=[common_parser])
    marginal_parser.add_argument('model', help='model file path')
    marginal_parser.add_argument('--query', required=True, help='ground query formula')

    countdist_parser = subparsers.add_parser('countdist', parents=[common_parser])
    countdist_parser.add_argument('model', help='model file path')
    countdist_parser.add_argument('--method', choices=['dft', 'brute'], default='dft')

    delta_parser = subparsers.add_parser('compile-delta', parents=[common_parser])
    delta_parser.add_argument('model', help='model file path (its formulas define the count axes)')
    delta_parser.add_argument('--point', required=True, help='comma-separated target count vector')

    dist_parser = subparsers.add_parser('compile-dist', parents=[common_parser])
    dist_parser.add_argument('model', help='model file path (its formulas define the count axes)')
    dist_parser.add_argument('--target', required=True, help='target distribution file path')

    selfcheck_parser = subparsers.add_parser('selfcheck', parents=[common_parser])
    selfcheck_parser.add_argument('model', nargs='?', help='model file path (default: built-in models)')

    figure1_parser = subparsers.add_parser('figure1', parents=[common_parser])
    figure1_parser.add_argument('--size', type=int, default=60, help='domain size')
    return parser


def load_model(args):
    mln, domain = parse_model(read_text(args.model))
    if args.backend is not None and args.backend != mln.backend.key:
        if args.backend == 'exact':
            raise ValueError('float weights cannot be converted to the exact backend')
        mln = to_float_mln(mln)
    return mln, domain


def to_float_mln(mln):
    entries = [(entry.formula, [mln.backend.to_complex(w) for w in entry.expweights]) for entry in mln.entries]
    return CMln(entries, 'float', mln.signature)


def get_engine_name(args, config):
    return args.engine if args.engine is not None else config['engine']['type']


def build_oracle(args, config):
    return WfomcOracle(get_engine_name(args, config), max_atoms=get_max_enumerated_atoms(config))


def oracle_summary(stats):
    stats.log_timing()
    return stats.summary()


def scalar_output(args, key, value, stats):
    stats.log_timing()
    if (args.format or 'text') in ('text', 'csv'):
        return format_value(value) + '\n'
    return to_json({key: format_value(value), 'oracle': stats.summary()})


@register_command
def partition(args, config):
    mln, domain = load_model(args)
    oracle = build_oracle(args, config)
    z = partition_function(mln, domain, get_engine_name(args, config), oracle=oracle)
    return scalar_output(args, 'partition_function', z, oracle.stats)


@register_command(key='marginal')
def marginal_command(args, config):
    mln, domain = load_model(args)
    query = parse_formula(args.query, mln.signature)
    oracle = build_oracle(args, config)
    p = marginal(mln, domain, query, get_engine_name(args, config), oracle=oracle)
    return scalar_output(args, 'marginal', p, oracle.stats)


def distribution_output(args, distribution, formulas, stats=None, extra=None):
    if stats is not None:
        stats.log_timing()
    if args.format == 'csv':
        header = None if distribution.shape.ndim == 2 \
            else ['n{}'.format(i + 1) for i in range(distribution.shape.ndim)] + ['p']
        return to_csv(grid_rows(distribution, args.log10), header)
    return to_json(grid_report(distribution, formulas, stats, args.log10, extra))


@register_command
def countdist(args, config):
    mln, domain = load_model(args)
    if args.method == 'brute':
        distribution = count_distribution_bruteforce(mln, domain, get_max_enumerated_atoms(config))
        return distribution_output(args, distribution, mln.formulas, extra={'method': 'brute'})

    oracle = build_oracle(args, config)
    distribution, stats = count_distribution_via_wfomc(mln, domain, oracle=oracle, config=config)
    return distribution_output(args, distribution, mln.formulas, stats, extra={'method': 'dft'})


@register_command
def support(args, config):
    mln, domain = load_model(args)
    points, stats = support_via_wfomc(mln.formulas, domain, oracle=build_oracle(args, config), config=config,
                                      signature=mln.signature)
    if args.format == 'csv':
        return to_csv([list(point) for point in points], ['n{}'.format(i + 1) for i in range(len(mln.formulas))])
    return to_json({'formulas': [str(f) for f in mln.formulas], 'support': [list(point) for point in points],
                    'oracle': oracle_summary(stats)})


@register_command
def polytope(args, config):
    mln, domain = load_model(args)
    result, stats = relational_marginal_polytope(mln.formulas, domain, oracle=build_oracle(args, config),
                                                 config=config, strategy=args.strategy, signature=mln.signature)
    vertices = [[format_value(c) for c in vertex] for vertex in result.vertices]
    if args.format == 'csv':
        return to_csv(vertices, ['q{}'.format(i + 1) for i in range(result.dimension)])
    return to_json({
        'formulas': [str(f) for f in mln.formulas],
        'vertices': vertices,
        'num_points': len(set(result.all_points)),
        'oracle': oracle_summary(stats),
        'call_count': call_count_report(mln.formulas, domain)
    })


def parse_point(text):
    try:
        return tuple(int(n) for n in text.split(','))
    except ValueError:
        raise ValueError('count vector `{}` is not expected'.format(text))


@register_command(key='compile-delta')
def compile_delta_command(args, config):
    mln, domain = load_model(args)
    delta_spec = DeltaSpec(mln.formulas, domain, parse_point(args.point), mln.signature)
    return serialize_model(compile_delta(delta_spec), domain)


@register_command(key='compile-dist')
def compile_dist_command(args, config):
    mln, domain = load_model(args)
    target = parse_target(read_text(args.target), len(mln.formulas))
    compiled = compile_distribution(mln.formulas, domain, target, get_engine_name(args, config),
                                    oracle=build_oracle(args, config), signature=mln.signature)
    return serialize_model(compiled, domain)


def builtin_models():
    x, y = Variable('x'), Variable('y')
    heads = Predicate('heads', 1)
    smokes, friends = Predicate('sm', 1), Predicate('fr', 2)
    exact = get_backend('exact')
    return [
        ('uniform heads', CMln([(heads(x), [exact.one()])], exact)),
        ('parity heads', CMln([(heads(x), [exact.one(), exact.from_polar(1, '1/2')])], exact)),
        ('friends and smokers', CMln([(smokes(x), [exact.one()]),
                                      (Implies(And(smokes(x), friends(x, y)), smokes(y)), [exact.one()])], exact)),
        ('negated heads', CMln([(heads(x), [exact.one()]), (Not(heads(x)), [exact.one()])], exact))
    ]


def check_lifted_vs_brute(mln, domain, max_atoms):
    theory, weight_maps = mln_to_wfomc(mln)
    for weights in weight_maps:
        task = WfomcTask(theory, weights, domain)
        try:
            lifted_value = wfomc_lifted_fo2(task)
        except NotLiftableError:
            return 'SKIP'
        if not mln.backend.equals(lifted_value, wfomc_bruteforce(task, max_atoms)):
            return 'FAIL'
    return 'PASS'


def check_dft_vs_brute(mln, domain, max_atoms, config):
    try:
        expected = count_distribution_bruteforce(mln, domain, max_atoms)
    except ImproperModelError:
        return 'SKIP'
    actual, _ = count_distribution_via_wfomc(mln, domain, oracle=WfomcOracle('auto', max_atoms=max_atoms),
                                             config=config, log_freq=0)
    return 'PASS' if actual.equals(expected) else 'FAIL'


@register_command
def selfcheck(args, config):
    if args.model is not None:
        mln, domain = load_model(args)
        models = [(args.model, mln)]
        max_size = min(len(domain), SELFCHECK_MAX_DOMAIN_SIZE)
    else:
        models = builtin_models()
        max_size = SELFCHECK_MAX_DOMAIN_SIZE

    max_atoms = get_max_enumerated_atoms(config)
    results = list()
    for name, mln in models:
        for size in range(1, max_size + 1):
            domain = Domain.of_size(size)
            results.append({'model': name, 'size': size, 'property': 'lifted_vs_brute',
                             'status': check_lifted_vs_brute(mln, domain, max_atoms)})
            results.append({'model': name, 'size': size, 'property': 'dft_vs_brute',
                            'status': check_dft_vs_brute(mln, domain, max_atoms, config)})

    failures = [result for result in results if result['status'] == 'FAIL']
    if args.format == 'json':
        content = to_json({'results': results, 'passed': len(failures) == 0})
    else:
        content = ''.join('{}\t{}\t|D|={}\t{}\n'.format(r['status'], r['property'], r['size'], r['model'])
                          for r in results)
    emit(content, args.out)
    if failures:
        raise SelfcheckError('{} of {} checks failed'.format(len(failures), len(results)))
    return None


@register_command
def figure1(args, config):
    size = args.size
    heads = Predicate('heads', 1)
    domain = Domain.of_size(size)
    oracle = WfomcOracle('lifted')
    columns = {'k': list(range(size + 1))}
    tolerance = get_float_tolerance(config)
    for w in (-1, 0, 1):
        mln = CMln.classical([heads(Variable('x'))], [w])
        distribution, _ = count_distribution_via_wfomc(mln, domain, oracle=oracle, config=config)
        reference = binom.pmf(np.arange(size + 1), size, np.exp(w) / (np.exp(w) + 1))
        error = float(np.max(np.abs(np.asarray(distribution.to_list(), dtype=np.float64) - reference)))
        logger.info('w = {}: max deviation from the binomial pmf {:.3g} (tolerance {})'.format(w, error, tolerance))
        columns['w{}'.format(w)] = distribution.to_list()
        columns['binom_w{}'.format(w)] = reference.tolist()

    exact = get_backend('exact')
    complex_mln = CMln([(heads(Variable('x')), [exact.one(), exact.from_polar(1, '1/2')])], exact)
    distribution, _ = count_distribution_via_wfomc(complex_mln, domain, oracle=oracle, config=config)
    columns['complex'] = distribution.to_list()
    logger.info('Oracle: {}'.format(oracle.stats))

    names = list(columns.keys())
    rows = [[str(k)] + [format_value(columns[name][k], args.log10) for name in names[1:]] for k in range(size + 1)]
    if args.format == 'json':
        return to_json({'size': size, 'columns': names, 'rows': rows})
    return to_csv(rows, names)


def emit(content, out_file_path=None):
    if content is None:
        return
    if out_file_path is None:
        sys.stdout.write(content)
    else:
        write_text(content, out_file_path)


def main(argv=None):
    args = get_argparser().parse_args(argv)
    if args.verbose:
        def_logger.setLevel(logging.DEBUG)

    try:
        config = load_engine_config(args.config)
        log_file_path = args.log if args.log is not None else get_log_file_path(config)
        if log_file_path is not None:
            setup_log_file(log_file_path)
        content = get_command(args.command)(args, config)
    except CmlnError as e:
        logger.error('{}: {}'.format(type(e).__name__, e))
        return e.exit_code
    except (ValueError, OSError) as e:
        logger.error(str(e))
        return 1
    emit(content, args.out)
    return 0


if __name__ == '__main__':
    sys.exit(main())
