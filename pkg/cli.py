"""
Command-line front end: every computation and verification as a subcommand.

    python cli.py polytope points --lambda 0,1,0
    python cli.py hall straighten --n 3 --pair 1,2:2,3
    python cli.py verify all --n 3 --max-height 2

Exit status: 0 computed/verified, 1 verification failed, 2 usage or budget error.
"""

import argparse
import io
import json
import logging
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

import pandas as pd
from dotenv import load_dotenv

import classical_module
import hall_algebra
from classical_module import (
    ModuleBudgetError,
    cartan_component_check,
    degree_function,
    graded_analysis,
    ideal_generators,
)
from exact_arith import InexactDivisionError
from fflv_polytope import (
    DyckPathError,
    ExponentVector,
    lattice_points,
    minkowski_check,
    polytope,
)
from hall_algebra import (
    BudgetExceededError,
    HallAlgebra,
    HallElement,
    NotStronglyAdmissibleError,
    VerificationFailureError,
    directed_enumeration,
)
from quiver import (
    ADMISSIBLE,
    ADMISSIBLE_STRONG,
    NOT_ADMISSIBLE,
    DimensionMismatchError,
    ProjectiveInputError,
    WeightFunction,
    ar_sequence,
    classify_coefficients,
    compose_weight_function,
    decompose_weight_function,
    degeneration_leq,
    hom_table_frame,
    is_projective,
    mu0,
)
from root_system import (
    MAX_RANK,
    PositiveRoot,
    RankError,
    RankMismatchError,
    WeightError,
    dominant_weights,
    format_weight,
    parse_root_key,
    parse_weight,
    positive_roots,
    root_pairing,
    weyl_dim,
)

load_dotenv()

logger = logging.getLogger(__name__)

MAX_MODULE_RANK = int(os.getenv('PBW_MAX_MODULE_RANK', '4'))
MAX_HEIGHT = int(os.getenv('PBW_MAX_HEIGHT', '3'))
VERIFY_WORKERS = int(os.getenv('PBW_VERIFY_WORKERS', '1'))
DEFAULT_MODULE_DIM = classical_module.MAX_MODULE_DIM

USAGE_ERRORS = (
    BudgetExceededError,
    ModuleBudgetError,
    RankError,
    RankMismatchError,
    WeightError,
    DyckPathError,
    DimensionMismatchError,
    ProjectiveInputError,
    NotStronglyAdmissibleError,
    ValueError,
)

# generators of the annihilating ideal of V(varpi_2) for sl_4
SL4_IDEAL_GENERATORS = [
    {'1,1': 1}, {'3,3': 1}, {'1,3': 2}, {'1,2': 2}, {'2,3': 2}, {'2,2': 2},
    {'2,2': 1, '1,2': 1}, {'2,2': 1, '2,3': 1}, {'1,2': 1, '1,3': 1},
    {'2,3': 1, '1,3': 1}, {'1,2': 1, '2,3': 1},
]


class UsageError(Exception):
    """Bad flags or flag combinations"""


class CommandResult(NamedTuple):
    ok: bool
    payload: Any
    frame: Optional[pd.DataFrame] = None
    text: Optional[str] = None


def parse_exponent(text: str) -> ExponentVector:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"expected a JSON object like '{{\"1,2\": 1}}', got '{text}': {e}")
    if not isinstance(data, dict):
        raise UsageError(f"expected a JSON object, got '{text}'")
    return ExponentVector.from_json(data)


def parse_pair(text: str):
    try:
        first, second = text.split(':')
    except ValueError:
        raise UsageError(f"expected a root pair like 1,2:2,3, got '{text}'")
    return parse_root_key(first), parse_root_key(second)


def points_frame(points: Sequence[ExponentVector], n: int) -> pd.DataFrame:
    keys = [root.key for root in positive_roots(n)]
    return pd.DataFrame([p.as_sequence(n) for p in points], columns=keys)


class PBWCli:
    def __init__(self):
        self.parser = argparse.ArgumentParser(
            prog='pbw',
            description='Exact PBW filtration, Dyck path polytope, quiver and Hall algebra computations',
        )
        self.parser.add_argument('--format', choices=['json', 'csv', 'text'], default='json')
        self.parser.add_argument('--out', help='write the report to FILE instead of standard output')
        self.groups = self.parser.add_subparsers(dest='group', metavar='GROUP')
        self.groups.required = True
        self._group_parsers = {}

        self.setup_handlers()

    # registration

    def _group(self, name: str, help_text: str):
        if name not in self._group_parsers:
            group = self.groups.add_parser(name, help=help_text)
            commands = group.add_subparsers(dest='command', metavar='COMMAND')
            commands.required = True
            self._group_parsers[name] = commands
        return self._group_parsers[name]

    def add_command(self, group: str, name: str, handler: Callable, help_text: str, *flags: str):
        command = self._group(group, f"{group} commands").add_parser(name, help=help_text)
        for flag in flags:
            self.FLAGS[flag](command)
        command.set_defaults(handler=handler)
        return command

    FLAGS = {
        'n': lambda p: p.add_argument('--n', type=int, required=True, help='rank (sl_{n+1})'),
        'n?': lambda p: p.add_argument('--n', type=int, help='rank, checked against --lambda'),
        'lambda': lambda p: p.add_argument('--lambda', dest='weight', required=True,
                                           help='dominant weight, comma-separated, e.g. 0,1,0'),
        'mu': lambda p: p.add_argument('--mu', required=True, help='second dominant weight'),
        'weights': lambda p: p.add_argument('--weights', help='JSON file {"i,j": value}'),
        'preset': lambda p: p.add_argument('--preset', choices=['mu0', 'one', 'zero', 'projectives', 'simple-projective'],
                                           help='built-in weight function'),
        'degree': lambda p: p.add_argument('--degree', choices=['ff', 'length', 'custom'], default='ff'),
        'hall-budget': lambda p: (
            p.add_argument('--max-total-dim', type=int, default=hall_algebra.MAX_TOTAL_DIM),
            p.add_argument('--primes', default=','.join(str(q) for q in hall_algebra.PRIMES)),
        ),
        'module-budget': lambda p: p.add_argument('--max-module-dim', type=int,
                                                  default=DEFAULT_MODULE_DIM),
    }

    def setup_handlers(self):
        """Register every subcommand"""
        self.add_command('polytope', 'inequalities', self.polytope_inequalities, 'Dyck path inequalities of P(lambda)', 'lambda', 'n?')
        self.add_command('polytope', 'points', self.polytope_points, 'lattice points S(lambda)', 'lambda', 'n?')
        self.add_command('polytope', 'minkowski', self.polytope_minkowski, 'check S(lambda)+S(mu) = S(lambda+mu)', 'lambda', 'mu', 'n?')

        self.add_command('root', 'dim', self.root_dim, 'Weyl dimension of V(lambda)', 'lambda', 'n?')
        pairing = self.add_command('root', 'pairing', self.root_pairing, 'symmetrized Cartan pairing', 'n')
        pairing.add_argument('--alpha', required=True, help='root i,j')
        pairing.add_argument('--beta', required=True, help='root i,j')

        self.add_command('quiver', 'hom-table', self.quiver_hom_table, 'dim Hom between indecomposables', 'n')
        ar = self.add_command('quiver', 'ar', self.quiver_ar, 'Auslander-Reiten sequences', 'n')
        ar.add_argument('--root', help='indecomposable i,j')
        ar.add_argument('--all', action='store_true', help='every non-projective indecomposable')
        self.add_command('quiver', 'classify', self.quiver_classify, 'classify a weight function', 'n', 'weights', 'preset')
        degeneration = self.add_command('quiver', 'degeneration', self.quiver_degeneration, 'compare two classes in the degeneration order', 'n')
        degeneration.add_argument('--m', required=True, help='class as JSON {"i,j": k}')
        degeneration.add_argument('--other', required=True, help='class as JSON {"i,j": k}')

        mult = self.add_command('hall', 'mult', self.hall_mult, 'product u[M] u[N]', 'n', 'hall-budget')
        mult.add_argument('--left', required=True, help='class M as JSON')
        mult.add_argument('--right', required=True, help='class N as JSON')
        mult.add_argument('--pbw', action='store_true', help='multiply PBW elements F_[M] F_[N] instead')
        polynomial = self.add_command('hall', 'polynomial', self.hall_polynomial, 'Hall polynomial F^X_{M,N}(u)', 'n', 'hall-budget')
        polynomial.add_argument('--m', required=True, help='quotient class M as JSON')
        polynomial.add_argument('--sub', required=True, help='subrepresentation class N as JSON')
        polynomial.add_argument('--x', required=True, help='middle class X as JSON')
        straighten = self.add_command('hall', 'straighten', self.hall_straighten, 'straightening relations', 'n', 'hall-budget')
        straighten.add_argument('--pair', help='two roots, e.g. 1,2:2,3')
        straighten.add_argument('--all', action='store_true', help='every pair k < l')
        graded = self.add_command('hall', 'graded-check', self.hall_graded_check, 'q-commutativity of the associated graded', 'n', 'weights', 'preset', 'hall-budget')
        graded.add_argument('--no-require-strong', dest='require_strong', action='store_false')
        scan = self.add_command('hall', 'weak-scan', self.hall_weak_scan, 'scan short exact sequences over GF(2)', 'n', 'weights', 'preset', 'hall-budget')
        scan.add_argument('--max-dim', type=int, default=4, help='largest total dimension of X')
        scan.add_argument('--strict', action='store_true', help='require strictness on non-split sequences')
        self.add_command('hall', 'identity', self.hall_identity, 'F_23 F_12 = F_12 F_23 - (q - q^-1) F_2 F_123', 'n', 'hall-budget')

        self.add_command('module', 'report', self.module_report, 'graded dimensions and monomial ideal check', 'lambda', 'n?', 'degree', 'weights', 'module-budget')
        self.add_command('module', 'basis', self.module_basis, 'check that S(lambda) gives a compatible basis', 'lambda', 'n?', 'degree', 'weights', 'module-budget')
        self.add_command('module', 'ideal-generators', self.module_ideal_generators, 'minimal monomial generators', 'lambda', 'n?', 'module-budget')
        self.add_command('module', 'cartan-check', self.module_cartan_check, 'Cartan component of V(lambda) x V(mu)', 'lambda', 'mu', 'n?', 'module-budget')

        verify = self.add_command('verify', 'all', self.verify_all, 'desk-scale verification suite', 'n', 'module-budget')
        verify.add_argument('--max-height', type=int, default=2, help='raise every check to at least this |lambda|')
        verify.add_argument('--workers', type=int, default=VERIFY_WORKERS)

        self.add_command('store', 'stats', self.store_stats, 'stored Hall polynomials per rank')
        clear = self.add_command('store', 'clear', self.store_clear, 'delete stored Hall polynomials')
        clear.add_argument('--rank', type=int)

    # shared argument handling

    def weight(self, args, attr: str = 'weight'):
        weight = parse_weight(getattr(args, attr), getattr(args, 'n', None))
        if sum(weight) > MAX_HEIGHT:
            self.warn(f"|lambda| = {sum(weight)} is above the default height {MAX_HEIGHT}")
        return weight

    def weight_function(self, args, n: int) -> WeightFunction:
        if args.weights and args.preset:
            raise UsageError("give either --weights or --preset, not both")
        if args.weights:
            try:
                return WeightFunction.from_file(args.weights, n)
            except OSError as e:
                raise UsageError(f"cannot read weight function file: {e}")
        preset = args.preset or 'mu0'
        if preset == 'mu0':
            return WeightFunction.mu0(n)
        if preset == 'one':
            return WeightFunction.constant(n, 1)
        if preset == 'zero':
            return WeightFunction.constant(n, 0)
        if preset == 'projectives':
            return WeightFunction.hom_from(ExponentVector({PositiveRoot(i, n): 1 for i in range(1, n + 1)}), n)
        return WeightFunction.hom_from(ExponentVector.unit(PositiveRoot(n, n)), n)

    def hall(self, args) -> HallAlgebra:
        primes = tuple(int(p) for p in args.primes.split(','))
        if args.max_total_dim > hall_algebra.MAX_TOTAL_DIM:
            self.warn(f"--max-total-dim {args.max_total_dim} is above the default {hall_algebra.MAX_TOTAL_DIM}")
        if primes == hall_algebra.PRIMES and args.max_total_dim == hall_algebra.MAX_TOTAL_DIM:
            return hall_algebra.get_hall_algebra(args.n)
        return HallAlgebra(args.n, primes=primes, max_total_dim=args.max_total_dim)

    def module_budget(self, args, n: int):
        if args.max_module_dim > DEFAULT_MODULE_DIM:
            self.warn(f"--max-module-dim {args.max_module_dim} is above the default {DEFAULT_MODULE_DIM}")
        classical_module.set_module_budget(args.max_module_dim)
        if n > MAX_MODULE_RANK:
            self.warn(f"rank {n} is above the default module rank {MAX_MODULE_RANK}")

    def warn(self, message: str):
        logger.warning(message)
        print(f"warning: {message}", file=sys.stderr)

    # polytope

    def polytope_inequalities(self, args) -> CommandResult:
        description = polytope(self.weight(args))
        return CommandResult(True, description.to_json())

    def polytope_points(self, args) -> CommandResult:
        weight = self.weight(args)
        points = sorted(lattice_points(weight), key=lambda p: p.as_sequence(len(weight)), reverse=True)
        payload = {'lambda': format_weight(weight), 'count': len(points), 'weyl_dim': weyl_dim(weight),
                   'points': [p.to_json() for p in points]}
        return CommandResult(len(points) == weyl_dim(weight), payload, points_frame(points, len(weight)))

    def polytope_minkowski(self, args) -> CommandResult:
        weight, other = self.weight(args), self.weight(args, 'mu')
        ok = minkowski_check(weight, other)
        return CommandResult(ok, {'lambda': format_weight(weight), 'mu': format_weight(other), 'minkowski': ok})

    # root system

    def root_dim(self, args) -> CommandResult:
        weight = self.weight(args)
        return CommandResult(True, {'lambda': format_weight(weight), 'dim': weyl_dim(weight)})

    def root_pairing(self, args) -> CommandResult:
        alpha, beta = parse_root_key(args.alpha), parse_root_key(args.beta)
        return CommandResult(True, {'alpha': alpha.key, 'beta': beta.key,
                                    'pairing': root_pairing(alpha, beta, args.n)})

    # quiver

    def quiver_hom_table(self, args) -> CommandResult:
        frame = hom_table_frame(args.n)
        payload = {source: {target: int(value) for target, value in row.items()}
                   for source, row in frame.to_dict(orient='index').items()}
        return CommandResult(True, payload, frame.reset_index())

    def quiver_ar(self, args) -> CommandResult:
        if args.all == bool(args.root):
            raise UsageError("give exactly one of --root or --all")
        if args.all:
            targets = [u for u in positive_roots(args.n) if not is_projective(u, args.n)]
        else:
            targets = [parse_root_key(args.root)]
        rows = []
        for u in targets:
            sequence = ar_sequence(u, args.n)
            rows.append({'left': sequence.left.key, 'middle': sequence.middle.to_json(), 'right': sequence.right.key})
        text = '\n'.join(f"0 -> M{r['left']} -> {r['middle']} -> M{r['right']} -> 0" for r in rows)
        return CommandResult(True, rows, pd.DataFrame(rows), text)

    def quiver_classify(self, args) -> CommandResult:
        w = self.weight_function(args, args.n)
        coefficients = decompose_weight_function(w)
        label = classify_coefficients(coefficients, args.n)
        payload = {'class': label, 'coefficients': {root.key: a for root, a in coefficients.items()}}
        return CommandResult(True, payload)

    def quiver_degeneration(self, args) -> CommandResult:
        m, other = parse_exponent(args.m), parse_exponent(args.other)
        return CommandResult(True, {'m': m.to_json(), 'other': other.to_json(),
                                    'leq': degeneration_leq(m, other, args.n)})

    # Hall algebra

    def hall_mult(self, args) -> CommandResult:
        algebra = self.hall(args)
        left, right = parse_exponent(args.left), parse_exponent(args.right)
        if args.pbw:
            a, b = algebra.pbw_element(left), algebra.pbw_element(right)
        else:
            a, b = HallElement.basis(left), HallElement.basis(right)
        product = algebra.mult(a, b)
        return CommandResult(True, product.to_json(), text='\n'.join(product.render()) or '0')

    def hall_polynomial(self, args) -> CommandResult:
        algebra = self.hall(args)
        m, sub, x = parse_exponent(args.m), parse_exponent(args.sub), parse_exponent(args.x)
        polynomial = algebra.hall_polynomial(m, sub, x)
        rendered = str(polynomial).replace('q', 'u')
        return CommandResult(True, {'M': m.to_json(), 'N': sub.to_json(), 'X': x.to_json(),
                                    'polynomial': rendered}, text=rendered)

    def hall_straighten(self, args) -> CommandResult:
        algebra = self.hall(args)
        order = directed_enumeration(args.n)
        if args.all == bool(args.pair):
            raise UsageError("give exactly one of --pair or --all")
        if args.pair:
            first, second = parse_pair(args.pair)
            k, l = sorted((order.position(first), order.position(second)))
            pairs = [(k, l)]
        else:
            size = len(order.roots)
            pairs = [(k, l) for k in range(1, size + 1) for l in range(k + 1, size + 1)]
        reports = [algebra.straighten(k, l, order) for k, l in pairs]
        rows = [{'beta_k': r.beta_k.key, 'beta_l': r.beta_l.key, 'equality': r.equality_ok,
                 'support': r.support_ok, 'degree': r.degree_ok} for r in reports]
        payload = {'order': order.to_json(), 'reports': [r.to_dict() for r in reports]}
        return CommandResult(all(r.passed for r in reports), payload, pd.DataFrame(rows),
                             '\n'.join(r.render() for r in reports))

    def hall_graded_check(self, args) -> CommandResult:
        algebra = self.hall(args)
        w = self.weight_function(args, args.n)
        order = directed_enumeration(args.n)
        label = classify_coefficients(decompose_weight_function(w), args.n)
        if args.require_strong and label != ADMISSIBLE_STRONG:
            raise NotStronglyAdmissibleError(f"{w} is {label}; pass --no-require-strong to check anyway")
        failures = algebra.graded_relation_failures(order, w)
        return CommandResult(not failures, {'class': label, 'q_commutative': not failures, 'failures': failures})

    def hall_weak_scan(self, args) -> CommandResult:
        algebra = self.hall(args)
        w = self.weight_function(args, args.n)
        report = algebra.scan_weight_function(w, args.max_dim)
        ok = report.strict if args.strict else report.weak
        return CommandResult(ok, report.to_dict())

    def hall_identity(self, args) -> CommandResult:
        report = self.hall(args).commutation_identity()
        return CommandResult(report.holds, report.to_dict(), text=f"{report.text}: {report.holds}")

    # module

    def _degree(self, args, n: int):
        w = None
        if args.degree == 'custom':
            if not args.weights:
                raise UsageError("--degree custom needs --weights FILE")
            w = self.weight_function(args, n)
        return degree_function(args.degree, n, w)

    def module_report(self, args) -> CommandResult:
        weight = self.weight(args)
        self.module_budget(args, len(weight))
        report = graded_analysis(weight, self._degree(args, len(weight)), args.degree)
        frame = pd.DataFrame(sorted(report.degree_dims.items()), columns=['degree', 'dim'])
        return CommandResult(report.basis_ok and report.monomial_ideal_ok, report.to_dict(), frame)

    def module_basis(self, args) -> CommandResult:
        weight = self.weight(args)
        self.module_budget(args, len(weight))
        report = graded_analysis(weight, self._degree(args, len(weight)), args.degree)
        return CommandResult(report.basis_ok, {'lambda': format_weight(weight), 'degree': args.degree,
                                               'order': list(report.order), 'basis_ok': report.basis_ok})

    def module_ideal_generators(self, args) -> CommandResult:
        weight = self.weight(args)
        self.module_budget(args, len(weight))
        n = len(weight)
        report = graded_analysis(weight, degree_function('ff', n), 'ff')
        generators = ideal_generators(weight)
        payload = {'lambda': format_weight(weight), 'monomial_ideal_ok': report.monomial_ideal_ok,
                   'generators': [s.to_json() for s in generators]}
        return CommandResult(report.monomial_ideal_ok, payload, points_frame(generators, n))

    def module_cartan_check(self, args) -> CommandResult:
        weight, other = self.weight(args), self.weight(args, 'mu')
        self.module_budget(args, len(weight))
        ok = cartan_component_check(weight, other)
        return CommandResult(ok, {'lambda': format_weight(weight), 'mu': format_weight(other), 'cartan': ok})

    # verification suite

    def verify_all(self, args) -> CommandResult:
        self.module_budget(args, args.n)
        checks = verification_checks(args.n, args.max_height)
        workers = max(1, args.workers)
        logger.info(f"running {len(checks)} checks with {workers} workers")
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run_check, checks))
        ok = all(outcome['ok'] for outcome in outcomes)
        payload = {'ok': ok, 'coverage': coverage_plan(args.n, args.max_height).to_json(), 'checks': outcomes}
        return CommandResult(ok, payload, pd.DataFrame(outcomes))

    # store

    def store_stats(self, args) -> CommandResult:
        from hall_store import init_store
        stats = init_store().stats()
        return CommandResult(True, {str(rank): count for rank, count in sorted(stats.items())})

    def store_clear(self, args) -> CommandResult:
        from hall_store import init_store
        return CommandResult(True, {'deleted': init_store().clear(args.rank)})

    # output

    def render(self, result: CommandResult, fmt: str) -> str:
        if fmt == 'csv':
            if result.frame is None:
                raise UsageError("csv output is only available for tabular reports")
            buffer = io.StringIO()
            result.frame.to_csv(buffer, index=False)
            return buffer.getvalue()
        if fmt == 'text' and result.text is not None:
            return result.text + '\n'
        return json.dumps(result.payload, indent=2) + '\n'

    def emit(self, text: str, out: Optional[str]):
        if out:
            with open(out, 'w', encoding='utf-8') as handle:
                handle.write(text)
        else:
            sys.stdout.write(text)
            sys.stdout.flush()

    def run(self, argv: Optional[List[str]] = None) -> int:
        try:
            args = self.parser.parse_args(argv)
        except SystemExit as e:
            return 0 if e.code == 0 else 2

        try:
            result = args.handler(args)
            self.emit(self.render(result, args.format), args.out)
            return 0 if result.ok else 1
        except (VerificationFailureError, InexactDivisionError) as e:
            logger.error(f"verification failed: {e}", exc_info=True)
            self.emit(json.dumps({'error': str(e), 'kind': 'verification'}) + '\n', args.out)
            return 1
        except (UsageError,) + USAGE_ERRORS as e:
            logger.error(f"{args.group} {args.command}: {e}")
            self.emit(json.dumps({'error': str(e)}) + '\n', args.out)
            return 2


class Check(NamedTuple):
    name: str
    run: Callable[[], Any]


def run_check(check: Check) -> dict:
    try:
        ok, detail = check.run()
    except Exception as e:
        logger.error(f"check {check.name} raised: {e}", exc_info=True)
        ok, detail = False, f"{type(e).__name__}: {e}"
    logger.info(f"check {check.name}: {'ok' if ok else 'FAILED'}")
    return {'name': check.name, 'ok': bool(ok), 'detail': detail}


# smallest |lambda| each check covers per rank; --max-height can only raise these
LATTICE_HEIGHTS = {1: 3, 2: 3, 3: 3, 4: 3}
MINKOWSKI_HEIGHTS = {1: 3, 2: 3, 3: 3}
MODULE_HEIGHTS = {1: 3, 2: 3, 3: 2}
DEGREE_TABLE_RANK = 8
ROUND_TRIP_RANK = 5
ROUND_TRIPS = 100


class CoveragePlan(NamedTuple):
    """Ranks and weight heights the checks of `verify all` run over."""
    degree_ranks: Tuple[int, ...]
    lattice_heights: Dict[int, int]
    minkowski_heights: Dict[int, int]
    module_heights: Dict[int, int]
    hall_ranks: Tuple[int, ...]
    round_trip_ranks: Tuple[int, ...]
    round_trips: int

    @staticmethod
    def weights(heights: Dict[int, int]) -> List[tuple]:
        return [w for k, h in sorted(heights.items()) for w in dominant_weights(k, h)]

    def to_json(self) -> dict:
        def keyed(heights):
            return {str(k): h for k, h in sorted(heights.items())}
        return {
            'degree_ranks': list(self.degree_ranks),
            'lattice_heights': keyed(self.lattice_heights),
            'minkowski_heights': keyed(self.minkowski_heights),
            'module_heights': keyed(self.module_heights),
            'hall_ranks': list(self.hall_ranks),
            'round_trip_ranks': list(self.round_trip_ranks),
            'round_trips': self.round_trips,
        }


def coverage_plan(n: int, max_height: int) -> CoveragePlan:
    """
    Combinatorial checks always run at their full fixed scale; module and Hall
    checks stop at rank n. Every height is at least max_height.
    """
    def ranks_up_to(top: int) -> range:
        return range(1, min(top, MAX_RANK) + 1)

    def heights(floor: Dict[int, int], ranks: range) -> Dict[int, int]:
        return {k: max(floor.get(k, 0), max_height) for k in ranks}

    return CoveragePlan(
        degree_ranks=tuple(ranks_up_to(max(n, DEGREE_TABLE_RANK))),
        lattice_heights=heights(LATTICE_HEIGHTS, ranks_up_to(max(n, max(LATTICE_HEIGHTS)))),
        minkowski_heights=heights(MINKOWSKI_HEIGHTS, ranks_up_to(max(MINKOWSKI_HEIGHTS))),
        module_heights=heights(MODULE_HEIGHTS, ranks_up_to(n)),
        hall_ranks=tuple(ranks_up_to(min(n, 3))),
        round_trip_ranks=tuple(ranks_up_to(max(n, ROUND_TRIP_RANK))),
        round_trips=ROUND_TRIPS,
    )


def verification_checks(n: int, max_height: int) -> List[Check]:
    """The desk-scale suite, laid out by coverage_plan."""
    plan = coverage_plan(n, max_height)
    checks = []

    def degree_table():
        ok = all(mu0(ExponentVector.unit(r), k) == (r.j - r.i + 1) * (k - r.j + 1)
                 for k in plan.degree_ranks for r in positive_roots(k))
        ok = ok and [mu0(ExponentVector.unit(r), 3) for r in positive_roots(3)] == [3, 4, 3, 2, 2, 1]
        return ok, 'mu0(M_ij) = (j-i+1)(n-j+1)'
    checks.append(Check('degree-table', degree_table))

    def lattice_counts():
        bad = [format_weight(w) for w in plan.weights(plan.lattice_heights)
               if len(lattice_points(w)) != weyl_dim(w)]
        return not bad, bad or 'all counts match'
    checks.append(Check('lattice-counts', lattice_counts))

    def minkowski():
        bad = []
        for k, height in sorted(plan.minkowski_heights.items()):
            weights = dominant_weights(k, height)
            for a in weights:
                for b in weights:
                    if sum(a) + sum(b) <= height and not minkowski_check(a, b):
                        bad.append(f"{format_weight(a)}+{format_weight(b)}")
        return not bad, bad or 'all sums match'
    checks.append(Check('minkowski', minkowski))

    def monomial_basis():
        bad = []
        for w in plan.weights(plan.module_heights):
            report = graded_analysis(w, degree_function('ff', len(w)), 'ff')
            if not (report.basis_ok and report.monomial_ideal_ok):
                bad.append(format_weight(w))
        return not bad, bad or 'basis and monomial ideal verified'
    checks.append(Check('monomial-basis', monomial_basis))

    if n >= 3:
        def sl4_ideal():
            expected = [ExponentVector.from_json(g) for g in SL4_IDEAL_GENERATORS]
            found = ideal_generators((0, 1, 0))
            return set(found) == set(expected) and len(found) == 11, [g.to_json() for g in found]
        checks.append(Check('sl4-ideal-generators', sl4_ideal))

        def length_witness():
            report = graded_analysis((0, 1, 0), degree_function('length', 3), 'length')
            return not report.monomial_ideal_ok, [s.to_json() for s in report.violations]
        checks.append(Check('length-non-monomial', length_witness))

        def identity():
            report = hall_algebra.commutation_identity_check(3)
            return report.holds, report.text
        checks.append(Check('hall-identity', identity))

        def naive_grading():
            order = directed_enumeration(3)
            ok = not hall_algebra.graded_relation_check(order, WeightFunction.constant(3, 1), require_strong=False)
            return ok, 'constant weight function breaks q-commutativity'
        checks.append(Check('naive-grading-fails', naive_grading))

    def graded():
        bad = [k for k in plan.hall_ranks
               if not hall_algebra.graded_relation_check(directed_enumeration(k), WeightFunction.mu0(k))]
        return not bad, bad or 'mu0 grading is q-commutative'
    checks.append(Check('graded-q-commutative', graded))

    def classifier():
        rng = random.Random(20240611)
        ok = True
        for k in plan.round_trip_ranks:
            coefficients = decompose_weight_function(WeightFunction.mu0(k))
            ok = ok and all(a == 1 for a in coefficients.values())
            ok = ok and classify_coefficients(coefficients, k) == ADMISSIBLE_STRONG
            simples = decompose_weight_function(WeightFunction.constant(k, 1))
            expected = ADMISSIBLE_STRONG if k <= 2 else ADMISSIBLE
            ok = ok and classify_coefficients(simples, k) == expected
            for _ in range(plan.round_trips):
                a = {root: rng.randint(-3, 3) for root in positive_roots(k)}
                ok = ok and decompose_weight_function(compose_weight_function(a, k)) == a
        witness = WeightFunction({PositiveRoot(1, 1): 1, PositiveRoot(1, 2): 1, PositiveRoot(2, 2): 2}, 2)
        ok = ok and classify_coefficients(decompose_weight_function(witness), 2) == NOT_ADMISSIBLE
        return ok, f"classification and {plan.round_trips} round trips per rank"
    checks.append(Check('weight-classifier', classifier))

    def mu0_scan():
        bad = [k for k in plan.hall_ranks
               if not hall_algebra.weak_admissibility_scan(
                   WeightFunction.mu0(k), min(4, hall_algebra.MAX_TOTAL_DIM), strict=True)]
        return not bad, bad or 'mu0 strictly subadditive on non-split sequences'
    checks.append(Check('mu0-scan', mu0_scan))

    return checks


def main():
    logging.basicConfig(
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        level=os.getenv('PBW_LOG_LEVEL', 'WARNING').upper(),
    )
    sys.exit(PBWCli().run())


if __name__ == '__main__':
    main()
