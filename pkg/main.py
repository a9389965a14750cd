"""Command-line entry point

    python main.py catalog --q 3
    python main.py bound --q 3 --n 57
    python main.py build --q 3 --n 57 --curve "y^2 + 2x^3 + 2x^2 + 1 = 0" --out f3_57.json
    python main.py verify --bundle f3_57.json
    python main.py emit --bundle f3_57.json --out f3_57.slp
"""
import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional

from config.config import CLI_CONFIG, FIELD_CONFIG
from src.core.builder import assemble_tensor, build, buildable_curve, check_conditions
from src.core.catalog import catalog, select_curve
from src.core.costs import default_max_degree, log_star, log_star_bound, log_star_ranges, place_exists
from src.core.errors import (ChudnovskyError, ConstructionError, DomainError, ResourceError, ValidationError,
                             VerificationError)
from src.core.function_field import enumerate_places
from src.core.optimizer import best_curve, optimize_bound, shape_from_counts
from src.core.slp import emit_slp
from src.core.tensor import TensorDecomposition, verify
from src.utils.config import ConfigError, ConfigLoader
from src.utils.logger import setup_logger

logger = logging.getLogger('src.main')


def _int_list(text: str) -> List[int]:
    try:
        return [int(v) for v in text.replace('[', '').replace(']', '').split(',') if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated integer list, got {text!r}")


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="Symmetric multiplication algorithms in F_{q^n} from elliptic curves")
    parser.add_argument('--config', help="JSON file overriding the defaults in config/config.py")
    parser.add_argument('--verbose', action='store_true', help="log at DEBUG level")
    parser.add_argument('--format', choices=CLI_CONFIG['formats'], default=None,
                        help=f"output format (default {CLI_CONFIG['default_format']})")
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('catalog', help="list the catalog curves over F_q")
    p.add_argument('--q', type=int, required=True)

    p = sub.add_parser('places', help="point and place counts per degree")
    p.add_argument('--q', type=int, required=True)
    p.add_argument('--curve', default='0', help="catalog index, equation or [a1,a2,a3,a4,a6]")
    p.add_argument('--dmax', type=int, default=6)
    p.add_argument('--enumerate', action='store_true', help="cross-check B_d by orbit enumeration")

    p = sub.add_parser('bound', help="cheapest interpolation shape for F_{q^n}")
    p.add_argument('--q', type=int, required=True)
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--curve', help="restrict to one curve (default: best catalog curve)")
    p.add_argument('--dmax', type=int)
    p.add_argument('--exact-case-b', action='store_true', help="target 2n instead of 2n+1 on case-b curves")

    p = sub.add_parser('build', help="construct, verify and write a bundle")
    p.add_argument('--q', type=int, required=True)
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--curve')
    p.add_argument('--seed', type=int)
    p.add_argument('--N', type=_int_list, help="explicit place counts per degree")
    p.add_argument('--U', type=_int_list, help="explicit jet orders per degree")
    p.add_argument('--out', help="bundle path")
    p.add_argument('--slp', help="also write the straight-line program here")

    p = sub.add_parser('verify', help="re-check a bundle exhaustively")
    p.add_argument('--bundle', required=True)

    p = sub.add_parser('emit', help="write the straight-line program of a bundle")
    p.add_argument('--bundle', required=True)
    p.add_argument('--out')

    p = sub.add_parser('logstar', help="log*_q(n) and (2q)^(log*_q n)")
    p.add_argument('--q', type=int, required=True)
    p.add_argument('--n', type=int)
    p.add_argument('--table', action='store_true', help="print the ranges of log* values")

    args = parser.parse_args(argv)
    if getattr(args, 'n', None) is not None and args.n < 1:
        parser.error("--n must be positive")
    if getattr(args, 'dmax', None) is not None and args.dmax < 1:
        parser.error("--dmax must be positive")
    return args


def _check_q(q: int) -> None:
    if q not in FIELD_CONFIG['supported_q']:
        raise ValidationError(f"unsupported q={q}; supported: {FIELD_CONFIG['supported_q']}")


def cmd_catalog(args) -> Dict[str, Any]:
    entries = []
    for index, entry in enumerate(catalog(args.q)):
        data = entry.to_json()
        data['index'] = index
        entries.append(data)
    return {'q': args.q, 'curves': entries}


def cmd_places(args) -> Dict[str, Any]:
    _check_q(args.q)
    curve = select_curve(args.q, args.curve)
    zeta = curve.zeta_counts(args.dmax)
    data = {'curve': curve.equation or curve.normal_form(), 'hasse_ok': zeta.trace ** 2 <= 4 * args.q}
    data.update(zeta.to_json())
    if args.enumerate:
        enumerated = {}
        for d in range(1, args.dmax + 1):
            if args.q ** d > FIELD_CONFIG['enumeration_bound']:
                break
            enumerated[d] = len(enumerate_places(curve, d))
        data['B_enumerated'] = enumerated
        data['agree'] = all(zeta.B(d) == count for d, count in enumerated.items())
    return data


def cmd_bound(args) -> Dict[str, Any]:
    _check_q(args.q)
    exact = True if args.exact_case_b else None
    if args.curve is not None:
        curve = select_curve(args.q, args.curve)
        shape = optimize_bound(args.q, args.n, curve, args.dmax, exact)
    else:
        curve, shape = best_curve(args.q, args.n, args.dmax, exact)
    data = shape.to_json()
    data['dmax'] = args.dmax or default_max_degree(args.q, args.n)
    data['place_exists'] = place_exists(args.q, args.n)
    return data


def cmd_build(args) -> Dict[str, Any]:
    _check_q(args.q)
    if args.curve is not None:
        curve = select_curve(args.q, args.curve)
        shape = None
    else:
        curve, shape = buildable_curve(args.q, args.n)
    if args.N is not None or args.U is not None:
        if args.N is None or args.U is None:
            raise ValidationError("--N and --U must be given together")
        shape = shape_from_counts(args.q, args.n, curve, args.N, args.U)
    plan = build(curve, args.n, shape, args.seed)
    tensor = assemble_tensor(plan)
    report = verify(tensor, require_symmetric=True)
    if not report.passed:
        raise VerificationError("constructed tensor failed verification", report.witness)
    if args.out:
        tensor.save(args.out)
    if args.slp:
        with open(args.slp, 'w', encoding='utf-8') as f:
            f.write(emit_slp(tensor).to_text())
    return {
        'q': args.q,
        'n': args.n,
        'curve': curve.equation or curve.normal_form(),
        'shape': plan.shape.to_json(),
        'degG': plan.degree_g,
        'conditions': check_conditions(plan).to_json(),
        'seed_chain': plan.seed_chain,
        'verification': report.to_json(),
        'bundle': args.out
    }


def cmd_verify(args) -> Dict[str, Any]:
    tensor = TensorDecomposition.load(args.bundle)
    report = verify(tensor)
    if not report.passed:
        raise VerificationError(f"bundle {args.bundle} failed verification", report.witness)
    return report.to_json()


def cmd_emit(args) -> Any:
    tensor = TensorDecomposition.load(args.bundle)
    program = emit_slp(tensor)
    text = program.to_text()
    if args.out:
        with open(args.out, 'w', encoding='utf-8') as f:
            f.write(text)
    return {'counts': program.counts, 'out': args.out, 'program': None if args.out else text}


def cmd_logstar(args) -> Dict[str, Any]:
    data: Dict[str, Any] = {'q': args.q}
    if args.n is not None:
        data.update({'n': args.n, 'log_star': log_star(args.q, args.n), 'bound': log_star_bound(args.q, args.n)})
    if args.table or args.n is None:
        data['ranges'] = log_star_ranges(args.q)
    return data


COMMANDS = {
    'catalog': cmd_catalog,
    'places': cmd_places,
    'bound': cmd_bound,
    'build': cmd_build,
    'verify': cmd_verify,
    'emit': cmd_emit,
    'logstar': cmd_logstar
}


def render(result: Any, fmt: str) -> str:
    if fmt == 'json':
        return json.dumps(result, indent=2, default=str)
    if fmt == 'slp' and isinstance(result, dict) and result.get('program'):
        return result['program']
    lines = []
    for key, value in result.items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{key}:")
            lines.extend(f"  {json.dumps(item, default=str)}" for item in value)
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


def main(argv: Optional[List[str]] = None) -> int:
    codes = CLI_CONFIG['exit_codes']
    args = parse_args(argv)
    fmt = args.format or CLI_CONFIG['default_format']
    try:
        loader = ConfigLoader(args.config)
        loader.load_config()
        loader.apply()
        setup_logger(level=logging.DEBUG if args.verbose else None)
        result = COMMANDS[args.command](args)
        print(render(result, fmt))
        return codes['ok']
    except (ValidationError, DomainError, ConfigError) as e:
        return _fail(args.command, fmt, 'validation', codes['validation'], e, None)
    except (ConstructionError, ResourceError) as e:
        return _fail(args.command, fmt, 'construction', codes['construction'], e, getattr(e, 'diagnostics', None))
    except VerificationError as e:
        return _fail(args.command, fmt, 'verification', codes['verification'], e, e.witness)
    except ChudnovskyError as e:
        return _fail(args.command, fmt, 'construction', codes['construction'], e, None)


def _fail(command: str, fmt: str, kind: str, code: int, error: Exception, details: Any) -> int:
    logger.error(f"{command} failed: {error}")
    if fmt == 'json':
        print(json.dumps({'error': kind, 'message': str(error), 'details': details}, indent=2, default=str))
    return code


if __name__ == "__main__":
    sys.exit(main())
