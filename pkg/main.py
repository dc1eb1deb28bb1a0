#!/usr/bin/env python3
"""
Command line entry point for the uniserial irreducibility lab

Usage:
    python main.py validate samples/example-d.qvr
    python main.py algebra samples/example-a.qvr --json
    python main.py masts samples/example-a.qvr --maxlen 2
    python main.py uniserials samples/example-d.qvr --mast a2*a1 --enumerate
    python main.py check samples/example-d.qvr --mast a2*a1 --fdelta d1=1
    python main.py witness samples/example-a.qvr --mast a1
    python main.py ar samples/a2.qvr --module simple:1
    python main.py census samples/a3.qvr --dim-cap 3
    python main.py sweep monomial --limit 200
    python main.py sweep monomial --stats

Paths are written right to left everywhere: a2*a1 walks a1, then a2.

Exit codes: 0 success, 1 a verdict differs from --expect or a sweep left
instances unevaluated, 2 usage or input error, 3 an internal invariant was
violated.
"""
import argparse
import sys
from datetime import datetime
from pathlib import Path
from typing import Dict, List, Optional

import jsonlines
import yaml

from src.algebra.engine import FDAlgebra
from src.ar.bounds import check_bounds
from src.ar.census import census_indecomposables, thread_count
from src.ar.presentation import dtr, is_projective
from src.ar.sequences import almost_split_sequence, middle_summands, radical_embedding_oracle
from src.frontend.module_spec import build_module, describe_failure, parse_assignments, uniserial_for
from src.frontend.parser import SourceSpec, emit, parse_file
from src.frontend.report import PATH_ORDER, ReportFormatter, algebra_summary, emit_report
from src.irreducibility.criteria import check, check_socle_projection
from src.irreducibility.witness import build_witness
from src.modules import decompose
from src.modules.layers import is_uniserial, radical_layer_dims
from src.sweeps.runner import SWEEPS, SweepRunner
from src.uniserial.variety import MastVariety, coordinate_name, iso_classes, masts
from src.utils.checkpoint import CheckpointManager
from src.utils.errors import InvariantViolation, ParseError, UniserialLabError, VarietyError
from src.utils.logger import setup_logger


EXIT_OK = 0
EXIT_EXPECTATION = 1
EXIT_INPUT = 2
EXIT_INVARIANT = 3


def load_config(config_path: str = 'config/config.yaml') -> dict:
    """Load configuration file with UTF-8 encoding"""
    with open(config_path, encoding='utf-8') as f:
        return yaml.safe_load(f)


def settings(config: dict, spec: Optional[SourceSpec] = None) -> Dict[str, int]:
    """Caps from the config file, overridden by a source file's options block"""
    values = {
        'degree_cap': config['algebra']['degree_cap'],
        'enumeration_cap': config['uniserial']['enumeration_cap'],
        'w_search_cap': config['irreducibility']['w_search_cap'],
        'alternating_rounds': config['irreducibility']['alternating_rounds'],
        'census_dim_cap': config['ar']['census_dim_cap'],
        'census_budget': config['ar']['census_budget'],
    }
    if spec is not None:
        values.update(spec.options)
    return values


# Commands

def cmd_validate(args, config, logger) -> Dict[str, object]:
    spec = parse_file(args.file)
    algebra = spec.build(settings(config, spec)['degree_cap'])
    logger.info(f"✅ {args.file}: {algebra!r}")
    return {
        'valid': True,
        'verdict': 'valid',
        'field': algebra.field.name,
        'vertices': list(algebra.vertices),
        'arrows': {a.id: [a.source, a.target] for a in algebra.quiver.arrows.values()},
        'relations': [str(r) for r in algebra.relations],
        'dim': algebra.dim,
        'nilpotency': algebra.nilpotency,
        'canonical': emit(spec),
    }


def cmd_algebra(args, config, logger) -> Dict[str, object]:
    spec = parse_file(args.file)
    algebra = spec.build(settings(config, spec)['degree_cap'])
    logger.info(f"📚 {algebra!r}")
    return algebra_summary(algebra)


def cmd_masts(args, config, logger) -> List[Dict[str, str]]:
    spec = parse_file(args.file)
    caps = settings(config, spec)
    algebra = spec.build(caps['degree_cap'])
    found = masts(algebra, args.maxlen, caps['enumeration_cap'])
    logger.info(f"📚 {len(found)} nonzero paths of length <= {args.maxlen}")
    return [{'mast': str(p), 'length': p.length, 'status': status} for p, status in found]


def cmd_uniserials(args, config, logger) -> Dict[str, object]:
    spec = parse_file(args.file)
    caps = settings(config, spec)
    algebra = spec.build(caps['degree_cap'])
    mast = algebra.quiver.parse_path(args.mast)
    variety = MastVariety(algebra, mast)
    result: Dict[str, object] = {
        'mast': str(mast),
        'coordinates': [coordinate_name(d, i) for d in variety.detours for i in d.indices],
        'N': variety.size,
    }
    if args.enumerate:
        points = variety.enumerate(caps['enumeration_cap'], thread_count())
        modules = [variety.build(k) for k in points]
        classes = iso_classes(U.rep for U in modules)
        logger.info(f"📚 V_p for {mast}: {len(points)} points, {len(classes)} iso-classes")
        result['points'] = [k.as_dict(algebra.field.format) for k in points]
        result['iso_classes'] = [list(M.dimension_vector) for M in classes]
    else:
        result['module'] = _uniserial_from_args(args, algebra)
    return result


def _uniserial_from_args(args, algebra: FDAlgebra):
    point = parse_assignments(args.point) if args.point else None
    fdelta = parse_assignments(args.fdelta) if args.fdelta else None
    return uniserial_for(algebra, args.mast, point, fdelta)


def cmd_check(args, config, logger) -> Dict[str, object]:
    spec = parse_file(args.file)
    caps = settings(config, spec)
    algebra = spec.build(caps['degree_cap'])
    U = _uniserial_from_args(args, algebra)
    run = check_socle_projection if args.socle else check
    report = run(U, want_witness=not args.no_witness, w_search_cap=caps['w_search_cap'],
                 rounds=caps['alternating_rounds'])
    formatted = ReportFormatter(algebra.field).pipeline(report)
    marker = '✅' if report.irreducible else ('⚠️ ' if report.irreducible is None else '❌')
    logger.info(f"{marker} {args.mast}: {formatted['verdict']} (decided by {report.decided_by})")
    return formatted


def cmd_witness(args, config, logger) -> Dict[str, object]:
    spec = parse_file(args.file)
    caps = settings(config, spec)
    algebra = spec.build(caps['degree_cap'])
    U = _uniserial_from_args(args, algebra)
    witness = build_witness(U, args.clause)
    return ReportFormatter(algebra.field).witness(witness)


def cmd_ar(args, config, logger) -> Dict[str, object]:
    spec = parse_file(args.file)
    caps = settings(config, spec)
    algebra = spec.build(caps['degree_cap'])
    M = build_module(algebra, args.module)
    census = None
    if algebra.field.is_finite and not args.no_census:
        dim_cap = args.census_dim_cap if args.census_dim_cap is not None else caps['census_dim_cap']
        census = census_indecomposables(algebra, dim_cap, caps['census_budget'], thread_count())
    result: Dict[str, object] = {
        'module': M,
        'radical_layers': radical_layer_dims(M),
        'uniserial': is_uniserial(M),
        'projective': is_projective(M),
    }
    if result['projective']:
        logger.info(f"📚 {args.module} is projective: no almost split sequence ends in it")
    else:
        sequence = almost_split_sequence(M, census)
        summands = middle_summands(sequence)
        result['dtr'] = dtr(M)
        result['alpha'] = len(summands)
        result['middle_summands'] = summands
        result['sequence'] = sequence
        result['verified'] = sequence.verified
        result['verification'] = sequence.verification['verification']
        logger.info(f"📚 alpha({args.module}) = {len(summands)}")
        if not sequence.verified:
            logger.warning(f"⚠️ almost split sequence not verified against a complete census "
                           f"({sequence.verification['verification']})")
        if result['uniserial']:
            result['bounds'] = check_bounds(M, census)
    if result['uniserial']:
        irreducible, verified = radical_embedding_oracle(M, census)
        result['radical_embedding_irreducible'] = irreducible
        result['radical_embedding_verified'] = verified
    if census is not None:
        result['census'] = census
    return result


def cmd_census(args, config, logger) -> Dict[str, object]:
    spec = parse_file(args.file)
    caps = settings(config, spec)
    algebra = spec.build(caps['degree_cap'])
    dim_cap = args.dim_cap if args.dim_cap is not None else caps['census_dim_cap']
    budget = args.budget if args.budget is not None else caps['census_budget']
    census = census_indecomposables(algebra, dim_cap, budget, thread_count())
    if args.output:
        formatter = ReportFormatter(algebra.field)
        with jsonlines.open(args.output, mode='w') as writer:
            for i, M in enumerate(census.modules):
                writer.write({'id': i, **formatter.representation(M)})
        logger.info(f"✅ census written → {args.output}")
    return census.as_dict()


def show_statistics(checkpoint_mgr: CheckpointManager, sweeps: List[str]):
    """Display sweep statistics"""
    print("\n" + "=" * 70)
    print("📊 SWEEP STATISTICS")
    print("=" * 70)

    for sweep in sweeps:
        stats = checkpoint_mgr.get_statistics(sweep)
        checkpoint = checkpoint_mgr.get_checkpoint(sweep)

        print(f"\n{sweep}:")
        if stats:
            print(f"  Status:         {checkpoint['status'] if checkpoint else 'Not started'}")
            print(f"  Instances:      {stats['total_instances']:,}")
            print(f"  Disagreements:  {stats['disagreements']:,}")
            print(f"  Errors:         {stats['errors'] or 0:,}")
            print(f"  Duration:       {stats['duration_seconds']:.1f}s")
        elif checkpoint:
            print(f"  Status:         {checkpoint['status']}")
            print(f"  Progress:       {checkpoint['total_done']} instances")
            print(f"  Errors:         {len(checkpoint_mgr.get_errors(sweep))}")
        else:
            print("  Status:         Not started")

    print("\n" + "=" * 70 + "\n")


def cmd_sweep(args, config, logger) -> Optional[Dict[str, object]]:
    checkpoint_mgr = CheckpointManager(config['checkpointing']['db_path'])

    if args.stats:
        show_statistics(checkpoint_mgr, [args.kind] if args.kind else list(SWEEPS))
        return None
    if not args.kind:
        raise UniserialLabError(f"sweep needs a kind: {', '.join(SWEEPS)}")
    if args.reset:
        logger.info(f"🔄 Resetting checkpoint for {args.kind}")
        checkpoint_mgr.reset_sweep(args.kind)
        logger.info("✅ Reset complete")
        return None

    output_dir = Path(config['output']['directory'])
    output_dir.mkdir(parents=True, exist_ok=True)
    output_file = output_dir / f"sweep_{args.kind}.jsonl"
    checkpoint = checkpoint_mgr.get_checkpoint(args.kind)
    if checkpoint and checkpoint['status'] == 'completed':
        logger.info(f"✅ {args.kind} already completed. Skipping.")
        return {'sweep': args.kind, 'status': 'completed', 'output': str(output_file)}

    mode = 'a' if checkpoint and checkpoint['status'] == 'in_progress' else 'w'
    runner = SweepRunner(checkpoint_mgr, config, logger)
    written = disagreements = 0
    with jsonlines.open(output_file, mode=mode) as writer:
        for record in runner.run(args.kind, args.limit):
            writer.write(ReportFormatter(runner.field).convert(record))
            written += 1
            disagreements += 0 if record['ok'] else 1
            if written % 100 == 0:
                logger.info(f"   Progress: {written} instances")
    logger.info(f"✅ {args.kind}: {written} records → {output_file}")
    if disagreements:
        verdict = 'disagree'
    elif runner.errors:
        verdict = 'incomplete'
    else:
        verdict = 'agree'
    return {'sweep': args.kind, 'records': written, 'disagreements': disagreements,
            'errors': runner.errors, 'verdict': verdict, 'output': str(output_file)}


COMMANDS = {
    'validate': cmd_validate,
    'algebra': cmd_algebra,
    'masts': cmd_masts,
    'uniserials': cmd_uniserials,
    'check': cmd_check,
    'witness': cmd_witness,
    'ar': cmd_ar,
    'census': cmd_census,
    'sweep': cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description='Irreducibility of radical embeddings of uniserial modules')
    parser.add_argument('--config', default='config/config.yaml', help='Configuration file')
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true', help='Print a JSON report on stdout')
    common.add_argument('--expect', help='Exit 1 unless the verdict equals this value')

    sub = parser.add_subparsers(dest='command', required=True)

    def with_file(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument('file', help='.qvr source file')
        return p

    with_file('validate', 'Parse and build an algebra')
    with_file('algebra', 'Dimension, basis, nilpotency, radical series, multiseriality')
    p = with_file('masts', 'Nonzero paths usable as masts')
    p.add_argument('--maxlen', type=int, default=3, help='Longest path length')

    for name, help_text in (('uniserials', 'The variety V_p and its uniserial modules'),
                            ('check', 'Run the irreducibility criteria'),
                            ('witness', 'Build a verified factorization witness')):
        p = with_file(name, help_text)
        p.add_argument('--mast', required=True, help='Mast path, right to left (a2*a1)')
        p.add_argument('--point', help='Point of V_p: d1@a1=1,b1@a2:1=0')
        p.add_argument('--fdelta', help='f_delta scalars (triangular algebras): d1=1')
    sub.choices['uniserials'].add_argument('--enumerate', action='store_true', help='Enumerate V_p over F_p')
    sub.choices['check'].add_argument('--socle', action='store_true', help='Check U -> U/soc U instead')
    sub.choices['check'].add_argument('--no-witness', action='store_true', help='Skip witness construction')
    sub.choices['witness'].add_argument('--clause', help='Failing clause to aim the construction at')

    p = with_file('ar', 'Almost split sequence, DTr, alpha and bounds')
    p.add_argument('--module', required=True, help='simple:V | projective:V | injective:V | uniserial:PATH[/point]')
    p.add_argument('--no-census', action='store_true',
                   help='Skip the census check over a finite field (the sequence is then reported unverified)')
    p.add_argument('--census-dim-cap', type=int, help='Total dimension cap of the verifying census')

    p = with_file('census', 'Indecomposables up to a total dimension (finite fields)')
    p.add_argument('--dim-cap', type=int, help='Largest total dimension')
    p.add_argument('--budget', type=int, help='Largest number of representations per dimension vector')
    p.add_argument('--output', help='Also write the modules as JSON Lines')

    p = sub.add_parser('sweep', parents=[common], help='Run a resumable sweep')
    p.add_argument('kind', nargs='?', choices=SWEEPS)
    p.add_argument('--limit', type=int, help='Stop after this many instances')
    p.add_argument('--reset', action='store_true', help='Reset the checkpoint of this sweep')
    p.add_argument('--stats', action='store_true', help='Show sweep statistics')
    return parser


def _print_result(result, field, args) -> None:
    if args.json:
        extra = {'command': args.command}
        if getattr(args, 'file', None):
            extra['file'] = args.file
        print(emit_report(result, field, **extra))
        return
    print("=" * 70)
    print(f"{args.command.upper()}  (paths {PATH_ORDER})")
    print("=" * 70)
    print(yaml.safe_dump(ReportFormatter(field).convert(result), sort_keys=True, allow_unicode=True).rstrip())


def _verdict_of(result) -> Optional[str]:
    if isinstance(result, dict):
        return result.get('verdict')
    return None


def main(argv: Optional[List[str]] = None) -> int:
    """Run one command and return the exit code"""
    parser = build_parser()
    args = parser.parse_args(argv)

    config = load_config(args.config)
    decompose.configure(**config.get('modules', {}))
    log_config = dict(config['logging'])
    if args.json:
        log_config['stream'] = 'stderr'
    logger = setup_logger(log_config)
    logger.debug(f"{args.command} started {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}")

    try:
        result = COMMANDS[args.command](args, config, logger)
    except ParseError as e:
        logger.error(f"❌ {getattr(args, 'file', '')}:{e}")
        return EXIT_INPUT
    except InvariantViolation as e:
        logger.critical(f"🚨 invariant violated: {e}")
        return EXIT_INVARIANT
    except VarietyError as e:
        logger.error(f"❌ {describe_failure(e)}")
        return EXIT_INPUT
    except UniserialLabError as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        return EXIT_INPUT
    except OSError as e:
        logger.error(f"❌ {e}")
        return EXIT_INPUT

    if result is None:
        return EXIT_OK
    field = None
    if getattr(args, 'file', None):
        field = parse_file(args.file).field
    _print_result(result, field, args)

    verdict = _verdict_of(result)
    if args.expect is not None and verdict != args.expect:
        logger.error(f"❌ expected {args.expect}, got {verdict}")
        return EXIT_EXPECTATION
    if isinstance(result, dict) and result.get('errors'):
        logger.error(f"❌ {result['errors']} instances could not be evaluated")
        return EXIT_EXPECTATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
