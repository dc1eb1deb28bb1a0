#!/usr/bin/env python3
"""
Sweep runner - checks the criteria against the almost split oracle over
whole families of small algebras, with resumable progress

Every sweep walks its instances in a fixed order and yields one record per
instance; records with ok=False are disagreements (or bound violations) and
are counted in the statistics.
"""
import logging
import random
from datetime import datetime
from typing import Callable, Dict, Generator, Iterator, List, Optional, Tuple

from src.algebra.engine import FDAlgebra
from src.algebra.field import Field
from src.ar.bounds import check_bounds
from src.ar.census import Census, census_indecomposables, thread_count
from src.ar.presentation import is_projective
from src.ar.sequences import Ext1Space, middle_term_dichotomy, radical_embedding_oracle
from src.irreducibility.criteria import (
    check_1to2a,
    check_monomial,
    check_multiserial,
    essential_detours,
    obstruction_extra_arrow,
)
from src.irreducibility.reports import UNKNOWN
from src.modules.representation import simple
from src.sweeps.families import Instance, commutativity_algebras, instances, monomial_algebras
from src.uniserial.variety import masts, phi_p_surjectivity
from src.utils.checkpoint import CheckpointManager
from src.utils.errors import CapExceededError, InvariantViolation, UniserialLabError


SWEEPS = ('monomial', 'multiserial', 'necessity', 'bounds', 'dichotomy', 'surjectivity')

Record = Dict[str, object]


class SweepRunner:
    """Run one sweep with checkpointing and error capture"""

    def __init__(self, checkpoint_manager: CheckpointManager, config: dict, logger: logging.Logger):
        """
        Initialize runner

        Args:
            checkpoint_manager: Checkpoint manager
            config: Configuration dictionary
            logger: Logger instance
        """
        self.checkpoint = checkpoint_manager
        self.config = config
        self.logger = logger
        self.sweep_config = config.get('sweeps', {})
        self.field = Field.prime(self.sweep_config.get('characteristic', 2))
        self.cap = config.get('uniserial', {}).get('enumeration_cap', 16)
        self._census: Dict[str, Census] = {}
        self.errors = 0

    # Families

    def _family_bounds(self) -> Dict[str, int]:
        return {
            'max_vertices': self.sweep_config.get('max_vertices', 4),
            'max_arrows': self.sweep_config.get('max_arrows', 5),
            'max_nilpotency': self.sweep_config.get('max_nilpotency', 4),
        }

    def algebras(self, kind: str) -> Iterator[FDAlgebra]:
        bounds = self._family_bounds()
        yield from monomial_algebras(self.field, relation_sets=self.sweep_config.get('relation_sets', 16), **bounds)
        if kind != 'monomial':
            yield from commutativity_algebras(self.field, **bounds)

    def census(self, algebra: FDAlgebra) -> Optional[Census]:
        """Census used to verify almost split sequences, when enabled"""
        if not self.sweep_config.get('verify_with_census', True):
            return None
        if algebra.name not in self._census:
            ar = self.config.get('ar', {})
            dim_cap = self.sweep_config.get('census_dim_cap', ar.get('census_dim_cap', 8))
            self._census[algebra.name] = census_indecomposables(
                algebra, dim_cap, ar.get('census_budget', 4096), thread_count())
        return self._census[algebra.name]

    def oracle(self, instance: Instance) -> Tuple[bool, bool]:
        """(irreducible, verified against a complete census)"""
        return radical_embedding_oracle(instance.module.rep, self.census(instance.algebra))

    # Per-instance checks

    def _monomial(self, instance: Instance) -> Optional[Record]:
        U = instance.module
        extra = obstruction_extra_arrow(U)
        if extra is not None:
            claim, clauses = False, [f"obstruction:{extra}"]
        else:
            report = check_monomial(U)
            claim, clauses = report.holds, report.failing_clauses
        truth, verified = self.oracle(instance)
        return {'claim': claim, 'oracle': truth, 'oracle_verified': verified, 'clauses': clauses,
                'ok': claim == truth}

    def _multiserial(self, instance: Instance) -> Optional[Record]:
        U = instance.module
        extra = obstruction_extra_arrow(U)
        if extra is not None:
            claim, clauses = False, [f"obstruction:{extra}"]
        else:
            report = check_multiserial(U)
            if report.verdict == UNKNOWN:
                return None
            claim, clauses = report.holds, report.failing_clauses
        truth, verified = self.oracle(instance)
        return {'claim': claim, 'oracle': truth, 'oracle_verified': verified, 'clauses': clauses,
                'ok': claim == truth}

    def _necessity(self, instance: Instance) -> Optional[Record]:
        truth, verified = self.oracle(instance)
        if not truth:
            return None
        U = instance.module
        report = check_1to2a(U)
        quotient = report.details.get('U_is_Lambda_e_mod_Jp', False)
        return {
            'essential_detours': [d.key for d in essential_detours(U.algebra, U.mast)],
            'clauses': report.failing_clauses,
            'U_is_Lambda_e_mod_Jp': quotient,
            'oracle_verified': verified,
            'ok': report.holds and quotient,
        }

    def _bounds(self, instance: Instance) -> Optional[Record]:
        U = instance.module.rep
        if is_projective(U):
            return None
        report = check_bounds(U, self.census(instance.algebra), strict=False)
        record = report.as_dict()
        record['violations'] = [b.name for b in report.violations]
        record['ok'] = not report.violations
        return record

    # Instance streams

    def _module_instances(self, kind: str, check: Callable[[Instance], Optional[Record]]
                          ) -> Iterator[Tuple[str, Callable[[], Optional[Record]]]]:
        for instance in instances(self.algebras(kind), self.cap):
            yield instance.key, (lambda inst=instance: check(inst))

    def _dichotomy_instances(self) -> Iterator[Tuple[str, Callable[[], Optional[Record]]]]:
        rng = random.Random(self.sweep_config.get('seed', 0))
        samples = self.sweep_config.get('dichotomy_samples', 500)
        produced = 0
        for algebra in self.algebras('dichotomy'):
            modules = [simple(algebra, v) for v in algebra.vertices]
            modules += [inst.module.rep for inst in instances(iter([algebra]), self.cap)]
            for i, C in enumerate(modules):
                for j, A in enumerate(modules):
                    space = Ext1Space(C, A)
                    if space.dim == 0:
                        continue
                    choices = [[self.field.one if t == k else self.field.zero for t in range(space.dim)]
                               for k in range(space.dim)]
                    if space.dim > 1:
                        choices.append([self.field.random_element(rng) for _ in range(space.dim)])
                    for n, coeffs in enumerate(choices):
                        if not any(coeffs):
                            continue
                        key = f"{algebra.name}C{i}A{j}#{n}"
                        yield key, (lambda s=space, c=coeffs: self._dichotomy(s, c))
                        produced += 1
                        if produced >= samples:
                            return

    def _dichotomy(self, space: Ext1Space, coeffs: List) -> Record:
        sequence = space.sequence(coeffs, 'sweep')
        try:
            branch = middle_term_dichotomy(sequence)
        except InvariantViolation as exc:
            return {'middle_term': list(sequence.E.dimension_vector), 'error': str(exc), 'ok': False}
        return {'middle_term': list(sequence.E.dimension_vector), 'branch': branch, 'ok': True}

    def _surjectivity_instances(self) -> Iterator[Tuple[str, Callable[[], Optional[Record]]]]:
        entry_cap = self.sweep_config.get('brute_force_entries', 16)
        for algebra in self.algebras('surjectivity'):
            for mast, status in masts(algebra, algebra.nilpotency - 1, self.cap):
                if mast.is_stationary or status != 'verified':
                    continue
                yield f"{algebra.name}{mast}", (lambda a=algebra, p=mast: self._surjectivity(a, p, entry_cap))

    def _surjectivity(self, algebra: FDAlgebra, mast, entry_cap: int) -> Optional[Record]:
        try:
            record = phi_p_surjectivity(algebra, mast, self.cap, entry_cap)
        except CapExceededError:
            return None
        record['ok'] = record['agree']
        return record

    def stream(self, kind: str) -> Iterator[Tuple[str, Callable[[], Optional[Record]]]]:
        if kind == 'dichotomy':
            return self._dichotomy_instances()
        if kind == 'surjectivity':
            return self._surjectivity_instances()
        checks = {
            'monomial': self._monomial,
            'multiserial': self._multiserial,
            'necessity': self._necessity,
            'bounds': self._bounds,
        }
        if kind not in checks:
            raise UniserialLabError(f"unknown sweep {kind!r}; choose one of {', '.join(SWEEPS)}")
        return self._module_instances(kind, checks[kind])

    # Driver

    def run(self, kind: str, limit: Optional[int] = None) -> Generator[Record, None, None]:
        """
        Run a sweep with resumable progress

        Args:
            kind: One of SWEEPS
            limit: Stop after this many instances (None = whole family)

        Yields:
            One record per evaluated instance

        Instances that raise are logged to the checkpoint database and counted
        in self.errors (all runs of this sweep so far), which also goes into
        the statistics.
        """
        checkpoint_data = self.checkpoint.get_checkpoint(kind)

        if checkpoint_data and checkpoint_data['status'] == 'completed':
            self.logger.info(f"✅ {kind} already completed. Skipping.")
            return

        start_index = checkpoint_data['last_index'] + 1 if checkpoint_data else 0
        total_done = checkpoint_data['total_done'] if checkpoint_data else 0
        disagreements = checkpoint_data['disagreements'] if checkpoint_data else 0
        checkpoint_freq = self.config.get('checkpointing', {}).get('checkpoint_every', 25)

        self.logger.info(f"🚀 Starting sweep {kind} from instance {start_index}")
        start_time = datetime.now()
        evaluated = 0
        last_key, last_index = 'START', start_index - 1
        completed = True

        for index, (key, evaluate) in enumerate(self.stream(kind)):
            if index < start_index:
                continue
            if limit is not None and evaluated >= limit:
                self.logger.info(f"✅ Reached limit: {limit} instances")
                completed = False
                break
            try:
                record = evaluate()
            except InvariantViolation:
                self.checkpoint.save_checkpoint(kind, last_key, last_index, total_done, disagreements)
                raise
            except UniserialLabError as e:
                self.logger.error(f"❌ Error on {key}: {e}")
                self.checkpoint.log_error(kind, key, str(e))
                last_key, last_index = key, index
                continue
            last_key, last_index = key, index
            evaluated += 1
            if record is None:
                continue

            record = {'sweep': kind, 'instance': key, **record}
            total_done += 1
            if not record['ok']:
                disagreements += 1
                self.logger.warning(f"⚠️ {kind}: disagreement on {key}")
            yield record

            if total_done % checkpoint_freq == 0:
                self.checkpoint.save_checkpoint(kind, key, index, total_done, disagreements)
                self.logger.info(f"💾 Checkpoint saved: {total_done} instances")

        self.checkpoint.save_checkpoint(kind, last_key, last_index, total_done, disagreements)
        if completed:
            self.checkpoint.mark_complete(kind)

        end_time = datetime.now()
        self.errors = len(self.checkpoint.get_errors(kind))
        self.checkpoint.save_statistics(kind, total_done, disagreements, self.errors, start_time, end_time)
        duration = (end_time - start_time).total_seconds()
        self.logger.info(f"🎉 Completed {kind}: {total_done} instances, {disagreements} disagreements, "
                         f"{self.errors} errors in {duration:.1f}s")
        if self.errors:
            self.logger.warning(f"⚠️ {kind}: {self.errors} instances raised; see sweep --stats")
