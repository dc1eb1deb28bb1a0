#!/usr/bin/env python3
"""
Result types for the irreducibility criteria
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from src.algebra.field import Scalar
from src.modules.homs import is_split_epi, is_split_mono
from src.modules.representation import ModuleMap, Representation


HOLDS = 'holds'
FAILS = 'fails'
UNKNOWN = 'unknown'

# Which result backs a verdict
MONOMIAL = 'monomial'
MULTISERIAL = 'multiserial-dim≤1'
CONJECTURE = 'conjecture-sufficient'
OBSTRUCTION = 'obstruction'
NECESSARY = 'necessary-only'


@dataclass
class FactorizationWitness:
    """
    JU -phi-> V -psi-> U with psi . phi the radical embedding

    The witness counts only once verify() has confirmed all three
    predicates; the results are cached in `checks`.
    """
    V: Representation
    phi: ModuleMap
    psi: ModuleMap
    embedding: ModuleMap
    tag: str
    scalars: Dict[str, Scalar] = field(default_factory=dict)
    notes: Dict[str, str] = field(default_factory=dict)
    checks: Dict[str, bool] = field(default_factory=dict)

    def verify(self) -> bool:
        if not self.checks:
            self.checks = {
                'composite_is_embedding': self.psi.compose(self.phi) == self.embedding,
                'phi_not_split_mono': not is_split_mono(self.phi)[0],
                'psi_not_split_epi': not is_split_epi(self.psi)[0],
            }
        return all(self.checks.values())

    @property
    def verified(self) -> bool:
        return bool(self.checks) and all(self.checks.values())


@dataclass
class CriterionReport:
    """
    Outcome of one criterion

    verdict is about the criterion's conditions, not about irreducibility;
    PipelineReport turns theorem-backed verdicts into a claim.
    """
    criterion: str
    verdict: str
    theorem: str
    failing_clauses: List[str] = field(default_factory=list)
    witness: Optional[FactorizationWitness] = None
    details: Dict[str, object] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    @property
    def fails(self) -> bool:
        return self.verdict == FAILS


@dataclass
class PipelineReport:
    """All criteria run on one uniserial module, most decisive first"""
    mast: str
    reports: List[CriterionReport] = field(default_factory=list)
    irreducible: Optional[bool] = None
    conjectural: bool = False
    decided_by: Optional[str] = None
    witness: Optional[FactorizationWitness] = None
    notes: List[str] = field(default_factory=list)

    def report(self, criterion: str) -> Optional[CriterionReport]:
        for r in self.reports:
            if r.criterion == criterion:
                return r
        return None
