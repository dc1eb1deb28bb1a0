#!/usr/bin/env python3
"""
Bounds on alpha(U) for a non-projective uniserial U

Every applicable bound is evaluated against the computed almost split
sequence; a violated bound means a bug somewhere below and is raised as
InvariantViolation after a CRITICAL log line.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from src.algebra.multiserial import is_left_multiserial
from src.ar.presentation import minimal_presentation
from src.ar.sequences import almost_split_sequence, middle_summands
from src.modules.decompose import indecomposables_isomorphic
from src.modules.layers import is_uniserial, radical_inclusion, socle
from src.modules.representation import Representation
from src.uniserial.variety import uniserial_from_representation
from src.utils.errors import ARError, InvariantViolation, VarietyError
from src.utils.logger import get_logger


logger = get_logger('ar')


@dataclass
class Bound:
    name: str
    applies: bool
    holds: bool
    statement: str


@dataclass
class BoundsReport:
    alpha: int
    soc_dtr_length: int
    middle_dims: List[List[int]]
    mono_count: int
    epi_count: int
    multiserial_m: Optional[int]
    cyclic_presentation: bool
    verified: bool = False
    bounds: List[Bound] = field(default_factory=list)

    @property
    def violations(self) -> List[Bound]:
        return [b for b in self.bounds if b.applies and not b.holds]

    def as_dict(self) -> Dict[str, object]:
        return {
            'alpha': self.alpha,
            'soc_dtr_length': self.soc_dtr_length,
            'middle_term': self.middle_dims,
            'mono_count': self.mono_count,
            'epi_count': self.epi_count,
            'multiserial_m': self.multiserial_m,
            'cyclic_presentation': self.cyclic_presentation,
            'verified': self.verified,
            'bounds': {b.name: {'applies': b.applies, 'holds': b.holds, 'statement': b.statement}
                       for b in self.bounds},
        }


def is_cyclic_quotient_by_one(U: Representation) -> bool:
    """U = Lambda e / Lambda a: one projective in each of P_0 and P_1 of a minimal presentation"""
    presentation = minimal_presentation(U)
    return presentation.P0.summands == 1 and presentation.P1.summands == 1


def check_bounds(U: Representation, census=None, strict: bool = True) -> BoundsReport:
    """
    Evaluate the alpha(U) bounds on a non-projective uniserial U

    Args:
        U: Non-projective uniserial module
        census: Optional census for the almost split verification
        strict: Raise on the first violated bound

    Raises:
        ARError: U is not uniserial (or projective, via almost_split_sequence)
        InvariantViolation: a bound fails and strict is set
    """
    if not is_uniserial(U):
        raise ARError(f"{U!r} is not uniserial")
    sequence = almost_split_sequence(U, census)
    summands = middle_summands(sequence)
    alpha = len(summands)
    soc_len = socle(sequence.A).dim
    JU, _ = radical_inclusion(U)
    # an irreducible g_i: B_i -> U is mono exactly when B_i is JU
    mono = sum(1 for B in summands if JU.dim and indecomposables_isomorphic(B, JU))
    epi = alpha - mono
    m = is_left_multiserial(U.algebra)
    cyclic = is_cyclic_quotient_by_one(U)
    report = BoundsReport(alpha, soc_len, [list(B.dimension_vector) for B in summands], mono, epi, m, cyclic,
                          sequence.verified)

    add = report.bounds.append
    add(Bound('soc2', True, alpha <= soc_len + 1, f"alpha={alpha} <= len soc DTrU + 1 = {soc_len + 1}"))
    add(Bound('mono-i', True, mono <= 1, f"{mono} mono components"))
    add(Bound('mono-iii', True, epi <= soc_len, f"|I'|={epi} <= len soc DTrU = {soc_len}"))
    all_epi_simple = mono == 0 and all(socle(B).dim == 1 for B in summands)
    add(Bound('mono-ii', all_epi_simple, socle(sequence.E).dim == soc_len,
              "all g_i epi with simple socles: soc E = f(soc DTrU)"))
    add(Bound('indec', cyclic, alpha <= 2, f"U = Lambda e / Lambda a: alpha={alpha} <= 2"))
    add(Bound('alpha2', m is not None and m >= 2, m is not None and alpha <= m, f"alpha={alpha} <= m={m}"))
    add(Bound('final-i', m == 1, alpha <= 2, f"left serial: alpha={alpha} <= 2"))

    try:
        mast = uniserial_from_representation(U).mast
    except VarietyError:
        mast = None
    single_arrow = mast is not None and len(U.algebra.quiver.arrows_from(mast.source)) == 1
    add(Bound('final-ii', m is not None and single_arrow, alpha <= 2,
              f"one arrow leaves s(p): alpha={alpha} <= 2"))
    jp_zero = False
    if mast is not None and not mast.is_stationary:
        jp, _ = U.algebra.jp_spaces(mast)
        jp_zero = jp.dim == 0
    add(Bound('final-iii', m == 2 and jp_zero, alpha == 1, f"m=2 and Jp=0: alpha={alpha} == 1"))

    for bound in report.violations:
        logger.critical(f"🚨 bound {bound.name} violated on {U!r}: {bound.statement}")
    if strict and report.violations:
        names = ", ".join(b.name for b in report.violations)
        raise InvariantViolation(f"alpha bounds violated on {U.dimension_vector}: {names}")
    return report
