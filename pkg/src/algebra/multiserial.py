#!/usr/bin/env python3
"""
Left multiserial algebras: Je as a sum of uniserial left ideals Lambda*alpha
"""
from typing import Dict, Optional

from src.algebra.engine import FDAlgebra
from src.modules.constructions import submodule_generated, submodule_to_representation
from src.modules.layers import is_uniserial
from src.modules.representation import Projective


def arrow_ideal_uniseriality(algebra: FDAlgebra) -> Dict[str, bool]:
    """For every arrow alpha, whether Lambda*alpha is uniserial"""
    result = {}
    for vertex in algebra.vertices:
        arrows = algebra.quiver.arrows_from(vertex)
        if not arrows:
            continue
        P = Projective(algebra, vertex)
        for arrow in arrows:
            sub = submodule_generated(P, [P.vector_of(algebra.arrow(arrow.id))])
            result[arrow.id] = is_uniserial(submodule_to_representation(sub)[0])
    return result


def requires_uniserial_arrow_ideals(algebra: FDAlgebra) -> bool:
    """True when every Lambda*alpha is uniserial"""
    return all(arrow_ideal_uniseriality(algebra).values())


def is_left_multiserial(algebra: FDAlgebra) -> Optional[int]:
    """
    Least m with Je a sum of m uniserial modules for every vertex e

    Je is the sum of Lambda*alpha over the arrows leaving e, and its top has
    one dimension per such arrow, so whenever all Lambda*alpha are uniserial
    m is the largest out-degree. Returns None when some Lambda*alpha is not
    uniserial (not verified multiserial in this presentation).
    """
    if not requires_uniserial_arrow_ideals(algebra):
        return None
    degrees = [len(algebra.quiver.arrows_from(v)) for v in algebra.vertices]
    return max([1] + degrees)
