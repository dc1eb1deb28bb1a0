#!/usr/bin/env python3
"""
Radical, socle, top and Loewy layers

J is the arrow ideal for an admissible presentation, so JM is the span of
all arrow images and soc M is the joint kernel of all arrow matrices.
"""
from typing import List, Tuple

from src.algebra import linalg
from src.algebra.linalg import Subspace
from src.modules.constructions import quotient_by, submodule_to_representation
from src.modules.representation import ModuleMap, Representation, SubmoduleBasis


def _arrow_images(M: Representation, sub: SubmoduleBasis) -> SubmoduleBasis:
    field = M.field
    images = {v: [] for v in M.algebra.vertices}
    for arrow in M.algebra.quiver.arrows.values():
        for row in sub.spaces[arrow.source].rows:
            images[arrow.target].append(linalg.apply(M.maps[arrow.id], row))
    return SubmoduleBasis(M, {v: Subspace(field, M.dims[v], vecs) for v, vecs in images.items()})


def radical(M: Representation) -> SubmoduleBasis:
    return _arrow_images(M, SubmoduleBasis.whole(M))


def socle(M: Representation) -> SubmoduleBasis:
    field = M.field
    spaces = {}
    for v in M.algebra.vertices:
        rows = []
        for arrow in M.algebra.quiver.arrows_from(v):
            rows.extend(linalg.to_rows(M.maps[arrow.id]))
        if rows:
            spaces[v] = Subspace(field, M.dims[v], linalg.nullspace(field, rows, M.dims[v]))
        else:
            spaces[v] = Subspace.full(field, M.dims[v])
    return SubmoduleBasis(M, spaces)


def top(M: Representation) -> Representation:
    return quotient_by(M, radical(M))[0]


def radical_series(M: Representation) -> List[SubmoduleBasis]:
    """M = J^0 M, JM, J^2 M, ..., ending with the first zero term"""
    series = [SubmoduleBasis.whole(M)]
    while series[-1].dim > 0:
        series.append(_arrow_images(M, series[-1]))
    return series


def loewy_length(M: Representation) -> int:
    return len(radical_series(M)) - 1


def radical_layer_dims(M: Representation) -> List[int]:
    """dim J^i M / J^{i+1} M for each i"""
    series = radical_series(M)
    return [a.dim - b.dim for a, b in zip(series, series[1:])]


def is_uniserial(M: Representation) -> bool:
    """Every radical layer is simple or zero (the zero module counts as uniserial)"""
    return all(d <= 1 for d in radical_layer_dims(M))


def is_local(M: Representation) -> bool:
    """Simple top"""
    return M.dim > 0 and M.dim - radical(M).dim == 1


def radical_inclusion(M: Representation) -> Tuple[Representation, ModuleMap]:
    """JM as a module together with the radical embedding JM -> M"""
    return submodule_to_representation(radical(M))
