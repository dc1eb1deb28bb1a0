#!/usr/bin/env python3
"""
Census of indecomposable modules over a finite field

Every dimension vector with connected support and total dimension up to the
cap is tried; all arrow matrices are enumerated when there are at most
`budget` of them, and the valid indecomposable representations are reduced
to isomorphism classes. Dimension vectors over the budget are skipped and
the census is then flagged incomplete.
"""
import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import networkx as nx

from src.algebra import linalg
from src.algebra.engine import FDAlgebra
from src.modules.decompose import indecomposables_isomorphic, is_indecomposable
from src.modules.representation import Representation
from src.utils.errors import InfiniteFieldError
from src.utils.logger import get_logger


logger = get_logger('ar')

DimVector = Tuple[int, ...]


def thread_count(default: int = 1) -> int:
    """Worker threads allowed by USERIAL_THREADS"""
    raw = os.environ.get('USERIAL_THREADS')
    if not raw:
        return default
    try:
        return max(1, int(raw))
    except ValueError:
        logger.warning(f"⚠️  ignoring USERIAL_THREADS={raw!r}")
        return default


@dataclass
class Census:
    algebra: FDAlgebra
    dim_cap: int
    modules: List[Representation] = field(default_factory=list)
    counts: Dict[DimVector, int] = field(default_factory=dict)
    skipped: List[DimVector] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return not self.skipped

    def __len__(self) -> int:
        return len(self.modules)

    def iso_id(self, M: Representation) -> Optional[int]:
        """Index of the census class isomorphic to the indecomposable M"""
        for i, X in enumerate(self.modules):
            if X.dimension_vector == M.dimension_vector and indecomposables_isomorphic(X, M):
                return i
        return None

    def as_dict(self) -> Dict[str, object]:
        return {
            'algebra': self.algebra.name,
            'field': self.algebra.field.name,
            'dim_cap': self.dim_cap,
            'complete': self.complete,
            'count': len(self.modules),
            'classes': [
                {'id': i, 'dimension_vector': list(M.dimension_vector)}
                for i, M in enumerate(self.modules)
            ],
            'skipped': [list(d) for d in self.skipped],
        }


def _connected_support(algebra: FDAlgebra, dims: DimVector) -> bool:
    support = [v for v, d in zip(algebra.vertices, dims) if d]
    if not support:
        return False
    graph = algebra.quiver.to_networkx().to_undirected().subgraph(support)
    return nx.is_connected(graph)


def dimension_vectors(algebra: FDAlgebra, dim_cap: int) -> List[DimVector]:
    """Candidate dimension vectors, smallest total first"""
    out = [d for d in itertools.product(range(dim_cap + 1), repeat=len(algebra.vertices))
           if 0 < sum(d) <= dim_cap and _connected_support(algebra, d)]
    return sorted(out, key=lambda d: (sum(d), d))


def _classes_with(algebra: FDAlgebra, dims: DimVector) -> List[Representation]:
    field_ = algebra.field
    dim_of = dict(zip(algebra.vertices, dims))
    shapes = [(a.id, dim_of[a.target], dim_of[a.source]) for a in
              sorted(algebra.quiver.arrows.values(), key=lambda a: a.id)]
    entries = sum(m * n for _, m, n in shapes)
    classes: List[Representation] = []
    for values in itertools.product(field_.elements(), repeat=entries):
        maps, pos = {}, 0
        for arrow_id, m, n in shapes:
            chunk = values[pos:pos + m * n]
            pos += m * n
            maps[arrow_id] = linalg.from_rows(field_, [chunk[i * n:(i + 1) * n] for i in range(m)], m, n)
        rep = Representation(algebra, dim_of, maps)
        if rep.validate() or not is_indecomposable(rep):
            continue
        if not any(indecomposables_isomorphic(C, rep) for C in classes):
            classes.append(rep)
    return classes


def census_indecomposables(algebra: FDAlgebra, dim_cap: int = 8, budget: int = 4096,
                           threads: Optional[int] = None) -> Census:
    """
    Isomorphism classes of indecomposables of total dimension <= dim_cap

    Raises:
        InfiniteFieldError: the field is the rationals
    """
    field_ = algebra.field
    if not field_.is_finite:
        raise InfiniteFieldError("a census needs a finite field")
    threads = thread_count() if threads is None else threads
    census = Census(algebra, dim_cap)

    feasible = []
    for dims in dimension_vectors(algebra, dim_cap):
        dim_of = dict(zip(algebra.vertices, dims))
        entries = sum(dim_of[a.target] * dim_of[a.source] for a in algebra.quiver.arrows.values())
        if field_.order ** entries > budget:
            census.skipped.append(dims)
        else:
            feasible.append(dims)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda d: _classes_with(algebra, d), feasible))
    else:
        results = [_classes_with(algebra, d) for d in feasible]

    for dims, found in zip(feasible, results):
        census.counts[dims] = len(found)
        census.modules.extend(found)
    if census.skipped:
        logger.warning(f"⚠️  census over {algebra!r} skipped {len(census.skipped)} dimension vectors above the budget")
    logger.info(f"📚 census: {len(census.modules)} indecomposables up to dimension {dim_cap}"
                f"{'' if census.complete else ' (partial)'}")
    return census
