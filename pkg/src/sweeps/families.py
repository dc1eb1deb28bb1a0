#!/usr/bin/env python3
"""
Deterministic families of small algebras and uniserial modules for the sweeps

Quivers have vertices 1..n and arrows i -> j with i < j only, so every
algebra is triangular. Each family is generated in a fixed order, which
lets a sweep resume from a stored index.
"""
import itertools
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from src.algebra.engine import FDAlgebra, build_algebra
from src.algebra.field import Field
from src.algebra.relations import Relation, make_relation
from src.modules.decompose import indecomposables_isomorphic
from src.quiver.quiver import Path, Quiver
from src.uniserial.variety import MastVariety, UniserialModule, masts
from src.utils.errors import CapExceededError, UniserialLabError
from src.utils.logger import get_logger


logger = get_logger('sweeps')

Edge = Tuple[int, int]


@dataclass
class Instance:
    """One (algebra, uniserial module) pair of a sweep"""
    key: str
    algebra: FDAlgebra
    module: UniserialModule


def _quiver_from_edges(n: int, edges: Sequence[Edge]) -> Quiver:
    arrows = [(f"a{k + 1}", str(i), str(j)) for k, (i, j) in enumerate(sorted(edges))]
    return Quiver([str(v) for v in range(1, n + 1)], arrows)


def quivers(max_vertices: int = 4, max_arrows: int = 5, max_parallel: int = 2) -> Iterator[Quiver]:
    """
    Connected acyclic quivers up to isomorphism, fewest vertices and arrows first

    Args:
        max_vertices: Largest number of vertices
        max_arrows: Largest number of arrows
        max_parallel: Largest number of arrows between one pair of vertices
    """
    for n in range(2, max_vertices + 1):
        pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        seen: Dict[str, List[nx.MultiDiGraph]] = {}
        found: List[Tuple[int, Quiver]] = []
        for counts in itertools.product(range(max_parallel + 1), repeat=len(pairs)):
            total = sum(counts)
            if not n - 1 <= total <= max_arrows:
                continue
            edges = [pair for pair, c in zip(pairs, counts) for _ in range(c)]
            quiver = _quiver_from_edges(n, edges)
            graph = quiver.to_networkx()
            if not nx.is_weakly_connected(graph):
                continue
            fingerprint = nx.weisfeiler_lehman_graph_hash(nx.DiGraph(graph)) + f":{total}"
            bucket = seen.setdefault(fingerprint, [])
            if any(nx.is_isomorphic(graph, other) for other in bucket):
                continue
            bucket.append(graph)
            found.append((total, quiver))
        for _, quiver in sorted(found, key=lambda t: t[0]):
            yield quiver


def _name(quiver: Quiver, relations: Sequence[Relation]) -> str:
    arrows = ",".join(f"{a.id}:{a.source}->{a.target}" for a in quiver.arrows.values())
    rels = ";".join(str(r) for r in relations)
    return f"[{arrows}|{rels}]"


def _build(quiver: Quiver, relations: List[Relation], field: Field, max_nilpotency: int) -> Optional[FDAlgebra]:
    try:
        algebra = build_algebra(quiver, relations, field, degree_cap=max_nilpotency + 1,
                                name=_name(quiver, relations))
    except UniserialLabError as exc:
        logger.debug(f"skipping {_name(quiver, relations)}: {exc}")
        return None
    if algebra.nilpotency > max_nilpotency:
        return None
    return algebra


def _zero_relation_sets(quiver: Quiver, max_sets: int) -> Iterator[List[Path]]:
    """Sets of paths of length 2 and 3 killed, no killed path containing another"""
    short = quiver.paths_of_length(2)
    long = quiver.paths_of_length(3)
    produced = 0
    for size in range(len(short) + 1):
        for chosen in itertools.combinations(short, size):
            covered = [q for q in long if any(_contains(q, p) for p in chosen)]
            free = [q for q in long if q not in covered]
            for extra in range(len(free) + 1):
                for more in itertools.combinations(free, extra):
                    yield list(chosen) + list(more)
                    produced += 1
                    if produced >= max_sets:
                        return


def _contains(q: Path, p: Path) -> bool:
    """p occurs as a consecutive block of arrows of q"""
    return any(q.arrows[i:i + p.length] == p.arrows for i in range(q.length - p.length + 1))


def monomial_algebras(field: Field, max_vertices: int = 4, max_arrows: int = 5,
                      max_nilpotency: int = 4, relation_sets: int = 16) -> Iterator[FDAlgebra]:
    """Triangular monomial algebras, up to relation_sets choices of zero relations per quiver"""
    for quiver in quivers(max_vertices, max_arrows):
        for zeros in _zero_relation_sets(quiver, relation_sets):
            relations = [make_relation(field, [(1, p)]) for p in zeros]
            algebra = _build(quiver, relations, field, max_nilpotency)
            if algebra is not None:
                yield algebra


def commutativity_algebras(field: Field, max_vertices: int = 4, max_arrows: int = 5,
                           max_nilpotency: int = 4) -> Iterator[FDAlgebra]:
    """
    Non-monomial algebras: one relation p - q between two parallel paths of
    length 2, optionally with every other path of length 2 killed
    """
    for quiver in quivers(max_vertices, max_arrows):
        short = quiver.paths_of_length(2)
        for p, q in itertools.combinations(short, 2):
            if (p.source, p.target) != (q.source, q.target):
                continue
            commuting = make_relation(field, [(1, p), (-1, q)])
            others = [r for r in short if r not in (p, q)]
            variants = [[commuting]]
            if others:
                variants.append([commuting] + [make_relation(field, [(1, r)]) for r in others])
            for relations in variants:
                algebra = _build(quiver, relations, field, max_nilpotency)
                if algebra is not None:
                    yield algebra


def uniserials(algebra: FDAlgebra, cap: int = 16) -> Iterator[UniserialModule]:
    """
    Non-simple uniserial modules with a verified mast, one per iso-class per mast

    Over a finite field every point of V_p is tried; the rationals fall back
    to the all-ones and all-zeros points.
    """
    for mast, status in masts(algebra, algebra.nilpotency - 1, cap):
        if mast.is_stationary or status != 'verified':
            continue
        variety = MastVariety(algebra, mast)
        try:
            points = variety.enumerate(cap) if algebra.field.is_finite else [
                variety.constant_point(1), variety.constant_point(0)]
        except CapExceededError:
            continue
        kept: List[UniserialModule] = []
        for point in points:
            if not variety.contains(point):
                continue
            U = variety.build(point)
            if not any(indecomposables_isomorphic(V.rep, U.rep) for V in kept):
                kept.append(U)
        yield from kept


def instances(algebras: Iterator[FDAlgebra], cap: int = 16) -> Iterator[Instance]:
    """(algebra, U) pairs keyed by algebra, mast and point"""
    for algebra in algebras:
        for U in uniserials(algebra, cap):
            point = ",".join(f"{k}={v}" for k, v in sorted(U.point.as_dict(algebra.field.plain).items()))
            yield Instance(f"{algebra.name}{U.mast}{{{point}}}", algebra, U)
