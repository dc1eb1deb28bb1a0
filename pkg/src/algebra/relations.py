#!/usr/bin/env python3
"""
Relations: K-linear combinations of parallel paths of length >= 2
"""
from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

from src.algebra.field import Field, Scalar
from src.quiver.quiver import Path, Quiver, sort_key
from src.utils.errors import AlgebraError, NonParallelRelationError, ShortRelationTermError


@dataclass
class Relation:
    """A generator of the ideal I; terms are (coefficient, path) pairs"""
    field: Field
    terms: Tuple[Tuple[Scalar, Path], ...]

    @property
    def source(self) -> str:
        return self.terms[0][1].source

    @property
    def target(self) -> str:
        return self.terms[0][1].target

    @property
    def paths(self) -> List[Path]:
        return [p for _, p in self.terms]

    @property
    def min_length(self) -> int:
        return min(p.length for p in self.paths)

    @property
    def max_length(self) -> int:
        return max(p.length for p in self.paths)

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def reversed(self) -> 'Relation':
        """The same relation read in the opposite quiver"""
        return Relation(self.field, tuple((c, p.reversed()) for c, p in self.terms))

    def __str__(self) -> str:
        out = ''
        for i, (c, p) in enumerate(self.terms):
            text = self.field.plain(c)
            negative = text.startswith('-')
            if negative:
                text = text[1:]
            coeff = '' if text == '1' else f"{text}*"
            if i == 0:
                out += ('-' if negative else '') + coeff + str(p)
            else:
                out += (' - ' if negative else ' + ') + coeff + str(p)
        return out


def make_relation(field: Field, terms: Iterable[Tuple[object, Path]]) -> Relation:
    """
    Collect like paths and validate a relation

    Raises:
        AlgebraError: all coefficients cancel
        NonParallelRelationError: terms do not share source and target
        ShortRelationTermError: a term of length < 2
    """
    collected: Dict[Path, Scalar] = {}
    order: List[Path] = []
    for coeff, path in terms:
        c = field(coeff)
        if path not in collected:
            collected[path] = field.zero
            order.append(path)
        collected[path] += c

    kept = [(collected[p], p) for p in order if collected[p] != field.zero]
    if not kept:
        raise AlgebraError("relation is zero")

    first = kept[0][1]
    for _, p in kept[1:]:
        if p.source != first.source or p.target != first.target:
            raise NonParallelRelationError(
                f"relation terms are not parallel: {first} runs {first.source}->{first.target} "
                f"but {p} runs {p.source}->{p.target}"
            )
    for _, p in kept:
        if p.length < 2:
            raise ShortRelationTermError(f"relation term {p} has length {p.length} < 2")

    kept.sort(key=lambda t: sort_key(t[1]))
    return Relation(field, tuple(kept))


def validate_relations(quiver: Quiver, relations: Iterable[Relation]) -> None:
    """Check every relation path is a path of this quiver"""
    for r in relations:
        for p in r.paths:
            rebuilt = quiver.path(*p.arrows)
            if rebuilt != p:
                raise AlgebraError(f"relation path {p} does not belong to the quiver")
