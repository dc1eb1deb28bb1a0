#!/usr/bin/env python3
"""
Module descriptions used on the command line

    simple:V          the simple module at V
    projective:V      Lambda e_V
    injective:V       D(e_V Lambda)
    uniserial:PATH    a uniserial module with mast PATH (default point)
    uniserial:PATH/d1@a1=1,b1@a2:1=0
                      the same at an explicit point of V_PATH
"""
from typing import Dict, Mapping, Optional

from src.algebra.engine import FDAlgebra
from src.ar.presentation import injective
from src.modules.representation import Representation, projective, simple
from src.uniserial.variety import MastVariety, UniserialModule, from_mast_and_fdelta
from src.utils.errors import (
    PointNotInVarietyError,
    QuiverError,
    RelationViolationError,
    UniserialLabError,
    VarietyError,
)


KINDS = ('simple', 'projective', 'injective', 'uniserial')


def parse_assignments(text: str) -> Dict[str, str]:
    """"a=1,b=2/3" -> {'a': '1', 'b': '2/3'}"""
    out = {}
    for chunk in filter(None, (c.strip() for c in text.split(','))):
        key, sep, value = chunk.partition('=')
        if not sep or not key.strip() or not value.strip():
            raise VarietyError(f"expected name=value, got {chunk!r}")
        out[key.strip()] = value.strip()
    return out


def uniserial_for(
    algebra: FDAlgebra,
    mast_text: str,
    point: Optional[Mapping[str, object]] = None,
    fdelta: Optional[Mapping[str, object]] = None,
) -> UniserialModule:
    """
    A uniserial module with the given mast

    An explicit point goes through Phi_p and explicit f_delta scalars through
    the triangular parametrization. With neither, triangular algebras try
    f_delta = 0 on every arrow of D; otherwise (or when that breaks a
    relation) the first of the all-ones and all-zeros points in V_p is used.

    Raises:
        QuiverError: the mast does not parse
        VarietyError: no uniserial module with this mast could be built
    """
    mast = algebra.quiver.parse_path(mast_text)
    if point is not None and fdelta is not None:
        raise VarietyError("give either a point or f_delta scalars, not both")
    if fdelta is not None:
        return from_mast_and_fdelta(algebra, mast, fdelta)
    if point is None and algebra.is_triangular() and not mast.has_repeated_vertex():
        try:
            return from_mast_and_fdelta(algebra, mast, {})
        except RelationViolationError:
            pass
    variety = MastVariety(algebra, mast)
    if point is not None:
        return variety.build(variety.point(point))
    for value in (1, 0):
        try:
            return variety.build(variety.constant_point(value))
        except PointNotInVarietyError:
            continue
    raise VarietyError(f"neither the all-ones nor the all-zeros point lies in V_p for {mast}; pass --point")


def build_module(algebra: FDAlgebra, text: str) -> Representation:
    """
    Build the module described by a KIND:ARGUMENT string

    Raises:
        VarietyError: unknown kind or malformed argument
        QuiverError: unknown vertex or path
    """
    kind, sep, argument = text.partition(':')
    if not sep or kind not in KINDS or not argument:
        raise VarietyError(f"module spec {text!r} is not one of {', '.join(k + ':...' for k in KINDS)}")
    if kind == 'simple':
        return simple(algebra, algebra.quiver.check_vertex(argument))
    if kind == 'projective':
        return projective(algebra, algebra.quiver.check_vertex(argument))
    if kind == 'injective':
        return injective(algebra, algebra.quiver.check_vertex(argument))
    mast_text, _, scalars = argument.partition('/')
    point = parse_assignments(scalars) if scalars else None
    return uniserial_for(algebra, mast_text, point=point).rep


def describe_failure(exc: UniserialLabError) -> str:
    kind = 'path' if isinstance(exc, QuiverError) else 'module'
    return f"bad {kind}: {exc}"
