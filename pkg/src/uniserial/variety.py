#!/usr/bin/env python3
"""
Masts, the point sets V_p and the modules Lambda e(1) / U_k

For a mast p starting at e(1) and a point k (one scalar k_i(alpha, u) per
detour and index), U_k is the left ideal generated by

    alpha*u - sum_i k_i(alpha, u) v_i      over the detours (alpha, u)
    q                                      over the non-routes q

and Phi_p(k) = Lambda e(1) / U_k. A point belongs to V_p exactly when this
quotient is uniserial of length len(p) + 1 with p * (e(1) + U_k) != 0;
membership is decided by building the module.
"""
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from src.algebra import linalg
from src.algebra.engine import FDAlgebra
from src.algebra.field import Scalar
from src.modules.constructions import quotient_by, submodule_generated
from src.modules.decompose import indecomposables_isomorphic
from src.modules.layers import is_uniserial, radical, radical_series
from src.modules.representation import Projective, Representation, SubmoduleBasis
from src.quiver.combinatorics import Detour, classify_arrows, detours, minimal_non_routes
from src.quiver.quiver import Path, compose
from src.utils.errors import (
    CapExceededError,
    InfiniteFieldError,
    PathIsZeroError,
    PointNotInVarietyError,
    RelationViolationError,
    UnsupportedConfigurationError,
    VarietyError,
)
from src.utils.logger import get_logger


logger = get_logger('uniserial')

Coordinate = Tuple[str, int]


def coordinate_name(detour: Detour, index: int) -> str:
    """"d1@a1" for one-element families, "d1@a1:i" otherwise"""
    if len(detour.v_family) == 1:
        return detour.key
    return f"{detour.key}:{index}"


@dataclass
class UniserialPoint:
    """A point k of the affine space hosting V_p"""
    mast: Path
    scalars: Dict[Coordinate, Scalar]
    detours: Tuple[Detour, ...] = ()

    def coordinates(self) -> List[Scalar]:
        return [self.scalars[(d.key, i)] for d in self.detours for i in d.indices]

    def value(self, detour: Detour, index: int = 0) -> Scalar:
        return self.scalars[(detour.key, index)]

    def as_dict(self, fmt) -> Dict[str, str]:
        return {coordinate_name(d, i): fmt(self.scalars[(d.key, i)]) for d in self.detours for i in d.indices}

    def __len__(self) -> int:
        return len(self.scalars)


@dataclass
class UniserialModule:
    """A uniserial module with its mast, top element and (measured) point"""
    point: UniserialPoint
    rep: Representation
    top: List[Scalar]
    extra: Dict[str, object] = dataclass_field(default_factory=dict)

    @property
    def mast(self) -> Path:
        return self.point.mast

    @property
    def length(self) -> int:
        return self.rep.dim

    @property
    def algebra(self) -> FDAlgebra:
        return self.rep.algebra

    def mast_vertices(self) -> Tuple[str, ...]:
        return self.mast.vertices


class MastVariety:
    """Everything about V_p that does not depend on the point"""

    def __init__(self, algebra: FDAlgebra, mast: Path):
        self.algebra = algebra
        self.field = algebra.field
        self.mast = mast
        if algebra.path_element(mast).is_zero():
            raise PathIsZeroError(f"{mast} is zero in the algebra")
        self.detours: Tuple[Detour, ...] = tuple(detours(algebra.quiver, mast))
        self.projective = Projective(algebra, mast.source)
        P = self.projective
        self.non_route_vectors = [
            P.vector_of(algebra.path_element(q))
            for q in minimal_non_routes(algebra.quiver, mast, algebra.nilpotency)
        ]
        self.mast_vector = P.vector_of(algebra.path_element(mast))

    @property
    def size(self) -> int:
        """Number of scalar coordinates N"""
        return sum(len(d.v_family) for d in self.detours)

    def coordinates(self) -> List[Coordinate]:
        return [(d.key, i) for d in self.detours for i in d.indices]

    def point(self, scalars: Mapping[object, object]) -> UniserialPoint:
        """
        Build a point from {(detour key, index): value} or {"d1@a1[:i]": value}

        Raises:
            VarietyError: missing or unknown coordinates
        """
        parsed: Dict[Coordinate, Scalar] = {}
        for key, value in scalars.items():
            if isinstance(key, str):
                name, _, index = key.partition(':')
                key = (name, int(index) if index else 0)
            parsed[tuple(key)] = self.field(value)
        expected = set(self.coordinates())
        unknown = set(parsed) - expected
        if unknown:
            raise VarietyError(f"no such detour coordinates on {self.mast}: {sorted(unknown)}")
        missing = expected - set(parsed)
        if missing:
            raise VarietyError(f"missing detour coordinates on {self.mast}: {sorted(missing)}")
        return UniserialPoint(self.mast, parsed, self.detours)

    def point_from_values(self, values: Sequence[Scalar]) -> UniserialPoint:
        return UniserialPoint(self.mast, dict(zip(self.coordinates(), values)), self.detours)

    def constant_point(self, value: int) -> UniserialPoint:
        return self.point_from_values([self.field(value)] * self.size)

    def generators(self, point: UniserialPoint) -> List[List[Scalar]]:
        """Vectors in Lambda e(1) generating U_k"""
        P = self.projective
        vectors = list(self.non_route_vectors)
        for d in self.detours:
            terms = [(self.field.one, d.path)]
            for i, v in enumerate(d.v_family):
                terms.append((-point.value(d, i), v))
            vectors.append(P.vector_of(self.algebra.element(terms)))
        return vectors

    def submodule(self, point: UniserialPoint) -> SubmoduleBasis:
        return submodule_generated(self.projective, self.generators(point))

    def build(self, point: UniserialPoint) -> UniserialModule:
        """
        Phi_p(k)

        Raises:
            PointNotInVarietyError: p dies in the quotient or it is not uniserial of length len(p) + 1
        """
        sub = self.submodule(point)
        if sub.contains(self.mast_vector):
            raise PointNotInVarietyError(f"p = {self.mast} lies in U_k")
        U, pi = quotient_by(self.projective, sub)
        if U.dim != self.mast.length + 1 or not is_uniserial(U):
            raise PointNotInVarietyError(
                f"quotient has dimension vector {U.dimension_vector}, not uniserial of length {self.mast.length + 1}"
            )
        return UniserialModule(point, U, pi.apply(self.projective.generator()))

    def contains(self, point: UniserialPoint) -> bool:
        try:
            self.build(point)
            return True
        except PointNotInVarietyError:
            return False

    def enumerate(self, cap: int = 16, threads: int = 1) -> List[UniserialPoint]:
        """
        All points of V_p (finite fields only)

        Raises:
            InfiniteFieldError: the field is the rationals
            CapExceededError: more than cap scalar coordinates
        """
        if not self.field.is_finite:
            raise InfiniteFieldError("V_p can only be enumerated over a finite field")
        if self.size > cap:
            raise CapExceededError(f"{self.size} scalar coordinates on {self.mast} exceed the enumeration cap {cap}")
        candidates = [self.point_from_values(values)
                      for values in itertools.product(self.field.elements(), repeat=self.size)]
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                verdicts = list(pool.map(self.contains, candidates))
        else:
            verdicts = [self.contains(k) for k in candidates]
        points = [k for k, ok in zip(candidates, verdicts) if ok]
        logger.debug(f"V_p for {self.mast}: {len(points)} of {len(candidates)} candidate points")
        return points


def u_k_submodule(algebra: FDAlgebra, p: Path, point: UniserialPoint) -> SubmoduleBasis:
    """U_k as a submodule of Lambda e(1)"""
    return MastVariety(algebra, p).submodule(point)


def phi_p(algebra: FDAlgebra, p: Path, point: UniserialPoint) -> UniserialModule:
    return MastVariety(algebra, p).build(point)


def enumerate_variety(algebra: FDAlgebra, p: Path, cap: int = 16, threads: int = 1) -> List[UniserialPoint]:
    return MastVariety(algebra, p).enumerate(cap, threads)


def measure_point(algebra: FDAlgebra, rep: Representation, top: Sequence[Scalar], mast: Path) -> UniserialPoint:
    """
    Read k back from a uniserial module: alpha*u*x = sum_i k_i v_i x

    Raises:
        VarietyError: p*x = 0 or some alpha*u*x is outside the span of the v_i x
    """
    if not any(rep.act_path(mast, top)):
        raise VarietyError(f"{mast} kills the given top element")
    found = tuple(detours(algebra.quiver, mast))
    scalars: Dict[Coordinate, Scalar] = {}
    for d in found:
        target = rep.act_path(d.path, top)
        images = [rep.act_path(v, top) for v in d.v_family]
        rows = [[img[e] for img in images] for e in range(rep.dim)]
        coeffs = linalg.solve(algebra.field, rows, target, len(images))
        if coeffs is None:
            raise VarietyError(f"{d.path} x is not a combination of the longer right subpaths")
        for i, c in enumerate(coeffs):
            scalars[(d.key, i)] = c
    return UniserialPoint(mast, scalars, found)


def uniserial_from_representation(rep: Representation) -> UniserialModule:
    """
    Recover a top element, a mast and the point of a uniserial representation

    Raises:
        VarietyError: rep is zero or not uniserial
    """
    if rep.dim == 0 or not is_uniserial(rep):
        raise VarietyError(f"{rep!r} is not a nonzero uniserial module")
    algebra = rep.algebra
    series = radical_series(rep)
    rad = series[1]
    top = None
    for v in algebra.vertices:
        for x in rep.vertex_basis(v):
            if not rad.contains(x):
                top = x
                break
        if top is not None:
            break

    path = algebra.quiver.stationary(rep.support(top)[0])
    y = top
    for k in range(1, len(series) - 1):
        deeper = series[k + 1]
        for arrow in sorted(algebra.quiver.arrows_from(path.target), key=lambda a: a.id):
            image = rep.apply_arrow(arrow.id, y)
            if not deeper.contains(image):
                path = compose(algebra.quiver.arrow_path(arrow.id), path)
                y = image
                break
    return UniserialModule(measure_point(algebra, rep, top, path), rep, top)


def from_mast_and_fdelta(algebra: FDAlgebra, p: Path, fdelta: Mapping[str, object]) -> UniserialModule:
    """
    The uniserial with U_x = K on the mast, identities along p and the given f_delta

    Raises:
        UnsupportedConfigurationError: the algebra is not triangular or p repeats a vertex
        VarietyError: f_delta names an arrow outside D
        RelationViolationError: the scalars violate a relation
    """
    if not algebra.is_triangular():
        raise UnsupportedConfigurationError("f_delta parametrization needs a triangular algebra")
    classes = classify_arrows(algebra.quiver, p)
    unknown = set(fdelta) - set(classes.D)
    if unknown:
        raise VarietyError(f"arrows {sorted(unknown)} do not join two mast vertices outside the mast")
    field = algebra.field
    one = [[field.one]]
    dims = {v: 1 for v in p.vertices}
    maps = {}
    for arrow_id in p.arrows:
        maps[arrow_id] = linalg.from_rows(field, one, 1, 1)
    for arrow_id in classes.D:
        maps[arrow_id] = linalg.from_rows(field, [[field(fdelta.get(arrow_id, 0))]], 1, 1)
    rep = Representation(algebra, dims, maps, name=f"U({p})")
    violations = rep.validate()
    if violations:
        raise RelationViolationError(
            f"f_delta choice violates {', '.join(violations)}", violations
        )
    top = rep.unit(p.source, 0)
    return UniserialModule(measure_point(algebra, rep, top, p), rep, top)


def masts(algebra: FDAlgebra, maxlen: int, cap: int = 16) -> List[Tuple[Path, str]]:
    """
    Nonzero paths of length <= maxlen with status "verified" or "candidate"

    Over a finite field a mast is verified by enumeration (when N <= cap);
    otherwise the all-zeros and all-ones points are tried.
    """
    out = []
    for v in algebra.vertices:
        for q in algebra.quiver.paths_from(v, min(maxlen, algebra.nilpotency - 1)):
            if algebra.path_element(q).is_zero():
                continue
            variety = MastVariety(algebra, q)
            verified = False
            if algebra.field.is_finite and variety.size <= cap:
                verified = any(variety.contains(k) for k in _lazy_points(variety))
            else:
                verified = variety.contains(variety.constant_point(0)) or variety.contains(variety.constant_point(1))
            out.append((q, "verified" if verified else "candidate"))
    return out


def _lazy_points(variety: MastVariety) -> Iterable[UniserialPoint]:
    for values in itertools.product(variety.field.elements(), repeat=variety.size):
        yield variety.point_from_values(values)


def iso_classes(modules: Iterable[Representation]) -> List[Representation]:
    """Representatives of the isomorphism classes among indecomposable modules"""
    classes: List[Representation] = []
    for M in modules:
        if not any(indecomposables_isomorphic(C, M) for C in classes):
            classes.append(M)
    return classes


def brute_force_uniserials(algebra: FDAlgebra, p: Path, entry_cap: int = 16) -> List[Representation]:
    """
    Iso-classes of all uniserial representations with mast p, by raw enumeration

    Every representation with the dimension vector of p (each vertex counted
    as often as p visits it) is built over the finite field; the valid,
    uniserial ones on which p acts nonzero are kept.

    Raises:
        InfiniteFieldError: the field is the rationals
        CapExceededError: more than entry_cap matrix entries to enumerate
    """
    field = algebra.field
    if not field.is_finite:
        raise InfiniteFieldError("brute-force enumeration needs a finite field")
    dims = {v: p.vertices.count(v) for v in algebra.vertices}
    shapes = [(a.id, dims[a.target], dims[a.source]) for a in algebra.quiver.arrows.values()]
    entries = sum(m * n for _, m, n in shapes)
    if entries > entry_cap:
        raise CapExceededError(f"{entries} matrix entries exceed the brute-force cap {entry_cap}")

    found = []
    for values in itertools.product(field.elements(), repeat=entries):
        maps, pos = {}, 0
        for arrow_id, m, n in shapes:
            chunk = values[pos:pos + m * n]
            pos += m * n
            maps[arrow_id] = linalg.from_rows(field, [chunk[i * n:(i + 1) * n] for i in range(m)], m, n)
        rep = Representation(algebra, dims, maps)
        if rep.validate() or not is_uniserial(rep):
            continue
        if linalg.is_zero_matrix(rep.path_matrix(p)):
            continue
        found.append(rep)
    return iso_classes(found)


def phi_p_surjectivity(algebra: FDAlgebra, p: Path, cap: int = 16, entry_cap: int = 16) -> Dict[str, object]:
    """Compare the iso-classes hit by Phi_p with all uniserials of mast p"""
    image = iso_classes(phi_p(algebra, p, k).rep for k in enumerate_variety(algebra, p, cap))
    brute = brute_force_uniserials(algebra, p, entry_cap)
    missed = [M for M in brute if not any(indecomposables_isomorphic(M, N) for N in image)]
    return {
        "mast": str(p),
        "phi_classes": len(image),
        "brute_classes": len(brute),
        "missed": [list(M.dimension_vector) for M in missed],
        "agree": not missed and len(image) == len(brute),
    }


def fdelta_from_point(algebra: FDAlgebra, point: UniserialPoint) -> Dict[str, Scalar]:
    """The f_delta scalars of a triangular uniserial, read off its detours of the form (delta, u)"""
    classes = classify_arrows(algebra.quiver, point.mast)
    out = {}
    for d in point.detours:
        if d.arrow in classes.D:
            out[d.arrow] = point.value(d, 0)
    return out
