#!/usr/bin/env python3
"""
Ext^1, almost split sequences and the radical-embedding oracle

Ext^1(C, A) is computed from the projective cover 0 -> K -k-> P_0 -pi-> C:
classes are maps theta: K -> A modulo restrictions of maps P_0 -> A, and
theta gives the pushout sequence 0 -> A -> E -> C -> 0.

The almost split sequence ending in U is the class in Ext^1(U, D Tr U)
killed by rad End(U) and by rad End(D Tr U). It is then checked by
behaviour: every non-retraction into U tried must factor through g.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from src.algebra import linalg
from src.algebra.field import Scalar
from src.algebra.linalg import Subspace, Vector
from src.ar.presentation import dtr, is_projective, projective_cover
from src.modules.constructions import kernel, pushout
from src.modules.decompose import EndomorphismRing, decompose, indecomposables_isomorphic, is_indecomposable
from src.modules.homs import factor_through, hom_from_generators, hom_space, is_split_epi
from src.modules.layers import is_uniserial, radical_inclusion
from src.modules.representation import ModuleMap, Representation
from src.utils.errors import (
    ARError,
    InvariantViolation,
    NotIndecomposableError,
    ProjectiveModuleError,
    VerificationError,
)
from src.utils.logger import get_logger


logger = get_logger('ar')

INDECOMPOSABLE = 'indecomposable'
TWO_UNISERIALS = 'two-uniserials'


@dataclass
class SESClass:
    """0 -> A -f-> E -g-> C -> 0"""
    A: Representation
    E: Representation
    C: Representation
    f: ModuleMap
    g: ModuleMap
    provenance: str = 'user'
    coordinates: List[Scalar] = field(default_factory=list)
    verification: Dict[str, object] = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return bool(self.verification.get('verified'))

    def is_exact(self) -> bool:
        return (
            self.f.is_injective()
            and self.g.is_surjective()
            and self.g.compose(self.f).is_zero()
            and self.E.dim == self.A.dim + self.C.dim
        )

    def is_split(self) -> bool:
        return is_split_epi(self.g)[0]


def _flatten(f: ModuleMap) -> List[Scalar]:
    return [c for v in f.source.algebra.vertices for row in linalg.to_rows(f.maps[v]) for c in row]


class Ext1Space:
    """Ext^1(C, A) with a fixed basis of cocycles theta_1, ..., theta_d: Omega C -> A"""

    def __init__(self, C: Representation, A: Representation):
        if C.algebra is not A.algebra:
            raise ARError("Ext^1 needs modules over one algebra")
        self.C = C
        self.A = A
        self.field = C.field
        self.cover = projective_cover(C)
        self.basis: List[ModuleMap] = []
        if self.cover.P is None:
            return
        self.K, self.k = kernel(self.cover.map)
        restrictions = [h.compose(self.k) for h in hom_space(self.cover.P, A)]
        size = len(_flatten(ModuleMap.zero(self.K, A)))
        self.coboundaries = Subspace(self.field, size, [_flatten(r) for r in restrictions])
        current = self.coboundaries
        for theta in hom_space(self.K, A):
            flat = _flatten(theta)
            if not current.contains(flat):
                self.basis.append(theta)
                current = current.extend([flat])
        self._span = current

    @property
    def dim(self) -> int:
        return len(self.basis)

    def cocycle(self, coeffs: Sequence[Scalar]) -> ModuleMap:
        theta = ModuleMap.zero(self.K, self.A)
        for c, b in zip(coeffs, self.basis):
            if c:
                theta = theta + b.scale(c)
        return theta

    def coordinates(self, theta: ModuleMap) -> List[Scalar]:
        """Class of a cocycle K -> A in the fixed basis"""
        columns = [_flatten(b) for b in self.basis] + list(self.coboundaries.rows)
        target = _flatten(theta)
        rows = [[col[e] for col in columns] for e in range(len(target))]
        solution = linalg.solve(self.field, rows, target, len(columns))
        if solution is None:
            raise ARError("map is not a cocycle of this Ext^1 presentation")
        return solution[:self.dim]

    def sequence(self, coeffs: Sequence[Scalar], provenance: str = 'ext-basis') -> SESClass:
        """The pushout sequence of sum c_i theta_i"""
        theta = self.cocycle(coeffs)
        E, from_P, from_A = pushout(self.k, theta)
        P = self.cover.P
        generators, images = [], []
        for i in range(P.dim):
            unit = linalg.unit_vector(self.field, P.dim, i)
            generators.append(from_P.apply(unit))
            images.append(self.cover.map.apply(unit))
        for i in range(self.A.dim):
            generators.append(from_A.apply(linalg.unit_vector(self.field, self.A.dim, i)))
            images.append(self.C.zero_vector())
        g = hom_from_generators(E, generators, self.C, images)
        if g is None:
            raise ARError("pushout does not map onto C")
        return SESClass(self.A, E, self.C, from_A, g, provenance, list(coeffs))

    def classes(self) -> List[SESClass]:
        return [self.sequence(linalg.unit_vector(self.field, self.dim, i)) for i in range(self.dim)]

    def act_on_end_C(self, h: ModuleMap) -> List[List[Scalar]]:
        """Matrix of theta -> theta . h (pullback along h in End C), columns in the fixed basis"""
        h0 = factor_through(self.cover.map, h.compose(self.cover.map))
        if h0 is None:
            raise ARError("endomorphism does not lift to the projective cover")
        h1 = factor_through(self.k, h0.compose(self.k))
        if h1 is None:
            raise ARError("lifted endomorphism does not preserve Omega C")
        return [self.coordinates(theta.compose(h1)) for theta in self.basis]

    def act_on_end_A(self, t: ModuleMap) -> List[List[Scalar]]:
        """Matrix of theta -> t . theta (pushout along t in End A)"""
        return [self.coordinates(t.compose(theta)) for theta in self.basis]


def ext1(C: Representation, A: Representation) -> List[SESClass]:
    """Sequences forming a basis of Ext^1(C, A)"""
    return Ext1Space(C, A).classes()


def _radical_maps(M: Representation) -> List[ModuleMap]:
    ring = EndomorphismRing(M)
    R = ring.radical()
    if ring.dim - R.dim != 1:
        raise ARError(f"End of {M.dimension_vector} modulo its radical is not the ground field")
    return [ring.as_map(ring.combine(row)) for row in R.rows]


def _ext_socle(space: Ext1Space, U: Representation, tau: Representation) -> List[Vector]:
    """Classes killed by rad End(U) and rad End(D Tr U)"""
    rows = []
    for acting in [space.act_on_end_C(h) for h in _radical_maps(U)] + \
                  [space.act_on_end_A(t) for t in _radical_maps(tau)]:
        for l in range(space.dim):
            rows.append([column[l] for column in acting])
    if not rows:
        return [linalg.unit_vector(space.field, space.dim, i) for i in range(space.dim)]
    return linalg.nullspace(space.field, rows, space.dim)


def lifts_through(g: ModuleMap, maps: Sequence[ModuleMap]) -> List[int]:
    """Indices of the maps that do not factor through g"""
    return [i for i, h in enumerate(maps) if factor_through(g, h) is None]


def verify_almost_split(sequence: SESClass, census=None) -> Dict[str, object]:
    """
    Behavioural check of an almost split sequence ending in U = sequence.C

    Nonsplit, JU -> U and rad End(U) factor through g, and with a census
    every map X -> U from a census indecomposable X not isomorphic to U does too.
    'ok' means no check failed; 'verified' additionally needs a complete
    census whose maps all lift. Without one the sequence rests on the local
    checks only and is reported as unverified.
    """
    U = sequence.C
    report: Dict[str, object] = {'exact': sequence.is_exact(), 'nonsplit': not sequence.is_split()}
    checks = list(_radical_maps(U))
    JU, iota = radical_inclusion(U)
    if JU.dim:
        checks.append(iota)
    report['local_maps_lift'] = not lifts_through(sequence.g, checks)
    if census is not None:
        failures = []
        for index, X in enumerate(census.modules):
            if X.dimension_vector == U.dimension_vector and indecomposables_isomorphic(X, U):
                continue
            if lifts_through(sequence.g, hom_space(X, U)):
                failures.append(index)
        report['census_maps_lift'] = not failures
        report['census_failures'] = failures
        report['census_complete'] = census.complete
    report['ok'] = all(v for k, v in report.items() if k in ('exact', 'nonsplit', 'local_maps_lift', 'census_maps_lift'))
    report['verified'] = bool(report['ok'] and report.get('census_maps_lift') and report.get('census_complete'))
    if census is None:
        report['verification'] = 'local-only'
    else:
        report['verification'] = 'census' if census.complete else 'partial-census'
    return report


def almost_split_sequence(U: Representation, census=None) -> SESClass:
    """
    The almost split sequence 0 -> D Tr U -> E -> U -> 0

    The behavioural report is kept on sequence.verification; its 'verified'
    flag is False unless a complete census was checked.

    Raises:
        ARError: U is zero or End(U) is not split local
        ProjectiveModuleError: U is projective
        NotIndecomposableError: U decomposes
        VerificationError: the constructed sequence fails the behavioural check
    """
    if U.dim == 0:
        raise ARError("the zero module has no almost split sequence")
    if is_projective(U):
        raise ProjectiveModuleError(f"{U!r} is projective")
    if not is_indecomposable(U):
        raise NotIndecomposableError(f"{U!r} is decomposable")
    tau = dtr(U)
    space = Ext1Space(U, tau)
    if space.dim == 0:
        raise VerificationError(f"Ext^1(U, D Tr U) vanishes for {U!r}")
    socle = _ext_socle(space, U, tau)
    if not socle:
        raise VerificationError(f"no class of Ext^1(U, D Tr U) is killed by the radicals for {U!r}")
    sequence = space.sequence(socle[0], 'almost-split')
    report = verify_almost_split(sequence, census)
    if not report['ok']:
        raise VerificationError(f"almost split check failed for {U!r}: {report}")
    sequence.verification = report
    logger.debug(f"almost split sequence ending in {U!r}: middle term {sequence.E.dimension_vector} "
                 f"({report['verification']})")
    return sequence


def middle_summands(sequence: SESClass) -> List[Representation]:
    """Indecomposable summands of the middle term, with repetition"""
    out = []
    for rep, mult in decompose(sequence.E):
        out.extend([rep] * mult)
    return out


def alpha(U: Representation, census=None) -> int:
    """Number of indecomposable summands of the middle term of the almost split sequence ending in U"""
    return len(middle_summands(almost_split_sequence(U, census)))


def middle_term_dichotomy(sequence: SESClass) -> str:
    """
    Middle term of an extension of uniserials: indecomposable, or two uniserials

    Raises:
        ARError: an end term is not uniserial
        InvariantViolation: neither branch holds
    """
    if not (is_uniserial(sequence.A) and is_uniserial(sequence.C)):
        raise ARError("both end terms must be uniserial")
    summands = middle_summands(sequence)
    if len(summands) == 1:
        return INDECOMPOSABLE
    if len(summands) == 2 and all(is_uniserial(B) for B in summands):
        return TWO_UNISERIALS
    shapes = [B.dimension_vector for B in summands]
    logger.critical(f"🚨 middle term {sequence.E.dimension_vector} splits as {shapes}")
    raise InvariantViolation(f"middle term with {len(summands)} summands {shapes} breaks the dichotomy")


def radical_embedding_oracle(U: Representation, census=None) -> Tuple[bool, bool]:
    """
    Ground truth for JU -> U, with whether it rests on a complete census

    Projective U: irreducible iff JU is nonzero and indecomposable (no
    sequence involved, so always verified). Otherwise: iff every summand of
    JU occurs (with multiplicity) in the middle term of the almost split
    sequence ending in U.
    """
    JU, _ = radical_inclusion(U)
    if JU.dim == 0:
        return False, True
    if is_projective(U):
        return is_indecomposable(JU), True
    sequence = almost_split_sequence(U, census)
    middle = decompose(sequence.E)
    for rep, mult in decompose(JU):
        available = sum(m for B, m in middle if indecomposables_isomorphic(B, rep))
        if available < mult:
            return False, sequence.verified
    return True, sequence.verified


def radical_embedding_is_irreducible(U: Representation, census=None) -> bool:
    return radical_embedding_oracle(U, census)[0]
