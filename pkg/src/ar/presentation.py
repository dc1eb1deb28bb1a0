#!/usr/bin/env python3
"""
Projective covers, minimal presentations, transpose and duality

Right modules are left modules over the opposite algebra: Hom(Lambda e, Lambda)
is e Lambda, which is Lambda^op e as a left Lambda^op-module, and a map
between sums of indecomposable projectives is a matrix of algebra elements
that transposes (with every entry read in Lambda^op) under Hom(-, Lambda).
"""
from dataclasses import dataclass
from typing import List, Optional, Tuple

from src.algebra import linalg
from src.algebra.engine import Element, FDAlgebra
from src.algebra.linalg import Vector
from src.modules.constructions import DirectSum, cokernel, kernel
from src.modules.homs import hom_from_generators
from src.modules.layers import radical
from src.modules.representation import ModuleMap, Projective, Representation, zero_module
from src.utils.errors import ARError
from src.utils.logger import get_logger


logger = get_logger('ar')


@dataclass
class ProjectiveCover:
    """P_0 = sum Lambda e_{v_i} -> M sending the i-th generator to generators[i]"""
    module: Representation
    vertices: List[str]
    generators: List[Vector]
    P: Optional[DirectSum]
    map: ModuleMap

    @property
    def summands(self) -> int:
        return len(self.vertices)

    def generator(self, i: int) -> Vector:
        """The i-th summand's generator e_{v_i} inside P_0"""
        summand = self.P.summands[i]
        return self.P.include(i, summand.generator())

    def entries(self, vector: Vector) -> List[Element]:
        """An element of P_0 as its tuple of algebra elements, one per summand"""
        return [summand.element_of(self.P.projection(i).apply(vector)) for i, summand in enumerate(self.P.summands)]


@dataclass
class ProjectivePresentation:
    """P_1 -d-> P_0 -pi-> M -> 0"""
    P1: ProjectiveCover
    P0: ProjectiveCover
    d: ModuleMap
    minimal: bool

    @property
    def module(self) -> Representation:
        return self.P0.module

    def matrix(self) -> List[List[Element]]:
        """entry [j][i]: the component in Lambda e_{v_i} of d applied to the j-th generator of P_1"""
        return [self.P0.entries(self.d.apply(self.P1.generator(j))) for j in range(self.P1.summands)]


def top_generators(M: Representation) -> List[Tuple[str, Vector]]:
    """Elements of M whose classes form a basis of M / JM, grouped by vertex"""
    rad = radical(M)
    out = []
    for v in M.algebra.vertices:
        for k in rad.spaces[v].complement_indices():
            out.append((v, M.unit(v, k)))
    return out


def projective_cover(M: Representation) -> ProjectiveCover:
    """The projective cover P_0 -> M, one Lambda e_v per top composition factor at v"""
    algebra = M.algebra
    chosen = top_generators(M)
    if not chosen:
        zero = zero_module(algebra)
        return ProjectiveCover(M, [], [], None, ModuleMap.zero(zero, M))
    P = DirectSum([Projective(algebra, v) for v, _ in chosen])
    sources = [P.include(i, P.summands[i].generator()) for i in range(len(chosen))]
    pi = hom_from_generators(P, sources, M, [x for _, x in chosen])
    if pi is None:
        raise ARError("projective cover generators do not define a map")
    return ProjectiveCover(M, [v for v, _ in chosen], [x for _, x in chosen], P, pi)


def minimal_presentation(M: Representation) -> ProjectivePresentation:
    """
    P_1 -> P_0 -> M -> 0 with P_0 -> M and P_1 -> ker both projective covers

    Raises:
        ARError: M is the zero module
    """
    if M.dim == 0:
        raise ARError("the zero module has no projective cover to present")
    P0 = projective_cover(M)
    K, inclusion = kernel(P0.map)
    cover = projective_cover(K)
    if cover.P is None:
        d = ModuleMap.zero(cover.map.source, P0.P)
    else:
        d = inclusion.compose(cover.map)
    P1 = ProjectiveCover(K, cover.vertices, [inclusion.apply(x) for x in cover.generators], cover.P, d)
    rad = radical(P0.P)
    minimal = all(rad.contains(x) for x in P1.generators)
    return ProjectivePresentation(P1, P0, d, minimal)


def is_projective(M: Representation) -> bool:
    """The projective cover is an isomorphism"""
    if M.dim == 0:
        return True
    cover = projective_cover(M)
    return cover.P.dim == M.dim


def transpose(M: Representation) -> Representation:
    """
    Tr M over Lambda^op: the cokernel of Hom(P_0, Lambda) -> Hom(P_1, Lambda)

    Projective M has transpose 0.
    """
    algebra = M.algebra
    op = algebra.opposite()
    presentation = minimal_presentation(M)
    if presentation.P1.summands == 0:
        return zero_module(op)
    entries = presentation.matrix()
    Q0 = DirectSum([Projective(op, v) for v in presentation.P0.vertices])
    Q1 = DirectSum([Projective(op, w) for w in presentation.P1.vertices])
    sources, images = [], []
    for i, summand in enumerate(Q0.summands):
        sources.append(Q0.include(i, summand.generator()))
        image = Q1.zero_vector()
        for j, target in enumerate(Q1.summands):
            a = algebra.to_opposite(entries[j][i])
            image = linalg.vec_add(image, Q1.include(j, target.vector_of(a)))
        images.append(image)
    D = hom_from_generators(Q0, sources, Q1, images)
    if D is None:
        raise ARError("Hom(-, Lambda) of the presentation is not a map")
    return cokernel(D)[0]


def dual(M: Representation) -> Representation:
    """D M = Hom_K(M, K) over the opposite algebra: same dimensions, transposed matrices"""
    op = M.algebra.opposite()
    maps = {a: linalg.transpose(m) for a, m in M.maps.items()}
    return Representation(op, dict(M.dims), maps, name=f"D{M.name}" if M.name else None)


def dtr(M: Representation) -> Representation:
    """The Auslander-Reiten translate D Tr M"""
    return dual(transpose(M))


def tr_d(M: Representation) -> Representation:
    """Tr D M, the inverse translate"""
    return transpose(dual(M))


def injective(algebra: FDAlgebra, vertex: str) -> Representation:
    """The injective envelope of the simple at vertex: D(e_v Lambda) = D(Lambda^op e_v)"""
    rep = dual(Projective(algebra.opposite(), vertex))
    rep.name = f"I{vertex}"
    return rep
