#!/usr/bin/env python3
"""
Module constructions: direct sums, kernels, images, quotients, pushouts,
pullbacks and submodules generated by elements
"""
from typing import Dict, List, Sequence, Tuple

from src.algebra import linalg
from src.algebra.engine import Element, FDAlgebra
from src.algebra.field import Scalar
from src.algebra.linalg import Subspace
from src.modules.representation import ModuleMap, Projective, Representation, SubmoduleBasis
from src.utils.errors import ModuleError


class DirectSum(Representation):
    """M_1 + ... + M_k with its canonical injections and projections"""

    def __init__(self, summands: Sequence[Representation], name: str = None):
        if not summands:
            raise ModuleError("direct sum of nothing; use zero_module")
        algebra = summands[0].algebra
        field = algebra.field
        self.summands = list(summands)
        self.local_offsets: List[Dict[str, int]] = []
        running = {v: 0 for v in algebra.vertices}
        for M in self.summands:
            if M.algebra is not algebra:
                raise ModuleError("summands over different algebras")
            self.local_offsets.append(dict(running))
            for v in algebra.vertices:
                running[v] += M.dims[v]

        maps = {}
        for arrow in algebra.quiver.arrows.values():
            s, t = arrow.source, arrow.target
            blocks = [[M.maps[arrow.id] if i == j else None for j, M in enumerate(self.summands)]
                      for i in range(len(self.summands))]
            maps[arrow.id] = linalg.block_matrix(
                field, blocks, [M.dims[t] for M in self.summands], [M.dims[s] for M in self.summands]
            )
        super().__init__(algebra, running, maps, name=name)

    def injection(self, i: int) -> ModuleMap:
        M = self.summands[i]
        maps = {}
        for v in self.algebra.vertices:
            rows = [[self.field.zero] * M.dims[v] for _ in range(self.dims[v])]
            for k in range(M.dims[v]):
                rows[self.local_offsets[i][v] + k][k] = self.field.one
            maps[v] = linalg.from_rows(self.field, rows, self.dims[v], M.dims[v])
        return ModuleMap(M, self, maps)

    def projection(self, i: int) -> ModuleMap:
        M = self.summands[i]
        maps = {v: linalg.transpose(m) for v, m in self.injection(i).maps.items()}
        return ModuleMap(self, M, maps)

    def include(self, i: int, vector: Sequence[Scalar]) -> List[Scalar]:
        return self.injection(i).apply(vector)

    def map_from(self, maps: Sequence[ModuleMap]) -> ModuleMap:
        """The map (f_1, ..., f_k): M_1 + ... + M_k -> N"""
        target = maps[0].target
        result = ModuleMap.zero(self, target)
        for i, f in enumerate(maps):
            result = result + f.compose(self.projection(i))
        return result

    def map_to(self, maps: Sequence[ModuleMap]) -> ModuleMap:
        """The map (f_1, ..., f_k)^T: N -> M_1 + ... + M_k"""
        source = maps[0].source
        result = ModuleMap.zero(source, self)
        for i, f in enumerate(maps):
            result = result + self.injection(i).compose(f)
        return result


def direct_sum(*modules: Representation) -> DirectSum:
    return DirectSum(modules)


def submodule_to_representation(sub: SubmoduleBasis) -> Tuple[Representation, ModuleMap]:
    """The submodule as a module in its own right, with its inclusion"""
    M = sub.module
    field = M.field
    dims = {v: sub.spaces[v].dim for v in M.algebra.vertices}
    maps = {}
    for arrow in M.algebra.quiver.arrows.values():
        s, t = arrow.source, arrow.target
        target_space = sub.spaces[t]
        cols = []
        for row in sub.spaces[s].rows:
            image = linalg.apply(M.maps[arrow.id], row)
            coords = target_space.coordinates(image)
            if coords is None:
                raise ModuleError("subspaces are not closed under the arrow action")
            cols.append(coords)
        maps[arrow.id] = linalg.from_columns(field, cols, dims[t])
    S = Representation(M.algebra, dims, maps)
    inclusion = ModuleMap(S, M, {
        v: linalg.from_columns(field, sub.spaces[v].rows, M.dims[v]) for v in M.algebra.vertices
    })
    return S, inclusion


def quotient_by(M: Representation, sub: SubmoduleBasis) -> Tuple[Representation, ModuleMap]:
    """M / sub with the projection; the quotient basis is the non-pivot coordinates"""
    field = M.field
    proj, sect, dims = {}, {}, {}
    for v in M.algebra.vertices:
        space = sub.spaces[v]
        n = M.dims[v]
        keep = space.complement_indices()
        dims[v] = len(keep)
        proj[v] = linalg.from_columns(
            field, [space.quotient_coordinates(linalg.unit_vector(field, n, j)) for j in range(n)], len(keep)
        )
        sect[v] = linalg.from_columns(field, [linalg.unit_vector(field, n, j) for j in keep], n)
    maps = {}
    for arrow in M.algebra.quiver.arrows.values():
        maps[arrow.id] = linalg.matmul(proj[arrow.target], linalg.matmul(M.maps[arrow.id], sect[arrow.source]))
    Q = Representation(M.algebra, dims, maps)
    return Q, ModuleMap(M, Q, proj)


def kernel(f: ModuleMap) -> Tuple[Representation, ModuleMap]:
    field = f.field
    spaces = {}
    for v, m in f.maps.items():
        n = m.shape[1]
        spaces[v] = Subspace(field, n, linalg.nullspace(field, linalg.to_rows(m), n))
    return submodule_to_representation(SubmoduleBasis(f.source, spaces))


def image(f: ModuleMap) -> SubmoduleBasis:
    field = f.field
    return SubmoduleBasis(f.target, {
        v: Subspace(field, m.shape[0], linalg.columns(m)) for v, m in f.maps.items()
    })


def cokernel(f: ModuleMap) -> Tuple[Representation, ModuleMap]:
    return quotient_by(f.target, image(f))


def pushout(f: ModuleMap, g: ModuleMap) -> Tuple[Representation, ModuleMap, ModuleMap]:
    """
    Pushout of B <-f- A -g-> C

    Returns:
        (P, B -> P, C -> P) with P = (B + C) / {(f(a), -g(a))}
    """
    if f.source is not g.source:
        raise ModuleError("pushout needs maps with a common source")
    S = DirectSum([f.target, g.target])
    diagonal = S.map_to([f, g.scale(-f.field.one)])
    P, pi = cokernel(diagonal)
    return P, pi.compose(S.injection(0)), pi.compose(S.injection(1))


def pullback(f: ModuleMap, g: ModuleMap) -> Tuple[Representation, ModuleMap, ModuleMap]:
    """
    Pullback of B -f-> D <-g- C

    Returns:
        (P, P -> B, P -> C) with P = {(b, c) : f(b) = g(c)}
    """
    if f.target is not g.target:
        raise ModuleError("pullback needs maps with a common target")
    S = DirectSum([f.source, g.source])
    difference = S.map_from([f, g.scale(-f.field.one)])
    P, inclusion = kernel(difference)
    return P, S.projection(0).compose(inclusion), S.projection(1).compose(inclusion)


def submodule_generated(M: Representation, vectors: Sequence[Sequence[Scalar]]) -> SubmoduleBasis:
    """Smallest submodule containing the given global vectors"""
    field = M.field
    spaces = {v: Subspace(field, M.dims[v], [M.component(x, v) for x in vectors]) for v in M.algebra.vertices}
    changed = True
    while changed:
        changed = False
        for arrow in M.algebra.quiver.arrows.values():
            target = spaces[arrow.target]
            images = [linalg.apply(M.maps[arrow.id], row) for row in spaces[arrow.source].rows]
            fresh = [y for y in images if not target.contains(y)]
            if fresh:
                spaces[arrow.target] = target.extend(fresh)
                changed = True
    return SubmoduleBasis(M, spaces)


def cyclic_quotient(algebra: FDAlgebra, vertex: str,
                    generators: Sequence[Element]) -> Tuple[Representation, Projective, ModuleMap]:
    """
    Lambda e_v / sum Lambda g_i

    Returns:
        (quotient, the projective Lambda e_v, the projection)
    """
    P = Projective(algebra, vertex)
    sub = submodule_generated(P, [P.vector_of(g) for g in generators])
    Q, pi = quotient_by(P, sub)
    return Q, P, pi
