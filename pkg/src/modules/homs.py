#!/usr/bin/env python3
"""
Hom spaces, split tests and maps with prescribed generator images
"""
from typing import Dict, List, Optional, Sequence, Tuple

from src.algebra import linalg
from src.algebra.field import Scalar
from src.modules.representation import ModuleMap, Representation
from src.utils.errors import ModuleError


def _flatten(f: ModuleMap) -> List[Scalar]:
    out = []
    for v in f.source.algebra.vertices:
        for row in linalg.to_rows(f.maps[v]):
            out.extend(row)
    return out


def _variable_offsets(M: Representation, N: Representation) -> Tuple[Dict[str, int], int]:
    offsets, total = {}, 0
    for v in M.algebra.vertices:
        offsets[v] = total
        total += N.dims[v] * M.dims[v]
    return offsets, total


def hom_space(M: Representation, N: Representation) -> List[ModuleMap]:
    """
    Basis of Hom(M, N)

    Unknowns are the entries of the vertex matrices Phi_x; each arrow a
    contributes the linear equations g_a Phi_s(a) = Phi_t(a) f_a.
    """
    if M.algebra is not N.algebra:
        raise ModuleError("modules over different algebras")
    field = M.field
    offsets, total = _variable_offsets(M, N)
    if total == 0:
        return []

    def var(v: str, i: int, j: int) -> int:
        return offsets[v] + i * M.dims[v] + j

    equations = []
    for arrow in M.algebra.quiver.arrows.values():
        s, t = arrow.source, arrow.target
        g = linalg.to_rows(N.maps[arrow.id])
        f = linalg.to_rows(M.maps[arrow.id])
        for i in range(N.dims[t]):
            for j in range(M.dims[s]):
                row = [field.zero] * total
                for k in range(N.dims[s]):
                    if g[i][k]:
                        row[var(s, k, j)] += g[i][k]
                for k in range(M.dims[t]):
                    if f[k][j]:
                        row[var(t, i, k)] -= f[k][j]
                if any(row):
                    equations.append(row)

    if equations:
        solutions = linalg.nullspace(field, equations, total)
    else:
        solutions = [linalg.unit_vector(field, total, i) for i in range(total)]

    basis = []
    for sol in solutions:
        maps = {}
        for v in M.algebra.vertices:
            m, n = N.dims[v], M.dims[v]
            start = offsets[v]
            rows = [sol[start + i * n:start + (i + 1) * n] for i in range(m)]
            maps[v] = linalg.from_rows(field, rows, m, n)
        basis.append(ModuleMap(M, N, maps))
    return basis


def combine_maps(source: Representation, target: Representation,
                 basis: Sequence[ModuleMap], coeffs: Sequence[Scalar]) -> ModuleMap:
    result = ModuleMap.zero(source, target)
    for c, h in zip(coeffs, basis):
        if c:
            result = result + h.scale(c)
    return result


def _solve_for_map(basis: Sequence[ModuleMap], products: Sequence[ModuleMap],
                   target: ModuleMap) -> Optional[List[Scalar]]:
    field = target.field
    flat = [_flatten(p) for p in products]
    goal = _flatten(target)
    if not goal:
        return [field.zero] * len(basis)
    rows = [[f[e] for f in flat] for e in range(len(goal))]
    return linalg.solve(field, rows, goal, len(basis))


def is_split_mono(phi: ModuleMap) -> Tuple[bool, Optional[ModuleMap]]:
    """
    Whether chi . phi = id_M for some chi: N -> M

    Returns:
        (answer, retraction chi when it exists)
    """
    M, N = phi.source, phi.target
    if M.dim == 0:
        return True, ModuleMap.zero(N, M)
    if not phi.is_injective():
        return False, None
    basis = hom_space(N, M)
    coeffs = _solve_for_map(basis, [h.compose(phi) for h in basis], ModuleMap.identity(M))
    if coeffs is None:
        return False, None
    return True, combine_maps(N, M, basis, coeffs)


def is_split_epi(phi: ModuleMap) -> Tuple[bool, Optional[ModuleMap]]:
    """
    Whether phi . chi = id_N for some chi: N -> M

    Returns:
        (answer, section chi when it exists)
    """
    M, N = phi.source, phi.target
    if N.dim == 0:
        return True, ModuleMap.zero(N, M)
    if not phi.is_surjective():
        return False, None
    basis = hom_space(N, M)
    coeffs = _solve_for_map(basis, [phi.compose(h) for h in basis], ModuleMap.identity(N))
    if coeffs is None:
        return False, None
    return True, combine_maps(N, M, basis, coeffs)


def hom_from_generators(M: Representation, generators: Sequence[Sequence[Scalar]],
                        N: Representation, images: Sequence[Sequence[Scalar]]) -> Optional[ModuleMap]:
    """
    The map M -> N sending generators[i] to images[i]

    Returns None when no homomorphism has these values. When the generators
    generate M the answer is unique.
    """
    if len(generators) != len(images):
        raise ModuleError("need one image per generator")
    field = M.field
    basis = hom_space(M, N)
    equations, goal = [], []
    for g, y in zip(generators, images):
        values = [h.apply(g) for h in basis]
        for e in range(N.dim):
            equations.append([val[e] for val in values])
            goal.append(y[e])
    if not basis:
        return ModuleMap.zero(M, N) if all(not any(y) for y in images) else None
    coeffs = linalg.solve(field, equations, goal, len(basis))
    if coeffs is None:
        return None
    return combine_maps(M, N, basis, coeffs)


def factor_through(g: ModuleMap, h: ModuleMap) -> Optional[ModuleMap]:
    """
    A map f: X -> E with g . f = h, for g: E -> U and h: X -> U

    Returns None when h does not factor through g.
    """
    if g.target is not h.target:
        raise ModuleError("both maps must end in the same module")
    basis = hom_space(h.source, g.source)
    if not basis:
        return ModuleMap.zero(h.source, g.source) if h.is_zero() else None
    coeffs = _solve_for_map(basis, [g.compose(f) for f in basis], h)
    if coeffs is None:
        return None
    return combine_maps(h.source, g.source, basis, coeffs)
