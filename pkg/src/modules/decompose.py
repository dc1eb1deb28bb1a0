#!/usr/bin/env python3
"""
Indecomposability and Krull-Schmidt decomposition

A module splits as soon as some endomorphism g has a characteristic
polynomial with two coprime factors f, h: then M = ker f(g)^n + im f(g)^n
(Fitting). Candidates are tried in a fixed order (basis, pairwise sums,
seeded random combinations). Over a small finite field the whole
endomorphism ring is enumerated instead, which makes the answer exact.
When no candidate splits, End(M) must be certified local through its
radical; a module that is neither split nor certified raises instead of
being guessed indecomposable.
"""
import itertools
import random
from typing import Iterator, List, Optional, Sequence, Tuple

from sympy import Poly, Symbol
from sympy.polys.matrices import DomainMatrix

from src.algebra import linalg
from src.algebra.field import Field, Scalar
from src.algebra.linalg import Subspace
from src.modules.constructions import submodule_to_representation
from src.modules.homs import hom_space
from src.modules.representation import ModuleMap, Representation, SubmoduleBasis
from src.utils.errors import CapExceededError, InvariantViolation
from src.utils.logger import get_logger


logger = get_logger('modules')

ENUMERATION_LIMIT = 4096

# Defaults for callers that pass no caps; main.py sets them from the modules config section
SETTINGS = {'dim_cap': 64, 'budget': 400, 'seed': 0}

_x = Symbol('x')


def configure(decompose_dim_cap: Optional[int] = None, splitting_candidates: Optional[int] = None,
              seed: Optional[int] = None) -> None:
    """Replace the default caps used when a caller passes none"""
    for key, value in (('dim_cap', decompose_dim_cap), ('budget', splitting_candidates), ('seed', seed)):
        if value is not None:
            SETTINGS[key] = value


def _resolve(dim_cap: Optional[int], budget: Optional[int], seed: Optional[int]) -> Tuple[int, int, int]:
    return (
        SETTINGS['dim_cap'] if dim_cap is None else dim_cap,
        SETTINGS['budget'] if budget is None else budget,
        SETTINGS['seed'] if seed is None else seed,
    )


def factor_charpoly(field: Field, matrix: DomainMatrix) -> List[List[Scalar]]:
    """Distinct monic irreducible factors of the characteristic polynomial, coefficients leading first"""
    coeffs = linalg.charpoly(matrix, field)
    if len(coeffs) == 1:
        return []
    if field.is_finite:
        poly = Poly([field.to_int(c) for c in coeffs], _x, modulus=field.characteristic)
    else:
        poly = Poly([field.to_sympy(c) for c in coeffs], _x, domain='QQ')
    _, factors = poly.factor_list()
    out = []
    for f, _ in factors:
        monic = f.monic()
        out.append([field(int(c)) if field.is_finite else field.from_sympy(c) for c in monic.all_coeffs()])
    return out


def evaluate_polynomial(field: Field, coeffs: Sequence[Scalar], matrix: DomainMatrix) -> DomainMatrix:
    """Horner evaluation of a polynomial (leading coefficient first) at a square matrix"""
    n = matrix.shape[0]
    result = linalg.zeros(field, n, n)
    ident = linalg.identity(field, n)
    for c in coeffs:
        result = linalg.add(linalg.matmul(result, matrix), linalg.scale(ident, c))
    return result


def is_nilpotent_matrix(field: Field, matrix: DomainMatrix) -> bool:
    return linalg.is_zero_matrix(linalg.power(matrix, matrix.shape[0], field))


def _flatten(matrix: DomainMatrix) -> List[Scalar]:
    return [x for row in linalg.to_rows(matrix) for x in row]


def _unflatten(field: Field, flat: Sequence[Scalar], n: int) -> DomainMatrix:
    return linalg.from_rows(field, [flat[i * n:(i + 1) * n] for i in range(n)], n, n)


class EndomorphismRing:
    """End(M) as a space of global (block diagonal) matrices"""

    def __init__(self, module: Representation):
        self.module = module
        self.field = module.field
        n = module.dim
        flats = [_flatten(f.global_matrix()) for f in hom_space(module, module)]
        self.space = Subspace(self.field, n * n, flats)
        self.basis = [_unflatten(self.field, row, n) for row in self.space.rows]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def combine(self, coeffs: Sequence[Scalar]) -> DomainMatrix:
        return _unflatten(self.field, self.space.combine(coeffs), self.module.dim)

    def coordinates(self, matrix: DomainMatrix) -> Optional[List[Scalar]]:
        return self.space.coordinates(_flatten(matrix))

    def as_map(self, matrix: DomainMatrix) -> ModuleMap:
        return ModuleMap.from_global(self.module, self.module, matrix)

    def candidates(self, budget: int, seed: int) -> Iterator[DomainMatrix]:
        """Basis, pairwise sums, then seeded random combinations (or everything when small)"""
        field, r = self.field, self.dim
        if field.is_finite and field.order ** r <= ENUMERATION_LIMIT:
            for coeffs in itertools.product(field.elements(), repeat=r):
                yield self.combine(coeffs)
            return
        yield from self.basis
        for i, j in itertools.combinations(range(r), 2):
            yield linalg.add(self.basis[i], self.basis[j])
        rng = random.Random(seed)
        for _ in range(budget):
            yield self.combine([field.random_element(rng) for _ in range(r)])

    def exhaustive(self) -> bool:
        return self.field.is_finite and self.field.order ** self.dim <= ENUMERATION_LIMIT

    def radical(self) -> Subspace:
        """
        rad End(M) in End coordinates

        In characteristic 0 this is the kernel of the trace form. Over F_p the
        ideal is cut down level by level: with c_j the coefficient of x^(n-j)
        in the characteristic polynomial (n = dim M), level k = 1, p, p^2, ...
        (up to n) keeps the a with c_k(a b) = 0 for every b in End(M).

        Raises:
            InvariantViolation: the ideal found is not nilpotent
        """
        field, r, n = self.field, self.dim, self.module.dim
        if r == 0:
            return Subspace(field, 0)
        if field.characteristic == 0:
            gram = [[linalg.trace(linalg.matmul(a, b), field) for b in self.basis] for a in self.basis]
            T = Subspace(field, r, linalg.nullspace(field, gram, r))
        else:
            T = Subspace.full(field, r)
            level = 1
            while level <= n and T.dim:
                members = [self.combine(row) for row in T.rows]
                # a -> c_level(a b) is additive on the previous level
                system = [[linalg.charpoly(linalg.matmul(a, b), field)[level] for a in members]
                          for b in self.basis]
                kept = linalg.nullspace(field, system, T.dim)
                T = Subspace(field, r, [T.combine(c) for c in kept])
                level *= field.characteristic
        if not self._is_nilpotent(T):
            raise InvariantViolation(f"radical of End {self.module.dimension_vector} is not nilpotent")
        return T

    def _is_nilpotent(self, T: Subspace) -> bool:
        n = self.module.dim
        members = [self.combine(c) for c in T.rows]
        power = members
        for _ in range(n):
            if not power:
                return True
            products = [_flatten(linalg.matmul(a, b)) for a in power for b in members]
            power = [_unflatten(self.field, row, n) for row in Subspace(self.field, n * n, products).rows]
        return not power

    def is_certified_local(self, budget: int, seed: int) -> bool:
        """End(M)/rad is a field generated by a single element"""
        R = self.radical()
        d = self.dim - R.dim
        if d == 1:
            return True
        for b in itertools.islice(self.candidates(budget, seed), budget):
            factors = factor_charpoly(self.field, b)
            if len(factors) != 1 or len(factors[0]) - 1 != d:
                continue
            coords = self.coordinates(evaluate_polynomial(self.field, factors[0], b))
            if coords is not None and R.contains(coords):
                return True
        return False


def fitting_split(module: Representation, g: DomainMatrix,
                  factor: Optional[Sequence[Scalar]] = None) -> Optional[Tuple[Representation, Representation]]:
    """
    Split M along an endomorphism g

    With factor given it must divide the characteristic polynomial of g
    while being coprime to its cofactor; otherwise the first irreducible
    factor is used, provided there are at least two.
    """
    field = module.field
    if factor is None:
        factors = factor_charpoly(field, g)
        if len(factors) < 2:
            return None
        factor = factors[0]
    h = linalg.power(evaluate_polynomial(field, factor, g), module.dim, field)
    hmap = ModuleMap.from_global(module, module, h)
    kernel_spaces, image_spaces = {}, {}
    for v, m in hmap.maps.items():
        n = module.dims[v]
        kernel_spaces[v] = Subspace(field, n, linalg.nullspace(field, linalg.to_rows(m), n))
        image_spaces[v] = Subspace(field, n, linalg.columns(m))
    first, _ = submodule_to_representation(SubmoduleBasis(module, kernel_spaces))
    second, _ = submodule_to_representation(SubmoduleBasis(module, image_spaces))
    return first, second


def _find_split(module: Representation, budget: int, seed: int) -> Optional[Tuple[Representation, Representation]]:
    ring = EndomorphismRing(module)
    if ring.dim <= 1:
        return None
    exhaustive = ring.exhaustive()
    if not exhaustive and ring.dim - ring.radical().dim == 1:
        return None
    for g in ring.candidates(budget, seed):
        if exhaustive:
            # neither nilpotent nor invertible: x and its cofactor are coprime
            cp = linalg.charpoly(g, module.field)
            parts = fitting_split(module, g, [module.field.one, module.field.zero]) \
                if cp[-1] == module.field.zero and any(cp[1:]) else None
        else:
            parts = fitting_split(module, g)
        if parts is not None:
            return parts
    if exhaustive or ring.is_certified_local(budget, seed):
        return None
    logger.warning(f"⚠️ no splitting endomorphism and no locality certificate for {module.dimension_vector}")
    raise CapExceededError(f"{budget} splitting candidates neither split {module.dimension_vector} "
                           f"nor certified End modulo its radical as a field")


def indecomposable_summands(module: Representation, dim_cap: Optional[int] = None,
                            budget: Optional[int] = None, seed: Optional[int] = None) -> List[Representation]:
    """
    Indecomposable summands of M, in a deterministic order

    Raises:
        CapExceededError: dim M exceeds dim_cap, or a summand is neither split
            nor certified local within the candidate budget
    """
    dim_cap, budget, seed = _resolve(dim_cap, budget, seed)
    if module.dim > dim_cap:
        raise CapExceededError(f"module of dimension {module.dim} exceeds the decomposition cap {dim_cap}")
    if module.dim == 0:
        return []
    parts = _find_split(module, budget, seed)
    if parts is None:
        return [module]
    out = []
    for part in parts:
        out.extend(indecomposable_summands(part, dim_cap, budget, seed))
    return out


def is_indecomposable(module: Representation, dim_cap: Optional[int] = None, budget: Optional[int] = None,
                      seed: Optional[int] = None) -> bool:
    dim_cap, budget, seed = _resolve(dim_cap, budget, seed)
    if module.dim > dim_cap:
        raise CapExceededError(f"module of dimension {module.dim} exceeds the decomposition cap {dim_cap}")
    return module.dim > 0 and _find_split(module, budget, seed) is None


def indecomposables_isomorphic(M: Representation, N: Representation) -> bool:
    """
    For indecomposable M, N: some g f with f: M -> N, g: N -> M is invertible

    End(M) is local, so the non-invertible elements form an ideal and it
    suffices to test products of basis maps.
    """
    if M.dimension_vector != N.dimension_vector:
        return False
    if M.dim == 0:
        return True
    forward = hom_space(M, N)
    if not forward:
        return False
    backward = hom_space(N, M)
    for f in forward:
        for g in backward:
            if not is_nilpotent_matrix(M.field, g.compose(f).global_matrix()):
                return True
    return False


def decompose(module: Representation, dim_cap: Optional[int] = None, budget: Optional[int] = None,
              seed: Optional[int] = None) -> List[Tuple[Representation, int]]:
    """Krull-Schmidt decomposition as (indecomposable, multiplicity) pairs"""
    classes: List[List] = []
    for summand in indecomposable_summands(module, dim_cap, budget, seed):
        for entry in classes:
            if indecomposables_isomorphic(entry[0], summand):
                entry[1] += 1
                break
        else:
            classes.append([summand, 1])
    return [(rep, mult) for rep, mult in classes]


def is_isomorphic(M: Representation, N: Representation, dim_cap: Optional[int] = None,
                  budget: Optional[int] = None, seed: Optional[int] = None) -> bool:
    if M.dimension_vector != N.dimension_vector:
        return False
    left = decompose(M, dim_cap, budget, seed)
    right = decompose(N, dim_cap, budget, seed)
    if sorted(m for _, m in left) != sorted(m for _, m in right):
        return False
    unmatched = list(right)
    for rep, mult in left:
        for k, (other, other_mult) in enumerate(unmatched):
            if mult == other_mult and indecomposables_isomorphic(rep, other):
                del unmatched[k]
                break
        else:
            return False
    return True


def summand_dimension_vectors(module: Representation, **kwargs) -> List[Tuple[int, ...]]:
    """Sorted multiset of summand dimension vectors (with repetition)"""
    out = []
    for rep, mult in decompose(module, **kwargs):
        out.extend([rep.dimension_vector] * mult)
    return sorted(out)
