#!/usr/bin/env python3
"""
Left modules as quiver representations

A representation stores one vector space K^{d_x} per vertex and one matrix
(target dim x source dim) per arrow. Module elements are "global" vectors:
the per-vertex coordinates concatenated in the quiver's vertex order.
"""
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from src.algebra import linalg
from src.algebra.engine import Element, FDAlgebra
from src.algebra.field import Scalar
from src.algebra.linalg import Subspace, Vector
from src.quiver.quiver import Path
from src.utils.errors import ModuleError, RelationViolationError


class Representation:
    """A finite-dimensional left module over a bound quiver algebra"""

    def __init__(
        self,
        algebra: FDAlgebra,
        dims: Dict[str, int],
        maps: Optional[Dict[str, DomainMatrix]] = None,
        name: Optional[str] = None,
    ):
        """
        Args:
            algebra: The algebra acting
            dims: Dimension per vertex (missing vertices get 0)
            maps: Matrix per arrow, shape (dim target, dim source); missing arrows act by 0
            name: Optional label for reports
        """
        self.algebra = algebra
        self.field = algebra.field
        self.name = name
        for v in dims:
            algebra.quiver.check_vertex(v)
        self.dims: Dict[str, int] = {v: int(dims.get(v, 0)) for v in algebra.vertices}
        if any(d < 0 for d in self.dims.values()):
            raise ModuleError("dimensions must be non-negative")

        self.maps: Dict[str, DomainMatrix] = {}
        maps = maps or {}
        for arrow_id in maps:
            algebra.quiver.arrow(arrow_id)
        for arrow in algebra.quiver.arrows.values():
            shape = (self.dims[arrow.target], self.dims[arrow.source])
            matrix = maps.get(arrow.id)
            if matrix is None:
                matrix = linalg.zeros(self.field, *shape)
            elif matrix.shape != shape:
                raise ModuleError(f"matrix for {arrow.id} has shape {matrix.shape}, expected {shape}")
            self.maps[arrow.id] = matrix

        self.offsets: Dict[str, int] = {}
        total = 0
        for v in algebra.vertices:
            self.offsets[v] = total
            total += self.dims[v]
        self.dim = total
        self._path_cache: Dict[Path, DomainMatrix] = {}

    def __repr__(self) -> str:
        label = f"{self.name} " if self.name else ""
        return f"Representation({label}{self.dimension_vector})"

    @property
    def dimension_vector(self) -> Tuple[int, ...]:
        return tuple(self.dims[v] for v in self.algebra.vertices)

    def is_zero(self) -> bool:
        return self.dim == 0

    # Coordinates

    def component(self, vector: Sequence[Scalar], vertex: str) -> Vector:
        start = self.offsets[vertex]
        return list(vector[start:start + self.dims[vertex]])

    def split(self, vector: Sequence[Scalar]) -> Dict[str, Vector]:
        return {v: self.component(vector, v) for v in self.algebra.vertices}

    def join(self, parts: Dict[str, Sequence[Scalar]]) -> Vector:
        out = []
        for v in self.algebra.vertices:
            part = parts.get(v)
            out.extend(part if part is not None else [self.field.zero] * self.dims[v])
        return out

    def embed(self, vertex: str, local: Sequence[Scalar]) -> Vector:
        return self.join({vertex: local})

    def zero_vector(self) -> Vector:
        return [self.field.zero] * self.dim

    def unit(self, vertex: str, i: int) -> Vector:
        return self.embed(vertex, linalg.unit_vector(self.field, self.dims[vertex], i))

    def vertex_basis(self, vertex: str) -> List[Vector]:
        return [self.unit(vertex, i) for i in range(self.dims[vertex])]

    def support(self, vector: Sequence[Scalar]) -> List[str]:
        return [v for v in self.algebra.vertices if any(self.component(vector, v))]

    # Action

    def path_matrix(self, path: Path) -> DomainMatrix:
        """Matrix of a path acting from its source space to its target space"""
        cached = self._path_cache.get(path)
        if cached is not None:
            return cached
        matrix = linalg.identity(self.field, self.dims[path.source])
        for arrow_id in path.traversal:
            matrix = linalg.matmul(self.maps[arrow_id], matrix)
        self._path_cache[path] = matrix
        return matrix

    def element_matrix(self, x: Element, source: str, target: str) -> DomainMatrix:
        """Matrix of e_target x e_source acting from vertex source to vertex target"""
        result = linalg.zeros(self.field, self.dims[target], self.dims[source])
        for i in x.support():
            b = self.algebra.basis[i]
            if b.source == source and b.target == target:
                result = linalg.add(result, linalg.scale(self.path_matrix(b), x.coeffs[i]))
        return result

    def act(self, x: Element, vector: Sequence[Scalar]) -> Vector:
        """x . m for an algebra element x and a global vector m"""
        out = self.zero_vector()
        for i in x.support():
            b = self.algebra.basis[i]
            local = self.component(vector, b.source)
            if not any(local):
                continue
            image = linalg.apply(self.path_matrix(b), local)
            start = self.offsets[b.target]
            c = x.coeffs[i]
            for k, value in enumerate(image):
                if value:
                    out[start + k] += c * value
        return out

    def act_path(self, path: Path, vector: Sequence[Scalar]) -> Vector:
        image = linalg.apply(self.path_matrix(path), self.component(vector, path.source))
        return self.embed(path.target, image)

    def apply_arrow(self, arrow_id: str, vector: Sequence[Scalar]) -> Vector:
        arrow = self.algebra.quiver.arrow(arrow_id)
        image = linalg.apply(self.maps[arrow_id], self.component(vector, arrow.source))
        return self.embed(arrow.target, image)

    # Relations

    def validate(self) -> List[str]:
        """Relations of the algebra that the arrow matrices violate (empty when valid)"""
        violations = []
        for r in self.algebra.relations:
            total = linalg.zeros(self.field, self.dims[r.target], self.dims[r.source])
            for c, path in r.terms:
                total = linalg.add(total, linalg.scale(self.path_matrix(path), c))
            if not linalg.is_zero_matrix(total):
                violations.append(str(r))
        return violations

    def is_valid(self) -> bool:
        return not self.validate()

    def ensure_valid(self) -> 'Representation':
        violations = self.validate()
        if violations:
            raise RelationViolationError(f"relations violated: {', '.join(violations)}", violations)
        return self


class Projective(Representation):
    """Lambda e_v, with coordinates indexed by the normal paths starting at v"""

    def __init__(self, algebra: FDAlgebra, vertex: str):
        self.vertex = vertex
        self.paths: Dict[str, List[int]] = {
            x: [i for i, p in enumerate(algebra.basis) if p.source == vertex and p.target == x]
            for x in algebra.vertices
        }
        field = algebra.field
        maps = {}
        for arrow in algebra.quiver.arrows.values():
            rows_idx = self.paths[arrow.target]
            cols = []
            a = algebra.arrow(arrow.id)
            for i in self.paths[arrow.source]:
                prod = algebra.multiply(a, algebra.from_sparse({i: field.one}))
                cols.append([prod.coeffs[j] for j in rows_idx])
            maps[arrow.id] = linalg.from_columns(field, cols, len(rows_idx))
        dims = {x: len(idx) for x, idx in self.paths.items()}
        super().__init__(algebra, dims, maps, name=f"P{vertex}")

    def vector_of(self, x: Element) -> Vector:
        """Coordinates of x*e_v (the part of x starting at v)"""
        return self.join({v: [x.coeffs[i] for i in idx] for v, idx in self.paths.items()})

    def element_of(self, vector: Sequence[Scalar]) -> Element:
        sparse = {}
        for v, idx in self.paths.items():
            for i, c in zip(idx, self.component(vector, v)):
                if c:
                    sparse[i] = c
        return self.algebra.from_sparse(sparse)

    def generator(self) -> Vector:
        return self.vector_of(self.algebra.vertex(self.vertex))


class ModuleMap:
    """A module homomorphism, one matrix per vertex"""

    def __init__(self, source: Representation, target: Representation,
                 maps: Optional[Dict[str, DomainMatrix]] = None):
        if source.algebra is not target.algebra:
            raise ModuleError("maps must stay inside one algebra")
        self.source = source
        self.target = target
        self.field = source.field
        maps = maps or {}
        self.maps: Dict[str, DomainMatrix] = {}
        for v in source.algebra.vertices:
            shape = (target.dims[v], source.dims[v])
            matrix = maps.get(v)
            if matrix is None:
                matrix = linalg.zeros(self.field, *shape)
            elif matrix.shape != shape:
                raise ModuleError(f"map at {v} has shape {matrix.shape}, expected {shape}")
            self.maps[v] = matrix

    @classmethod
    def identity(cls, module: Representation) -> 'ModuleMap':
        return cls(module, module, {v: linalg.identity(module.field, d) for v, d in module.dims.items()})

    @classmethod
    def zero(cls, source: Representation, target: Representation) -> 'ModuleMap':
        return cls(source, target)

    @classmethod
    def from_global(cls, source: Representation, target: Representation, matrix: DomainMatrix) -> 'ModuleMap':
        """Cut a (target.dim x source.dim) block-diagonal matrix into vertex blocks"""
        rows = linalg.to_rows(matrix)
        maps = {}
        for v in source.algebra.vertices:
            r0, c0 = target.offsets[v], source.offsets[v]
            block = [row[c0:c0 + source.dims[v]] for row in rows[r0:r0 + target.dims[v]]]
            maps[v] = linalg.from_rows(source.field, block, target.dims[v], source.dims[v])
        return cls(source, target, maps)

    def __repr__(self) -> str:
        return f"ModuleMap({self.source.dimension_vector} -> {self.target.dimension_vector})"

    def compose(self, other: 'ModuleMap') -> 'ModuleMap':
        """self after other"""
        if other.target is not self.source:
            raise ModuleError("maps are not composable")
        return ModuleMap(other.source, self.target,
                         {v: linalg.matmul(self.maps[v], other.maps[v]) for v in self.maps})

    def __add__(self, other: 'ModuleMap') -> 'ModuleMap':
        return ModuleMap(self.source, self.target, {v: linalg.add(self.maps[v], other.maps[v]) for v in self.maps})

    def __sub__(self, other: 'ModuleMap') -> 'ModuleMap':
        return ModuleMap(self.source, self.target, {v: linalg.sub(self.maps[v], other.maps[v]) for v in self.maps})

    def scale(self, c: Scalar) -> 'ModuleMap':
        return ModuleMap(self.source, self.target, {v: linalg.scale(m, c) for v, m in self.maps.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleMap):
            return False
        return all(linalg.to_rows(self.maps[v]) == linalg.to_rows(other.maps[v]) for v in self.maps)

    def is_zero(self) -> bool:
        return all(linalg.is_zero_matrix(m) for m in self.maps.values())

    def apply(self, vector: Sequence[Scalar]) -> Vector:
        parts = {}
        for v, m in self.maps.items():
            parts[v] = linalg.apply(m, self.source.component(vector, v))
        return self.target.join(parts)

    def global_matrix(self) -> DomainMatrix:
        vs = self.source.algebra.vertices
        blocks = [[self.maps[v] if v == w else None for w in vs] for v in vs]
        return linalg.block_matrix(self.field, blocks,
                                   [self.target.dims[v] for v in vs], [self.source.dims[v] for v in vs])

    def rank(self) -> int:
        return sum(linalg.rank(self.field, linalg.to_rows(m), m.shape[1]) for m in self.maps.values())

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def is_isomorphism(self) -> bool:
        return self.source.dim == self.target.dim and self.is_injective()

    def is_nilpotent(self) -> bool:
        if self.source is not self.target:
            raise ModuleError("nilpotency needs an endomorphism")
        return all(linalg.is_zero_matrix(linalg.power(m, m.shape[0], self.field)) for m in self.maps.values())

    def is_homomorphism(self) -> bool:
        """Intertwining check g_a Phi_s = Phi_t f_a for every arrow"""
        for arrow in self.source.algebra.quiver.arrows.values():
            left = linalg.matmul(self.target.maps[arrow.id], self.maps[arrow.source])
            right = linalg.matmul(self.maps[arrow.target], self.source.maps[arrow.id])
            if linalg.to_rows(left) != linalg.to_rows(right):
                return False
        return True


class SubmoduleBasis:
    """A submodule given by one subspace per vertex"""

    def __init__(self, module: Representation, spaces: Dict[str, Subspace]):
        self.module = module
        self.spaces = {v: spaces.get(v) or Subspace(module.field, module.dims[v]) for v in module.algebra.vertices}

    @classmethod
    def zero(cls, module: Representation) -> 'SubmoduleBasis':
        return cls(module, {})

    @classmethod
    def whole(cls, module: Representation) -> 'SubmoduleBasis':
        return cls(module, {v: Subspace.full(module.field, d) for v, d in module.dims.items()})

    @property
    def dim(self) -> int:
        return sum(s.dim for s in self.spaces.values())

    @property
    def dimension_vector(self) -> Tuple[int, ...]:
        return tuple(self.spaces[v].dim for v in self.module.algebra.vertices)

    def contains(self, vector: Sequence[Scalar]) -> bool:
        return all(self.spaces[v].contains(self.module.component(vector, v)) for v in self.spaces)

    def global_basis(self) -> List[Vector]:
        out = []
        for v, space in self.spaces.items():
            out.extend(self.module.embed(v, row) for row in space.rows)
        return out

    def is_closed(self) -> bool:
        for arrow in self.module.algebra.quiver.arrows.values():
            target = self.spaces[arrow.target]
            for row in self.spaces[arrow.source].rows:
                if not target.contains(linalg.apply(self.module.maps[arrow.id], row)):
                    return False
        return True

    def is_subspace_of(self, other: 'SubmoduleBasis') -> bool:
        return all(self.spaces[v].is_subspace_of(other.spaces[v]) for v in self.spaces)

    def __eq__(self, other) -> bool:
        return (isinstance(other, SubmoduleBasis) and self.is_subspace_of(other)
                and other.is_subspace_of(self))

    def sum(self, other: 'SubmoduleBasis') -> 'SubmoduleBasis':
        return SubmoduleBasis(self.module, {v: self.spaces[v].sum(other.spaces[v]) for v in self.spaces})

    def __repr__(self) -> str:
        return f"SubmoduleBasis({self.dimension_vector} in {self.module.dimension_vector})"


def zero_module(algebra: FDAlgebra) -> Representation:
    return Representation(algebra, {}, name="0")


def simple(algebra: FDAlgebra, vertex: str) -> Representation:
    return Representation(algebra, {vertex: 1}, name=f"S{vertex}")


def projective(algebra: FDAlgebra, vertex: str) -> Projective:
    return Projective(algebra, algebra.quiver.check_vertex(vertex))


def representation_from_lists(algebra: FDAlgebra, dims: Dict[str, int],
                              maps: Dict[str, Iterable[Iterable[object]]], name: Optional[str] = None) -> Representation:
    """Convenience constructor from nested lists of ints / strings"""
    field = algebra.field
    built = {}
    for arrow_id, rows in maps.items():
        arrow = algebra.quiver.arrow(arrow_id)
        m, n = dims.get(arrow.target, 0), dims.get(arrow.source, 0)
        built[arrow_id] = linalg.from_rows(field, [[field(x) for x in row] for row in rows], m, n)
    return Representation(algebra, dims, built, name=name)
