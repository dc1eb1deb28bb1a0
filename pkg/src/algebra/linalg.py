#!/usr/bin/env python3
"""
Exact linear algebra helpers on top of sympy's DomainMatrix

Vectors are plain lists of domain elements; matrices are DomainMatrix
objects. Zero-sized shapes are handled here so callers never have to
special-case empty vertices or empty Hom spaces.
"""
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from src.algebra.field import Field, Scalar


Vector = List[Scalar]


# Matrices

def zeros(field: Field, m: int, n: int) -> DomainMatrix:
    # zeros/eye default to the sparse format; every matrix here is dense
    return DomainMatrix.zeros((m, n), field.K).to_dense()


def identity(field: Field, n: int) -> DomainMatrix:
    if n == 0:
        return zeros(field, 0, 0)
    return DomainMatrix.eye(n, field.K).to_dense()


def from_rows(field: Field, rows: Sequence[Sequence[Scalar]], m: int, n: int) -> DomainMatrix:
    if m == 0 or n == 0:
        return zeros(field, m, n)
    return DomainMatrix([list(row) for row in rows], (m, n), field.K)


def from_columns(field: Field, columns: Sequence[Sequence[Scalar]], m: int) -> DomainMatrix:
    """Matrix whose j-th column is columns[j] (each of length m)"""
    n = len(columns)
    rows = [[columns[j][i] for j in range(n)] for i in range(m)]
    return from_rows(field, rows, m, n)


def to_rows(M: DomainMatrix) -> List[List[Scalar]]:
    m, n = M.shape
    if m == 0:
        return []
    if n == 0:
        return [[] for _ in range(m)]
    return [list(row) for row in M.to_list()]


def column(M: DomainMatrix, j: int) -> Vector:
    return [row[j] for row in to_rows(M)]


def columns(M: DomainMatrix) -> List[Vector]:
    rows = to_rows(M)
    return [[row[j] for row in rows] for j in range(M.shape[1])]


def matmul(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    m, k = A.shape
    k2, n = B.shape
    if k != k2:
        raise ValueError(f"shape mismatch {A.shape} x {B.shape}")
    if m == 0 or n == 0 or k == 0:
        return DomainMatrix.zeros((m, n), A.domain).to_dense()
    return A.to_dense().matmul(B.to_dense())


def add(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    if 0 in A.shape:
        return A
    return A.to_dense() + B.to_dense()


def sub(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    if 0 in A.shape:
        return A
    return A.to_dense() - B.to_dense()


def scale(A: DomainMatrix, c: Scalar) -> DomainMatrix:
    m, n = A.shape
    if m == 0 or n == 0:
        return A
    return DomainMatrix([[c * x for x in row] for row in to_rows(A)], (m, n), A.domain)


def transpose(A: DomainMatrix) -> DomainMatrix:
    m, n = A.shape
    if m == 0 or n == 0:
        return DomainMatrix.zeros((n, m), A.domain).to_dense()
    return A.to_dense().transpose()


def is_zero_matrix(A: DomainMatrix) -> bool:
    zero = A.domain.zero
    return all(x == zero for row in to_rows(A) for x in row)


def apply(M: DomainMatrix, v: Sequence[Scalar]) -> Vector:
    """M v for a column vector v"""
    rows = to_rows(M)
    zero = M.domain.zero
    out = []
    for row in rows:
        acc = zero
        for a, b in zip(row, v):
            if a and b:
                acc += a * b
        out.append(acc)
    return out


def block_matrix(field: Field, blocks: Sequence[Sequence[DomainMatrix]],
                 row_sizes: Sequence[int], col_sizes: Sequence[int]) -> DomainMatrix:
    """Assemble a block matrix; blocks[i][j] has shape (row_sizes[i], col_sizes[j])"""
    m, n = sum(row_sizes), sum(col_sizes)
    rows = [[field.zero] * n for _ in range(m)]
    r0 = 0
    for i, rs in enumerate(row_sizes):
        c0 = 0
        for j, cs in enumerate(col_sizes):
            block = blocks[i][j]
            if block is not None and rs and cs:
                for a, row in enumerate(to_rows(block)):
                    rows[r0 + a][c0:c0 + cs] = row
            c0 += cs
        r0 += rs
    return from_rows(field, rows, m, n)


def power(A: DomainMatrix, k: int, field: Field) -> DomainMatrix:
    n = A.shape[0]
    result = identity(field, n)
    for _ in range(k):
        result = matmul(result, A)
    return result


def charpoly(A: DomainMatrix, field: Field) -> List[Scalar]:
    """Characteristic polynomial coefficients, leading 1 first"""
    if A.shape[0] == 0:
        return [field.one]
    return list(A.charpoly())


def trace(A: DomainMatrix, field: Field) -> Scalar:
    acc = field.zero
    for i, row in enumerate(to_rows(A)):
        acc += row[i]
    return acc


# Vectors

def zero_vector(field: Field, n: int) -> Vector:
    return [field.zero] * n


def unit_vector(field: Field, n: int, i: int) -> Vector:
    v = [field.zero] * n
    v[i] = field.one
    return v


def vec_add(u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    return [a + b for a, b in zip(u, v)]


def vec_sub(u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    return [a - b for a, b in zip(u, v)]


def vec_scale(c: Scalar, v: Sequence[Scalar]) -> Vector:
    return [c * a for a in v]


def vec_combination(field: Field, coeffs: Sequence[Scalar], vectors: Sequence[Sequence[Scalar]], n: int) -> Vector:
    out = [field.zero] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for i, a in enumerate(v):
                if a:
                    out[i] += c * a
    return out


def is_zero_vector(v: Iterable[Scalar]) -> bool:
    return not any(v)


# Row reduction

def rref_rows(field: Field, rows: Sequence[Sequence[Scalar]], n: int) -> Tuple[List[Vector], List[int]]:
    """Nonzero rows of the reduced row echelon form, with their pivot columns"""
    rows = [list(r) for r in rows]
    if not rows or n == 0:
        return [], []
    M, pivots = DomainMatrix(rows, (len(rows), n), field.K).rref()
    reduced = to_rows(M)[:len(pivots)]
    return reduced, list(pivots)


def rank(field: Field, rows: Sequence[Sequence[Scalar]], n: int) -> int:
    return len(rref_rows(field, rows, n)[1])


def nullspace(field: Field, rows: Sequence[Sequence[Scalar]], n: int) -> List[Vector]:
    """Basis of {x : A x = 0} where A is given by its rows (n unknowns)"""
    reduced, pivots = rref_rows(field, rows, n)
    pivot_set = set(pivots)
    basis = []
    for f in range(n):
        if f in pivot_set:
            continue
        v = [field.zero] * n
        v[f] = field.one
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(field: Field, rows: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar], n: int) -> Optional[Vector]:
    """One solution x of A x = b (free variables set to 0), or None"""
    if not rows:
        return [field.zero] * n
    augmented = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref_rows(field, augmented, n + 1)
    if n in pivots:
        return None
    x = [field.zero] * n
    for row, pc in zip(reduced, pivots):
        x[pc] = row[n]
    return x


def right_inverse(field: Field, M: DomainMatrix) -> Optional[DomainMatrix]:
    """S with M S = I (M surjective), else None"""
    m, n = M.shape
    rows = to_rows(M)
    cols = []
    for j in range(m):
        x = solve(field, rows, unit_vector(field, m, j), n)
        if x is None:
            return None
        cols.append(x)
    return from_columns(field, cols, n)


def left_inverse(field: Field, M: DomainMatrix) -> Optional[DomainMatrix]:
    """R with R M = I (M injective), else None"""
    T = right_inverse(field, transpose(M))
    return None if T is None else transpose(T)


class Subspace:
    """
    Subspace of K^n held as an RREF basis

    Membership, coordinates and reduction modulo the subspace are all read
    off the pivots, so they cost one pass over the basis rows.
    """

    def __init__(self, field: Field, ambient: int, vectors: Iterable[Sequence[Scalar]] = ()):
        self.field = field
        self.ambient = ambient
        self.rows, self.pivots = rref_rows(field, list(vectors), ambient)

    @classmethod
    def full(cls, field: Field, n: int) -> 'Subspace':
        return cls(field, n, [unit_vector(field, n, i) for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return self.dim

    def basis(self) -> List[Vector]:
        return [list(r) for r in self.rows]

    def reduce(self, v: Sequence[Scalar]) -> Vector:
        """v minus its component along the pivot columns"""
        w = list(v)
        for row, pc in zip(self.rows, self.pivots):
            c = w[pc]
            if c:
                w = [a - c * b for a, b in zip(w, row)]
        return w

    def contains(self, v: Sequence[Scalar]) -> bool:
        return is_zero_vector(self.reduce(v))

    def coordinates(self, v: Sequence[Scalar]) -> Optional[Vector]:
        """Coefficients of v in the RREF basis, None if v is outside"""
        if not self.contains(v):
            return None
        return [v[pc] for pc in self.pivots]

    def combine(self, coeffs: Sequence[Scalar]) -> Vector:
        return vec_combination(self.field, coeffs, self.rows, self.ambient)

    def sum(self, other: 'Subspace') -> 'Subspace':
        return Subspace(self.field, self.ambient, self.rows + other.rows)

    def extend(self, vectors: Iterable[Sequence[Scalar]]) -> 'Subspace':
        return Subspace(self.field, self.ambient, self.rows + [list(v) for v in vectors])

    def is_subspace_of(self, other: 'Subspace') -> bool:
        return all(other.contains(r) for r in self.rows)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self.ambient == other.ambient
                and self.pivots == other.pivots and self.rows == other.rows)

    def intersection(self, other: 'Subspace') -> 'Subspace':
        # x = sum a_i r_i = sum b_j s_j  <=>  [R^T | -S^T] (a, b) = 0
        k, l = self.dim, other.dim
        if k == 0 or l == 0:
            return Subspace(self.field, self.ambient)
        system = []
        for i in range(self.ambient):
            system.append([r[i] for r in self.rows] + [-s[i] for s in other.rows])
        sols = nullspace(self.field, system, k + l)
        return Subspace(self.field, self.ambient, [self.combine(s[:k]) for s in sols])

    def complement_indices(self) -> List[int]:
        """Coordinates not among the pivots: a basis of K^n / self"""
        pivots = set(self.pivots)
        return [j for j in range(self.ambient) if j not in pivots]

    def quotient_coordinates(self, v: Sequence[Scalar]) -> Vector:
        """Coordinates of v + self in the basis given by complement_indices"""
        w = self.reduce(v)
        return [w[j] for j in self.complement_indices()]

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"
