#!/usr/bin/env python3
"""
Bound quiver algebras Lambda = KQ/I with a normal-path basis

Construction:
    1. Find the least L <= degree_cap such that every path of length L is a
       combination of products u*r*w (r a relation, all terms of length <= L).
       This proves J^L is inside I.
    2. Row reduce the truncations of all u*r*w modulo J^L over the paths of
       length < L, with columns ordered shortest first. Non-pivot columns are
       the normal paths; every pivot path rewrites to longer-or-equal normal
       paths, so J^k is spanned by the normal paths of length >= k.
"""
import random
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from src.algebra.field import Field, Scalar
from src.algebra.linalg import Subspace, Vector, unit_vector
from src.algebra.relations import Relation, make_relation, validate_relations
from src.quiver.quiver import Path, Quiver, compose, has_oriented_cycle, sort_key
from src.utils.errors import AlgebraError, MixedAlgebraError, NotAdmissibleError, PathIsZeroError
from src.utils.logger import get_logger


logger = get_logger('engine')

Sparse = Dict[int, Scalar]


class Element:
    """An element of a bound quiver algebra, as coefficients on the normal basis"""

    __slots__ = ('algebra', 'coeffs')

    def __init__(self, algebra: 'FDAlgebra', coeffs: Sequence[Scalar]):
        self.algebra = algebra
        self.coeffs = tuple(coeffs)

    def _same(self, other: 'Element') -> None:
        if other.algebra is not self.algebra:
            raise MixedAlgebraError("operands belong to different algebras")

    def __add__(self, other: 'Element') -> 'Element':
        self._same(other)
        return Element(self.algebra, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: 'Element') -> 'Element':
        self._same(other)
        return Element(self.algebra, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> 'Element':
        return Element(self.algebra, [-a for a in self.coeffs])

    def __mul__(self, other) -> 'Element':
        if isinstance(other, Element):
            return self.algebra.multiply(self, other)
        c = self.algebra.field(other)
        return Element(self.algebra, [c * a for a in self.coeffs])

    def __rmul__(self, other) -> 'Element':
        c = self.algebra.field(other)
        return Element(self.algebra, [c * a for a in self.coeffs])

    def __eq__(self, other) -> bool:
        return isinstance(other, Element) and other.algebra is self.algebra and other.coeffs == self.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def support(self) -> List[int]:
        return [i for i, c in enumerate(self.coeffs) if c]

    @property
    def vector(self) -> Vector:
        return list(self.coeffs)

    def __str__(self) -> str:
        return self.algebra.format_element(self)

    def __repr__(self) -> str:
        return f"Element({self})"


class FDAlgebra:
    """Finite-dimensional algebra KQ/I with a normal-path basis"""

    def __init__(
        self,
        quiver: Quiver,
        field: Field,
        relations: List[Relation],
        basis: List[Path],
        reductions: Dict[Path, Sparse],
        cap_length: int,
        degree_cap: int,
        name: Optional[str] = None,
    ):
        self.quiver = quiver
        self.field = field
        self.relations = relations
        self.basis = basis
        self.index: Dict[Path, int] = {p: i for i, p in enumerate(basis)}
        self._reductions = reductions
        self.cap_length = cap_length
        self.degree_cap = degree_cap
        self.name = name
        self.nilpotency = 1 + max((p.length for p in basis), default=0)
        self._products: Dict[Tuple[int, int], Sparse] = {}
        self._opposite: Optional['FDAlgebra'] = None

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"FDAlgebra{label}(dim={self.dim}, N={self.nilpotency}, field={self.field.name})"

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def vertices(self) -> Tuple[str, ...]:
        return self.quiver.vertices

    def is_monomial(self) -> bool:
        return all(r.is_monomial for r in self.relations)

    def is_triangular(self) -> bool:
        return not has_oriented_cycle(self.quiver)

    # Constructors

    def zero(self) -> Element:
        return Element(self, [self.field.zero] * self.dim)

    def _unit(self, i: int) -> Element:
        coeffs = [self.field.zero] * self.dim
        coeffs[i] = self.field.one
        return Element(self, coeffs)

    def from_sparse(self, sparse: Sparse) -> Element:
        coeffs = [self.field.zero] * self.dim
        for i, c in sparse.items():
            coeffs[i] = c
        return Element(self, coeffs)

    def from_vector(self, vector: Sequence[Scalar]) -> Element:
        return Element(self, vector)

    def vertex(self, v: str) -> Element:
        return self._unit(self.index[self.quiver.stationary(v)])

    def one(self) -> Element:
        total = self.zero()
        for v in self.vertices:
            total = total + self.vertex(v)
        return total

    def arrow(self, arrow_id: str) -> Element:
        return self.path_element(self.quiver.arrow_path(arrow_id))

    def path_element(self, path: Path) -> Element:
        """Normal form of a single path"""
        return self.from_sparse(self._reduce_path(path))

    def element(self, terms: Iterable[Tuple[object, Path]]) -> Element:
        """Normal form of sum c_i * path_i"""
        total: Sparse = {}
        for coeff, path in terms:
            c = self.field(coeff)
            for i, a in self._reduce_path(path).items():
                total[i] = total.get(i, self.field.zero) + c * a
        return self.from_sparse(total)

    def parse_element(self, text: str) -> Element:
        return self.path_element(self.quiver.parse_path(text))

    def _reduce_path(self, path: Path) -> Sparse:
        if path.length >= self.cap_length:
            return {}
        return self._reductions.get(path, {})

    def normal_form(self, x: Union[Element, Path, Relation, Iterable[Tuple[object, Path]]]) -> Element:
        """Normal form of an element, a path or a formal combination of paths"""
        if isinstance(x, Element):
            if x.algebra is not self:
                raise MixedAlgebraError("element belongs to another algebra")
            return x
        if isinstance(x, Path):
            return self.path_element(x)
        if isinstance(x, Relation):
            return self.element(x.terms)
        return self.element(x)

    # Products

    def _basis_product(self, i: int, j: int) -> Sparse:
        key = (i, j)
        cached = self._products.get(key)
        if cached is not None:
            return cached
        left, right = self.basis[i], self.basis[j]
        if left.source != right.target:
            result: Sparse = {}
        else:
            result = self._reduce_path(compose(left, right))
        self._products[key] = result
        return result

    def multiply(self, a: Element, b: Element) -> Element:
        if a.algebra is not self or b.algebra is not self:
            raise MixedAlgebraError("operands belong to different algebras")
        total: Sparse = {}
        zero = self.field.zero
        for i in a.support():
            ca = a.coeffs[i]
            for j in b.support():
                cab = ca * b.coeffs[j]
                for k, c in self._basis_product(i, j).items():
                    total[k] = total.get(k, zero) + cab * c
        return self.from_sparse(total)

    def random_element(self, rng: random.Random, density: float = 0.5) -> Element:
        coeffs = [self.field.random_element(rng) if rng.random() < density else self.field.zero
                  for _ in range(self.dim)]
        return Element(self, coeffs)

    # Radical and ideals

    def indices_between(self, source: str, target: str) -> List[int]:
        """Basis indices of e_target Lambda e_source"""
        return [i for i, p in enumerate(self.basis) if p.source == source and p.target == target]

    def cartan(self) -> Dict[Tuple[str, str], int]:
        """dim e_w Lambda e_v for every pair (v, w)"""
        return {(v, w): len(self.indices_between(v, w)) for v in self.vertices for w in self.vertices}

    def radical_power_basis(self, k: int) -> List[Path]:
        """Normal paths of length >= k: a basis of J^k"""
        return [p for p in self.basis if p.length >= k]

    def radical_power(self, k: int) -> Subspace:
        return Subspace(self.field, self.dim, [self._unit(self.index[p]).vector for p in self.radical_power_basis(k)])

    def radical_series_dims(self) -> List[int]:
        return [len(self.radical_power_basis(k)) for k in range(self.nilpotency + 1)]

    def left_ideal_basis(self, generators: Iterable[Element]) -> Subspace:
        """Basis of sum Lambda*g over the generators"""
        vectors = []
        for g in generators:
            for i in range(self.dim):
                prod = self.multiply(self._unit(i), g)
                if not prod.is_zero():
                    vectors.append(prod.vector)
        return Subspace(self.field, self.dim, vectors)

    def membership(self, x: Element, subspace: Subspace) -> bool:
        return subspace.contains(x.vector)

    def left_multiples(self, x: Element, min_length: int = 0, target: Optional[str] = None) -> List[Element]:
        """b*x for basis paths b with length >= min_length (ending at target if given)"""
        out = []
        for i, b in enumerate(self.basis):
            if b.length < min_length or (target is not None and b.target != target):
                continue
            prod = self.multiply(self._unit(i), x)
            if not prod.is_zero():
                out.append(prod)
        return out

    def right_multiples(self, x: Element, min_length: int = 0, source: Optional[str] = None) -> List[Element]:
        """x*b for basis paths b with length >= min_length (starting at source if given)"""
        out = []
        for i, b in enumerate(self.basis):
            if b.length < min_length or (source is not None and b.source != source):
                continue
            prod = self.multiply(x, self._unit(i))
            if not prod.is_zero():
                out.append(prod)
        return out

    def jp_spaces(self, p: Path, at_vertex: Optional[str] = None) -> Tuple[Subspace, Subspace]:
        """(e_x J p, e_x J^2 p) as subspaces of Lambda; x ranges over all vertices if not given"""
        pe = self.path_element(p)
        if pe.is_zero():
            raise PathIsZeroError(f"{p} is zero in the algebra")
        jp = [y.vector for y in self.left_multiples(pe, 1, at_vertex)]
        j2p = [y.vector for y in self.left_multiples(pe, 2, at_vertex)]
        return Subspace(self.field, self.dim, jp), Subspace(self.field, self.dim, j2p)

    def jp_mod_j2p_basis(self, p: Path, at_vertex: Optional[str] = None) -> List[Element]:
        """
        Arrows r leaving t(p) whose classes r*p + J^2 p form a basis of Jp/J^2p

        With at_vertex = x only arrows ending at x are used, giving a basis of
        e_x J p / e_x J^2 p. Representatives are arrows, hence normed.

        Raises:
            PathIsZeroError: p is zero in the algebra
        """
        pe = self.path_element(p)
        if pe.is_zero():
            raise PathIsZeroError(f"{p} is zero in the algebra")
        _, current = self.jp_spaces(p, at_vertex)
        reps = []
        for arrow in sorted(self.quiver.arrows_from(p.target), key=lambda a: a.id):
            if at_vertex is not None and arrow.target != at_vertex:
                continue
            r = self.arrow(arrow.id)
            rp = self.multiply(r, pe)
            if not current.contains(rp.vector):
                reps.append(r)
                current = current.extend([rp.vector])
        return reps

    # Opposite algebra

    def opposite(self) -> 'FDAlgebra':
        """Lambda^op on the opposite quiver, same vertex and arrow ids; cached both ways"""
        if self._opposite is None:
            op = build_algebra(
                self.quiver.opposite(),
                [r.reversed() for r in self.relations],
                self.field,
                degree_cap=self.degree_cap,
                name=f"{self.name}^op" if self.name else None,
            )
            op._opposite = self
            self._opposite = op
        return self._opposite

    def to_opposite(self, x: Element) -> Element:
        """The same element read in Lambda^op (paths reversed)"""
        op = self.opposite()
        return op.element((x.coeffs[i], self.basis[i].reversed()) for i in x.support())

    # Display

    def format_element(self, x: Element) -> str:
        terms = []
        for i in x.support():
            c = self.field.plain(x.coeffs[i])
            terms.append(str(self.basis[i]) if c == '1' else f"{c}*{self.basis[i]}")
        return " + ".join(terms) if terms else "0"


MAX_LAYER = 20000


def _products(relation: Relation, paths: List[Path], budget: int):
    """u*r*w for u leaving t(r), w entering s(r), with len(u)+len(w) <= budget"""
    suffixes = [w for w in paths if w.target == relation.source and w.length <= budget]
    prefixes = [u for u in paths if u.source == relation.target and u.length <= budget]
    for w in suffixes:
        for u in prefixes:
            if u.length + w.length <= budget:
                yield [(c, compose(compose(u, p), w)) for c, p in relation.terms]


def _admissibility_length(quiver: Quiver, relations: List[Relation], field: Field,
                          degree_cap: int) -> Tuple[Optional[int], List[List[Path]]]:
    """Least L with every length-L path in span{u*r*w : all terms of length <= L}"""
    layers = [[quiver.stationary(v) for v in quiver.vertices]]
    layers.append([q for p in layers[0] for q in quiver.extend(p)])
    for L in range(2, degree_cap + 1):
        top = [q for p in layers[L - 1] for q in quiver.extend(p)]
        layers.append(top)
        if not top:
            return L, layers
        if len(top) > MAX_LAYER:
            raise NotAdmissibleError(
                f"{len(top)} paths of length {L} before J^L inside I was verified"
            )
        if not relations:
            continue
        short = [p for layer in layers for p in layer]
        col = {p: i for i, p in enumerate(short)}
        rows = []
        for r in relations:
            budget = L - r.max_length
            if budget < 0:
                continue
            for combo in _products(r, short, budget):
                row = [field.zero] * len(short)
                for c, path in combo:
                    row[col[path]] += c
                rows.append(row)
        span = Subspace(field, len(short), rows)
        if all(span.contains(unit_vector(field, len(short), col[p])) for p in top):
            return L, layers
    return None, layers


def build_algebra(
    quiver: Quiver,
    relations: Iterable[Relation],
    field: Field,
    degree_cap: int = 32,
    name: Optional[str] = None,
) -> FDAlgebra:
    """
    Build KQ/I with a normal-path basis

    Args:
        quiver: The quiver Q
        relations: Generators of I (validated: parallel terms, lengths >= 2)
        field: Coefficient field
        degree_cap: Largest L tried when proving J^L is inside I
        name: Optional label used in logs and reports

    Returns:
        The algebra

    Raises:
        NotAdmissibleError: no L <= degree_cap with J^L inside I was verified
    """
    if degree_cap < 2:
        raise AlgebraError("degree_cap must be at least 2")
    relations = [make_relation(field, r.terms) for r in relations]
    validate_relations(quiver, relations)

    if not quiver.arrows:
        basis = [quiver.stationary(v) for v in quiver.vertices]
        reductions = {p: {i: field.one} for i, p in enumerate(basis)}
        return FDAlgebra(quiver, field, relations, basis, reductions, 1, degree_cap, name)

    L, layers = _admissibility_length(quiver, relations, field, degree_cap)
    if L is None:
        raise NotAdmissibleError(
            f"no L <= {degree_cap} with J^L inside I: ideal not verifiably admissible at this cap"
        )

    # Paths of length < L, leading (pivot) columns first: shortest, then largest arrow word
    paths = [p for layer in layers[:L] for p in layer]
    ordered = []
    for length in range(L):
        same = [p for p in paths if p.length == length]
        ordered.extend(sorted(same, key=lambda p: (p.arrows, p.vertices), reverse=True))
    col = {p: i for i, p in enumerate(ordered)}

    rows = []
    for r in relations:
        budget = L - 1 - r.min_length
        if budget < 0:
            continue
        for combo in _products(r, paths, budget):
            row = [field.zero] * len(ordered)
            for c, path in combo:
                if path.length < L:
                    row[col[path]] += c
            if any(row):
                rows.append(row)
    ideal = Subspace(field, len(ordered), rows)

    pivots = set(ideal.pivots)
    basis = sorted((ordered[j] for j in range(len(ordered)) if j not in pivots), key=sort_key)
    basis_index = {p: i for i, p in enumerate(basis)}

    reductions: Dict[Path, Sparse] = {p: {basis_index[p]: field.one} for p in basis}
    for row, pc in zip(ideal.rows, ideal.pivots):
        rewrite: Sparse = {}
        for j, c in enumerate(row):
            if c and j != pc:
                rewrite[basis_index[ordered[j]]] = -c
        reductions[ordered[pc]] = rewrite

    algebra = FDAlgebra(quiver, field, relations, basis, reductions, L, degree_cap, name)
    logger.debug(f"built {algebra!r} with J^{L} inside I")
    return algebra
