#!/usr/bin/env python3
"""
Representations, maps, radical layers, Hom spaces and decomposition
"""
import itertools
import random

import pytest

from src.algebra import linalg
from src.algebra.engine import build_algebra
from src.algebra.field import Field
from src.algebra.linalg import Subspace
from src.algebra.relations import make_relation
from src.modules import decompose as decompose_module
from src.modules.constructions import cokernel, direct_sum, kernel, quotient_by, submodule_to_representation
from src.modules.decompose import (
    EndomorphismRing,
    decompose,
    indecomposables_isomorphic,
    is_indecomposable,
    is_isomorphic,
    summand_dimension_vectors,
)
from src.modules.homs import hom_space, is_split_epi, is_split_mono
from src.modules.layers import (
    is_local,
    is_uniserial,
    loewy_length,
    radical,
    radical_inclusion,
    radical_layer_dims,
    socle,
    top,
)
from src.modules.representation import (
    ModuleMap,
    Representation,
    SubmoduleBasis,
    projective,
    representation_from_lists,
    simple,
    zero_module,
)
from src.quiver.quiver import Quiver
from src.utils.errors import CapExceededError, ModuleError, RelationViolationError


def test_simple_modules(a2):
    S1 = simple(a2, '1')
    assert S1.dimension_vector == (1, 0)
    assert radical(S1).dim == 0
    assert socle(S1).dim == 1
    assert is_uniserial(S1) and is_local(S1)


def test_projective_of_a2(a2):
    P1 = projective(a2, '1')
    assert P1.dimension_vector == (1, 1)
    assert radical_layer_dims(P1) == [1, 1]
    assert loewy_length(P1) == 2
    assert socle(P1).dimension_vector == (0, 1)
    assert top(P1).dimension_vector == (1, 0)
    assert P1.is_valid()


def test_projective_of_example_a(example_a):
    P1 = projective(example_a, '1')
    assert P1.dimension_vector == (1, 1, 0, 0, 1)
    assert is_uniserial(P1)


def test_projective_of_vertex_two_is_not_uniserial(example_a):
    P2 = projective(example_a, '2')
    assert P2.dimension_vector == (0, 1, 0, 0, 2)
    assert not is_uniserial(P2)
    assert is_local(P2)


def test_zero_module_counts_as_uniserial(a2):
    assert is_uniserial(zero_module(a2))


def test_shape_mismatch_is_rejected(a2):
    with pytest.raises(ModuleError):
        Representation(a2, {'1': 1, '2': 1}, {'a1': linalg.zeros(a2.field, 1, 2)})


def test_relation_violation_is_reported(example_d):
    rep = representation_from_lists(
        example_d, {'1': 1, '2': 1, '3': 1, '4': 1},
        {'a1': [[1]], 'a2': [[1]], 'd1': [[0]], 'b1': [[1]]},
    )
    assert rep.validate() == [str(example_d.relations[0])]
    with pytest.raises(RelationViolationError):
        rep.ensure_valid()


def test_hom_spaces(a2):
    S1, S2, P1 = simple(a2, '1'), simple(a2, '2'), projective(a2, '1')
    assert len(hom_space(S1, S1)) == 1
    assert len(hom_space(S1, S2)) == 0
    assert len(hom_space(S2, P1)) == 1
    assert len(hom_space(P1, S1)) == 1
    assert len(hom_space(P1, S2)) == 0


def test_hom_from_projective_counts_vertex_dimension(a3):
    P1 = projective(a3, '1')
    P2 = projective(a3, '2')
    assert len(hom_space(P1, P2)) == P2.dims['1']
    assert len(hom_space(P2, P1)) == P1.dims['2']


def test_split_monos_and_epis(a2):
    P1 = projective(a2, '1')
    JP, iota = radical_inclusion(P1)
    assert JP.dimension_vector == (0, 1)
    assert not is_split_mono(iota)[0]
    split, chi = is_split_mono(ModuleMap.identity(P1))
    assert split and chi.compose(ModuleMap.identity(P1)) == ModuleMap.identity(P1)
    _, pi = quotient_by(P1, radical(P1))
    assert not is_split_epi(pi)[0]


def test_kernel_and_cokernel(a2):
    P1 = projective(a2, '1')
    _, pi = quotient_by(P1, radical(P1))
    K, k = kernel(pi)
    assert K.dimension_vector == (0, 1)
    assert k.is_injective()
    C, _ = cokernel(k)
    assert C.dimension_vector == (1, 0)


def test_direct_sum_decomposes(a2):
    S1 = simple(a2, '1')
    M = direct_sum(S1, S1, projective(a2, '1'))
    assert M.dimension_vector == (3, 1)
    classes = decompose(M)
    assert sorted((rep.dimension_vector, mult) for rep, mult in classes) == [((1, 0), 2), ((1, 1), 1)]
    assert not is_indecomposable(M)
    assert not is_uniserial(direct_sum(S1, S1))


def test_isomorphism(a3):
    P1 = projective(a3, '1')
    sub = socle(P1)
    S3, _ = submodule_to_representation(sub)
    assert indecomposables_isomorphic(S3, simple(a3, '3'))
    assert not indecomposables_isomorphic(simple(a3, '1'), simple(a3, '3'))
    assert is_isomorphic(direct_sum(simple(a3, '1'), P1), direct_sum(P1, simple(a3, '1')))


def test_decomposition_cap_comes_from_settings(a2, monkeypatch):
    monkeypatch.setattr(decompose_module, 'SETTINGS', dict(decompose_module.SETTINGS))
    decompose_module.configure(decompose_dim_cap=1)
    with pytest.raises(CapExceededError):
        decompose(projective(a2, '1'))
    assert decompose(simple(a2, '1'))[0][1] == 1


# Radical of End(M)

def dual_numbers(field):
    """One vertex, a loop x and x*x = 0"""
    loop = Quiver(['1'], [('x', '1', '1')])
    return build_algebra(loop, [make_relation(field, [(1, loop.path('x', 'x'))])], field, name='dual')


@pytest.mark.parametrize('field', [Field.rationals(), Field.prime(2), Field.prime(3)], ids=['Q', 'F2', 'F3'])
def test_end_radical_of_dual_numbers(field):
    ring = EndomorphismRing(projective(dual_numbers(field), '1'))
    assert ring.dim == 2
    assert ring.radical().dim == 1
    assert ring.is_certified_local(budget=0, seed=0)


def test_end_radical_when_p_divides_the_dimension(a3):
    # dim P2 = 2 over F2: the trace form vanishes on the identity
    ring = EndomorphismRing(projective(a3, '2'))
    assert ring.dim == 1
    assert ring.radical().dim == 0
    mixed = EndomorphismRing(direct_sum(projective(a3, '1'), simple(a3, '3')))
    assert mixed.dim == 3
    assert mixed.radical().dim == 1
    assert EndomorphismRing(direct_sum(simple(a3, '1'), simple(a3, '1'))).radical().dim == 0


def test_unsplit_uncertified_module_raises(a2, monkeypatch):
    monkeypatch.setattr(EndomorphismRing, 'candidates', lambda self, budget, seed: iter(()))
    with pytest.raises(CapExceededError):
        is_indecomposable(direct_sum(simple(a2, '1'), simple(a2, '1')))
    assert is_indecomposable(projective(dual_numbers(a2.field), '1'))


def test_decomposition_is_order_independent(a2):
    parts = [projective(a2, '1'), simple(a2, '1'), simple(a2, '2'), simple(a2, '1')]
    expected = [(0, 1), (1, 0), (1, 0), (1, 1)]
    for seed in range(100):
        shuffled = list(parts)
        random.Random(seed).shuffle(shuffled)
        assert summand_dimension_vectors(direct_sum(*shuffled), seed=seed) == expected


# Uniseriality against the submodule lattice

def all_subspaces(field, n):
    """Every subspace of K^n, one RREF basis each"""
    out = []
    for k in range(n + 1):
        for pivots in itertools.combinations(range(n), k):
            free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, n) if j not in pivots]
            for values in itertools.product(field.elements(), repeat=len(free)):
                rows = [[field.zero] * n for _ in pivots]
                for i, p in enumerate(pivots):
                    rows[i][p] = field.one
                for (i, j), c in zip(free, values):
                    rows[i][j] = c
                out.append(Subspace(field, n, rows))
    return out


def lattice_is_chain(M, subspaces):
    """Brute force: the closed subspace tuples of M are totally ordered"""
    vertices = M.algebra.vertices
    by_dim = {}
    for choice in itertools.product(*(subspaces[M.dims[v]] for v in vertices)):
        sub = SubmoduleBasis(M, dict(zip(vertices, choice)))
        if not sub.is_closed():
            continue
        if sub.dim in by_dim:
            return False
        by_dim[sub.dim] = sub
    chain = [by_dim[d] for d in sorted(by_dim)]
    return all(a.is_subspace_of(b) for a, b in zip(chain, chain[1:]))


def all_representations(algebra, max_dim):
    field = algebra.field
    arrows = sorted(algebra.quiver.arrows.values(), key=lambda a: a.id)
    for dims in itertools.product(range(max_dim + 1), repeat=len(algebra.vertices)):
        if not 0 < sum(dims) <= max_dim:
            continue
        dim_of = dict(zip(algebra.vertices, dims))
        shapes = [(a.id, dim_of[a.target], dim_of[a.source]) for a in arrows]
        for values in itertools.product(field.elements(), repeat=sum(m * n for _, m, n in shapes)):
            maps, pos = {}, 0
            for arrow_id, m, n in shapes:
                chunk = values[pos:pos + m * n]
                pos += m * n
                maps[arrow_id] = linalg.from_rows(field, [chunk[i * n:(i + 1) * n] for i in range(m)], m, n)
            yield Representation(algebra, dim_of, maps)


def test_uniserial_matches_lattice_chain(a3):
    subspaces = {n: all_subspaces(a3.field, n) for n in range(7)}
    assert [len(subspaces[n]) for n in range(5)] == [1, 2, 5, 16, 67]
    checked = uniserial = 0
    for M in all_representations(a3, 6):
        chain = lattice_is_chain(M, subspaces)
        assert is_uniserial(M) == chain, M.dimension_vector
        checked += 1
        uniserial += chain
    # uniserials of linear A3: the six intervals of 1 -> 2 -> 3
    assert uniserial == 6
    assert checked == 5065
