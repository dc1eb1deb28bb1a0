#!/usr/bin/env python3
"""
Fields, relations and the normal-path algebra engine
"""
import random
from fractions import Fraction

import pytest

from src.algebra import linalg
from src.algebra.engine import build_algebra
from src.algebra.field import Field
from src.algebra.multiserial import arrow_ideal_uniseriality, is_left_multiserial
from src.algebra.relations import make_relation
from src.quiver.quiver import Quiver
from src.utils.errors import (
    AlgebraError,
    MixedAlgebraError,
    NonParallelRelationError,
    NotAdmissibleError,
    PathIsZeroError,
    ShortRelationTermError,
)


# Fields

def test_rationals():
    Q = Field.rationals()
    assert Q.name == 'Q' and not Q.is_finite and Q.order is None
    assert Q.format(Q.fraction(6, 14)) == '3/7'
    assert Q('3/7') == Q.fraction(3, 7)
    assert Q(Fraction(1, 2)) * Q(2) == Q.one
    with pytest.raises(AlgebraError):
        Q.fraction(1, 0)
    with pytest.raises(AlgebraError):
        Q.elements()


def test_prime_field():
    F5 = Field.prime(5)
    assert F5.name == 'F5' and F5.order == 5
    assert F5.format(F5(7)) == '2 mod 5'
    assert F5.parse('2 mod 5') == F5(2)
    assert F5.plain(F5(-1)) == '4'
    assert F5.fraction(1, 2) * F5(2) == F5.one
    assert len(F5.elements()) == 5
    assert F5.non_special_scalar() == F5(2)
    assert Field.prime(2).non_special_scalar() is None
    with pytest.raises(AlgebraError):
        F5.fraction(1, 5)
    with pytest.raises(AlgebraError):
        F5.parse('1 mod 7')


def test_non_prime_characteristic_is_rejected():
    with pytest.raises(AlgebraError):
        Field(4)


# Exact matrices

@pytest.mark.parametrize('field', [Field.rationals(), Field.prime(2)], ids=['Q', 'F2'])
def test_identity_and_zeros_mix_with_built_matrices(field):
    N = linalg.from_rows(field, [[field(0), field(1)], [field(0), field(0)]], 2, 2)
    ident = linalg.identity(field, 2)
    assert linalg.to_rows(linalg.matmul(ident, N)) == linalg.to_rows(N)
    assert linalg.to_rows(linalg.add(linalg.zeros(field, 2, 2), N)) == linalg.to_rows(N)
    assert linalg.to_rows(linalg.sub(N, ident))[0] == [field(-1), field(1)]
    assert linalg.is_zero_matrix(linalg.power(N, 2, field))
    assert linalg.to_rows(linalg.power(N, 0, field)) == linalg.to_rows(ident)
    assert linalg.to_rows(linalg.matmul(linalg.transpose(N), linalg.zeros(field, 2, 3))) == [[field(0)] * 3] * 2
    assert linalg.transpose(linalg.zeros(field, 0, 3)).shape == (3, 0)


# Relations

def test_relation_validation(example_a):
    quiver, field = example_a.quiver, example_a.field
    with pytest.raises(NonParallelRelationError):
        make_relation(field, [(1, quiver.path('b1', 'a1')), (-1, quiver.arrow_path('g1'))])
    with pytest.raises(ShortRelationTermError):
        make_relation(field, [(1, quiver.arrow_path('a1'))])
    with pytest.raises(AlgebraError):
        make_relation(field, [(1, quiver.path('b1', 'a1')), (-1, quiver.path('b1', 'a1'))])


def test_relation_collects_like_terms(example_d):
    quiver, field = example_d.quiver, example_d.field
    r = make_relation(field, [(1, quiver.path('d1', 'a1')), (2, quiver.path('a2', 'a1')),
                              (-3, quiver.path('a2', 'a1'))])
    assert len(r.terms) == 2
    assert not r.is_monomial
    assert r.source == '1' and r.target == '3'


# Engine

def test_hereditary_a3(a3):
    assert a3.dim == 6
    assert a3.nilpotency == 3
    assert a3.is_monomial() and a3.is_triangular()
    assert a3.radical_series_dims() == [6, 3, 1, 0]
    assert [str(p) for p in a3.radical_power_basis(2)] == ['a2*a1']
    assert a3.cartan()[('1', '3')] == 1


def test_example_dimensions(example_a, example_d):
    assert example_a.dim == 13
    assert example_d.dim == 12
    assert not example_d.is_monomial()


def test_commutativity_relation_rewrites_larger_path(example_d):
    quiver = example_d.quiver
    d1a1 = example_d.multiply(example_d.arrow('d1'), example_d.arrow('a1'))
    assert d1a1 == example_d.path_element(quiver.path('a2', 'a1'))
    assert example_d.format_element(d1a1) == 'a2*a1'
    assert quiver.path('d1', 'a1') not in example_d.index


def test_zero_relations(example_a):
    quiver = example_a.quiver
    assert example_a.path_element(quiver.path('b1', 'g1')).is_zero()
    assert not example_a.path_element(quiver.path('b1', 'g2')).is_zero()
    assert example_a.path_element(quiver.path('b1', 'a1')) == example_a.path_element(quiver.path('b2', 'a1'))


def test_products_of_non_composable_paths_vanish(a3):
    assert a3.multiply(a3.arrow('a1'), a3.arrow('a2')).is_zero()
    assert a3.multiply(a3.vertex('2'), a3.arrow('a1')) == a3.arrow('a1')
    assert a3.multiply(a3.one(), a3.arrow('a2')) == a3.arrow('a2')


@pytest.mark.parametrize('name', ['a3', 'example_a', 'example_b', 'example_c', 'example_d', 'example_d_f2'])
def test_multiplication_is_associative(name, request):
    algebra = request.getfixturevalue(name)
    rng = random.Random(7)
    for _ in range(1000):
        x, y, z = (algebra.random_element(rng) for _ in range(3))
        assert algebra.multiply(algebra.multiply(x, y), z) == algebra.multiply(x, algebra.multiply(y, z))


def test_mixed_algebras_are_rejected(a2, a3):
    with pytest.raises(MixedAlgebraError):
        a3.multiply(a2.arrow('a1'), a3.arrow('a1'))


def test_not_admissible():
    loop = Quiver(['1'], [('x', '1', '1')])
    with pytest.raises(NotAdmissibleError):
        build_algebra(loop, [], Field.rationals(), degree_cap=6)


def test_truncated_loop_is_admissible():
    loop = Quiver(['1'], [('x', '1', '1')])
    field = Field.rationals()
    algebra = build_algebra(loop, [make_relation(field, [(1, loop.path('x', 'x', 'x'))])], field)
    assert algebra.dim == 3
    assert algebra.nilpotency == 3
    assert not algebra.is_triangular()


def test_jp_quotient_basis(a3):
    quiver = a3.quiver
    assert [a3.format_element(r) for r in a3.jp_mod_j2p_basis(quiver.path('a1'))] == ['a2']
    assert a3.jp_mod_j2p_basis(quiver.path('a2', 'a1')) == []


def test_jp_of_a_zero_path(example_a):
    with pytest.raises(PathIsZeroError):
        example_a.jp_spaces(example_a.quiver.path('b1', 'g1'))


def test_left_ideal_membership(example_d):
    quiver = example_d.quiver
    ideal = example_d.left_ideal_basis([example_d.arrow('a1')])
    assert example_d.membership(example_d.path_element(quiver.path('b1', 'a2', 'a1')), ideal)
    assert not example_d.membership(example_d.vertex('1'), ideal)


def test_opposite_algebra(example_d):
    op = example_d.opposite()
    assert op.dim == example_d.dim
    assert op.opposite() is example_d
    assert op.quiver.arrow('a1').source == '2'
    x = example_d.path_element(example_d.quiver.path('a2', 'a1'))
    assert op.format_element(example_d.to_opposite(x)) == 'a1*a2'


# Multiseriality

def test_multiserial_examples(a3, example_a):
    assert is_left_multiserial(a3) == 1
    assert all(arrow_ideal_uniseriality(example_a).values())
    assert is_left_multiserial(example_a) == 2
