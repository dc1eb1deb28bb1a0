#!/usr/bin/env python3
"""
Presentations, D Tr, Ext^1, almost split sequences, bounds and the census
"""
import pytest

from src.ar.bounds import check_bounds, is_cyclic_quotient_by_one
from src.ar.census import census_indecomposables, dimension_vectors, thread_count
from src.ar.presentation import dtr, injective, is_projective, minimal_presentation, projective_cover
from src.ar.sequences import (
    INDECOMPOSABLE,
    TWO_UNISERIALS,
    Ext1Space,
    almost_split_sequence,
    alpha,
    middle_summands,
    middle_term_dichotomy,
    radical_embedding_is_irreducible,
    radical_embedding_oracle,
    verify_almost_split,
)
from src.modules.constructions import quotient_by
from src.modules.layers import socle
from src.modules.representation import projective, simple
from src.utils.errors import InfiniteFieldError, ProjectiveModuleError


@pytest.fixture
def twelve(a3):
    """P1 / S3 over A3: the uniserial with composition factors S1, S2"""
    P1 = projective(a3, '1')
    return quotient_by(P1, socle(P1))[0]


def test_projective_cover(a2):
    cover = projective_cover(simple(a2, '1'))
    assert cover.summands == 1
    assert cover.P.dimension_vector == (1, 1)
    presentation = minimal_presentation(simple(a2, '1'))
    assert presentation.P1.summands == 1


def test_projectivity(a2, a3):
    assert is_projective(projective(a3, '1'))
    assert is_projective(simple(a2, '2'))
    assert not is_projective(simple(a2, '1'))


def test_injectives(a3):
    assert injective(a3, '1').dimension_vector == (1, 0, 0)
    assert injective(a3, '3').dimension_vector == (1, 1, 1)


def test_translate_of_a2(a2):
    assert dtr(simple(a2, '1')).dimension_vector == (0, 1)


def test_translate_of_a3(a3, twelve):
    assert dtr(twelve).dimension_vector == (0, 1, 1)
    assert dtr(simple(a3, '1')).dimension_vector == (0, 1, 0)


def test_ext1(a2):
    space = Ext1Space(simple(a2, '1'), simple(a2, '2'))
    assert space.dim == 1
    sequence = space.sequence([a2.field.one])
    assert sequence.is_exact()
    assert not sequence.is_split()
    assert sequence.E.dimension_vector == (1, 1)
    assert Ext1Space(simple(a2, '2'), simple(a2, '1')).dim == 0


def test_almost_split_sequence_a2(a2):
    sequence = almost_split_sequence(simple(a2, '1'))
    assert sequence.A.dimension_vector == (0, 1)
    assert sequence.E.dimension_vector == (1, 1)
    assert alpha(simple(a2, '1')) == 1
    assert verify_almost_split(sequence)['ok']


def test_almost_split_sequence_a3(twelve):
    sequence = almost_split_sequence(twelve)
    assert sequence.E.dimension_vector == (1, 2, 1)
    assert sorted(B.dimension_vector for B in middle_summands(sequence)) == [(0, 1, 0), (1, 1, 1)]


def test_projectives_have_no_almost_split_sequence(a3):
    with pytest.raises(ProjectiveModuleError):
        almost_split_sequence(projective(a3, '2'))


def test_radical_embedding_oracle(a2, a3, twelve):
    assert radical_embedding_is_irreducible(projective(a2, '1'))
    assert not radical_embedding_is_irreducible(simple(a2, '1'))
    assert radical_embedding_is_irreducible(twelve)


def test_dichotomy(a2):
    space = Ext1Space(simple(a2, '1'), simple(a2, '2'))
    assert middle_term_dichotomy(space.sequence([a2.field.one])) == INDECOMPOSABLE
    assert TWO_UNISERIALS != INDECOMPOSABLE


def test_dichotomy_two_uniserials(twelve):
    sequence = almost_split_sequence(twelve)
    assert middle_term_dichotomy(sequence) == TWO_UNISERIALS


def test_bounds_on_a3(twelve):
    report = check_bounds(twelve)
    assert report.alpha == 2
    assert report.mono_count == 1 and report.epi_count == 1
    assert report.multiserial_m == 1
    assert report.violations == []
    assert report.as_dict()['bounds']['final-i']['applies']
    assert is_cyclic_quotient_by_one(twelve)


def test_census_of_a3(a3):
    census = census_indecomposables(a3, dim_cap=3, budget=4096, threads=1)
    assert census.complete
    assert len(census) == 6
    assert census.iso_id(projective(a3, '1')) is not None
    assert census.as_dict()['count'] == 6


def test_census_skips_large_dimension_vectors(a3):
    census = census_indecomposables(a3, dim_cap=4, budget=4, threads=1)
    assert not census.complete
    assert len(census) == 6


def test_census_needs_a_finite_field(a2):
    with pytest.raises(InfiniteFieldError):
        census_indecomposables(a2, dim_cap=2)


def test_dimension_vectors_have_connected_support(a3):
    vectors = dimension_vectors(a3, 2)
    assert (1, 0, 1) not in vectors
    assert vectors[0] == (0, 0, 1)


def test_thread_count(monkeypatch):
    monkeypatch.delenv('USERIAL_THREADS', raising=False)
    assert thread_count() == 1
    monkeypatch.setenv('USERIAL_THREADS', '4')
    assert thread_count() == 4
    monkeypatch.setenv('USERIAL_THREADS', 'many')
    assert thread_count(2) == 2


def test_census_verified_almost_split(a3, twelve):
    census = census_indecomposables(a3, dim_cap=3, threads=1)
    sequence = almost_split_sequence(twelve, census)
    assert sequence.verified
    report = verify_almost_split(sequence, census)
    assert report['census_maps_lift'] and report['ok']
    assert report['verification'] == 'census'
    assert radical_embedding_oracle(twelve, census) == (True, True)


def test_sequence_without_census_is_unverified(a2):
    sequence = almost_split_sequence(simple(a2, '1'))
    report = verify_almost_split(sequence)
    assert report['ok'] and not report['verified']
    assert report['verification'] == 'local-only'
    assert not sequence.verified
    assert radical_embedding_oracle(simple(a2, '1')) == (False, True)
    assert radical_embedding_oracle(projective(a2, '1')) == (True, True)


def test_oracle_without_census_is_unverified(twelve):
    assert radical_embedding_oracle(twelve) == (True, False)


def test_partial_census_does_not_verify(a3, twelve):
    census = census_indecomposables(a3, dim_cap=4, budget=4, threads=1)
    report = verify_almost_split(almost_split_sequence(twelve, census), census)
    assert report['ok'] and report['census_maps_lift']
    assert report['verification'] == 'partial-census'
    assert not report['verified']


def test_almost_split_sequences_over_f2(a3, twelve):
    # dim twelve = 2 vanishes in F2, so the trace form alone cannot give rad End
    census = census_indecomposables(a3, dim_cap=3, threads=1)
    sequences = {M.dimension_vector: almost_split_sequence(M, census)
                 for M in (twelve, simple(a3, '1'), simple(a3, '2'))}
    assert {d: sorted(B.dimension_vector for B in middle_summands(s)) for d, s in sequences.items()} == {
        (1, 1, 0): [(0, 1, 0), (1, 1, 1)],
        (1, 0, 0): [(1, 1, 0)],
        (0, 1, 0): [(0, 1, 1)],
    }
    assert all(s.verified for s in sequences.values())
    assert check_bounds(twelve, census).verified
