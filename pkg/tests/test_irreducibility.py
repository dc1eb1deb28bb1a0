#!/usr/bin/env python3
"""
Criteria for JU -> U, the pipeline that combines them, and witnesses
"""
import pytest

from src.algebra.engine import build_algebra
from src.algebra.field import Field
from src.algebra.relations import make_relation
from src.irreducibility.criteria import (
    check,
    check_1to2a,
    check_2a,
    check_monomial,
    check_multiserial,
    check_obstruction,
    essential_detours,
    irreducible_shape_filter,
    multiserial_hypothesis,
)
from src.irreducibility.reports import FAILS, MONOMIAL, MULTISERIAL
from src.irreducibility.sufficient import split_factorization, sufficient_direction
from src.irreducibility.witness import build_witness
from src.modules.constructions import quotient_by
from src.modules.homs import is_split_mono
from src.modules.layers import radical_inclusion, socle
from src.modules.representation import ModuleMap, projective, simple
from src.quiver.quiver import Quiver
from src.uniserial.variety import MastVariety, from_mast_and_fdelta, uniserial_from_representation
from src.utils.errors import NotMonomialError, WitnessConstructionError


def mast_module(algebra, *arrows, point=None):
    variety = MastVariety(algebra, algebra.quiver.path(*arrows))
    return variety.build(variety.point(point or {}))


@pytest.fixture(scope='module')
def U_a(example_a):
    return mast_module(example_a, 'a1')


@pytest.fixture(scope='module')
def U_d(example_d):
    return from_mast_and_fdelta(example_d, example_d.quiver.path('a2', 'a1'), {'d1': 1})


# Single criteria

def test_obstruction(forked, a3):
    U = mast_module(forked, 'a1')
    report = check_obstruction(U)
    assert report.verdict == FAILS
    assert report.failing_clauses == ['obstruction:c']
    assert check_obstruction(mast_module(a3, 'a2', 'a1')).holds


def test_inessential_detour(example_d):
    assert essential_detours(example_d, example_d.quiver.path('a2', 'a1')) == []


def test_necessary_conditions_hold_on_examples(U_a, U_d):
    for U in (U_a, U_d):
        report = check_1to2a(U)
        assert report.holds, report.failing_clauses
        assert check_2a(U).holds


def test_2a_reports_fdelta(U_d):
    assert check_2a(U_d).details['fdelta'] == {'d1': '1'}


def test_monomial_criterion_on_a3(a3):
    assert check_monomial(mast_module(a3, 'a2', 'a1')).holds
    assert check_monomial(mast_module(a3, 'a1')).holds


def test_monomial_criterion_needs_monomial_relations(U_d):
    with pytest.raises(NotMonomialError):
        check_monomial(U_d)


def test_monomial_clause_b_ii():
    # 1 -a1-> 2 -a2-> 3 -b-> 4 with an extra d: 2 -> 3 and d*a1 = 0
    quiver = Quiver(['1', '2', '3', '4'],
                    [('a1', '1', '2'), ('a2', '2', '3'), ('d', '2', '3'), ('b', '3', '4')])
    field = Field.rationals()
    algebra = build_algebra(quiver, [make_relation(field, [(1, quiver.path('d', 'a1'))])], field)
    report = check_monomial(mast_module(algebra, 'a2', 'a1', point={'d@a1': 0}))
    assert report.verdict == FAILS
    assert report.failing_clauses == ["b-ii-β'=b,δ=d"]


def test_multiserial_criterion_example_a(U_a):
    assert multiserial_hypothesis(U_a) == 1
    report = check_multiserial(U_a)
    assert report.verdict == FAILS
    assert report.theorem == MULTISERIAL
    assert report.failing_clauses == ["b-i-β'=b1,γ=g2"]


def test_multiserial_criterion_example_d(U_d):
    report = check_multiserial(U_d)
    assert report.verdict == FAILS
    assert report.failing_clauses == ["b-ii-β'=b1,δ=d1"]


# Pipeline

def test_pipeline_hereditary_projective(a3):
    report = check(mast_module(a3, 'a2', 'a1'))
    assert report.irreducible is True
    assert report.decided_by == 'monomial'
    assert report.report('monomial').theorem == MONOMIAL
    assert report.witness is None


def test_pipeline_simple_module(a3):
    variety = MastVariety(a3, a3.quiver.stationary('1'))
    report = check(variety.build(variety.point({})))
    assert report.irreducible is False
    assert report.decided_by == 'shape'
    assert report.witness is None


@pytest.mark.parametrize('name, arrows, point', [
    ('example_a', ('a1',), None),
    ('example_b', ('a1',), None),
    ('example_c', ('a2', 'a1'), None),
    ('example_d', ('a2', 'a1'), {'d1@a1': 1}),
])
def test_pipeline_examples_are_not_irreducible(request, name, arrows, point):
    algebra = request.getfixturevalue(name)
    U = mast_module(algebra, *arrows, point=point)
    report = check(U)
    assert report.irreducible is False
    assert not report.conjectural
    assert report.decided_by == 'multiserial'
    assert report.witness is not None
    assert report.witness.verify()


def test_pipeline_obstruction_short_circuits(forked):
    report = check(mast_module(forked, 'a1'), want_witness=False)
    assert report.irreducible is False
    assert report.decided_by == 'obstruction'
    assert [r.criterion for r in report.reports] == ['obstruction']


def test_pipeline_without_witness(U_a):
    report = check(U_a, want_witness=False)
    assert report.irreducible is False
    assert report.witness is None


# Witnesses and splittings

def test_witness_factors_the_radical_embedding(U_a):
    witness = build_witness(U_a, "b-i-β'=b1,γ=g2")
    assert witness.verify()
    assert witness.checks == {
        'composite_is_embedding': True,
        'phi_not_split_mono': True,
        'psi_not_split_epi': True,
    }
    assert witness.psi.compose(witness.phi) == witness.embedding


def test_no_witness_for_a_simple(a3):
    variety = MastVariety(a3, a3.quiver.stationary('3'))
    with pytest.raises(WitnessConstructionError):
        build_witness(variety.build(variety.point({})))


def test_trivial_factorization_splits(a3):
    U = mast_module(a3, 'a2', 'a1')
    JU, iota = radical_inclusion(U.rep)
    # through V = U: phi = iota, psi = id, split by psi's section
    splitting = sufficient_direction(U, iota, ModuleMap.identity(U.rep))
    assert splitting is not None
    assert splitting.kind == 'section'
    # through V = JU: phi = id, psi = iota, split by phi's retraction
    splitting = split_factorization(U, ModuleMap.identity(JU), iota)
    assert splitting is not None
    assert splitting.kind == 'retraction'


def test_verified_witness_is_not_split(U_a):
    witness = build_witness(U_a)
    assert not is_split_mono(witness.phi)[0]
    assert sufficient_direction(U_a, witness.phi, witness.psi) is None


# Shapes of irreducible maps between uniserials

def test_shape_filter(a3):
    P1 = projective(a3, '1')
    P2 = projective(a3, '2')
    S1 = simple(a3, '1')
    assert irreducible_shape_filter(P2, P1) == 'radical-embedding'
    assert irreducible_shape_filter(P1, uniserial_from_representation(P1).rep) == 'impossible'
    assert irreducible_shape_filter(S1, P2) == 'impossible'
    top_part = quotient_by(P1, socle(P1))[0]
    assert irreducible_shape_filter(P1, top_part) == 'socle-projection'
