#!/usr/bin/env python3
"""
The variety V_p, Phi_p and the triangular f_delta parametrization
"""
import pytest

from src.frontend.module_spec import build_module, parse_assignments, uniserial_for
from src.modules.layers import is_uniserial
from src.modules.representation import projective
from src.uniserial.variety import (
    MastVariety,
    enumerate_variety,
    fdelta_from_point,
    from_mast_and_fdelta,
    masts,
    phi_p_surjectivity,
    uniserial_from_representation,
)
from src.utils.errors import (
    InfiniteFieldError,
    PathIsZeroError,
    PointNotInVarietyError,
    RelationViolationError,
    VarietyError,
)


def test_masts_of_a3_are_all_verified(a3):
    found = masts(a3, 2)
    assert len(found) == 6
    assert {status for _, status in found} == {'verified'}
    assert 'a2*a1' in {str(p) for p, _ in found}


def test_simple_mast_gives_the_simple(a3):
    variety = MastVariety(a3, a3.quiver.stationary('2'))
    assert variety.size == 0
    U = variety.build(variety.point({}))
    assert U.rep.dimension_vector == (0, 1, 0)


def test_zero_path_has_no_variety(example_a):
    with pytest.raises(PathIsZeroError):
        MastVariety(example_a, example_a.quiver.path('b1', 'g1'))


def test_variety_of_example_d(example_d):
    variety = MastVariety(example_d, example_d.quiver.path('a2', 'a1'))
    assert variety.size == 1
    assert variety.coordinates() == [('d1@a1', 0)]
    assert variety.contains(variety.point({'d1@a1': 1}))
    assert not variety.contains(variety.point({'d1@a1': 0}))
    U = variety.build(variety.point({'d1@a1': 1}))
    assert U.rep.dimension_vector == (1, 1, 1, 0)
    assert is_uniserial(U.rep)
    assert str(U.mast) == 'a2*a1'
    with pytest.raises(PointNotInVarietyError):
        variety.build(variety.point({'d1@a1': '1/2'}))


def test_point_keys_are_checked(example_d):
    variety = MastVariety(example_d, example_d.quiver.path('a2', 'a1'))
    with pytest.raises(VarietyError):
        variety.point({})
    with pytest.raises(VarietyError):
        variety.point({'d1@a1': 1, 'b1@a1': 0})


def test_enumeration_over_f2(example_d_f2):
    points = enumerate_variety(example_d_f2, example_d_f2.quiver.path('a2', 'a1'))
    assert len(points) == 1
    assert points[0].as_dict(example_d_f2.field.plain) == {'d1@a1': '1'}


def test_enumeration_needs_a_finite_field(example_d):
    with pytest.raises(InfiniteFieldError):
        enumerate_variety(example_d, example_d.quiver.path('a2', 'a1'))


def test_non_routes_are_killed(example_a):
    variety = MastVariety(example_a, example_a.quiver.path('a1'))
    assert variety.size == 0
    U = variety.build(variety.point({}))
    assert U.rep.dimension_vector == (1, 1, 0, 0, 0)


def test_fdelta_parametrization(example_d):
    p = example_d.quiver.path('a2', 'a1')
    U = from_mast_and_fdelta(example_d, p, {'d1': 1})
    assert U.rep.dimension_vector == (1, 1, 1, 0)
    assert fdelta_from_point(example_d, U.point) == {'d1': example_d.field.one}
    with pytest.raises(RelationViolationError):
        from_mast_and_fdelta(example_d, p, {'d1': 2})
    with pytest.raises(VarietyError):
        from_mast_and_fdelta(example_d, p, {'b1': 1})


def test_measured_point_matches_the_variety(example_d):
    variety = MastVariety(example_d, example_d.quiver.path('a2', 'a1'))
    built = variety.build(variety.point({'d1@a1': 1}))
    recovered = uniserial_from_representation(built.rep)
    assert str(recovered.mast) == 'a2*a1'
    assert recovered.point.as_dict(example_d.field.plain) == {'d1@a1': '1'}


def test_recover_mast_of_a_projective(a3):
    U = uniserial_from_representation(projective(a3, '1'))
    assert str(U.mast) == 'a2*a1'
    assert U.length == 3


def test_recover_rejects_non_uniserial(example_a):
    with pytest.raises(VarietyError):
        uniserial_from_representation(projective(example_a, '2'))


def test_phi_p_reaches_every_uniserial(a3, example_d_f2):
    assert phi_p_surjectivity(a3, a3.quiver.path('a2', 'a1'))['agree']
    record = phi_p_surjectivity(example_d_f2, example_d_f2.quiver.path('a2', 'a1'))
    assert record['agree']
    assert record['phi_classes'] == record['brute_classes'] == 1


# Command line module descriptions

def test_parse_assignments():
    assert parse_assignments('d1@a1=1, b1@a2:1=2/3') == {'d1@a1': '1', 'b1@a2:1': '2/3'}
    with pytest.raises(VarietyError):
        parse_assignments('d1@a1')


def test_default_uniserial_falls_back_to_the_variety(example_d):
    U = uniserial_for(example_d, 'a2*a1')
    assert U.rep.dimension_vector == (1, 1, 1, 0)
    with pytest.raises(VarietyError):
        uniserial_for(example_d, 'a2*a1', point={'d1@a1': '1'}, fdelta={'d1': '1'})


def test_build_module(a3, example_d):
    assert build_module(a3, 'simple:2').dimension_vector == (0, 1, 0)
    assert build_module(a3, 'projective:1').dimension_vector == (1, 1, 1)
    assert build_module(a3, 'injective:3').dimension_vector == (1, 1, 1)
    assert build_module(example_d, 'uniserial:a2*a1/d1@a1=1').dimension_vector == (1, 1, 1, 0)
    with pytest.raises(VarietyError):
        build_module(a3, 'tilting:1')
