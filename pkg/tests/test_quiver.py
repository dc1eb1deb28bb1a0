#!/usr/bin/env python3
"""
Paths, detours, routes and the arrow classification around a mast
"""
import pytest

from src.quiver.combinatorics import classify_arrows, detours, is_route, minimal_non_routes, non_routes_up_to
from src.quiver.quiver import Quiver, compose, has_oriented_cycle, is_right_subpath, right_subpaths
from src.utils.errors import CompositionError, QuiverError, UnknownArrowError, UnknownVertexError


@pytest.fixture
def linear():
    return Quiver(['1', '2', '3'], [('a1', '1', '2'), ('a2', '2', '3')])


def test_paths_are_written_right_to_left(linear):
    p = linear.path('a2', 'a1')
    assert str(p) == 'a2*a1'
    assert p.source == '1' and p.target == '3'
    assert p.vertices == ('1', '2', '3')
    assert p.traversal == ('a1', 'a2')
    assert linear.parse_path('a2*a1') == p
    assert str(linear.stationary('2')) == 'e_2'
    assert linear.parse_path('e_2').is_stationary


def test_compose_checks_endpoints(linear):
    a1, a2 = linear.arrow_path('a1'), linear.arrow_path('a2')
    assert compose(a2, a1) == linear.path('a2', 'a1')
    with pytest.raises(CompositionError):
        compose(a1, a2)


def test_subpaths(linear):
    p = linear.path('a2', 'a1')
    assert [str(u) for u in right_subpaths(p)] == ['e_1', 'a1', 'a2*a1']
    assert str(p.left_subpath(1)) == 'a2'
    assert str(p.segment(1, 2)) == 'a2'
    assert is_right_subpath(linear.arrow_path('a1'), p)
    assert not is_right_subpath(linear.arrow_path('a2'), p)


def test_quiver_rejects_bad_declarations():
    with pytest.raises(QuiverError):
        Quiver(['1', '1'], [])
    with pytest.raises(QuiverError):
        Quiver(['1', '2'], [('a', '1', '2'), ('a', '2', '1')])
    with pytest.raises(UnknownVertexError):
        Quiver(['1'], [('a', '1', '7')])
    with pytest.raises(UnknownArrowError):
        Quiver(['1'], []).arrow('nope')


def test_oriented_cycles(linear):
    assert not has_oriented_cycle(linear)
    assert has_oriented_cycle(Quiver(['1'], [('x', '1', '1')]))
    assert has_oriented_cycle(Quiver(['1', '2'], [('a', '1', '2'), ('b', '2', '1')]))


def test_paths_of_length(linear):
    assert len(linear.paths_of_length(0)) == 3
    assert [str(p) for p in linear.paths_of_length(2)] == ['a2*a1']
    assert linear.paths_of_length(3) == []


def test_opposite_and_networkx(linear):
    op = linear.opposite()
    assert op.arrow('a1').source == '2' and op.arrow('a1').target == '1'
    graph = linear.to_networkx()
    assert graph.number_of_nodes() == 3 and graph.number_of_edges() == 2


def test_detour_on_parallel_arrows(example_d):
    quiver = example_d.quiver
    p = quiver.path('a2', 'a1')
    found = detours(quiver, p)
    assert [d.key for d in found] == ['d1@a1']
    assert [str(v) for v in found[0].v_family] == ['a2*a1']
    assert str(found[0].path) == 'd1*a1'


def test_arrow_leaving_the_mast_end_is_no_detour(example_a):
    quiver = example_a.quiver
    assert detours(quiver, quiver.path('a1')) == []


def test_routes(example_a):
    quiver = example_a.quiver
    p = quiver.path('a1')
    assert is_route(quiver, p, p)
    assert is_route(quiver, quiver.stationary('1'), p)
    assert not is_route(quiver, quiver.path('b1', 'a1'), p)
    assert {str(q) for q in minimal_non_routes(quiver, p, 3)} == {'b1*a1', 'b2*a1'}
    assert {str(q) for q in non_routes_up_to(quiver, p, 3)} == {'b1*a1', 'b2*a1'}


def test_classify_arrows_example_a(example_a):
    classes = classify_arrows(example_a.quiver, example_a.quiver.path('a1'))
    assert classes.B_prime == ['b1', 'b2']
    assert classes.C == ['g1', 'g2']
    assert classes.B == [] and classes.C_prime == [] and classes.D == []


def test_classify_arrows_example_c(example_c):
    classes = classify_arrows(example_c.quiver, example_c.quiver.path('a2', 'a1'))
    assert classes.as_dict() == {"B": ['b2'], "B'": ['b1'], "C": ['g1'], "C'": [], "D": []}


def test_classify_arrows_example_d(example_d):
    classes = classify_arrows(example_d.quiver, example_d.quiver.path('a2', 'a1'))
    assert classes.D == ['d1']
    assert classes.B_prime == ['b1']
    assert classes.frame.n == 3
    assert classes.frame.alpha(1) == 'a1'
