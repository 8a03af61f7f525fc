import json

import pytest
from hypothesis import given, strategies as st

from oracles import circular_arcs
from rmac.errors import Mismatch, OutOfRange
from rmac.polygon import (
    Prediction,
    arcs,
    combinatorial_generators,
    dropped_arc,
    gamma,
    gamma_basis,
    genus,
    is_contractible_arc,
    predicted_product,
    verify,
)
from rmac.koszul import block
from rmac.simplicial import full_mask, members, polygon_boundary, vertex_set

V = vertex_set


def test_arcs_examples():
    assert arcs(5, V([1, 3, 4])).arcs == (V([1]), V([3, 4]))
    assert arcs(5, full_mask(5)).arcs == (full_mask(5),)
    assert arcs(5, V([1, 5])).arcs == (V([1, 5]),)
    assert arcs(6, V([1, 2, 4, 6])).arcs == (V([1, 2, 6]), V([4]))
    assert arcs(5, 0).arcs == ()


def test_arcs_reject_out_of_range():
    with pytest.raises(Mismatch):
        arcs(4, V([5]))


@given(st.integers(3, 10), st.data())
def test_arcs_match_oracle(n, data):
    I = data.draw(st.integers(0, (1 << n) - 1))
    got = {frozenset(members(a)) for a in arcs(n, I).arcs}
    assert got == set(circular_arcs(n, members(I)))


def test_dropped_arc_holds_least_element():
    dec = arcs(6, V([2, 3, 5]))
    assert dropped_arc(dec) == V([2, 3])
    assert dropped_arc(arcs(6, V([1, 3, 6]))) == V([1, 6])


def test_contractible_arcs():
    assert is_contractible_arc(5, V([4, 5, 1]))
    assert not is_contractible_arc(5, full_mask(5))
    assert not is_contractible_arc(5, V([1, 3]))
    assert not is_contractible_arc(5, 0)


@pytest.mark.parametrize("n,g", [(4, 1), (5, 5), (6, 17), (7, 49)])
def test_genus(n, g):
    assert genus(n) == g


def test_genus_out_of_range():
    with pytest.raises(OutOfRange):
        genus(3)


@pytest.mark.parametrize("n,count", [(3, 0), (4, 2), (5, 10)])
def test_generator_counts(n, count):
    gens = combinatorial_generators(n)
    assert sum(g.degree == 1 for g in gens) == count
    assert gens[-1] == gamma(n)


@pytest.mark.parametrize("n", range(4, 11))
def test_arc_count_identity(n):
    total = sum(arcs(n, I).p - 1 for I in range(1, 1 << n) if arcs(n, I).p >= 2)
    assert total == 2 * genus(n)


def _gen(n, I, arc):
    return next(g for g in combinatorial_generators(n) if g.I == V(I) and g.arc == V(arc))


def test_predicted_products_pentagon():
    a = _gen(5, [1, 3, 4], [3, 4])
    b = _gen(5, [2, 4, 5], [4, 5])
    assert predicted_product(a, b) is Prediction.PLUS_MINUS_GAMMA
    x = _gen(5, [1, 2, 4], [4])
    w = _gen(5, [3, 5], [5])
    assert predicted_product(x, w) is Prediction.PLUS_MINUS_GAMMA
    assert predicted_product(x, _gen(5, [1, 3], [3])) is Prediction.ZERO


def test_predicted_products_hexagon():
    # union {3, 6} is not an arc
    assert predicted_product(_gen(6, [1, 3, 5], [3]), _gen(6, [2, 4, 6], [6])) is Prediction.ZERO
    # {4} sits inside {3, 4, 5}
    assert predicted_product(_gen(6, [1, 3, 4, 5], [3, 4, 5]), _gen(6, [2, 4, 6], [4])) is Prediction.ZERO
    assert predicted_product(_gen(6, [1, 3, 5], [5]), _gen(6, [2, 4, 6], [6])) is Prediction.PLUS_MINUS_GAMMA


def test_predicted_product_errors():
    with pytest.raises(Mismatch):
        predicted_product(gamma(5), gamma(5))
    with pytest.raises(Mismatch):
        predicted_product(combinatorial_generators(4)[0], combinatorial_generators(5)[0])


def test_gamma_basis():
    pent = polygon_boundary(5)
    g = gamma(5)
    assert gamma_basis(5, pent).project(g.rep.vector(block(pent, g.I))) == (1,)


def test_verify_triangle():
    report = verify(3)
    assert report.passed and report.ranks == (1, 0, 1)
    assert report.check("non_symplectic").skipped


def test_verify_square():
    report = verify(4)
    assert report.passed
    assert report.pairing in ([[0, 1], [-1, 0]], [[0, -1], [1, 0]])


def test_verify_pentagon():
    report = verify(5)
    assert report.passed and report.ranks == (1, 10, 1)
    assert (V([1, 3, 4]), V([2, 4, 5])) in report.witnesses
    assert not report.mismatches
    json.dumps(report.to_json())


def test_verify_range():
    with pytest.raises(OutOfRange):
        verify(2)
    with pytest.raises(OutOfRange):
        verify(13)
