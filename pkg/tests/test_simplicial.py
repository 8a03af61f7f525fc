import pytest
from hypothesis import given, strategies as st

from oracles import circular_arcs
from rmac.errors import InvalidComplex, InvalidDimension, InvalidPolygon, InvalidVertex, TooLarge
from rmac.simplicial import (
    Complex,
    components,
    contains,
    from_facets,
    full_subcomplex,
    members,
    polygon_boundary,
    simplex_boundary,
    submasks,
    vertex_set,
)
from strategies import complexes

V = vertex_set


def test_vertex_set_roundtrip():
    assert members(V([3, 1, 3])) == (1, 3)
    assert V([]) == 0
    assert members(0) == ()


def test_triangle_boundary():
    c = from_facets(3, [[1, 2], [2, 3], [1, 3]])
    assert c.facets == (V([1, 2]), V([1, 3]), V([2, 3]))
    assert V([1, 2, 3]) not in c
    assert len(c.simplices) == 7


def test_pentagon_facets():
    c = from_facets(5, [[1, 2], [2, 3], [3, 4], [4, 5], [1, 5]])
    assert c == polygon_boundary(5)


def test_duplicate_facets_absorbed():
    assert from_facets(3, [[1, 2], [1, 2]]) == from_facets(3, [[1, 2]])
    assert from_facets(3, [[1], [1, 2], [2]]) == from_facets(3, [[1, 2]])


def test_constructor_errors():
    with pytest.raises(InvalidVertex):
        from_facets(3, [[1, 4]])
    with pytest.raises(InvalidVertex):
        from_facets(3, [[0, 1]])
    with pytest.raises(TooLarge):
        from_facets(64, [[1]])
    from_facets(63, [[1, 63]])


def test_contains():
    pent = polygon_boundary(5)
    assert contains(pent, V([1, 2]))
    assert not contains(pent, V([1, 3]))
    assert contains(pent, 0)
    assert contains(Complex(4, ()), 0)


def test_full_subcomplex_examples():
    pent = polygon_boundary(5)
    assert full_subcomplex(pent, V([1, 2, 4])).facets == (V([1, 2]), V([4]))
    assert full_subcomplex(pent, V([2, 4])).facets == (V([2]), V([4]))
    empty = full_subcomplex(pent, 0)
    assert empty.facets == () and empty.simplices == {0}


def test_components_examples():
    pent = polygon_boundary(5)
    assert components(full_subcomplex(pent, V([1, 3, 4]))) == [V([1]), V([3, 4])]
    assert components(pent) == [V([1, 2, 3, 4, 5])]
    assert components(full_subcomplex(pent, V([2, 4]))) == [V([2]), V([4])]


def test_polygon_boundary():
    assert polygon_boundary(4).facets == tuple(sorted(V(e) for e in [(1, 2), (2, 3), (3, 4), (1, 4)]))
    assert polygon_boundary(3) == simplex_boundary(2)
    with pytest.raises(InvalidPolygon):
        polygon_boundary(2)


def test_simplex_boundary():
    assert simplex_boundary(1).facets == (V([1]), V([2]))
    tet = simplex_boundary(3)
    assert tet.m == 4 and len(tet.facets) == 4
    assert all(f.bit_count() == 3 for f in tet.facets)
    with pytest.raises(InvalidDimension):
        simplex_boundary(0)


def test_ghost_vertices_allowed():
    c = from_facets(4, [[1, 2]])
    assert c.vertices == V([1, 2])
    assert V([3]) not in c


def test_json_roundtrip():
    c = polygon_boundary(5)
    assert Complex.from_json(c.to_json()) == c
    assert Complex.from_json('{"m": 3, "facets": [[1, 2], [2, 3]]}').facets == (V([1, 2]), V([2, 3]))
    for bad in ('[]', '{"m": 3}', '{"m": "3", "facets": []}', '{"m": 3, "facets": [1, 2]}'):
        with pytest.raises(InvalidComplex):
            Complex.from_json(bad)


@given(complexes(), st.data())
def test_full_subcomplex_of_full_subcomplex(c, data):
    J = data.draw(st.integers(0, (1 << c.m) - 1))
    I = data.draw(st.sampled_from(list(submasks(J))))
    assert full_subcomplex(full_subcomplex(c, J), I) == full_subcomplex(c, I)


@given(complexes(), st.data())
def test_downward_closure(c, data):
    s = data.draw(st.integers(0, (1 << c.m) - 1))
    if contains(c, s):
        assert all(contains(c, t) for t in submasks(s))
    assert contains(c, s) == (s in c)


@given(complexes())
def test_components_partition_vertices(c):
    comps = components(c)
    union = 0
    for comp in comps:
        assert union & comp == 0
        union |= comp
    assert union == c.vertices
    assert [comp & -comp for comp in comps] == sorted(comp & -comp for comp in comps)


@pytest.mark.parametrize("n", range(3, 9))
def test_polygon_components_are_arcs(n):
    pol = polygon_boundary(n)
    for I in range(1 << n):
        got = {frozenset(members(x)) for x in components(full_subcomplex(pol, I))}
        assert got == set(circular_arcs(n, members(I)))
