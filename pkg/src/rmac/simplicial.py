"""Finite abstract simplicial complexes on the ground set ``[m] = {1, ..., m}``.

Vertex sets are plain ``int`` bitmasks: vertex ``i`` lives in bit ``i - 1``.
Union, intersection and difference are then ``|``, ``&`` and ``& ~``, and
sorting masks numerically is the colexicographic order on subsets.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import InvalidComplex, InvalidDimension, InvalidPolygon, InvalidVertex, TooLarge

MAX_VERTICES = 63

VertexSet = int


def vertex_set(vertices: Iterable[int]) -> VertexSet:
    """Pack 1-indexed vertex labels into a bitmask."""
    mask = 0
    for v in vertices:
        if v < 1:
            raise InvalidVertex(f"vertex labels start at 1, got {v}")
        mask |= 1 << (v - 1)
    return mask


def members(mask: VertexSet) -> tuple[int, ...]:
    """Vertices of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def full_mask(m: int) -> VertexSet:
    return (1 << m) - 1


def submasks(mask: VertexSet) -> Iterator[VertexSet]:
    """All subsets of ``mask``, including ``0`` and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _maximal(masks: Iterable[VertexSet]) -> tuple[VertexSet, ...]:
    """Drop duplicates, the empty set, and anything contained in another mask."""
    uniq = sorted({s for s in masks if s}, key=lambda s: (-s.bit_count(), s))
    kept: list[VertexSet] = []
    for s in uniq:
        if not any(s & ~k == 0 for k in kept):
            kept.append(s)
    return tuple(sorted(kept))


@dataclass(frozen=True)
class Complex:
    """A simplicial complex on ``[m]``, stored by its facets.

    ``facets`` is canonical: sorted, no duplicates, no facet inside another.
    The complex ``{emptyset}`` has no facets. Vertices ``i`` with ``{i}``
    not a simplex (ghost vertices) are allowed.
    """

    m: int
    facets: tuple[VertexSet, ...]

    @cached_property
    def simplices(self) -> frozenset[VertexSet]:
        out = {0}
        for f in self.facets:
            out.update(submasks(f))
        return frozenset(out)

    @cached_property
    def vertices(self) -> VertexSet:
        """Mask of supported (non-ghost) vertices."""
        v = 0
        for f in self.facets:
            v |= f
        return v

    @property
    def dimension(self) -> int:
        return max((f.bit_count() for f in self.facets), default=0) - 1

    def __contains__(self, s: VertexSet) -> bool:
        return s in self.simplices

    def to_json(self) -> dict:
        return {"m": self.m, "facets": [list(members(f)) for f in self.facets]}

    @classmethod
    def from_json(cls, data: dict | str) -> "Complex":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict) or "m" not in data or "facets" not in data:
            raise InvalidComplex('complex JSON must look like {"m": int, "facets": [[...], ...]}')
        m, facets = data["m"], data["facets"]
        if not isinstance(m, int) or isinstance(m, bool):
            raise InvalidComplex("'m' must be an integer")
        if not isinstance(facets, list) or not all(
            isinstance(f, list) and all(isinstance(v, int) and not isinstance(v, bool) for v in f)
            for f in facets
        ):
            raise InvalidComplex("'facets' must be a list of integer lists")
        return from_facets(m, facets)


def from_facets(m: int, facets: Iterable[VertexSet | Iterable[int]]) -> Complex:
    """Build the complex generated by ``facets``.

    Facets may be given as bitmasks or as iterables of 1-indexed labels.
    Non-maximal and repeated entries are absorbed.
    """
    if m > MAX_VERTICES:
        raise TooLarge(f"at most {MAX_VERTICES} vertices supported, got m={m}")
    if m < 1:
        raise InvalidVertex(f"m must be at least 1, got {m}")
    masks = [f if isinstance(f, int) else vertex_set(f) for f in facets]
    ground = full_mask(m)
    for f in masks:
        if f < 0 or f & ~ground:
            raise InvalidVertex(f"facet {list(members(f))} not contained in [{m}]")
    return Complex(m, _maximal(masks))


def contains(c: Complex, s: VertexSet) -> bool:
    """True iff ``s`` is a simplex of ``c``."""
    return any(s & ~f == 0 for f in c.facets) or s == 0


def full_subcomplex(c: Complex, vertices: VertexSet) -> Complex:
    """Restriction of ``c`` to ``vertices``; labels are kept, ``m`` unchanged."""
    return Complex(c.m, _maximal(f & vertices for f in c.facets))


def components(c: Complex) -> list[VertexSet]:
    """Connected components of the supported vertices, ordered by least vertex."""
    comps: list[VertexSet] = []
    for f in c.facets:
        merged = f
        rest = []
        for comp in comps:
            if comp & merged:
                merged |= comp
            else:
                rest.append(comp)
        comps = rest + [merged]
    return sorted(comps, key=lambda s: s & -s)


def polygon_boundary(n: int) -> Complex:
    """Boundary of the ``n``-gon: edges ``{i, i+1}`` and ``{1, n}``."""
    if n < 3:
        raise InvalidPolygon(f"a polygon needs at least 3 vertices, got {n}")
    edges = [vertex_set((i, i + 1)) for i in range(1, n)] + [vertex_set((1, n))]
    return from_facets(n, edges)


def simplex_boundary(m: int) -> Complex:
    """Boundary of the ``m``-simplex on ``[m + 1]``."""
    if m < 1:
        raise InvalidDimension(f"simplex dimension must be at least 1, got {m}")
    ground = full_mask(m + 1)
    return from_facets(m + 1, [ground & ~(1 << i) for i in range(m + 1)])
