"""The cochain complex ``C_K``: one block ``C(K_I)`` per subset ``I`` of ``[m]``.

A generator of block ``I`` is a simplex ``sigma`` of the full subcomplex
``K_I``. As a tensor word it has ``s_i`` at ``i in sigma``, ``t_i`` at
``i in I - sigma`` and the unit at ``i`` outside ``I``; its degree is
``|sigma|``. The differential turns one ``t_v`` into ``s_v`` and picks up a
sign for every ``s`` to the left of position ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, NamedTuple

from .errors import InvalidInsertion, Mismatch
from .simplicial import Complex, VertexSet, full_mask, members

Triple = tuple[int, int, int]


class KoszulGenerator(NamedTuple):
    I: VertexSet
    sigma: VertexSet

    @property
    def degree(self) -> int:
        return self.sigma.bit_count()

    def word(self, m: int) -> str:
        """Factor word such as ``"s t 1 t"``, for debugging."""
        out = []
        for i in range(m):
            bit = 1 << i
            out.append("s" if self.sigma & bit else "t" if self.I & bit else "1")
        return " ".join(out)


def sign_of_insertion(sigma: VertexSet, v: int) -> int:
    """``(-1)`` to the number of elements of ``sigma`` below vertex ``v``."""
    bit = 1 << (v - 1)
    if sigma & bit:
        raise InvalidInsertion(f"vertex {v} already in {list(members(sigma))}")
    return -1 if (sigma & (bit - 1)).bit_count() & 1 else 1


@dataclass(frozen=True)
class GradedBlock:
    """Generators and differentials of one block ``C(K_I)``.

    ``diff[d]`` holds the matrix of ``C^d -> C^{d+1}`` as ``(row, col, value)``
    triples, rows indexing ``gens[d + 1]`` and columns ``gens[d]``.
    """

    I: VertexSet
    gens: tuple[tuple[VertexSet, ...], ...]
    diff: tuple[tuple[Triple, ...], ...]
    index: tuple[dict[VertexSet, int], ...] = field(repr=False, compare=False)

    @property
    def top_degree(self) -> int:
        return len(self.gens) - 1

    def generators(self, d: int) -> tuple[VertexSet, ...]:
        return self.gens[d] if 0 <= d < len(self.gens) else ()

    def rank(self, d: int) -> int:
        return len(self.generators(d))

    def matrix(self, d: int) -> list[list[int]]:
        """Dense matrix of the differential out of degree ``d``."""
        rows, cols = self.rank(d + 1), self.rank(d)
        dense = [[0] * cols for _ in range(rows)]
        if 0 <= d < len(self.diff):
            for r, c, v in self.diff[d]:
                dense[r][c] = v
        return dense

    def to_json(self) -> dict:
        return {
            "I": list(members(self.I)),
            "degrees": {str(d): [list(members(s)) for s in g] for d, g in enumerate(self.gens)},
            "matrices": {str(d): [list(t) for t in m] for d, m in enumerate(self.diff)},
        }


@lru_cache(maxsize=8192)
def block(c: Complex, I: VertexSet) -> GradedBlock:
    """Build block ``C(K_I)``; cached per ``(complex, I)`` since it is immutable."""
    if I & ~full_mask(c.m):
        raise Mismatch(f"block label {list(members(I))} not inside [{c.m}]")
    simplices = sorted(s for s in c.simplices if s & ~I == 0)
    top = max(s.bit_count() for s in simplices)
    by_degree: list[list[VertexSet]] = [[] for _ in range(top + 1)]
    for s in simplices:
        by_degree[s.bit_count()].append(s)
    gens = tuple(tuple(g) for g in by_degree)
    index = tuple({s: k for k, s in enumerate(g)} for g in gens)

    diff = []
    for d in range(top + 1):
        upper = index[d + 1] if d + 1 <= top else {}
        triples = []
        for col, sigma in enumerate(gens[d]):
            free = I & ~sigma
            while free:
                bit = free & -free
                free ^= bit
                row = upper.get(sigma | bit)
                if row is not None:
                    sign = -1 if (sigma & (bit - 1)).bit_count() & 1 else 1
                    triples.append((row, col, sign))
        diff.append(tuple(sorted(triples)))
    return GradedBlock(I, gens, tuple(diff), index)


def total_complex(c: Complex) -> Iterator[GradedBlock]:
    """All ``2**m`` blocks in increasing order of the block label."""
    for I in range(1 << c.m):
        yield block(c, I)


@dataclass(frozen=True)
class Cochain:
    """A homogeneous cochain in one block: ``{sigma: coefficient}``, no zeros."""

    I: VertexSet
    degree: int
    terms: dict[VertexSet, int]

    @classmethod
    def from_vector(cls, b: GradedBlock, d: int, vec) -> "Cochain":
        return cls(b.I, d, {s: x for s, x in zip(b.generators(d), vec) if x})

    def vector(self, b: GradedBlock) -> list[int]:
        if b.I != self.I:
            raise Mismatch("cochain and block have different labels")
        idx = b.index[self.degree] if self.degree < len(b.index) else {}
        vec = [0] * len(idx)
        for s, x in self.terms.items():
            try:
                vec[idx[s]] = x
            except KeyError:
                raise Mismatch(f"{list(members(s))} is not a generator of this block") from None
        return vec

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "Cochain") -> "Cochain":
        if (self.I, self.degree) != (other.I, other.degree):
            raise Mismatch("cannot add cochains from different blocks or degrees")
        out = dict(self.terms)
        for s, x in other.terms.items():
            out[s] = out.get(s, 0) + x
        return Cochain(self.I, self.degree, {s: x for s, x in out.items() if x})

    def scale(self, k: int) -> "Cochain":
        return Cochain(self.I, self.degree, {s: k * x for s, x in self.terms.items() if k * x})

    def to_json(self) -> list:
        return [[x, list(members(s))] for s, x in sorted(self.terms.items())]


def coboundary(c: Complex, x: Cochain) -> Cochain:
    """Apply the block differential to ``x``."""
    simplices = c.simplices
    out: dict[VertexSet, int] = {}
    for sigma, coef in x.terms.items():
        free = x.I & ~sigma
        while free:
            bit = free & -free
            free ^= bit
            tau = sigma | bit
            if tau in simplices:
                sign = -1 if (sigma & (bit - 1)).bit_count() & 1 else 1
                out[tau] = out.get(tau, 0) + sign * coef
    return Cochain(x.I, x.degree + 1, {s: v for s, v in out.items() if v})
