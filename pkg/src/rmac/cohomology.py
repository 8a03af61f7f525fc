"""Integral cohomology of the blocks of ``C_K`` and of the whole complex.

For a block and a degree ``d`` with incoming differential ``A`` and outgoing
differential ``B``, write ``U A V = diag(e_1, ..., e_r)``. In the coordinates
``c = U x`` the coboundaries are ``e_i * c_i`` for ``i < r``, and a cocycle
is exactly a vector whose tail ``c[r:]`` lies in the kernel of
``B U^{-1}[:, r:]``. The ``e_i > 1`` give torsion and the kernel of that
restricted map gives the free part.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import InvariantBreach, Mismatch, NotACocycle
from .koszul import Cochain, GradedBlock, block
from .linalg import Matrix, matmul, matvec, smith_normal_form, unimodular_inverse
from .simplicial import Complex, VertexSet, members


def _first_nonzero(vec) -> int:
    return next((x for x in vec if x), 0)


def _reduce_support(rep: list[int], coboundaries: list[list[int]], max_passes: int = 8) -> list[int]:
    """Greedily add +-coboundaries to ``rep`` while that shrinks its support."""
    rep = rep[:]
    size = sum(1 for x in rep if x)
    for _ in range(max_passes):
        improved = False
        for col in coboundaries:
            for sign in (1, -1):
                cand = [r + sign * c for r, c in zip(rep, col)]
                cand_size = sum(1 for x in cand if x)
                if cand_size < size:
                    rep, size, improved = cand, cand_size, True
        if not improved:
            break
    return rep


@dataclass(frozen=True)
class CohomologyBasis:
    """A basis of ``H^d`` of one block, with a projection onto its coordinates.

    Coordinates are ``free_rank`` integers followed by one residue per entry
    of ``torsion``. ``reps`` lists cocycles in the same order.
    """

    I: VertexSet
    degree: int
    free_rank: int
    torsion: tuple[int, ...]
    reps: tuple[tuple[int, ...], ...]
    _outgoing: Matrix = field(repr=False, compare=False)
    _U: Matrix = field(repr=False, compare=False)
    _torsion_rows: tuple[int, ...] = field(repr=False, compare=False)
    _tail_start: int = field(repr=False, compare=False)
    _tail_inverse: Matrix = field(repr=False, compare=False)
    _tail_rank: int = field(repr=False, compare=False)
    _signs: tuple[int, ...] = field(repr=False, compare=False)
    _change: Matrix | None = field(default=None, repr=False, compare=False)

    @property
    def size(self) -> int:
        return self.free_rank + len(self.torsion)

    def is_cocycle(self, x: list[int]) -> bool:
        return not any(matvec(self._outgoing, x))

    def project(self, x: list[int]) -> tuple[int, ...]:
        """Coordinates of the class of cocycle ``x``."""
        if len(x) != len(self._U):
            raise Mismatch(f"expected a vector of length {len(self._U)}, got {len(x)}")
        if not self.is_cocycle(x):
            raise NotACocycle(f"vector is not a cocycle in block {list(members(self.I))}, degree {self.degree}")
        c = matvec(self._U, x)
        tail = matvec(self._tail_inverse, c[self._tail_start:])
        if any(tail[: self._tail_rank]):
            raise InvariantBreach("cocycle check and kernel coordinates disagree")
        free = [s * v for s, v in zip(self._signs, tail[self._tail_rank:])]
        if self._change is not None:
            free = matvec(self._change, free)
        tors = [
            (s * c[row]) % mod
            for s, row, mod in zip(self._signs[self.free_rank:], self._torsion_rows, self.torsion)
        ]
        return tuple(free) + tuple(tors)

    def rep_cochain(self, coords) -> list[int]:
        """A cocycle vector representing the class with the given coordinates."""
        n = len(self._U)
        out = [0] * n
        for k, rep in zip(coords, self.reps):
            if k:
                for i, v in enumerate(rep):
                    if v:
                        out[i] += k * v
        return out


def cohomology(b: GradedBlock, d: int) -> CohomologyBasis:
    """Free rank, torsion, representatives and projection for ``H^d`` of ``b``."""
    n_prev, n_here, n_next = b.rank(d - 1), b.rank(d), b.rank(d + 1)
    incoming = b.matrix(d - 1) if d > 0 else [[] for _ in range(n_here)]
    outgoing = b.matrix(d) if n_next else []

    snf = smith_normal_form(incoming, n_prev)
    r = snf.rank
    factors = snf.invariant_factors
    U, U_inv = snf.U, snf.U_inv

    # kernel of outgoing restricted to the complement of the coboundary span
    tail_cols = [[row[j] for j in range(r, n_here)] for row in U_inv]
    restricted = matmul(outgoing, tail_cols, n_here) if outgoing else []
    snf2 = smith_normal_form(restricted, n_here - r)
    r2 = snf2.rank
    kernel = [[snf2.V[i][j] for i in range(n_here - r)] for j in range(r2, n_here - r)]

    coboundaries = [[row[j] for row in incoming] for j in range(n_prev)]
    coboundaries = [col for col in coboundaries if any(col)]

    free_reps = []
    for k in kernel:
        rep = [sum(tail_cols[i][j] * k[j] for j in range(len(k)) if k[j]) for i in range(n_here)]
        free_reps.append(_reduce_support(rep, coboundaries))
    torsion_rows = tuple(i for i in range(r) if factors[i] > 1)
    torsion_reps = [[U_inv[row][i] for row in range(n_here)] for i in torsion_rows]
    torsion_reps = [_reduce_support(rep, coboundaries) for rep in torsion_reps]

    reps = free_reps + torsion_reps
    signs = tuple(1 if _first_nonzero(rep) > 0 else -1 for rep in reps)
    reps = [[s * x for x in rep] for s, rep in zip(signs, reps)]
    torsion = tuple(factors[i] for i in torsion_rows)

    return CohomologyBasis(
        I=b.I,
        degree=d,
        free_rank=len(free_reps),
        torsion=torsion,
        reps=tuple(tuple(rep) for rep in reps),
        _outgoing=outgoing,
        _U=U,
        _torsion_rows=torsion_rows,
        _tail_start=r,
        _tail_inverse=snf2.V_inv,
        _tail_rank=r2,
        _signs=signs,
    )


def rebase(basis: CohomologyBasis, reps: list[list[int]]) -> CohomologyBasis:
    """Same group with a caller-chosen free basis (torsion-free blocks only).

    Raises ``ValueError`` unless ``reps`` are cocycles whose classes form a
    basis of ``H^d``.
    """
    if basis.torsion:
        raise ValueError("rebase only supports torsion-free cohomology")
    if len(reps) != basis.free_rank:
        raise ValueError(f"need {basis.free_rank} representatives, got {len(reps)}")
    k = basis.free_rank
    # row j of P holds the old coordinates of the new rep j
    P = [list(basis.project(list(rep))) for rep in reps]
    change = unimodular_inverse([[P[j][i] for j in range(k)] for i in range(k)]) if k else []
    if basis._change is not None:
        change = matmul(change, basis._change, k)
    return CohomologyBasis(
        I=basis.I,
        degree=basis.degree,
        free_rank=k,
        torsion=(),
        reps=tuple(tuple(r) for r in reps),
        _outgoing=basis._outgoing,
        _U=basis._U,
        _torsion_rows=(),
        _tail_start=basis._tail_start,
        _tail_inverse=basis._tail_inverse,
        _tail_rank=basis._tail_rank,
        _signs=basis._signs,
        _change=change,
    )


@lru_cache(maxsize=16384)
def basis_for(c: Complex, I: VertexSet, d: int) -> CohomologyBasis:
    """Cached ``cohomology(block(c, I), d)``."""
    return cohomology(block(c, I), d)


class CohomologyClass:
    """A class in ``H^degree`` of block ``I``, given by basis coordinates."""

    __slots__ = ("I", "degree", "coords")

    def __init__(self, I: VertexSet, degree: int, coords) -> None:
        self.I = I
        self.degree = degree
        self.coords = tuple(coords)

    @classmethod
    def of(cls, basis: CohomologyBasis, coords) -> "CohomologyClass":
        """Build a class reducing torsion coordinates into ``[0, d_i)``."""
        coords = tuple(coords)
        free, tors = coords[: basis.free_rank], coords[basis.free_rank:]
        tors = tuple(t % mod for t, mod in zip(tors, basis.torsion))
        return cls(basis.I, basis.degree, free + tors)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CohomologyClass):
            return NotImplemented
        return (self.I, self.degree, self.coords) == (other.I, other.degree, other.coords)

    def __hash__(self) -> int:
        return hash((self.I, self.degree, self.coords))

    def __repr__(self) -> str:
        return f"CohomologyClass(I={list(members(self.I))}, degree={self.degree}, coords={self.coords})"

    def to_json(self) -> dict:
        return {"block": list(members(self.I)), "degree": self.degree, "coords": list(self.coords)}


def project_cochain(c: Complex, x: Cochain) -> CohomologyClass:
    """Class of a cocycle given as a :class:`Cochain`."""
    basis = basis_for(c, x.I, x.degree)
    return CohomologyClass.of(basis, basis.project(x.vector(block(c, x.I))))


@dataclass(frozen=True)
class BettiProfile:
    """Aggregated ranks and torsion per degree, plus the non-zero blocks."""

    ranks: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    blocks: tuple[tuple[VertexSet, int, int, tuple[int, ...]], ...]

    def to_json(self, with_blocks: bool = False) -> dict:
        out = {
            "degrees": [
                {"degree": d, "rank": r, "torsion": list(t)}
                for d, (r, t) in enumerate(zip(self.ranks, self.torsion))
            ],
            "ranks": list(self.ranks),
            "torsion_free": not any(self.torsion),
        }
        if with_blocks:
            out["blocks"] = [
                {"block": list(members(I)), "degree": d, "rank": r, "torsion": list(t)}
                for I, d, r, t in self.blocks
            ]
        return out


def _block_groups(args: tuple[Complex, VertexSet]) -> list[tuple[VertexSet, int, int, tuple[int, ...]]]:
    c, I = args
    b = block(c, I)
    out = []
    for d in range(b.top_degree + 1):
        h = cohomology(b, d)
        if h.free_rank or h.torsion:
            out.append((I, d, h.free_rank, h.torsion))
    return out


def worker_count() -> int:
    """Worker bound from ``RMAC_THREADS`` (default 1, i.e. serial)."""
    try:
        return max(1, int(os.environ.get("RMAC_THREADS", "1")))
    except ValueError:
        return 1


def betti_profile(c: Complex) -> BettiProfile:
    """Sum the block cohomology groups over all ``I``."""
    jobs = [(c, I) for I in range(1 << c.m)]
    workers = worker_count()
    if workers > 1 and len(jobs) > 64:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_block = list(pool.map(_block_groups, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        per_block = [_block_groups(job) for job in jobs]

    entries = [e for part in per_block for e in part]
    top = max((d for _, d, _, _ in entries), default=0)
    ranks = [0] * (top + 1)
    torsion: list[list[int]] = [[] for _ in range(top + 1)]
    for _, d, r, t in entries:
        ranks[d] += r
        torsion[d].extend(t)
    return BettiProfile(
        ranks=tuple(ranks),
        torsion=tuple(tuple(sorted(t)) for t in torsion),
        blocks=tuple(entries),
    )
