"""Cup products on ``C_K`` and on its cohomology.

Factor-wise, the product of tensor words follows

    s.s = 0    t.t = t    s.t = s    t.s = 0    1.x = x.1 = x

together with the Koszul sign for moving each ``s`` of the right factor past
the ``s``'s of the left factor sitting at larger positions. On generators this
means ``y^I_a . y^J_b`` vanishes unless ``b`` misses ``I`` and ``a | b`` is a
simplex, in which case it is ``+-y^{I|J}_{a|b}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .cohomology import (
    BettiProfile,
    CohomologyBasis,
    CohomologyClass,
    basis_for,
    betti_profile,
    project_cochain,
)
from .errors import InvariantBreach, Mismatch, NotACocycle
from .koszul import Cochain, KoszulGenerator, block, coboundary
from .simplicial import Complex, VertexSet, full_mask, members


class SignedGenerator(NamedTuple):
    coefficient: int
    gen: KoszulGenerator


def _check_generator(c: Complex, g: KoszulGenerator) -> None:
    if g.I & ~full_mask(c.m) or g.sigma & ~g.I or g.sigma not in c.simplices:
        raise Mismatch(f"{g} is not a generator of the given complex")


def interleave_sign(a: VertexSet, b: VertexSet) -> int:
    """``(-1)`` to the number of pairs ``k in a``, ``j in b`` with ``k > j``."""
    count = 0
    while b:
        low = b & -b
        b ^= low
        count += (a & ~((low << 1) - 1)).bit_count()
    return -1 if count & 1 else 1


def chain_product(c: Complex, a: KoszulGenerator, b: KoszulGenerator) -> SignedGenerator | None:
    """Product of two generators, or ``None`` when it vanishes."""
    _check_generator(c, a)
    _check_generator(c, b)
    return _product(c.simplices, a.I, a.sigma, b.I, b.sigma)


def _product(simplices, Ia, sa, Ib, sb) -> SignedGenerator | None:
    if sb & Ia:
        return None
    sigma = sa | sb
    if sigma not in simplices:
        return None
    return SignedGenerator(interleave_sign(sa, sb), KoszulGenerator(Ia | Ib, sigma))


def cochain_product(c: Complex, x: Cochain, y: Cochain) -> Cochain:
    """Bilinear extension of :func:`chain_product` (no cocycle checks)."""
    simplices = c.simplices
    out: dict[VertexSet, int] = {}
    Ia, Ib = x.I, y.I
    for sb, cb in y.terms.items():
        if sb & Ia:
            continue
        for sa, ca in x.terms.items():
            sigma = sa | sb
            if sigma in simplices:
                out[sigma] = out.get(sigma, 0) + interleave_sign(sa, sb) * ca * cb
    return Cochain(Ia | Ib, x.degree + y.degree, {s: v for s, v in out.items() if v})


def cocycle_product(c: Complex, x: Cochain, y: Cochain) -> Cochain:
    """Product of two cocycles; the result is checked to be a cocycle."""
    for name, z in (("left", x), ("right", y)):
        if coboundary(c, z):
            raise NotACocycle(f"{name} factor is not a cocycle")
    out = cochain_product(c, x, y)
    if coboundary(c, out):
        raise InvariantBreach("product of cocycles is not a cocycle")
    return out


def class_rep(c: Complex, alpha: CohomologyClass) -> Cochain:
    b = block(c, alpha.I)
    basis = basis_for(c, alpha.I, alpha.degree)
    return Cochain.from_vector(b, alpha.degree, basis.rep_cochain(alpha.coords))


def class_product(c: Complex, alpha: CohomologyClass, beta: CohomologyClass) -> CohomologyClass:
    """Cup product of two classes, expressed in the basis of block ``I | J``."""
    prod = cocycle_product(c, class_rep(c, alpha), class_rep(c, beta))
    return project_cochain(c, prod)


def unit_class(c: Complex) -> CohomologyClass:
    return CohomologyClass.of(basis_for(c, 0, 0), (1,))


@dataclass(frozen=True)
class BasisEntry:
    """One generator of the ring: the ``position``-th basis class of a block."""

    I: VertexSet
    degree: int
    position: int
    order: int  # 0 for free generators, else the torsion order
    rep: Cochain = field(compare=False)

    def as_class(self, basis: CohomologyBasis) -> CohomologyClass:
        coords = [0] * basis.size
        coords[self.position] = 1
        return CohomologyClass.of(basis, coords)

    def to_json(self) -> dict:
        return {
            "block": list(members(self.I)),
            "degree": self.degree,
            "order": self.order,
            "rep": self.rep.to_json(),
        }


@dataclass
class RingTable:
    """All pairwise products of basis classes; zero products are omitted."""

    basis: list[BasisEntry]
    products: dict[tuple[int, int], CohomologyClass]
    profile: BettiProfile | None = None

    def product(self, i: int, j: int) -> CohomologyClass | None:
        return self.products.get((i, j))

    def to_json(self) -> dict:
        return {
            "basis": [dict(index=k, **e.to_json()) for k, e in enumerate(self.basis)],
            "products": [
                {"i": i, "j": j, **cls.to_json()}
                for (i, j), cls in sorted(self.products.items())
            ],
        }


def _negate(cls: CohomologyClass, basis: CohomologyBasis) -> CohomologyClass:
    return CohomologyClass.of(basis, [-x for x in cls.coords])


def ring_table(c: Complex, commutativity_sample: int = 32) -> RingTable:
    """Multiply every pair of basis classes.

    Products ``(i, j)`` with ``i <= j`` are computed directly; the other half
    comes from graded commutativity, which is first checked directly on up to
    ``commutativity_sample`` pairs with a non-zero product.
    """
    profile = betti_profile(c)
    entries: list[BasisEntry] = []
    for I, d, _, _ in sorted(profile.blocks, key=lambda e: (e[1], e[0])):
        basis = basis_for(c, I, d)
        b = block(c, I)
        for pos, rep in enumerate(basis.reps):
            order = 0 if pos < basis.free_rank else basis.torsion[pos - basis.free_rank]
            entry = BasisEntry(I, d, pos, order, Cochain.from_vector(b, d, rep))
            entries.append(entry)

    products: dict[tuple[int, int], CohomologyClass] = {}
    sampled = 0
    for i, ei in enumerate(entries):
        for j in range(i, len(entries)):
            ej = entries[j]
            cls = project_cochain(c, cocycle_product(c, ei.rep, ej.rep))
            if not cls.is_zero():
                products[(i, j)] = cls
            if i == j:
                continue
            target = basis_for(c, ei.I | ej.I, ei.degree + ej.degree)
            swapped = cls if (ei.degree * ej.degree) % 2 == 0 else _negate(cls, target)
            if not cls.is_zero() and sampled < commutativity_sample:
                direct = project_cochain(c, cocycle_product(c, ej.rep, ei.rep))
                if direct != swapped:
                    raise InvariantBreach(
                        f"graded commutativity fails for basis classes {i} and {j}"
                    )
                sampled += 1
            if not swapped.is_zero():
                products[(j, i)] = swapped
    return RingTable(entries, products, profile)
