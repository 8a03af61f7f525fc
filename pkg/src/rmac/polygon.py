"""Closed-form description of the ring for ``K`` the boundary of an ``n``-gon.

A subset ``I`` of ``[n]`` splits into maximal circular runs (arcs); these are
the components of ``K_I``. Each arc sum ``sum_{i in arc} y^I_{i}`` is a
degree-1 cocycle, and the arc sums of ``I`` satisfy the single relation that
their total is ``d(y^I_empty)``. The predicted product of two arc classes is
``+-gamma`` exactly when neither arc contains the other and their union is a
single proper arc. :func:`verify` checks all of this against the general
engine.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .cohomology import CohomologyBasis, basis_for, betti_profile, rebase
from .cup import cochain_product
from .errors import Mismatch, OutOfRange
from .koszul import Cochain, block, coboundary
from .linalg import determinant
from .simplicial import Complex, VertexSet, full_mask, members, polygon_boundary


@dataclass(frozen=True)
class ArcDecomposition:
    n: int
    I: VertexSet
    arcs: tuple[VertexSet, ...]

    @property
    def p(self) -> int:
        return len(self.arcs)


def arcs(n: int, I: VertexSet) -> ArcDecomposition:
    """Maximal runs of ``I`` under circular adjacency ``i ~ i + 1 (mod n)``."""
    full = full_mask(n)
    if I & ~full:
        raise Mismatch(f"{list(members(I))} is not a subset of [{n}]")
    if I in (0, full):
        return ArcDecomposition(n, I, (I,) if I else ())
    # an arc starts at v in I whose predecessor is not in I
    preds_missing = ~(((I << 1) | (I >> (n - 1))) & full)
    starts = I & preds_missing
    out = []
    while starts:
        low = starts & -starts
        starts ^= low
        run, v = 0, low
        while v & I and not v & run:
            run |= v
            v = ((v << 1) | (v >> (n - 1))) & full
        out.append(run)
    return ArcDecomposition(n, I, tuple(sorted(out, key=lambda s: s & -s)))


def is_contractible_arc(n: int, S: VertexSet) -> bool:
    """``K_S`` of the ``n``-gon is contractible iff ``S`` is one proper arc."""
    return S != 0 and S != full_mask(n) and arcs(n, S).p == 1


def genus(n: int) -> int:
    """Genus of the surface over the ``n``-gon, ``1 + (n - 4) * 2**(n - 3)``."""
    if n < 4:
        raise OutOfRange(f"genus formula needs n >= 4, got {n}")
    return 1 + (n - 4) * 2 ** (n - 3)


@dataclass(frozen=True)
class CombinatorialGenerator:
    n: int
    I: VertexSet
    arc: VertexSet
    degree: int
    rep: Cochain = field(compare=False, repr=False)

    def to_json(self) -> dict:
        return {
            "block": list(members(self.I)),
            "arc": list(members(self.arc)),
            "degree": self.degree,
        }


def arc_sum(I: VertexSet, arc: VertexSet) -> Cochain:
    return Cochain(I, 1, {1 << (v - 1): 1 for v in members(arc)})


def dropped_arc(dec: ArcDecomposition) -> VertexSet:
    """The arc left out of the basis: the one holding the least element of ``I``."""
    low = dec.I & -dec.I
    return next(a for a in dec.arcs if a & low)


def gamma(n: int) -> CombinatorialGenerator:
    """Top class of block ``[n]``, represented by ``y_{1,2}``."""
    full = full_mask(n)
    return CombinatorialGenerator(n, full, full, 2, Cochain(full, 2, {0b11: 1}))


def combinatorial_generators(n: int) -> list[CombinatorialGenerator]:
    """Degree-1 arc generators over every ``I`` with two or more arcs, then gamma."""
    if n < 3:
        raise OutOfRange(f"polygon needs n >= 3, got {n}")
    gens = []
    for I in range(1, 1 << n):
        dec = arcs(n, I)
        if dec.p < 2:
            continue
        drop = dropped_arc(dec)
        for a in dec.arcs:
            if a != drop:
                gens.append(CombinatorialGenerator(n, I, a, 1, arc_sum(I, a)))
    gens.append(gamma(n))
    return gens


class Prediction(enum.Enum):
    ZERO = "zero"
    PLUS_MINUS_GAMMA = "plus_minus_gamma"


def predicted_product(g: CombinatorialGenerator, h: CombinatorialGenerator) -> Prediction:
    if g.n != h.n:
        raise Mismatch("generators come from polygons of different sizes")
    if g.degree != 1 or h.degree != 1:
        raise Mismatch("prediction is only defined for degree-1 generators")
    n = g.n
    if g.I | h.I != full_mask(n):
        return Prediction.ZERO
    a, b = g.arc, h.arc
    if a & ~b and b & ~a and is_contractible_arc(n, a | b):
        return Prediction.PLUS_MINUS_GAMMA
    return Prediction.ZERO


def gamma_basis(n: int, c: Complex | None = None) -> CohomologyBasis:
    """``H^2`` of block ``[n]`` with gamma as its basis vector."""
    c = c or polygon_boundary(n)
    full = full_mask(n)
    g = gamma(n)
    return rebase(basis_for(c, full, 2), [g.rep.vector(block(c, full))])


def arc_product(c: Complex, g: CombinatorialGenerator, h: CombinatorialGenerator,
                top: CohomologyBasis) -> int:
    """Brute-force product of two degree-1 generators as a multiple of gamma.

    Returns 0 for a product landing in a block other than ``[n]`` after
    checking that it is null-cohomologous there.
    """
    prod = cochain_product(c, g.rep, h.rep)
    if prod.I == top.I:
        return top.project(prod.vector(block(c, prod.I)))[0]
    if not prod:
        return 0
    target = basis_for(c, prod.I, prod.degree)
    coords = target.project(prod.vector(block(c, prod.I)))
    if any(coords):
        raise Mismatch("non-zero product outside the top block")
    return 0


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    skipped: bool = False

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "detail": self.detail}
        if self.skipped:
            out["skipped"] = True
        return out


@dataclass
class VerificationReport:
    n: int
    checks: list[Check]
    ranks: tuple[int, ...]
    generators: list[CombinatorialGenerator]
    pairing: list[list[int]]
    witnesses: list[tuple[VertexSet, VertexSet]]
    mismatches: list[dict]
    counts: dict

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def to_json(self, with_matrix: bool = True) -> dict:
        out = {
            "n": self.n,
            "passed": self.passed,
            "ranks": list(self.ranks),
            "checks": [c.to_json() for c in self.checks],
            "counts": self.counts,
            "witnesses": [
                {"I": list(members(I)), "J": list(members(J))} for I, J in self.witnesses
            ],
            "mismatches": self.mismatches,
        }
        if with_matrix:
            out["pairing"] = {
                "generators": [g.to_json() for g in self.generators],
                "matrix": self.pairing,
            }
        return out


MAX_VERIFY_N = 12
MAX_WITNESSES = 64


def _signature(n: int, I: VertexSet) -> str:
    return "+".join(str(s) for s in sorted(a.bit_count() for a in arcs(n, I).arcs))


def verify(n: int) -> VerificationReport:
    """Recompute the ring of the ``n``-gon by brute force and compare."""
    if not 3 <= n <= MAX_VERIFY_N:
        raise OutOfRange(f"verify supports 3 <= n <= {MAX_VERIFY_N}, got {n}")
    c = polygon_boundary(n)
    full = full_mask(n)
    checks: list[Check] = []
    mismatches: list[dict] = []

    profile = betti_profile(c)
    expected = (1, 2 * genus(n), 1) if n >= 4 else (1, 0, 1)
    ok = profile.ranks == expected and not any(profile.torsion)
    checks.append(Check("betti", ok, f"ranks {list(profile.ranks)}, expected {list(expected)}"))

    all_gens = combinatorial_generators(n)
    deg1 = [g for g in all_gens if g.degree == 1]
    checks.append(Check(
        "generator_count", len(deg1) == expected[1],
        f"{len(deg1)} degree-1 generators, expected {expected[1]}",
    ))

    bad_reps = [g for g in all_gens if coboundary(c, g.rep)]
    try:
        top = gamma_basis(n, c)
        gamma_ok = True
    except ValueError:
        gamma_ok = False
    checks.append(Check(
        "cocycle_reps", not bad_reps and gamma_ok,
        f"{len(bad_reps)} non-cocycle representatives; gamma generates H^2: {gamma_ok}",
    ))
    if not gamma_ok:
        return VerificationReport(n, checks, profile.ranks, deg1, [], [], mismatches, {})

    bad_relations = 0
    for I in range(1, 1 << n):
        dec = arcs(n, I)
        if dec.p < 2:
            continue
        basis = basis_for(c, I, 1)
        b = block(c, I)
        coords = [basis.project(arc_sum(I, a).vector(b)) for a in dec.arcs]
        total = [sum(col) for col in zip(*coords)]
        kept = [co for a, co in zip(dec.arcs, coords) if a != dropped_arc(dec)]
        if any(total) or basis.free_rank != dec.p - 1 or abs(determinant(kept)) != 1:
            bad_relations += 1
    checks.append(Check(
        "arc_relations", bad_relations == 0,
        f"{bad_relations} subsets whose arc classes fail rank p-1 with the single relation",
    ))

    size = len(deg1)
    pairing = [[0] * size for _ in range(size)]
    on_target = off_target = rule_bad = off_bad = 0
    signs = {"+1": 0, "-1": 0}
    by_signature: dict[str, int] = {}
    witnesses: list[tuple[VertexSet, VertexSet]] = []
    for i, g in enumerate(deg1):
        for j, h in enumerate(deg1):
            if g.I | h.I == full:
                on_target += 1
                value = arc_product(c, g, h, top)
                pairing[i][j] = value
                predicted = predicted_product(g, h) is Prediction.PLUS_MINUS_GAMMA
                if value not in (-1, 0, 1) or bool(value) != predicted:
                    rule_bad += 1
                    mismatches.append({
                        "I": list(members(g.I)), "arc_I": list(members(g.arc)),
                        "J": list(members(h.I)), "arc_J": list(members(h.arc)),
                        "product": value, "predicted": "+-gamma" if predicted else "0",
                    })
                if value:
                    signs["+1" if value > 0 else "-1"] += 1
                    key = f"{_signature(n, g.I)} x {_signature(n, h.I)}"
                    by_signature[key] = by_signature.get(key, 0) + 1
                    if g.I & h.I and len(witnesses) < MAX_WITNESSES:
                        witnesses.append((g.I, h.I))
            else:
                off_target += 1
                try:
                    value = arc_product(c, g, h, top)
                except Mismatch:
                    value = None
                if value != 0:
                    off_bad += 1
                    mismatches.append({
                        "I": list(members(g.I)), "J": list(members(h.I)),
                        "product": "non-zero", "predicted": "0",
                    })
    checks.append(Check(
        "product_rule", rule_bad == 0,
        f"{on_target} pairs with I|J = [n], {rule_bad} disagree with the prediction",
    ))
    checks.append(Check(
        "off_target_zero", off_bad == 0,
        f"{off_target} pairs with I|J != [n], {off_bad} non-zero",
    ))

    skew = all(pairing[i][j] == -pairing[j][i] for i in range(size) for j in range(size))
    checks.append(Check("pairing_skew", skew, "degree-1 pairing is skew-symmetric" if skew else "not skew"))
    det = determinant(pairing)
    checks.append(Check("pairing_unimodular", abs(det) == 1, f"determinant {det}"))

    if n >= 5:
        checks.append(Check(
            "non_symplectic", bool(witnesses),
            f"{len(witnesses)} non-zero products between generators with overlapping blocks"
            + (" (list truncated)" if len(witnesses) == MAX_WITNESSES else ""),
        ))
    else:
        checks.append(Check(
            "non_symplectic", True,
            "not applicable: for n <= 4 the pairing is already in standard symplectic form",
            skipped=True,
        ))

    counts = {
        "generators_degree_1": size,
        "pairs_on_target": on_target,
        "pairs_off_target": off_target,
        "nonzero_products": signs["+1"] + signs["-1"],
        "realized_signs": signs,
        "nonzero_by_arc_sizes": dict(sorted(by_signature.items())),
    }
    return VerificationReport(n, checks, profile.ranks, deg1, pairing, witnesses, mismatches, counts)

