"""Integral cohomology rings of real moment-angle complexes ``Z_K(D^1, S^0)``."""

from .cohomology import (
    BettiProfile,
    CohomologyBasis,
    CohomologyClass,
    basis_for,
    betti_profile,
    cohomology,
    rebase,
)
from .cup import (
    RingTable,
    SignedGenerator,
    chain_product,
    class_product,
    cocycle_product,
    ring_table,
    unit_class,
)
from .koszul import Cochain, GradedBlock, KoszulGenerator, block, coboundary, sign_of_insertion, total_complex
from .linalg import IntMatrix, SNFResult, smith_normal_form
from .simplicial import (
    Complex,
    components,
    contains,
    from_facets,
    full_subcomplex,
    members,
    polygon_boundary,
    simplex_boundary,
    vertex_set,
)

__version__ = "0.1.0"
