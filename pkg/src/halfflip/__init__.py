"""Verification and search tools for words avoiding half-flips.

A half-flip of period ``p`` is a pair of factors ``uv`` and ``vu`` with
``|u| = |v| = p``.
"""

from .detect import (
    HalfFlipWitness,
    find_half_flip_brute,
    find_half_flip_fast,
    infinite_halfflip_check,
    swap_halves,
)
from .factors import (
    FactorSet,
    OffsetProfile,
    ResourceCapExceeded,
    factor_set_descent,
    factor_set_exact,
    image_factor_set,
    offset_profile,
    two_letter_factors,
)
from .proof import CheckReport, descend_witness, verify_theorem
from .search import SearchResult, backtrack_longest, extension_safe
from .words import (
    C,
    F2,
    F3,
    M,
    M_SPEC,
    FixedPointSpec,
    UniformMorphism,
    Word,
    apply_morphism,
    fixed_point_prefix,
    validate_morphism,
)

__version__ = "0.1.0"
