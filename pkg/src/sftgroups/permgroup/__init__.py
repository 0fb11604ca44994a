"""Finite permutation groups: stabilizer chains, subgroups, invariants."""

from .chain import LayerChain, StabChain
from .fingerprint import (
    Fingerprint,
    abelian_invariants,
    brute_force_isomorphic,
    conjugacy_class_sizes,
    fingerprint,
)
from .group import BlockError, PermutationGroup, ResourceError
from .subgroups import all_subgroups

__all__ = [
    "BlockError",
    "Fingerprint",
    "LayerChain",
    "PermutationGroup",
    "ResourceError",
    "StabChain",
    "abelian_invariants",
    "all_subgroups",
    "brute_force_isomorphic",
    "conjugacy_class_sizes",
    "fingerprint",
]
