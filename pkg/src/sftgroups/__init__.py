"""Self-similar groups of finite type over a finite alphabet.

The group G_P is the set of tree automorphisms all of whose depth-d
sections lie in a fixed pattern group P <= Aut X^[d].  The package
decides whether G_P is trivial, finite, level-transitive and
(topologically) finitely generated, and reproduces the binary census at
depths 2 and 3 together with the depth-4 catalog P_ijk.
"""

from . import perm
from .tree import LEX, REVERSED, DomainError, StructureError, TreeAutomorphism
from .permgroup import PermutationGroup, all_subgroups, fingerprint, brute_force_isomorphic
from .pattern import (
    ConsistencyError,
    PatternGraph,
    PatternGroup,
    PreconditionError,
    RestrictionTower,
    hausdorff_dimension,
    is_minimal,
    level_stabilizer_restriction,
    minimize,
    restriction_group,
    restriction_order,
)
from .criteria import (
    ClassificationRecord,
    Tag,
    Verdict,
    abelian_shortcut,
    is_finite,
    level_transitivity,
    nilpotent_wreath_shortcut,
    prop_not_fg,
    thm_fg,
)
from .classify import (
    CensusReport,
    UnsupportedScaleError,
    catalog_group,
    census,
    classify_many,
    depth4_catalog,
    enumerate_minimal,
    grigorchuk_check,
    verify_depth4,
)

# bound last: the submodule import above would otherwise shadow the function
from .criteria import classify  # noqa: E402

__version__ = "0.1.0"
