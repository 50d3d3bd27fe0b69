"""rotref: exact computation with rotation groups, reflection catalogs and
their fixed-point subspace arrangements in degree <= 4.

The package verifies, step by step and in exact cyclotomic arithmetic, that
the realified wreath groups G(m,1,2) inside O_4(R) are rotation groups whose
subspace arrangements are contained in no real reflection arrangement once m
is large enough, and it computes an explicit threshold for "large enough".

Layers:

* :mod:`rotref.cyclo`        exact arithmetic in Q(zeta_L)
* :mod:`rotref.linalg`       matrices, kernels, canonical subspaces
* :mod:`rotref.groups`       matrix groups, realification, the catalog
* :mod:`rotref.arrangements` isotropy and reflection arrangements
* :mod:`rotref.verify`       claim checkers and certificates
* :mod:`rotref.cli`          the command-line front end
"""

from rotref.cyclo import (
    CycNum,
    cyclotomic_polynomial,
    embed,
    real_imag_parts,
    zeta_power,
)
from rotref.linalg import (
    MatrixF,
    Subspace,
    kernel,
    subspace_contains,
    subspace_intersect,
    subspace_sum,
)
from rotref.groups import (
    CatalogEntry,
    MatrixGroup,
    catalog_group,
    classify,
    closure,
    direct_sum,
    enumerate_degree4_catalog,
    fixed_space,
    gmpn_generators,
    is_rotation_group,
    pad_trivial,
    realified_gmpn_group,
    realify,
)
from rotref.arrangements import (
    Arrangement,
    PhaseValue,
    arrangement_contains,
    isotropy_arrangement,
    phase_ratio,
    plane_meet_count,
    reflection_arrangement,
    structural_dichotomy_check,
)
from rotref.verify import (
    ThresholdResult,
    VerificationReport,
    compute_threshold,
    verify_dichotomy,
    verify_lemma_AG,
    verify_lemma_plane,
    verify_rotation_group,
    verify_theorem,
)

__all__ = [
    "CycNum", "cyclotomic_polynomial", "zeta_power", "embed", "real_imag_parts",
    "MatrixF", "Subspace", "kernel", "subspace_intersect", "subspace_sum",
    "subspace_contains",
    "MatrixGroup", "CatalogEntry", "closure", "gmpn_generators", "realify",
    "realified_gmpn_group", "fixed_space", "classify", "is_rotation_group",
    "catalog_group", "direct_sum", "pad_trivial", "enumerate_degree4_catalog",
    "Arrangement", "PhaseValue", "isotropy_arrangement", "reflection_arrangement",
    "arrangement_contains", "phase_ratio", "plane_meet_count",
    "structural_dichotomy_check",
    "VerificationReport", "ThresholdResult", "verify_lemma_AG",
    "verify_rotation_group", "verify_lemma_plane", "verify_dichotomy",
    "compute_threshold", "verify_theorem",
]
__version__ = "0.1.0"
