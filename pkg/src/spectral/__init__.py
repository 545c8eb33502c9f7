from .operator import (
    SectionSets,
    OperatorM,
    build_sections,
    apply_M,
    sum_space_inner,
    min_eigenvalue_H,
)
from .certificate import (
    CoercivitySample,
    CoercivityReport,
    coercivity_certificate,
    section_margin,
    variance_coercivity_ratio,
)

__all__ = [
    "SectionSets",
    "OperatorM",
    "build_sections",
    "apply_M",
    "sum_space_inner",
    "min_eigenvalue_H",
    "CoercivitySample",
    "CoercivityReport",
    "coercivity_certificate",
    "section_margin",
    "variance_coercivity_ratio",
]
