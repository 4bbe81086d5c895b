from widgets.suspension.presentations import GroupPresentation, abelianize, surface_pi1
from widgets.suspension.rules import (
    FramingIndex,
    IndexLike,
    SuspensionResult,
    as_index,
    is_homology_sphere,
    is_homology_sphere_graded,
    is_sigma_stable,
    suspend,
    suspend_traced,
    suspension_cohomology,
    suspension_homology,
    suspension_w2,
)

__all__ = [
    "FramingIndex",
    "GroupPresentation",
    "IndexLike",
    "SuspensionResult",
    "abelianize",
    "as_index",
    "is_homology_sphere",
    "is_homology_sphere_graded",
    "is_sigma_stable",
    "surface_pi1",
    "suspend",
    "suspend_traced",
    "suspension_cohomology",
    "suspension_homology",
    "suspension_w2",
]
