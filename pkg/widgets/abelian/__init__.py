from widgets.abelian.groups import (
    FgAbGroup,
    GradedGroup,
    IntPolynomial,
    direct_sum,
    graded_sum,
    poincare_polynomial,
    shift,
)
from widgets.abelian.matrix import (
    IntMatrix,
    cokernel,
    elementary_divisors,
    kernel_rank,
    rank,
    smith_normal_form,
)

__all__ = [
    "FgAbGroup",
    "GradedGroup",
    "IntMatrix",
    "IntPolynomial",
    "cokernel",
    "direct_sum",
    "elementary_divisors",
    "graded_sum",
    "kernel_rank",
    "poincare_polynomial",
    "rank",
    "shift",
    "smith_normal_form",
]
