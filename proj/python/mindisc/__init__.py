"""Minimum-discrepancy quantisation toolkit.

Python bindings over the C++ core: kernels, star discrepancy, MMD / KSD,
optimal cubature weights, greedy state selection and Stein thinning.
"""

from ._core import (  # noqa: F401
    IllConditionedError,
    KernelSpec,
    SteinKernel,
    Target,
    centered_kernel_eval,
    fill_distance,
    gram,
    greedy_ksd,
    greedy_mmd,
    kernel_cross_div,
    kernel_eval,
    kernel_grad_x,
    kernel_grad_y,
    koksma_hlawka_check,
    ksd,
    local_discrepancy,
    mmd,
    mmd_squared,
    monte_carlo_baseline,
    optimal_weights_ksd,
    optimal_weights_mmd,
    star_discrepancy,
    stein_gram,
    stein_kernel_eval,
    stein_thin,
)

__version__ = "0.1.0"
