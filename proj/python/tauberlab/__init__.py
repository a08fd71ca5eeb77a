"""Tauberian experiments on weighted semigroup algebras."""

from ._core import (
    CapError,
    DomainError,
    HorizonError,
    NeumannInapplicable,
    TauberError,
    builtin_text,
    convolve,
    dirichlet_series,
    euler_product,
    example1,
    format_number,
    laplace_halfline_1d,
    list_builtins,
    mercer_invert,
    mercer_mean,
    neumann_resolve,
    norm_w,
    prime_norm_partial_sum,
    run_builtin,
    run_scenario_text,
    semigroup_norm_partial_sum,
    truncated_convolution_1d,
)

__all__ = [name for name in dir() if not name.startswith("_")]
