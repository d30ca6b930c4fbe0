"""Desk-scale geometry of the projective line over the matrix algebra M(n, C).

Subspace points, operator-valued cross-ratios, the Hermitian sub-geometries
(involutions, circle action, Cayley chart, unitary torsor), obstate
expectation values with variance and spectral distributions, and a finite
classical model that serves as the n = 1 oracle.  The ``properties`` module
holds the seeded invariant sweep behind the ``apline check`` command.
"""

from .algebra import (
    adjoint,
    herm_decompose,
    is_hermitian,
    is_invertible,
    is_psd,
    is_unitary,
    matrix_from_json,
    matrix_to_json,
    random_density,
    random_hermitian,
    random_invertible,
    random_matrix,
    random_psd,
    random_unitary,
    trace_normalized,
)
from .crossratio import (
    INF,
    EndoX,
    Infinity,
    classical_cr,
    cp1_value,
    is_inf,
    kernel,
    ratio,
    scalar_cr_det,
    scalar_cr_trace,
    transition_probability,
)
from .errors import AplineError
from .grassmann import (
    ProjectiveMap,
    SubspacePoint,
    apply_map,
    chart_repr,
    cochart_repr,
    identity_map,
    infinity_point,
    is_transversal,
    mobius_from_blocks,
    one_point,
    point_eq,
    point_from_chart,
    point_from_cochart,
    projector,
    random_map,
    random_point,
    scalar_action,
    torsor_product,
    zero_point,
)
from .hermitian import (
    alpha,
    arithmetic_distance,
    beta,
    cayley_to_unitary,
    cyclic_triple,
    intrinsic_line_point,
    line_family,
    membership,
    poles,
    s1_action,
    tau,
    transport_to_zero,
    unitary_to_point,
    unitary_torsor,
)
from .obstate import (
    Obstate,
    distribution,
    expectation,
    is_cyclically_ordered,
    is_positive,
    is_pure,
    new_obstate,
    obstate_from_json,
    pure_expectation,
    pure_state_point,
    standard_obstate,
    state_from_density,
    variance,
)
from .properties import run_property, run_sweep

__version__ = "0.1.0"

__all__ = [
    "AplineError",
    "EndoX",
    "INF",
    "Infinity",
    "Obstate",
    "ProjectiveMap",
    "SubspacePoint",
    "adjoint",
    "alpha",
    "apply_map",
    "arithmetic_distance",
    "beta",
    "cayley_to_unitary",
    "chart_repr",
    "classical_cr",
    "cochart_repr",
    "cp1_value",
    "cyclic_triple",
    "distribution",
    "expectation",
    "herm_decompose",
    "identity_map",
    "infinity_point",
    "intrinsic_line_point",
    "is_cyclically_ordered",
    "is_hermitian",
    "is_inf",
    "is_invertible",
    "is_positive",
    "is_psd",
    "is_pure",
    "is_transversal",
    "is_unitary",
    "kernel",
    "line_family",
    "matrix_from_json",
    "matrix_to_json",
    "membership",
    "mobius_from_blocks",
    "new_obstate",
    "obstate_from_json",
    "one_point",
    "point_eq",
    "point_from_chart",
    "point_from_cochart",
    "poles",
    "projector",
    "pure_expectation",
    "pure_state_point",
    "random_density",
    "random_hermitian",
    "random_invertible",
    "random_map",
    "random_matrix",
    "random_point",
    "random_psd",
    "random_unitary",
    "ratio",
    "run_property",
    "run_sweep",
    "s1_action",
    "scalar_action",
    "scalar_cr_det",
    "scalar_cr_trace",
    "standard_obstate",
    "state_from_density",
    "tau",
    "torsor_product",
    "trace_normalized",
    "transition_probability",
    "transport_to_zero",
    "unitary_to_point",
    "unitary_torsor",
    "variance",
    "zero_point",
]
