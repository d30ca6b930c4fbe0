import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from apline import algebra, crossratio, grassmann
from apline.crossratio import INF, classical_cr, is_inf, ratio
from apline.errors import DegenerateError, DimensionError, IndeterminateError

RNG = np.random.default_rng(424242)

finite = st.floats(min_value=-50, max_value=50,
                   allow_nan=False, allow_infinity=False)


def separated(*vals, gap=1e-3):
    return all(abs(a - b) > gap for i, a in enumerate(vals)
               for b in vals[i + 1:])


def test_classical_cr_worked_examples():
    assert classical_cr(0.0, 1.0, 2.0, 3.0) == pytest.approx(4.0 / 3.0)
    assert classical_cr(3.0, 1.0, 0.0, INF) == pytest.approx(3.0)
    assert classical_cr(2.0, 3.0, 1.0, INF) == pytest.approx(0.5)
    assert is_inf(classical_cr(1.0, 2.0, 3.0, 1.0))
    with pytest.raises(IndeterminateError):
        classical_cr(1.0, 1.0, 1.0, 2.0)


def test_ratio_is_cr_with_inf():
    assert ratio(2.0, 3.0, 1.0) == pytest.approx(0.5)
    assert ratio(5.0, 1.0, 0.0) == pytest.approx(5.0)
    with pytest.raises(DegenerateError):
        ratio(1.0, 2.0, 2.0)


@given(finite, finite, finite, finite)
@settings(max_examples=200, deadline=None)
def test_cr_pair_symmetries(a, b, c, d):
    if not separated(a, b, c, d):
        return
    cr = classical_cr(a, b, c, d)
    assert classical_cr(b, a, d, c) == pytest.approx(cr, rel=1e-9, abs=1e-9)
    assert classical_cr(c, d, a, b) == pytest.approx(cr, rel=1e-9, abs=1e-9)
    assert classical_cr(b, a, c, d) * cr == pytest.approx(1.0, rel=1e-9)


@given(finite, finite, finite)
@settings(max_examples=200, deadline=None)
def test_cr_normalizes_the_standard_frame(a, b, c):
    if not separated(a, b, c):
        return
    # the coordinate sending c -> 0, b -> 1, keeps the ordering data of a
    coord = classical_cr(a, b, c, INF)
    assert coord == pytest.approx(ratio(a, b, c), rel=1e-9, abs=1e-12)


def test_cr_accepts_complex_values():
    cr = classical_cr(0.0, 1.0, 1j, INF)
    assert isinstance(cr, complex)
    assert abs(cr.imag) > 0.1


def test_proj_equal_on_extended_scalars():
    assert crossratio.proj_equal(INF, INF)
    assert crossratio.proj_equal(2.0, 2.0 + 0.0j)
    assert not crossratio.proj_equal(2.0, INF)


def _kernel_quadruple(n):
    while True:
        x, a, b, y = (grassmann.random_point(n, RNG) for _ in range(4))
        if (grassmann.transversality_margin(x, a) > 1e-2
                and grassmann.transversality_margin(b, x) > 1e-2
                and grassmann.transversality_margin(y, a) > 1e-2):
            return x, a, b, y


def test_kernel_reduces_to_scalar_cr_at_n1():
    for _ in range(25):
        x, a, b, y = _kernel_quadruple(1)
        k = crossratio.kernel(x, a, b, y)
        vals = [crossratio.cp1_value(p) for p in (y, b, x, a)]
        want = classical_cr(*vals)
        assert complex(k.matrix[0, 0]) == pytest.approx(complex(want), rel=1e-9)


def test_kernel_trace_det_natural_under_maps():
    x, a, b, y = _kernel_quadruple(3)
    k = crossratio.kernel(x, a, b, y)
    g = grassmann.random_map(3, RNG)
    moved = crossratio.kernel(*(grassmann.apply_map(g, p) for p in (x, a, b, y)))
    assert moved.trace == pytest.approx(k.trace, rel=1e-8)
    assert moved.det == pytest.approx(k.det, rel=1e-8)


def test_kernel_standard_frame_is_wa():
    # observable chart a, state cochart w, references (0, infinity)
    n = 3
    am = algebra.random_hermitian(n, RNG)
    wm = algebra.random_density(n, RNG)
    k = crossratio.kernel(grassmann.zero_point(n), grassmann.infinity_point(n),
                          grassmann.point_from_cochart(wm),
                          grassmann.point_from_chart(am))
    assert np.allclose(k.matrix, wm @ am, atol=1e-10)
    assert k.trace == pytest.approx(complex(np.trace(wm @ am)))


def test_scalar_cr_helpers_match_kernel():
    x, a, b, y = _kernel_quadruple(2)
    k = crossratio.kernel(x, a, b, y)
    assert crossratio.scalar_cr_trace(y, b, x, a) == pytest.approx(k.trace)
    assert crossratio.scalar_cr_det(y, b, x, a) == pytest.approx(k.det)


def test_cp1_value_and_dimension_guard():
    assert is_inf(crossratio.cp1_value(grassmann.infinity_point(1)))
    assert crossratio.cp1_value(grassmann.zero_point(1)) == 0.0
    with pytest.raises(DimensionError):
        crossratio.cp1_value(grassmann.zero_point(2))


def test_transition_probability_range_and_symmetry():
    for _ in range(20):
        x = grassmann.random_point(1, RNG)
        y = grassmann.random_point(1, RNG)
        p = crossratio.transition_probability(x, y)
        assert 0.0 <= p <= 1.0 + 1e-12
        assert p == pytest.approx(crossratio.transition_probability(y, x))
    assert crossratio.transition_probability(
        grassmann.zero_point(1), grassmann.zero_point(1)) == pytest.approx(1.0)
    assert crossratio.transition_probability(
        grassmann.zero_point(1), grassmann.infinity_point(1)) == pytest.approx(0.0)
