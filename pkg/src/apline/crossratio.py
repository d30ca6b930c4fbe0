"""Kernel functions and cross-ratios.

The operator-valued cross-ratio CR(y, b; x, a) is the endomorphism
K_{x,a}(b, y) = beta o eta of x, where beta is the graph map of b over
a into x and eta the graph map of y over x into a, both taken in the
splitting A^2 = a (+) x.  Scalars are extracted by trace or
determinant; both are conjugation invariants, so the scalar cross-ratio
is invariant under the whole projective group acting on all four slots.

The classical four-point cross-ratio on the scalar projective line is
evaluated in homogeneous coordinates,

    CR(a, b; c, d) = det(c, a) det(d, b) / (det(c, b) det(d, a)),

which reduces to (c - a)(d - b) / ((c - b)(d - a)) on finite values and
handles every placement of the point at infinity by exact case-free
arithmetic (an infinite slot simply contributes the pair (1, 0); no
IEEE infinities are ever formed).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import algebra, grassmann
from .algebra import TOL_EQ
from .errors import (
    DegenerateError,
    DimensionError,
    IndeterminateError,
    NotTransversalError,
    SingularError,
)
from .grassmann import SubspacePoint


class Infinity:
    """The point at infinity of the scalar projective line (singleton)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "inf"

    def __eq__(self, other) -> bool:
        return isinstance(other, Infinity)

    def __hash__(self) -> int:
        return hash("apline-infinity")


INF = Infinity()


def is_inf(v) -> bool:
    return isinstance(v, Infinity)


def _homogeneous(v) -> tuple[complex, complex]:
    """Extended scalar -> homogeneous pair (p, q) with value p/q; INF -> (1, 0)."""
    if is_inf(v):
        return (1.0 + 0j, 0j)
    return (complex(v), 1.0 + 0j)


def _is_real_value(v) -> bool:
    return is_inf(v) or not isinstance(v, complex) or v.imag == 0


def _det(u: tuple, v: tuple) -> complex:
    return u[0] * v[1] - u[1] * v[0]


def proj_equal(u, v) -> bool:
    """Projective equality of extended scalars (exact on the homogeneous pair)."""
    return _det(_homogeneous(u), _homogeneous(v)) == 0


def _as_value(z: complex, real: bool):
    if real:
        return float(z.real)
    return z


def classical_cr(a, b, c, d):
    """The classical cross-ratio CR(a, b; c, d) = (c-a)(d-b)/((c-b)(d-a)).

    Arguments are real or complex numbers or INF; at least three of the
    four must be pairwise distinct (projectively).  Returns INF when the
    denominator vanishes and the numerator does not; raises
    IndeterminateError when both vanish.  Real inputs give a real float.
    """
    real = all(_is_real_value(v) for v in (a, b, c, d))
    ha, hb, hc, hd = (_homogeneous(v) for v in (a, b, c, d))
    num = _det(hc, ha) * _det(hd, hb)
    den = _det(hc, hb) * _det(hd, ha)
    if den == 0:
        if num == 0:
            raise IndeterminateError(
                "cross-ratio is 0/0: fewer than three distinct values")
        return INF
    return _as_value(num / den, real)


def ratio(c, b, a):
    """The affine (division) ratio R(c, b, a) = (c - a)/(b - a).

    Satisfies R(a, b, c) = CR(a, b; c, infinity); in particular
    ratio(a, 1, 0) = a.
    """
    if proj_equal(a, b):
        raise DegenerateError("ratio needs a != b")
    return classical_cr(c, b, a, INF)


# --- the operator-valued cross-ratio ------------------------------------------

@dataclass(frozen=True)
class EndoX:
    """An endomorphism of the subspace x, expressed in x's stored basis.

    Trace and determinant do not depend on the basis stored in x (they
    are conjugation invariants of the underlying endomorphism).
    """

    base_point: SubspacePoint
    matrix: np.ndarray

    @property
    def trace(self) -> complex:
        return algebra.trace_normalized(self.matrix)

    @property
    def det(self) -> complex:
        return complex(np.linalg.det(self.matrix))


def _graph_coords(frame: np.ndarray, point: SubspacePoint) -> tuple[np.ndarray, np.ndarray]:
    """Solve frame [c; d] = basis(point); frame columns are [A | X]."""
    n = point.n
    cd = np.linalg.solve(frame, point.basis)
    return cd[:n, :], cd[n:, :]


def kernel(x: SubspacePoint, a: SubspacePoint, b: SubspacePoint,
           y: SubspacePoint) -> EndoX:
    """The canonical kernel K_{x,a}(b, y) = beta o eta in End(x).

    b must be transversal to x and y transversal to a; beta: a -> x is
    the graph map of b and eta: x -> a the graph map of y, both w.r.t.
    the splitting A^2 = a (+) x.  CR(y, b; x, a) := K_{x,a}(b, y).
    """
    if not grassmann.is_transversal(x, a):
        raise NotTransversalError("kernel needs transversal reference pair (x, a)")
    if not grassmann.is_transversal(b, x):
        raise NotTransversalError("kernel needs b in U_x")
    if not grassmann.is_transversal(y, a):
        raise NotTransversalError("kernel needs y in U_a")
    frame = np.hstack([a.basis, x.basis])
    c, d = _graph_coords(frame, b)    # b = A c + X d, graph of beta: a -> x
    if not algebra.is_invertible(c):  # cannot fail once b T x holds
        raise SingularError("graph decomposition of b is degenerate")
    beta = d @ np.linalg.inv(c)
    cy, dy = _graph_coords(frame, y)  # y = A cy + X dy, graph of eta: x -> a
    if not algebra.is_invertible(dy):
        raise SingularError("graph decomposition of y is degenerate")
    eta = cy @ np.linalg.inv(dy)
    return EndoX(base_point=x, matrix=beta @ eta)


def scalar_cr_trace(y: SubspacePoint, b: SubspacePoint, x: SubspacePoint,
                    a: SubspacePoint) -> complex:
    """trace CR(y, b; x, a); invariant under GL(W) on all four slots."""
    return kernel(x, a, b, y).trace


def scalar_cr_det(y: SubspacePoint, b: SubspacePoint, x: SubspacePoint,
                  a: SubspacePoint) -> complex:
    """det CR(y, b; x, a); invariant under GL(W) on all four slots."""
    return kernel(x, a, b, y).det


def cp1_value(x: SubspacePoint):
    """The scalar value of an n = 1 point: second over first coordinate, or INF."""
    if x.n != 1:
        raise DimensionError("cp1_value needs an n = 1 point")
    p, q = complex(x.basis[0, 0]), complex(x.basis[1, 0])
    if abs(p) <= grassmann.TRANSVERSALITY_RTOL * abs(q):
        return INF
    return q / p


def transition_probability(x: SubspacePoint, y: SubspacePoint) -> float:
    """cos^2 of the angle between two lines in C^2 (n = 1 only).

    |<x, y>|^2 / (<x, x> <y, y>) on representative vectors; equals the
    cross-ratio CR(x, y; alpha(y), alpha(x)) of the four points.
    """
    if x.n != 1 or y.n != 1:
        raise DimensionError("transition_probability is defined for n = 1 only")
    ip = (x.basis.conj().T @ y.basis)[0, 0]  # bases are unit vectors
    return float(abs(ip) ** 2)
