"""The Hermitian projective line and the real unitary universe.

Carries the three involutions (tau: omega-orthocomplement, alpha:
standard orthocomplement, beta = [J]), the poles N = [(i, 1)] and
S = [(-i, 1)], the circle action fixing them, the Cayley bijection
between the real unitary universe R_{N,S} and the unitary group, the
torsor law on R_{N,S}, tangent algebras, arithmetic distance, intrinsic
lines, and the cyclic-order predicate on R.

Convention notes (all verified by the calibration tests):

* omega(u, v) = u1* v2 - u2* v1, with form matrix Omega = [[0, I], [-I, 0]];
  J = [[0, -I], [I, 0]] (so J^2 = -1 and beta = [J] fixes exactly N and S).
* The circle action places the phase on the N-component:
  rep(theta) = e^{i theta} P(image N, kernel S) + P(image S, kernel N).
  This is the orientation for which the square of the quarter turn is
  beta and the quarter turn at 0 is the base point [(1, 1)].
* unitary_torsor uses the pair order (S, N), which is the order that
  realizes the Cayley-chart law u_x u_y* u_z (the Cayley matrix sends
  0 -> N and infinity -> S, so the chart pair (infinity, 0) downstairs
  is (S, N) upstairs).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
import scipy.linalg

from . import algebra, grassmann
from .algebra import TOL_EQ
from .errors import (
    DimensionError,
    NoCommonChartError,
    NotHermitianError,
    NotInChartError,
    NotInUniverseError,
    NotRankOneError,
    NotTransversalError,
    NotUnitaryError,
)
from .crossratio import INF, is_inf
from .grassmann import (
    ProjectiveMap,
    SubspacePoint,
    apply_map,
    infinity_point,
    point_eq,
    point_from_chart,
    zero_point,
)

# Singular values of a chart difference below RANK_RTOL * sigma_max
# count as zero when computing arithmetic distance.
RANK_RTOL = 1e-7


def omega_matrix(n: int) -> np.ndarray:
    """Form matrix of omega(u, v) = u1* v2 - u2* v1: [[0, I], [-I, 0]]."""
    eye = np.eye(n)
    return np.block([[np.zeros((n, n)), eye], [-eye, np.zeros((n, n))]])


def j_matrix(n: int) -> np.ndarray:
    """J = [[0, -I], [I, 0]]; J^2 = -1."""
    eye = np.eye(n)
    return np.block([[np.zeros((n, n)), -eye], [eye, np.zeros((n, n))]])


@lru_cache(maxsize=None)
def _cayley_blocks(n: int) -> tuple[np.ndarray, np.ndarray]:
    eye = np.eye(n)
    c = np.block([[1j * eye, -1j * eye], [eye, eye]])
    return c, np.linalg.inv(c)


def cayley_matrix(n: int) -> ProjectiveMap:
    """The Cayley matrix C = [[i, -i], [1, 1]] blocks; C(0) = N, C(inf) = S."""
    return ProjectiveMap(_cayley_blocks(n)[0])


def _null_space_point(rows: np.ndarray) -> SubspacePoint:
    """The n-dimensional null space of an n x 2n full-rank row matrix."""
    _, _, vh = np.linalg.svd(rows)
    n = rows.shape[0]
    return SubspacePoint(vh[n:, :].conj().T)


def tau(x: SubspacePoint) -> SubspacePoint:
    """The omega-orthocomplement; on the chart, tau(a) = a*."""
    return _null_space_point(x.basis.conj().T @ omega_matrix(x.n))


def alpha(x: SubspacePoint) -> SubspacePoint:
    """The standard orthocomplement (antipode); on the chart at n = 1: z -> -1/conj(z)."""
    return _null_space_point(x.basis.conj().T)


def beta(x: SubspacePoint) -> SubspacePoint:
    """The point map [J]; equals alpha o tau = tau o alpha."""
    return SubspacePoint(j_matrix(x.n) @ x.basis)


_INVOLUTIONS = {"tau": tau, "alpha": alpha, "beta": beta}


def involution(x: SubspacePoint, kind: str) -> SubspacePoint:
    """Dispatch to tau / alpha / beta by name."""
    try:
        return _INVOLUTIONS[kind](x)
    except KeyError:
        raise ValueError(f"unknown involution {kind!r}; pick tau, alpha or beta") from None


def poles(n: int) -> tuple[SubspacePoint, SubspacePoint]:
    """North and south pole: N = [(i, 1)] = span[iI; I], S = [(-i, 1)]."""
    eye = np.eye(n)
    north = SubspacePoint(np.vstack([1j * eye, eye]))
    south = SubspacePoint(np.vstack([-1j * eye, eye]))
    return north, south


def membership(x: SubspacePoint, space: str) -> bool:
    """Membership in R (tau-fixed), R' (x (+) Jx = A^2) or R_{N,S}.

    For A = M(n, C) the chain of ambient Grassmannian universes
    collapses: every stored point already has a rank-n complement, so
    only the three Hermitian-geometry memberships carry information.
    """
    if space == "R":
        return tau(x) == x
    if space == "Rprime":
        if not membership(x, "R"):
            return False
        s = np.linalg.svd(np.hstack([x.basis, j_matrix(x.n) @ x.basis]),
                          compute_uv=False)
        return bool(s[-1] > grassmann.TRANSVERSALITY_RTOL * s[0])
    if space == "RNS":
        if not membership(x, "R"):
            return False
        north, south = poles(x.n)
        return (grassmann.is_transversal(x, north)
                and grassmann.is_transversal(x, south))
    raise ValueError(f"unknown space {space!r}; pick R, Rprime or RNS")


# --- circle action -------------------------------------------------------------

@lru_cache(maxsize=None)
def _pole_projectors(n: int) -> tuple[np.ndarray, np.ndarray]:
    north, south = poles(n)
    p_north = grassmann.projector(north, south)
    p_south = grassmann.projector(south, north)
    return p_north, p_south


def s1_action_map(theta: float, n: int) -> ProjectiveMap:
    """The invertible map e^{i theta} P(im N, ker S) + P(im S, ker N)."""
    p_north, p_south = _pole_projectors(n)
    return ProjectiveMap(np.exp(1j * theta) * p_north + p_south)


def s1_action(theta: float, x: SubspacePoint) -> SubspacePoint:
    """The circle action lambda_{N,S} with lambda = e^{i theta}.

    This is the scalar action of e^{i theta} in the frame (N, S),
    extended to every point (the operator is invertible); it preserves
    R, and the quarter turn squares to beta.
    """
    return apply_map(s1_action_map(theta, x.n), x)


# --- Cayley transform and the unitary universe ---------------------------------

def cayley_to_unitary(x: SubspacePoint) -> np.ndarray:
    """The unitary matrix of a point of R_{N,S}: chart value of C^{-1} x.

    On chart points this is the classical Cayley transform
    h -> (h + i)(h - i)^{-1}; it maps 0 to -1 and infinity to 1.
    """
    if not membership(x, "RNS"):
        raise NotInUniverseError("cayley_to_unitary needs a point of R_{N,S}")
    _, c_inv = _cayley_blocks(x.n)
    u = grassmann.chart_repr(apply_map(ProjectiveMap(c_inv), x))
    if not algebra.is_unitary(u, tol=1e-7):
        raise NotUnitaryError("Cayley chart value is not unitary")  # pragma: no cover
    return u


def unitary_to_point(u) -> SubspacePoint:
    """Inverse of cayley_to_unitary: the R_{N,S} point of a unitary matrix."""
    u = algebra.as_matrix(u)
    if not algebra.is_unitary(u):
        raise NotUnitaryError("unitary_to_point needs a unitary matrix")
    c, _ = _cayley_blocks(u.shape[0])
    return apply_map(ProjectiveMap(c), point_from_chart(u))


def random_r_point(n: int, rng) -> SubspacePoint:
    """A random point of R: the image of a Haar-ish random unitary.

    There is no canonical retraction from arbitrary points onto R, so R
    is sampled through its unitary parametrization (which is exactly
    membership-preserving by construction).
    """
    return unitary_to_point(algebra.random_unitary(n, rng))


def unitary_torsor(x: SubspacePoint, y: SubspacePoint,
                   z: SubspacePoint) -> SubspacePoint:
    """The torsor law x ._y z on R_{N,S}; u_{x ._y z} = u_x u_y* u_z.

    Realized as the (S, N)-pair group law of the projective line; the
    pair order is fixed by the Cayley-chart calibration (see module
    docstring).
    """
    for p in (x, y, z):
        if not membership(p, "RNS"):
            raise NotInUniverseError("unitary_torsor needs points of R_{N,S}")
    north, south = poles(x.n)
    return grassmann.torsor_product(x, y, z, south, north)


def transport_to_zero(a: SubspacePoint) -> ProjectiveMap:
    """A symmetry g of (R, tau, alpha) with g(a) = 0, for a in R_{N,S}.

    Built in the Cayley chart as left multiplication by -u_a*: the
    representing matrix C diag(I, -u_a*) C^{-1} is unitary (C/sqrt(2)
    is), hence commutes with alpha; it preserves the form omega exactly,
    hence commutes with tau.
    """
    u_a = cayley_to_unitary(a)
    n = a.n
    c, c_inv = _cayley_blocks(n)
    d = np.zeros((2 * n, 2 * n), dtype=complex)
    d[:n, :n] = np.eye(n)
    d[n:, n:] = -u_a.conj().T
    return ProjectiveMap(c @ d @ c_inv)


def tangent_unit(a: SubspacePoint) -> SubspacePoint:
    """The unit of the tangent algebra at a: the quarter turn i_{N,S}(a).

    At a = 0 this is the base point [(1, 1)], matching the algebra unit.
    """
    if not membership(a, "RNS"):
        raise NotInUniverseError("tangent_unit needs a point of R_{N,S}")
    return s1_action(np.pi / 2, a)


def tangent_product(base: SubspacePoint, x: SubspacePoint,
                    y: SubspacePoint) -> SubspacePoint:
    """The associative product of (T_base, zero = base, unit = i_{N,S}(base)).

    Transports through 0 by a symmetry g with g(base) = 0, multiplies
    chart representatives there, and transports back.  Any other choice
    of g differs by an algebra isomorphism fixing the pointed structure,
    so the (base, unit)-pointed algebra laws do not depend on it.
    """
    if not membership(base, "RNS"):
        raise NotInUniverseError("tangent_product needs base in R_{N,S}")
    ant = alpha(base)
    for p in (x, y):
        if not grassmann.is_transversal(p, ant):
            raise NotTransversalError(
                "tangent_product needs factors transversal to alpha(base)")
    g = transport_to_zero(base)
    gx = grassmann.chart_repr(apply_map(g, x))
    gy = grassmann.chart_repr(apply_map(g, y))
    return apply_map(g.inverse(), point_from_chart(gx @ gy))


# --- random symmetries ----------------------------------------------------------

def aut_omega_random(n: int, rng, scale: float = 0.5) -> ProjectiveMap:
    """exp of a random element [[a, b], [c, -a*]] (b, c Hermitian) of Der(omega).

    The exponential satisfies g* Omega g = Omega, hence acts on points
    preserving R.
    """
    rng = algebra.rng_from(rng)
    a = scale * algebra.random_matrix(n, rng)
    b = scale * algebra.random_hermitian(n, rng)
    c = scale * algebra.random_hermitian(n, rng)
    m = np.block([[a, b], [c, -a.conj().T]])
    return ProjectiveMap(scipy.linalg.expm(m))


def u_group_random(n: int, rng, scale: float = 0.7) -> ProjectiveMap:
    """A random element of U = Aut(S, tau, alpha): unitary and J-commuting.

    exp([[s, h], [-h, s]]) with s skew-Hermitian and h Hermitian is
    unitary, commutes with J, and preserves omega.
    """
    rng = algebra.rng_from(rng)
    h = scale * algebra.random_hermitian(n, rng)
    a = algebra.random_matrix(n, rng)
    s = scale * (a - a.conj().T) / 2
    m = np.block([[s, h], [-h, s]])
    return ProjectiveMap(scipy.linalg.expm(m))


# --- arithmetic distance and intrinsic lines -------------------------------------

def _chart_candidates(x: SubspacePoint, y: SubspacePoint, rng, count: int = 100):
    yield infinity_point(x.n)
    yield zero_point(x.n)
    rng = algebra.rng_from(rng)
    for _ in range(count):
        yield grassmann.random_point(x.n, rng)


def common_chart_point(x: SubspacePoint, y: SubspacePoint,
                       rng=None) -> SubspacePoint:
    """A point transversal to both x and y (tries infinity, 0, then random)."""
    if rng is None:
        rng = np.random.default_rng(0xA11E)
    for c in _chart_candidates(x, y, rng):
        if grassmann.is_transversal(x, c) and grassmann.is_transversal(y, c):
            return c
    raise NoCommonChartError("no point transversal to both arguments found")  # pragma: no cover


def _origin_for(c: SubspacePoint, rng=None) -> SubspacePoint:
    if rng is None:
        rng = np.random.default_rng(0x0A11)
    for o in _chart_candidates(c, c, rng):
        if grassmann.is_transversal(o, c):
            return o
    raise NoCommonChartError("no origin transversal to the chart point found")  # pragma: no cover


def chart_in_frame(z: SubspacePoint, origin: SubspacePoint,
                   c: SubspacePoint) -> np.ndarray:
    """The chart value of z in the frame (origin, c): m with z = [B_o | B_c][I; m].

    Requires z transversal to c.  Differences of chart values transform
    by equivalences under any change of frame with the same horizon c,
    so their rank is a function of (z1, z2, c) alone.
    """
    frame = np.hstack([origin.basis, c.basis])
    pq = np.linalg.solve(frame, z.basis)
    n = z.n
    p, q = pq[:n, :], pq[n:, :]
    if not algebra.is_invertible(p, tol=grassmann.TRANSVERSALITY_RTOL):
        raise NotTransversalError("point is not transversal to the chart horizon")
    return q @ np.linalg.inv(p)


def chart_difference_rank(x: SubspacePoint, y: SubspacePoint,
                          c: SubspacePoint, origin: SubspacePoint | None = None) -> int:
    """Rank of chart_c(x) - chart_c(y), with the 1e-7 relative sv threshold."""
    if origin is None:
        origin = _origin_for(c)
    diff = chart_in_frame(x, origin, c) - chart_in_frame(y, origin, c)
    s = np.linalg.svd(diff, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > RANK_RTOL * s[0]))


def arithmetic_distance(x: SubspacePoint, y: SubspacePoint, rng=None) -> int:
    """The rank of the difference of the two points in any common chart.

    Searches infinity, 0, then seeded random points for a common chart;
    the result does not depend on the chart found (Def. of arithmetic
    distance; exercised by the chart-independence tests).
    """
    if point_eq(x, y):
        return 0
    c = common_chart_point(x, y, rng)
    return chart_difference_rank(x, y, c)


def is_rank_one_pair(x: SubspacePoint, y: SubspacePoint) -> bool:
    return arithmetic_distance(x, y) == 1


class LineFamily:
    """The intrinsic line through a rank-one pair, parametrized in one frame.

    point(1) is the first pair member, point(0) the second, point(INF)
    the completing point on the chart horizon.
    """

    __slots__ = ("frame", "base", "direction", "n")

    def __init__(self, frame: np.ndarray, base: np.ndarray, direction: np.ndarray):
        self.frame = frame
        self.base = base
        self.direction = direction
        self.n = base.shape[0]

    def raw_basis(self, t) -> np.ndarray:
        """Basis columns of point(t) without the orthonormalization pass.

        For finite t the columns depend affinely on t, and because the
        direction has rank one, so does their determinant against any
        fixed complement — the fact the completion-point root-finder
        rests on.
        """
        n = self.n
        if is_inf(t):
            # Direction d has rank one, d = s * u v^*; as t grows the graph
            # tilts into the horizon along u while staying put on v-perp.
            u_, _, vh_ = np.linalg.svd(self.direction)
            v_perp = vh_[1:, :].conj().T
            cols = np.zeros((2 * n, n), dtype=complex)
            cols[:n, : n - 1] = v_perp
            cols[n:, : n - 1] = self.base @ v_perp
            cols[n:, n - 1:] = u_[:, :1]
            return self.frame @ cols
        m = self.base + float(t) * self.direction
        return self.frame @ np.vstack([np.eye(n), m])

    def point(self, t) -> SubspacePoint:
        return SubspacePoint(self.raw_basis(t))


def line_family(x: SubspacePoint, y: SubspacePoint,
                chart_point: SubspacePoint | None = None,
                origin: SubspacePoint | None = None) -> LineFamily:
    """Parametrize the intrinsic line through the rank-one pair (x, y)."""
    if not is_rank_one_pair(x, y):
        raise NotRankOneError("intrinsic lines need a pair at arithmetic distance 1")
    c = chart_point if chart_point is not None else common_chart_point(x, y)
    o = origin if origin is not None else _origin_for(c)
    mx = chart_in_frame(x, o, c)
    my = chart_in_frame(y, o, c)
    return LineFamily(np.hstack([o.basis, c.basis]), my, mx - my)


def intrinsic_line_point(x: SubspacePoint, y: SubspacePoint, t,
                         chart_point: SubspacePoint | None = None,
                         origin: SubspacePoint | None = None) -> SubspacePoint:
    """The point of the intrinsic real line [x, y] with parameter t.

    In a chart containing both points the line is the affine family
    t chart(x) + (1 - t) chart(y); t = 1 gives x, t = 0 gives y, and
    t = INF gives the completing point on the chart horizon.  The
    completed line is, as a set, independent of the chart (that is the
    rank-one condition); the parameter t itself is chart-relative, so
    pass chart_point explicitly whenever parameters must be compared.
    """
    return line_family(x, y, chart_point, origin).point(t)


# --- cyclic order -----------------------------------------------------------------

def _hermitian_chart(z: SubspacePoint) -> np.ndarray:
    m = grassmann.chart_repr(z)
    if not algebra.is_hermitian(m, tol=1e-8):
        raise NotHermitianError("cyclic order needs points of R (Hermitian charts)")
    return (m + m.conj().T) / 2


def cyclic_triple(a: SubspacePoint, b: SubspacePoint, c: SubspacePoint) -> bool:
    """True iff a <= b in the ordered affine part U_c of R.

    For c = infinity this is the psd order of Hermitian chart values;
    for finite c the chart map z -> (c - z)^{-1} (the matrix form of
    x -> -1/(x - c)) transports the order.  The orientation is the one
    agreeing with the classical cyclic order at n = 1; correctness is
    asserted by the invariance tests, not by the formula.
    """
    if point_eq(c, infinity_point(c.n)):
        ma, mb = _hermitian_chart(a), _hermitian_chart(b)
        return algebra.is_psd(mb - ma)
    mc = _hermitian_chart(c)
    values = []
    for z in (a, b):
        if point_eq(z, infinity_point(z.n)):
            values.append(np.zeros((z.n, z.n), dtype=complex))
            continue
        mz = _hermitian_chart(z)
        gap = mc - mz
        if not algebra.is_invertible(gap, tol=grassmann.TRANSVERSALITY_RTOL):
            raise NotTransversalError("cyclic order needs both points transversal to c")
        values.append(np.linalg.inv(gap))
    return algebra.is_psd(values[1] - values[0])
