"""Points of the projective line over A = M(n, C).

A point is an n-dimensional right-submodule of A^2, realized as an
n-dimensional subspace of C^{2n} and stored through an orthonormal
basis (thin QR canonical form).  Equality compares orthogonal
projectors, never bases: generators of a right module are only defined
up to GL(n, C).

The standard chart sends a matrix a to the graph point span[I; a]; its
horizon is the point at infinity span[0; I].  The cochart sends w to
the transposed graph span[w; I] (the graph of w over the second
summand), whose horizon is the zero point; states of the obstate layer
live in the cochart.
"""

from __future__ import annotations

import warnings

import numpy as np

from . import algebra
from .algebra import TOL_EQ, TOL_INV
from .errors import (
    DimensionError,
    NotInChartError,
    NotTransversalError,
    ResamplingExhausted,
    SingularError,
)

# Smallest/largest singular value ratio of [basis(x) | basis(a)] above
# which two points count as transversal.
TRANSVERSALITY_RTOL = 1e-8


class TransversalityWarning(UserWarning):
    """A transversality margin fell within a decade of the threshold."""


class SubspacePoint:
    """An n-dimensional subspace of C^{2n} with orthonormal stored basis."""

    __slots__ = ("n", "basis", "_projector")

    def __init__(self, columns):
        cols = np.asarray(columns, dtype=complex)
        if cols.ndim != 2 or cols.shape[0] != 2 * cols.shape[1]:
            raise DimensionError(
                f"a point of the projective line needs a 2n x n basis, got {cols.shape}")
        self.n = cols.shape[1]
        s = np.linalg.svd(cols, compute_uv=False)
        if s[-1] <= TOL_INV * max(s[0], 1e-300):
            raise SingularError("basis columns are rank deficient")
        q, _ = np.linalg.qr(cols)
        q.setflags(write=False)
        self.basis = q
        self._projector = None

    @property
    def projector(self) -> np.ndarray:
        """Orthogonal projector onto the subspace (cached)."""
        if self._projector is None:
            p = self.basis @ self.basis.conj().T
            p.setflags(write=False)
            self._projector = p
        return self._projector

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubspacePoint):
            return NotImplemented
        if self.n != other.n:
            return False
        return point_eq(self, other)

    __hash__ = None  # float-tolerant equality is not hashable

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"SubspacePoint(n={self.n})"


def point_eq(x: SubspacePoint, y: SubspacePoint, tol: float = TOL_EQ) -> bool:
    """Basis-independent equality: ||P_x - P_y|| <= tol (relative)."""
    return algebra.almost_equal(x.projector, y.projector, tol=tol)


# --- base points and charts -------------------------------------------------

def zero_point(n: int) -> SubspacePoint:
    """The base point 0 = [(1, 0)] = span[I; 0]."""
    return SubspacePoint(np.vstack([np.eye(n), np.zeros((n, n))]))


def infinity_point(n: int) -> SubspacePoint:
    """The base point oo = [(0, 1)] = span[0; I]."""
    return SubspacePoint(np.vstack([np.zeros((n, n)), np.eye(n)]))


def one_point(n: int) -> SubspacePoint:
    """The base point 1 = [(1, 1)] = span[I; I]."""
    return SubspacePoint(np.vstack([np.eye(n), np.eye(n)]))


def point_from_chart(a) -> SubspacePoint:
    """The graph point of a: column span of [I; a]."""
    a = algebra.as_matrix(a)
    return SubspacePoint(np.vstack([np.eye(a.shape[0]), a]))


def chart_repr(x: SubspacePoint) -> np.ndarray:
    """Left inverse of point_from_chart; requires x transversal to infinity.

    With basis split [p; q], the chart value is q p^{-1}.
    """
    n = x.n
    p = x.basis[:n, :]
    q = x.basis[n:, :]
    if not algebra.is_invertible(p, tol=TRANSVERSALITY_RTOL):
        raise NotInChartError("point is not transversal to infinity")
    return q @ np.linalg.inv(p)


def point_from_cochart(w) -> SubspacePoint:
    """The transposed graph of w: column span of [w; I].

    This is the chart with horizon 0 instead of infinity; the obstate
    layer stores densities here so that transversality to 0 is automatic
    (the concatenated matrix [[I, w], [0, I]] is always invertible).
    """
    w = algebra.as_matrix(w)
    return SubspacePoint(np.vstack([w, np.eye(w.shape[0])]))


def cochart_repr(x: SubspacePoint) -> np.ndarray:
    """Left inverse of point_from_cochart; requires x transversal to 0."""
    n = x.n
    p = x.basis[:n, :]
    q = x.basis[n:, :]
    if not algebra.is_invertible(q, tol=TRANSVERSALITY_RTOL):
        raise NotInChartError("point is not transversal to zero")
    return p @ np.linalg.inv(q)


# --- transversality and projectors ------------------------------------------

def transversality_margin(x: SubspacePoint, a: SubspacePoint) -> float:
    """sigma_min / sigma_max of the 2n x 2n concatenation [basis(x) | basis(a)]."""
    if x.n != a.n:
        raise DimensionError(f"dimension mismatch: {x.n} vs {a.n}")
    s = np.linalg.svd(np.hstack([x.basis, a.basis]), compute_uv=False)
    return float(s[-1] / max(s[0], 1e-300))


def is_transversal(x: SubspacePoint, a: SubspacePoint) -> bool:
    """True iff A^2 = x (+) a, i.e. [basis(x) | basis(a)] is invertible."""
    margin = transversality_margin(x, a)
    if TRANSVERSALITY_RTOL < margin < 10 * TRANSVERSALITY_RTOL:
        warnings.warn(
            f"transversality margin {margin:.3e} is within a decade of the "
            f"threshold {TRANSVERSALITY_RTOL:.0e}",
            TransversalityWarning,
            stacklevel=2,
        )
    return margin > TRANSVERSALITY_RTOL


def projector(x: SubspacePoint, a: SubspacePoint) -> np.ndarray:
    """The linear projector with image x and kernel a, as a 2n x 2n matrix.

    Computed as [X|A] diag(I, 0) [X|A]^{-1}.  The source uses both
    sub/superscript placements for image and kernel; here and at every
    call site the order is projector(image, kernel).
    """
    if not is_transversal(x, a):
        raise NotTransversalError("projector needs transversal (image, kernel)")
    n = x.n
    f = np.hstack([x.basis, a.basis])
    left = np.hstack([x.basis, np.zeros((2 * n, n))])
    return left @ np.linalg.inv(f)


def m_operator(x: SubspacePoint, a: SubspacePoint, b: SubspacePoint,
               z: SubspacePoint) -> np.ndarray:
    """The middle operator M_{xabz} = P(image x, kernel a) - P(image b, kernel z).

    Invertible whenever x, z lie in U_a and U_b; its inverse is M_{zabx}.
    """
    for (p, q) in ((x, a), (x, b), (z, a), (z, b)):
        if not is_transversal(p, q):
            raise NotTransversalError("m_operator needs x, z in U_a and U_b")
    return projector(x, a) - projector(b, z)


def torsor_product(x: SubspacePoint, y: SubspacePoint, z: SubspacePoint,
                   a: SubspacePoint, b: SubspacePoint) -> SubspacePoint:
    """The group law x ._y z on U_a and U_b induced by the pair (a, b).

    Applies M_{xabz} to y.  With y fixed this is a group with neutral y;
    in the chart at (a, b) = (infinity, 0) it is the product x y^{-1} z.
    """
    if not (is_transversal(y, a) and is_transversal(y, b)):
        raise NotTransversalError("torsor_product needs y in U_a and U_b")
    m = m_operator(x, a, b, z)
    return SubspacePoint(m @ y.basis)


def scalar_action(r, a: SubspacePoint, x: SubspacePoint,
                  y: SubspacePoint) -> SubspacePoint:
    """Multiplication by the scalar r in the linear space (U_a, origin x).

    Applies r * projector(a, x) + projector(x, a) to y: the component
    along a is scaled, the component along the origin x is kept, so x is
    fixed for r != 0 and r = 0 sends everything to the origin.  (In the
    standard frame a = infinity, x = 0 this is chart(c) -> chart(r c).)
    """
    if not is_transversal(x, a):
        raise NotTransversalError("scalar_action needs transversal (x, a)")
    if not is_transversal(y, a):
        raise NotTransversalError("scalar_action needs y in U_a")
    m = complex(r) * projector(a, x) + projector(x, a)
    return SubspacePoint(m @ y.basis)


# --- the projective group ----------------------------------------------------

class ProjectiveMap:
    """An element of PGL(2, A): an invertible 2n x 2n matrix up to scalar."""

    __slots__ = ("rep",)

    def __init__(self, rep):
        rep = np.asarray(rep, dtype=complex)
        if rep.ndim != 2 or rep.shape[0] != rep.shape[1] or rep.shape[0] % 2:
            raise DimensionError(f"projective map rep must be 2n x 2n, got {rep.shape}")
        if not algebra.is_invertible(rep):
            raise SingularError("projective map rep is singular")
        rep = rep.copy()
        rep.setflags(write=False)
        self.rep = rep

    @property
    def n(self) -> int:
        return self.rep.shape[0] // 2

    def inverse(self) -> "ProjectiveMap":
        return ProjectiveMap(np.linalg.inv(self.rep))

    def __matmul__(self, other) -> "ProjectiveMap":
        if not isinstance(other, ProjectiveMap):
            return NotImplemented
        return ProjectiveMap(self.rep @ other.rep)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"ProjectiveMap(n={self.n})"


def identity_map(n: int) -> ProjectiveMap:
    return ProjectiveMap(np.eye(2 * n))


def mobius_from_blocks(a, b, c, d) -> ProjectiveMap:
    """The projective map acting on chart values as z -> (az + b)(cz + d)^{-1}.

    The displayed fractional-linear formula is written for row
    conventions; on column graphs [I; z] the representing matrix is the
    block matrix [[d, c], [b, a]], since [[d, c], [b, a]] [I; z] =
    [d + cz; b + az] spans the graph of (az + b)(cz + d)^{-1}.
    """
    a, b, c, d = (algebra.as_matrix(m) for m in (a, b, c, d))
    n = a.shape[0]
    rep = np.zeros((2 * n, 2 * n), dtype=complex)
    rep[:n, :n] = d
    rep[:n, n:] = c
    rep[n:, :n] = b
    rep[n:, n:] = a
    return ProjectiveMap(rep)


def apply_map(g: ProjectiveMap, x: SubspacePoint) -> SubspacePoint:
    """The fractional-linear action: column span of rep(g) basis(x)."""
    if g.n != x.n:
        raise DimensionError(f"dimension mismatch: map n={g.n}, point n={x.n}")
    return SubspacePoint(g.rep @ x.basis)


# --- random draws -------------------------------------------------------------

def random_point(n: int, rng, max_tries: int = 100) -> SubspacePoint:
    """A uniform-ish random point: canonicalized complex Gaussian 2n x n draw."""
    rng = algebra.rng_from(rng)
    for _ in range(max_tries):
        cols = (rng.standard_normal((2 * n, n))
                + 1j * rng.standard_normal((2 * n, n))) / np.sqrt(2)
        try:
            return SubspacePoint(cols)
        except SingularError:  # pragma: no cover - measure-zero event
            continue
    raise ResamplingExhausted("random_point: all draws were rank deficient")  # pragma: no cover


def random_map(n: int, rng, max_tries: int = 100) -> ProjectiveMap:
    """A random element of PGL(2, A), drawn until invertible."""
    rng = algebra.rng_from(rng)
    for _ in range(max_tries):
        rep = (rng.standard_normal((2 * n, 2 * n))
               + 1j * rng.standard_normal((2 * n, 2 * n))) / np.sqrt(2)
        try:
            return ProjectiveMap(rep)
        except SingularError:  # pragma: no cover - measure-zero event
            continue
    raise ResamplingExhausted("random_map: all draws were singular")  # pragma: no cover


# --- JSON ---------------------------------------------------------------------
# SubspacePoint encoding: {"n": int, "basis_re": [[..]] (2n x n), "basis_im": [[..]]};
# the basis is canonicalized on load.

def point_to_json(x: SubspacePoint) -> dict:
    return {
        "n": x.n,
        "basis_re": x.basis.real.tolist(),
        "basis_im": x.basis.imag.tolist(),
    }


def point_from_json(obj: dict) -> SubspacePoint:
    re = np.array(obj["basis_re"], dtype=float)
    n = int(obj["n"]) if "n" in obj else re.shape[-1]
    im = np.array(obj.get("basis_im", np.zeros((2 * n, n))), dtype=float)
    if re.shape != (2 * n, n) or im.shape != (2 * n, n):
        raise DimensionError(
            f"point JSON claims n={n} but carries shapes {re.shape}/{im.shape}")
    cols = re + 1j * im
    if not np.all(np.isfinite(cols)):
        raise ValueError("point JSON entries must be finite")
    return SubspacePoint(cols)
