"""Obstates: observable/state quadruples and their quantum dictionary.

An obstate bundles an observable point A, a state point W and a
reference pair (A0, Winf).  Expectation is the matrix trace of the
operator cross-ratio of the quadruple; with the standard reference pair
(0, infinity), Hermitian A = point_from_chart(a) and W the graph point
of a density matrix w, it reproduces trace(w a) exactly.

Slot calibration (the one place where conventions can silently break):
state points are built with point_from_cochart, i.e. the density matrix
w labels span[w; I], the graph over the *second* summand.  With the
kernel slotting kernel(A0, Winf, W, A) this is the unique combination
that yields trace(w a) rather than one of its inverted variants
trace(w^{-1} a), trace(a^{-1} w), ...; it also keeps singular density
matrices (pure states!) inside the domain, since span[w; I] is
transversal to 0 = span[I; 0] for every w.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import algebra, grassmann, hermitian
from .crossratio import INF, classical_cr, is_inf, kernel
from .errors import (
    DimensionError,
    MembershipError,
    NonUniqueCompletionError,
    NotAntipodalError,
    NotHermitianError,
    NotInChartError,
    NotInUniverseError,
    NotPureError,
    NotStrongError,
    NotTransversalError,
    TransversalityError,
)
from .grassmann import (
    SubspacePoint,
    apply_map,
    infinity_point,
    point_from_chart,
    point_from_cochart,
    zero_point,
)

# Eigenvalues of a transported observable closer than this (relative)
# are reported as one spectral point with merged weight.
EIG_CLUSTER_RTOL = 1e-8

# Normalized smallest singular value below which a line point counts as
# non-transversal to the observable during completion-point search.
COMPLETION_TOL = 1e-6


@dataclass(frozen=True)
class Obstate:
    observable: SubspacePoint
    state: SubspacePoint
    ref_observable: SubspacePoint
    ref_state: SubspacePoint
    strong: bool

    @property
    def n(self) -> int:
        return self.observable.n


def new_obstate(A: SubspacePoint, W: SubspacePoint, A0: SubspacePoint,
                Winf: SubspacePoint, strong: bool = True) -> Obstate:
    """Validate and build an obstate; every error names the violated clause."""
    if not (A.n == W.n == A0.n == Winf.n):
        raise DimensionError("obstate slots have mixed dimensions")
    for name, point, space in (("observable A", A, "R"),
                               ("reference observable A0", A0, "R"),
                               ("state W", W, "Rprime"),
                               ("reference state Winf", Winf, "Rprime")):
        if not hermitian.membership(point, space):
            raise MembershipError(f"{name} is not a point of {space}")
    for name, p, q in (("A0 and Winf", A0, Winf),
                       ("A0 and W", A0, W),
                       ("A and Winf", A, Winf)):
        if not grassmann.is_transversal(p, q):
            raise TransversalityError(f"{name} are not transversal")
    if strong:
        if Winf != hermitian.alpha(A0):
            raise NotAntipodalError("strong obstate needs Winf = alpha(A0)")
        if not hermitian.membership(A0, "RNS"):
            raise NotInUniverseError("strong obstate needs A0 in R_{N,S}")
    return Obstate(A, W, A0, Winf, bool(strong))


def state_from_density(w) -> SubspacePoint:
    """The state point of a density matrix w (Hermitian psd, any trace)."""
    w = algebra.as_matrix(w)
    if not algebra.is_hermitian(w):
        raise NotHermitianError("density matrices must be Hermitian")
    return point_from_cochart(w)


def pure_state_point(psi) -> SubspacePoint:
    """The state point of a unit ray: density psi psi* / <psi, psi>."""
    psi = np.asarray(psi, dtype=complex).reshape(-1, 1)
    nrm2 = float(np.vdot(psi, psi).real)
    if nrm2 == 0.0:
        raise ValueError("pure states need a nonzero vector")
    return point_from_cochart(psi @ psi.conj().T / nrm2)


def standard_obstate(a, w, strong: bool = True) -> Obstate:
    """The obstate of (Hermitian a, density w) in the reference frame (0, inf)."""
    a = algebra.as_matrix(a)
    n = a.shape[0]
    return new_obstate(point_from_chart(a), state_from_density(w),
                       zero_point(n), infinity_point(n), strong)


def expectation(o: Obstate) -> complex:
    """trace of the operator cross-ratio CR(A, W; A0, Winf).

    Equals trace(w a) in the standard frame; invariant under transport
    of all four slots by any automorphism of (S, tau).
    """
    return kernel(o.ref_observable, o.ref_state, o.state, o.observable).trace


def transport(o: Obstate, g: grassmann.ProjectiveMap) -> Obstate:
    """Move every slot of an obstate by a projective map (revalidating)."""
    return new_obstate(apply_map(g, o.observable), apply_map(g, o.state),
                       apply_map(g, o.ref_observable), apply_map(g, o.ref_state),
                       strong=False if not o.strong else _still_strong(o, g))


def _still_strong(o: Obstate, g: grassmann.ProjectiveMap) -> bool:
    moved_ref = apply_map(g, o.ref_observable)
    moved_inf = apply_map(g, o.ref_state)
    return (hermitian.membership(moved_ref, "RNS")
            and moved_inf == hermitian.alpha(moved_ref))


# --- strong-obstate normal form ------------------------------------------------

def _strong_normal_form(o: Obstate) -> tuple[np.ndarray, np.ndarray]:
    """Chart pair (a, w) after the unitary transport sending A0 -> 0.

    The transport commutes with alpha and preserves R, so it carries
    (A0, Winf) to (0, infinity) exactly; the observable then has a
    Hermitian chart value and the state a Hermitian graph value.
    """
    if not o.strong:
        raise NotStrongError("second moments need a strong obstate")
    g = hermitian.transport_to_zero(o.ref_observable)
    a = grassmann.chart_repr(apply_map(g, o.observable))
    w = grassmann.cochart_repr(apply_map(g, o.state))
    if not algebra.is_hermitian(a, tol=1e-7):
        raise NotHermitianError("transported observable has no Hermitian chart value")
    if not algebra.is_hermitian(w, tol=1e-7):
        raise NotHermitianError("transported state has no Hermitian graph value")
    return (a + a.conj().T) / 2, (w + w.conj().T) / 2


def variance(o: Obstate) -> float:
    """trace(a w a) - trace(a w)^2 in the tangent algebra at A0."""
    a, w = _strong_normal_form(o)
    second = np.trace(a @ w @ a).real
    first = np.trace(a @ w).real
    return float(second - first * first)


def distribution(o: Obstate) -> list[tuple[float, float]]:
    """Spectral values of the observable with their state weights.

    Eigendecomposes the transported observable a = sum lambda_i P_i and
    returns the pairs (lambda_i, trace(w P_i)), nearly-equal eigenvalues
    merged; weights sum to trace(w).
    """
    a, w = _strong_normal_form(o)
    vals, vecs = np.linalg.eigh(a)
    scale = 1.0 + float(np.abs(vals).max(initial=0.0))
    out: list[tuple[float, float]] = []
    i = 0
    while i < len(vals):
        j = i + 1
        while j < len(vals) and vals[j] - vals[j - 1] <= EIG_CLUSTER_RTOL * scale:
            j += 1
        block = vecs[:, i:j]
        weight = float(np.trace(block.conj().T @ w @ block).real)
        value = float(vals[i:j].mean())
        out.append((value, weight))
        i = j
    return out


# --- purity, positivity, cyclic order --------------------------------------------

def is_pure(o: Obstate) -> bool:
    """Whether (W, Winf) is a rank-one pair."""
    return hermitian.is_rank_one_pair(o.state, o.ref_state)


def _ordered(a: SubspacePoint, b: SubspacePoint, c: SubspacePoint) -> bool:
    try:
        return hermitian.cyclic_triple(a, b, c)
    except (NotInChartError, NotTransversalError, NotHermitianError):
        # an endpoint on the horizon of the cut chart is not inside any
        # of its intervals
        return False


def is_positive(o: Obstate) -> bool:
    """Whether (A0, W, Winf) is cyclically ordered."""
    return _ordered(o.ref_observable, o.state, o.ref_state)


def is_cyclically_ordered(o: Obstate) -> bool:
    """Whether (A0, A, Winf) and (A0, W, Winf) are both cyclically ordered.

    Both the observable and the state lie on the arc from A0 to Winf, so
    the pair (A0, Winf) does not separate (A, W) and the expectation
    value is nonnegative.  (Listing the first triple with A and A0
    exchanged would put A on the opposite arc and flip the sign of the
    expectation; the order used here is the one that makes the
    positivity consequence true.)
    """
    return (_ordered(o.ref_observable, o.observable, o.ref_state)
            and _ordered(o.ref_observable, o.state, o.ref_state))


# --- pure-state expectation through the intrinsic line ----------------------------

def _completion_parameter(fam: "hermitian.LineFamily", target: SubspacePoint):
    """Parameter t where the line meets the non-transversality locus of target.

    For a rank-one direction the determinant det [line(t) | target] is
    affine in t, so two samples determine the unique root (possibly at
    t = INF).  A scan of the normalized smallest singular value over the
    closed line guards the uniqueness claim: an identically degenerate
    determinant, or a second near-zero well away from the root, raises
    NonUniqueCompletionError.
    """
    def margin(t) -> float:
        s = np.linalg.svd(np.hstack([fam.raw_basis(t), target.basis]),
                          compute_uv=False)
        return float(s[-1] / s[0])

    cols0 = np.hstack([fam.raw_basis(0.0), target.basis])
    cols1 = np.hstack([fam.raw_basis(1.0), target.basis])
    d0 = np.linalg.det(cols0)
    d1 = np.linalg.det(cols1)
    scale = max(abs(d0), abs(d1))
    # Hadamard bound keeps the degeneracy threshold scale-free: raw line
    # bases are not normalized, so their determinants carry the chart size.
    hadamard = max(float(np.prod(np.linalg.norm(c, axis=0))) for c in (cols0, cols1))
    if scale < 1e-12 * max(hadamard, 1e-300):
        raise NonUniqueCompletionError(
            "the non-transversality locus contains the whole line")
    slope = d1 - d0
    if abs(slope) < 1e-12 * scale:
        root = INF
    else:
        z = -d0 / slope
        if abs(z.imag) > 1e-6 * (1.0 + abs(z.real)):
            raise NonUniqueCompletionError(
                "no real point of the line meets the non-transversality locus")
        root = float(z.real)
    if margin(root) > COMPLETION_TOL:
        raise NonUniqueCompletionError(
            "completion-point refinement did not converge")  # pragma: no cover
    # scan the closed line for stray minima inconsistent with affineness
    grid = [float(np.tan(th)) for th in np.linspace(-1.5407, 1.5407, 41)]
    grid.append(INF)
    for t in grid:
        if margin(t) < COMPLETION_TOL and not _same_parameter(t, root):
            raise NonUniqueCompletionError(
                "several non-transversal points found on the line")
    return root


def _same_parameter(s, t) -> bool:
    if is_inf(s) or is_inf(t):
        # large finite scan parameters crowd the horizon point
        big = 1e5
        s_big = is_inf(s) or abs(s) > big
        t_big = is_inf(t) or abs(t) > big
        return s_big and t_big
    return abs(s - t) <= 1e-4 * (1.0 + abs(s) + abs(t))


def pure_expectation(o: Obstate):
    """Expectation of a pure obstate as a classical 4-point cross-ratio.

    Builds the intrinsic line through (W, Winf), locates the unique
    points a, a0 where the line leaves the affine neighborhoods of A
    and A0, and returns CR(a, W; a0, Winf) of the four line parameters
    (W at 1, Winf at 0).  Agrees with expectation(o) whenever the
    latter's trace is real.
    """
    if not is_pure(o):
        raise NotPureError("pure_expectation needs a rank-one (W, Winf) pair")
    fam = hermitian.line_family(o.state, o.ref_state)
    t_a = _completion_parameter(fam, o.observable)
    t_a0 = _completion_parameter(fam, o.ref_observable)
    return classical_cr(t_a, 1.0, t_a0, 0.0)


# --- JSON ------------------------------------------------------------------------

def _point_from_json(obj, role: str, n: int | None = None) -> SubspacePoint:
    if isinstance(obj, str):
        if n is None:
            raise ValueError(f"{role}: named points need n known from another slot")
        if obj == "zero":
            return zero_point(n)
        if obj == "infinity":
            return infinity_point(n)
        raise ValueError(f"{role}: unknown named point {obj!r}")
    if isinstance(obj, dict):
        if "chart" in obj:
            return point_from_chart(algebra.matrix_from_json(obj["chart"]))
        if "density" in obj:
            return state_from_density(algebra.matrix_from_json(obj["density"]))
        if "basis_re" in obj:
            return grassmann.point_from_json(obj)
    raise ValueError(f"{role}: expected a chart/density/basis point object "
                     "or the names 'zero'/'infinity'")


def obstate_from_json(obj: dict) -> Obstate:
    """Build an obstate from {"A":..., "W":..., "A0":..., "Winf":..., "strong":...}.

    Point slots accept {"chart": matrix}, {"density": matrix}, a raw
    basis object, or (for the reference slots) "zero" / "infinity".
    """
    A = _point_from_json(obj["A"], "A")
    return new_obstate(A,
                       _point_from_json(obj["W"], "W", A.n),
                       _point_from_json(obj["A0"], "A0", A.n),
                       _point_from_json(obj["Winf"], "Winf", A.n),
                       bool(obj.get("strong", True)))


def _scalar_to_json(v):
    if is_inf(v):
        return "infinity"
    v = complex(v)
    if abs(v.imag) <= 1e-12 * (1.0 + abs(v)):
        return v.real
    return {"re": v.real, "im": v.imag}


def report(o: Obstate) -> dict:
    """The full dictionary for one obstate, JSON-ready."""
    out: dict = {"expectation": _scalar_to_json(expectation(o))}
    if o.strong:
        out["variance"] = variance(o)
        out["distribution"] = [[v, w] for v, w in distribution(o)]
    pure = is_pure(o)
    out["pure"] = pure
    out["positive"] = is_positive(o)
    out["cyclically_ordered"] = is_cyclically_ordered(o)
    if pure:
        try:
            out["pure_expectation"] = _scalar_to_json(pure_expectation(o))
        except NonUniqueCompletionError as exc:
            out["pure_expectation_error"] = str(exc)
    return out
