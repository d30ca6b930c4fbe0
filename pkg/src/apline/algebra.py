"""The matrix *-algebra A = M(n, C).

Products, involution, positivity order, normalized trace, homotope
products and associative-pair primitives, together with the numeric
tolerances and random samplers used throughout the package.

All functions are pure and operate on immutable-by-convention numpy
arrays (complex128); nothing here mutates its arguments.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DimensionError, SingularError

# Tolerances of the double-precision backend.  Dimensions stay small
# (n <= 16), which keeps conditioning mild enough for these to be safe.
TOL_EQ = 1e-9    # relative Frobenius tolerance for approximate equality
TOL_PSD = 1e-9   # eigenvalue floor for positivity, relative to ||a||
TOL_INV = 1e-10  # smallest/largest singular value ratio for invertibility


def as_matrix(a) -> np.ndarray:
    """Coerce to a square complex matrix (complex128, C-contiguous copy)."""
    m = np.array(a, dtype=complex)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    return m


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=complex)


def zero(n: int) -> np.ndarray:
    return np.zeros((n, n), dtype=complex)


def norm(a) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(a))


def almost_equal(a, b, tol: float = TOL_EQ) -> bool:
    """Relative Frobenius comparison: ||a - b|| <= tol * (1 + max(||a||, ||b||))."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    scale = 1.0 + max(norm(a), norm(b))
    return norm(a - b) <= tol * scale


def _check_same_dim(*mats) -> int:
    n = mats[0].shape[0]
    for m in mats[1:]:
        if m.shape[0] != n:
            raise DimensionError(f"dimension mismatch: {n} vs {m.shape[0]}")
    return n


def mul(a, b) -> np.ndarray:
    """Associative matrix product ab."""
    a, b = as_matrix(a), as_matrix(b)
    _check_same_dim(a, b)
    return a @ b


def adjoint(a) -> np.ndarray:
    """The involution a -> a* (conjugate transpose)."""
    return as_matrix(a).conj().T


def herm_decompose(a):
    """Split a = h + i k with h, k Hermitian; h = (a + a*)/2."""
    a = as_matrix(a)
    h = (a + a.conj().T) / 2
    k = (a - a.conj().T) / (2j)
    return h, k


def is_hermitian(a, tol: float = TOL_EQ) -> bool:
    a = as_matrix(a)
    return norm(a - a.conj().T) <= tol * (1.0 + norm(a))


def is_psd(a, tol: float = TOL_PSD) -> bool:
    """Positive semidefinite test.

    Non-Hermitian input returns False (the order lives on Herm(A) only;
    no silent symmetrization).  Eigenvalues above -tol * ||a|| count as
    nonnegative.
    """
    a = as_matrix(a)
    if not is_hermitian(a):
        return False
    evals = np.linalg.eigvalsh((a + a.conj().T) / 2)
    return bool(evals.min(initial=0.0) >= -tol * (1.0 + norm(a)))


def leq(a, b) -> bool:
    """The order of the Hermitian part: a <= b iff b - a is psd."""
    return is_psd(as_matrix(b) - as_matrix(a))


def is_invertible(a, tol: float = TOL_INV) -> bool:
    a = as_matrix(a)
    s = np.linalg.svd(a, compute_uv=False)
    return bool(s[-1] > tol * max(s[0], 1e-300))


def inverse(a) -> np.ndarray:
    a = as_matrix(a)
    if not is_invertible(a):
        raise SingularError("matrix is singular within tolerance")
    return np.linalg.inv(a)


def is_unitary(a, tol: float = TOL_EQ) -> bool:
    a = as_matrix(a)
    n = a.shape[0]
    eye = identity(n)
    scale = 1.0 + norm(a) ** 2
    return (norm(a.conj().T @ a - eye) <= tol * scale
            and norm(a @ a.conj().T - eye) <= tol * scale)


def trace_normalized(a) -> complex:
    """The trace normalized so a rank-one idempotent has trace 1.

    For M(n, C) that is the ordinary matrix trace; it is symmetric
    (trace(ab) = trace(ba)) and positive on psd elements.
    """
    return complex(np.trace(as_matrix(a)))


# --- homotopes ------------------------------------------------------------

def homotope_assoc(a, u, b) -> np.ndarray:
    """The u-homotope product a . b = aub."""
    a, u, b = as_matrix(a), as_matrix(u), as_matrix(b)
    _check_same_dim(a, u, b)
    return a @ u @ b


def homotope_lie(a, u, b) -> np.ndarray:
    """The u-homotope bracket [a, b] = aub - bua."""
    a, u, b = as_matrix(a), as_matrix(u), as_matrix(b)
    _check_same_dim(a, u, b)
    return a @ u @ b - b @ u @ a


def homotope_jordan(a, u, b) -> np.ndarray:
    """The u-homotope Jordan product (aub + bua)/2."""
    a, u, b = as_matrix(a), as_matrix(u), as_matrix(b)
    _check_same_dim(a, u, b)
    return (a @ u @ b + b @ u @ a) / 2


# --- associative pair (A, A) ----------------------------------------------

class PairElement(NamedTuple):
    """An element (e+, e-) of the associative pair (A, A)."""
    plus: np.ndarray
    minus: np.ndarray


def pair_triple(x, y, z) -> np.ndarray:
    """The triple product <xyz> of the pair (A, A): plain xyz."""
    x, y, z = as_matrix(x), as_matrix(y), as_matrix(z)
    _check_same_dim(x, y, z)
    return x @ y @ z


def q_operator_invertible(x) -> bool:
    """Invertibility of y -> xyx.

    For a matrix algebra Q_x = L_x R_x is invertible exactly when x is.
    """
    return is_invertible(x)


def is_pair_idempotent(e: PairElement, tol: float = TOL_EQ) -> bool:
    """Check <e+ e- e+> = e+ and <e- e+ e-> = e-."""
    p, m = as_matrix(e.plus), as_matrix(e.minus)
    _check_same_dim(p, m)
    return (almost_equal(p @ m @ p, p, tol=tol)
            and almost_equal(m @ p @ m, m, tol=tol))


# --- JSON encoding ---------------------------------------------------------
# Repo-wide matrix encoding: {"n": int, "re": [[..]], "im": [[..]]}, row-major.

def matrix_to_json(a) -> dict:
    a = as_matrix(a)
    return {
        "n": a.shape[0],
        "re": a.real.tolist(),
        "im": a.imag.tolist(),
    }


def matrix_from_json(obj) -> np.ndarray:
    """Decode {"n", "re", "im"} (im optional) or a plain nested real list."""
    if isinstance(obj, (list, tuple)):
        m = np.array(obj, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionError(f"matrix JSON must be square, got {m.shape}")
    else:
        n = int(obj["n"])
        re = np.array(obj["re"], dtype=float)
        im = np.array(obj.get("im", np.zeros((n, n))), dtype=float)
        if re.shape != (n, n) or im.shape != (n, n):
            raise DimensionError(
                f"matrix JSON claims n={n} but carries shapes {re.shape}/{im.shape}")
        m = re + 1j * im
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix JSON entries must be finite")
    return m


# --- random samplers -------------------------------------------------------

def rng_from(seed_or_rng) -> np.random.Generator:
    """Accept a Generator, an int seed, or None (fresh entropy)."""
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return np.random.default_rng(seed_or_rng)


def random_matrix(n: int, rng) -> np.ndarray:
    """Complex Ginibre draw: independent standard complex Gaussian entries."""
    rng = rng_from(rng)
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)


def random_hermitian(n: int, rng) -> np.ndarray:
    a = random_matrix(n, rng)
    return (a + a.conj().T) / 2


def random_invertible(n: int, rng, max_tries: int = 100) -> np.ndarray:
    rng = rng_from(rng)
    for _ in range(max_tries):
        a = random_matrix(n, rng)
        if is_invertible(a):
            return a
    raise SingularError("could not draw an invertible matrix")  # pragma: no cover


def random_unitary(n: int, rng) -> np.ndarray:
    """Haar-ish unitary: QR of a Ginibre matrix with phases normalized."""
    rng = rng_from(rng)
    q, r = np.linalg.qr(random_matrix(n, rng))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_psd(n: int, rng) -> np.ndarray:
    c = random_matrix(n, rng)
    return c @ c.conj().T


def random_density(n: int, rng) -> np.ndarray:
    """Random density matrix: normalized Wishart (psd, trace one, full rank a.s.)."""
    w = random_psd(n, rng)
    return w / np.trace(w).real
