import numpy as np
import pytest

from apline import algebra, grassmann, hermitian, obstate
from apline.crossratio import INF, is_inf
from apline.errors import (
    DimensionError,
    MembershipError,
    NotAntipodalError,
    NotPureError,
    NotStrongError,
    TransversalityError,
)

RNG = np.random.default_rng(11235)


def test_expectation_is_trace_wa_in_standard_frame():
    for n in (1, 2, 3):
        a = algebra.random_hermitian(n, RNG)
        w = algebra.random_density(n, RNG)
        o = obstate.standard_obstate(a, w)
        assert obstate.expectation(o) == pytest.approx(
            complex(np.trace(w @ a)), rel=1e-10, abs=1e-10)


def test_bundled_diag_example():
    o = obstate.standard_obstate(np.diag([1.0, -1.0]), np.diag([0.75, 0.25]))
    assert obstate.expectation(o) == pytest.approx(0.5)
    assert obstate.variance(o) == pytest.approx(0.75)
    dist = sorted(obstate.distribution(o))
    assert dist[0][0] == pytest.approx(-1.0)
    assert dist[0][1] == pytest.approx(0.25)
    assert dist[1][0] == pytest.approx(1.0)
    assert dist[1][1] == pytest.approx(0.75)


def test_pure_states_reduce_to_vector_expectation():
    n = 3
    a = algebra.random_hermitian(n, RNG)
    psi = RNG.standard_normal((n, 1)) + 1j * RNG.standard_normal((n, 1))
    psi /= np.linalg.norm(psi)
    o = obstate.new_obstate(
        grassmann.point_from_chart(a), obstate.pure_state_point(psi),
        grassmann.zero_point(n), grassmann.infinity_point(n))
    want = complex((psi.conj().T @ a @ psi)[0, 0])
    assert obstate.expectation(o) == pytest.approx(want, rel=1e-10, abs=1e-10)
    assert obstate.is_pure(o)


def test_mixed_state_is_not_pure():
    o = obstate.standard_obstate(np.eye(2), np.diag([0.5, 0.5]))
    assert not obstate.is_pure(o)
    with pytest.raises(NotPureError):
        obstate.pure_expectation(o)


def test_construction_validates_membership():
    n = 2
    skew = grassmann.point_from_chart(1j * np.eye(n))  # not tau-fixed
    w = obstate.state_from_density(np.diag([0.5, 0.5]))
    with pytest.raises(MembershipError, match="observable A"):
        obstate.new_obstate(skew, w, grassmann.zero_point(n),
                            grassmann.infinity_point(n))


def test_construction_validates_transversality():
    n = 2
    a = grassmann.point_from_chart(algebra.random_hermitian(n, RNG))
    w = obstate.state_from_density(np.diag([0.5, 0.5]))
    with pytest.raises(TransversalityError, match="A0 and Winf"):
        # both references at zero: the frame degenerates
        obstate.new_obstate(a, w, grassmann.zero_point(n),
                            grassmann.zero_point(n), strong=False)


def test_strong_needs_antipodal_reference():
    n = 2
    a = grassmann.point_from_chart(algebra.random_hermitian(n, RNG))
    w = obstate.state_from_density(np.diag([0.7, 0.3]))
    ref = grassmann.point_from_cochart(np.diag([1.0, 2.0]))  # not alpha(A0)
    with pytest.raises(NotAntipodalError):
        obstate.new_obstate(a, w, grassmann.zero_point(n), ref, strong=True)
    # the same data is a legal weak obstate
    o = obstate.new_obstate(a, w, grassmann.zero_point(n), ref, strong=False)
    assert not o.strong
    with pytest.raises(NotStrongError):
        obstate.variance(o)


def test_dimension_mismatch_rejected():
    a = grassmann.point_from_chart(np.zeros((2, 2)))
    w = obstate.state_from_density(np.eye(3) / 3.0)
    with pytest.raises(DimensionError):
        obstate.new_obstate(a, w, grassmann.zero_point(2),
                            grassmann.infinity_point(2))


def test_expectation_invariant_under_symplectic_transport():
    n = 3
    o = obstate.standard_obstate(algebra.random_hermitian(n, RNG),
                                 algebra.random_density(n, RNG))
    base = obstate.expectation(o)
    g = hermitian.aut_omega_random(n, RNG)
    o2 = obstate.transport(o, g)
    assert obstate.expectation(o2) == pytest.approx(base, rel=1e-8, abs=1e-8)


def test_variance_matches_second_moment():
    n = 3
    a = algebra.random_hermitian(n, RNG)
    w = algebra.random_density(n, RNG)
    o = obstate.standard_obstate(a, w)
    tr_aw = float(np.trace(w @ a).real)
    tr_awa = float(np.trace(a @ w @ a).real)
    assert obstate.variance(o) == pytest.approx(tr_awa - tr_aw ** 2, abs=1e-10)


def test_distribution_is_spectral_measure():
    lam = np.array([2.0, -1.0, 0.5])
    mu = np.array([0.5, 0.3, 0.2])
    o = obstate.standard_obstate(np.diag(lam), np.diag(mu))
    dist = obstate.distribution(o)
    assert len(dist) == 3
    got = {round(v, 9): w for v, w in dist}
    for l, m in zip(lam, mu):
        assert got[round(l, 9)] == pytest.approx(m)
    assert sum(w for _, w in dist) == pytest.approx(1.0)


def test_distribution_clusters_degenerate_eigenvalues():
    o = obstate.standard_obstate(np.eye(3), algebra.random_density(3, RNG))
    dist = obstate.distribution(o)
    assert len(dist) == 1
    assert dist[0][0] == pytest.approx(1.0)
    assert dist[0][1] == pytest.approx(1.0)
    assert obstate.variance(o) == pytest.approx(0.0, abs=1e-12)


def test_pure_expectation_agrees_with_kernel_trace():
    for n in (1, 2, 3):
        a = algebra.random_hermitian(n, RNG)
        psi = RNG.standard_normal((n, 1)) + 1j * RNG.standard_normal((n, 1))
        psi /= np.linalg.norm(psi)
        o = obstate.standard_obstate(a, psi @ psi.conj().T)
        pe = obstate.pure_expectation(o)
        ev = obstate.expectation(o)
        assert not is_inf(pe)
        assert float(pe) == pytest.approx(ev.real, rel=1e-7, abs=1e-7)


def test_pure_expectation_horizon_case():
    # <psi, a psi> = 0: the completing point on the observable line sits at
    # the reference A0 itself, i.e. coordinate 0 on the state line
    a = np.diag([1.0, -1.0])
    psi = np.array([[1.0], [1.0]]) / np.sqrt(2.0)
    o = obstate.standard_obstate(a, psi @ psi.conj().T)
    assert obstate.expectation(o) == pytest.approx(0.0, abs=1e-12)
    pe = obstate.pure_expectation(o)
    assert float(pe) == pytest.approx(0.0, abs=1e-8)


def test_positivity_flags():
    n = 2
    q = algebra.random_matrix(n, RNG)
    h = q @ q.conj().T + 0.1 * np.eye(n)
    w = algebra.random_psd(n, RNG) + 0.1 * np.eye(n)
    o = obstate.standard_obstate(h, w)
    assert obstate.is_cyclically_ordered(o)
    assert obstate.expectation(o).real >= -1e-12
    o2 = obstate.standard_obstate(-h, w)
    assert not obstate.is_cyclically_ordered(o2)


def test_report_and_json_roundtrip():
    payload = {
        "A": {"chart": [[1.0, 0.0], [0.0, -1.0]]},
        "W": {"density": [[0.75, 0.0], [0.0, 0.25]]},
        "A0": "zero",
        "Winf": "infinity",
        "strong": True,
    }
    o = obstate.obstate_from_json(payload)
    rep = obstate.report(o)
    assert rep["expectation"] == pytest.approx(0.5)
    assert rep["variance"] == pytest.approx(0.75)
    assert rep["pure"] is False
    assert rep["positive"] is True


def test_json_accepts_basis_points():
    basis = np.vstack([np.eye(2), np.zeros((2, 2))])  # the zero point
    payload = {
        "A": {"chart": [[1.0, 0.0], [0.0, 2.0]]},
        "W": {"density": [[0.5, 0.0], [0.0, 0.5]]},
        "A0": {"basis_re": basis.real.tolist(), "basis_im": basis.imag.tolist()},
        "Winf": "infinity",
    }
    o = obstate.obstate_from_json(payload)
    assert grassmann.point_eq(o.ref_observable, grassmann.zero_point(2))
    assert obstate.expectation(o) == pytest.approx(1.5)
