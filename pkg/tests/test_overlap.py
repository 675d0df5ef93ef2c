import math

import numpy as np
import pytest

from gravpulse.analytic import gaussian_linear_closed
from gravpulse.errors import ValidityError
from gravpulse.overlap import (SubPeak, evaluate_overlap, lambda_pure,
                               overlap_mixed, overlap_multipeak, overlap_pure)
from gravpulse.profiles import comb, gaussian_linear, gaussian_quadratic, modulus


@pytest.mark.parametrize("profile", [
    gaussian_linear(1.5),
    gaussian_quadratic(0.8, z0=3.0),
    comb(10.0, 2.0, phi_tilde=1.0),
    comb(10.0, 2.0, phi_tilde=0.7, phase_kind="quadratic", delta_z0=0.4),
])
def test_flat_spacetime_fixed_point(profile):
    res = evaluate_overlap(profile, 1.0, 0.0)
    assert res.delta_p == pytest.approx(1.0, abs=1e-10)
    assert res.delta_m == pytest.approx(1.0, abs=1e-10)
    assert abs(res.lambda_p - 1.0) < 1e-10


def test_gaussian_linear_matches_closed_form():
    chi, phi, zb = 1.05, 2.0, 0.0
    lam = lambda_pure(gaussian_linear(phi), chi, zb, tol=1e-12)
    dp_c, dm_c = gaussian_linear_closed(chi, phi, zb)
    assert abs(lam) == pytest.approx(dp_c, rel=1e-8)
    dm = overlap_mixed(gaussian_linear(phi), chi, zb, tol=1e-12)
    assert dm == pytest.approx(dm_c, rel=1e-8)


def test_mixed_gaussian_benchmark_value():
    chi = 1.05
    dm = overlap_mixed(gaussian_linear(0.0), chi, 0.0, tol=1e-12)
    assert dm == pytest.approx(math.sqrt(2.0) * chi / math.sqrt(1.0 + chi**4), rel=1e-8)


def test_conjugation_symmetry():
    chi, zb = 1.08, 0.7
    lam_plus = lambda_pure(gaussian_linear(1.3), chi, zb)
    lam_minus = lambda_pure(gaussian_linear(-1.3), chi, zb)
    assert lam_plus == pytest.approx(lam_minus.conjugate(), rel=1e-10)


def test_mixed_invariant_under_phase_sign():
    chi, zb = 1.04, -0.5
    assert overlap_mixed(gaussian_quadratic(1.1, z0=4.0), chi, zb) == pytest.approx(
        overlap_mixed(gaussian_quadratic(-1.1, z0=4.0), chi, zb), rel=1e-12)


def test_disjoint_supports():
    assert overlap_pure(gaussian_linear(0.5), 1.0, 25.0) < 1e-6
    assert overlap_mixed(gaussian_linear(0.5), 1.0, 25.0) < 1e-6


def test_ordering_and_unit_bound_random():
    rng = np.random.default_rng(7)
    kinds = ("gl", "gq", "cl", "cq")
    for _ in range(120):
        kind = kinds[rng.integers(0, 4)]
        chi = rng.uniform(0.9, 1.1)
        zb = rng.uniform(-3.0, 3.0)
        if kind == "gl":
            p = gaussian_linear(rng.uniform(-3, 3))
        elif kind == "gq":
            p = gaussian_quadratic(rng.uniform(0, 2), z0=rng.uniform(0, 10))
        elif kind == "cl":
            p = comb(10.0, 2.0, phi_tilde=rng.uniform(-2, 2))
        else:
            p = comb(10.0, 2.0, phi_tilde=rng.uniform(0, 1.5),
                     phase_kind="quadratic", delta_z0=rng.uniform(-1, 1))
        res = evaluate_overlap(p, chi, zb)
        assert 0.0 <= res.delta_p <= res.delta_m + 1e-9
        assert res.delta_m <= 1.0 + 1e-9
        assert res.delta_p == abs(res.lambda_p)


def test_invalid_inputs():
    with pytest.raises(ValidityError):
        lambda_pure(gaussian_linear(0.0), -1.0, 0.0)
    with pytest.raises(ValidityError):
        overlap_mixed(gaussian_linear(0.0), 1.0, 0.0, tol=0.0)


# -- multi-peak form -----------------------------------------------------------


def test_multipeak_unit_shape_reduces_to_plain_overlap():
    prof = gaussian_linear(0.9)
    env = lambda y: modulus(prof, y)
    peaks = [SubPeak(center=0.0, width=1.0, shape=lambda u: 1.0)]
    chi, zb = 1.05, 0.3
    dp, dm = overlap_multipeak(env, peaks, chi, zb,
                               envelope_phase=lambda y: -0.9 * y)
    res = evaluate_overlap(prof, chi, zb)
    assert dp == pytest.approx(res.delta_p, abs=1e-9)
    assert dm == pytest.approx(res.delta_m, abs=1e-9)


def test_multipeak_two_subpeaks_flat_spacetime():
    # two Gaussian sub-peaks under a wide envelope, normalized numerically
    width = 0.1
    centers = (-1.0, 1.0)
    env = lambda y: math.exp(-0.25 * y * y)
    shape = lambda u: math.exp(-0.25 * u * u)
    peaks = [SubPeak(c, width, shape) for c in centers]

    from scipy.integrate import quad
    raw = lambda y: env(y) * sum(pk(y) for pk in peaks)
    norm, _ = quad(lambda y: raw(y) ** 2, -12, 12, points=centers, epsabs=1e-13)
    scale = 1.0 / math.sqrt(norm)
    dp, dm = overlap_multipeak(lambda y: scale * env(y), peaks, 1.0, 0.0)
    assert dp == pytest.approx(1.0, abs=1e-9)
    assert dm == pytest.approx(1.0, abs=1e-9)


def test_multipeak_comb_agrees_with_comb_profile():
    sig, d = 10.0, 2.0
    prof = comb(sig, d, phi_tilde=0.8)
    c = prof.norm_constant
    env = lambda y: c * math.exp(-0.25 * y * y)
    shape = lambda u: math.exp(-0.25 * u * u)
    peaks = [SubPeak(center=n * d, width=1.0 / sig, shape=shape)
             for n in range(-prof.n_max, prof.n_max + 1)]
    chi, zb = 1.02, 0.15
    dp, dm = overlap_multipeak(env, peaks, chi, zb,
                               envelope_phase=lambda y: -0.8 * y)
    res = evaluate_overlap(prof, chi, zb)
    assert dp == pytest.approx(res.delta_p, abs=1e-7)
    assert dm == pytest.approx(res.delta_m, abs=1e-7)


def test_multipeak_normalization_guard():
    env = lambda y: math.exp(-0.25 * y * y)   # not normalized
    peaks = [SubPeak(0.0, 1.0, lambda u: 1.0)]
    with pytest.raises(ValidityError):
        overlap_multipeak(env, peaks, 1.0, 0.0)
