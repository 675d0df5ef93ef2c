"""Normalized spectral profiles in the rescaled dimensionless frequency z.

A profile is a complex amplitude F(z) = f(z) * exp(i * psi(z)) with
``integral |F|^2 dz = 1``.  z measures the offset from the carrier in units
of the envelope width, so every profile here peaks at z = 0.  Two envelope
families are supported, each with a linear or quadratic spectral phase:

* Gaussian:          f(z) = (2*pi)**-0.25 * exp(-z**2/4)
* Gaussian-enveloped frequency comb: teeth of relative width 1/sigma_tilde
  spaced d_tilde apart under the same Gaussian envelope, normalized through
  a Jacobi theta_3 factor.

Phase conventions (z0 / delta_z0 are carried inside the profile):

* linear:    psi(z) = -phi_tilde * (z + z0)
* quadratic: psi(z) = -phi_tilde**2 * (z + z0)**2   (combs use delta_z0)

Only phase *differences* enter overlap integrals, so the constant part of
the linear phase is physically inert; it is kept for evaluate() fidelity.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .errors import NonConvergenceError, ValidityError

__all__ = [
    "ProfileKind",
    "Profile",
    "DimensionfulFrame",
    "gaussian_linear",
    "gaussian_quadratic",
    "comb",
    "jacobi_theta3",
    "evaluate",
    "modulus",
    "phase",
    "phase_difference",
    "normalization",
    "comb_tooth_positions",
]

_GAUSS_NORM = (2.0 * math.pi) ** -0.25

# Comb construction preconditions: teeth must be well separated and much
# narrower than the envelope, otherwise the theta_3 normalization (which
# neglects tooth cross-overlap) is invalid.
MIN_TOOTH_SEPARATION = 10.0   # d_tilde * sigma_tilde
MIN_SIGMA_TILDE = 5.0

# Envelope weight allowed to be dropped by the tooth-index truncation.
_TRUNCATION_WEIGHT = 1e-14


class ProfileKind(enum.Enum):
    GAUSSIAN_LINEAR = "gaussian_linear"
    GAUSSIAN_QUADRATIC = "gaussian_quadratic"
    COMB_LINEAR = "comb_linear"
    COMB_QUADRATIC = "comb_quadratic"

    @property
    def is_comb(self) -> bool:
        return self in (ProfileKind.COMB_LINEAR, ProfileKind.COMB_QUADRATIC)

    @property
    def has_quadratic_phase(self) -> bool:
        return self in (ProfileKind.GAUSSIAN_QUADRATIC, ProfileKind.COMB_QUADRATIC)


@dataclass(frozen=True)
class DimensionfulFrame:
    """Carrier frequency and spectral width in rad/s.

    The narrowband condition sigma/omega0 << 1 underlies the extension of
    overlap integrals to the whole real line; it is enforced here.
    """

    omega0: float
    sigma: float
    max_relative_width: float = 1e-2

    def __post_init__(self):
        if not (self.omega0 > 0 and math.isfinite(self.omega0)):
            raise ValidityError(f"omega0 must be positive and finite, got {self.omega0!r}")
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise ValidityError(f"sigma must be positive and finite, got {self.sigma!r}")
        if self.sigma / self.omega0 >= self.max_relative_width:
            raise ValidityError(
                f"sigma/omega0 = {self.sigma / self.omega0:.3e} violates the "
                f"narrowband condition (< {self.max_relative_width:g})")

    @property
    def z0(self) -> float:
        """Dimensionless carrier position omega0/sigma."""
        return self.omega0 / self.sigma


@dataclass(frozen=True)
class Profile:
    """Immutable parameter record for one normalized spectral amplitude."""

    kind: ProfileKind
    phi_tilde: float = 0.0
    z0: float = 0.0
    sigma_tilde: float = 0.0      # comb kinds only: envelope/tooth width ratio
    d_tilde: float = 0.0          # comb kinds only: tooth spacing
    delta_z0: float = 0.0         # quadratic comb only: phase-center offset
    n_max: int = 0                # comb tooth truncation index
    _teeth: np.ndarray = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        if self.kind.is_comb:
            if self.sigma_tilde < MIN_SIGMA_TILDE:
                raise ValidityError(
                    f"sigma_tilde = {self.sigma_tilde:g} < {MIN_SIGMA_TILDE:g}; the "
                    "envelope must be much wider than a single tooth")
            if self.d_tilde * self.sigma_tilde < MIN_TOOTH_SEPARATION:
                raise ValidityError(
                    f"d_tilde*sigma_tilde = {self.d_tilde * self.sigma_tilde:g} < "
                    f"{MIN_TOOTH_SEPARATION:g}; comb teeth are not well separated")
            if self.n_max < 1:
                raise ValidityError("comb profiles need n_max >= 1")
            teeth = np.arange(-self.n_max, self.n_max + 1, dtype=float) * self.d_tilde
            object.__setattr__(self, "_teeth", teeth)
            # Truncation must actually reach the target dropped weight.
            dropped = math.exp(-0.5 * ((self.n_max + 1) * self.d_tilde) ** 2)
            if dropped > _TRUNCATION_WEIGHT:
                raise NonConvergenceError(
                    f"n_max = {self.n_max} keeps only envelope weight down to "
                    f"{dropped:.2e} > {_TRUNCATION_WEIGHT:g}")

    # -- geometry -----------------------------------------------------------

    @property
    def z_extent(self) -> float:
        """Half-width of the truncation domain; |F| tails fall below ~1e-21
        of the peak outside [-z_extent, z_extent]."""
        if not self.kind.is_comb:
            return 10.0
        return max(10.0, self.n_max * self.d_tilde + 10.0 / self.sigma_tilde + 10.0)

    @property
    def norm_constant(self) -> float:
        if not self.kind.is_comb:
            return _GAUSS_NORM
        s2 = self.sigma_tilde**2
        q = math.exp(-0.5 * (s2 / (1.0 + s2)) * self.d_tilde**2)
        return ((1.0 + s2) / (2.0 * math.pi)) ** 0.25 / math.sqrt(jacobi_theta3(q))


def _auto_n_max(d_tilde: float) -> int:
    # Envelope weight of tooth n is ~exp(-n^2 d^2 / 2); keep everything down
    # to _TRUNCATION_WEIGHT with one tooth of margin.
    n = math.sqrt(2.0 * math.log(1.0 / _TRUNCATION_WEIGHT)) / d_tilde
    return int(math.ceil(n)) + 1


def gaussian_linear(phi_tilde: float, z0: float = 0.0) -> Profile:
    """Gaussian envelope with linear spectral phase -phi_tilde*(z+z0)."""
    return Profile(ProfileKind.GAUSSIAN_LINEAR, phi_tilde=phi_tilde, z0=z0)


def gaussian_quadratic(phi_tilde: float, z0: float = 0.0) -> Profile:
    """Gaussian envelope with quadratic spectral phase -phi_tilde**2*(z+z0)**2."""
    return Profile(ProfileKind.GAUSSIAN_QUADRATIC, phi_tilde=phi_tilde, z0=z0)


def comb(sigma_tilde: float, d_tilde: float, phi_tilde: float = 0.0,
         phase_kind: str = "linear", delta_z0: float = 0.0,
         n_max: int | None = None, z0: float = 0.0) -> Profile:
    """Gaussian-enveloped frequency comb.

    Parameters
    ----------
    sigma_tilde : envelope width over tooth width (>= 5).
    d_tilde : tooth spacing in envelope-width units (d_tilde*sigma_tilde >= 10).
    phi_tilde : spectral phase strength.
    phase_kind : "linear" or "quadratic".
    delta_z0 : center offset of the quadratic phase parabola.
    n_max : tooth truncation index; chosen automatically so the dropped
        envelope weight is below 1e-14 when omitted.
    """
    if phase_kind == "linear":
        kind = ProfileKind.COMB_LINEAR
    elif phase_kind == "quadratic":
        kind = ProfileKind.COMB_QUADRATIC
    else:
        raise ValidityError(f"unknown phase_kind {phase_kind!r}")
    if n_max is None:
        n_max = _auto_n_max(d_tilde)
    return Profile(kind, phi_tilde=phi_tilde, z0=z0, sigma_tilde=sigma_tilde,
                   d_tilde=d_tilde, delta_z0=delta_z0, n_max=n_max)


def jacobi_theta3(q: float, tol: float = 1e-16) -> float:
    """theta_3(0, q) = 1 + 2*sum_{n>=1} q**(n*n), truncated when a term < tol.

    Valid for the nome range 0 <= q < 1.
    """
    if not 0.0 <= q < 1.0:
        raise ValueError(f"theta_3 nome must satisfy 0 <= q < 1, got {q!r}")
    total = 1.0
    n = 1
    while True:
        term = 2.0 * q ** (n * n)
        total += term
        if term < tol:
            return total
        n += 1


def comb_tooth_positions(profile: Profile) -> np.ndarray:
    """Tooth centers n*d_tilde of a comb profile, for |n| <= n_max."""
    if not profile.kind.is_comb:
        raise ValidityError("tooth positions are defined for comb profiles only")
    return profile._teeth.copy()


def modulus(profile: Profile, z):
    """|F(z)|; accepts scalars or arrays and matches the input shape."""
    scalar = np.ndim(z) == 0
    if not profile.kind.is_comb:
        if scalar:
            return _GAUSS_NORM * math.exp(-0.25 * float(z) ** 2)
        z = np.asarray(z, dtype=float)
        return _GAUSS_NORM * np.exp(-0.25 * z * z)
    c = profile.norm_constant
    s2over4 = 0.25 * profile.sigma_tilde**2
    teeth = profile._teeth
    if scalar:
        zf = float(z)
        acc = 0.0
        for t in teeth:
            e = s2over4 * (zf - t) ** 2
            if e < 60.0:
                acc += math.exp(-e)
        return c * math.exp(-0.25 * zf * zf) * acc
    z = np.asarray(z, dtype=float)
    tooth_sum = np.exp(-s2over4 * (z[..., None] - teeth) ** 2).sum(axis=-1)
    return c * np.exp(-0.25 * z * z) * tooth_sum


def phase(profile: Profile, z):
    """Spectral phase psi(z); accepts scalars or arrays."""
    scalar = np.ndim(z) == 0
    z = float(z) if scalar else np.asarray(z, dtype=float)
    if profile.kind is ProfileKind.GAUSSIAN_LINEAR or profile.kind is ProfileKind.COMB_LINEAR:
        return -profile.phi_tilde * (z + profile.z0)
    center = profile.delta_z0 if profile.kind is ProfileKind.COMB_QUADRATIC else profile.z0
    return -profile.phi_tilde**2 * (z + center) ** 2


def evaluate(profile: Profile, z):
    """Complex amplitude F(z) = |F(z)| * exp(i*psi(z))."""
    m = modulus(profile, z)
    p = phase(profile, z)
    if np.ndim(z) == 0:
        return m * complex(math.cos(p), math.sin(p))
    return m * np.exp(1j * p)


def phase_difference(profile: Profile, chi: float, z_bar: float, z: float) -> float:
    """psi(chi*z + z_bar) - psi(z/chi), formed without the cancellation of
    large common terms.

    The direct difference loses ~z0*phi*eps of absolute phase accuracy for
    carriers at z0 ~ 1e6, which is enough to spoil 1e-12 quadrature; here
    the linear case drops z0 exactly and the quadratic case factors the
    difference of squares.
    """
    diff = (chi - 1.0 / chi) * z + z_bar
    if not profile.kind.has_quadratic_phase:
        return -profile.phi_tilde * diff
    center = profile.delta_z0 if profile.kind is ProfileKind.COMB_QUADRATIC else profile.z0
    total = (chi + 1.0 / chi) * z + z_bar + 2.0 * center
    return -profile.phi_tilde**2 * diff * total


def normalization(profile: Profile, tol: float = 1e-10) -> float:
    """Quadrature of |F|^2 over the truncation domain.

    Must come out as 1 within 1e-8 for any valid profile; the deviation
    measures the residual tooth cross-overlap neglected by the theta_3
    normalization plus tail truncation.
    """
    lim = profile.z_extent
    pts = list(profile._teeth) if profile.kind.is_comb else None
    val, err = quad(lambda x: modulus(profile, x) ** 2, -lim, lim,
                    epsabs=tol * 1e-2, epsrel=1e-12,
                    limit=max(200, 20 * (len(pts) if pts else 1)), points=pts)
    if err > tol:
        raise NonConvergenceError(
            f"normalization quadrature error {err:.2e} exceeds {tol:g}")
    return val
