"""Initial states: deformed coherent field states and the two-level atom."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import logsumexp

from .algebra import (
    MAX_TERMS,
    DeformationSpec,
    _check_domain,
    _log_terms,
    _series_log_terms,
    _suffix_tails,
    convergence_radius,
)

__all__ = [
    "FieldAmplitude",
    "AtomInit",
    "PhotonDistribution",
    "build_coherent_state",
    "mean_photon_number",
    "photon_number_variance",
    "distribution_width",
]

DEFAULT_TAIL_TOL = 1e-12


def _reduce_phase(theta: float) -> float:
    """Map an angle into (-pi, pi]."""
    r = math.remainder(theta, 2.0 * math.pi)
    return math.pi if r == -math.pi else r


@dataclass(frozen=True)
class FieldAmplitude:
    """Coherent amplitude z = magnitude * exp(i * phase)."""

    magnitude: float
    phase: float = 0.0

    def __post_init__(self):
        if not (self.magnitude >= 0 and math.isfinite(self.magnitude)):
            raise ValueError(f"|z| must be finite and >= 0, got {self.magnitude}")
        object.__setattr__(self, "magnitude", float(self.magnitude))
        object.__setattr__(self, "phase", _reduce_phase(float(self.phase)))

    @classmethod
    def from_intensity(cls, z_sq: float, phase: float = 0.0):
        if z_sq < 0:
            raise ValueError(f"|z|^2 must be >= 0, got {z_sq}")
        return cls(math.sqrt(z_sq), phase)

    @property
    def intensity(self) -> float:
        return self.magnitude ** 2

    @property
    def value(self) -> complex:
        return self.magnitude * complex(math.cos(self.phase), math.sin(self.phase))


@dataclass(frozen=True)
class AtomInit:
    """Atomic state alpha*exp(i*phi)|e> + beta|g> with real alpha, beta."""

    alpha: float
    beta: float
    phi: float = 0.0

    def __post_init__(self):
        for name in ("alpha", "beta"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        if abs(self.alpha ** 2 + self.beta ** 2 - 1.0) > 1e-12:
            raise ValueError("alpha^2 + beta^2 must equal 1")

    @classmethod
    def from_alpha_sq(cls, alpha_sq: float, phi: float = 0.0):
        if not 0.0 <= alpha_sq <= 1.0:
            raise ValueError(f"alpha^2 must lie in [0, 1], got {alpha_sq}")
        return cls(math.sqrt(alpha_sq), math.sqrt(1.0 - alpha_sq), phi)

    @classmethod
    def excited(cls):
        return cls(1.0, 0.0)

    @classmethod
    def ground(cls):
        return cls(0.0, 1.0)


@dataclass(frozen=True, eq=False)
class PhotonDistribution:
    """Truncated Fock coefficients Q_0..Q_N of a field state.

    ``tail_mass`` is the probability discarded by truncation, before the
    retained coefficients were renormalized.  ``moduli`` are the |Q_n|; when
    given they are kept exactly, so that statistics do not depend on the
    phase of the amplitude even at the last bit.
    """

    coefficients: np.ndarray
    spec: DeformationSpec
    amplitude: FieldAmplitude
    tail_mass: float = 0.0
    moduli: np.ndarray | None = field(default=None, repr=False)
    probabilities: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        coeffs = np.asarray(self.coefficients, dtype=complex)
        coeffs.setflags(write=False)
        object.__setattr__(self, "coefficients", coeffs)
        mod = np.abs(coeffs) if self.moduli is None else np.array(self.moduli, dtype=float)
        if mod.shape != coeffs.shape:
            raise ValueError("moduli and coefficients differ in length")
        mod.setflags(write=False)
        object.__setattr__(self, "moduli", mod)
        probs = mod ** 2
        probs.setflags(write=False)
        object.__setattr__(self, "probabilities", probs)

    @property
    def n_max(self) -> int:
        return len(self.coefficients) - 1


def _distribution_log_probs(spec, x, tail_tol, max_terms=MAX_TERMS):
    """Normalized log probabilities of the deformed Poisson law, truncated
    so that the discarded mass is <= tail_tol.  Returns (logp, tail_mass)."""
    logt, log_total = _series_log_terms(spec, x, tail_tol, max_terms)
    probs = np.exp(logt - log_total)
    tails = _suffix_tails(probs)
    n_max = int(np.argmax(tails <= tail_tol))
    return logt[: n_max + 1] - log_total, float(tails[n_max])


def build_coherent_state(spec: DeformationSpec, amplitude: FieldAmplitude,
                         tail_tol: float = DEFAULT_TAIL_TOL,
                         max_terms: int = MAX_TERMS) -> PhotonDistribution:
    """Deformed coherent state, the eigenstate of A with eigenvalue z.

    Q_n is proportional to z**n / sqrt({n}!).  The expansion is cut where the
    remaining probability drops below ``tail_tol`` and then renormalized.

    Raises
    ------
    DomainError
        |z|^2 outside the convergence domain of the variant.
    NonConvergence
        the cut would exceed ``max_terms``.
    """
    x = amplitude.intensity
    if x == 0.0:
        _check_domain(spec, x)
        return PhotonDistribution(np.array([1.0 + 0.0j]), spec, amplitude, 0.0)
    logp, tail = _distribution_log_probs(spec, x, tail_tol, max_terms)
    logp = logp - logsumexp(logp)
    n = np.arange(len(logp))
    moduli = np.exp(0.5 * logp)
    coeffs = moduli * np.exp(1j * n * amplitude.phase)
    return PhotonDistribution(coeffs, spec, amplitude, tail, moduli)


def mean_photon_number(dist: PhotonDistribution) -> float:
    """Mean photon number sum_n n |Q_n|^2 over the retained range."""
    return float(np.dot(np.arange(dist.n_max + 1), dist.probabilities))


def photon_number_variance(dist: PhotonDistribution) -> float:
    n = np.arange(dist.n_max + 1)
    mean = np.dot(n, dist.probabilities)
    return float(np.dot((n - mean) ** 2, dist.probabilities))


def _mean_at(spec, x, size):
    """Mean photon number of the intensity-x law on a fixed basis size."""
    if x == 0.0:
        return 0.0
    logt = _log_terms(spec, x, size)
    w = np.exp(logt - logsumexp(logt))
    return float(np.dot(np.arange(size), w))


def distribution_width(spec: DeformationSpec, amplitude: FieldAmplitude,
                       tail_tol: float = DEFAULT_TAIL_TOL) -> float:
    """Width delta_n = |z| sqrt(d nbar / d|z|^2) of the photon distribution.

    The derivative is a central difference in x = |z|^2 with step
    ``max(1e-6, 1e-6 x)``, evaluated on one common truncated basis.  Near the
    edge of the convergence domain the step is halved until x + h fits; if
    that fails a one-sided second-order backward formula is used.
    """
    x = amplitude.intensity
    _check_domain(spec, x)
    if x == 0.0:
        return 0.0
    radius = convergence_radius(spec)
    h = max(1e-6, 1e-6 * x)
    for _ in range(30):
        if x + h < radius:
            break
        h *= 0.5
    central = x + h < radius and x - h > 0.0
    if central:
        top = x + h
    else:
        h = min(max(1e-6, 1e-6 * x), x / 4.0)
        top = x
    # one shared basis, sized for the largest intensity used
    size = len(_distribution_log_probs(spec, top, tail_tol * 1e-3)[0]) + 1
    if central:
        slope = (_mean_at(spec, x + h, size) - _mean_at(spec, x - h, size)) / (2.0 * h)
    else:
        slope = (3.0 * _mean_at(spec, x, size) - 4.0 * _mean_at(spec, x - h, size)
                 + _mean_at(spec, x - 2.0 * h, size)) / (2.0 * h)
    return math.sqrt(x * max(slope, 0.0))
