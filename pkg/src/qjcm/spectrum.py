"""Dressed-state spectrum of the m-photon deformed Jaynes-Cummings model.

The Hamiltonian couples only the pairs ``|e,n>, |g,n+m>``, so each doublet is
a 2x2 problem.  With the e-level minus g-level diagonal difference written as
the shifted detuning, the doublet splitting is the generalized Rabi
frequency ``sqrt(shift**2 + 4 g**2 {n+1}...{n+m})``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import DeformationSpec, coupling_product, deformed_number, deformed_number_real

__all__ = [
    "ModelParams",
    "DressedPair",
    "detuning_shift",
    "rabi_frequency",
    "detuning_shift_real",
    "rabi_frequency_real",
    "dressed_pair",
    "dressed_energies",
    "min_gap",
]


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters of the Hamiltonian (units with hbar = 1).

    The detuning ``omega0 - m*omega`` is derived, never stored.  ``omega0``
    may be zero or negative: the large negative critical detunings studied
    for squeezing put the atomic splitting below zero when omega = 1.
    """

    omega: float
    omega0: float
    g: float
    m: int
    spec: DeformationSpec

    def __post_init__(self):
        if not (self.omega > 0 and math.isfinite(self.omega)):
            raise ValueError(f"omega must be positive, got {self.omega}")
        if not math.isfinite(self.omega0):
            raise ValueError("omega0 must be finite")
        if not (self.g >= 0 and math.isfinite(self.g)):
            raise ValueError(f"g must be >= 0, got {self.g}")
        if int(self.m) != self.m or self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m}")
        object.__setattr__(self, "m", int(self.m))
        for name in ("omega", "omega0", "g"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @classmethod
    def from_detuning(cls, detuning: float, g: float, spec: DeformationSpec,
                      m: int = 2, omega: float = 1.0):
        return cls(omega=omega, omega0=detuning + m * omega, g=g, m=m, spec=spec)

    @property
    def detuning(self) -> float:
        return self.omega0 - self.m * self.omega

    def with_detuning(self, detuning: float) -> "ModelParams":
        return ModelParams(self.omega, detuning + self.m * self.omega, self.g, self.m, self.spec)

    def scaled(self, s: float) -> "ModelParams":
        """Same physics with every frequency multiplied by ``s``."""
        return ModelParams(s * self.omega, s * self.omega0, s * self.g, self.m, self.spec)


@dataclass(frozen=True)
class DressedPair:
    e_plus: float
    e_minus: float
    cos_theta: float
    sin_theta: float
    rabi: float
    delta_nm: float


def detuning_shift(params: ModelParams, n):
    """Shifted detuning Delta - omega({n+m} - {n} - m)."""
    spec, m = params.spec, params.m
    n = np.asarray(n)
    out = params.detuning - params.omega * (
        np.asarray(deformed_number(spec, n + m)) - np.asarray(deformed_number(spec, n)) - m)
    return float(out) if out.ndim == 0 else out


def rabi_frequency(params: ModelParams, n):
    """Generalized Rabi frequency Omega_{n,m} (nonnegative root)."""
    shift = np.asarray(detuning_shift(params, n))
    coupling = np.asarray(coupling_product(params.spec, n, params.m))
    out = np.sqrt(shift ** 2 + 4.0 * params.g ** 2 * coupling)
    return float(out) if out.ndim == 0 else out


def detuning_shift_real(params: ModelParams, x):
    """Continuous-n version of :func:`detuning_shift`."""
    spec, m = params.spec, params.m
    x = np.asarray(x, dtype=float)
    out = params.detuning - params.omega * (
        np.asarray(deformed_number_real(spec, x + m)) - np.asarray(deformed_number_real(spec, x)) - m)
    return float(out) if out.ndim == 0 else out


def rabi_frequency_real(params: ModelParams, x):
    """Continuous-n Rabi frequency, used for revival and detuning analysis."""
    shift = np.asarray(detuning_shift_real(params, x))
    coupling = np.asarray(coupling_product(params.spec, x, params.m, continuous=True))
    out = np.sqrt(shift ** 2 + 4.0 * params.g ** 2 * coupling)
    return float(out) if out.ndim == 0 else out


def dressed_pair(params: ModelParams, n: int) -> DressedPair:
    """Eigenvalues and mixing angle of the doublet {|e,n>, |g,n+m>}.

    ``|+> = cos|e,n> + sin|g,n+m>``.  When the coupling vanishes the mixing
    is resolved by the sign of the shifted detuning so that E_+ >= E_-.
    """
    spec, m, omega = params.spec, params.m, params.omega
    shift = detuning_shift(params, n)
    coupling = coupling_product(spec, n, m)
    rabi = math.sqrt(shift ** 2 + 4.0 * params.g ** 2 * coupling)
    centre = 0.5 * omega * (deformed_number(spec, n + m) + deformed_number(spec, n))
    a = 2.0 * params.g * math.sqrt(coupling)
    # rabi - shift without cancellation when shift > 0
    b = a * a / (rabi + shift) if shift > 0 else rabi - shift
    norm = math.hypot(a, b)
    if norm == 0.0:
        cos_t, sin_t = 1.0, 0.0
    else:
        cos_t, sin_t = a / norm, b / norm
    return DressedPair(centre + 0.5 * rabi, centre - 0.5 * rabi, cos_t, sin_t, rabi, shift)


def dressed_energies(spec: DeformationSpec, n: int, detunings, g: float,
                     m: int = 2, omega: float = 1.0):
    """E_+ and E_- of doublet ``n`` over an array of detunings."""
    detunings = np.asarray(detunings, dtype=float)
    bracket_shift = omega * (deformed_number(spec, n + m) - deformed_number(spec, n) - m)
    shift = detunings - bracket_shift
    rabi = np.sqrt(shift ** 2 + 4.0 * g ** 2 * coupling_product(spec, n, m))
    centre = 0.5 * omega * (deformed_number(spec, n + m) + deformed_number(spec, n))
    return centre + 0.5 * rabi, centre - 0.5 * rabi


def min_gap(params: ModelParams, n: int):
    """Detuning of the avoided crossing of doublet ``n`` and its gap.

    Returns ``(delta_at_min, gap)`` with delta_at_min = omega({n+m} - {n} - m)
    and gap = 2 g sqrt({n+1}...{n+m}).
    """
    spec, m = params.spec, params.m
    delta_star = params.omega * (deformed_number(spec, n + m) - deformed_number(spec, n) - m)
    gap = 2.0 * params.g * math.sqrt(coupling_product(spec, n, m))
    return float(delta_star), gap
