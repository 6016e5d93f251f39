"""Collapse and revival timescales, critical detuning, second-order expansion.

All quantities treat the Rabi frequency as a smooth function of a
continuous photon number x, built from the continuous bracket {x}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import coupling_product, deformed_number_real
from .errors import DegenerateFrequency, NoStationaryPoint, PreconditionError
from .field_states import PhotonDistribution, distribution_width, mean_photon_number
from .spectrum import ModelParams, rabi_frequency_real

__all__ = [
    "AnalysisReport",
    "revival_time",
    "collapse_time",
    "critical_detuning",
    "rabi_slope",
    "expansion_diagnostics",
    "analyze",
]

FIRST_STEP = 1e-5
DETUNING_RANGE = 50.0
RESIDUAL_POINTS = 401


@dataclass(frozen=True)
class AnalysisReport:
    n_bar: float
    delta_n: float
    t_r_diff: float
    t_r_deriv: float
    t_c: float
    delta_c_over_omega: float
    omega2: float
    regularity_residual: float

    def as_dict(self) -> dict[str, float]:
        return {
            "n_bar": self.n_bar,
            "delta_n": self.delta_n,
            "t_r_diff": self.t_r_diff,
            "t_r_deriv": self.t_r_deriv,
            "t_c": self.t_c,
            "delta_c_over_omega": self.delta_c_over_omega,
            "omega2": self.omega2,
            "regularity_residual": self.regularity_residual,
        }


def _derivative(fn, x, h=FIRST_STEP):
    return (fn(x + h) - fn(x - h)) / (2.0 * h)


def rabi_slope(params: ModelParams, x: float) -> float:
    """dOmega/dx of the continuous-n Rabi frequency (central difference)."""
    return _derivative(lambda y: rabi_frequency_real(params, y), x)


def revival_time(params: ModelParams, dist: PhotonDistribution):
    """First revival time, two estimators.

    Returns ``(t_r_diff, t_r_deriv)``: 2 pi over the Rabi-frequency step
    between nbar and nbar + 1, and 2 pi over dOmega/dx at nbar.  Both use
    magnitudes so that they are positive on either side of a minimum of the
    frequency; a vanishing slope gives an infinite ``t_r_deriv``.
    """
    if params.m != 2:
        raise PreconditionError(f"revival analysis is defined for m = 2, got m = {params.m}")
    n_bar = mean_photon_number(dist)
    step = rabi_frequency_real(params, n_bar + 1.0) - rabi_frequency_real(params, n_bar)
    if abs(step) < 1e-12:
        raise DegenerateFrequency(f"Rabi frequency flat around nbar = {n_bar:.6g}")
    slope = abs(rabi_slope(params, n_bar))
    t_deriv = math.inf if slope == 0.0 else 2.0 * math.pi / slope
    return 2.0 * math.pi / abs(step), t_deriv


def collapse_time(t_r: float, delta_n: float) -> float:
    """t_c = t_r / (4 pi delta_n)."""
    if not (t_r > 0 and delta_n > 0):
        raise ValueError("collapse time needs t_r > 0 and delta_n > 0")
    return t_r / (4.0 * math.pi * delta_n)


def critical_detuning(params: ModelParams, n_bar: float) -> float:
    """Detuning that makes the continuous Rabi frequency stationary at nbar.

    Omega^2 is quadratic in the detuning, so dOmega^2/dx = 0 is linear in it:
    Delta = omega A(x) + 2 g^2 C'(x) / (omega A'(x)) with
    A(x) = {x+m} - {x} - m and C(x) = {x+1}...{x+m}.  The returned value is
    certified by checking |dOmega/dx| < 1e-8 Omega at nbar.

    Raises
    ------
    PreconditionError
        undeformed bracket (A' vanishes identically) or m != 2.
    NoStationaryPoint
        the solution lies outside [-50 omega, 50 omega] or fails the check.
    """
    if params.m != 2:
        raise PreconditionError(f"critical detuning is defined for m = 2, got m = {params.m}")
    spec, m, omega, g = params.spec, params.m, params.omega, params.g
    shift = lambda y: deformed_number_real(spec, y + m) - deformed_number_real(spec, y) - m
    coupling = lambda y: coupling_product(spec, y, m, continuous=True)
    slope_a = _derivative(shift, n_bar)
    if abs(slope_a) < 1e-9:
        raise PreconditionError(
            f"{spec.label}: d({{n+2}} - {{n}})/dn vanishes, the frequency has no minimum in n")
    delta = omega * shift(n_bar) + 2.0 * g ** 2 * _derivative(coupling, n_bar) / (omega * slope_a)
    if not abs(delta) <= DETUNING_RANGE * omega:
        raise NoStationaryPoint(
            f"stationary detuning {delta:.6g} outside +/-{DETUNING_RANGE:g} omega")
    tuned = params.with_detuning(delta)
    residual = abs(rabi_slope(tuned, n_bar))
    if residual >= 1e-8 * rabi_frequency_real(tuned, n_bar):
        raise NoStationaryPoint(f"stationarity certificate failed: |dOmega/dx| = {residual:.3e}")
    return float(delta)


def expansion_diagnostics(params: ModelParams, n_bar: float, delta_n: float):
    """Second-order coefficient of Omega(x) about nbar and its fit quality.

    ``omega2`` is half the second derivative (step 1e-3 max(1, nbar)).  The
    residual is the largest relative gap between Omega(x) and the pure
    quadratic Omega(nbar) + (x - nbar)^2 omega2 over x in
    [nbar - 2 delta_n, nbar + 2 delta_n], clipped at x = 0.  There is no
    linear term, so a small residual also requires a stationary frequency.
    """
    if params.m != 2:
        raise PreconditionError(f"expansion is defined for m = 2, got m = {params.m}")
    rabi = lambda y: rabi_frequency_real(params, y)
    h = 1e-3 * max(1.0, n_bar)
    centre = rabi(n_bar)
    omega2 = 0.5 * (rabi(n_bar + h) - 2.0 * centre + rabi(n_bar - h)) / h ** 2
    xs = np.linspace(max(n_bar - 2.0 * delta_n, 0.0), n_bar + 2.0 * delta_n, RESIDUAL_POINTS)
    approx = centre + (xs - n_bar) ** 2 * omega2
    residual = float(np.max(np.abs(np.asarray(rabi(xs)) - approx)) / centre)
    return float(omega2), residual


def analyze(params: ModelParams, dist: PhotonDistribution,
            tail_tol: float = 1e-12) -> AnalysisReport:
    """Full revival report for a scenario.

    ``t_c`` is built from the derivative estimator of ``t_r``.  For an
    undeformed bracket the critical detuning does not exist and is reported
    as NaN.
    """
    n_bar = mean_photon_number(dist)
    delta_n = distribution_width(dist.spec, dist.amplitude, tail_tol)
    t_diff, t_deriv = revival_time(params, dist)
    t_c = collapse_time(t_deriv, delta_n) if math.isfinite(t_deriv) and delta_n > 0 else math.inf
    try:
        delta_c = critical_detuning(params, n_bar) / params.omega
    except (PreconditionError, NoStationaryPoint):
        delta_c = math.nan
    omega2, residual = expansion_diagnostics(params, n_bar, delta_n)
    return AnalysisReport(n_bar, delta_n, t_diff, t_deriv, t_c, delta_c, omega2, residual)
