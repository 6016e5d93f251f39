"""Closed-form atom-field dynamics and atomic observables.

Amplitudes are interaction-picture amplitudes with respect to
``omega A+A + omega0 sigma_z / 2``.  Each doublet {|e,n>, |g,n+m>} rotates
independently; states |g,n> with n < m have no partner and keep their
initial amplitude.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .algebra import coupling_product, deformed_number
from .errors import SpecMismatch
from .field_states import AtomInit, PhotonDistribution
from .spectrum import ModelParams, detuning_shift

__all__ = [
    "JointState",
    "ObservableSample",
    "evolve_closed_form",
    "inversion",
    "inversion_closed_form",
    "dipole_components",
    "dipole_components_kernels",
    "squeezing_indicator",
    "squeezing_values",
    "observe",
    "time_series",
    "series_arrays",
]

INTERACTION = "interaction"
SCHRODINGER = "schrodinger"


@dataclass(frozen=True, eq=False)
class JointState:
    """Amplitudes C_{e,n}, C_{g,n} for n = 0..len-1 at time ``t``."""

    t: float
    ce: np.ndarray
    cg: np.ndarray
    params: ModelParams
    n_max: int
    picture: str = INTERACTION

    def norm(self) -> float:
        return float(np.sum(np.abs(self.ce) ** 2) + np.sum(np.abs(self.cg) ** 2))

    def free_phases(self):
        """exp(-i E0 t) for the e and g ladders, E0 the uncoupled energies."""
        p = self.params
        bracket = np.asarray(deformed_number(p.spec, np.arange(len(self.ce))))
        pe = np.exp(-1j * (p.omega * bracket + 0.5 * p.omega0) * self.t)
        pg = np.exp(-1j * (p.omega * bracket - 0.5 * p.omega0) * self.t)
        return pe, pg

    def to_interaction_picture(self) -> "JointState":
        if self.picture == INTERACTION:
            return self
        pe, pg = self.free_phases()
        return JointState(self.t, self.ce / pe, self.cg / pg, self.params, self.n_max, INTERACTION)

    def to_schrodinger_picture(self) -> "JointState":
        if self.picture == SCHRODINGER:
            return self
        pe, pg = self.free_phases()
        return JointState(self.t, self.ce * pe, self.cg * pg, self.params, self.n_max, SCHRODINGER)


@dataclass(frozen=True)
class ObservableSample:
    t: float
    sigma3: float
    sigma1: float
    sigma2: float
    f1: float
    f2: float


def _doublets(params: ModelParams, count: int, t: float):
    """Per-doublet (shift, coupling, cos(Omega t/2), sin(Omega t/2)/Omega)."""
    k = np.arange(count)
    shift = np.asarray(detuning_shift(params, k), dtype=float)
    coupling = np.asarray(coupling_product(params.spec, k, params.m), dtype=float)
    rabi = np.sqrt(shift ** 2 + 4.0 * params.g ** 2 * coupling)
    c = np.cos(0.5 * rabi * t)
    # sin(x t/2)/x, finite at x = 0
    s = 0.5 * t * np.sinc(rabi * t / (2.0 * np.pi))
    return shift, coupling, c, s


def _padded(dist: PhotonDistribution, length: int) -> np.ndarray:
    q = np.zeros(length, dtype=complex)
    q[: dist.n_max + 1] = dist.coefficients
    return q


def _check_spec(params: ModelParams, dist: PhotonDistribution):
    if params.spec != dist.spec:
        raise SpecMismatch(
            f"distribution built for {dist.spec.label}, Hamiltonian uses {params.spec.label}")


def evolve_closed_form(params: ModelParams, atom: AtomInit,
                       dist: PhotonDistribution, t: float) -> JointState:
    """Exact interaction-picture state at time ``t``.

    Amplitudes run over n = 0..N+m with N the distribution cut, which is
    enough to hold every doublet the initial state touches.
    """
    _check_spec(params, dist)
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    m, g = params.m, params.g
    size = dist.n_max + m + 1
    q = _padded(dist, size + m)
    shift, coupling, c, s = _doublets(params, size, t)
    root = np.sqrt(coupling)
    a = atom.alpha * complex(math.cos(atom.phi), math.sin(atom.phi))
    b = atom.beta

    ce = np.exp(0.5j * shift * t) * ((c - 1j * shift * s) * a * q[:size]
                                     - 2j * g * root * s * b * q[m:size + m])
    cg = b * q[:size].copy()
    j = slice(0, size - m)
    cg[m:] = np.exp(-0.5j * shift[j] * t) * ((c[j] + 1j * shift[j] * s[j]) * b * q[m:size]
                                              - 2j * g * root[j] * s[j] * a * q[j])
    return JointState(float(t), ce, cg, params, dist.n_max)


def inversion(state: JointState) -> float:
    """<sigma_3> = sum_n |C_e,n|^2 - |C_g,n|^2 (picture independent)."""
    return float(np.sum(np.abs(state.ce) ** 2) - np.sum(np.abs(state.cg) ** 2))


def inversion_closed_form(params: ModelParams, atom: AtomInit,
                          dist: PhotonDistribution, t: float) -> float:
    """<sigma_3>(t) as an explicit sum over doublets.

    Written directly in terms of |Q_n|, the initial phases and the doublet
    frequencies; independent of the amplitude construction.
    """
    _check_spec(params, dist)
    m, g = params.m, params.g
    n_count = dist.n_max + 1
    mag = np.zeros(n_count + m)
    mag[:n_count] = np.abs(dist.coefficients)
    shift, coupling, c, s = _doublets(params, n_count, t)
    loss = -8.0 * g ** 2 * coupling * s ** 2
    chi = atom.phi - m * dist.amplitude.phase
    al, be = atom.alpha, atom.beta
    excited = al ** 2 * (1.0 + np.sum(mag[:n_count] ** 2 * loss))
    ground = be ** 2 * (1.0 + np.sum(mag[m:] ** 2 * loss))
    cross = -8.0 * g * al * be * np.sum(
        mag[:n_count] * mag[m:] * np.sqrt(coupling) * s
        * (math.sin(chi) * c - shift * math.cos(chi) * s))
    return float(excited - ground + cross)


def dipole_components(state: JointState):
    """Slowly varying quadratures (<sigma_1>, <sigma_2>).

    sigma_1 + i sigma_2 = sum_n conj(C_e,n) C_g,n exp(-i omega0 t) with
    interaction-picture amplitudes; Schrodinger-picture states are
    converted first.
    """
    st = state.to_interaction_picture()
    z = np.sum(np.conj(st.ce) * st.cg) * np.exp(-1j * st.params.omega0 * st.t)
    return float(z.real), float(z.imag)


def _kernel_sums(params, atom, dist, t, theta, phi):
    m, g, w0 = params.m, params.g, params.omega0
    n_count = dist.n_max + 1
    size = n_count + m
    mag = np.zeros(size + m)
    mag[:n_count] = np.abs(dist.coefficients)
    shift, coupling, c, s = _doublets(params, size, t)
    root = np.sqrt(coupling)
    # doublet n-m for n < m is the uncoupled ground state: c = 1, shift = 0
    shift_lo = np.concatenate([np.zeros(m), shift[:n_count - m]]) if n_count > m else np.zeros(n_count)
    shift_lo = shift_lo[:n_count]
    c_lo = np.concatenate([np.ones(m), c])[:n_count]
    s_lo = np.concatenate([np.zeros(m), s])[:n_count]
    n = slice(0, n_count)
    up = slice(m, n_count + m)

    psi = 0.5 * (shift[up] + shift[n] + 2.0 * w0) * t + m * theta
    u = np.sum(2.0 * g * mag[n] * mag[up] * root[n] * s[n]
               * (shift[up] * s[up] * np.cos(psi) - c[up] * np.sin(psi)))

    psi = 0.5 * (shift[n] + shift_lo + 2.0 * w0) * t + m * theta
    v = np.sum(2.0 * g * mag[n] * mag[up] * root[n] * s[n]
               * (c_lo * np.sin(psi) - shift_lo * s_lo * np.cos(psi)))

    chi = 0.5 * (shift[n] + shift_lo + 2.0 * w0) * t + phi
    w_diag = np.sum(mag[n] ** 2 * (
        np.cos(chi) * (c[n] * c_lo - shift[n] * shift_lo * s[n] * s_lo)
        + np.sin(chi) * (shift_lo * s_lo * c[n] + shift[n] * s[n] * c_lo)))
    far = np.zeros(n_count)
    far[: max(n_count - 2 * m, 0)] = mag[2 * m:n_count]
    chi = 0.5 * (shift[n] + shift[up] + 2.0 * w0) * t - phi + 2 * m * theta
    w_off = np.sum(4.0 * g ** 2 * root[n] * root[up] * s[n] * s[up]
                   * mag[n] * far * np.cos(chi))
    return atom.alpha ** 2 * u + atom.beta ** 2 * v + atom.alpha * atom.beta * (w_diag + w_off)


def dipole_components_kernels(params: ModelParams, atom: AtomInit,
                              dist: PhotonDistribution, t: float):
    """(<sigma_1>, <sigma_2>) from explicit trigonometric kernel sums.

    Independent of :func:`evolve_closed_form`; sigma_2 is the same sum with
    theta -> theta + pi/(2m) and phi -> phi + pi/2.
    """
    _check_spec(params, dist)
    theta, phi = dist.amplitude.phase, atom.phi
    s1 = _kernel_sums(params, atom, dist, t, theta, phi)
    s2 = _kernel_sums(params, atom, dist, t, theta + math.pi / (2 * params.m), phi + math.pi / 2)
    return float(s1), float(s2)


def squeezing_values(sigma1: float, sigma2: float, sigma3: float):
    """F_i = 1 - 4<sigma_i>^2 - |<sigma_3>|; negative means squeezed."""
    return 1.0 - 4.0 * sigma1 ** 2 - abs(sigma3), 1.0 - 4.0 * sigma2 ** 2 - abs(sigma3)


def squeezing_indicator(sample: ObservableSample):
    return squeezing_values(sample.sigma1, sample.sigma2, sample.sigma3)


def observe(state: JointState) -> ObservableSample:
    s3 = inversion(state)
    s1, s2 = dipole_components(state)
    f1, f2 = squeezing_values(s1, s2, s3)
    return ObservableSample(state.t, s3, s1, s2, f1, f2)


def _default_workers() -> int:
    value = os.environ.get("QJCM_THREADS", "")
    try:
        return max(1, int(value))
    except ValueError:
        return 1


def time_series(params: ModelParams, atom: AtomInit, dist: PhotonDistribution,
                t_grid, workers: int | None = None) -> list[ObservableSample]:
    """Observables on a strictly increasing grid of times.

    Every point is evaluated independently from the closed form, so the
    result does not depend on evaluation order or on ``workers``.
    """
    grid = np.asarray(t_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("time grid must be a nonempty 1-d array")
    if grid[0] < 0 or np.any(np.diff(grid) <= 0):
        raise ValueError("time grid must be nonnegative and strictly increasing")
    _check_spec(params, dist)
    point = lambda t: observe(evolve_closed_form(params, atom, dist, float(t)))
    workers = _default_workers() if workers is None else max(1, int(workers))
    if workers == 1:
        return [point(t) for t in grid]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(point, grid))


def series_arrays(samples) -> dict[str, np.ndarray]:
    """Column arrays (t, sigma3, sigma1, sigma2, f1, f2) from samples."""
    names = ("t", "sigma3", "sigma1", "sigma2", "f1", "f2")
    return {k: np.array([getattr(s, k) for s in samples]) for k in names}
