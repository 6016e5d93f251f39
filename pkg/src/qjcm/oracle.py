"""Brute-force reference evolution on a truncated Fock basis.

The full time-independent Hamiltonian is assembled as a dense matrix on
``|e,0>..|e,N>, |g,0>..|g,N>`` and the Schrodinger equation is solved either
by diagonalizing the connected blocks of the matrix or by adaptive
Runge-Kutta stepping.  Neither path uses the closed-form amplitudes.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .algebra import coupling_product, deformed_number
from .dynamics import SCHRODINGER, JointState
from .errors import BasisTooSmall, ToleranceNotMet
from .field_states import AtomInit, PhotonDistribution
from .spectrum import ModelParams

__all__ = [
    "TruncatedHamiltonian",
    "build_hamiltonian",
    "default_basis_size",
    "initial_state",
    "integrate",
    "evolve_many",
]

DEFAULT_TOL = 1e-10
MAX_RHS_EVALS = 2_000_000


@dataclass(frozen=True, eq=False)
class TruncatedHamiltonian:
    """Dense Hermitian matrix of the model on a truncated basis.

    ``boundary[n]`` marks |e,n> states whose coupling partner |g,n+m> lies
    outside the basis.
    """

    matrix: np.ndarray
    params: ModelParams
    n_max: int
    boundary: np.ndarray

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @functools.cached_property
    def _eigensystem(self):
        """Eigenvalues and block-diagonal eigenvectors, block by block."""
        h = self.matrix
        pattern = csr_matrix(np.abs(h) > 0)
        count, labels = connected_components(pattern, directed=False)
        values = np.empty(self.dimension)
        vectors = np.zeros_like(h)
        for label in range(count):
            idx = np.flatnonzero(labels == label)
            w, v = np.linalg.eigh(h[np.ix_(idx, idx)])
            values[idx] = w
            vectors[np.ix_(idx, idx)] = v
        return values, vectors


def default_basis_size(dist: PhotonDistribution, m: int) -> int:
    return dist.n_max + m + 10


def build_hamiltonian(params: ModelParams, n_max: int) -> TruncatedHamiltonian:
    """Assemble H = omega A+A + omega0 sigma_z/2 + g (A+^m sigma_- + A^m sigma_+)."""
    m = params.m
    if n_max < m:
        raise BasisTooSmall(f"n_max={n_max} must be >= m={m}")
    size = n_max + 1
    n = np.arange(size)
    bracket = np.asarray(deformed_number(params.spec, n), dtype=float)
    h = np.zeros((2 * size, 2 * size), dtype=complex)
    h[n, n] = params.omega * bracket + 0.5 * params.omega0
    h[size + n, size + n] = params.omega * bracket - 0.5 * params.omega0
    # <g, n+m| H |e, n> = g sqrt({n+1}...{n+m})
    src = np.arange(size - m)
    amp = params.g * np.sqrt(np.asarray(coupling_product(params.spec, src, m), dtype=float))
    h[size + src + m, src] = amp
    h[src, size + src + m] = amp
    boundary = n > n_max - m
    return TruncatedHamiltonian(h, params, n_max, boundary)


def initial_state(params: ModelParams, atom: AtomInit, dist: PhotonDistribution,
                  n_max: int) -> JointState:
    """Product state alpha e^{i phi}|e> + beta|g> times the field, on n_max+1 levels."""
    if dist.n_max > n_max:
        raise BasisTooSmall(f"distribution reaches n={dist.n_max} > n_max={n_max}")
    q = np.zeros(n_max + 1, dtype=complex)
    q[: dist.n_max + 1] = dist.coefficients
    a = atom.alpha * np.exp(1j * atom.phi)
    return JointState(0.0, a * q, atom.beta * q, params, n_max, SCHRODINGER)


def _as_vector(h: TruncatedHamiltonian, state: JointState, tail_tol: float) -> np.ndarray:
    size = h.n_max + 1
    st = state.to_schrodinger_picture()
    ce = np.zeros(size, dtype=complex)
    cg = np.zeros(size, dtype=complex)
    for src, dst in ((st.ce, ce), (st.cg, cg)):
        keep = min(len(src), size)
        dst[:keep] = src[:keep]
        if np.sum(np.abs(src[keep:]) ** 2) > tail_tol:
            raise BasisTooSmall("state has weight beyond the truncated basis")
    if np.sum(np.abs(ce[h.boundary]) ** 2) > tail_tol:
        raise BasisTooSmall("initial state populates boundary-truncated |e,n> states")
    return np.concatenate([ce, cg])


def _as_state(h: TruncatedHamiltonian, psi: np.ndarray, t: float) -> JointState:
    size = h.n_max + 1
    return JointState(float(t), psi[:size].copy(), psi[size:].copy(), h.params, h.n_max, SCHRODINGER)


def _step(h: TruncatedHamiltonian, psi0: np.ndarray, duration: float, tol: float) -> np.ndarray:
    mat = h.matrix
    # integrate in the frame rotating with diag(H); only the off-diagonal
    # part drives the stepper, which keeps tail states from forcing tiny steps
    diag = np.diag(mat).real.copy()
    off = mat - np.diag(diag)
    evals = 0

    def rhs(t, y):
        nonlocal evals
        evals += 1
        if evals > MAX_RHS_EVALS:
            raise ToleranceNotMet(f"step budget of {MAX_RHS_EVALS} evaluations exhausted")
        rot = np.exp(1j * diag * t)
        return -1j * rot * (off @ (np.conj(rot) * y))

    # local tolerances well below tol: small tail amplitudes are only held by
    # atol, and their errors add up over the very many steps of stiff variants
    sol = solve_ivp(rhs, (0.0, duration), psi0, method="DOP853",
                    rtol=max(tol * 1e-3, 3e-14), atol=tol * 1e-5)
    if not sol.success:
        raise ToleranceNotMet(sol.message)
    psi = np.exp(-1j * diag * duration) * sol.y[:, -1]
    drift = abs(np.vdot(psi, psi).real - np.vdot(psi0, psi0).real)
    if drift > tol:
        raise ToleranceNotMet(f"norm drift {drift:.3e} exceeds tolerance {tol:.1e}")
    return psi


def _exact(h: TruncatedHamiltonian, psi0: np.ndarray, durations) -> np.ndarray:
    values, vectors = h._eigensystem
    coeff = vectors.conj().T @ psi0
    phases = np.exp(-1j * np.outer(durations, values))
    return (phases * coeff) @ vectors.T


def integrate(h: TruncatedHamiltonian, initial: JointState, t: float,
              tol: float = DEFAULT_TOL, method: str = "block",
              tail_tol: float = 1e-12) -> JointState:
    """Solve i d/dt psi = H psi from ``initial`` (taken at ``initial.t``) to ``t``.

    ``method="block"`` diagonalizes the connected blocks of H exactly;
    ``method="stepping"`` runs adaptive DOP853 with no structural knowledge.
    The result is in the Schrodinger picture and is never renormalized.

    Raises
    ------
    BasisTooSmall
        the initial state populates boundary-truncated states.
    ToleranceNotMet
        stepping exceeded its budget or drifted in norm by more than ``tol``.
    """
    duration = t - initial.t
    if duration < 0:
        raise ValueError("cannot integrate backwards in time")
    psi0 = _as_vector(h, initial, tail_tol)
    if method == "block":
        psi = _exact(h, psi0, [duration])[0]
        drift = abs(np.vdot(psi, psi).real - np.vdot(psi0, psi0).real)
        if drift > 1e-12:
            raise ToleranceNotMet(f"norm drift {drift:.3e} in exact evolution")
    elif method == "stepping":
        psi = _step(h, psi0, duration, tol) if duration > 0 else psi0
    else:
        raise ValueError(f"unknown method {method!r}")
    return _as_state(h, psi, t)


def evolve_many(h: TruncatedHamiltonian, initial: JointState, times,
                tail_tol: float = 1e-12) -> list[JointState]:
    """Exact block evolution at many times, sharing one diagonalization."""
    times = np.asarray(times, dtype=float)
    psi0 = _as_vector(h, initial, tail_tol)
    out = _exact(h, psi0, times - initial.t)
    return [_as_state(h, psi, t) for psi, t in zip(out, times)]
