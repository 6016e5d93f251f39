"""Deformed oscillator algebra.

The field operators are ``A = a f(N)`` and ``A+ = f(N) a+``; everything the
dynamics needs follows from the deformed number ``{n} = n f(n)**2``, which is
the eigenvalue of ``A+ A`` on the Fock state ``|n>``.

Brackets are evaluated through ``expm1`` ratios so that ``q -> 1`` limits are
smooth, and factorial-like quantities are kept in log space.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .errors import DomainError, NonConvergence

__all__ = [
    "MAX_TERMS",
    "Deformation",
    "DeformationSpec",
    "f_value",
    "deformed_number",
    "deformed_number_real",
    "log_deformed_number",
    "log_deformed_factorial",
    "log_deformed_factorials",
    "coupling_product",
    "convergence_radius",
    "deformed_exp",
]

#: hard cap on the number of series terms
MAX_TERMS = 4096


class Deformation(str, enum.Enum):
    STANDARD = "standard"
    ARIK_COON = "arik_coon"
    PENSON_SOLOMON = "penson_solomon"
    QUESNE = "quesne"
    KERR = "kerr"
    GENERAL_Q = "general_q"


_Q_KINDS = {
    Deformation.ARIK_COON,
    Deformation.PENSON_SOLOMON,
    Deformation.QUESNE,
    Deformation.GENERAL_Q,
}


@dataclass(frozen=True)
class DeformationSpec:
    """Selects the nonlinearity function f(N) and its parameters.

    Use the named constructors rather than the raw initializer.  Parameters
    that a kind does not use are ignored and keep their defaults.

    ``general_q`` is the four-parameter family
    ``{n} = q**-(mu + 2*lam*(n-1)) * (1 - p**n) / (1 - p)``, of which
    Arik-Coon (p=q, mu=lam=0), Penson-Solomon (p=1, mu=0, lam=1) and
    Quesne (p=q, mu=1, lam=1/2) are special cases.
    """

    kind: Deformation = Deformation.STANDARD
    q: float = 1.0
    k: float = 0.0
    p: float = 1.0
    lam: float = 0.0
    mu: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", Deformation(self.kind))
        for name in ("q", "k", "p", "lam", "mu"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)
        if self.kind in _Q_KINDS and self.q <= 0:
            raise ValueError(f"{self.kind.value} requires q > 0, got q={self.q}")
        if self.kind is Deformation.PENSON_SOLOMON and self.q > 1:
            raise ValueError(f"penson_solomon requires 0 < q <= 1, got q={self.q}")
        if self.kind is Deformation.KERR and self.k <= 0:
            raise ValueError(f"kerr requires k > 0, got k={self.k}")
        if self.kind is Deformation.GENERAL_Q:
            if self.p <= 0:
                raise ValueError(f"general_q requires p > 0, got p={self.p}")
            if self.lam < 0 or self.mu < 0:
                raise ValueError("general_q requires lam >= 0 and mu >= 0")

    @classmethod
    def standard(cls):
        return cls(Deformation.STANDARD)

    @classmethod
    def arik_coon(cls, q):
        return cls(Deformation.ARIK_COON, q=q)

    @classmethod
    def penson_solomon(cls, q):
        return cls(Deformation.PENSON_SOLOMON, q=q)

    @classmethod
    def quesne(cls, q):
        return cls(Deformation.QUESNE, q=q)

    @classmethod
    def kerr(cls, k):
        return cls(Deformation.KERR, k=k)

    @classmethod
    def general(cls, p, q, lam, mu):
        return cls(Deformation.GENERAL_Q, q=q, p=p, lam=lam, mu=mu)

    @property
    def label(self) -> str:
        if self.kind is Deformation.STANDARD:
            return "standard"
        if self.kind is Deformation.KERR:
            return f"kerr(k={self.k:g})"
        if self.kind is Deformation.GENERAL_Q:
            return (f"general_q(p={self.p:g}, q={self.q:g}, "
                    f"lam={self.lam:g}, mu={self.mu:g})")
        return f"{self.kind.value}(q={self.q:g})"


def _scalar_or_array(x, out):
    return float(out) if np.ndim(x) == 0 else out


def _qbracket(x, log_q):
    """(q**x - 1)/(q - 1) written as a ratio of expm1 terms."""
    if log_q == 0.0:
        return x
    return np.expm1(x * log_q) / math.expm1(log_q)


def _log_qbracket(x, log_q):
    """log of (q**x - 1)/(q - 1) for x > 0, overflow-free."""
    if log_q == 0.0:
        return np.log(x)
    if log_q > 0:
        return x * log_q + np.log(-np.expm1(-x * log_q)) - math.log(math.expm1(log_q))
    return np.log(-np.expm1(x * log_q)) - math.log(-math.expm1(log_q))


def deformed_number_real(spec: DeformationSpec, x):
    """Smooth extension of {n} to real arguments.

    Defined for every real ``x`` (negative values are allowed so that finite
    differences near the vacuum stay well-posed), agrees with
    :func:`deformed_number` at the integers.
    """
    xa = np.asarray(x, dtype=float)
    kind = spec.kind
    if kind is Deformation.STANDARD:
        out = xa.copy()
    elif kind is Deformation.ARIK_COON:
        out = _qbracket(xa, math.log(spec.q))
    elif kind is Deformation.PENSON_SOLOMON:
        out = xa * np.exp(-2.0 * (xa - 1.0) * math.log(spec.q))
    elif kind is Deformation.QUESNE:
        L = math.log(spec.q)
        out = xa.copy() if L == 0.0 else -np.expm1(-xa * L) / math.expm1(L)
    elif kind is Deformation.KERR:
        out = xa * (1.0 + spec.k * (xa - 1.0))
    else:
        Lq = math.log(spec.q)
        out = np.exp(-(spec.mu + 2.0 * spec.lam * (xa - 1.0)) * Lq) * _qbracket(xa, math.log(spec.p))
    return _scalar_or_array(x, out)


def _check_counts(n, minimum=0):
    na = np.asarray(n)
    if na.dtype.kind not in "iu":
        if not np.all(np.equal(np.mod(na, 1), 0)):
            raise ValueError("photon numbers must be integers")
        na = na.astype(np.int64)
    if np.any(na < minimum):
        raise ValueError(f"photon numbers must be >= {minimum}")
    return na


def deformed_number(spec: DeformationSpec, n):
    """{n} = n f(n)**2 on nonnegative integers; {0} is exactly 0."""
    na = _check_counts(n)
    return _scalar_or_array(n, np.asarray(deformed_number_real(spec, na.astype(float))))


def f_value(spec: DeformationSpec, n):
    """Nonlinearity function f(n) for n >= 1, with the convention f(0) = 1."""
    na = _check_counts(n)
    nf = na.astype(float)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(na > 0, np.sqrt(np.asarray(deformed_number_real(spec, nf)) / np.where(na > 0, nf, 1.0)), 1.0)
    return _scalar_or_array(n, out)


def log_deformed_number(spec: DeformationSpec, n):
    """log {n} for n >= 1, evaluated without forming {n} itself."""
    na = _check_counts(n, minimum=1).astype(float)
    kind = spec.kind
    if kind is Deformation.STANDARD:
        out = np.log(na)
    elif kind is Deformation.ARIK_COON:
        out = _log_qbracket(na, math.log(spec.q))
    elif kind is Deformation.PENSON_SOLOMON:
        out = np.log(na) - 2.0 * (na - 1.0) * math.log(spec.q)
    elif kind is Deformation.QUESNE:
        L = math.log(spec.q)
        out = -na * L + _log_qbracket(na, L)
    elif kind is Deformation.KERR:
        out = np.log(na) + np.log1p(spec.k * (na - 1.0))
    else:
        out = (-(spec.mu + 2.0 * spec.lam * (na - 1.0)) * math.log(spec.q)
               + _log_qbracket(na, math.log(spec.p)))
    return _scalar_or_array(n, out)


def log_deformed_factorials(spec: DeformationSpec, n_max: int) -> np.ndarray:
    """Array of log({n}!) for n = 0..n_max."""
    out = np.zeros(n_max + 1)
    if n_max > 0:
        out[1:] = np.cumsum(log_deformed_number(spec, np.arange(1, n_max + 1)))
    return out


def log_deformed_factorial(spec: DeformationSpec, n: int) -> float:
    """log({n}!) = sum of log {k} for k = 1..n."""
    _check_counts(n)
    return float(log_deformed_factorials(spec, int(n))[-1])


def coupling_product(spec: DeformationSpec, n, m: int, continuous: bool = False):
    """{n+1}{n+2}...{n+m}, i.e. the ratio {n+m}!/{n}!.

    With ``continuous=True`` the smooth extension is used and ``n`` may be
    any real number.
    """
    if continuous:
        base = np.asarray(n, dtype=float)
        bracket = lambda k: np.asarray(deformed_number_real(spec, base + k))
    else:
        base = _check_counts(n)
        bracket = lambda k: np.asarray(deformed_number(spec, base + k))
    out = np.ones(np.shape(base))
    for k in range(1, m + 1):
        out = out * bracket(k)
    return _scalar_or_array(n, out)


def convergence_radius(spec: DeformationSpec) -> float:
    """Supremum of x for which exp_f(x) converges (``inf`` if unbounded)."""
    kind = spec.kind
    if kind is Deformation.ARIK_COON:
        return 1.0 / (1.0 - spec.q) if spec.q < 1 else math.inf
    if kind is Deformation.QUESNE:
        return 1.0 / (spec.q - 1.0) if spec.q > 1 else math.inf
    if kind is Deformation.GENERAL_Q:
        log_p, log_q = math.log(spec.p), math.log(spec.q)
        slope = -2.0 * spec.lam * log_q + max(log_p, 0.0)
        if slope > 1e-14:
            return math.inf
        if slope < -1e-14:
            return 0.0
        if spec.p == 1.0:
            return math.inf
        return spec.q ** (2.0 * spec.lam - spec.mu) / abs(1.0 - spec.p)
    return math.inf


def _check_domain(spec: DeformationSpec, x: float):
    if x < 0 or not math.isfinite(x):
        raise DomainError(f"series argument must be finite and >= 0, got {x}")
    radius = convergence_radius(spec)
    if x >= radius:
        raise DomainError(
            f"{spec.label} requires |z|^2 < {radius:.12g}, got {x:.12g}")


def _log_terms(spec: DeformationSpec, x: float, size: int) -> np.ndarray:
    n = np.arange(size)
    return n * math.log(x) - log_deformed_factorials(spec, size - 1)


def _series_log_terms(spec: DeformationSpec, x: float, rel_tol: float,
                      max_terms: int = MAX_TERMS):
    """Log terms of exp_f(x), long enough that the neglected remainder is
    far below ``rel_tol`` of the sum.  Returns (log_terms, log_total)."""
    _check_domain(spec, x)
    size = 128
    while True:
        size = min(size, max_terms)
        logt = _log_terms(spec, x, size)
        log_total = float(logsumexp(logt))
        ratio = x / float(deformed_number(spec, size))
        if ratio < 1.0:
            log_rem = logt[-1] + math.log(ratio / (1.0 - ratio))
            if log_rem - log_total < math.log(rel_tol) - math.log(1e3):
                return logt, log_total
        if size == max_terms:
            raise NonConvergence(
                f"{spec.label}: exp_f({x:.12g}) needs more than {max_terms} terms")
        size *= 2


def _suffix_tails(probs: np.ndarray) -> np.ndarray:
    """tails[n] = sum(probs[n+1:]); summed from the small end."""
    tails = np.zeros_like(probs)
    tails[:-1] = np.cumsum(probs[::-1])[::-1][1:]
    return tails


def deformed_exp(spec: DeformationSpec, x: float, tail_tol: float = 1e-15,
                 max_terms: int = MAX_TERMS):
    """Deformed exponential exp_f(x) = sum_n x**n / {n}!.

    Returns ``(value, n_max)`` where ``n_max`` is the last included index.
    The last included term and the whole discarded tail are both below
    ``tail_tol`` times the sum.

    Raises
    ------
    DomainError
        ``x`` outside the convergence domain of the variant.
    NonConvergence
        more than ``max_terms`` terms would be needed.
    """
    x = float(x)
    if x == 0.0:
        _check_domain(spec, x)
        return 1.0, 0
    logt, log_total = _series_log_terms(spec, x, tail_tol, max_terms)
    probs = np.exp(logt - log_total)
    tails = _suffix_tails(probs)
    partial = np.cumsum(probs)
    ok = (tails <= tail_tol) & (probs <= tail_tol * partial)
    n_max = int(np.argmax(ok)) if ok.any() else len(ok) - 1
    return float(np.exp(log_total) * partial[n_max]), n_max
