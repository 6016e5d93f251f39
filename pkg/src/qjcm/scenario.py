"""Flat ``key = value`` scenario files.

One key per line, ``#`` starts a comment.  Exactly one of ``omega0`` and
``delta_over_omega`` must be given; ``delta_over_omega = critical`` selects
the stationary-frequency detuning at the mean photon number.
"""
from __future__ import annotations

import dataclasses
import math
import re
from dataclasses import dataclass, field

import numpy as np

from .algebra import Deformation, DeformationSpec, convergence_radius
from .errors import ParseError, ValidationError
from .field_states import AtomInit, FieldAmplitude, PhotonDistribution, build_coherent_state, mean_photon_number
from .spectrum import ModelParams

__all__ = ["Scenario", "CRITICAL", "parse_scenario", "format_scenario", "load_scenario"]

CRITICAL = "critical"

_KIND_PARAMS = {
    Deformation.STANDARD: (),
    Deformation.ARIK_COON: ("q",),
    Deformation.PENSON_SOLOMON: ("q",),
    Deformation.QUESNE: ("q",),
    Deformation.KERR: ("k",),
    Deformation.GENERAL_Q: ("q", "p", "lam", "mu"),
}
_INT_KEYS = {"m", "n_points", "n_delta"}
_REQUIRED = ("kind", "g", "z_sq")
_KEY_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


@dataclass(frozen=True)
class Scenario:
    """Everything needed to run one simulation from the command line."""

    kind: Deformation
    g: float
    z_sq: float
    q: float = 1.0
    k: float = 0.0
    p: float = 1.0
    lam: float = 0.0
    mu: float = 0.0
    omega: float = 1.0
    omega0: float | None = None
    delta_over_omega: float | str | None = None
    m: int = 2
    alpha_sq: float = 1.0
    phi: float = 0.0
    theta: float = 0.0
    gt_max: float = 25.0
    n_points: int = 2000
    tail_tol: float = 1e-12
    oracle_tol: float = 1e-10
    delta_min: float = -6.0
    delta_max: float = 6.0
    n_delta: int = 12001
    levels: tuple[int, ...] = field(default=(1, 2))

    def deformation(self) -> DeformationSpec:
        return DeformationSpec(self.kind, q=self.q, k=self.k, p=self.p, lam=self.lam, mu=self.mu)

    def amplitude(self) -> FieldAmplitude:
        return FieldAmplitude.from_intensity(self.z_sq, self.theta)

    def atom(self) -> AtomInit:
        return AtomInit.from_alpha_sq(self.alpha_sq, self.phi)

    def distribution(self) -> PhotonDistribution:
        return build_coherent_state(self.deformation(), self.amplitude(), self.tail_tol)

    @property
    def is_critical(self) -> bool:
        return self.delta_over_omega == CRITICAL

    def params(self, dist: PhotonDistribution | None = None) -> ModelParams:
        """Hamiltonian parameters, resolving a critical detuning if requested."""
        spec = self.deformation()
        if self.omega0 is not None:
            return ModelParams(self.omega, self.omega0, self.g, self.m, spec)
        if self.is_critical:
            from .revival import critical_detuning

            dist = self.distribution() if dist is None else dist
            base = ModelParams.from_detuning(0.0, self.g, spec, self.m, self.omega)
            return base.with_detuning(critical_detuning(base, mean_photon_number(dist)))
        return ModelParams.from_detuning(self.delta_over_omega * self.omega, self.g, spec,
                                         self.m, self.omega)

    def time_grid(self) -> np.ndarray:
        """Times t (not gt) of the ``n_points`` samples over [0, gt_max]."""
        return np.linspace(0.0, self.gt_max, self.n_points) / self.g

    def detuning_grid(self) -> np.ndarray:
        return np.linspace(self.delta_min, self.delta_max, self.n_delta) * self.omega


def _format_value(value) -> str:
    if isinstance(value, Deformation):
        return value.value
    if isinstance(value, tuple):
        return ", ".join(str(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def format_scenario(s: Scenario) -> str:
    """Serialize to the file format; parsing the result gives back ``s``."""
    lines = [f"kind = {s.kind.value}"]
    keys = list(_KIND_PARAMS[s.kind])
    keys += ["omega", "omega0" if s.omega0 is not None else "delta_over_omega", "g", "m",
             "alpha_sq", "phi", "z_sq", "theta", "gt_max", "n_points", "tail_tol",
             "oracle_tol", "delta_min", "delta_max", "n_delta", "levels"]
    for key in keys:
        lines.append(f"{key} = {_format_value(getattr(s, key))}")
    return "\n".join(lines) + "\n"


def _convert(key: str, raw: str, line: int, col: int):
    try:
        if key == "kind":
            return Deformation(raw)
        if key == "levels":
            items = [int(v) for v in raw.split(",")]
            if not items:
                raise ValueError
            return tuple(items)
        if key == "delta_over_omega" and raw == CRITICAL:
            return CRITICAL
        if key in _INT_KEYS:
            return int(raw)
        value = float(raw)
    except ValueError:
        choices = ", ".join(d.value for d in Deformation)
        hint = f" (one of {choices})" if key == "kind" else ""
        raise ParseError(line, col, f"bad value {raw!r} for {key}{hint}") from None
    if not math.isfinite(value):
        raise ParseError(line, col, f"{key} must be finite, got {raw!r}")
    return value


def _tokenize(text: str):
    known = {f.name for f in dataclasses.fields(Scenario)}
    values, where = {}, {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        if "=" not in body:
            col = len(body) - len(body.lstrip()) + 1
            raise ParseError(lineno, col, "expected 'key = value'")
        lhs, rhs = body.split("=", 1)
        key = lhs.strip()
        key_col = len(lhs) - len(lhs.lstrip()) + 1
        if not _KEY_RE.fullmatch(key):
            raise ParseError(lineno, key_col, f"invalid key {key!r}")
        if key not in known:
            raise ParseError(lineno, key_col, f"unknown key {key!r}")
        if key in values:
            raise ParseError(lineno, key_col, f"duplicate key {key!r} (first on line {where[key]})")
        raw = rhs.strip()
        val_col = len(lhs) + 2 + len(rhs) - len(rhs.lstrip())
        if not raw:
            raise ParseError(lineno, val_col, f"missing value for {key}")
        values[key] = _convert(key, raw, lineno, val_col)
        where[key] = lineno
    return values, where


def _validate(s: Scenario) -> None:
    def fail(msg):
        raise ValidationError(msg)

    try:
        spec = s.deformation()
    except ValueError as exc:
        fail(str(exc))
    if s.g <= 0:
        fail(f"g must be > 0, got {s.g}")
    if s.omega <= 0:
        fail(f"omega must be > 0, got {s.omega}")
    if s.m < 1:
        fail(f"m must be >= 1, got {s.m}")
    if not 0.0 <= s.alpha_sq <= 1.0:
        fail(f"alpha_sq must lie in [0, 1], got {s.alpha_sq}")
    if s.z_sq < 0:
        fail(f"z_sq must be >= 0, got {s.z_sq}")
    radius = convergence_radius(spec)
    if s.z_sq >= radius:
        fail(f"{s.kind.value} with q={s.q:g} requires z_sq < {radius:g}")
    if s.gt_max <= 0:
        fail(f"gt_max must be > 0, got {s.gt_max}")
    if s.n_points < 1:
        fail(f"n_points must be >= 1, got {s.n_points}")
    if not 0.0 < s.tail_tol < 1.0:
        fail(f"tail_tol must lie in (0, 1), got {s.tail_tol}")
    if s.oracle_tol <= 0:
        fail(f"oracle_tol must be > 0, got {s.oracle_tol}")
    if not s.delta_min < s.delta_max:
        fail("delta_min must be < delta_max")
    if s.n_delta < 2:
        fail(f"n_delta must be >= 2, got {s.n_delta}")
    if any(n < 0 for n in s.levels):
        fail("levels must be nonnegative integers")
    if s.is_critical and s.m != 2:
        fail("delta_over_omega = critical requires m = 2")
    if s.is_critical and s.kind == Deformation.STANDARD:
        fail("delta_over_omega = critical requires a deformed kind")


def parse_scenario(text: str) -> Scenario:
    """Parse and validate a scenario document.

    Raises
    ------
    ParseError
        malformed line, unknown or duplicate key, unparsable value.
    ValidationError
        well-formed document violating a model precondition.
    """
    values, where = _tokenize(text)
    for key in _REQUIRED:
        if key not in values:
            raise ValidationError(f"missing required key {key!r}")
    has_w0, has_delta = "omega0" in values, "delta_over_omega" in values
    if has_w0 == has_delta:
        raise ValidationError("exactly one of omega0 and delta_over_omega must be given")
    allowed = set(_KIND_PARAMS[values["kind"]])
    for key in ("q", "k", "p", "lam", "mu"):
        if key in values and key not in allowed:
            raise ValidationError(
                f"line {where[key]}: {key} is not a parameter of {values['kind'].value}")
    for key in sorted(allowed - set(values)):
        raise ValidationError(f"{values['kind'].value} requires {key}")
    s = Scenario(**values)
    _validate(s)
    return s


def load_scenario(path) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return parse_scenario(fh.read())
