"""Frequency schedules for the driven strokes.

A stroke changes the trap frequency from omega_initial to omega_final
over a duration tau.  The reference schedule is the quintic ramp

    omega(s) = omega_i + d*(10 s^3 - 15 s^4 + 6 s^5),   s = t/tau,

with d = omega_f - omega_i.  Its first and second derivatives vanish at
both ends, which makes the local-counterdiabatic correction switch off
at the stroke boundaries.  The shortcut replaces omega^2 with the
effective squared frequency

    Omega^2(t) = omega^2 - 3 omega_dot^2/(4 omega^2) + omega_ddot/(2 omega),

which can go negative for fast driving (trap inversion); that condition
is reported, and whether it is fatal is the caller's decision.

User-supplied schedules are accepted as (t, omega) knots and fitted with
an interpolating quintic spline so that omega_ddot exists and is smooth;
the endpoint conditions are then checked by evaluation, never assumed.
"""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.interpolate import make_interp_spline
from scipy.optimize import minimize_scalar

from .errors import ConfigError, OutOfRangeTime


class ProtocolKind(enum.Enum):
    POLYNOMIAL_RAMP = "polynomial_ramp"
    USER_TABLE = "user_table"


@dataclass(frozen=True)
class ProtocolSample:
    """Schedule values at a single time: omega and its two derivatives,
    plus the effective (shortcut) squared frequency."""

    t: float
    omega: float
    omega_dot: float
    omega_ddot: float
    omega_eff_sq: float


@dataclass(frozen=True)
class InversionReport:
    min_omega_eff_sq: float
    argmin_t: float
    inverted: bool


@dataclass(frozen=True)
class FrequencyProtocol:
    """A frequency schedule omega(t) on [0, duration]."""

    omega_initial: float
    omega_final: float
    duration: float
    kind: ProtocolKind
    # quintic-spline fit of user-table knots; None for the polynomial ramp
    _spline: object = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.omega_initial <= 0.0 or self.omega_final <= 0.0:
            raise ConfigError("protocol frequencies must be positive")
        if self.duration <= 0.0:
            raise ConfigError("protocol duration must be positive")


def polynomial_ramp(omega_initial: float, omega_final: float,
                    duration: float) -> FrequencyProtocol:
    """Quintic ramp with flat (zero first and second derivative) ends."""
    return FrequencyProtocol(float(omega_initial), float(omega_final),
                             float(duration), ProtocolKind.POLYNOMIAL_RAMP)


def reversed_protocol(protocol: FrequencyProtocol) -> FrequencyProtocol:
    """Same schedule family run from omega_final back to omega_initial.

    The expansion stroke uses the compression ramp with the endpoint
    frequencies swapped.  Only polynomial ramps can be reversed
    symbolically; tables must be re-supplied.
    """
    if protocol.kind is not ProtocolKind.POLYNOMIAL_RAMP:
        raise ConfigError("only polynomial ramps can be reversed")
    return polynomial_ramp(protocol.omega_final, protocol.omega_initial,
                           protocol.duration)


def user_table(times: Sequence[float], omegas: Sequence[float]) -> FrequencyProtocol:
    """Protocol from (t, omega) knots via an interpolating quintic spline."""
    t = np.asarray(times, dtype=float)
    w = np.asarray(omegas, dtype=float)
    if t.ndim != 1 or t.shape != w.shape:
        raise ConfigError("table knots must be two equal-length columns")
    if t.size < 6:
        raise ConfigError("table protocols need at least 6 knots for a quintic fit")
    if np.any(np.diff(t) <= 0.0):
        raise ConfigError("table times must be strictly increasing")
    if t[0] != 0.0:
        raise ConfigError("table must start at t = 0")
    if np.any(w <= 0.0):
        raise ConfigError("table frequencies must be positive")
    spline = make_interp_spline(t, w, k=5)
    return FrequencyProtocol(float(w[0]), float(w[-1]), float(t[-1]),
                             ProtocolKind.USER_TABLE, spline)


def user_table_from_csv(path: str) -> FrequencyProtocol:
    """Read two-column (t, omega) knots; a non-numeric first row is a header."""
    times: list[float] = []
    omegas: list[float] = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or not "".join(row).strip():
                continue
            try:
                tv, wv = float(row[0]), float(row[1])
            except (ValueError, IndexError):
                if not times:  # header line
                    continue
                raise ConfigError(f"bad table row in {path!r}: {row!r}") from None
            times.append(tv)
            omegas.append(wv)
    if not times:
        raise ConfigError(f"no knots found in {path!r}")
    return user_table(times, omegas)


def _ramp_shape(s: float) -> tuple[float, float, float]:
    # value and first two s-derivatives of 10 s^3 - 15 s^4 + 6 s^5
    v = s**3 * (10.0 - 15.0 * s + 6.0 * s**2)
    d1 = 30.0 * s**2 * (1.0 - s) ** 2
    d2 = 60.0 * s * (1.0 - 3.0 * s + 2.0 * s**2)
    return v, d1, d2


def effective_frequency_sq(omega: float, omega_dot: float,
                           omega_ddot: float) -> float:
    """Squared frequency of the local-counterdiabatic Hamiltonian."""
    return (omega * omega
            - 0.75 * omega_dot * omega_dot / (omega * omega)
            + 0.5 * omega_ddot / omega)


def _check_range(protocol: FrequencyProtocol, t: float) -> None:
    if not 0.0 <= t <= protocol.duration:
        raise OutOfRangeTime(
            f"t = {t!r} outside [0, {protocol.duration!r}]")


def evaluate_polynomial_ramp(protocol: FrequencyProtocol,
                             t: float) -> ProtocolSample:
    """Closed-form quintic evaluation; derivatives are analytic, not
    finite differences."""
    if protocol.kind is not ProtocolKind.POLYNOMIAL_RAMP:
        raise ConfigError("evaluate_polynomial_ramp needs a polynomial ramp")
    _check_range(protocol, t)
    tau = protocol.duration
    d = protocol.omega_final - protocol.omega_initial
    v, d1, d2 = _ramp_shape(t / tau)
    omega = protocol.omega_initial + d * v
    omega_dot = d * d1 / tau
    omega_ddot = d * d2 / (tau * tau)
    return ProtocolSample(t, omega, omega_dot, omega_ddot,
                          effective_frequency_sq(omega, omega_dot, omega_ddot))


def sample_protocol(protocol: FrequencyProtocol, t: float) -> ProtocolSample:
    """Evaluate any protocol kind at time t."""
    if protocol.kind is ProtocolKind.POLYNOMIAL_RAMP:
        return evaluate_polynomial_ramp(protocol, t)
    _check_range(protocol, t)
    spl = protocol._spline
    omega = float(spl(t))
    omega_dot = float(spl(t, 1))
    omega_ddot = float(spl(t, 2))
    return ProtocolSample(t, omega, omega_dot, omega_ddot,
                          effective_frequency_sq(omega, omega_dot, omega_ddot))


def omega_of(protocol: FrequencyProtocol) -> Callable[[float], float]:
    """Fast omega(t) callable for integrators (skips sample assembly)."""
    if protocol.kind is ProtocolKind.POLYNOMIAL_RAMP:
        wi = protocol.omega_initial
        d = protocol.omega_final - protocol.omega_initial
        tau = protocol.duration

        def omega(t: float) -> float:
            s = t / tau
            return wi + d * s**3 * (10.0 - 15.0 * s + 6.0 * s**2)

        return omega
    spl = protocol._spline
    return lambda t: float(spl(t))


def boundary_residuals(protocol: FrequencyProtocol) -> dict[str, float]:
    """Residuals of the six endpoint conditions, relative to the
    protocol's frequency and time scales.

    Keys: omega_start, omega_end (value mismatch), omega_dot_start,
    omega_dot_end, omega_ddot_start, omega_ddot_end (nonflat ends).
    """
    tau = protocol.duration
    scale = max(abs(protocol.omega_initial), abs(protocol.omega_final))
    s0 = sample_protocol(protocol, 0.0)
    s1 = sample_protocol(protocol, tau)
    return {
        "omega_start": abs(s0.omega - protocol.omega_initial) / scale,
        "omega_end": abs(s1.omega - protocol.omega_final) / scale,
        "omega_dot_start": abs(s0.omega_dot) * tau / scale,
        "omega_dot_end": abs(s1.omega_dot) * tau / scale,
        "omega_ddot_start": abs(s0.omega_ddot) * tau * tau / scale,
        "omega_ddot_end": abs(s1.omega_ddot) * tau * tau / scale,
    }


def check_trap_inversion(protocol: FrequencyProtocol,
                         grid_size: int = 256) -> InversionReport:
    """Scan Omega^2(t) on a uniform grid and refine around the minimum.

    Reporting only; strict-mode callers turn a positive finding into
    TrapInversionError themselves.
    """
    if grid_size < 16:
        raise ConfigError("grid_size must be at least 16")
    tau = protocol.duration
    ts = np.linspace(0.0, tau, grid_size)
    vals = np.array([sample_protocol(protocol, t).omega_eff_sq for t in ts])
    i = int(np.argmin(vals))
    lo = ts[max(i - 1, 0)]
    hi = ts[min(i + 1, grid_size - 1)]
    best_t, best_v = ts[i], vals[i]
    if hi > lo:
        res = minimize_scalar(
            lambda t: sample_protocol(protocol, t).omega_eff_sq,
            bounds=(lo, hi), method="bounded",
            options={"xatol": 1e-12 * max(tau, 1.0)})
        if res.fun < best_v:
            best_t, best_v = float(res.x), float(res.fun)
    return InversionReport(float(best_v), float(best_t), bool(best_v <= 0.0))


def tag_of(protocol: FrequencyProtocol) -> str:
    """'compression' for rising frequency, 'expansion' for falling."""
    if protocol.omega_final > protocol.omega_initial:
        return "compression"
    if protocol.omega_final < protocol.omega_initial:
        return "expansion"
    return "constant"
