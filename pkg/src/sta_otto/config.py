"""Engine configuration: physical parameters, solver tolerances, sweep grid."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError


@dataclass(frozen=True)
class EngineConfig:
    """Physical and numerical parameters of the cycle.

    The working medium is compressed from omega1 to omega2 while coupled
    to nothing, thermalizes with the hot bath (beta2), expands back, and
    thermalizes with the cold bath (beta1).  Cold means beta1 > beta2.
    m appears in the Hamiltonian but cancels from every output; it is
    kept so configurations document the full oscillator.
    """

    omega1: float = 0.32
    omega2: float = 1.0
    beta1: float = 0.5
    beta2: float = 0.05
    m: float = 1.0
    hbar: float = 1.0
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    quad_tol: float = 1e-10
    tau_min: float = 0.01
    tau_max: float = 10.0
    tau_count: int = 200
    tau_spacing: str = "log"
    strict: bool = False

    def __post_init__(self) -> None:
        if not self.omega2 > self.omega1 > 0.0:
            raise ConfigError("need omega2 > omega1 > 0 (compression-first cycle)")
        if not self.beta1 > self.beta2 > 0.0:
            raise ConfigError("need beta1 > beta2 > 0 (first bath colder)")
        if self.m <= 0.0 or self.hbar <= 0.0:
            raise ConfigError("m and hbar must be positive")
        for name in ("rel_tol", "abs_tol", "quad_tol"):
            v = getattr(self, name)
            if not 0.0 < v <= 1e-4:
                raise ConfigError(f"{name} must lie in (0, 1e-4]")
        if not 0.0 < self.tau_min < self.tau_max:
            raise ConfigError("need 0 < tau_min < tau_max")
        if self.tau_count < 2:
            raise ConfigError("tau_count must be at least 2")
        if self.tau_spacing not in ("log", "linear"):
            raise ConfigError("tau_spacing must be 'log' or 'linear'")

    def with_(self, **kwargs) -> "EngineConfig":
        return replace(self, **kwargs)


def tau_grid(config: EngineConfig) -> np.ndarray:
    """Sweep abscissa; log or linear per the configuration."""
    if config.tau_spacing == "log":
        return np.logspace(np.log10(config.tau_min), np.log10(config.tau_max),
                           config.tau_count)
    return np.linspace(config.tau_min, config.tau_max, config.tau_count)
