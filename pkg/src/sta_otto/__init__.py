"""Finite-time quantum Otto cycle with local-counterdiabatic driving.

A harmonic oscillator is compressed and expanded between two bath
contacts; this package computes the work, heat, efficiency and power of
that cycle for the bare drive, the ideal quasistatic reference, and the
shortcut drive that reaches the adiabatic target in finite time at an
explicit energetic cost, together with the geometric speed-limit bounds
the cost implies.
"""

__version__ = "0.1.0"

from .config import EngineConfig, tau_grid
from .cost import (CostProfile, cost_profile, lcd_mean_energy,
                   q_star_lcd_instant, sa_cost_time_average,
                   sa_energy_instant, shortcut_shape_factor)
from .cycle import (CycleMetrics, compression_q_star,
                    find_efficiency_crossover, find_heat_sign_threshold,
                    rescaled, run_cycle, sweep)
from .dynamics import (ErmakovSolution, LinearPairSolution, MomentSolution,
                       adiabaticity_from_ermakov, adiabaticity_parameter,
                       ermakov_from_linear, ermakov_residual,
                       lcd_final_adiabaticity, solve_effective_pair,
                       solve_ermakov_direct, solve_linear_pair,
                       solve_second_moments)
from .errors import (ConfigError, DivisionByZeroCost, DomainError,
                     InvalidDenominator, NoSignChange, OutOfRangeTime,
                     QuadratureFailure, SolverFailure, StaOttoError,
                     TrapInversionError)
from .hyperbolic import coth, csch
from .protocol import (FrequencyProtocol, InversionReport, ProtocolKind,
                       ProtocolSample, boundary_residuals,
                       check_trap_inversion, effective_frequency_sq,
                       evaluate_polynomial_ramp, omega_of, polynomial_ramp,
                       reversed_protocol, sample_protocol, user_table,
                       user_table_from_csv)
from .qsl import (BuresData, QslReport, bures_angle, bures_data,
                  efficiency_bound, gaussian_fidelity, power_bound,
                  qsl_time)
from .strokes import (EngineCondition, StrokeResult, ThermalOscillatorState,
                      engine_condition, heat_sign_threshold,
                      hot_isochore_heat, stroke_work)

__all__ = [name for name in dir() if not name.startswith("_")]
